"""What the checks report when something is wrong.

Reuses the system files in ``demos/systems``; the same output comes from
``polybasis check <file>``.
"""

from __future__ import annotations

import io
from pathlib import Path

from polybasis import list_ext_gt
from polybasis.cli import main

systems = Path(__file__).resolve().parent / "systems"

for name in ["cyclic.toml", "fork.toml", "diamond.toml"]:
    out = io.StringIO()
    code = main(["check", str(systems / name)], out=out)
    print(f"== {name} (exit {code})")
    print(out.getvalue())

# The measure behind the Church-Rosser rewriting: lists compared by replacing
# one element with any number of smaller ones.
nat = lambda x, y: x > y  # noqa: E731
for xs, ys in [([2], [1, 1, 0]), ([2, 1], [1, 1, 1]), ([1], [1]), ([3, 0], [0, 3])]:
    print(f"{xs} > {ys}: {list_ext_gt(nat, xs, ys)}")
