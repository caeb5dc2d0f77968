"""Free group words: normal forms and the critical peaks behind them.

Run with ``python demos/01_free_group_words.py``.
"""

from __future__ import annotations

from polybasis import critical_peaks, free_group_system, normalize, synthesize_lc
from polybasis.core import format_object

fg = free_group_system(["a", "b"])

# Letters come in pairs x / X, and the rules cancel any adjacent x X or X x.
print("alphabet:", " ".join(fg.alphabet))
print("rules:   ", ", ".join(f"{r.name} -> ''" for r in fg.rules))

# Normalization always fires the leftmost redex, so the reduction it returns is
# reproducible. Every step shortens the word, which is the termination argument.
for text in ["abBA", "aAaA", "abAB", "aBbAbB"]:
    nf, seq = normalize(fg, fg.word(text))
    print(f"{text:>8} -> {format_object(nf):<6} in {len(seq)} steps: {seq}")

# Two redexes in the same word either coincide, overlap in one letter (x X x)
# or sit side by side. Only the overlaps need a real argument; the other two
# cases close trivially.
peaks = critical_peaks(fg)
by_kind: dict[str, list] = {}
for cp in peaks:
    by_kind.setdefault(cp.kind.value, []).append(cp)
for kind, group in by_kind.items():
    print(f"\n{kind}: {len(group)}")
    for cp in group[:4]:
        print("  ", cp)

# The synthesized structure picks one valley per peak.
lc = synthesize_lc(fg)
print("\nchosen valleys for the overlaps:")
for cp in by_kind["PartialOverlap"]:
    print(f"  {format_object(cp.word)} : {lc.resolve(cp.left, cp.right)}")
