"""Derivation certificates for closed zig-zags.

A closed zig-zag is certified by a tree of six rules: empty fill, inverse
pair, rotation, pasting, inversion and diamond fill. The checker looks at one
node at a time and never reruns the construction.
"""

from __future__ import annotations

import dataclasses

from polybasis import OrientedStep, ZigZag, certify_closed, check_certificate, compose, free_group_system, invert
from polybasis import synthesize_lc
from polybasis.certify import leaf_counts

fg = free_group_system(["a"])
lc = synthesize_lc(fg)

# The outline of the x X x overlap: down one way, back up the other.
s, t = fg.steps_from(fg.word("aAa"))
loop = ZigZag.of(OrientedStep(s, False), OrientedStep(t))
cert = certify_closed(fg, fg.order, lc, loop)
print("goal:", loop)
print("nodes:", sum(1 for _ in cert.nodes()), "leaves:", leaf_counts(cert))
print("check:", check_certificate(fg, lc, cert, loop))

# A longer loop: reduce aAaA in two different ways and close them up.
w = fg.word("aAaA")
u = ZigZag.of(fg.step("aA", w, 0), fg.step("aA", fg.word("aA"), 0))
v = ZigZag.of(fg.step("aA", w, 2), fg.step("aA", fg.word("aA"), 0))
big = compose(u, invert(v))
cert = certify_closed(fg, fg.order, lc, big)
print("\ngoal:", big)
print("nodes:", sum(1 for _ in cert.nodes()), "leaves:", leaf_counts(cert))
print("check:", check_certificate(fg, lc, cert, big))

# Tampering with the conclusion of any node is caught, with the node's path.
first_paste = next(n for n in cert.nodes() if n.rule == "Paste" and n is not cert)
bad_child = dataclasses.replace(first_paste, conclusion=ZigZag.empty(first_paste.conclusion.start))


def swap(node):
    if node is first_paste:
        return bad_child
    changes = {k: swap(getattr(node, k)) for k in ("child", "first", "second") if getattr(node, k, None)}
    return dataclasses.replace(node, **changes) if changes else node


print("tampered:", check_certificate(fg, lc, swap(cert), big))
