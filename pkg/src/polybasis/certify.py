"""Derivation certificates for closed zig-zags.

A certificate is a tree over six rules, each concluding ``P(c)`` for a closed
zig-zag ``c``::

    EmptyFill(x)                  P(e_x)
    InvPair(u)                    P(u . u^-1)
    Rotate(P(u . v), u, v)        P(v . u)
    Paste(P(u . v^-1), P(v . w^-1), u, v, w)
                                  P(u . w^-1)        u, v, w parallel
    Invert(P(u), u)               P(u^-1)
    DiamondFill(peak)             P(peak . valley^-1)  valley chosen by the LC structure

`certify_closed` compiles the contraction witness of `contract_closed` into
such a tree: every whiskered cell ``l . a . r => l . b . r`` becomes a small
rotation/pasting gadget around the leaf for the bare cell, and the chain of
cells is folded with `Paste`. `check_certificate` validates a tree node by node
and never calls the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .cells import CellKind, RewriteZigZag, WhiskeredCell
from .coherence import LocalConfluenceStructure, contract_closed
from .core import Obj, RewritingSystem, ZigZag, compose, invert
from .errors import EndpointMismatch, PolybasisError, Report
from .order import TerminationOrder


@dataclass(frozen=True)
class Certificate:
    conclusion: ZigZag

    rule: str = field(default="", init=False, repr=False)

    @property
    def children(self) -> tuple[Certificate, ...]:
        return ()

    def nodes(self) -> Iterator[Certificate]:
        """Pre-order traversal, iterative."""
        stack: list[Certificate] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class EmptyFill(Certificate):
    obj: Obj = None
    rule: str = field(default="EmptyFill", init=False, repr=False)


@dataclass(frozen=True)
class InvPair(Certificate):
    u: ZigZag = None
    rule: str = field(default="InvPair", init=False, repr=False)


@dataclass(frozen=True)
class Rotate(Certificate):
    child: Certificate = None
    u: ZigZag = None
    v: ZigZag = None
    rule: str = field(default="Rotate", init=False, repr=False)

    @property
    def children(self) -> tuple[Certificate, ...]:
        return (self.child,)


@dataclass(frozen=True)
class Paste(Certificate):
    first: Certificate = None
    second: Certificate = None
    u: ZigZag = None
    v: ZigZag = None
    w: ZigZag = None
    rule: str = field(default="Paste", init=False, repr=False)

    @property
    def children(self) -> tuple[Certificate, ...]:
        return (self.first, self.second)


@dataclass(frozen=True)
class Invert(Certificate):
    child: Certificate = None
    u: ZigZag = None
    rule: str = field(default="Invert", init=False, repr=False)

    @property
    def children(self) -> tuple[Certificate, ...]:
        return (self.child,)


@dataclass(frozen=True)
class DiamondFill(Certificate):
    peak: ZigZag = None
    rule: str = field(default="DiamondFill", init=False, repr=False)


RULES = {c.__name__: c for c in (EmptyFill, InvPair, Rotate, Paste, Invert, DiamondFill)}
ARITY = {"EmptyFill": 0, "InvPair": 0, "DiamondFill": 0, "Rotate": 1, "Invert": 1, "Paste": 2}


# Smart constructors: compute the conclusion from the rule.

def empty_fill(x: Obj) -> EmptyFill:
    return EmptyFill(ZigZag.empty(x), obj=x)


def inv_pair(u: ZigZag) -> InvPair:
    return InvPair(compose(u, invert(u)), u=u)


def rotate(child: Certificate, u: ZigZag, v: ZigZag) -> Rotate:
    return Rotate(compose(v, u), child=child, u=u, v=v)


def paste(first: Certificate, second: Certificate, u: ZigZag, v: ZigZag, w: ZigZag) -> Paste:
    return Paste(compose(u, invert(w)), first=first, second=second, u=u, v=v, w=w)


def concat(first: Certificate, second: Certificate) -> Paste:
    """``P(c1), P(c2) |- P(c1 . c2)`` for closed c1, c2 at one object: pasting through the empty zig-zag."""
    c1, c2 = first.conclusion, second.conclusion
    return paste(first, second, c1, ZigZag.empty(c1.start), invert(c2))


def invert_cert(child: Certificate) -> Invert:
    return Invert(invert(child.conclusion), child=child, u=child.conclusion)


def diamond_fill(lc: LocalConfluenceStructure, peak: ZigZag) -> DiamondFill:
    s, t = peak.steps
    return DiamondFill(compose(peak, invert(lc.resolve(s.step, t.step))), peak=peak)


def _cell_leaf(lc: LocalConfluenceStructure, wc: WhiskeredCell) -> Certificate:
    """``P(a . b^-1)`` for the bare cell ``a => b``."""
    cell = wc.cell
    if cell.kind is CellKind.DIAMOND:
        return diamond_fill(lc, cell.source)
    if cell.kind in (CellKind.RINV, CellKind.LINV):
        return inv_pair(ZigZag.of(cell.source.steps[0]))
    raise PolybasisError(f"cannot certify a declared 2-cell generator ({cell.name})")


def _whiskered(lc: LocalConfluenceStructure, wc: WhiskeredCell) -> Certificate:
    """``P(src . tgt^-1)`` for one whiskered cell, in its own direction."""
    l, r = wc.left, wc.right
    a, b = wc.cell.source, wc.cell.target
    node = _cell_leaf(lc, wc)                                   # a . b^-1
    if r.steps:
        node = rotate(node, a, invert(b))                       # b^-1 . a
        node = concat(inv_pair(r), node)                        # r . r^-1 . b^-1 . a
        node = rotate(node, compose(r, invert(r), invert(b)), a)  # a . r . r^-1 . b^-1
    if l.steps:
        linv = invert(l)
        node = concat(inv_pair(linv), node)                     # l^-1 . l . a . r . r^-1 . b^-1
        rest = compose(l, a, r, invert(r), invert(b))
        node = rotate(node, linv, rest)                         # (l . a . r) . (l . b . r)^-1
    if not wc.forward:
        node = invert_cert(node)
    return node


def certify_rewrite(lc: LocalConfluenceStructure, rz: RewriteZigZag) -> Certificate:
    """``P(source . target^-1)`` from a rewrite zig-zag whose cells are diamonds or cancellations."""
    end = rz.target
    node: Certificate = empty_fill(end.start) if not end.steps else inv_pair(end)
    for wc in reversed(rz.cells):
        node = paste(_whiskered(lc, wc), node, wc.source, wc.target, end)
    return node


def certify_closed(system: RewritingSystem, order: TerminationOrder, lc: LocalConfluenceStructure,
                   u: ZigZag) -> Certificate:
    if not u.is_closed:
        raise EndpointMismatch("certify_closed needs a closed zig-zag")
    if not u.steps:
        return empty_fill(u.start)
    n = len(u.steps)
    if n % 2 == 0 and u[n // 2:] == invert(u[:n // 2]):
        return inv_pair(u[:n // 2])
    return certify_rewrite(lc, contract_closed(system, order, lc, u))


def _expected(node: Certificate, lc: LocalConfluenceStructure | None) -> tuple[ZigZag, list[ZigZag]]:
    """(conclusion, premises) that the rule prescribes for ``node``'s arguments."""
    if isinstance(node, EmptyFill):
        return ZigZag.empty(node.obj), []
    if isinstance(node, InvPair):
        return compose(node.u, invert(node.u)), []
    if isinstance(node, Rotate):
        return compose(node.v, node.u), [compose(node.u, node.v)]
    if isinstance(node, Paste):
        u, v, w = node.u, node.v, node.w
        if not (u.start == v.start == w.start and u.target == v.target == w.target):
            raise EndpointMismatch("pasted zig-zags are not parallel")
        return compose(u, invert(w)), [compose(u, invert(v)), compose(v, invert(w))]
    if isinstance(node, Invert):
        if not node.u.is_closed:
            raise EndpointMismatch("inverted zig-zag is not closed")
        return invert(node.u), [node.u]
    if isinstance(node, DiamondFill):
        steps = node.peak.steps
        if len(steps) != 2 or steps[0].forward or not steps[1].forward:
            raise EndpointMismatch("DiamondFill argument is not a local peak")
        if lc is None:
            raise PolybasisError("no local confluence structure to check a DiamondFill against")
        valley = lc.resolve(steps[0].step, steps[1].step)
        return compose(node.peak, invert(valley)), []
    raise PolybasisError(f"unknown certificate node {type(node).__name__}")


def _zigzags(node: Certificate) -> list[ZigZag]:
    out = [node.conclusion]
    for name in ("u", "v", "w", "peak"):
        z = getattr(node, name, None)
        if z is not None:
            out.append(z)
    return out


def check_certificate(system: RewritingSystem, lc: LocalConfluenceStructure | None, cert: Certificate,
                      u: ZigZag) -> Report:
    """Validate every node locally and compare the root conclusion with ``u``."""
    stack: list[tuple[Certificate, str]] = [(cert, "root")]
    count = 0
    while stack:
        node, path = stack.pop()
        count += 1
        where = f"{path} ({node.rule})"
        for z in _zigzags(node):
            problem = system.check_zigzag(z)
            if problem:
                return Report.failed(f"{where}: {problem}", path=path)
        if isinstance(node, EmptyFill) and not system.is_object(node.obj):
            return Report.failed(f"{where}: unknown object", path=path)
        if not node.conclusion.is_closed:
            return Report.failed(f"{where}: conclusion is not closed", path=path)
        try:
            conclusion, premises = _expected(node, lc)
        except PolybasisError as e:
            return Report.failed(f"{where}: {e}", path=path)
        if conclusion != node.conclusion:
            return Report.failed(f"{where}: conclusion does not follow from the rule", path=path)
        children = node.children
        if len(children) != len(premises):
            return Report.failed(f"{where}: wrong number of premises", path=path)
        for i, (child, premise) in enumerate(zip(children, premises)):
            if not isinstance(child, Certificate):
                return Report.failed(f"{where}: premise {i} is not a certificate", path=path)
            if child.conclusion != premise:
                return Report.failed(f"{where}: premise {i} concludes the wrong zig-zag", path=path)
            stack.append((child, f"{path}.{i}"))
    if cert.conclusion != u:
        return Report.failed("root conclusion differs from the goal", path="root")
    return Report.passed(f"{count} nodes", nodes=count)


def leaf_counts(cert: Certificate) -> dict[str, int]:
    counts: dict[str, int] = {}
    for node in cert.nodes():
        if not node.children:
            counts[node.rule] = counts.get(node.rule, 0) + 1
    return counts
