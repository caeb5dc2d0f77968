"""2-cells between parallel zig-zags and rewrite zig-zags built from them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING

from .core import OrientedStep, RewritingSystem, StepRef, ZigZag, compose, invert
from .errors import CellChainMismatch, EndpointMismatch, Report

if TYPE_CHECKING:
    from .coherence import LocalConfluenceStructure


class CellKind(str, Enum):
    GENERATOR = "generator"
    DIAMOND = "diamond"
    RINV = "rinv"
    LINV = "linv"


@dataclass(frozen=True)
class AtomicCell:
    kind: CellKind
    source: ZigZag
    target: ZigZag
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CellKind(self.kind))
        if self.source.start != self.target.start or self.source.target != self.target.target:
            raise EndpointMismatch(f"{self.kind.value} cell: source and target are not parallel")

    @classmethod
    def rinv(cls, step: StepRef) -> AtomicCell:
        """``s . s^-1 => empty`` at the source of ``s``."""
        f = OrientedStep(step, True)
        return cls(CellKind.RINV, ZigZag.of(f, f.inverse()), ZigZag.empty(step.source))

    @classmethod
    def linv(cls, step: StepRef) -> AtomicCell:
        """``s^-1 . s => empty`` at the target of ``s``."""
        b = OrientedStep(step, False)
        return cls(CellKind.LINV, ZigZag.of(b, b.inverse()), ZigZag.empty(step.target))

    @classmethod
    def diamond(cls, peak: ZigZag, valley: ZigZag) -> AtomicCell:
        return cls(CellKind.DIAMOND, peak, valley)

    @classmethod
    def generator(cls, name: str, source: ZigZag, target: ZigZag) -> AtomicCell:
        return cls(CellKind.GENERATOR, source, target, name)


@dataclass(frozen=True)
class WhiskeredCell:
    """``left . cell . right``, used forwards or backwards."""

    left: ZigZag
    cell: AtomicCell
    right: ZigZag
    forward: bool = True

    def __post_init__(self) -> None:
        if self.left.target != self.cell.source.start or self.cell.source.target != self.right.start:
            raise EndpointMismatch("whiskering contexts do not meet the cell")

    @cached_property
    def source(self) -> ZigZag:
        inner = self.cell.source if self.forward else self.cell.target
        return compose(self.left, inner, self.right)

    @cached_property
    def target(self) -> ZigZag:
        inner = self.cell.target if self.forward else self.cell.source
        return compose(self.left, inner, self.right)

    def flipped(self) -> WhiskeredCell:
        return WhiskeredCell(self.left, self.cell, self.right, not self.forward)


@dataclass(frozen=True)
class RewriteZigZag:
    """A chain of whiskered cells starting at the zig-zag ``source``.

    The chain condition is not enforced here; `check_rewrite_zigzag` reports it.
    """

    source: ZigZag
    cells: tuple[WhiskeredCell, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.cells, tuple):
            object.__setattr__(self, "cells", tuple(self.cells))

    @property
    def target(self) -> ZigZag:
        return self.cells[-1].target if self.cells else self.source

    def __len__(self) -> int:
        return len(self.cells)

    @classmethod
    def empty(cls, u: ZigZag) -> RewriteZigZag:
        return cls(u, ())

    @classmethod
    def single(cls, cell: AtomicCell, left: ZigZag | None = None, right: ZigZag | None = None,
               forward: bool = True) -> RewriteZigZag:
        left = ZigZag.empty(cell.source.start) if left is None else left
        right = ZigZag.empty(cell.source.target) if right is None else right
        wc = WhiskeredCell(left, cell, right, forward)
        return cls(wc.source, (wc,))


def whisker(left: ZigZag, rz: RewriteZigZag, right: ZigZag) -> RewriteZigZag:
    if left.target != rz.source.start or rz.source.target != right.start:
        raise EndpointMismatch("whiskering contexts do not meet the rewrite zig-zag")
    if not left.steps and not right.steps:
        return rz
    cells = tuple(
        WhiskeredCell(compose(left, c.left), c.cell, compose(c.right, right), c.forward) for c in rz.cells
    )
    return RewriteZigZag(compose(left, rz.source, right), cells)


def rz_compose(a: RewriteZigZag, *rest: RewriteZigZag) -> RewriteZigZag:
    cells = list(a.cells)
    here = a.target
    for b in rest:
        if b.source != here:
            raise CellChainMismatch(f"cannot compose rewrite zig-zags: {here} != {b.source}")
        cells.extend(b.cells)
        here = b.target
    return RewriteZigZag(a.source, tuple(cells))


def rz_invert(a: RewriteZigZag) -> RewriteZigZag:
    return RewriteZigZag(a.target, tuple(c.flipped() for c in reversed(a.cells)))


def inv_cancellation(u: ZigZag) -> RewriteZigZag:
    """Rewrite ``u . u^-1`` down to the empty zig-zag, innermost pair first."""
    steps = u.steps
    n = len(steps)
    source = compose(u, invert(u))
    cells = []
    for k in range(n - 1, -1, -1):
        s = steps[k]
        cell = AtomicCell.rinv(s.step) if s.forward else AtomicCell.linv(s.step)
        prefix = u[:k]
        cells.append(WhiskeredCell(prefix, cell, invert(prefix), True))
    return RewriteZigZag(source, tuple(cells))


def check_atomic_cell(system: RewritingSystem, cell: AtomicCell,
                      lc: LocalConfluenceStructure | None = None) -> str | None:
    """First problem with ``cell`` as a cell of ``system``, or None."""
    for label, z in (("source", cell.source), ("target", cell.target)):
        problem = system.check_zigzag(z)
        if problem:
            return f"{label}: {problem}"
    src = cell.source.steps
    if cell.kind is CellKind.GENERATOR:
        declared = system.cells.get(cell.name)
        if declared is None:
            return f"unknown 2-cell generator {cell.name!r}"
        if declared != (cell.source, cell.target):
            return f"2-cell generator {cell.name} does not match its declaration"
        return None
    if cell.kind in (CellKind.RINV, CellKind.LINV):
        if len(src) != 2 or src[0].step != src[1].step:
            return f"{cell.kind.value} source must be a step followed by its inverse"
        want = AtomicCell.rinv(src[0].step) if cell.kind is CellKind.RINV else AtomicCell.linv(src[0].step)
        if want != cell:
            return f"malformed {cell.kind.value} cell"
        return None
    # diamond
    if len(src) != 2 or src[0].forward or not src[1].forward:
        return "diamond source is not a local peak"
    if lc is None:
        return "no local confluence structure to validate a diamond cell against"
    try:
        valley = lc.resolve(src[0].step, src[1].step)
    except Exception as e:  # any resolution failure invalidates the cell
        return f"peak cannot be resolved: {e}"
    if valley != cell.target:
        return "diamond target differs from the chosen valley"
    return None


def check_rewrite_zigzag(system: RewritingSystem, rz: RewriteZigZag,
                         lc: LocalConfluenceStructure | None = None) -> Report:
    problem = system.check_zigzag(rz.source)
    if problem:
        return Report.failed(f"source: {problem}", index=None)
    here = rz.source
    for i, c in enumerate(rz.cells):
        for label, z in (("left context", c.left), ("right context", c.right)):
            problem = system.check_zigzag(z)
            if problem:
                return Report.failed(f"cell {i}: {label}: {problem}", index=i)
        problem = check_atomic_cell(system, c.cell, lc)
        if problem:
            return Report.failed(f"cell {i}: {problem}", index=i)
        if c.source != here:
            return Report.failed(f"cell {i}: source does not match the previous target", index=i)
        here = c.target
    return Report.passed(f"{len(rz.cells)} cells", index=None)
