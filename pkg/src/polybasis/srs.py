"""String rewriting: normal forms, critical peaks and local confluence synthesis.

Graph-mode systems go through the same entry points (`normalize`,
`synthesize_lc`); only critical-peak analysis is specific to words.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .coherence import LocalConfluenceStructure, max_steps
from .core import (
    Obj,
    OrientedStep,
    RewritingSystem,
    StepRef,
    StringRule,
    Word,
    ZigZag,
    compose,
    format_object,
    invert,
)
from .errors import MeasureViolation, NoMatch, ModeMismatch
from .order import LengthOrder, TerminationOrder


class PeakKind(str, Enum):
    FULL_OVERLAP = "FullOverlap"
    PARTIAL_OVERLAP = "PartialOverlap"
    PEIFFER = "Peiffer"


def apply_rule(word: Sequence[str], rule: StringRule, position: int) -> Word:
    word = tuple(word)
    k = len(rule.lhs)
    if position < 0 or word[position:position + k] != rule.lhs:
        raise NoMatch(f"{rule.name} does not match {format_object(word)} at {position}")
    return word[:position] + rule.rhs + word[position + k:]


def normalize(system: RewritingSystem, obj: Obj) -> tuple[Obj, ZigZag]:
    """Normal form of ``obj`` and the reduction sequence reaching it.

    Always fires the first available step: leftmost position, then earliest rule
    (declaration order in graph mode).
    """
    if not system.is_graph:
        obj = tuple(obj)
    fuel = max_steps()
    steps = []
    here = obj
    while True:
        out = system.steps_from(here)
        if not out:
            return here, ZigZag(obj, tuple(OrientedStep(s) for s in steps))
        if len(steps) >= fuel:
            raise MeasureViolation(f"normalize exceeded {fuel} steps")
        steps.append(out[0])
        here = out[0].target


def classify(s: StepRef, t: StepRef, system: RewritingSystem) -> PeakKind:
    """Overlap kind of two string-mode steps out of the same word."""
    if s == t:
        return PeakKind.FULL_OVERLAP
    a0, a1 = s.position, s.position + len(system.rule(s.generator).lhs)
    b0, b1 = t.position, t.position + len(system.rule(t.generator).lhs)
    if a1 <= b0 or b1 <= a0:
        return PeakKind.PEIFFER
    return PeakKind.PARTIAL_OVERLAP


@dataclass(frozen=True)
class CriticalPeak:
    word: Word
    left: StepRef
    right: StepRef
    kind: PeakKind

    def __str__(self) -> str:
        return (f"{format_object(self.left.target)} <~ {format_object(self.word)} ~> "
                f"{format_object(self.right.target)}  [{self.left} | {self.right}] {self.kind.value}")


def _ordered(s: StepRef, t: StepRef) -> tuple[StepRef, StepRef]:
    # left.position <= right.position; equal positions ordered by rule name
    return (s, t) if (s.position, s.generator) <= (t.position, t.generator) else (t, s)


def critical_peaks(system: RewritingSystem, bound: int | None = None) -> list[CriticalPeak]:
    """Critical peaks of a string rewriting system.

    Overlaps (full and partial) come from placing two left-hand sides so that
    they share at least one letter; Peiffer representatives place them side by
    side. ``bound`` drops peaks whose apex word is longer than it.
    """
    if system.is_graph:
        raise ModeMismatch("critical peaks are defined for string rewriting systems")
    seen: set[tuple] = set()
    out: list[CriticalPeak] = []

    def add(word: Word, p1: int, r1: StringRule, p2: int, r2: StringRule) -> None:
        if bound is not None and len(word) > bound:
            return
        s = StepRef(r1.name, p1, word, word[:p1] + r1.rhs + word[p1 + len(r1.lhs):])
        t = StepRef(r2.name, p2, word, word[:p2] + r2.rhs + word[p2 + len(r2.lhs):])
        s, t = _ordered(s, t)
        key = (word, s, t)
        if key not in seen:
            seen.add(key)
            out.append(CriticalPeak(word, s, t, classify(s, t, system)))

    for r1 in system.rules:
        for r2 in system.rules:
            l1, l2 = r1.lhs, r2.lhs
            # r2 placed at offset d relative to r1; |overlap| >= 1
            for d in range(-(len(l2) - 1), len(l1)):
                p1, p2 = max(0, -d), max(0, d)
                size = max(p1 + len(l1), p2 + len(l2))
                word: list = [None] * size
                ok = True
                for p, lhs in ((p1, l1), (p2, l2)):
                    for i, a in enumerate(lhs):
                        if word[p + i] is None:
                            word[p + i] = a
                        elif word[p + i] != a:
                            ok = False
                if ok:
                    add(tuple(word), p1, r1, p2, r2)
            add(l1 + l2, 0, r1, len(l1), r2)
    return out


def in_context(u: ZigZag, prefix: Word, suffix: Word) -> ZigZag:
    """The string-mode zig-zag ``prefix . u . suffix``."""
    shift = len(prefix)

    def lift(s: StepRef) -> StepRef:
        return StepRef(s.generator, s.position + shift, prefix + s.source + suffix, prefix + s.target + suffix)

    return ZigZag(prefix + u.start + suffix, tuple(OrientedStep(lift(s.step), s.forward) for s in u.steps))


@dataclass(frozen=True)
class ConfluenceFailure:
    left: StepRef
    right: StepRef
    left_normal_form: Obj
    right_normal_form: Obj

    @property
    def apex(self) -> Obj:
        return self.left.source

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return (f"peak {format_object(self.left.target)} <~ {format_object(self.apex)} ~> "
                f"{format_object(self.right.target)} ({self.left} | {self.right}) is not joinable: "
                f"normal forms {format_object(self.left_normal_form)} != {format_object(self.right_normal_form)}")


def _join(system: RewritingSystem, s: StepRef, t: StepRef) -> ZigZag | ConfluenceFailure:
    if s.target == t.target:
        return ZigZag.empty(s.target)
    ny, sy = normalize(system, s.target)
    nz, sz = normalize(system, t.target)
    if ny != nz:
        return ConfluenceFailure(s, t, ny, nz)
    return compose(sy, invert(sz))


def _peiffer_valley(system: RewritingSystem, s: StepRef, t: StepRef) -> ZigZag:
    # s strictly left of t: firing s first shifts t by |rhs| - |lhs|
    if s.position > t.position:
        return invert(_peiffer_valley(system, t, s))
    rs = system.rule(s.generator)
    shift = len(rs.rhs) - len(rs.lhs)
    t_after = system.step(t.generator, s.target, t.position + shift)
    s_after = system.step(s.generator, t.target, s.position)
    return ZigZag(s.target, (OrientedStep(t_after, True), OrientedStep(s_after, False)))


def local_peaks(system: RewritingSystem) -> list[tuple[StepRef, StepRef]]:
    """All local peaks of a graph-mode system, each unordered pair once."""
    out = []
    for x in system.objects:
        steps = system.steps_from(x)
        for i, s in enumerate(steps):
            for t in steps[i:]:
                out.append((s, t))
    return out


def synthesize_lc(system: RewritingSystem, order: TerminationOrder | None = None
                  ) -> LocalConfluenceStructure | ConfluenceFailure:
    """Choose a valley for every local peak, or report a non-joinable one.

    Identical steps and overlapping steps with equal results get the empty
    valley, disjoint redexes commute in one step each, and everything else is
    joined by normalizing both sides (for overlaps: inside the critical word,
    then carried into the surrounding context).
    """
    order = order if order is not None else system.order
    if system.is_graph:
        for s, t in local_peaks(system):
            res = _join(system, s, t)
            if isinstance(res, ConfluenceFailure):
                return res

        def resolve_graph(s: StepRef, t: StepRef) -> ZigZag:
            res = _join(system, s, t)
            if isinstance(res, ConfluenceFailure):
                raise NoMatch(str(res))
            return res

        return LocalConfluenceStructure(system, resolve_graph, order)

    templates: dict[tuple, ZigZag] = {}
    for cp in critical_peaks(system):
        if cp.kind is PeakKind.PARTIAL_OVERLAP:
            res = _join(system, cp.left, cp.right)
            if isinstance(res, ConfluenceFailure):
                return res
            templates[(cp.word, cp.left, cp.right)] = res

    def resolve_word(s: StepRef, t: StepRef) -> ZigZag:
        kind = classify(s, t, system)
        if kind is PeakKind.FULL_OVERLAP:
            return ZigZag.empty(s.target)
        if kind is PeakKind.PEIFFER:
            return _peiffer_valley(system, s, t)
        w = s.source
        lo = min(s.position, t.position)
        hi = max(s.position + len(system.rule(s.generator).lhs), t.position + len(system.rule(t.generator).lhs))
        core, prefix, suffix = w[lo:hi], w[:lo], w[hi:]
        cs = system.step(s.generator, core, s.position - lo)
        ct = system.step(t.generator, core, t.position - lo)
        a, b = _ordered(cs, ct)
        key = (core, a, b)
        if key not in templates:
            raise NoMatch(f"no critical peak template for {format_object(core)}")
        valley = templates[key] if (a, b) == (cs, ct) else invert(templates[key])
        return in_context(valley, prefix, suffix)

    return LocalConfluenceStructure(system, resolve_word, order)


def _inverse_letter(g: str) -> str:
    if len(g) == 1 and g.swapcase() != g:
        return g.swapcase()
    return g + "~"


def free_group_system(generators: Iterable[str], name: str = "free-group") -> RewritingSystem:
    """Words over generators and formal inverses; ``x x^-1 -> empty`` for every letter x."""
    gens = list(generators)
    inv = {g: _inverse_letter(g) for g in gens}
    alphabet = []
    for g in gens:
        alphabet += [g, inv[g]]
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("generator names clash with their formal inverses")
    rules = []
    sep = "" if all(len(a) == 1 for a in alphabet) else "_"
    for g in gens:
        for x, y in ((g, inv[g]), (inv[g], g)):
            rules.append(StringRule(f"{x}{sep}{y}", (x, y), ()))
    system = RewritingSystem.srs(name, alphabet, rules)
    system.order = LengthOrder()
    return system
