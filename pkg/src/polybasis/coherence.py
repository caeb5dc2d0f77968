"""Newman-style rewriting to valleys and the homotopy-basis construction.

Everything here returns explicit `RewriteZigZag` witnesses; nothing is merely
asserted to exist. Recursions that are justified by Noetherian induction are
run as loops, and each iteration checks that its measure really decreased.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from .cells import AtomicCell, RewriteZigZag, WhiskeredCell, inv_cancellation, rz_compose, rz_invert, whisker
from .core import Obj, OrientedStep, RewritingSystem, StepRef, ZigZag, compose, find_local_peak, format_object, invert
from .errors import InvalidStep, MeasureViolation, NotParallel, UnresolvedPeak
from .order import TerminationOrder, describe_chain, inner_objects, list_ext_gt

DEFAULT_MAX_STEPS = 10**6

MeasureHook = Callable[[list, list], None]


def max_steps() -> int:
    raw = os.environ.get("POLYBASIS_MAX_STEPS")
    return int(raw) if raw else DEFAULT_MAX_STEPS


def peak_key(s: StepRef) -> tuple[str, int]:
    return s.key


class LocalConfluenceStructure:
    """A chosen resolution for every local peak ``y <~ x ~> z``.

    ``resolver(s, t)`` is only ever called with ``peak_key(s) <= peak_key(t)``;
    the opposite orientation is answered with the inverted zig-zag, so both
    orientations of a peak use the same diamond. Results are cached.

    With ``require_valley`` (the default) resolutions must be valleys, i.e. this
    is a local confluence structure; otherwise any zig-zag strictly below the
    apex is accepted (a Winkler-Buchberger structure). When ``order`` is given
    the below-apex condition is checked on every resolution.
    """

    def __init__(self, system: RewritingSystem, resolver: Callable[[StepRef, StepRef], ZigZag],
                 order: TerminationOrder | None = None, require_valley: bool = True):
        self.system = system
        self._resolver = resolver
        self.order = order
        self.require_valley = require_valley
        self._cache: dict[tuple[StepRef, StepRef], ZigZag] = {}

    def resolve(self, s: StepRef, t: StepRef) -> ZigZag:
        """Resolution of the peak ``s^-1 . t``, a zig-zag from ``target(s)`` to ``target(t)``."""
        if s.source != t.source:
            raise UnresolvedPeak(f"{s} and {t} do not leave the same object")
        if peak_key(t) < peak_key(s):
            return invert(self.resolve(t, s))
        key = (s, t)
        if key not in self._cache:
            try:
                res = self._resolver(s, t)
            except (KeyError, InvalidStep) as e:
                raise UnresolvedPeak(f"no resolution for peak {s}! , {t} at {format_object(s.source)}: {e}") from e
            if res is None:
                raise UnresolvedPeak(f"no resolution for peak {s}! , {t} at {format_object(s.source)}")
            self._validate(s, t, res)
            self._cache[key] = res
        return self._cache[key]

    def reduct(self, s: StepRef, t: StepRef) -> Obj:
        legs = self.resolve(s, t).split_valley()
        return legs[0].target

    def _validate(self, s: StepRef, t: StepRef, res: ZigZag) -> None:
        if res.start != s.target or res.target != t.target:
            raise UnresolvedPeak(f"resolution of peak {s}!, {t} has the wrong endpoints")
        if self.require_valley and not res.is_valley:
            raise UnresolvedPeak(f"resolution of peak {s}!, {t} is not a valley")
        if self.order is not None:
            apex = s.source
            for obj in inner_objects(res):
                if not self.order.gt(apex, obj):
                    raise MeasureViolation(
                        f"resolution of peak at {format_object(apex)} visits {format_object(obj)}, "
                        "which is not below the apex"
                    )

    def diamond(self, s: StepRef, t: StepRef) -> AtomicCell:
        peak = ZigZag.of(OrientedStep(s, False), OrientedStep(t, True))
        return AtomicCell.diamond(peak, self.resolve(s, t))


@dataclass(frozen=True)
class BasisWitness:
    witness: RewriteZigZag
    u: ZigZag
    v: ZigZag


def _check_input(system: RewritingSystem, u: ZigZag) -> None:
    problem = system.check_zigzag(u)
    if problem:
        raise InvalidStep(problem)


def wb_to_cr(system: RewritingSystem, order: TerminationOrder, lc: LocalConfluenceStructure, u: ZigZag,
             *, on_step: MeasureHook | None = None) -> tuple[RewriteZigZag, ZigZag]:
    """Rewrite ``u`` to a valley by repeatedly replacing its leftmost local peak.

    Returns the rewrite zig-zag and the valley it ends in. Each replacement must
    make the inner object list of the zig-zag smaller in the list extension of
    ``order``; ``on_step(before, after)`` observes every such pair.
    """
    _check_input(system, u)
    fuel = max_steps()
    cells: list[WhiskeredCell] = []
    current = u
    while True:
        found = find_local_peak(current)
        if found is None:
            return RewriteZigZag(u, tuple(cells)), current
        if len(cells) >= fuel:
            raise MeasureViolation(f"wb_to_cr exceeded {fuel} steps")
        prefix, (back, fwd), suffix = found
        wc = WhiskeredCell(prefix, lc.diamond(back.step, fwd.step), suffix, True)
        nxt = wc.target
        before, after = inner_objects(current), inner_objects(nxt)
        if not list_ext_gt(order, before, after):
            raise MeasureViolation(
                f"measure did not decrease: {describe_chain(before)} -> {describe_chain(after)}"
            )
        if on_step is not None:
            on_step(before, after)
        cells.append(wc)
        current = nxt


def contract_closed(system: RewritingSystem, order: TerminationOrder, lc: LocalConfluenceStructure,
                    u: ZigZag, *, on_step: MeasureHook | None = None) -> RewriteZigZag:
    """Rewrite a closed zig-zag ``u`` at ``y`` down to the empty zig-zag at ``y``.

    One round: rewrite ``u`` to a valley ``v . w^-1`` with reduct ``z``. If the
    legs are empty we are done. Otherwise continue with ``w^-1 . v`` at ``z < y``
    inside the context ``v . _ . v^-1``, after inserting ``v . v^-1`` with a
    cancellation run backwards; the same cancellation closes the context at the end.
    """
    if not u.is_closed:
        raise NotParallel("contract_closed needs a closed zig-zag")
    fuel = max_steps()
    left = ZigZag.empty(u.start)
    right = ZigZag.empty(u.start)
    head: list[RewriteZigZag] = []
    tail: list[RewriteZigZag] = []
    current = u
    apex = u.start
    for _ in range(fuel):
        cr, valley = wb_to_cr(system, order, lc, current, on_step=on_step)
        head.append(whisker(left, cr, right))
        v, w = valley.split_valley()
        if not v.steps:
            if w.steps:
                raise MeasureViolation(f"closed valley at {format_object(apex)} has one empty leg")
            break
        reduct = v.target
        if not order.gt(apex, reduct):
            raise MeasureViolation(
                f"recursion object did not decrease: {format_object(apex)} -> {format_object(reduct)}"
            )
        cancel_v = inv_cancellation(v)
        # v.w^-1  =>  v.w^-1.v.v^-1
        head.append(whisker(left, whisker(valley, rz_invert(cancel_v), ZigZag.empty(apex)), right))
        # v.v^-1  =>  empty, applied after the inner contraction
        tail.append(whisker(left, cancel_v, right))
        left = compose(left, v)
        right = compose(invert(v), right)
        current = compose(invert(w), v)
        apex = reduct
    else:
        raise MeasureViolation(f"contract_closed exceeded {fuel} rounds")
    return rz_compose(*head, *reversed(tail))


def basis_witness(system: RewritingSystem, order: TerminationOrder, lc: LocalConfluenceStructure,
                  u: ZigZag, v: ZigZag, *, on_step: MeasureHook | None = None) -> BasisWitness:
    """Rewrite zig-zag from ``u`` to the parallel zig-zag ``v``."""
    if u.start != v.start or u.target != v.target:
        raise NotParallel(
            f"zig-zags are not parallel: {format_object(u.start)}..{format_object(u.target)} vs "
            f"{format_object(v.start)}..{format_object(v.target)}"
        )
    _check_input(system, v)
    vinv = invert(v)
    # u  =>  u.v^-1.v
    grow = whisker(u, rz_invert(inv_cancellation(vinv)), ZigZag.empty(u.target))
    # u.v^-1.v  =>  v
    shrink = whisker(ZigZag.empty(u.start), contract_closed(system, order, lc, compose(u, vinv), on_step=on_step), v)
    return BasisWitness(rz_compose(grow, shrink), u, v)
