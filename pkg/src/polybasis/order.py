"""Termination orders and the list extension.

A system is terminating when it carries a transitive Noetherian order ``>`` on
objects with ``x > y`` for every step ``x -> y``. Three order kinds exist:
reachability in a finite acyclic graph, word length for strictly shortening
string rules, and an explicit finite list of pairs (closed transitively).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import GRAPH, SRS, Obj, RewritingSystem, ZigZag, format_object
from .errors import ModeMismatch, Report

REACHABILITY = "reachability"
LENGTH = "length"
EXPLICIT = "explicit"


class TerminationOrder:
    kind: str = ""
    mode: str | None = None  # the system mode this order is valid for

    def gt(self, x: Obj, y: Obj) -> bool:
        raise NotImplementedError

    def _check(self, system: RewritingSystem) -> Report:
        raise NotImplementedError


class ReachabilityOrder(TerminationOrder):
    """``x > y`` iff ``y`` is reachable from ``x`` in one or more steps."""

    kind = REACHABILITY
    mode = GRAPH

    def __init__(self, system: RewritingSystem):
        if not system.is_graph:
            raise ModeMismatch("reachability order needs a graph-mode system")
        self.system = system
        self._succ: dict[Obj, list[Obj]] = {x: [] for x in system.objects}
        for src, tgt in system.graph_steps.values():
            self._succ[src].append(tgt)
        self._reach: dict[Obj, frozenset] = {}

    def reachable(self, x: Obj) -> frozenset:
        if x not in self._reach:
            seen: set = set()
            stack = list(self._succ.get(x, ()))
            while stack:
                y = stack.pop()
                if y not in seen:
                    seen.add(y)
                    stack.extend(self._succ[y])
            self._reach[x] = frozenset(seen)
        return self._reach[x]

    def gt(self, x: Obj, y: Obj) -> bool:
        return y in self.reachable(x)

    def find_cycle(self) -> list[Obj] | None:
        """A directed cycle ``[a, ..., a]`` of the step graph, or None."""
        white, grey, black = 0, 1, 2
        colour = {x: white for x in self.system.objects}
        for root in self.system.objects:
            if colour[root] != white:
                continue
            path = [root]
            colour[root] = grey
            iters = [iter(self._succ[root])]
            while iters:
                nxt = next(iters[-1], None)
                if nxt is None:
                    colour[path.pop()] = black
                    iters.pop()
                elif colour[nxt] == grey:
                    return path[path.index(nxt):] + [nxt]
                elif colour[nxt] == white:
                    colour[nxt] = grey
                    path.append(nxt)
                    iters.append(iter(self._succ[nxt]))
        return None

    def _check(self, system: RewritingSystem) -> Report:
        cycle = self.find_cycle()
        if cycle is not None:
            return Report.failed("reduction graph has a cycle: " + " -> ".join(map(str, cycle)), cycle=cycle)
        # every step src -> tgt satisfies src > tgt by construction of reachability
        return Report.passed("reduction graph is acyclic")


class LengthOrder(TerminationOrder):
    """``x > y`` iff ``len(x) > len(y)``; Noetherian on words."""

    kind = LENGTH
    mode = SRS

    def gt(self, x: Obj, y: Obj) -> bool:
        return len(x) > len(y)

    def _check(self, system: RewritingSystem) -> Report:
        for r in system.rules:
            if not len(r.lhs) > len(r.rhs):
                return Report.failed(
                    f"rule {r.name} does not shorten words ({len(r.lhs)} -> {len(r.rhs)})", rule=r.name
                )
        return Report.passed("every rule strictly shortens words")


class ExplicitOrder(TerminationOrder):
    """Transitive closure of a finite set of pairs ``(x, y)`` meaning ``x > y``.

    Objects not mentioned in any pair are incomparable to everything.
    """

    kind = EXPLICIT
    mode = GRAPH

    def __init__(self, pairs: Iterable[tuple[Obj, Obj]]):
        self.pairs = [tuple(p) for p in pairs]
        below: dict[Obj, set] = {}
        for x, y in self.pairs:
            below.setdefault(x, set()).add(y)
            below.setdefault(y, set())
        # transitive closure by DFS from every element; the carrier is finite
        self._closure: dict[Obj, frozenset] = {}
        for x in below:
            seen: set = set()
            stack = list(below[x])
            while stack:
                y = stack.pop()
                if y not in seen:
                    seen.add(y)
                    stack.extend(below[y])
            self._closure[x] = frozenset(seen)

    def gt(self, x: Obj, y: Obj) -> bool:
        return y in self._closure.get(x, ())

    def _check(self, system: RewritingSystem) -> Report:
        reflexive = sorted((x for x, below in self._closure.items() if x in below), key=str)
        if reflexive:
            return Report.failed(
                f"closure of the declared pairs is reflexive at {reflexive[0]}", cycle=[reflexive[0]]
            )
        for name, (src, tgt) in system.graph_steps.items():
            if not self.gt(src, tgt):
                return Report.failed(f"step {name}: {src} > {tgt} does not hold", rule=name)
        return Report.passed("declared order is irreflexive and decreases along every step")


def check_noetherian(system: RewritingSystem, order: TerminationOrder) -> Report:
    """PASS iff ``order`` is Noetherian and every step decreases in it."""
    if order.mode is not None and order.mode != system.mode:
        raise ModeMismatch(f"{order.kind} order is not valid for a {system.mode}-mode system")
    return order._check(system)


def gt(order: TerminationOrder, x: Obj, y: Obj) -> bool:
    return order.gt(x, y)


def list_ext_gt(order: TerminationOrder | Callable[[Obj, Obj], bool], xs: Sequence, ys: Sequence) -> bool:
    """Decide the list extension of a transitive strict order.

    ``xs > ys`` iff ``ys`` splits into ``len(xs)`` consecutive blocks, block i
    being either ``[xs[i]]`` or a (possibly empty) list of elements all below
    ``xs[i]``, with at least one block of the second kind.
    """
    greater = order.gt if isinstance(order, TerminationOrder) else order
    xs, ys = tuple(xs), tuple(ys)
    n, m = len(xs), len(ys)

    @lru_cache(maxsize=None)
    def match(i: int, j: int, changed: bool) -> bool:
        if i == n:
            return j == m and changed
        x = xs[i]
        if j < m and ys[j] == x and match(i + 1, j + 1, changed):
            return True
        k = j
        while True:
            if match(i + 1, k, True):
                return True
            if k == m or not greater(x, ys[k]):
                return False
            k += 1

    return match(0, 0, False)


def zigzag_measure(u: ZigZag) -> list[Obj]:
    """The object sequence of ``u``, endpoints included."""
    return u.objects


def inner_objects(u: ZigZag) -> list[Obj]:
    return u.objects[1:-1]


def describe_chain(objs: Sequence[Obj]) -> str:
    return "[" + ", ".join(format_object(o) for o in objs) + "]"
