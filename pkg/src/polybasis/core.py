"""Objects, reduction steps and zig-zags of a 1-polygraph.

Two kinds of rewriting system are supported:

* graph mode: a finite set of named objects and named steps ``name: src -> tgt``;
* string mode: words over a finite alphabet and rules ``lhs -> rhs``, a step
  being one rule applied at one position of a word.

Objects are plain hashable values (``str`` in graph mode, ``tuple`` of letters
in string mode), so equality is decidable and there is exactly one empty
zig-zag per object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import EndpointMismatch, InvalidStep, ModeMismatch, NoMatch

Obj = Hashable
Word = tuple  # tuple[str, ...]

GRAPH = "graph"
SRS = "srs"


def format_object(obj: Obj) -> str:
    if isinstance(obj, tuple):
        sep = "" if all(len(a) == 1 for a in obj) else " "
        return '"' + sep.join(obj) + '"'
    return str(obj)


@dataclass(frozen=True)
class StepRef:
    """One reduction step ``source -> target``.

    ``position`` is ``None`` in graph mode. In string mode the same rule at two
    different positions gives two different steps.
    """

    generator: str
    position: int | None
    source: Obj
    target: Obj

    @property
    def key(self) -> tuple[str, int]:
        return (self.generator, -1 if self.position is None else self.position)

    def __str__(self) -> str:
        if self.position is None:
            return self.generator
        return f"{self.generator}@{self.position}"


@dataclass(frozen=True)
class OrientedStep:
    step: StepRef
    forward: bool = True

    @property
    def source(self) -> Obj:
        return self.step.source if self.forward else self.step.target

    @property
    def target(self) -> Obj:
        return self.step.target if self.forward else self.step.source

    def inverse(self) -> OrientedStep:
        return OrientedStep(self.step, not self.forward)

    def __str__(self) -> str:
        return str(self.step) + ("" if self.forward else "!")


@dataclass(frozen=True)
class ZigZag:
    """A composable list of oriented steps starting at ``start``."""

    start: Obj
    steps: tuple[OrientedStep, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))
        here = self.start
        for i, s in enumerate(self.steps):
            if s.source != here:
                raise EndpointMismatch(
                    f"step {i} ({s}) starts at {format_object(s.source)}, "
                    f"expected {format_object(here)}"
                )
            here = s.target

    @classmethod
    def empty(cls, obj: Obj) -> ZigZag:
        return cls(obj, ())

    @classmethod
    def of(cls, *steps: OrientedStep | StepRef) -> ZigZag:
        """Zig-zag of the given (non-empty) steps; bare ``StepRef``s go forward."""
        if not steps:
            raise ValueError("use ZigZag.empty(obj) for the empty zig-zag")
        oriented = tuple(s if isinstance(s, OrientedStep) else OrientedStep(s) for s in steps)
        return cls(oriented[0].source, oriented)

    @property
    def target(self) -> Obj:
        return self.steps[-1].target if self.steps else self.start

    @property
    def objects(self) -> list[Obj]:
        return [self.start] + [s.target for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[OrientedStep]:
        return iter(self.steps)

    def __getitem__(self, i: slice) -> ZigZag:
        if not isinstance(i, slice) or i.step not in (None, 1):
            raise TypeError("zig-zags only support contiguous slicing")
        start, stop, _ = i.indices(len(self.steps))
        stop = max(start, stop)
        origin = self.steps[start].source if start < len(self.steps) else self.target
        return ZigZag(origin, self.steps[start:stop])

    @property
    def is_closed(self) -> bool:
        return self.start == self.target

    @property
    def is_positive(self) -> bool:
        return all(s.forward for s in self.steps)

    @property
    def is_negative(self) -> bool:
        return not any(s.forward for s in self.steps)

    @property
    def is_valley(self) -> bool:
        return not any(b.forward and not a.forward for a, b in zip(self.steps, self.steps[1:]))

    def split_valley(self) -> tuple[ZigZag, ZigZag]:
        """For a valley ``v . w^-1`` return the two positive legs ``(v, w)``."""
        if not self.is_valley:
            raise ValueError("not a valley")
        k = 0
        while k < len(self.steps) and self.steps[k].forward:
            k += 1
        return self[:k], invert(self[k:])

    def __str__(self) -> str:
        body = " , ".join(str(s) for s in self.steps)
        return f"{format_object(self.start)} ;" + (f" {body}" if body else "")


def compose(u: ZigZag, *rest: ZigZag) -> ZigZag:
    steps = list(u.steps)
    here = u.target
    for v in rest:
        if v.start != here:
            raise EndpointMismatch(
                f"cannot compose: {format_object(here)} != {format_object(v.start)}"
            )
        steps.extend(v.steps)
        here = v.target
    return ZigZag(u.start, tuple(steps))


def invert(u: ZigZag) -> ZigZag:
    return ZigZag(u.target, tuple(s.inverse() for s in reversed(u.steps)))


def length(u: ZigZag) -> int:
    return len(u.steps)


def find_local_peak(u: ZigZag) -> tuple[ZigZag, tuple[OrientedStep, OrientedStep], ZigZag] | None:
    """Leftmost local peak ``y <~ x ~> z`` of ``u`` with its context, or None for a valley.

    Reading left to right, a local peak is a backward step immediately
    followed by a forward step; both leave the apex ``x``.
    """
    steps = u.steps
    for i in range(len(steps) - 1):
        if not steps[i].forward and steps[i + 1].forward:
            return u[:i], (steps[i], steps[i + 1]), u[i + 2:]
    return None


@dataclass(frozen=True)
class StringRule:
    name: str
    lhs: Word
    rhs: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise ValueError(f"rule {self.name}: empty left-hand side")


def occurrences(pattern: Sequence, word: Sequence) -> Iterator[int]:
    n, k = len(word), len(pattern)
    pattern = tuple(pattern)
    for p in range(n - k + 1):
        if tuple(word[p:p + k]) == pattern:
            yield p


@dataclass
class RewritingSystem:
    """A graph-mode or string-mode rewriting system.

    ``cells`` holds optional declared 2-cell generators ``name -> (source, target)``.
    ``order`` is the declared termination order, if any.
    """

    name: str
    mode: str
    objects: tuple = ()
    graph_steps: dict[str, tuple[Obj, Obj]] = field(default_factory=dict)
    alphabet: tuple = ()
    rules: tuple[StringRule, ...] = ()
    cells: dict = field(default_factory=dict)
    order: object = None

    def __post_init__(self) -> None:
        if self.mode not in (GRAPH, SRS):
            raise ModeMismatch(f"unknown mode {self.mode!r}")
        self.objects = tuple(self.objects)
        self.alphabet = tuple(self.alphabet)
        self.rules = tuple(self.rules)
        self._object_set = frozenset(self.objects)
        self._letters = frozenset(self.alphabet)
        self._rules_by_name = {r.name: r for r in self.rules}
        if len(self._rules_by_name) != len(self.rules):
            raise ValueError("duplicate rule names")
        for name, (src, tgt) in self.graph_steps.items():
            if src not in self._object_set or tgt not in self._object_set:
                raise InvalidStep(f"step {name}: unknown endpoint")
        for r in self.rules:
            bad = [a for a in r.lhs + r.rhs if a not in self._letters]
            if bad:
                raise InvalidStep(f"rule {r.name}: letters {bad} not in alphabet")

    @classmethod
    def graph(cls, name: str, objects: Iterable[Obj], steps: Iterable[tuple[str, Obj, Obj]]) -> RewritingSystem:
        table: dict[str, tuple[Obj, Obj]] = {}
        for step_name, src, tgt in steps:
            if step_name in table:
                raise ValueError(f"duplicate step name {step_name}")
            table[step_name] = (src, tgt)
        return cls(name, GRAPH, objects=tuple(objects), graph_steps=table)

    @classmethod
    def srs(cls, name: str, alphabet: Iterable[str], rules: Iterable[StringRule | tuple]) -> RewritingSystem:
        rs = tuple(r if isinstance(r, StringRule) else StringRule(*r) for r in rules)
        return cls(name, SRS, alphabet=tuple(alphabet), rules=rs)

    @property
    def is_graph(self) -> bool:
        return self.mode == GRAPH

    def rule(self, name: str) -> StringRule:
        try:
            return self._rules_by_name[name]
        except KeyError:
            raise InvalidStep(f"unknown rule {name!r}") from None

    def word(self, letters: Iterable[str] | str) -> Word:
        """Build a word, checking the alphabet. A plain string is split into characters."""
        w = tuple(letters)
        bad = [a for a in w if a not in self._letters]
        if bad:
            raise InvalidStep(f"letters {bad} not in alphabet")
        return w

    def is_object(self, obj: Obj) -> bool:
        if self.is_graph:
            return obj in self._object_set
        return isinstance(obj, tuple) and all(a in self._letters for a in obj)

    def step(self, generator: str, source: Obj = None, position: int | None = None) -> StepRef:
        """The step named ``generator`` leaving ``source`` (at ``position`` in string mode)."""
        if self.is_graph:
            if generator not in self.graph_steps:
                raise InvalidStep(f"unknown step {generator!r}")
            src, tgt = self.graph_steps[generator]
            if source is not None and source != src:
                raise InvalidStep(f"step {generator} leaves {src}, not {source}")
            return StepRef(generator, None, src, tgt)
        r = self.rule(generator)
        if position is None or source is None:
            raise InvalidStep("string-mode steps need a source word and a position")
        source = tuple(source)
        k = len(r.lhs)
        if position < 0 or source[position:position + k] != r.lhs:
            raise NoMatch(f"{r.name} does not match {format_object(source)} at {position}")
        target = source[:position] + r.rhs + source[position + k:]
        return StepRef(r.name, position, source, target)

    def step_into(self, generator: str, target: Obj, position: int | None = None) -> StepRef:
        """The step named ``generator`` arriving at ``target``."""
        if self.is_graph:
            s = self.step(generator)
            if s.target != target:
                raise InvalidStep(f"step {generator} arrives at {s.target}, not {target}")
            return s
        r = self.rule(generator)
        target = tuple(target)
        k = len(r.rhs)
        if position is None or position < 0 or position > len(target) - k or target[position:position + k] != r.rhs:
            raise NoMatch(f"{r.name} cannot produce {format_object(target)} at {position}")
        source = target[:position] + r.lhs + target[position + k:]
        return StepRef(r.name, position, source, target)

    def steps_from(self, obj: Obj) -> list[StepRef]:
        """All steps leaving ``obj``; string mode orders by position, then rule order."""
        if self.is_graph:
            return [StepRef(n, None, s, t) for n, (s, t) in self.graph_steps.items() if s == obj]
        out = []
        w = tuple(obj)
        for p in range(len(w)):
            for r in self.rules:
                k = len(r.lhs)
                if w[p:p + k] == r.lhs:
                    out.append(StepRef(r.name, p, w, w[:p] + r.rhs + w[p + k:]))
        return out

    def steps_into(self, obj: Obj) -> list[StepRef]:
        if self.is_graph:
            return [StepRef(n, None, s, t) for n, (s, t) in self.graph_steps.items() if t == obj]
        out = []
        w = tuple(obj)
        for r in self.rules:
            for p in range(len(w) - len(r.rhs) + 1):
                if w[p:p + len(r.rhs)] == r.rhs:
                    out.append(StepRef(r.name, p, w[:p] + r.lhs + w[p + len(r.rhs):], w))
        return out

    def is_valid_step(self, s: StepRef) -> bool:
        try:
            return self.step(s.generator, s.source, s.position) == s
        except InvalidStep:
            return False

    def check_zigzag(self, u: ZigZag) -> str | None:
        """First problem with ``u`` as a zig-zag of this system, or None."""
        if not self.is_object(u.start):
            return f"unknown object {format_object(u.start)}"
        for i, s in enumerate(u.steps):
            if not self.is_valid_step(s.step):
                return f"step {i} ({s}) is not a step of system {self.name}"
        return None
