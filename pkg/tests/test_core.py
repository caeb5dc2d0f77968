from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polybasis import (
    EndpointMismatch,
    NoMatch,
    OrientedStep,
    RewritingSystem,
    ZigZag,
    compose,
    find_local_peak,
    free_group_system,
    invert,
    length,
)

from oracles import random_walk, redexes


@pytest.fixture(scope="module")
def fg1():
    return free_group_system(["a"])


@pytest.fixture(scope="module")
def fg2():
    return free_group_system(["a", "b"])


@pytest.fixture(scope="module")
def fork():
    # x -> y, x -> z, y -> w, z -> w
    return RewritingSystem.graph("fork", "xyzw", [("s", "x", "y"), ("t", "x", "z"), ("p", "y", "w"), ("q", "z", "w")])


def test_compose_empty_is_identity(fork):
    e = ZigZag.empty("x")
    assert compose(e, e) == e


def test_compose_two_steps(fork):
    s, p = fork.step("s", "x"), fork.step("p", "y")
    u = compose(ZigZag.of(s), ZigZag.of(p))
    assert len(u) == 2 and u.start == "x" and u.target == "w"


def test_compose_rejects_endpoint_mismatch(fork):
    with pytest.raises(EndpointMismatch):
        compose(ZigZag.of(fork.step("s", "x")), ZigZag.of(fork.step("q", "z")))


def test_free_group_closed_zigzag(fg1):
    w = fg1.word("aA")
    # independent scan: exactly one redex in "aA"
    assert len(redexes([(r.lhs, r.rhs) for r in fg1.rules], w)) == 1
    (s,) = fg1.steps_from(w)
    u = compose(ZigZag.of(s), invert(ZigZag.of(s)))
    assert u.is_closed and u.objects == [w, (), w]


def test_invert_basics(fork):
    s = fork.step("s", "x")
    assert invert(ZigZag.empty("x")) == ZigZag.empty("x")
    assert invert(ZigZag.of(s)).steps == (OrientedStep(s, False),)


def test_invert_mixed_length_three(fork):
    s, t, q = fork.step("s", "x"), fork.step("t", "x"), fork.step("q", "z")
    u = ZigZag.of(OrientedStep(s, False), OrientedStep(t), OrientedStep(q))
    expected = [OrientedStep(x.step, not x.forward) for x in reversed(u.steps)]
    assert list(invert(u).steps) == expected
    assert invert(u).start == u.target


def test_length(fork):
    s, p = fork.step("s", "x"), fork.step("p", "y")
    assert length(ZigZag.empty("x")) == 0
    assert length(ZigZag.of(OrientedStep(s), OrientedStep(s, False))) == 2
    assert length(ZigZag.of(s, p)) == 2


def test_find_local_peak_none_on_valley(fork):
    v = ZigZag.of(fork.step("p", "y"), OrientedStep(fork.step("q", "z"), False))
    assert v.is_valley and find_local_peak(v) is None


def test_find_local_peak_single(fork):
    s, t = fork.step("s", "x"), fork.step("t", "x")
    u = ZigZag.of(OrientedStep(s, False), OrientedStep(t))
    prefix, peak, suffix = find_local_peak(u)
    assert prefix == ZigZag.empty("y") and suffix == ZigZag.empty("z")
    assert peak == (OrientedStep(s, False), OrientedStep(t))


def test_find_local_peak_is_leftmost(fork):
    s, t, p, q = (fork.step(n, src) for n, src in [("s", "x"), ("t", "x"), ("p", "y"), ("q", "z")])
    # y <~ x ~> z <~ x ~> y: peaks at positions 0-1 and 2-3
    u = ZigZag.of(OrientedStep(s, False), OrientedStep(t), OrientedStep(t, False), OrientedStep(s))
    pairs = [i for i in range(len(u) - 1) if not u.steps[i].forward and u.steps[i + 1].forward]
    assert pairs == [0, 2]
    prefix, _, suffix = find_local_peak(u)
    assert len(prefix) == 0 and len(suffix) == 2


def test_step_errors(fg1):
    with pytest.raises(NoMatch):
        fg1.step("aA", fg1.word("Aa"), 0)


def test_zigzag_rejects_noncomposable(fork):
    with pytest.raises(EndpointMismatch):
        ZigZag("x", (OrientedStep(fork.step("p", "y")),))


def _zigzags(system, seed, n, max_len):
    rng = random.Random(seed)
    starts = [system.word(w) for w in ("aAbB", "abBA", "aA", "", "BbAa")]
    return [random_walk(system, rng.choice(starts), rng.randint(0, max_len), rng) for _ in range(n)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_invert_is_involutive_antihomomorphism(seed):
    fg = free_group_system(["a", "b"])
    (u,) = _zigzags(fg, seed, 1, 6)
    rng = random.Random(seed + 1)
    v = random_walk(fg, u.target, rng.randint(0, 5), rng)
    w = random_walk(fg, v.target, rng.randint(0, 5), rng)
    assert invert(invert(u)) == u
    assert invert(compose(u, v)) == compose(invert(v), invert(u))
    assert compose(compose(u, v), w) == compose(u, compose(v, w))
    assert length(compose(u, v)) == length(u) + length(v)
    multiset = sorted(map(repr, (s.step for s in compose(u, v))))
    assert sorted(map(repr, (s.step for s in compose(invert(v), invert(u))))) == multiset


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_find_local_peak_iff_not_valley(seed):
    fg = free_group_system(["a", "b"])
    (u,) = _zigzags(fg, seed, 1, 7)
    scan = [i for i in range(len(u) - 1) if not u.steps[i].forward and u.steps[i + 1].forward]
    found = find_local_peak(u)
    assert (found is None) == (not scan) == u.is_valley
    if found:
        prefix, (b, f), suffix = found
        assert len(prefix) == scan[0]
        assert compose(prefix, ZigZag.of(b, f), suffix) == u


def test_closed_length_zero_iff_empty(fg1):
    # set-level objects: a closed zig-zag of length 0 is the empty one
    for k in range(4):
        for w in itertools.product("aA", repeat=k):
            z = ZigZag.empty(w)
            assert z.is_closed and len(z) == 0
