"""Brute-force reference implementations used by the tests.

The word-level oracles take plain data (rules as ``(lhs, rhs[, name])``
tuples, words as tuples of letters) and never touch the engine. The zig-zag
enumerators only use a system's step enumeration to build their inputs.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from functools import lru_cache


def redexes(rules, word):
    """Every (rule index, position) where a left-hand side occurs in word."""
    out = []
    for i, rule in enumerate(rules):
        lhs = rule[0]
        for p in range(len(word) - len(lhs) + 1):
            if tuple(word[p:p + len(lhs)]) == tuple(lhs):
                out.append((i, p))
    return out


def fire(rules, word, i, p):
    lhs, rhs = rules[i][0], rules[i][1]
    return tuple(word[:p]) + tuple(rhs) + tuple(word[p + len(lhs):])


def all_normal_forms(rules, word):
    """Endpoints of every maximal reduction sequence from word (exhaustive search)."""
    seen, stack, ends = {tuple(word)}, [tuple(word)], set()
    while stack:
        w = stack.pop()
        succ = [fire(rules, w, i, p) for i, p in redexes(rules, w)]
        if not succ:
            ends.add(w)
        for x in succ:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return ends


def descendants(rules, word):
    seen, stack = {tuple(word)}, [tuple(word)]
    while stack:
        w = stack.pop()
        for i, p in redexes(rules, w):
            x = fire(rules, w, i, p)
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return seen


def joinable(rules, x, y):
    return bool(descendants(rules, x) & descendants(rules, y))


def locally_confluent_up_to(rules, alphabet, max_len):
    """True iff every one-step peak on every word of length <= max_len is joinable."""
    for k in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=k):
            succ = [fire(rules, w, i, p) for i, p in redexes(rules, w)]
            for a, b in itertools.combinations(succ, 2):
                if not joinable(rules, a, b):
                    return False
    return True


def has_inverse_pair(word, inverse):
    return any(inverse[a] == b for a, b in zip(word, word[1:]))


def interval_kind(rules, r1, p1, r2, p2):
    """Kind of two redexes from their intervals alone."""
    a0, a1 = p1, p1 + len(rules[r1][0])
    b0, b1 = p2, p2 + len(rules[r2][0])
    if (r1, p1) == (r2, p2):
        return "FullOverlap"
    if a1 <= b0 or b1 <= a0:
        return "Peiffer"
    return "PartialOverlap"


def minimal_peaks(rules, alphabet, max_len):
    """Unordered redex pairs whose two occurrences cover the whole word exactly.

    Overlapping pairs cover it as a union, disjoint pairs must sit side by side.
    Returns a set of (word, (r, p), (r', p'), kind) with the pair sorted.
    """
    out = set()
    for k in range(1, max_len + 1):
        for w in itertools.product(alphabet, repeat=k):
            rx = redexes(rules, w)
            for (r1, p1), (r2, p2) in itertools.combinations_with_replacement(rx, 2):
                a = (p1, p1 + len(rules[r1][0]))
                b = (p2, p2 + len(rules[r2][0]))
                lo, hi = min(a[0], b[0]), max(a[1], b[1])
                if (lo, hi) != (0, k):
                    continue
                kind = interval_kind(rules, r1, p1, r2, p2)
                if kind == "Peiffer" and a[1] != b[0] and b[1] != a[0]:
                    continue
                pair = tuple(sorted([(r1, p1), (r2, p2)], key=lambda x: (x[1], rules_name(rules, x[0]))))
                out.add((w, pair[0], pair[1], kind))
    return out


def rules_name(rules, i):
    return rules[i][2] if len(rules[i]) > 2 else str(i)


# list extension -----------------------------------------------------------

def list_moves(xs, carrier, max_len):
    """One replacement move: some element n becomes a list of elements < n."""
    for i, n in enumerate(xs):
        smaller = [m for m in carrier if m < n]
        room = max_len - len(xs) + 1
        for k in range(room + 1):
            for block in itertools.product(smaller, repeat=k):
                yield xs[:i] + block + xs[i + 1:]


@lru_cache(maxsize=None)
def move_closure(xs, carrier=(0, 1, 2, 3), max_len=5):
    """All lists reachable from xs by one or more moves, intermediate lists capped at max_len."""
    seen = set()
    frontier = deque(list_moves(xs, carrier, max_len))
    while frontier:
        ys = frontier.popleft()
        if ys in seen:
            continue
        seen.add(ys)
        frontier.extend(z for z in list_moves(ys, carrier, max_len) if z not in seen)
    return frozenset(seen)


# zig-zags as plain data --------------------------------------------------

def random_walk(system, start, length, rng: random.Random):
    """Random mixed zig-zag by walking the reduction graph both ways (uses only step enumeration)."""
    from polybasis import OrientedStep, ZigZag

    here, steps = start, []
    for _ in range(length):
        options = [OrientedStep(s, True) for s in system.steps_from(here)]
        options += [OrientedStep(s, False) for s in system.steps_into(here)]
        if not options:
            break
        o = rng.choice(options)
        steps.append(o)
        here = o.target
    return ZigZag(start, tuple(steps))


def zigzags_from(system, start, max_len, max_word_len):
    """Every zig-zag from start of length <= max_len whose visited words stay within max_word_len."""
    from polybasis import OrientedStep, ZigZag

    out = []
    stack = [(start, ())]
    while stack:
        here, steps = stack.pop()
        out.append(ZigZag(start, steps))
        if len(steps) == max_len:
            continue
        options = [OrientedStep(s, True) for s in system.steps_from(here)]
        options += [OrientedStep(s, False) for s in system.steps_into(here) if len(s.source) <= max_word_len]
        for o in options:
            stack.append((o.target, steps + (o,)))
    return out


def closed_zigzags(system, max_len, max_word_len):
    """All closed zig-zags of length <= max_len through words of length <= max_word_len, in a fixed order."""
    found = []
    for k in range(max_word_len + 1):
        for w in itertools.product(system.alphabet, repeat=k):
            found += [z for z in zigzags_from(system, w, max_len, max_word_len) if z.is_closed]
    return found


def reduction_sequences(system, word):
    """Every maximal reduction sequence from word (the graph is finite under termination)."""
    from polybasis import OrientedStep, ZigZag

    done, stack = [], [ZigZag.empty(word)]
    while stack:
        u = stack.pop()
        nxt = system.steps_from(u.target)
        if not nxt:
            done.append(u)
        for s in nxt:
            stack.append(ZigZag(u.start, u.steps + (OrientedStep(s, True),)))
    return done
