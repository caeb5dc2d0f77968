"""Text formats: system files, zig-zag literals, witness and certificate files.

System files are TOML::

    [system]
    name = "free-group"
    mode = "srs"                 # or "graph"
    alphabet = ["a", "A"]        # srs mode
    [[rules]]
    name = "aA"
    lhs = ["a", "A"]
    rhs = []
    [order]
    kind = "length"              # "reachability" | "explicit" (with pairs = [[x, y], ...])

Graph mode uses ``objects = [...]`` and ``[[steps]]`` tables (name, src, tgt).
Optional ``[[cells]]`` tables declare 2-cell generators (name, source, target
given as zig-zag literals).

A zig-zag literal is ``<start> ; step[@pos][!] , ...`` where ``!`` marks a
backward step, ``@pos`` is the rule position (string mode) and ``<start>`` is
an object name or a quoted word.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path
from typing import Iterator

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
import tomli_w

from .cells import AtomicCell, CellKind, RewriteZigZag, WhiskeredCell
from .certify import ARITY, Certificate, DiamondFill, EmptyFill, Invert, InvPair, Paste, Rotate
from .coherence import BasisWitness
from .core import GRAPH, SRS, Obj, OrientedStep, RewritingSystem, StringRule, ZigZag, format_object
from .errors import CellChainMismatch, EndpointMismatch, InvalidStep, ModeMismatch, ParseError
from .order import EXPLICIT, LENGTH, REACHABILITY, ExplicitOrder, LengthOrder, ReachabilityOrder

WITNESS_HEADER = "POLYBASIS-WITNESS 1"
CERT_HEADER = "POLYBASIS-CERT 1"

_RESERVED = set(' \t\n"|;,@!#')


# -- system files ---------------------------------------------------------

def _build_system(doc: dict) -> RewritingSystem:
    meta = doc.get("system")
    if not isinstance(meta, dict):
        raise ParseError("missing [system] section")
    name = meta.get("name", "unnamed")
    mode = meta.get("mode")
    if mode == GRAPH:
        objects = [str(o) for o in meta.get("objects", doc.get("objects", []))]
        steps = [(str(s["name"]), str(s["src"]), str(s["tgt"])) for s in doc.get("steps", [])]
        _check_names(n for n, _, _ in steps)
        for o in objects:
            if not o or _RESERVED & set(o):
                raise ParseError(f"object name {o!r} contains reserved characters")
        system = RewritingSystem.graph(name, objects, steps)
    elif mode == SRS:
        alphabet = [str(a) for a in meta.get("alphabet", doc.get("alphabet", []))]
        for a in alphabet:
            if not a or _RESERVED & set(a):
                raise ParseError(f"letter {a!r} contains reserved characters")
        rules = [StringRule(r["name"], _letters(r["lhs"]), _letters(r.get("rhs", []))) for r in doc.get("rules", [])]
        _check_names(r.name for r in rules)
        system = RewritingSystem.srs(name, alphabet, rules)
    else:
        raise ParseError(f"[system] mode must be 'graph' or 'srs', got {mode!r}")

    order = doc.get("order", {})
    kind = order.get("kind", REACHABILITY if mode == GRAPH else LENGTH)
    if kind == REACHABILITY:
        system.order = ReachabilityOrder(system)
    elif kind == LENGTH:
        if mode != SRS:
            raise ModeMismatch("length order is only valid in srs mode")
        system.order = LengthOrder()
    elif kind == EXPLICIT:
        system.order = ExplicitOrder((str(x), str(y)) for x, y in order.get("pairs", []))
    else:
        raise ParseError(f"unknown order kind {kind!r}")

    for c in doc.get("cells", []):
        src = parse_zigzag(system, c["source"])
        tgt = parse_zigzag(system, c["target"])
        if src.start != tgt.start or src.target != tgt.target:
            raise ParseError(f"2-cell {c['name']}: source and target are not parallel")
        system.cells[c["name"]] = (src, tgt)
    return system


def _check_names(names) -> None:
    for n in names:
        if not n or _RESERVED & set(n):
            raise ParseError(f"name {n!r} contains reserved characters")


def _letters(x) -> tuple:
    if isinstance(x, str):
        return tuple(x)
    return tuple(str(a) for a in x)


def parse_system(text: str) -> RewritingSystem:
    try:
        doc = tomllib.loads(text)
        return _build_system(doc)
    except ParseError:
        raise
    except (tomllib.TOMLDecodeError, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad system file: {e}") from e


def load_system(path: str | Path) -> RewritingSystem:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_system(text)


def system_to_dict(system: RewritingSystem) -> dict:
    doc: dict = {"system": {"name": system.name, "mode": system.mode}}
    if system.is_graph:
        doc["system"]["objects"] = list(system.objects)
        doc["steps"] = [{"name": n, "src": s, "tgt": t} for n, (s, t) in system.graph_steps.items()]
    else:
        doc["system"]["alphabet"] = list(system.alphabet)
        doc["rules"] = [{"name": r.name, "lhs": list(r.lhs), "rhs": list(r.rhs)} for r in system.rules]
    order = system.order
    if order is not None:
        doc["order"] = {"kind": order.kind}
        if order.kind == EXPLICIT:
            doc["order"]["pairs"] = [list(p) for p in order.pairs]
    if system.cells:
        doc["cells"] = [{"name": n, "source": format_zigzag(s), "target": format_zigzag(t)}
                        for n, (s, t) in system.cells.items()]
    return doc


def dump_system(system: RewritingSystem) -> str:
    return tomli_w.dumps(system_to_dict(system))


# -- zig-zag literals -------------------------------------------------------

def format_zigzag(u: ZigZag) -> str:
    return str(u)


def parse_object(system: RewritingSystem, text: str) -> Obj:
    text = text.strip()
    if system.is_graph:
        if not system.is_object(text):
            raise ParseError(f"unknown object {text!r}")
        return text
    if len(text) < 2 or text[0] != '"' or text[-1] != '"':
        raise ParseError(f"expected a quoted word, got {text!r}")
    body = text[1:-1]
    if all(len(a) == 1 for a in system.alphabet):
        letters = tuple(body.replace(" ", ""))
    else:
        letters = tuple(body.split())
    try:
        return system.word(letters)
    except InvalidStep as e:
        raise ParseError(str(e)) from e


_STEP = re.compile(r"^(?P<name>[^@!\s]+)(?:@(?P<pos>\d+))?(?P<back>!)?$")


def parse_zigzag(system: RewritingSystem, text: str) -> ZigZag:
    head, sep, body = text.partition(";")
    start = parse_object(system, head)
    here = start
    steps = []
    items = [x.strip() for x in body.split(",")] if body.strip() else []
    for i, item in enumerate(items):
        m = _STEP.match(item)
        if not m:
            raise ParseError(f"step {i}: cannot parse {item!r}")
        name = m["name"]
        pos = int(m["pos"]) if m["pos"] is not None else None
        if not system.is_graph and pos is None:
            raise ParseError(f"step {i}: {item!r} needs a position in srs mode")
        try:
            if m["back"]:
                s = system.step_into(name, here, pos)
                steps.append(OrientedStep(s, False))
                here = s.source
            else:
                s = system.step(name, here, pos)
                steps.append(OrientedStep(s, True))
                here = s.target
        except InvalidStep as e:
            raise ParseError(f"step {i}: {item!r}: {e}") from e
    return ZigZag(start, tuple(steps))


# -- witness files ----------------------------------------------------------

def dump_rewrite(rz: RewriteZigZag, u: ZigZag | None = None, v: ZigZag | None = None,
                 system_name: str = "") -> str:
    lines = [WITNESS_HEADER, f"system: {system_name}"]
    if u is not None:
        lines.append(f"u: {u}")
    if v is not None:
        lines.append(f"v: {v}")
    lines.append(f"source: {rz.source}")
    lines.append(f"cells: {len(rz.cells)}")
    for i, c in enumerate(rz.cells):
        lines.append(f"cell {i} {'+' if c.forward else '-'} {c.cell.kind.value}"
                     + (f" {c.cell.name}" if c.cell.name else ""))
        lines.append(f"  left: {c.left}")
        lines.append(f"  src: {c.cell.source}")
        lines.append(f"  tgt: {c.cell.target}")
        lines.append(f"  right: {c.right}")
    return "\n".join(lines) + "\n"


def dump_witness(w: BasisWitness, system_name: str = "") -> str:
    return dump_rewrite(w.witness, w.u, w.v, system_name)


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            yield n, line


def _field(item: tuple[int, str], key: str) -> str:
    n, line = item
    k, sep, value = line.strip().partition(":")
    if not sep or k.strip() != key:
        raise ParseError(f"line {n}: expected '{key}:'")
    return value.strip()


def parse_witness(system: RewritingSystem, text: str) -> tuple[RewriteZigZag, ZigZag | None, ZigZag | None]:
    """Parse a witness file into ``(rewrite zig-zag, u, v)``; u and v may be absent."""
    lines = list(_lines(text))
    if not lines or lines[0][1].strip() != WITNESS_HEADER:
        raise ParseError(f"missing header {WITNESS_HEADER!r}")
    try:
        return _parse_witness_body(system, lines)
    except IndexError as e:
        raise ParseError("truncated witness file") from e


def _parse_witness_body(system: RewritingSystem, lines: list[tuple[int, str]]
                        ) -> tuple[RewriteZigZag, ZigZag | None, ZigZag | None]:
    pos = 1
    u = v = None
    _field(lines[pos], "system")
    pos += 1
    if lines[pos][1].startswith("u:"):
        u = parse_zigzag(system, _field(lines[pos], "u"))
        pos += 1
    if lines[pos][1].startswith("v:"):
        v = parse_zigzag(system, _field(lines[pos], "v"))
        pos += 1
    source = parse_zigzag(system, _field(lines[pos], "source"))
    count = int(_field(lines[pos + 1], "cells"))
    pos += 2
    cells = []
    try:
        while pos < len(lines):
            n, head = lines[pos]
            parts = head.split()
            if len(parts) < 4 or parts[0] != "cell" or parts[2] not in ("+", "-"):
                raise ParseError(f"line {n}: bad cell header")
            kind = CellKind(parts[3])
            name = parts[4] if len(parts) > 4 else None
            left = parse_zigzag(system, _field(lines[pos + 1], "left"))
            src = parse_zigzag(system, _field(lines[pos + 2], "src"))
            tgt = parse_zigzag(system, _field(lines[pos + 3], "tgt"))
            right = parse_zigzag(system, _field(lines[pos + 4], "right"))
            cells.append(WhiskeredCell(left, AtomicCell(kind, src, tgt, name), right, parts[2] == "+"))
            pos += 5
    except ParseError:
        raise
    except (ValueError, EndpointMismatch) as e:
        raise ParseError(f"malformed cell block: {e}") from e
    if count != len(cells):
        # well-formed text whose content is inconsistent: a validation failure, not a parse error
        raise CellChainMismatch(f"file declares {count} cells but contains {len(cells)}")
    return RewriteZigZag(source, tuple(cells)), u, v


# -- certificate files ------------------------------------------------------

_NODE_FIELDS = {
    "EmptyFill": ("obj",),
    "InvPair": ("u",),
    "Rotate": ("u", "v"),
    "Paste": ("u", "v", "w"),
    "Invert": ("u",),
    "DiamondFill": ("peak",),
}


def dump_certificate(cert: Certificate, goal: ZigZag, system_name: str = "") -> str:
    lines = [CERT_HEADER, f"system: {system_name}", f"goal: {goal}"]
    for i, node in enumerate(cert.nodes()):
        lines.append(f"node {i} {node.rule}")
        lines.append(f"  conclusion: {node.conclusion}")
        for f in _NODE_FIELDS[node.rule]:
            value = getattr(node, f)
            lines.append(f"  {f}: {format_object(value) if f == 'obj' else value}")
    return "\n".join(lines) + "\n"


def parse_certificate(system: RewritingSystem, text: str) -> tuple[Certificate, ZigZag]:
    lines = list(_lines(text))
    if not lines or lines[0][1].strip() != CERT_HEADER:
        raise ParseError(f"missing header {CERT_HEADER!r}")
    try:
        _field(lines[1], "system")
        goal = parse_zigzag(system, _field(lines[2], "goal"))
        pos = 3
        flat: list[tuple[str, ZigZag, dict]] = []
        while pos < len(lines):
            n, head = lines[pos]
            parts = head.split()
            if len(parts) != 3 or parts[0] != "node" or parts[2] not in ARITY:
                raise ParseError(f"line {n}: bad node header")
            rule = parts[2]
            conclusion = parse_zigzag(system, _field(lines[pos + 1], "conclusion"))
            args = {}
            for k, f in enumerate(_NODE_FIELDS[rule]):
                raw = _field(lines[pos + 2 + k], f)
                args[f] = parse_object(system, raw) if f == "obj" else parse_zigzag(system, raw)
            flat.append((rule, conclusion, args))
            pos += 2 + len(_NODE_FIELDS[rule])
    except IndexError as e:
        raise ParseError("truncated certificate") from e
    except EndpointMismatch as e:
        raise ParseError(str(e)) from e
    return _rebuild(flat), goal


def _rebuild(flat: list[tuple[str, ZigZag, dict]]) -> Certificate:
    # pre-order with known arities: build bottom-up from the end
    stack: list[Certificate] = []
    for rule, conclusion, args in reversed(flat):
        arity = ARITY[rule]
        if len(stack) < arity:
            raise ParseError("certificate tree is missing premises")
        kids = [stack.pop() for _ in range(arity)]
        if rule == "EmptyFill":
            node: Certificate = EmptyFill(conclusion, obj=args["obj"])
        elif rule == "InvPair":
            node = InvPair(conclusion, u=args["u"])
        elif rule == "DiamondFill":
            node = DiamondFill(conclusion, peak=args["peak"])
        elif rule == "Rotate":
            node = Rotate(conclusion, child=kids[0], **args)
        elif rule == "Invert":
            node = Invert(conclusion, child=kids[0], **args)
        else:
            node = Paste(conclusion, first=kids[0], second=kids[1], **args)
        stack.append(node)
    if len(stack) != 1:
        raise ParseError("certificate does not form a single tree")
    return stack[0]


def sniff(text: str) -> str:
    """``'witness'`` or ``'certificate'`` from the header line."""
    first = text.lstrip().splitlines()[0].strip() if text.strip() else ""
    if first == WITNESS_HEADER:
        return "witness"
    if first == CERT_HEADER:
        return "certificate"
    raise ParseError("unrecognised file header")
