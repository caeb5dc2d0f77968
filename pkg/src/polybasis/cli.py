"""``polybasis`` command line.

Exit codes: 0 success, 1 semantic failure (non-terminating, not confluent,
witness rejected, ...), 2 parse or I/O failure.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import formats
from .cells import check_rewrite_zigzag
from .certify import certify_closed, check_certificate
from .coherence import basis_witness
from .core import format_object
from .errors import CellChainMismatch, ParseError, PolybasisError
from .order import check_noetherian
from .srs import ConfluenceFailure, critical_peaks, local_peaks, normalize, synthesize_lc

OK, FAIL, PARSE = 0, 1, 2


def _prepared(system):
    """(order, lc) or raise with the reason the system is unusable."""
    report = check_noetherian(system, system.order)
    if not report.ok:
        raise PolybasisError(f"not terminating: {report}")
    lc = synthesize_lc(system, system.order)
    if isinstance(lc, ConfluenceFailure):
        raise PolybasisError(f"not locally confluent: {lc}")
    return system.order, lc


def cmd_check(args, out) -> int:
    system = formats.load_system(args.file)
    status = OK
    report = check_noetherian(system, system.order)
    print(f"termination ({system.order.kind}): {report}", file=out)
    if not report.ok:
        status = FAIL
    if system.is_graph:
        peaks = local_peaks(system)
        print(f"local peaks: {len(peaks)}", file=out)
        for s, t in peaks:
            print(f"  {s.target} <~ {s.source} ~> {t.target}  [{s} | {t}]", file=out)
    else:
        peaks = critical_peaks(system)
        counts = {}
        for cp in peaks:
            counts[cp.kind.value] = counts.get(cp.kind.value, 0) + 1
        summary = ", ".join(f"{k}={counts.get(k, 0)}" for k in ("FullOverlap", "PartialOverlap", "Peiffer"))
        print(f"critical peaks: {len(peaks)} ({summary})", file=out)
        for cp in peaks:
            print(f"  {cp}", file=out)
    if status != OK:
        # normal forms need termination; joining peaks could loop forever
        print("local confluence: skipped (not terminating)", file=out)
        return status
    lc = synthesize_lc(system, system.order)
    if isinstance(lc, ConfluenceFailure):
        print(f"local confluence: FAIL: {lc}", file=out)
        status = FAIL
    else:
        print("local confluence: PASS (all peaks joinable)", file=out)
    return status


def cmd_basis(args, out) -> int:
    system = formats.load_system(args.file)
    u = formats.parse_zigzag(system, args.u)
    v = formats.parse_zigzag(system, args.v)
    order, lc = _prepared(system)
    w = basis_witness(system, order, lc, u, v)
    report = check_rewrite_zigzag(system, w.witness, lc)
    if not report.ok:
        print(f"internal error: emitted witness does not check: {report}", file=sys.stderr)
        return FAIL
    Path(args.out).write_text(formats.dump_witness(w, system.name))
    print(f"wrote {len(w.witness)} cells to {args.out}", file=out)
    return OK


def cmd_certify(args, out) -> int:
    system = formats.load_system(args.file)
    u = formats.parse_zigzag(system, args.u)
    if not u.is_closed:
        print("zig-zag is not closed", file=sys.stderr)
        return FAIL
    order, lc = _prepared(system)
    cert = certify_closed(system, order, lc, u)
    Path(args.out).write_text(formats.dump_certificate(cert, u, system.name))
    print(f"wrote certificate with {sum(1 for _ in cert.nodes())} nodes to {args.out}", file=out)
    return OK


def cmd_verify(args, out) -> int:
    system = formats.load_system(args.file)
    try:
        text = Path(args.artifact).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {args.artifact}: {e}") from e
    lc = synthesize_lc(system, system.order)
    if isinstance(lc, ConfluenceFailure):
        lc = None
    if formats.sniff(text) == "witness":
        try:
            rz, u, v = formats.parse_witness(system, text)
        except CellChainMismatch as e:
            print(f"witness: FAIL: {e}", file=out)
            return FAIL
        report = check_rewrite_zigzag(system, rz, lc)
        if report.ok and u is not None and rz.source != u:
            report.ok, report.messages = False, ["witness source differs from u"]
        if report.ok and v is not None and rz.target != v:
            report.ok, report.messages = False, ["witness target differs from v"]
        print(f"witness: {report}", file=out)
    else:
        cert, goal = formats.parse_certificate(system, text)
        report = check_certificate(system, lc, cert, goal)
        print(f"certificate: {report}", file=out)
    return OK if report.ok else FAIL


def cmd_normalize(args, out) -> int:
    system = formats.load_system(args.file)
    text = args.word
    if not system.is_graph and not text.startswith('"'):
        text = f'"{text}"'
    obj = formats.parse_object(system, text)
    nf, seq = normalize(system, obj)
    print(f"{format_object(nf)} ({len(seq)} steps)", file=out)
    return OK


def reduction_graph_dot(system, max_word_len: int | None = None) -> str:
    lines = [f'digraph "{system.name}" {{']
    if system.is_graph:
        nodes = list(system.objects)
    else:
        if max_word_len is None:
            raise ParseError("--max-word-len is required for srs systems")
        nodes = [w for k in range(max_word_len + 1) for w in itertools.product(system.alphabet, repeat=k)]
    ids = {obj: f"n{i}" for i, obj in enumerate(nodes)}
    for obj, ident in ids.items():
        label = format_object(obj).replace('"', "")
        lines.append(f'  {ident} [label="{label}"];')
    for obj in nodes:
        for s in system.steps_from(obj):
            if s.target in ids:
                lines.append(f'  {ids[obj]} -> {ids[s.target]} [label="{s}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args, out) -> int:
    system = formats.load_system(args.file)
    out.write(reduction_graph_dot(system, args.max_word_len))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polybasis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="termination and local confluence report")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("basis", help="write a rewrite witness between two parallel zig-zags")
    c.add_argument("file")
    c.add_argument("u")
    c.add_argument("v")
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(func=cmd_basis)

    c = sub.add_parser("certify", help="write a derivation certificate for a closed zig-zag")
    c.add_argument("file")
    c.add_argument("u")
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("verify", help="check a witness or certificate file")
    c.add_argument("file")
    c.add_argument("artifact")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("normalize", help="print the normal form of an object")
    c.add_argument("file")
    c.add_argument("word")
    c.set_defaults(func=cmd_normalize)

    c = sub.add_parser("graph", help="emit the reduction graph as DOT")
    c.add_argument("file")
    c.add_argument("--dot", action="store_true", help="DOT output (the only format)")
    c.add_argument("--max-word-len", type=int, default=None)
    c.set_defaults(func=cmd_graph)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return PARSE if e.code else OK
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return PARSE
    except PolybasisError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
