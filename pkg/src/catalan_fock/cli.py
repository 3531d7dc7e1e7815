"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cts, fock, partitions, trapezoid
from .errors import DomainError, SizeGuardError
from .exactalg import Rational, format_rational, parse_rational, qpoly_eval, ring_from_json, ring_to_json
from .partitions import GramMatrix, Signature
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_WORD_TOKEN = re.compile(r"([+-])(\d*)")
_SIGN_OPTIONS = ("--word", "--epsilon")
_SIGN_VALUE = re.compile(r"[+\-][+\-\d]*")


class UsageError(Exception):
    pass


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def parse_word(text: str) -> tuple[Signature, list[int] | None]:
    """Split a word like ``--++`` or ``-1-2+3+4`` into signs and 1-based vector labels."""
    signs, labels, pos = [], [], 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise UsageError(f"bad token {text[pos:]!r} in word {text!r}: expected '+' or '-' optionally followed by a label")
        signs.append(1 if m.group(1) == "+" else -1)
        labels.append(int(m.group(2)) if m.group(2) else None)
        pos = m.end()
    if not signs:
        raise UsageError("empty word")
    if all(lab is None for lab in labels):
        return Signature(tuple(signs)), None
    if any(lab is None for lab in labels):
        raise UsageError(f"word {text!r} mixes labelled and unlabelled letters")
    if any(lab < 1 for lab in labels):
        raise UsageError(f"vector labels are 1-based, got {labels}")
    return Signature(tuple(signs)), labels


def load_gram(path: str) -> GramMatrix:
    data = _read_json(path)
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise UsageError(f"{path}: Gram file must be a JSON array of arrays")
    try:
        return GramMatrix(tuple(tuple(parse_rational(x) for x in row) for row in data))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_boundary(path: str) -> list:
    data = _read_json(path)
    if not isinstance(data, list) or not data:
        raise UsageError(f"{path}: boundary file must be a nonempty JSON array")
    try:
        return [ring_from_json(x) for x in data]
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _moment(word: str, gram_path: str | None) -> Any:
    sig, labels = parse_word(word)
    if gram_path is None and labels is None:
        return fock.signature_moment(sig)
    if gram_path is not None:
        gram = load_gram(gram_path)
    else:
        gram = GramMatrix.identity(max(labels))
    if labels is None:
        return fock.gram_moment(sig, gram)
    if max(labels) > gram.size:
        raise UsageError(f"label {max(labels)} exceeds the {gram.size}x{gram.size} Gram matrix")
    vectors = [fock.TestVector.basis(lab - 1, gram.size) for lab in labels]
    return fock.vacuum_moment(fock.OperatorWord.from_signature(sig, vectors), metric=gram)


# -- subcommand handlers; each returns (exit code, text to print) ---------------


def cmd_catalan(args) -> tuple[int, str]:
    values = [trapezoid.catalan_number(n) for n in range(args.upto + 1)]
    if args.format == "json":
        return EXIT_OK, _dumps(values)
    if args.format == "csv":
        return EXIT_OK, _csv(["n", "value"], enumerate(values))
    return EXIT_OK, ",".join(map(str, values))


def _table_out(rows: list[list[int]], fmt: str, col: str) -> str:
    if fmt == "json":
        return _dumps(rows)
    if fmt == "csv":
        return _csv(["n", col, "value"], ((n, k, v) for n, row in enumerate(rows) for k, v in enumerate(row)))
    return "\n".join(" ".join(map(str, row)) for row in rows)


def cmd_triangle(args) -> tuple[int, str]:
    return EXIT_OK, _table_out(trapezoid.triangle_rows(args.rows), args.format, "k")


def cmd_trapezoid(args) -> tuple[int, str]:
    if args.order < 1:
        raise UsageError(f"--order must be >= 1, got {args.order}")
    return EXIT_OK, _table_out(trapezoid.trapezoid_rows(args.order, args.rows), args.format, "k")


def cmd_partitions_enumerate(args) -> tuple[int, str]:
    if args.epsilon is not None:
        sig = Signature.parse(args.epsilon)
        if len(sig) % 2 or (args.n is not None and len(sig) != 2 * args.n):
            raise UsageError(f"--epsilon {args.epsilon!r} does not have length 2n")
        if not partitions.is_plus(sig):
            raise DomainError(f"--epsilon {args.epsilon!r} is not in the plus class")
        found = partitions.enumerate_pp_eps(sig)
        if args.noncrossing:
            found = [p for p in found if partitions.is_noncrossing(p)]
    else:
        if args.n is None:
            raise UsageError("partitions enumerate needs --n or --epsilon")
        found = partitions.enumerate_ncpp(args.n) if args.noncrossing else partitions.enumerate_pp(args.n)
    if args.k is not None:
        found = [p for p in found if partitions.k_class(p) == args.k]
    if args.format == "json":
        return EXIT_OK, _dumps([p.to_json() for p in found])
    if args.format == "csv":
        rows = (
            (i, partitions.k_class(p), int(partitions.is_noncrossing(p)), " ".join(f"{l}-{r}" for l, r in p.pairs))
            for i, p in enumerate(found, start=1)
        )
        return EXIT_OK, _csv(["index", "k", "noncrossing", "pairs"], rows)
    return EXIT_OK, "\n".join(str(p) for p in found)


def cmd_partitions_strata(args) -> tuple[int, str]:
    strata = partitions.count_strata(args.n)
    if args.format == "json":
        return EXIT_OK, _dumps([{"k": k, "pp": a, "ncpp": b} for k, (a, b) in strata.items()])
    if args.format == "csv":
        return EXIT_OK, _csv(["k", "pp", "ncpp"], ((k, a, b) for k, (a, b) in strata.items()))
    return EXIT_OK, "\n".join(f"k={k}: |PP_k|={a} |NCPP_k|={b}" for k, (a, b) in strata.items())


def cmd_cts_solve(args) -> tuple[int, str]:
    b = load_boundary(args.boundary)
    kinds = {type(x).__name__ for x in b}
    if len(kinds) > 1:
        raise UsageError(f"{args.boundary}: boundary mixes rationals and polynomials")
    code = EXIT_OK
    if args.method == "recurrence":
        table = cts.solve_recurrence(b, args.depth)
    else:
        table = cts.solve_closed_form(b, args.depth)
        if args.method == "both":
            check = cts.check_equivalence(b, args.depth)
            if not check.ok:
                print(check.line(), file=sys.stderr)
                code = EXIT_FAILED
    if args.format == "json":
        return code, _dumps(table.to_json())
    if args.format == "csv":
        return code, table.to_csv().rstrip("\n")
    return code, "\n".join(" ".join(str(v) for v in row) for row in table.rows)


def cmd_fock_moment(args) -> tuple[int, str]:
    value = _moment(args.word, args.gram)
    if args.q != "symbolic":
        try:
            value = qpoly_eval(value, parse_rational(args.q))
        except ValueError as exc:
            raise UsageError(f"--q: {exc}") from exc
    if args.format == "json":
        return EXIT_OK, _dumps(ring_to_json(value))
    return EXIT_OK, format_rational(value) if isinstance(value, Rational) else str(value)


def cmd_fock_pnk(args) -> tuple[int, str]:
    values = [(args.n, k, fock.p_nk(args.n, k)) for k in range(1, args.n + 1)]
    if args.format == "json":
        return EXIT_OK, _dumps({f"({n},{k})": str(v) for n, k, v in values})
    if args.format == "csv":
        return EXIT_OK, _csv(["n", "k", "value"], ((n, k, str(v)) for n, k, v in values))
    return EXIT_OK, "\n".join(f"P_{{{n},{k}}} = {v}" for n, k, v in values)


def cmd_fock_pn(args) -> tuple[int, str]:
    values = [(n, fock.p_n(n)) for n in range(1, args.upto + 1)]
    if args.format == "json":
        return EXIT_OK, _dumps({str(n): str(v) for n, v in values})
    if args.format == "csv":
        return EXIT_OK, _csv(["n", "value"], ((n, str(v)) for n, v in values))
    return EXIT_OK, "\n".join(f"P_{n} = {v}" for n, v in values)


def cmd_verify(args) -> tuple[int, str]:
    reports = run_suite(args.suite, args.max_n)
    ok = all(r.ok for r in reports.values())
    if args.format == "json":
        payload = {
            "ok": ok,
            "suites": {
                name: [{"name": c.name, "ok": c.ok, "cases": c.cases, "detail": c.detail} for c in r.checks]
                for name, r in reports.items()
            },
        }
        text = _dumps(payload)
    elif args.format == "csv":
        text = _csv(
            ["suite", "check", "ok", "cases", "detail"],
            ((name, c.name, int(c.ok), c.cases, c.detail) for name, r in reports.items() for c in r.checks),
        )
    else:
        blocks = [f"== {name}\n{r.text()}" for name, r in reports.items()]
        blocks.append("ALL PASS" if ok else "FAILURES PRESENT")
        text = "\n".join(blocks)
    return (EXIT_OK if ok else EXIT_FAILED), text


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None, help="default: json unless stdout is a terminal")

    parser = argparse.ArgumentParser(prog="catalan-fock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalan", parents=[common], help="Catalan numbers C_0..C_N")
    p.add_argument("--upto", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("triangle", parents=[common], help="Catalan's triangle rows 0..N-1")
    p.add_argument("--rows", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("trapezoid", parents=[common], help="Catalan's trapezoid of order M, rows 0..N-1")
    p.add_argument("--order", type=_positive, required=True)
    p.add_argument("--rows", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_trapezoid)

    p = sub.add_parser("partitions", help="pair partitions")
    psub = p.add_subparsers(dest="action", required=True)
    e = psub.add_parser("enumerate", parents=[common], help="list PP(2n), NCPP(2n) or a signature fiber")
    e.add_argument("--n", type=_positive)
    e.add_argument("--noncrossing", action="store_true")
    e.add_argument("--epsilon", metavar="WORD", help="signature over +/-, e.g. --++ ; lists its fiber")
    e.add_argument("--k", type=_positive)
    e.set_defaults(func=cmd_partitions_enumerate)
    s = psub.add_parser("strata", parents=[common], help="|PP_k(2n)| and |NCPP_k(2n)| for every k")
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_partitions_strata)

    p = sub.add_parser("cts", help="Catalan's triangle system")
    csub = p.add_subparsers(dest="action", required=True)
    s = csub.add_parser("solve", parents=[common], help="solve from a boundary file")
    s.add_argument("--boundary", required=True, metavar="FILE")
    s.add_argument("--method", choices=("recurrence", "closed", "both"), default="closed")
    s.add_argument("--depth", type=_positive, help="table depth, at most the boundary length")
    s.set_defaults(func=cmd_cts_solve)

    p = sub.add_parser("fock", help="(q,2)-Fock space moments")
    fsub = p.add_subparsers(dest="action", required=True)
    m = fsub.add_parser("moment", parents=[common], help="vacuum moment of an operator word")
    m.add_argument("--word", required=True, help="letters '+' (creation) or '-' (annihilation), optionally labelled: -1-2+3+4")
    m.add_argument("--gram", metavar="FILE", help="JSON square matrix of rational strings")
    m.add_argument("--q", default="symbolic", help="a rational to evaluate at, or 'symbolic'")
    m.set_defaults(func=cmd_fock_moment)
    k = fsub.add_parser("pnk", parents=[common], help="P_{n,k} for k = 1..n")
    k.add_argument("--n", type=_positive, required=True)
    k.set_defaults(func=cmd_fock_pnk)
    k = fsub.add_parser("pn", parents=[common], help="P_1..P_N")
    k.add_argument("--upto", type=_positive, required=True)
    k.set_defaults(func=cmd_fock_pn)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=_positive, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_sign_words(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--word --++`` as ``--word=--++`` so argparse does not read the value as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in _SIGN_OPTIONS and i + 1 < len(argv) and _SIGN_VALUE.fullmatch(argv[i + 1]):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    argv = _glue_sign_words(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = "text" if stdout.isatty() else "json"
    try:
        code, text = args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
