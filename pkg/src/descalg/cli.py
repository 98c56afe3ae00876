"""
Command-line interface: ``descalg <command> [options]``.

Exit codes: 0 success, 1 a verification (or rank comparison) failed,
2 usage error.  Output is deterministic given the arguments and seed.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

from .compositions import Subset, fibonacci_order
from .dynkin import eigenvalues, left_multiply_dynkin, vnq_action_matrix
from .image import image_dimension, is_diagonalizable
from .scalars import CyclotomicNumber
from .serialize import (action_matrix_to_csv, action_matrix_to_json, dumps, scalar_to_csv,
                        scalar_to_json, sigma_to_csv, sigma_to_json)
from .sigma import SigmaElement, multiply_b
from .verify import SUITES, CapExceeded, run_suite

CAPS = {"expand": 12, "multiply": 8, "eigenvalues": 12, "rank": 9, "diag-probe": 8}
DIAG_SYMBOLIC_CAP = 6
TABLE_CAP = 30
MAX_P = 12


class UsageError(Exception):
    pass


class QMode:
    """A parsed ``--q`` value: ``symbolic``, ``rat:a/b``, ``root:p`` or ``int:k``."""

    def __init__(self, text: str):
        text = text.strip()
        if text == "symbolic":
            self.kind, self.value, self.label = "symbolic", None, "symbolic"
            return
        kind, _, arg = text.partition(":")
        try:
            if kind == "rat":
                value = Fraction(arg)
                self.kind, self.value = "rational", value.numerator if value.denominator == 1 else value
                self.label = f"rat:{value}"
            elif kind == "int":
                self.kind, self.value = "integer", int(arg)
                self.label = f"int:{self.value}"
            elif kind == "root":
                p = int(arg)
                if p < 1:
                    raise UsageError(f"root of unity order must be >= 1, got {p}")
                self.kind, self.value, self.label = "root", CyclotomicNumber.zeta(p), f"root:{p}"
            else:
                raise UsageError(f"bad --q {text!r}; expected symbolic, rat:a/b, root:p or int:k")
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --q {text!r}: {exc}") from None

    def __repr__(self):
        return self.label


def _q_arg(text: str) -> QMode:
    try:
        return QMode(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _set_arg(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-", "{}", "none"):
        return ()
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--n", type=int, help="size of the symmetric group")
    g.add_argument("--q", type=_q_arg, default=QMode("symbolic"),
                   help="symbolic | rat:a/b | root:p | int:k (default symbolic)")
    g.add_argument("--format", choices=("json", "csv"), default=None,
                   help="output format (default json; csv for table)")
    g.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    g.add_argument("--seed", type=int, default=0, help="seed for sampled suites (default 0)")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for verify (default 1)")
    g.add_argument("--unsafe-no-cap", action="store_true",
                   help="lift the size caps (may run for a very long time)")
    idx = argparse.ArgumentParser(add_help=False)
    idx.add_argument("--I", type=_set_arg, default=(), metavar="i,j,..", help="subset I of [n-1]")
    idx.add_argument("--J", type=_set_arg, default=(), metavar="i,j,..", help="subset J of [n-1]")
    idx.add_argument("--K", type=_set_arg, default=None, metavar="i,j,..",
                     help="report only the coefficient of B_K")

    parser = argparse.ArgumentParser(
        prog="descalg",
        description="Exact computations with the q-deformed Dynkin operator in the descent algebra.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("expand", parents=[common, idx], help="V_n^(q) B_I in the B basis")
    p.add_argument("--matrix", action="store_true", help="emit the whole action matrix instead")
    sub.add_parser("multiply", parents=[common, idx], help="B_J B_I by the Mackey formula")
    sub.add_parser("eigenvalues", parents=[common], help="the eigenvalues e_I of V_n^(q)")
    p = sub.add_parser("rank", parents=[common], help="dimension of the image at a p-th root of unity")
    p.add_argument("--p", type=int, required=True)
    p = sub.add_parser("table", parents=[common], help="table of Fibonacci numbers of order p")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--p", type=_int_list, default=(2, 3, 4, 5, 6), metavar="p,p,..")
    p.add_argument("--with-power", action="store_true", help="add a column with 2^(n-1)")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--n-cap", type=int, default=None, help="largest n to check (default: suite cap)")
    sub.add_parser("diag-probe", parents=[common],
                   help="exploratory: is u -> V_n^(q) u diagonalizable?")
    return parser


# ---------------------------------------------------------------------------


def _need_n(args, cap: int) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.n > cap and not args.unsafe_no_cap:
        raise UsageError(f"{args.command} is capped at n <= {cap} (use --unsafe-no-cap)")
    return args.n


def _subset(n: int, members, flag: str) -> Subset:
    try:
        return Subset.from_members(n, members)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _single_coefficient(f: SigmaElement, K: Subset, fmt: str) -> str:
    c = f.coefficient(K)
    if fmt == "csv":
        return _csv([["set", "coeff"], [" ".join(map(str, K.members)), scalar_to_csv(c)]])
    return dumps({"n": f.n, "set": list(K.members), "coeff": scalar_to_json(c)})


def cmd_expand(args) -> tuple[str, int]:
    n = _need_n(args, CAPS["expand"])
    fmt = args.format or "json"
    q = args.q.value
    if args.matrix:
        if q is not None and q == 0:
            raise UsageError("the action matrix needs invertible q; at q = 0 it is the identity")
        M = vnq_action_matrix(n, q)
        return (action_matrix_to_csv(M) if fmt == "csv" else dumps(action_matrix_to_json(M))), 0
    I = _subset(n, args.I, "--I")
    f = left_multiply_dynkin(SigmaElement.basis_element(n, I), q)
    if args.K is not None:
        return _single_coefficient(f, _subset(n, args.K, "--K"), fmt), 0
    return (sigma_to_csv(f) if fmt == "csv" else dumps(sigma_to_json(f))), 0


def cmd_multiply(args) -> tuple[str, int]:
    n = _need_n(args, CAPS["multiply"])
    fmt = args.format or "json"
    f = multiply_b(_subset(n, args.I, "--I"), _subset(n, args.J, "--J"))
    if args.K is not None:
        return _single_coefficient(f, _subset(n, args.K, "--K"), fmt), 0
    return (sigma_to_csv(f) if fmt == "csv" else dumps(sigma_to_json(f))), 0


def cmd_eigenvalues(args) -> tuple[str, int]:
    n = _need_n(args, CAPS["eigenvalues"])
    eig = eigenvalues(n, args.q.value)
    if (args.format or "json") == "csv":
        rows = [["set", "eigenvalue"]]
        rows += [[" ".join(map(str, I.members)), scalar_to_csv(e)] for I, e in eig.items()]
        return _csv(rows), 0
    return dumps({"n": n, "q": args.q.label,
                  "eigenvalues": [{"set": list(I.members), "value": scalar_to_json(e)}
                                  for I, e in eig.items()]}), 0


def cmd_rank(args) -> tuple[str, int]:
    n = _need_n(args, CAPS["rank"])
    if not 2 <= args.p <= MAX_P and not args.unsafe_no_cap:
        raise UsageError(f"--p must lie in [2, {MAX_P}], got {args.p}")
    if args.p < 2:
        raise UsageError(f"--p must be >= 2, got {args.p}")
    rank = image_dimension(n, args.p)
    fib = fibonacci_order(n, args.p)
    report = {"n": n, "p": args.p, "rank": rank, "fibonacci": fib, "match": rank == fib}
    if (args.format or "json") == "csv":
        text = _csv([list(report), [n, args.p, rank, fib, str(rank == fib).lower()]])
    else:
        text = dumps(report)
    return text, 0 if rank == fib else 1


def cmd_table(args) -> tuple[str, int]:
    if args.max_n < 0:
        raise UsageError(f"--max-n must be >= 0, got {args.max_n}")
    if args.max_n > TABLE_CAP and not args.unsafe_no_cap:
        raise UsageError(f"table is capped at --max-n <= {TABLE_CAP} (use --unsafe-no-cap)")
    ps = args.p
    if not ps or any(p < 2 for p in ps):
        raise UsageError("--p needs one or more orders, each >= 2")
    rows = []
    for n in range(args.max_n + 1):
        row = {"n": n, "values": {str(p): fibonacci_order(n, p) for p in ps}}
        if args.with_power:
            row["power"] = 2 ** (n - 1) if n >= 1 else 1
        rows.append(row)
    if (args.format or "csv") == "json":
        return dumps({"max_n": args.max_n, "p": list(ps), "rows": rows}), 0
    header = ["n"] + [f"p={p}" for p in ps] + (["2^(n-1)"] if args.with_power else [])
    lines = [header]
    for row in rows:
        lines.append([row["n"]] + [row["values"][str(p)] for p in ps]
                     + ([row["power"]] if args.with_power else []))
    return _csv(lines), 0


def cmd_verify(args) -> tuple[str, int]:
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        try:
            reports.append(run_suite(name, args.n_cap, args.seed, args.jobs, args.unsafe_no_cap))
        except CapExceeded as exc:
            raise UsageError(str(exc)) from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    failed = any(r["status"] != "pass" for r in reports)
    if (args.format or "json") == "csv":
        rows = [["suite", "n_cap", "seed", "cases", "status"]]
        rows += [[r["suite"], r["n_cap"], r["seed"], r["cases"], r["status"]] for r in reports]
        text = _csv(rows)
    else:
        text = dumps(reports[0] if len(reports) == 1 else {"suites": reports})
    return text, 1 if failed else 0


def cmd_diag_probe(args) -> tuple[str, int]:
    n = _need_n(args, CAPS["diag-probe"])
    if args.q.kind == "symbolic" and n > DIAG_SYMBOLIC_CAP and not args.unsafe_no_cap:
        raise UsageError(f"symbolic diag-probe is capped at n <= {DIAG_SYMBOLIC_CAP}; "
                         "pass a field value with --q")
    result = is_diagonalizable(n, args.q.value)
    report = {"n": n, "q": args.q.label, "diagonalizable": result,
              "note": "exploratory probe; no claim is made for other n or q"}
    if (args.format or "json") == "csv":
        return _csv([["n", "q", "diagonalizable"], [n, args.q.label, str(result).lower()]]), 0
    return dumps(report), 0


COMMANDS = {
    "expand": cmd_expand,
    "multiply": cmd_multiply,
    "eigenvalues": cmd_eigenvalues,
    "rank": cmd_rank,
    "table": cmd_table,
    "verify": cmd_verify,
    "diag-probe": cmd_diag_probe,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"descalg {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
