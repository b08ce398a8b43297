"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .arith import format_rational, is_fundamental_discriminant, is_prime
from .bernoulli import L_neg, bernoulli, gen_bernoulli, zeta_neg
from .cohen import cohen_H, siegel_factor
from .eisenstein import VARIANTS, EisensteinSpec, check_integrality, expansion
from .ellmod import count_congruent_systems, hecke_field_separability, hecke_matrix, miller_basis
from .quadform import TIndexedSeries
from .search import DEFAULT_D_LIST, candidate_primes, check_nonvanishing, format_table, table1, table_json
from .sklift import EigenData, HalfIntegralData, NonIntegralError, congruence_check, theorem_sk_verify


class UsageError(Exception):
    pass


def _require(ok: bool, flag: str, message: str) -> None:
    if not ok:
        raise UsageError(f"{flag}: {message}")


def _fundamental(D: int, flag: str = "--d") -> int:
    _require(is_fundamental_discriminant(D), flag, f"{D} is not a fundamental discriminant")
    return D


def _prime(p: int, flag: str = "--p") -> int:
    _require(is_prime(p), flag, f"{p} is not prime")
    return p


def _weight(k: int, flag: str = "--k") -> int:
    _require(k >= 4 and k % 2 == 0, flag, f"must be even and >= 4, got {k}")
    return k


def _d_list(values: list[str] | None) -> list[int]:
    if not values:
        return list(DEFAULT_D_LIST)
    out = []
    for v in values:
        for x in v.split(","):
            if x:
                try:
                    out.append(_fundamental(int(x)))
                except ValueError:
                    raise UsageError(f"--d: invalid discriminant {x!r}") from None
    return out


def _emit(args, data, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_bernoulli(args) -> int:
    value = format_rational(bernoulli(args.n))
    _emit(args, {"n": args.n, "value": value}, value)
    return 0


def cmd_genbernoulli(args) -> int:
    _require(args.n >= 1, "n", f"must be >= 1, got {args.n}")
    _fundamental(args.d)
    value = format_rational(gen_bernoulli(args.n, args.d))
    _emit(args, {"n": args.n, "D": args.d, "value": value}, value)
    return 0


def cmd_zeta(args) -> int:
    s = args.at
    if s > -1 or s % 2 == 0:
        raise UsageError(f"--at: must be a negative odd integer, got {s}")
    value = format_rational(zeta_neg(1 - s))
    _emit(args, {"s": s, "value": value}, value)
    return 0


def cmd_lvalue(args) -> int:
    if args.at > 0:
        raise UsageError(f"--at: must be <= 0, got {args.at}")
    _fundamental(args.d)
    value = format_rational(L_neg(1 - args.at, args.d))
    _emit(args, {"s": args.at, "D": args.d, "value": value}, value)
    return 0


def cmd_cohen(args) -> int:
    _require(args.r >= 3 and args.r % 2, "r", f"must be odd and >= 3, got {args.r}")
    _require(args.N >= 0, "N", f"must be >= 0, got {args.N}")
    value = format_rational(cohen_H(args.r, args.N))
    _emit(args, {"r": args.r, "N": args.N, "value": value}, value)
    return 0


def cmd_siegel_factor(args) -> int:
    _weight(args.k)
    _require(args.N > 0 and args.N % 4 in (0, 3), "N", f"{args.N} is not 0 or 3 mod 4")
    value = siegel_factor(args.N, args.k)
    _emit(args, {"N": args.N, "k": args.k, "value": value}, str(value))
    return 0


def cmd_eis_coeffs(args) -> int:
    _weight(args.k)
    _require(args.max_det >= 3, "--max-det", f"must be >= 3, got {args.max_det}")
    series = expansion(EisensteinSpec(args.k, args.variant), args.max_det)
    _emit(args, series.to_json(), series.dumps())
    return 0


def cmd_check_integrality(args) -> int:
    _weight(args.k)
    _prime(args.p)
    _require(args.p - 1 > 2 * args.k - 2, "--p", f"need p - 1 > 2k - 2, got p={args.p}, k={args.k}")
    _require(args.max_det >= 3, "--max-det", f"must be >= 3, got {args.max_det}")
    report = check_integrality(EisensteinSpec(args.k, args.variant), args.p, args.max_det)
    data = {
        "k": args.k,
        "p": args.p,
        "maxdet": args.max_det,
        "checked": report.checked,
        "ok": report.ok,
        "violations": [
            {"key": list(key), "value": format_rational(v), "ord": o} for key, v, o in report.violations
        ],
    }
    lines = [f"checked {report.checked} coefficients: {'ok' if report.ok else 'VIOLATIONS'}"]
    lines += [f"{' '.join(map(str, key))} {format_rational(v)} ord {o}" for key, v, o in report.violations]
    _emit(args, data, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_miller(args) -> int:
    basis = miller_basis(args.weight, args.prec)
    data = [[format_rational(c) for c in f.coeffs] for f in basis]
    text = "\n".join(f"# basis element {i}\n" + f.dumps().rstrip("\n") for i, f in enumerate(basis))
    _emit(args, {"weight": args.weight, "prec": args.prec, "basis": data}, text)
    return 0


def cmd_hecke(args) -> int:
    _prime(args.ell, "--ell")
    M = hecke_matrix(args.weight, args.ell, args.prec)
    rows = [list(r) for r in M.rows]
    text = "\n".join(" ".join(str(x) for x in r) for r in rows)
    _emit(args, {"weight": args.weight, "ell": args.ell, "matrix": rows}, text)
    return 0


def cmd_count_t(args) -> int:
    _prime(args.p)
    _require(args.p > 3, "--p", "p = 2, 3 are not supported")
    t = count_congruent_systems(args.weight, args.p, args.ellbound, args.prec)
    sep = hecke_field_separability(args.weight, args.p)
    _emit(
        args,
        {"weight": args.weight, "p": args.p, "ellbound": args.ellbound, "t": t, "hecke_separable": sep},
        f"t = {t}\nhecke_separable = {str(sep).lower()}",
    )
    return 0


def cmd_search(args) -> int:
    _weight(args.kmin, "--kmin")
    _require(args.kmax % 2 == 0, "--kmax", f"must be even, got {args.kmax}")
    D_list = _d_list(args.d)
    out, lines = [], []
    for k in range(args.kmin, args.kmax + 1, 2):
        entries = []
        for p in candidate_primes(k):
            admissible = [D for D in D_list if check_nonvanishing(k, p, D)]
            entries.append({"p": p, "admissible_D": admissible})
            lines.append(f"k={k} p={p} D={','.join(map(str, admissible)) or '-'}")
        if not entries:
            lines.append(f"k={k} none")
        out.append({"k": k, "candidates": entries})
    _emit(args, out, "\n".join(lines))
    return 0


def cmd_table1(args) -> int:
    _require(args.kmin % 2 == 0, "--kmin", f"must be even, got {args.kmin}")
    _require(args.kmax % 2 == 0, "--kmax", f"must be even, got {args.kmax}")
    rows = table1(args.kmin, args.kmax, _d_list(args.d), args.ellbound)
    if args.json:
        sys.stdout.write(table_json(rows))
    else:
        sys.stdout.write(format_table(rows))
    return 0


def cmd_sk_verify(args) -> int:
    h = phi = None
    if args.h_file:
        with open(args.h_file) as fh:
            h = HalfIntegralData.loads(args.k, fh.read())
    if args.eigen_file:
        with open(args.eigen_file) as fh:
            phi = EigenData.loads(2 * args.k - 2, fh.read())
    D = _d_list(args.d)[0] if args.d else -4
    report = theorem_sk_verify(args.k, args.p, D, args.max_det, h, phi)
    lines = [f"[{'PASS' if s.ok else 'FAIL'}] {s.name}" + (f" ({s.detail})" if s.detail else "") for s in report.stages]
    _emit(args, report.to_json(), "\n".join(lines))
    return 0 if report.ok else 1


def cmd_congruence_check(args) -> int:
    _prime(args.p)
    with open(args.lhs) as fh:
        lhs = TIndexedSeries.load(fh)
    with open(args.rhs) as fh:
        rhs = TIndexedSeries.load(fh)
    try:
        report = congruence_check(lhs, rhs, args.p)
    except NonIntegralError as exc:
        _emit(args, {"ok": False, "error": str(exc)}, f"error: {exc}")
        return 1
    text = f"{'ok' if report.ok else 'FAILED'}: {report.checked} keys checked"
    if report.first_failure:
        f = report.first_failure
        text += (
            f"\nfirst failure at {' '.join(map(str, f.key))}: "
            f"{format_rational(f.lhs)} vs {format_rational(f.rhs)} (ord {f.ord_gap})"
        )
    _emit(args, report.to_json(), text)
    return 0 if report.ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    parser = argparse.ArgumentParser(prog="siegelcong", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("bernoulli", cmd_bernoulli, "Bernoulli number B_n")
    p.add_argument("n", type=int)

    p = add("genbernoulli", cmd_genbernoulli, "generalized Bernoulli number B_{n,chi_D}")
    p.add_argument("n", type=int)
    p.add_argument("--d", type=int, required=True)

    p = add("zeta", cmd_zeta, "zeta(s) at a negative odd integer")
    p.add_argument("--at", type=int, required=True)

    p = add("lvalue", cmd_lvalue, "L(s, chi_D) at a non-positive integer")
    p.add_argument("--at", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("cohen", cmd_cohen, "Cohen's H(r, N)")
    p.add_argument("r", type=int)
    p.add_argument("N", type=int)

    p = add("siegel-factor", cmd_siegel_factor, "product of local factors S_T for det(2T) = N")
    p.add_argument("N", type=int)
    p.add_argument("--k", type=int, required=True)

    p = add("eis-coeffs", cmd_eis_coeffs, "Fourier coefficients of G_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-det", type=int, default=50)
    p.add_argument("--variant", choices=VARIANTS, default="content-sum")

    p = add("check-integrality", cmd_check_integrality, "p-integrality scan of G_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-det", type=int, default=400)
    p.add_argument("--variant", choices=VARIANTS, default="content-sum")

    p = add("miller", cmd_miller, "Miller basis of M_w")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--prec", type=int, default=10)

    p = add("hecke", cmd_hecke, "matrix of T_ell on the cuspidal Miller basis")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--prec", type=int, default=None)

    p = add("count-t", cmd_count_t, "count eigen-systems congruent to the Eisenstein system")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ellbound", type=int, default=20)
    p.add_argument("--prec", type=int, default=None)

    for name, func, help in (
        ("search", cmd_search, "candidate primes and admissible discriminants"),
        ("table1", cmd_table1, "reproduce the congruence-prime table"),
    ):
        p = add(name, func, help)
        p.add_argument("--kmin", type=int, default=10)
        p.add_argument("--kmax", type=int, default=20)
        p.add_argument("--d", action="append", help="discriminant(s); repeat or comma-separate")
        if name == "table1":
            p.add_argument("--ellbound", type=int, default=20)

    p = add("sk-verify", cmd_sk_verify, "verify the SK congruence to G_k for (k, p, D)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", action="append")
    p.add_argument("--max-det", type=int, default=400)
    p.add_argument("--h-file")
    p.add_argument("--eigen-file")

    p = add("congruence-check", cmd_congruence_check, "compare two series files mod p")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--p", type=int, required=True)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
