"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Rationals are
given as ``p/q`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional, Sequence

from .polycore import MultiPoly, q_str, to_q

PAPER_REFS: Dict[str, str] = {
    "jack": "Jack polynomials as symmetric joint eigenfunctions of Cherednik operators; binomial coefficients",
    "dunkl": "Dunkl operators of types A, C and D on the flat",
    "cherednik": "Cherednik operators: type A product identity, type D Pochhammer identity, type C factorization",
    "norm": "closed norm formulas of the restricted invariants (types C and D)",
    "signature": "spherical signatures and their real-side labels",
    "eigenvalue": "Cayley-Capelli eigenvalues, complex side and corrected real side",
    "zeta": "Hermite-type zeta polynomials: Rodrigues formula and Gaussian-Bessel expansion",
    "bessel": "Bessel kernel series and the Gaussian Fourier eigen-identity",
    "integrals": "Selberg-type constants (I0, I1, Gindikin Gamma, C0) and the flat density normalization C1",
    "domains": "table of real bounded symmetric domains",
    "verify": "all identity suites",
}


class UsageError(Exception):
    pass


def _ints(text: Optional[str], flag: str) -> List[int]:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} must be a comma-separated list of integers, got {text!r}") from None


def _rat(text: Optional[str], flag: str, default=None):
    if text is None:
        if default is None:
            raise UsageError(f"{flag} is required")
        return to_q(default)
    try:
        return to_q(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise UsageError(f"{flag} must be a rational p/q, got {text!r}") from None


def _rats(text: Optional[str], flag: str) -> List:
    if text is None:
        raise UsageError(f"{flag} is required")
    return [_rat(t, flag) for t in text.split(",")]


def _root_data(args, default_kind: str = "C"):
    from .weylops import Kind, RootData

    try:
        kind = Kind.parse(args.kind or default_kind)
    except ValueError:
        raise UsageError(f"--kind must be A, C or D, got {args.kind!r}") from None
    if args.r is None:
        raise UsageError("--r is required")
    a = _rat(args.a, "--a", 1)
    iota = _rat(args.iota, "--iota", 2) if kind is Kind.C else None
    if args.iota is not None and kind is not Kind.C:
        raise UsageError("--iota only applies to --kind C")
    try:
        return RootData(kind, args.r, a, iota)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _signature(args, rd):
    from .branching import SphericalSignature
    from .polycore import partition
    from .weylops import Kind

    m = _ints(args.m, "--m")
    if len(m) != rd.r:
        raise UsageError(f"--m has {len(m)} parts but --r is {rd.r}")
    if any(m[i] < m[i + 1] for i in range(len(m) - 1)) or any(x < 0 for x in m):
        raise UsageError("--m must be a non-increasing list of nonnegative integers")
    ms = args.m_scalar or 0
    if ms and rd.kind is not Kind.D:
        raise UsageError("--m-scalar only applies to --kind D")
    return SphericalSignature(rd.kind, partition(m, rd.r), ms)


def _input_poly(args, r: int) -> MultiPoly:
    if args.poly_json:
        p = MultiPoly.from_json_obj(json.loads(args.poly_json))
        if p.num_vars < r:
            raise UsageError("--poly-json has fewer variables than --r")
        return p
    exp = _ints(args.exp, "--exp")
    if len(exp) != r:
        raise UsageError(f"--exp has {len(exp)} entries but --r is {r}")
    return MultiPoly.monomial(exp)


# subcommands


def cmd_jack(args) -> dict:
    from .jackpoly import jack_omega

    m = _ints(args.m, "--m")
    r = args.r if args.r is not None else len(m)
    a = _rat(args.a, "--a", 1)
    if a <= 0:
        raise UsageError("--a must be positive")
    return jack_omega(tuple(m), r, a).to_json_obj()


def cmd_dunkl(args) -> dict:
    from .weylops import dunkl

    rd = _root_data(args)
    p = _input_poly(args, rd.r)
    j = args.j if args.j is not None else 1
    if not 1 <= j <= rd.r:
        raise UsageError(f"--j must lie in 1..{rd.r}")
    return {"root_data": _rd_obj(rd), "j": j, "input": p.to_json_obj(), "result": dunkl(p, j, rd).to_json_obj()}


def cmd_cherednik(args) -> dict:
    from .weylops import Kind, cherednik, cherednik_product, type_c_factor

    rd = _root_data(args, "A")
    p = _input_poly(args, rd.r)
    out = {"root_data": _rd_obj(rd), "input": p.to_json_obj()}
    if args.j is not None:
        if rd.kind is Kind.C:
            res = type_c_factor(p, args.j, rd)
        else:
            res = cherednik(p, args.j, rd)
        out.update({"j": args.j, "result": res.to_json_obj()})
    else:
        alpha = args.alpha or 0
        if rd.kind is Kind.C:
            raise UsageError("type C has no Cherednik product; pass --j for the factor")
        out.update({"alpha": alpha, "result": cherednik_product(p, rd, alpha).to_json_obj()})
    return out


def cmd_norm(args) -> dict:
    from .branching import fock_norm_closed, fock_norm_gamma, restricted_invariant
    from .weylops import Kind, sigma_inner

    rd = _root_data(args)
    s = _signature(args, rd)
    closed = fock_norm_closed(s, rd)
    out = {"root_data": _rd_obj(rd), "signature": s.to_json_obj(), "closed": q_str(closed), "gamma_form": fock_norm_gamma(s, rd)}
    if rd.kind is Kind.D:
        out["printed"] = q_str(fock_norm_closed(s, rd, printed=True))
    if args.check:
        p = restricted_invariant(s, rd)
        direct = sigma_inner(p, p, rd).real()
        out["direct"] = q_str(direct)
        out["agree"] = direct == closed
    return out


def cmd_signature(args) -> dict:
    from .branching import is_spherical, signature_from_m
    from .weylops import Kind

    kind = (args.kind or "C").upper()
    if kind not in ("C", "D"):
        raise UsageError("--kind must be C or D")
    if args.n is not None:
        s = is_spherical(_ints(args.n, "--n"), kind)
        return {"n": _ints(args.n, "--n"), "spherical": s is not None, "signature": s.to_json_obj() if s else None}
    m = _ints(args.m, "--m")
    s = signature_from_m(m, args.m_scalar or 0, kind)
    return {"signature": s.to_json_obj()}


def cmd_eigenvalue(args) -> dict:
    from .branching import capelli_eigenvalue_complex, capelli_eigenvalue_real, complex_parameters

    rd = _root_data(args)
    s = _signature(args, rd)
    alpha = args.alpha or 0
    rp, ap = complex_parameters(rd)
    real = capelli_eigenvalue_real(s, rd, alpha)
    cplx = capelli_eigenvalue_complex(s.n, rp, ap, alpha)
    printed = capelli_eigenvalue_real(s, rd, alpha, printed=True)
    return {
        "root_data": _rd_obj(rd),
        "signature": s.to_json_obj(),
        "alpha": alpha,
        "r_prime": rp,
        "a_prime": q_str(ap),
        "real": q_str(real),
        "complex": q_str(cplx),
        "printed": q_str(printed),
        "agree": real == cplx,
    }


def cmd_zeta(args) -> dict:
    from .flatcase import zeta_polynomial

    rd = _root_data(args)
    s = _signature(args, rd)
    nu = _rat(args.nu, "--nu", 1)
    if nu <= 0:
        raise UsageError("--nu must be positive")
    return zeta_polynomial(s, rd, nu).to_json_obj()


def cmd_bessel(args) -> dict:
    from .flatcase import bessel_series, gaussian_eigen_check

    rd = _root_data(args)
    if args.lam is not None:
        lam = _rats(args.lam, "--lambda")
        if len(lam) != rd.r:
            raise UsageError(f"--lambda needs {rd.r} entries")
        trunc = args.trunc if args.trunc is not None else 16
        rep = gaussian_eigen_check(rd, _rat(args.nu, "--nu", 1), lam, trunc, seed=args.seed)
        return rep
    trunc = args.trunc if args.trunc is not None else 4
    if trunc % 2:
        raise UsageError("--trunc must be even for the kernel series")
    ser = bessel_series(rd, trunc)
    return {"root_data": _rd_obj(rd), "max_degree": trunc, "kernel": ser.kernel.to_json_obj()}


def cmd_integrals(args) -> dict:
    from . import integrals as I
    from .weylops import Kind, RootData

    which = args.which
    if which == "i0":
        r = args.r or 1
        a = _rat(args.a, "--a", 1)
        sigma = _rat(args.sigma, "--sigma", 4)
        out = {"r": r, "a": q_str(a), "sigma": q_str(sigma), "closed": I.selberg_i0_closed(sigma, r, a),
               "printed": I.selberg_i0_closed(sigma, r, a, printed=True), "seed": args.seed}
        if args.check:
            num = I.selberg_i0_numeric(sigma, r, a, args.tol or 1e-11).value
            out.update({"numeric": num, "rel_err": abs(out["closed"] - num) / num})
        return out
    if which == "i1":
        rd = _root_data(args, "D")
        sigma = _rat(args.sigma, "--sigma", 4)
        return {"root_data": _rd_obj(rd), "sigma": q_str(sigma), "closed": I.selberg_i1_closed(sigma, rd)}
    if which == "gamma":
        r = args.r or 1
        s = _rat(args.sigma, "--sigma", 1)
        return {"r": r, "s": q_str(s), "mult": q_str(_rat(args.a, "--a", 1)), "value": I.gindikin_gamma(s, r, _rat(args.a, "--a", 1))}
    if which == "c0":
        rd = _root_data(args, "D")
        try:
            rep = I.c0_constant(rd)
        except (NotImplementedError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        return {"root_data": _rd_obj(rd), **rep}
    if which == "c1":
        rd = _root_data(args)
        nu = _rat(args.nu, "--nu", 1)
        res = I.c1_normalization(rd, nu, args.tol or 1e-10, seed=args.seed)
        return {"root_data": _rd_obj(rd), "nu": q_str(nu), **res.to_json_obj()}
    raise UsageError("integrals needs one of i0, i1, gamma, c0, c1")


def cmd_domains(args) -> dict:
    from .branching import domain_table, lookup

    if args.name:
        try:
            return lookup(args.name).to_json_obj()
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    rows = domain_table()
    return {"rows": [row.to_json_obj() for row in rows], "count": len(rows)}


def cmd_verify(args) -> dict:
    from .verify import ALL_SUITES, Options, verify_all

    suites = None
    if args.suite:
        suites = [s.strip() for s in args.suite.split(",")]
        unknown = [s for s in suites if s not in ALL_SUITES]
        if unknown:
            raise UsageError(f"--suite: unknown {', '.join(unknown)}; choose from {', '.join(ALL_SUITES)}")
    opt = Options(r=args.r, deg=args.deg, seed=args.seed)
    return verify_all(args.seed, args.level, suites, opt)


COMMANDS = {
    "jack": cmd_jack,
    "dunkl": cmd_dunkl,
    "cherednik": cmd_cherednik,
    "norm": cmd_norm,
    "signature": cmd_signature,
    "eigenvalue": cmd_eigenvalue,
    "zeta": cmd_zeta,
    "bessel": cmd_bessel,
    "integrals": cmd_integrals,
    "domains": cmd_domains,
    "verify": cmd_verify,
}


def _rd_obj(rd) -> dict:
    out = {"kind": rd.kind.value, "r": rd.r, "a": q_str(rd.a)}
    if rd.iota is not None:
        out["iota"] = q_str(rd.iota)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", help="A, C or D")
    common.add_argument("--r", type=int, help="rank")
    common.add_argument("--a", help="multiplicity a (p/q)")
    common.add_argument("--iota", help="short-root parameter for type C (p/q)")
    common.add_argument("--m", help="partition, comma separated")
    common.add_argument("--m-scalar", type=int, dest="m_scalar", help="scalar shift (type D)")
    common.add_argument("--nu", help="Gaussian parameter (p/q)")
    common.add_argument("--alpha", type=int)
    common.add_argument("--trunc", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--paper-ref", action="store_true", help="print what the subcommand implements and exit")

    parser = argparse.ArgumentParser(prog="dunklbranch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("dunkl", "cherednik"):
            sp.add_argument("--exp", help="monomial exponent, comma separated")
            sp.add_argument("--poly-json", dest="poly_json", help="polynomial in the JSON format of the tool")
            sp.add_argument("--j", type=int, help="operator index (1-based)")
        if name == "norm":
            sp.add_argument("--check", action="store_true", help="also compute the direct pairing")
        if name == "signature":
            sp.add_argument("--n", help="complex-side signature, comma separated")
        if name == "bessel":
            sp.add_argument("--lambda", dest="lam", help="spectral point for the Gaussian check")
        if name == "integrals":
            sp.add_argument("which", nargs="?", choices=("i0", "i1", "gamma", "c0", "c1"))
            sp.add_argument("--sigma", help="Selberg exponent (p/q)")
            sp.add_argument("--check", action="store_true", help="compare with quadrature")
        if name == "domains":
            sp.add_argument("--list", action="store_true", help="list all rows (default)")
            sp.add_argument("--name", help="row key g/h or h")
        if name == "verify":
            sp.add_argument("--level", choices=("fast", "full"), default="fast")
            sp.add_argument("--suite", help="comma-separated suite names")
            sp.add_argument("--deg", type=int, help="degree or weight bound override")
    return parser


def _csv(result: dict) -> str:
    buf = io.StringIO()
    rows = None
    for key in ("cases", "rows"):
        if isinstance(result.get(key), list):
            rows = result[key]
            break
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        cols = sorted({k for row in rows for k in row})
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in cols])
    else:
        writer.writerow(["key", "value"])
        for k in sorted(result):
            writer.writerow([k, _cell(result[k])])
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return "" if v is None else str(v)


def render(result: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv(result)
    return json.dumps(result, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.paper_ref:
        print(PAPER_REFS[args.command])
        return 0
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dunklbranch {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = render(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not result["passed"]:
        for case in result["cases"]:
            if not case["passed"]:
                print(f"FAILED {case['suite']}: {case['identity']} [{case['ref']}] {case['params']}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
