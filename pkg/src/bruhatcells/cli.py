"""Command-line front end: ``bruhatcells {roots,cell,verify,cfunction}``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import cells, matrixlie as ml, quad, verify
from .errors import DivergenceError, InvalidRankError, NotReducedError
from .report import ReportDocument
from .rootsys import ReducedWord, build_type_a


class UsageError(Exception):
    pass


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec(v) -> list:
    return [_frac(c) for c in v]


def _cjson(z) -> list:
    return [[float(np.real(c)), float(np.imag(c))] for c in np.atleast_1d(z)]


def parse_word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad word {text!r}: expected comma-separated integers") from exc


def parse_scalar(text: str):
    text = text.strip().replace("i", "j")
    if "j" in text:
        return complex(text)
    return Fraction(text)


def parse_complex_list(text: str) -> list:
    return [complex(parse_scalar(t)) for t in text.split(",") if t.strip()]


def _system(rank: int):
    if rank < 1:
        raise UsageError(f"rank must be at least 1, got {rank}")
    return build_type_a(rank + 1)


def _word(sys, text: str) -> ReducedWord:
    idx = parse_word(text)
    for i in idx:
        if not 1 <= i <= sys.rank:
            raise UsageError(f"simple root index {i} out of range 1..{sys.rank}")
    return ReducedWord(sys, idx)


def cmd_roots(args) -> ReportDocument:
    sys = _system(args.rank)
    return ReportDocument(
        "roots",
        {"rank": args.rank},
        {
            "type": f"A{sys.rank}",
            "positive_roots": [_vec(r) for r in sys.positive_roots],
            "count": len(sys.positive_roots),
            "gram": [_vec(row) for row in sys.gram],
            "rho": _vec(sys.rho),
        },
    )


def cmd_cell(args) -> ReportDocument:
    sys = _system(args.rank)
    word = _word(sys, args.word)
    per_root = []
    for j, (a, b) in enumerate(zip(word.alphas, word.betas), start=1):
        per_root.append({
            "j": j,
            "alpha": _vec(a),
            "beta": _vec(b),
            "dn_exp": _frac(cells.haar_density(word).exponents[j - 1]),
            "s_exp": _frac(cells.kostant_density(word).exponents[j - 1]),
        })
    results = {
        "length": word.length,
        "sequence": per_root,
        "densities": {
            "dn": cells.haar_density(word).to_json(),
            "dn1": cells.haar_density_dn1(word).to_json(),
            "liouville": cells.liouville_density(word).to_json(),
            "kostant": cells.kostant_density(word).to_json(),
        },
        "omega_coefficients_at_0": _cjson(cells.omega_w(word, np.zeros(word.length)).coeffs),
    }
    inputs = {"rank": args.rank, "word": list(word.indices)}
    if args.at is not None:
        z = np.array(parse_complex_list(args.at))
        if z.size != word.length:
            raise UsageError(f"--at needs {word.length} coordinates, got {z.size}")
        inputs["at"] = _cjson(z)
        results["point"] = {
            "n": ml.matrix_to_json(ml.coordinate_map(word, z)),
            "log_a_w": cells.a_w_closed(word, z).coeffs.tolist(),
            "moment_map": cells.moment_map(word, z).coeffs.tolist(),
            "modular_hamiltonian": float(cells.modular_hamiltonian(word, z)),
            "kostant_value": _cjson(cells.kostant_density(word).evaluate(z))[0],
        }
    return ReportDocument("cell", inputs, results)


def cmd_verify(args) -> ReportDocument:
    sys = _system(args.rank)
    word = _word(sys, args.word)
    if args.points < 1:
        raise UsageError("--points must be positive")
    checks = verify.run_suite(args.suite, word, seed=args.seed, points=args.points)
    if args.tol is not None:
        for c in checks:
            c.tolerance = args.tol
    return ReportDocument(
        "verify",
        {"rank": args.rank, "word": list(word.indices), "suite": args.suite, "points": args.points},
        {},
        [c.to_json() for c in checks],
        seed=args.seed,
    )


def cmd_cfunction(args) -> ReportDocument:
    sys = _system(args.rank)
    word = _word(sys, args.word)
    try:
        ilam = [parse_scalar(t) for t in args.ilam.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --lambda {args.ilam!r}") from exc
    if len(ilam) != sys.rank:
        raise UsageError(f"--lambda needs {sys.rank} coefficients")
    closed = quad.c_function(word, ilam)
    numeric = quad.c_function(word, ilam, "quadrature")
    cv = complex(closed.value)
    dev = abs(cv - complex(numeric.value)) / abs(cv)
    tol = args.tol if args.tol is not None else 1e-6
    results = {
        "closed_form": closed.to_json(),
        "quadrature": numeric.to_json(),
        "exact": str(closed.value) if isinstance(closed.value, Fraction) else None,
    }
    check = verify.Check("closed_vs_quadrature", dev, tol)
    return ReportDocument("cfunction", {"rank": args.rank, "word": list(word.indices), "ilam": args.ilam},
                          results, [check.to_json()])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--tol", type=float, default=None, help="override check tolerances")

    p = argparse.ArgumentParser(prog="bruhatcells", description="Schubert cell coordinates and Kostant forms for SL(n)")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", parents=[common], help="positive roots, Gram matrix, rho")
    r.add_argument("--rank", type=int, required=True)
    r.set_defaults(fn=cmd_roots)

    c = sub.add_parser("cell", parents=[common], help="root sequences and densities of a cell")
    c.add_argument("--rank", type=int, required=True)
    c.add_argument("--word", default="", help="comma-separated simple-root indices, 1-based")
    c.add_argument("--at", default=None, help="evaluate at z, e.g. 1+2j,0,-0.5j")
    c.set_defaults(fn=cmd_cell)

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("--rank", type=int, required=True)
    v.add_argument("--word", default="")
    v.add_argument("--suite", choices=verify.SUITES, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--points", type=int, default=50)
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("cfunction", parents=[common], help="c-function: product formula and quadrature")
    f.add_argument("--rank", type=int, required=True)
    f.add_argument("--word", default="")
    f.add_argument("--lambda", dest="ilam", required=True,
                   help="i*lambda in the simple-root basis, e.g. 2,2 or 1/2,3+1j")
    f.set_defaults(fn=cmd_cfunction)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.fn(args)
    except (UsageError, InvalidRankError, NotReducedError, DivergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(doc.dumps() if args.json else doc.render())
    return 0 if doc.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
