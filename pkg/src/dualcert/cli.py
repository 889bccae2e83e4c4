"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 bad input (message on
stderr, nothing on stdout).
"""
import argparse
import os
import sys

import numpy as np

from . import serialize
from .choi import conjugate_choi, choi_matrix, generalized_choi, jamiolkowski
from .classify import COMPLETE, COPOSITIVE, NOT_ORDER_ISO, classify_duality
from .errors import DualCertError, WrongBasisKind
from .linalg import TOL_PSD, TOL_RANK, fro, hermitian_defect, numerical_rank
from .verify import SUITES, run_suites
from .witness import build_witness, validate_witness

DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


def default_seed():
    env = os.environ.get("DUALCERT_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"DUALCERT_SEED must be an integer, got {env!r}") from exc


def cmd_classify(args):
    basis = serialize.parse_basis_arg(args.basis)
    verdict = classify_duality(basis, tol=args.tol)
    if args.json:
        body = serialize.verdict_to_json(verdict)
        body = {"basis": args.basis, "n": basis.n, **body}
        sys.stdout.write(serialize.dumps(body))
    else:
        print(f"basis: {args.basis} (n={basis.n}, provenance={basis.provenance})")
        print(f"kind: {verdict.kind}")
        if verdict.C is not None:
            print("C:")
            print(np.array2string(verdict.C, precision=6, suppress_small=True))
        for key, val in verdict.diagnostics.items():
            print(f"{key}: {val}")
    if args.check_kind is not None and verdict.kind != args.check_kind:
        return 1
    return 0


def cmd_choi(args):
    if args.form in ("genl", "conj") and args.basis is None:
        raise UsageError(f"--form {args.form} requires --basis")
    basis = serialize.parse_basis_arg(args.basis) if args.basis else None
    m = serialize.map_from_json(serialize.load_json(args.map_file)) \
        if os.path.exists(args.map_file) else serialize.parse_map_arg(args.map_file, _n_for_builtin(args, basis))
    if basis is not None and basis.n != m.n:
        raise UsageError(f"basis lives in M_{basis.n} but the map acts on M_{m.n}")
    if args.form == "choi":
        mat = choi_matrix(m)
    elif args.form == "jam":
        mat = jamiolkowski(m)
    elif args.form == "conj":
        mat = conjugate_choi(m, basis)
    else:
        mat = generalized_choi(m, basis, transposed=args.transposed)
    body = {"form": args.form, "n": m.n, "p": m.p, "matrix": serialize.matrix_to_json(mat)}
    if hermitian_defect(mat) <= TOL_PSD * (1.0 + fro(mat)):
        vals = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
        body["hermitian"] = True
        body["eigenvalues"] = [float(x) for x in vals]
        body["psd"] = bool(vals[0] >= -TOL_PSD * (1.0 + fro(mat)))
    else:
        body["hermitian"] = False
        body["eigenvalues"] = None
        body["psd"] = None
    body["rank"] = numerical_rank(mat, TOL_RANK)
    sys.stdout.write(serialize.dumps(body))
    return 0


def _n_for_builtin(args, basis):
    if basis is not None:
        if args.n is not None and args.n != basis.n:
            raise UsageError(f"--n {args.n} disagrees with the basis dimension {basis.n}")
        return basis.n
    if args.n is None:
        raise UsageError("builtin map names need --n or --basis")
    return args.n


def cmd_witness(args):
    basis = serialize.parse_basis_arg(args.basis)
    m = serialize.parse_map_arg(args.map_file, basis.n)
    seed = default_seed() if args.seed is None else args.seed
    verdict = classify_duality(basis)
    try:
        w = build_witness(basis, m, require=args.require, verdict=verdict)
    except WrongBasisKind as exc:
        raise UsageError(f"{exc}; verdict: {serialize.dumps(serialize.verdict_to_json(verdict)).strip()}")
    report = validate_witness(w, m.n, m.p, samples=args.samples, seed=seed,
                              basis_kind_used=verdict.kind)
    sys.stdout.write(serialize.dumps(serialize.report_to_json(report)))
    return 0


def cmd_verify(args):
    seed = default_seed() if args.seed is None else args.seed
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, seed=seed, max_n=args.max_n)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed (seed={seed})")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dualcert",
        description="Certify the order type of basis-to-dual-basis maps on M_n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the duality map of a basis")
    p.add_argument("basis", help="pauli, pauli:normalized, pauli_tensor:K, weyl:N, standard:N or a JSON file")
    p.add_argument("--tol", type=float, default=TOL_RANK)
    p.add_argument("--json", action="store_true")
    p.add_argument("--check-kind", choices=[COMPLETE, COPOSITIVE, NOT_ORDER_ISO])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("choi", help="Choi-type matrix of a linear map")
    p.add_argument("map_file", help="map JSON file or builtin name")
    p.add_argument("--form", choices=["choi", "jam", "conj", "genl"], default="choi")
    p.add_argument("--basis")
    p.add_argument("--transposed", action="store_true", help="use B_j^t in the genl form")
    p.add_argument("--n", type=int, help="dimension for builtin maps without --basis")
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("witness", help="build and validate an entanglement witness")
    p.add_argument("basis")
    p.add_argument("map_file", help="map JSON file or builtin name")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--require", choices=["case1", "case3"], default="case1")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DualCertError, UsageError, ValueError, KeyError, OSError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"dualcert {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
