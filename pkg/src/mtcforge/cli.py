"""Command-line surface: `sfs`, `torus`, and `verify` subcommands.

Output formats: json (machine-readable, round-trips), csv (one row per
label), pretty (human-readable).  Exit codes: 0 success, 1 certification or
verification failure, 2 invalid input.  The MTCFORGE_TOL environment
variable overrides the default 1e-9 comparison tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import suites
from .algebra import RationalPhase
from .catalog import (
    ModularData,
    find_transparent,
    graded_product,
    soN2_adjoint,
    su2_level,
    tlj_data,
)
from .pipeline import (
    admissibility_report,
    certify,
    sfs_candidate,
    sl2z_diagnostics,
    torus_candidate,
)
from .seifert import make_sfs, z2_homology_sphere
from .torsion_engine import chain_torsion
from .torus_bundle import build_adjoint_complex, make_torus_bundle

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


# --- JSON schema -----------------------------------------------------------
# phases: {"num": int, "den": int}; complex numbers: [re, im];
# matrices: row-major arrays of arrays.


def phase_to_json(t: RationalPhase) -> dict:
    return {"num": t.numerator, "den": t.denominator}


def phase_from_json(obj) -> RationalPhase:
    return RationalPhase.of(Fraction(obj["num"], obj["den"]))


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(M) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(M, dtype=complex)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def modular_data_to_json(D: ModularData) -> dict:
    return {
        "labels": list(D.labels),
        "dims": [float(x) for x in D.dims],
        "twists": [phase_to_json(t) for t in D.twists],
        "s_tilde": matrix_to_json(D.s_tilde),
        "total_dim_sq": float(D.total_dim_sq),
        "grading": None if D.grading is None else list(D.grading),
    }


def modular_data_from_json(obj) -> ModularData:
    return ModularData(
        tuple(obj["labels"]),
        np.array(obj["dims"], dtype=float),
        tuple(phase_from_json(t) for t in obj["twists"]),
        matrix_from_json(obj["s_tilde"]),
        float(obj["total_dim_sq"]),
        None if obj.get("grading") is None else tuple(obj["grading"]),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _json_default(obj):
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _candidate_report(C, reference, cert, extra=None) -> dict:
    adm = admissibility_report(C)
    rep = find_transparent(C.data)
    out = {
        "manifold": C.manifold_tag,
        "rank": C.rank,
        "labels": list(C.labels),
        "cs": [phase_to_json(c) for c in C.cs],
        "torsion": [float(t) for t in C.torsions],
        "modular_data": modular_data_to_json(C.data),
        "admissibility": {
            "check": "sum 1/(2Tor) = 1 and Gauss-sum modulus vs target",
            "sum_inverse_2tor": adm.sum_inverse_2tor,
            "gauss_sum_modulus": adm.gauss_sum_modulus,
            "target_modulus": adm.target_modulus,
            "s_X": list(adm.s_X),
            "s_L": adm.s_L,
            "orbits": [list(o) for o in adm.orbits],
            "central_classification": list(adm.central_classification),
            "admissible": adm.admissible,
        },
        "modularity": {
            "check": "transparent labels are rows proportional to the dims row",
            "is_modular": rep.is_modular,
            "transparent_labels": list(rep.transparent_labels),
            "s_det_modulus": rep.s_det_modulus,
        },
        "certification": {
            "check": "entrywise match against the independent catalog data",
            "passed": cert.passed,
            "max_s_delta": cert.max_s_delta,
            "twists_equal": cert.twists_equal,
            "max_dim_delta": cert.max_dim_delta,
            "reference_rank": reference.rank,
        },
        "sl2z_diagnostics": sl2z_diagnostics(C.data),
    }
    if extra:
        out.update(extra)
    return out


def _emit_report(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(report, stream, indent=2, default=_json_default)
        stream.write("\n")
        return
    if fmt == "csv":
        w = csv.writer(stream)
        w.writerow(["label", "twist", "dim", "cs", "torsion"])
        D = report["modular_data"]
        for i, lab in enumerate(report["labels"]):
            tw = D["twists"][i]
            cs = report["cs"][i]
            w.writerow([lab, f"{tw['num']}/{tw['den']}", _fmt(D["dims"][i]),
                        f"{cs['num']}/{cs['den']}", _fmt(report["torsion"][i])])
        return
    # pretty
    print(f"manifold: {report['manifold']}   rank {report['rank']}", file=stream)
    print(f"{'label':>12} {'twist':>9} {'dim':>16} {'CS':>9} {'torsion':>16}", file=stream)
    D = report["modular_data"]
    for i, lab in enumerate(report["labels"]):
        tw, cs = D["twists"][i], report["cs"][i]
        print(f"{lab:>12} {tw['num']:>4}/{tw['den']:<4} {_fmt(D['dims'][i]):>16} "
              f"{cs['num']:>4}/{cs['den']:<4} {_fmt(report['torsion'][i]):>16}", file=stream)
    S = np.asarray([[complex(re, im) for re, im in row] for row in D["s_tilde"]]).real
    print("S-matrix (un-normalized):", file=stream)
    for row in S:
        print("  [" + " ".join(f"{v:12.6f}" for v in row) + "]", file=stream)
    adm = report["admissibility"]
    print(f"total dim^2 = {_fmt(D['total_dim_sq'])}", file=stream)
    print(f"admissibility: sum 1/(2Tor) = {_fmt(adm['sum_inverse_2tor'])}, "
          f"|Gauss sum| = {_fmt(adm['gauss_sum_modulus'])} "
          f"(target {_fmt(adm['target_modulus'])}) -> "
          f"{'admissible' if adm['admissible'] else 'NOT admissible'}", file=stream)
    mod = report["modularity"]
    print(f"modular: {mod['is_modular']}   transparent: {mod['transparent_labels']}", file=stream)
    cert = report["certification"]
    print(f"certification vs catalog: {'PASS' if cert['passed'] else 'FAIL'} "
          f"(max |dS| = {cert['max_s_delta']:.3e}, twists equal: {cert['twists_equal']})",
          file=stream)
    if "oracle" in report:
        print("torsion oracle (cell complex vs closed form):", file=stream)
        for row in report["oracle"]:
            print(f"  {row['label']:>8}: {_fmt(row['oracle'])} vs {_fmt(row['closed_form'])}",
                  file=stream)


def _parse_pair(text: str, n: int, what: str):
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"{what} needs {n} comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def cmd_sfs(args) -> int:
    try:
        pairs = [_parse_pair(f, 2, "--fiber") for f in args.fiber]
        M = make_sfs(pairs)
        C = sfs_candidate(M, unit=args.unit)
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.unit == "reseated":
        reference = su2_level(M.p[2] - 2)
    else:
        reference = graded_product(
            graded_product(tlj_data(M.fibers[0].A), tlj_data(M.fibers[1].A)),
            tlj_data(M.fibers[2].A),
        )
    cert = certify(C, reference)
    report = _candidate_report(C, reference, cert, extra={
        "z2_homology_sphere": z2_homology_sphere(M),
        "kauffman_phases": [phase_to_json(f.A) for f in M.fibers],
    })
    _emit_report(report, args.format, sys.stdout)
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_torus(args) -> int:
    try:
        a, b, c, d = _parse_pair(args.monodromy, 4, "--monodromy")
        T = make_torus_bundle(a, b, c, d)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if not T.supported:
        print(f"error: {T.unsupported_reason()}", file=sys.stderr)
        return EXIT_BAD_INPUT
    C = torus_candidate(T)
    reference = soN2_adjoint(T.N, T.m)
    cert = certify(C, reference)
    extra = {"N": T.N, "c_tilde": T.c_tilde, "m": T.m}
    if args.oracle:
        rows = []
        for chi, closed in zip(C.characters, C.torsions):
            res = chain_torsion(build_adjoint_complex(T, chi))
            rows.append({"label": chi.label(), "oracle": res.value,
                         "closed_form": float(closed), "acyclic": res.acyclic})
        extra["oracle"] = rows
    report = _candidate_report(C, reference, cert, extra=extra)
    _emit_report(report, args.format, sys.stdout)
    return EXIT_OK if cert.passed else EXIT_FAILED


def _run_one_suite(job):
    name, kwargs = job
    return suites.run_suites([name], **kwargs)[0]


def cmd_verify(args) -> int:
    if args.max_p > args.cap or args.max_N > args.cap or args.lemma_max_p > 4 * args.cap:
        print(f"error: sweep ranges exceed the cap ({args.cap}); raise --cap explicitly",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    names = args.suite if args.suite else list(suites.ALL_SUITES)
    kwargs = dict(max_p=args.max_p, max_N=args.max_N, max_level=args.max_level,
                  lemma_max_p=args.lemma_max_p, seed=args.seed)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one_suite, [(n, kwargs) for n in names]))
    else:
        results = suites.run_suites(names, **kwargs)
    results.sort(key=lambda r: names.index(r.name))
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        payload = {
            "passed": not failed,
            "suites": [
                {"name": r.name, "check": r.check, "passed": r.passed,
                 "cases": r.cases, "failures": r.failures, "details": r.details}
                for r in results
            ],
        }
        json.dump(payload, sys.stdout, indent=2, default=_json_default)
        print()
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_OK if not failed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mtcforge",
        description="Candidate modular data from small non-hyperbolic 3-manifolds, "
                    "verified against an independent premodular catalog.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sfs = sub.add_parser("sfs", help="three-fiber Seifert data to modular data")
    sfs.add_argument("--fiber", action="append", required=True, metavar="p,q",
                     help="surgery pair; give exactly three")
    sfs.add_argument("--unit", choices=["canonical", "reseated"], default="canonical")
    sfs.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    sfs.set_defaults(func=cmd_sfs)

    torus = sub.add_parser("torus", help="torus-bundle monodromy to modular data")
    torus.add_argument("--monodromy", required=True, metavar="a,b,c,d")
    torus.add_argument("--oracle", action="store_true",
                       help="also run the chain-complex torsion oracle per label")
    torus.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    torus.set_defaults(func=cmd_torus)

    verify = sub.add_parser("verify", help="run the verification suites")
    verify.add_argument("--suite", action="append", choices=sorted(suites.ALL_SUITES),
                        help="run only the named suite (repeatable)")
    verify.add_argument("--max-p", type=int, default=9)
    verify.add_argument("--max-N", type=int, default=13)
    verify.add_argument("--max-level", type=int, default=6)
    verify.add_argument("--lemma-max-p", type=int, default=50)
    verify.add_argument("--cap", type=int, default=25,
                        help="upper bound on the sweep ranges")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--format", choices=["json", "pretty"], default="pretty")
    verify.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "sfs" and len(args.fiber) != 3:
        print("error: exactly three --fiber arguments required", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
