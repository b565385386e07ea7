"""Command-line entry point: verification runs, exports, and reports.

Machine output goes to stdout as JSON or CSV; logs go to stderr (level from
the CARTAN_LOG environment variable). Exit codes: 0 all checks pass, 1 a
check failed, 2 a rank certificate was non-conclusive, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import __version__
from .circulant import (
    CertificateError,
    build_block_matrix_N,
    build_reduced_C,
    circulant_det_mod,
    eigenvalues_C,
    eigenvalues_N,
    reduce_mod_frak_L,
    verify_chart_conjugacy,
)
from .correspondence import (
    CoefficientScheme,
    build_H_s,
    build_psi,
    build_psi_plus,
    check_equivariance_psi,
    check_equivariance_psi_plus,
    geodesic_points,
    path_points,
    restrict_to_affine,
)
from .cosets import (
    IDENTITY,
    NONSPLIT_CARTAN,
    NORMALIZER_NONSPLIT,
    NORMALIZER_SPLIT,
    SPLIT_CARTAN,
    coset_operator,
    decompose,
    enumerate_subgroup,
)
from .exact_linalg import RankPolicy, det_mod_p, rank_exact, rank_mod_p
from .geometry import (
    GroupElement,
    OrderedPair,
    UnorderedPair,
    enumerate_C,
    enumerate_H,
    enumerate_pairs_ordered,
    enumerate_pairs_unordered,
    gl2_order,
    parse_point,
    subgroup_order,
)
from .modular_arith import PrimeContext, is_odd_prime

SCHEMA_VERSION = 1
DEFAULT_MAX_ELL = 101
COINCIDENCE_BOUND = 7
EQUIVARIANCE_SAMPLES = 100
AUX_RANK_PRIME = 1_048_583  # fixed word-sized prime for the per-slope rank observations

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

log = logging.getLogger("cartanmaps")


class UsageError(Exception):
    pass


@contextmanager
def _phase(timings: dict, name: str):
    t0 = time.perf_counter()
    yield
    timings[name] = round(time.perf_counter() - t0, 6)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


def _emit(doc, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, default=_json_default)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# The verification pipeline for one prime
# ---------------------------------------------------------------------------

def _theorem_section(matrix, side: str, expected: int, ell: int) -> tuple[dict, list, list]:
    failures, nonconclusive = [], []
    cert = rank_exact(matrix, RankPolicy(preferred_primes=(ell,)))
    restricted = restrict_to_affine(matrix, side)
    nonsing = rank_mod_p(restricted, ell) == len(restricted.col_basis)
    section = {
        "rank": cert.rank,
        "expected": expected,
        "surjective": cert.rank == expected,
        "restricted_nonsingular": nonsing,
        "certificate": cert.to_json(),
    }
    name = "theorem1" if side == "N" else "theorem2"
    if cert.rank != expected:
        failures.append(f"{name}: rank {cert.rank} != expected {expected}")
    if not nonsing:
        failures.append(f"{name}: affine restriction is singular mod {ell}")
    if not cert.conclusive:
        nonconclusive.append(f"{name}: rank certificate non-conclusive")
    return section, failures, nonconclusive


def run_verification(ell: int, epsilon: int | None = None, root: int | None = None,
                     seed: int = 0, skip_cosets: bool = False,
                     strict_roots: bool = False, all_epsilon: bool = False) -> dict:
    """Full pipeline for one prime; returns the per-run report dict."""
    timings: dict[str, float] = {}
    failures: list[str] = []
    nonconclusive: list[str] = []
    ctx = PrimeContext(ell, epsilon, root)
    scheme = CoefficientScheme.standard(ctx)
    report: dict = {"ell": ell, "epsilon": ctx.epsilon, "g": ctx.g,
                    "scheme": {"standard": True}}
    log.info("verifying ell=%d epsilon=%d g=%d", ell, ctx.epsilon, ctx.g)

    with _phase(timings, "geometry"):
        n_up = len(enumerate_pairs_unordered(ctx))
        n_op = len(enumerate_pairs_ordered(ctx))
        n_H = len(enumerate_H(ctx))
        n_C = len(enumerate_C(ctx))
        order = gl2_order(ell)
        sizes_ok = (
            n_up == ell * (ell + 1) // 2
            and n_op == ell * (ell + 1)
            and n_H == ell * (ell - 1) // 2
            and n_C == ell * (ell - 1)
            and order // subgroup_order("N", ell) == n_up
            and order // subgroup_order("C", ell) == n_op
            and order // subgroup_order("N'", ell) == n_H
            and order // subgroup_order("C'", ell) == n_C
        )
        report["sets"] = {
            "unordered_pairs": n_up, "ordered_pairs": n_op,
            "H_ell": n_H, "C_ell": n_C,
            "coset_space_sizes_match": sizes_ok,
        }
        if not sizes_ok:
            failures.append("set cardinalities disagree with coset-space indices")

    with _phase(timings, "theorem1"):
        psi_plus = build_psi_plus(ctx)
        if not (psi_plus.column_sums() == ctx.r).all():
            failures.append(f"psi+ column sums differ from {ctx.r}")
        section, f1, n1 = _theorem_section(psi_plus, "N", n_H, ell)
        report["theorem1"] = section
        failures += f1
        nonconclusive += n1

    with _phase(timings, "theorem2"):
        psi = build_psi(ctx, scheme)
        section, f2, n2 = _theorem_section(psi, "C", n_C, ell)
        report["theorem2"] = section
        failures += f2
        nonconclusive += n2

    with _phase(timings, "chart_conjugacy"):
        chart_ok = verify_chart_conjugacy(ctx, psi_plus)
        report["chart_conjugacy"] = chart_ok
        if not chart_ok:
            failures.append("chart-coordinate matrix differs from geometric matrix")

    with _phase(timings, "circulant"):
        report["circulant"] = {}
        rm_n = reduce_mod_frak_L(build_block_matrix_N(ctx), ctx)
        try:
            recs = eigenvalues_N(rm_n, ctx)
            ok_n = True
        except CertificateError as exc:
            recs = exc.reports
            ok_n = False
            failures.append(str(exc))
        prod_n = circulant_det_mod(rm_n.first_row, 2, ctx)
        direct_n = det_mod_p(rm_n.matrix(), ell)
        det_ok_n = prod_n == direct_n and direct_n != 0
        if not det_ok_n:
            failures.append(f"half-plane circulant determinant check failed: "
                            f"product {prod_n}, direct {direct_n}")
        report["circulant"]["N"] = {
            "records": [r.to_json() for r in recs],
            "all_match": ok_n,
            "det_product": prod_n, "det_direct": direct_n, "det_match": det_ok_n,
        }
        rm_c = build_reduced_C(ctx, scheme)
        try:
            recs = eigenvalues_C(ctx, scheme, rm_c)
            ok_c = True
        except CertificateError as exc:
            recs = exc.reports
            ok_c = False
            failures.append(str(exc))
        prod_c = circulant_det_mod(rm_c.combined_row, 1, ctx)
        direct_c = det_mod_p(rm_c.matrix(), ell)
        det_ok_c = prod_c == direct_c and direct_c != 0
        if not det_ok_c:
            failures.append(f"punctured-plane circulant determinant check failed: "
                            f"product {prod_c}, direct {direct_c}")
        report["circulant"]["C"] = {
            "records": [r.to_json() for r in recs],
            "all_match": ok_c,
            "det_product": prod_c, "det_direct": direct_c, "det_match": det_ok_c,
        }

    with _phase(timings, "equivariance"):
        rng = random.Random(f"{seed}:{ell}")
        eq_plus = check_equivariance_psi_plus(ctx, rng, EQUIVARIANCE_SAMPLES)
        eq_psi = check_equivariance_psi(ctx, scheme, rng, EQUIVARIANCE_SAMPLES)
        report["equivariance"] = {"samples": EQUIVARIANCE_SAMPLES,
                                  "psi_plus": eq_plus, "psi": eq_psi}
        if not (eq_plus and eq_psi):
            failures.append("equivariance sampling failed")

    with _phase(timings, "degrees"):
        sub_n = enumerate_subgroup(NORMALIZER_SPLIT, ctx)
        sub_np = enumerate_subgroup(NORMALIZER_NONSPLIT, ctx)
        sub_c = enumerate_subgroup(SPLIT_CARTAN, ctx)
        sub_cp = enumerate_subgroup(NONSPLIT_CARTAN, ctx)
        dec_n = decompose(sub_n, IDENTITY, sub_np, ctx)
        deg_n_ok = dec_n.degree == ctx.r
        dec_c = {s: decompose(sub_c, GroupElement(1, s, 0, 1), sub_cp, ctx)
                 for s in range(1, ell)}
        deg_c_ok = all(d.degree == ell - 1 for d in dec_c.values())
        report["degrees"] = {
            "NNp": {"degree": dec_n.degree, "expected": ctx.r, "ok": deg_n_ok},
            "CCp": {"degrees": {s: d.degree for s, d in dec_c.items()},
                    "expected": ell - 1, "ok": deg_c_ok},
        }
        if not (deg_n_ok and deg_c_ok):
            failures.append("double coset degrees differ from the index formulas")

    with _phase(timings, "h_s"):
        h_matrices = {s: build_H_s(ctx, s) for s in range(1, ell)}
        col_ok = all((m.column_sums() == ell - 1).all() for m in h_matrices.values())
        if not col_ok:
            failures.append("per-slope column sums differ from the coset degree")
        # Observation only (no asserted expected value): the rank of a single
        # slope operator, conclusive when full rank is hit mod some prime.
        hs_ranks = {}
        for s, m in h_matrices.items():
            r_ell = rank_mod_p(m, ell)
            r_aux = rank_mod_p(m, AUX_RANK_PRIME)
            full = min(m.shape)
            hs_ranks[s] = {
                "rank_mod_ell": r_ell,
                "observed_rank": max(r_ell, r_aux),
                "conclusive": max(r_ell, r_aux) == full,
            }
        report["h_s_ranks"] = hs_ranks
        report["h_s_column_sums_ok"] = col_ok

    if not skip_cosets and ell <= COINCIDENCE_BOUND:
        with _phase(timings, "coincidence"):
            op_plus = coset_operator(dec_n, ctx)
            plus_ok = op_plus == psi_plus
            hs_ok = all(coset_operator(dec_c[s], ctx) == h_matrices[s]
                        for s in range(1, ell))
            report["coincidence"] = {"checked": True, "psi_plus": plus_ok,
                                     "h_s": hs_ok}
            if not (plus_ok and hs_ok):
                failures.append("coset operator differs from the geometric map")
    else:
        report["coincidence"] = {"checked": False}

    if all_epsilon:
        with _phase(timings, "all_epsilon"):
            eps_reports = []
            for eps in ctx.nonsquares():
                sub_ctx = PrimeContext(ell, eps, ctx.g)
                m = build_psi_plus(sub_ctx)
                cert = rank_exact(m, RankPolicy(preferred_primes=(ell,)))
                nonsing = rank_mod_p(restrict_to_affine(m, "N"), ell) == n_H
                ok = cert.rank == n_H and cert.conclusive and nonsing
                eps_reports.append({"epsilon": eps, "rank": cert.rank,
                                    "restricted_nonsingular": nonsing, "ok": ok})
                if not ok:
                    failures.append(f"theorem1 failed for epsilon={eps}")
            report["all_epsilon"] = eps_reports

    if strict_roots:
        with _phase(timings, "strict_roots"):
            root_reports = []
            for gr in ctx.primitive_roots():
                sub_ctx = PrimeContext(ell, ctx.epsilon, gr)
                try:
                    eigenvalues_N(reduce_mod_frak_L(build_block_matrix_N(sub_ctx),
                                                    sub_ctx), sub_ctx)
                    eigenvalues_C(sub_ctx, CoefficientScheme.standard(sub_ctx))
                    ok = True
                except CertificateError as exc:
                    ok = False
                    failures.append(f"certificates failed for root g={gr}: {exc}")
                root_reports.append({"g": gr, "ok": ok})
            report["strict_roots"] = root_reports

    report["timings"] = timings
    report["failures"] = failures
    report["nonconclusive"] = nonconclusive
    report["ok"] = not failures and not nonconclusive
    return report


def _verify_worker(item):
    ell, kwargs = item
    return run_verification(ell, **kwargs)


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _parse_ells(args) -> list[int]:
    if args.ell is not None:
        if not is_odd_prime(args.ell):
            raise UsageError(f"--ell must be an odd prime, got {args.ell}")
        ells = [args.ell]
    elif args.ell_range is not None:
        m = re.fullmatch(r"(\d+)\.\.(\d+)", args.ell_range)
        if not m:
            raise UsageError(f"--ell-range must look like A..B, got {args.ell_range!r}")
        lo, hi = int(m.group(1)), int(m.group(2))
        ells = [n for n in range(max(3, lo), hi + 1) if is_odd_prime(n)]
        if not ells:
            raise UsageError(f"no odd primes in range {lo}..{hi}")
    else:
        raise UsageError("one of --ell or --ell-range is required")
    cap = getattr(args, "max_ell_unsafe", False)
    if not cap and max(ells) > DEFAULT_MAX_ELL:
        raise UsageError(f"ell > {DEFAULT_MAX_ELL} needs --max-ell-unsafe")
    return ells


def _make_context(args) -> PrimeContext:
    ells = _parse_ells(args)
    if len(ells) != 1:
        raise UsageError("this command takes a single --ell")
    try:
        return PrimeContext(ells[0], getattr(args, "epsilon", None),
                            getattr(args, "root", None))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args) -> int:
    ells = _parse_ells(args)
    kwargs = dict(epsilon=args.epsilon, root=args.root, seed=args.seed,
                  skip_cosets=args.skip_cosets, strict_roots=args.strict_roots,
                  all_epsilon=args.all_epsilon)
    try:
        if args.jobs > 1 and len(ells) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                runs = list(pool.map(_verify_worker, [(e, kwargs) for e in ells]))
        else:
            runs = [run_verification(e, **kwargs) for e in ells]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n_fail = sum(len(r["failures"]) for r in runs)
    n_open = sum(len(r["nonconclusive"]) for r in runs)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "cartanmaps", "version": __version__},
        "runs": runs,
        "summary": {"ok": n_fail == 0 and n_open == 0,
                    "failures": n_fail, "nonconclusive": n_open},
    }
    _emit(doc, args.out)
    if n_fail:
        return EXIT_FAIL
    if n_open:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_export(args) -> int:
    ctx = _make_context(args)
    if args.map == "psi-plus":
        m = build_psi_plus(ctx)
    elif args.map == "psi":
        m = build_psi(ctx)
    elif args.map == "h-s":
        if args.s is None:
            raise UsageError("--map h-s requires --s")
        if args.s % ctx.ell == 0:
            raise UsageError("--s must be nonzero mod ell")
        m = build_H_s(ctx, args.s)
    else:  # unreachable given argparse choices
        raise UsageError(f"unknown map {args.map!r}")
    if args.restricted:
        m = restrict_to_affine(m, "N" if args.map == "psi-plus" else "C")
    if args.out:
        with open(args.out, "w") as fh:
            m.write_csv(fh, ctx)
    else:
        m.write_csv(sys.stdout, ctx)
    return EXIT_OK


def cmd_eigenvalues(args) -> int:
    ctx = _make_context(args)
    code = EXIT_OK
    try:
        if args.case == "N":
            recs = eigenvalues_N(reduce_mod_frak_L(build_block_matrix_N(ctx), ctx), ctx)
        else:
            recs = eigenvalues_C(ctx, CoefficientScheme.standard(ctx))
    except CertificateError as exc:
        log.error("certificate failure: %s", exc)
        recs = exc.reports
        code = EXIT_FAIL
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ell": ctx.ell, "epsilon": ctx.epsilon, "g": ctx.g, "case": args.case,
        "records": [r.to_json() for r in recs],
    }
    _emit(doc, args.out)
    return code


def cmd_decompose(args) -> int:
    ctx = _make_context(args)
    if args.case == "N":
        H = enumerate_subgroup(NORMALIZER_SPLIT, ctx)
        K = enumerate_subgroup(NORMALIZER_NONSPLIT, ctx)
        g = IDENTITY
        s = None
    else:
        if args.s is None:
            raise UsageError("--case C requires --s")
        s = args.s % ctx.ell
        if s == 0:
            raise UsageError("--s must be nonzero mod ell")
        H = enumerate_subgroup(SPLIT_CARTAN, ctx)
        K = enumerate_subgroup(NONSPLIT_CARTAN, ctx)
        g = GroupElement(1, s, 0, 1)
    dec = decompose(H, g, K, ctx)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ell": ctx.ell, "epsilon": ctx.epsilon, "s": s,
        "H": H.kind, "K": K.kind, "g": list(g),
        "degree": dec.degree,
        "representatives": [list(a) for a in dec.representatives],
    }
    _emit(doc, args.out)
    return EXIT_OK


def _conic_metadata(pair, slope, ctx: PrimeContext) -> dict | None:
    """Center/right-hand side of the defining conic, affine endpoints only."""
    ell, eps = ctx.ell, ctx.epsilon
    if isinstance(pair, UnorderedPair):
        if not pair.is_affine:
            return None
        a, b = pair.lo.x, pair.hi.x
    else:
        if not pair.is_affine:
            return None
        a, b = pair.first.x, pair.second.x
    half = pow(2, -1, ell)
    cx = (a + b) * half % ell
    if slope is None:
        return {"center_x": cx, "center_y": 0,
                "rhs": pow((b - a) * half % ell, 2, ell)}
    inv2eps = pow(2 * eps, -1, ell)
    cy = slope * (b - a) * inv2eps % ell
    rhs = (eps - slope * slope) * pow(a - b, 2, ell) * pow(4 * eps, -1, ell) % ell
    return {"center_x": cx, "center_y": cy, "rhs": rhs}


def _plot_svg(points, ell: int, meta: dict | None, title: str) -> str:
    cell = 16
    pad = 24
    width = pad * 2 + cell * ell
    height = pad * 2 + cell * ell
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    if meta:
        items = " ".join(f"{k}={v}" for k, v in meta.items())
        out.append(f"<metadata>conic {items}</metadata>")
    out.append(f'<text x="{pad}" y="16" font-size="12">{title}</text>')
    out.append(f'<rect x="{pad}" y="{pad}" width="{cell * ell}" height="{cell * ell}" '
               f'fill="none" stroke="#ccc"/>')
    for (x, y) in points:
        cx = pad + x * cell + cell // 2
        cy = pad + (ell - 1 - y) * cell + cell // 2
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="#1f6feb"/>')
    out.append("</svg>")
    return "\n".join(out)


def cmd_plot(args) -> int:
    ctx = _make_context(args)
    parts = args.pair.split(",")
    if len(parts) != 2:
        raise UsageError(f"--pair must be 'a,b', got {args.pair!r}")
    try:
        p, q = (parse_point(t, ctx.ell) for t in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if p == q:
        raise UsageError("pair lies on the diagonal")
    if args.slope is not None:
        s = args.slope % ctx.ell
        if s == 0:
            raise UsageError("--slope must be nonzero mod ell")
        pair = OrderedPair(p, q)
        pts = sorted(path_points(pair, s, ctx).points)
        meta = _conic_metadata(pair, s, ctx)
        title = f"path {pair} slope {s} (ell={ctx.ell})"
    else:
        pair = UnorderedPair(p, q)
        pts = sorted(geodesic_points(pair, ctx).points)
        meta = _conic_metadata(pair, None, ctx)
        title = f"geodesic {pair} (ell={ctx.ell})"
    if args.format == "svg":
        text = _plot_svg(pts, ctx.ell, meta, title)
    else:
        lines = [f"# {title}", f"# ell={ctx.ell} epsilon={ctx.epsilon}"]
        if meta:
            lines.append("# conic " + " ".join(f"{k}={v}" for k, v in meta.items()))
        lines.append("x,y")
        lines += [f"{x},{y}" for (x, y) in pts]
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def _add_context_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ell", type=int, help="odd prime modulus")
    p.add_argument("--ell-range", help="range of primes, e.g. 3..31")
    p.add_argument("--epsilon", type=int, default=None,
                   help="non-square to use (default: smallest)")
    p.add_argument("--root", type=int, default=None,
                   help="primitive root to use (default: smallest)")
    p.add_argument("--max-ell-unsafe", action="store_true",
                   help=f"lift the default ell cap of {DEFAULT_MAX_ELL}")
    p.add_argument("--out", default=None, help="write output to a file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartanmaps",
        description="Verify the coset-space correspondences for GL2(F_ell) "
                    "and export their matrices and certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the full verification pipeline")
    _add_context_flags(p)
    p.add_argument("--all-epsilon", action="store_true",
                   help="re-verify the half-plane surjection for every non-square")
    p.add_argument("--skip-cosets", action="store_true",
                   help="skip the coset-operator coincidence checks")
    p.add_argument("--strict-roots", action="store_true",
                   help="re-run the circulant certificates for every primitive root")
    p.add_argument("--seed", type=int, default=0, help="equivariance sampling seed")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over primes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="dump an operator matrix as CSV triplets")
    _add_context_flags(p)
    p.add_argument("--map", choices=["psi-plus", "psi", "h-s"], required=True)
    p.add_argument("--s", type=int, default=None, help="slope for --map h-s")
    p.add_argument("--restricted", action="store_true",
                   help="restrict columns to affine pairs")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("eigenvalues", help="emit the circulant eigenvalue certificates")
    _add_context_flags(p)
    p.add_argument("--case", choices=["N", "C"], required=True)
    p.set_defaults(func=cmd_eigenvalues)

    p = sub.add_parser("decompose", help="emit a double coset decomposition")
    _add_context_flags(p)
    p.add_argument("--case", choices=["N", "C"], required=True)
    p.add_argument("--s", type=int, default=None, help="slope for --case C")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("plot", help="emit the points of a geodesic or path")
    _add_context_flags(p)
    p.add_argument("--pair", required=True, help="endpoints, e.g. 0,inf or 2,5")
    p.add_argument("--slope", type=int, default=None,
                   help="plot the slope-s path instead of the geodesic")
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.set_defaults(func=cmd_plot)

    return parser


def _configure_logging() -> None:
    level = os.environ.get("CARTAN_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
