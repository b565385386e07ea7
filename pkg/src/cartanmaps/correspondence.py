"""Geodesics, paths, and the intertwining operators as exact integer matrices.

The half-plane map sends an unordered pair to the formal sum of its geodesic's
points; the punctured-plane map is the coefficient combination over all slopes
of the per-slope path operators. Matrices are indexed by the canonical
enumerations fixed in `geometry`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .geometry import (
    Basis,
    CartanOrbit,
    CartanPoint,
    GroupElement,
    OrderedPair,
    ProjectivePoint,
    UnorderedPair,
    basis_C,
    basis_H,
    basis_ordered_pairs,
    basis_unordered_pairs,
    cartan_act,
    enumerate_pairs_ordered,
    enumerate_pairs_unordered,
    orbit_act,
    orbit_of,
    pair_act_ordered,
    pair_act_unordered,
    random_invertible,
)
from .modular_arith import PrimeContext


def transporter(a: ProjectivePoint, b: ProjectivePoint, ell: int) -> GroupElement:
    """A matrix g with g(0) = a and g(infinity) = b."""
    if a == b:
        raise ValueError("transporter endpoints must be distinct")
    if a.at_infinity:
        return GroupElement(b.x, 1, 1, 0)
    if b.at_infinity:
        return GroupElement(1, a.x, 0, 1)
    return GroupElement(b.x, a.x, 1, 1)


@dataclass(frozen=True)
class Geodesic:
    """The translate of F_ell^x * se joining the endpoints, as a set in H_ell."""

    endpoints: UnorderedPair
    points: frozenset[CartanOrbit]


@dataclass(frozen=True)
class PathSpec:
    """The translate of the slope-s line {lam*s + lam*se}, as a set in C_ell."""

    endpoints: OrderedPair
    slope: int
    points: frozenset[CartanPoint]


def geodesic_points(pair: UnorderedPair, ctx: PrimeContext) -> Geodesic:
    g = transporter(pair.lo, pair.hi, ctx.ell)
    pts = frozenset(
        orbit_act(g, CartanOrbit(0, lam), ctx) for lam in range(1, ctx.r + 1)
    )
    # lam and its negative land on conjugate points, so (ell-1)/2 orbits remain
    if len(pts) != ctx.r:
        raise AssertionError(f"geodesic through {pair} has {len(pts)} points, "
                             f"expected {ctx.r}")
    return Geodesic(pair, pts)


def path_points(pair: OrderedPair, s: int, ctx: PrimeContext) -> PathSpec:
    s %= ctx.ell
    if s == 0:
        raise ValueError("path slope must be nonzero")
    g = transporter(pair.first, pair.second, ctx.ell)
    pts = frozenset(
        cartan_act(g, CartanPoint(lam * s % ctx.ell, lam), ctx)
        for lam in range(1, ctx.ell)
    )
    if len(pts) != ctx.ell - 1:
        raise AssertionError(f"path through {pair} at slope {s} has {len(pts)} "
                             f"points, expected {ctx.ell - 1}")
    return PathSpec(pair, s, pts)


@dataclass(frozen=True)
class CoefficientScheme:
    """Per-slope integer weights: the combined operator is sum_s (alpha_s + beta_s) H_s."""

    alpha: tuple[int, ...]  # alpha[s-1] for s = 1..ell-1
    beta: tuple[int, ...]

    @classmethod
    def standard(cls, ctx: PrimeContext) -> "CoefficientScheme":
        """alpha_s = 1 and beta_s the canonical representative of s^-1."""
        ell = ctx.ell
        return cls(
            alpha=(1,) * (ell - 1),
            beta=tuple(pow(s, -1, ell) for s in range(1, ell)),
        )

    def validate(self, ctx: PrimeContext) -> None:
        ell = ctx.ell
        if len(self.alpha) != ell - 1 or len(self.beta) != ell - 1:
            raise ValueError("scheme must supply weights for every s in 1..ell-1")
        for name, vals in (("alpha", self.alpha), ("beta", self.beta)):
            for s, v in enumerate(vals, start=1):
                if not 0 <= v <= ell - 1:
                    raise ValueError(f"{name}_{s} = {v} outside [0, {ell - 1}]")

    def is_standard(self, ctx: PrimeContext) -> bool:
        ell = ctx.ell
        return all(a % ell == 1 for a in self.alpha) and all(
            b % ell == pow(s, -1, ell) for s, b in enumerate(self.beta, start=1)
        )

    def combined(self, s: int) -> int:
        return self.alpha[s - 1] + self.beta[s - 1]


class OperatorMatrix:
    """Exact integer matrix between free modules on the tagged bases."""

    __slots__ = ("row_basis", "col_basis", "data")

    def __init__(self, row_basis: Basis, col_basis: Basis, data: np.ndarray):
        if data.shape != (len(row_basis), len(col_basis)):
            raise ValueError(f"data shape {data.shape} does not match bases "
                             f"({len(row_basis)}, {len(col_basis)})")
        self.row_basis = row_basis
        self.col_basis = col_basis
        self.data = data

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def column_sums(self) -> np.ndarray:
        return self.data.sum(axis=0)

    def row_sums(self) -> np.ndarray:
        return self.data.sum(axis=1)

    def to_triplets(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero entries as (row, col, value), row-major."""
        rows, cols = np.nonzero(self.data)
        for r, c in zip(rows.tolist(), cols.tolist()):
            yield r, c, int(self.data[r, c])

    def write_csv(self, fh, ctx: PrimeContext) -> None:
        fh.write(f"# basis_rows={self.row_basis.tag} basis_cols={self.col_basis.tag} "
                 f"ell={ctx.ell} epsilon={ctx.epsilon}\n")
        for r, c, v in self.to_triplets():
            fh.write(f"{r},{c},{v}\n")

    def __eq__(self, other) -> bool:
        return (isinstance(other, OperatorMatrix)
                and self.row_basis.tag == other.row_basis.tag
                and self.col_basis.tag == other.col_basis.tag
                and np.array_equal(self.data, other.data))

    def __repr__(self) -> str:
        return (f"OperatorMatrix({self.row_basis.tag} x {self.col_basis.tag}, "
                f"shape={self.shape})")


# ---------------------------------------------------------------------------
# Vectorized assembly.  Values stay far below int64 limits: every intermediate
# is a product of at most four residues < ell.
# ---------------------------------------------------------------------------

def _act_arrays(ctx: PrimeContext, g: GroupElement,
                xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """cartan_act of g applied elementwise to the points (xs[i], ys[i])."""
    ell, eps = ctx.ell, ctx.epsilon
    a, b, c, d = g
    dn = (c * xs + d) % ell
    dy = (c * ys) % ell
    norm = (dn * dn - eps * dy * dy) % ell
    ni = ctx.inverse_table[norm]
    det = (a * d - b * c) % ell
    x = ((a * xs + b) % ell * dn - (eps * a) % ell * ys % ell * dy) % ell * ni % ell
    y = ys * det % ell * ni % ell
    return x, y


def _geodesic_row_indices(ctx: PrimeContext, pair: UnorderedPair) -> np.ndarray:
    """Indices into the H_ell basis of the geodesic through `pair`."""
    ell, r = ctx.ell, ctx.r
    g = transporter(pair.lo, pair.hi, ell)
    lam = np.arange(1, ell, dtype=np.int64)
    x, y = _act_arrays(ctx, g, np.zeros(ell - 1, dtype=np.int64), lam)
    y = np.where(y <= r, y, ell - y)
    idx = np.unique(x * r + y - 1)
    if idx.size != r:
        raise AssertionError(f"geodesic through {pair} is not {r} distinct points")
    return idx


def _path_row_indices(ctx: PrimeContext, pair: OrderedPair, s: int) -> np.ndarray:
    """Indices into the C_ell basis of the slope-s path through `pair`."""
    ell = ctx.ell
    g = transporter(pair.first, pair.second, ell)
    lam = np.arange(1, ell, dtype=np.int64)
    x, y = _act_arrays(ctx, g, lam * s % ell, lam)
    idx = x * (ell - 1) + y - 1
    if np.unique(idx).size != ell - 1:
        raise AssertionError(f"path through {pair} at slope {s} is not "
                             f"{ell - 1} distinct points")
    return idx


def build_psi_plus(ctx: PrimeContext) -> OperatorMatrix:
    """0/1 incidence matrix of geodesic membership: rows H_ell, cols unordered pairs."""
    rows = basis_H(ctx)
    cols = basis_unordered_pairs(ctx)
    data = np.zeros((len(rows), len(cols)), dtype=np.int32)
    for ci, pair in enumerate(cols):
        data[_geodesic_row_indices(ctx, pair), ci] = 1
    return OperatorMatrix(rows, cols, data)


def build_H_s(ctx: PrimeContext, s: int) -> OperatorMatrix:
    """0/1 incidence matrix of slope-s path membership: rows C_ell, cols ordered pairs."""
    s %= ctx.ell
    if s == 0:
        raise ValueError("path slope must be nonzero")
    rows = basis_C(ctx)
    cols = basis_ordered_pairs(ctx)
    data = np.zeros((len(rows), len(cols)), dtype=np.int32)
    for ci, pair in enumerate(cols):
        data[_path_row_indices(ctx, pair, s), ci] = 1
    return OperatorMatrix(rows, cols, data)


def build_psi(ctx: PrimeContext, scheme: CoefficientScheme | None = None) -> OperatorMatrix:
    """The combined operator sum_s (alpha_s + beta_s) H_s as one integer matrix."""
    ell = ctx.ell
    scheme = scheme or CoefficientScheme.standard(ctx)
    scheme.validate(ctx)
    rows = basis_C(ctx)
    cols = basis_ordered_pairs(ctx)
    dim = len(rows)
    weights = np.repeat(
        np.array([scheme.combined(s) for s in range(1, ell)], dtype=np.int64),
        ell - 1,
    )
    sv = np.repeat(np.arange(1, ell, dtype=np.int64), ell - 1)
    lv = np.tile(np.arange(1, ell, dtype=np.int64), ell - 1)
    xs0 = sv * lv % ell
    data = np.zeros((dim, len(cols)), dtype=np.int32)
    for ci, pair in enumerate(cols):
        g = transporter(pair.first, pair.second, ell)
        x, y = _act_arrays(ctx, g, xs0, lv)
        idx = x * (ell - 1) + y - 1
        per_s = np.sort(idx.reshape(ell - 1, ell - 1), axis=1)
        if not (np.diff(per_s, axis=1) > 0).all():
            raise AssertionError(f"path multiplicity violated at {pair}")
        col = np.bincount(idx, weights=weights, minlength=dim)
        data[:, ci] = col.astype(np.int32)
    return OperatorMatrix(rows, cols, data)


def restrict_to_affine(m: OperatorMatrix, side: str) -> OperatorMatrix:
    """Drop columns whose basis pair involves infinity; yields a square matrix."""
    expected = {"N": "unordered_pairs", "C": "ordered_pairs"}.get(side)
    if expected is None:
        raise ValueError(f"side must be 'N' or 'C', got {side!r}")
    if m.col_basis.tag != expected:
        raise ValueError(f"restriction on side {side} needs column basis {expected}, "
                         f"got {m.col_basis.tag}")
    keep = [i for i, pair in enumerate(m.col_basis) if pair.is_affine]
    cols = Basis(expected + "_affine", (m.col_basis.elements[i] for i in keep))
    return OperatorMatrix(m.row_basis, cols, m.data[:, keep])


# ---------------------------------------------------------------------------
# Equivariance spot checks: both maps must commute with the G-action on the
# bases.  Set/coefficient-level comparison, no matrices needed.
# ---------------------------------------------------------------------------

def psi_image_coefficients(pair: OrderedPair, scheme: CoefficientScheme,
                           ctx: PrimeContext) -> dict[CartanPoint, int]:
    """Coefficient of each point of C_ell in the image of the given pair."""
    out: dict[CartanPoint, int] = {}
    for s in range(1, ctx.ell):
        w = scheme.combined(s)
        if w == 0:
            continue
        for z in path_points(pair, s, ctx).points:
            out[z] = out.get(z, 0) + w
    return out


def check_equivariance_psi_plus(ctx: PrimeContext, rng: random.Random,
                                samples: int = 100) -> bool:
    pairs = enumerate_pairs_unordered(ctx)
    for _ in range(samples):
        g = random_invertible(rng, ctx.ell)
        pair = pairs[rng.randrange(len(pairs))]
        lhs = geodesic_points(pair_act_unordered(g, pair, ctx.ell), ctx).points
        rhs = frozenset(orbit_act(g, w, ctx) for w in geodesic_points(pair, ctx).points)
        if lhs != rhs:
            return False
    return True


def check_equivariance_psi(ctx: PrimeContext, scheme: CoefficientScheme,
                           rng: random.Random, samples: int = 100) -> bool:
    pairs = enumerate_pairs_ordered(ctx)
    for _ in range(samples):
        g = random_invertible(rng, ctx.ell)
        pair = pairs[rng.randrange(len(pairs))]
        lhs = psi_image_coefficients(pair_act_ordered(g, pair, ctx.ell), scheme, ctx)
        moved = {
            cartan_act(g, z, ctx): coeff
            for z, coeff in psi_image_coefficients(pair, scheme, ctx).items()
        }
        if lhs != moved:
            return False
    return True
