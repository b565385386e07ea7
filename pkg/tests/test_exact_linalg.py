import random
from fractions import Fraction

import numpy as np
import pytest

from cartanmaps.correspondence import build_psi_plus, restrict_to_affine
from cartanmaps.exact_linalg import (
    RankCertificate,
    RankPolicy,
    _echelon_float,
    _echelon_int64,
    det_exact_small,
    det_mod_p,
    rank_exact,
    rank_mod_p,
)
from cartanmaps.modular_arith import PrimeContext


def fraction_rank(rows) -> int:
    """Independent oracle: rational Gaussian elimination."""
    a = [[Fraction(int(v)) for v in row] for row in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            if a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def fraction_det(rows) -> Fraction:
    a = [[Fraction(int(v)) for v in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return det


def test_rank_mod_p_examples():
    assert rank_mod_p(np.zeros((4, 5), dtype=np.int64), 7) == 0
    assert rank_mod_p(np.eye(6, dtype=np.int64), 2) == 6
    ctx = PrimeContext(3)
    restricted = restrict_to_affine(build_psi_plus(ctx), "N")
    assert rank_mod_p(restricted, 3) == 3


def test_det_examples():
    assert det_mod_p(np.eye(3, dtype=np.int64), 5) == 1
    assert det_mod_p(np.diag([2, 3]), 5) == 1
    assert det_mod_p(np.array([[1, 1], [1, 1]]), 5) == 0
    assert det_exact_small(np.diag([2, 3])) == 6
    assert det_exact_small(np.array([[1, 1], [1, 1]])) == 0
    ctx = PrimeContext(3)
    restricted = restrict_to_affine(build_psi_plus(ctx), "N")
    d = det_exact_small(restricted)
    assert d != 0 and det_mod_p(restricted, 3) == d % 3


def test_det_validation():
    with pytest.raises(ValueError):
        det_mod_p(np.zeros((2, 3), dtype=np.int64), 5)
    with pytest.raises(ValueError):
        det_exact_small(np.eye(65, dtype=np.int64))
    det_exact_small(np.eye(65, dtype=np.int64), max_dim=65)


def test_rank_exact_preferred_prime_path():
    ctx = PrimeContext(5)
    cert = rank_exact(build_psi_plus(ctx), RankPolicy(preferred_primes=(5,)))
    assert cert.rank == 10
    assert cert.conclusive
    assert cert.method == "single-prime full rank"
    assert cert.witnesses == ((5, 10),)
    # the 10x10 affine restriction is itself full rank through the same route
    restricted = restrict_to_affine(build_psi_plus(ctx), "N")
    cert_r = rank_exact(restricted, RankPolicy(preferred_primes=(5,)))
    assert restricted.shape == (10, 10)
    assert cert_r.rank == 10 and cert_r.conclusive


def test_rank_exact_escalates_trivially():
    cert = rank_exact(np.array([[1, 1], [1, 1]]), RankPolicy(preferred_primes=(5,)))
    assert cert.rank == 1
    assert cert.conclusive
    assert cert.method == "fraction-free exact"
    assert cert.witnesses == ((5, 1),)


def test_rank_exact_multi_prime_path():
    # rank-8 product matrix, too big for the exact path under this policy
    rng = np.random.default_rng(11)
    A = rng.integers(-3, 4, size=(20, 8)) @ rng.integers(-3, 4, size=(8, 20))
    policy = RankPolicy(bareiss_limit=0, random_prime_count=5,
                        stabilize_window=2, seed=42)
    cert = rank_exact(A, policy)
    assert cert.method == "multi-prime stabilized"
    assert not cert.conclusive
    assert cert.rank == fraction_rank(A.tolist()) == 8
    assert all(r == 8 for (_, r) in cert.witnesses)


def test_rank_mod_p_is_lower_bound():
    rng = np.random.default_rng(3)
    for _ in range(50):
        A = rng.integers(-9, 10, size=(6, 7))
        exact = fraction_rank(A.tolist())
        for p in (2, 3, 5, 101, 1048583):
            assert rank_mod_p(A, p) <= exact
        assert rank_exact(A).rank == exact


def test_fuzz_rank_and_det_500():
    rng = random.Random(20250810)
    for trial in range(500):
        m = rng.randrange(1, 13)
        n = rng.randrange(1, 13)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        cert = rank_exact(np.array(A, dtype=np.int64))
        assert cert.conclusive, f"trial {trial} not conclusive"
        assert cert.rank == fraction_rank(A), f"trial {trial} rank mismatch"
        if m == n:
            d = det_exact_small(np.array(A, dtype=np.int64))
            assert d == fraction_det(A)
            for p in (97, 1048583):
                assert det_mod_p(np.array(A, dtype=np.int64), p) == d % p


def test_float_and_int_engines_agree():
    rng = np.random.default_rng(7)
    for _ in range(25):
        A = rng.integers(-50, 50, size=(rng.integers(1, 30), rng.integers(1, 30)))
        for p in (2, 31, 97, 1048583):
            assert _echelon_float(A, p) == _echelon_int64(A, p)


def test_certificate_serialization():
    cert = RankCertificate(3, 4, 3, ((5, 3),), "single-prime full rank", True)
    doc = cert.to_json()
    assert doc["rank"] == 3 and doc["conclusive"] is True
    assert doc["witnesses"] == [[5, 3]]


def test_accepts_operator_matrix_and_lists():
    ctx = PrimeContext(3)
    m = build_psi_plus(ctx)
    assert rank_mod_p(m, 3) == rank_mod_p(m.data, 3) == 3
    assert rank_mod_p([[1, 2], [2, 4]], 5) == 1
    with pytest.raises(ValueError):
        rank_mod_p(np.zeros(3), 5)
