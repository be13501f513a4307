import random
from fractions import Fraction

import pytest

from syzygy.exactla import (GF, QQ, ExactMatrix, FieldSpec, graded_rank,
                            kernel_basis, rank, rank_multiprime_probe,
                            subspace_intersection_dim)
from syzygy.exactla import _rank_gf_f64, _rank_gf_int64, _rank_gf_sparse, _gf_array

from _oracles import nonzero_minor_exists, rank_by_minors


def test_fieldspec_validation():
    FieldSpec(0)
    FieldSpec(2)
    FieldSpec(101)
    FieldSpec(2**31 - 1)            # Mersenne prime
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2**31 + 11)
    with pytest.raises(ValueError):
        FieldSpec(-3)


def test_rank_examples():
    assert rank(ExactMatrix.zeros(0, 0), QQ) == 0
    assert rank(ExactMatrix.identity(2), GF(5)) == 2
    assert rank(ExactMatrix.from_rows([[1, 2], [2, 4]]), QQ) == 1


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3), QQ) == []
    kb = kernel_basis(ExactMatrix.from_rows([[1, -1]]), QQ)
    assert len(kb) == 1 and kb[0][0] == kb[0][1] != 0
    assert len(kernel_basis(ExactMatrix.zeros(2, 3), GF(7))) == 3


def test_kernel_vectors_annihilate():
    rng = random.Random(3)
    for p in (0, 2, 101):
        f = FieldSpec(p)
        for _ in range(15):
            m = ExactMatrix.from_rows(
                [[rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
                 for _ in range(rng.randint(1, 6))][:1] * 1 or [[0]])
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = ExactMatrix.from_rows([[rng.randint(-5, 5) for _ in range(cols)]
                                       for _ in range(rows)])
            for v in kernel_basis(m, f):
                vec = ExactMatrix.from_columns([v], cols)
                prod = m @ vec
                assert prod.equals_mod(ExactMatrix.zeros(rows, 1), f)


def test_intersection_examples():
    e1, e2 = [1, 0], [0, 1]
    assert subspace_intersection_dim([e1], [e2], QQ) == 0
    assert subspace_intersection_dim([e1], [[1, 1], e2], QQ) == 1
    assert subspace_intersection_dim([e1, e2], [e1, e2], QQ) == 2
    with pytest.raises(ValueError):
        subspace_intersection_dim([[1, 0]], [[1, 0, 0]], QQ)


def test_rank_transpose_and_nullity():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        m = ExactMatrix.from_rows([[rng.randint(-4, 4) for _ in range(cols)]
                                   for _ in range(rows)])
        for f in (QQ, GF(2), GF(13)):
            r = rank(m, f)
            assert r == rank(m.transpose(), f)
            assert cols == r + len(kernel_basis(m, f))


def test_rank_vs_minor_oracle():
    rng = random.Random(5)
    for _ in range(25):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        data = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        m = ExactMatrix.from_rows(data)
        rq = rank(m, QQ)
        assert rq == rank_by_minors(data)
        for p in (2, 3, 5, 101):
            rp = rank(m, GF(p))
            assert rp == rank_by_minors(data, modulus=p)
            assert rp <= rq
            # equality exactly when some maximal minor survives mod p
            assert (rp == rq) == (rq == 0 or nonzero_minor_exists(data, rq, p))


def test_fraction_entries_over_q():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                               [Fraction(1, 5), Fraction(1, 1)]])
    assert rank(m, QQ) == 2
    m2 = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 4)],
                                [Fraction(2, 3), Fraction(1, 3)]])
    assert rank(m2, QQ) == 1


def test_gf_engines_agree():
    rng = random.Random(17)
    for p in (2, 3, 101, 2**31 - 1):
        for _ in range(10):
            rows, cols = rng.randint(1, 12), rng.randint(1, 12)
            m = ExactMatrix.from_rows([[rng.randrange(p) for _ in range(cols)]
                                       for _ in range(rows)])
            a = _gf_array(m, p)
            r64 = _rank_gf_int64(a.copy(), p)
            rsp = _rank_gf_sparse(m, p)
            assert r64 == rsp == rank(m, GF(p))
            if (p - 1) ** 2 * 128 < 2**53:
                assert _rank_gf_f64(a.copy(), p) == r64


def test_gf_blocked_path_on_wide_matrices():
    # exceed the panel width so the trailing dgemm update actually runs
    rng = random.Random(23)
    p = 5
    rows, cols = 150, 310
    data = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    m = ExactMatrix.from_rows(data)
    a = _gf_array(m, p)
    assert _rank_gf_f64(a.copy(), p) == _rank_gf_int64(a.copy(), p)
    # and with planted low rank
    basis = [[rng.randrange(p) for _ in range(cols)] for _ in range(7)]
    data = []
    for _ in range(rows):
        coeffs = [rng.randrange(p) for _ in range(7)]
        data.append([sum(cf * b[c] for cf, b in zip(coeffs, basis)) % p
                     for c in range(cols)])
    m = ExactMatrix.from_rows(data)
    a = _gf_array(m, p)
    r = _rank_gf_f64(a.copy(), p)
    assert r == _rank_gf_int64(a.copy(), p) <= 7


def test_sparse_dense_paths_identical():
    rng = random.Random(29)
    p = 7
    for _ in range(5):
        rows, cols = 60, 80
        ent = {}
        for _ in range(200):
            ent[(rng.randrange(rows), rng.randrange(cols))] = rng.randrange(1, p)
        m = ExactMatrix(rows, cols, ent)
        a = _gf_array(m, p)
        assert _rank_gf_sparse(m, p) == _rank_gf_int64(a, p)


def test_graded_rank_matches_plain_rank():
    rng = random.Random(31)
    # block-diagonal by construction: entries only within matching weights
    row_w = [rng.randint(0, 3) for _ in range(20)]
    col_w = [rng.randint(0, 3) for _ in range(15)]
    ent = {}
    for _ in range(60):
        r, c = rng.randrange(20), rng.randrange(15)
        if row_w[r] == col_w[c]:
            ent[(r, c)] = rng.randint(-3, 3)
    m = ExactMatrix(20, 15, ent)
    for f in (QQ, GF(3)):
        assert graded_rank(m, f, row_w, col_w) == rank(m, f)


def test_graded_rank_rejects_ungraded():
    m = ExactMatrix.from_rows([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        graded_rank(m, QQ, [0, 1], [0, 1])


def test_multiprime_probe():
    rng = random.Random(37)
    for _ in range(10):
        data = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(4)]
        m = ExactMatrix.from_rows(data)
        assert rank_multiprime_probe(m, seed=1) == rank(m, QQ)


def test_matrix_algebra():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert (a - a).is_zero()
    assert a.kron(ExactMatrix.identity(2)).shape == (4, 4)
    assert ExactMatrix.hstack([a, b]).shape == (2, 4)
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, {(2, 0): 1})
