"""Generic Koszul modules W(V, K): graded dimensions, resonance, and
Cayley-Chow membership.

For an n-dimensional V and a subspace K of Wedge^2 V with independent
generating columns, the q-th graded piece is computed from the cokernel
presentation

    W_q = coker( Wedge^3 V (x) Sym^{q-1} V -> (Wedge^2 V / K) (x) Sym^q V ),

one rank of a modest matrix per degree.  Resonance is decided either by
enumerating rational points of P(K-perp) and testing decomposability
(rank of the alternating coefficient matrix <= 2), or -- in
characteristic 0 or >= n-2 -- from the vanishing of W_{n-3}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .exactla import ExactMatrix, FieldSpec, kernel_basis, rank, subspace_intersection_dim
from .reps import RepSpace, generic_koszul_delta

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
UNKNOWN = "unknown"

DEFAULT_POINT_BUDGET = 200_000


def wedge2_pairs(n: int):
    return list(combinations(range(n), 2))


def catalan_degree(n: int) -> int:
    """Degree of the Grassmannian of lines in its Pluecker embedding,
    the Catalan number C(2n-4, n-2) / (n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    num = comb(2 * n - 4, n - 2)
    assert num % (n - 1) == 0
    return num // (n - 1)


def hilbert_bound(n: int, q: int) -> int:
    """Sharp bound C(n+q-1, q) (n-2)(n-q-3) / (q+2) on dim W_q for a
    finite-length Koszul module; equality for dim K = 2n-3.  Zero
    outside 0 <= q <= n-4."""
    if n < 3:
        raise ValueError("need n >= 3")
    if q < 0 or q > n - 4:
        return 0
    num = comb(n + q - 1, q) * (n - 2) * (n - q - 3)
    assert num % (q + 2) == 0
    return num // (q + 2)


@dataclass(frozen=True)
class KoszulInput:
    """A pair (V, K): n = dim V and a matrix of independent columns
    spanning K inside Wedge^2 V (coordinates indexed by wedge2_pairs).

    ``weights`` optionally assigns an integer weight to each basis
    vector of V; when every column of kgens is weight-homogeneous the
    graded pieces split into weight blocks and ranks are computed
    blockwise.
    """

    n: int
    kgens: ExactMatrix
    field: FieldSpec
    weights: tuple = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need dim V >= 3")
        n2 = comb(self.n, 2)
        if self.kgens.rows != n2:
            raise ValueError(f"kgens must have {n2} rows")
        if self.kgens.cols > n2:
            raise ValueError("more generators than dim Wedge^2 V")
        if self.kgens.cols and rank(self.kgens, self.field) != self.kgens.cols:
            raise ValueError("kgens columns must be linearly independent")
        if self.weights is not None and len(self.weights) != self.n:
            raise ValueError("weights must have one entry per basis vector of V")

    @property
    def m(self) -> int:
        return self.kgens.cols


def random_koszul_input(n: int, m: int, f: FieldSpec, seed: int) -> KoszulInput:
    """Uniform random K of dimension m over GF(p), re-sampled until the
    columns are independent.  The seed fully determines the result."""
    p = f.characteristic
    if p == 0:
        raise ValueError("random sampling needs a finite field")
    n2 = comb(n, 2)
    rng = random.Random(seed)
    while True:
        ent = {}
        for c in range(m):
            for r in range(n2):
                v = rng.randrange(p)
                if v:
                    ent[(r, c)] = v
        mat = ExactMatrix(n2, m, ent)
        if rank(mat, f) == m:
            return KoszulInput(n, mat, f)


# ---------------------------------------------------------------------------
# Graded pieces
# ---------------------------------------------------------------------------

def _quotient_projection(k: KoszulInput):
    """Projection Wedge^2 V -> Wedge^2 V / K in coordinates.

    Row-reduces the generators; the quotient keeps the non-pivot
    coordinates, and each vector is reduced by the echelon rows before
    reading them off.  Returns (projection matrix, kept coordinate
    list).
    """
    import numpy as np

    from .exactla import _rref_fraction, _rref_gf

    n2 = comb(k.n, 2)
    p = k.field.characteristic
    gens = k.kgens.transpose().to_dense()      # rows = generators
    if p:
        arr = np.array([[int(v) % p for v in row] for row in gens],
                       dtype=np.int64) if gens else np.zeros((0, n2), dtype=np.int64)
        arr, pivots = _rref_gf(arr, p)
        rrows = [[int(v) for v in row] for row in arr[:len(pivots)]]
    else:
        rref, pivots = _rref_fraction(gens) if gens else ([], [])
        rrows = rref[:len(pivots)]
    keep = [c for c in range(n2) if c not in set(pivots)]
    keep_pos = {c: i for i, c in enumerate(keep)}
    ent = {}
    for c in range(n2):
        # reduce e_c by the echelon rows, read off kept coordinates
        if c in keep_pos:
            ent[(keep_pos[c], c)] = 1
        else:
            r = pivots.index(c)
            for cc in keep:
                v = -rrows[r][cc]
                if p:
                    v %= p
                if v:
                    ent[(keep_pos[cc], c)] = v
    return ExactMatrix(len(keep), n2, ent), keep


def _w_matrix(k: KoszulInput, q: int) -> ExactMatrix:
    """Presentation matrix of W_q: (Wedge^2/K) (x) Sym^q <- Wedge^3 (x) Sym^{q-1}."""
    proj, _ = _quotient_projection(k)
    if q == 0:
        return ExactMatrix(proj.rows, 0)
    delta3 = generic_koszul_delta(k.n, 3, q - 1)
    sym_q = RepSpace.sym_power(q, RepSpace.free(k.n)).dim
    lift = proj.kron(ExactMatrix.identity(sym_q))
    return lift @ delta3.matrix


def w_dim(k: KoszulInput, q: int) -> int:
    """dim W_q(V, K), exactly, over k.field."""
    if q < 0:
        raise ValueError("q must be non-negative")
    target_rows = (comb(k.n, 2) - k.m) * RepSpace.sym_power(q, RepSpace.free(k.n)).dim
    if q == 0:
        return target_rows
    mat = _w_matrix(k, q)
    if k.weights is not None and _columns_homogeneous(k):
        r = _graded_w_rank(k, q, mat)
    else:
        r = rank(mat, k.field)
    return target_rows - r


def w_dims(k: KoszulInput, q_max: int):
    """Graded dimensions q -> dim W_q for q = 0..q_max, with the
    generated-in-degree-zero sanity check (a zero stays zero)."""
    out = {}
    seen_zero = False
    for q in range(q_max + 1):
        d = w_dim(k, q)
        if seen_zero and d != 0:
            raise AssertionError(f"W_{q} != 0 after a vanishing graded piece")
        if d == 0:
            seen_zero = True
        out[q] = d
    return out


def _columns_homogeneous(k: KoszulInput) -> bool:
    pairs = wedge2_pairs(k.n)
    for c in range(k.m):
        ws = {k.weights[p1] + k.weights[p2]
              for (r, (p1, p2)) in ((r, pairs[r]) for r in range(len(pairs)))
              if k.kgens.entry(r, c)}
        if len(ws) > 1:
            return False
    return True


def _mono_weight(mu, degree, weights):
    """Weight of a symmetric-power monomial label; stripped parts are
    implicit factors of the index-0 variable."""
    return sum(weights[v] for v in mu) + (degree - len(mu)) * weights[0]


def _graded_w_rank(k: KoszulInput, q: int, mat: ExactMatrix) -> int:
    from .exactla import graded_rank

    proj, keep = _quotient_projection(k)
    pairs = wedge2_pairs(k.n)
    V = RepSpace.free(k.n)
    sym = RepSpace.sym_power(q, V)
    symw = [_mono_weight(mu, q, k.weights) for mu in sym.basis]
    # kept quotient coordinates inherit the weight of their wedge pair
    quow = [k.weights[pairs[c][0]] + k.weights[pairs[c][1]] for c in keep]
    row_w = [qw + sw for qw in quow for sw in symw]
    w3 = RepSpace.tensor([RepSpace.wedge(3, V), RepSpace.sym_power(q - 1, V)])
    col_w = [sum(k.weights[v] for v in lab[0])
             + _mono_weight(lab[1], q - 1, k.weights) for lab in w3.basis]
    try:
        return graded_rank(mat, k.field, row_w, col_w)
    except ValueError:
        return rank(mat, k.field)


# ---------------------------------------------------------------------------
# Resonance and the Chow form
# ---------------------------------------------------------------------------

def k_perp_basis(k: KoszulInput):
    """Basis of K-perp inside Wedge^2 V-dual (same pair coordinates)."""
    return kernel_basis(k.kgens.transpose(), k.field)


def is_decomposable(vec, n: int, f: FieldSpec) -> bool:
    """Is a 2-form (coordinates over wedge2_pairs) zero or decomposable?

    Equivalent to the alternating coefficient matrix having rank <= 2;
    valid over every field, including characteristic 2 where the naive
    wedge-square test degenerates.
    """
    pairs = wedge2_pairs(n)
    ent = {}
    for idx, (a, b) in enumerate(pairs):
        v = vec[idx]
        if v:
            ent[(a, b)] = v
            ent[(b, a)] = -v
    m = ExactMatrix(n, n, ent)
    return rank(m, f) <= 2


def wedge_square_is_zero(vec, n: int, f: FieldSpec) -> bool:
    """The classical omega ^ omega = 0 test in Wedge^4 V.  Identically
    true in characteristic 2, so only a valid decomposability criterion
    away from 2; kept as a cross-check."""
    pairs = wedge2_pairs(n)
    p = f.characteristic
    quad = {}
    for (i1, (a, b)) in enumerate(pairs):
        for (i2, (c, d)) in enumerate(pairs):
            if len({a, b, c, d}) != 4:
                continue
            perm = (a, b, c, d)
            sign = _sort_sign(perm)
            key = tuple(sorted(perm))
            quad[key] = quad.get(key, 0) + sign * vec[i1] * vec[i2]
    for v in quad.values():
        if (v % p if p else v) != 0:
            return False
    return True


def _sort_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def _projective_points(basis, p: int, budget: int):
    """Normalized representatives of the projectivization of a span
    over GF(p), at most budget of them."""
    k = len(basis)
    amb = len(basis[0])
    count = 0
    # first nonzero coordinate (in the span's own coordinates) equal 1
    for lead in range(k):
        tail = k - lead - 1
        for rest in _tuples(p, tail):
            coeffs = (0,) * lead + (1,) + rest
            vec = [0] * amb
            for c, b in zip(coeffs, basis):
                if c:
                    for idx, v in enumerate(b):
                        vec[idx] = (vec[idx] + c * v) % p
            yield vec
            count += 1
            if count >= budget:
                return


def _tuples(p, length):
    if length == 0:
        yield ()
        return
    for head in range(p):
        for rest in _tuples(p, length - 1):
            yield (head,) + rest


def resonance_trivial(k: KoszulInput, budget: int = DEFAULT_POINT_BUDGET) -> str:
    """Is the resonance of (V, K) trivial?  Returns "trivial",
    "nontrivial" or "unknown".

    Method A (finite fields): enumerate rational points of P(K-perp)
    and test decomposability.  A hit is conclusive; exhaustion is
    conclusive only when P(K-perp) is a single point (then every
    geometric point is rational).  Method B (char 0 or char >= n-2):
    trivial iff W_{n-3} = 0.  When both are conclusive they are
    cross-checked.
    """
    n, m, f = k.n, k.m, k.field
    p = f.characteristic
    if m == comb(n, 2):
        return TRIVIAL                      # K-perp = 0, W = 0
    verdicts = []
    if m <= 2 * n - 4:
        # codim P(K-perp) = m <= dim of the Grassmannian of lines, so the
        # intersection is nonempty over the algebraic closure
        verdicts.append(NONTRIVIAL)
    method_b = None
    if p == 0 or p >= n - 2:
        method_b = TRIVIAL if w_dim(k, n - 3) == 0 else NONTRIVIAL
        verdicts.append(method_b)
    if p != 0:
        basis = k_perp_basis(k)
        kdim = len(basis)
        npoints = (p**kdim - 1) // (p - 1) if kdim else 0
        if kdim and npoints <= budget:
            found = any(not all(v == 0 for v in pt) and is_decomposable(pt, n, f)
                        for pt in _projective_points(basis, p, budget))
            if found:
                verdicts.append(NONTRIVIAL)
            elif kdim == 1:
                verdicts.append(TRIVIAL)    # the single point is rational
    if not verdicts:
        return UNKNOWN
    if len(set(verdicts)) > 1:
        raise AssertionError(
            f"resonance methods disagree for n={n}, m={m}, {f}: {verdicts}")
    return verdicts[0]


def chow_member(k: KoszulInput) -> bool:
    """Cayley-Chow membership for dim K = 2n-3: does K (x) Sym^{n-3} V
    meet the kernel of the Koszul differential delta_{2,n-3}?"""
    n, f = k.n, k.field
    if k.m != 2 * n - 3:
        raise ValueError(f"chow_member needs dim K = 2n-3 = {2*n-3}, got {k.m}")
    delta = generic_koszul_delta(n, 2, n - 3)
    ker = kernel_basis(delta.matrix, f)
    if not ker:
        return False
    sym_dim = RepSpace.sym_power(n - 3, RepSpace.free(n)).dim
    n2 = comb(n, 2)
    amb = n2 * sym_dim
    kt = [[k.kgens.entry(r, c) for r in range(n2)] for c in range(k.m)]
    kvecs = []
    for col in kt:
        for s in range(sym_dim):
            vec = [0] * amb
            for r, v in enumerate(col):
                if v:
                    vec[r * sym_dim + s] = v
            kvecs.append(vec)
    return subspace_intersection_dim(kvecs, ker, f) > 0
