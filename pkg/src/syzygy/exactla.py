"""Exact linear algebra over GF(p) and over the rationals.

This is the rank/kernel engine used by every other module.  All
computations are exact: elimination over GF(p) is done in machine
integers (with a BLAS-backed blocked path for small primes), and
characteristic-zero ranks use fraction-free Bareiss elimination over
arbitrary-precision integers.  Nothing here is floating point in the
numerical-analysis sense; float64 is used only as an exact carrier of
integers below 2^53.

Matrices are immutable sparse coordinate maps.  Pivoting is always
"first nonzero entry in column order" so kernel bases are reproducible
bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Internal thresholds for the sparse elimination path.  The choice is
# invisible to callers: both paths return identical results.
_SPARSE_MIN_CELLS = 100_000
_SPARSE_MAX_DENSITY = 0.05

# float64 carries exact integers up to 2**53; the blocked GF(p) path
# defers reduction, accumulating at most ~2*_GF_BLOCK products of two
# reduced residues before taking a remainder.
_GF_BLOCK = 128
_F64_SAFE = 2**53


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.2e18."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 (rationals) or a prime p < 2^31."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


class ExactMatrix:
    """Immutable sparse matrix with integer or Fraction entries.

    The matrix itself is field-agnostic; reduction happens inside the
    rank/kernel operations, which receive a FieldSpec.  Sparse storage
    never keeps explicit zeros.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                if v:
                    clean[(r, c)] = v
        self._entries = clean

    @classmethod
    def from_rows(cls, data) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    ent[(r, c)] = v
        return cls(rows, cols, ent)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def from_columns(cls, columns, rows: int) -> "ExactMatrix":
        ent = {}
        for c, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for r, v in enumerate(col):
                if v:
                    ent[(r, c)] = v
        return cls(rows, len(columns), ent)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, r: int, c: int):
        return self._entries.get((r, c), 0)

    def items(self):
        return self._entries.items()

    def column(self, c: int):
        v = [0] * self.rows
        for (r, cc), val in self._entries.items():
            if cc == c:
                v[r] = val
        return v

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           {(c, r): v for (r, c), v in self._entries.items()})

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row = {}
        for (r, k), v in other._entries.items():
            by_row.setdefault(r, []).append((k, v))
        out = {}
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + v * w
        return ExactMatrix(self.rows, other.cols, out)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        ent = dict(self._entries)
        for key, v in other._entries.items():
            ent[key] = ent.get(key, 0) + v
        return ExactMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scaled(-1)

    def scaled(self, a) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols,
                           {k: a * v for k, v in self._entries.items()})

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; row-major pairing (this factor slowest)."""
        ent = {}
        for (r1, c1), v1 in self._entries.items():
            for (r2, c2), v2 in other._entries.items():
                ent[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return ExactMatrix(self.rows * other.rows, self.cols * other.cols, ent)

    @staticmethod
    def hstack(mats) -> "ExactMatrix":
        mats = list(mats)
        rows = mats[0].rows
        ent = {}
        off = 0
        for m in mats:
            if m.rows != rows:
                raise ValueError("row count mismatch in hstack")
            for (r, c), v in m._entries.items():
                ent[(r, off + c)] = v
            off += m.cols
        return ExactMatrix(rows, off, ent)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def equals_mod(self, other: "ExactMatrix", f: FieldSpec) -> bool:
        """Entrywise equality over the given field."""
        if self.shape != other.shape:
            return False
        p = f.characteristic
        keys = set(self._entries) | set(other._entries)
        for k in keys:
            d = self.entry(*k) - other.entry(*k)
            if p:
                if not isinstance(d, int):
                    raise TypeError("fractional entry in positive characteristic")
                if d % p:
                    return False
            elif d:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# GF(p) engines
# ---------------------------------------------------------------------------

def _gf_array(m: ExactMatrix, p: int) -> np.ndarray:
    a = np.zeros((m.rows, m.cols), dtype=np.int64)
    for (r, c), v in m.items():
        if not isinstance(v, int):
            raise TypeError("fractional entry in positive characteristic")
        a[r, c] = v % p
    return a


def _rank_gf_f64(a: np.ndarray, p: int) -> int:
    """Blocked elimination mod p in float64 (exact for p^2*block < 2^53).

    Right-looking panel LU: within a panel the update is rank-1; the
    trailing update is one matrix product per panel.  Pivot rows apply
    pending panel updates when discovered, so no triangular solve is
    needed.
    """
    m, n = a.shape
    if m == 0 or n == 0:
        return 0
    A = (a % p).astype(np.float64)
    B = _GF_BLOCK
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + B, n)
        trail = np.empty((min(B, c1 - c0), n - c1), dtype=np.float64)
        L = np.zeros((m, c1 - c0), dtype=np.float64)   # panel multipliers
        k = 0                    # pivots found in this panel
        for c in range(c0, c1):
            A[r:, c] %= p
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            j = r + int(nz[0])
            if j != r:
                A[[r, j], c0:c1] = A[[j, r], c0:c1]
                A[[r, j], c1:] = A[[j, r], c1:]
                L[[r, j]] = L[[j, r]]
            if k and c1 < n:
                # apply pending trailing updates to the new pivot row
                A[r, c1:] -= L[r, :k] @ trail[:k]
            A[r, c:] %= p
            inv = float(pow(int(A[r, c]), p - 2, p))
            A[r, c:] = (A[r, c:] * inv) % p
            if c1 < n:
                trail[k] = A[r, c1:]
            if r + 1 < m:
                f = A[r + 1:, c].copy()
                L[r + 1:, k] = f
                # deferred reduction: panel entries stay below B*p^2 < 2^53
                A[r + 1:, c:c1] -= np.outer(f, A[r, c:c1])
            k += 1
            r += 1
        if k and c1 < n and r < m:
            A[r:, c1:] = (A[r:, c1:] - L[r:, :k] @ trail[:k]) % p
        c0 = c1
    return r


def _rank_gf_int64(a: np.ndarray, p: int) -> int:
    """Stepwise elimination mod p in int64; valid for any p < 2^31."""
    A = a % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        j = r + int(nz[0])
        if j != r:
            A[[r, j], :] = A[[j, r], :]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[r + 1:, c]
        mask = col != 0
        if mask.any():
            A[r + 1:, c:][mask] = (A[r + 1:, c:][mask]
                                   - col[mask, None] * A[r, c:][None, :]) % p
        r += 1
    return r


def _rank_gf_sparse(m: ExactMatrix, p: int) -> int:
    """Dict-of-rows elimination mod p; same pivot rule as the dense path."""
    rows = {}
    cols_of = {}
    for (r, c), v in m.items():
        v %= p
        if v:
            rows.setdefault(r, {})[c] = v
            cols_of.setdefault(c, set()).add(r)
    used = set()
    rank = 0
    for c in range(m.cols):
        cand = sorted(cols_of.get(c, set()) - used)
        if not cand:
            continue
        pr = cand[0]
        used.add(pr)
        rank += 1
        prow = rows[pr]
        inv = pow(prow[c], p - 2, p)
        prow = {cc: (vv * inv) % p for cc, vv in prow.items()}
        rows[pr] = prow
        for cc in prow:
            cols_of.setdefault(cc, set()).add(pr)
        for r in cand[1:]:
            row = rows[r]
            f = row.get(c, 0) % p
            if not f:
                continue
            for cc, vv in prow.items():
                nv = (row.get(cc, 0) - f * vv) % p
                if nv:
                    row[cc] = nv
                    cols_of.setdefault(cc, set()).add(r)
                else:
                    row.pop(cc, None)
                    s = cols_of.get(cc)
                    if s:
                        s.discard(r)
    return rank


def _rank_gf(m: ExactMatrix, p: int) -> int:
    cells = m.rows * m.cols
    if cells and m.nnz >= _SPARSE_MIN_CELLS and m.nnz / cells < _SPARSE_MAX_DENSITY:
        return _rank_gf_sparse(m, p)
    a = _gf_array(m, p)
    if (p - 1) * (p - 1) * (2 * _GF_BLOCK + 2) < _F64_SAFE:
        return _rank_gf_f64(a, p)
    return _rank_gf_int64(a, p)


# ---------------------------------------------------------------------------
# Characteristic-zero engines
# ---------------------------------------------------------------------------

def _integer_rows(m: ExactMatrix):
    """Dense integer rows, clearing denominators row by row."""
    dense = m.to_dense()
    out = []
    for row in dense:
        lcm = 1
        for v in row:
            if isinstance(v, Fraction):
                d = v.denominator
                g = _gcd(lcm, d)
                lcm = lcm // g * d
        if lcm == 1:
            out.append([int(v) for v in row])
        else:
            out.append([int(v * lcm) for v in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _rank_bareiss_py(rows) -> int:
    """Fraction-free Bareiss on Python integers (the fallback engine)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            arow = a[r]
            if f:
                for j in range(c, n):
                    ai[j] = (ai[j] * piv - f * arow[j]) // prev
            else:
                for j in range(c, n):
                    ai[j] = (ai[j] * piv) // prev
        prev = piv
        r += 1
        rank += 1
    return rank


def _rank_bareiss(rows) -> int:
    """Bareiss elimination, vectorized in int64 while magnitudes permit.

    Falls back to Python big integers as soon as the next update could
    exceed int64 range; the recurrence and pivot order are identical, so
    the result does not depend on where the switch happens.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    mx = max((abs(v) for row in rows for v in row), default=0)
    if mx >= 2**31:
        return _rank_bareiss_py(rows)
    A = np.array(rows, dtype=np.int64)
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        j = r + int(nz[0])
        if j != r:
            A[[r, j], :] = A[[j, r], :]
        piv = int(A[r, c])
        mx = int(np.abs(A[r:, c:]).max())
        if 2 * mx * mx >= 2**62:
            return rank + _rank_bareiss_py(A[r:, c:].tolist())
        if r + 1 < m:
            block = A[r + 1:, c:]
            A[r + 1:, c:] = (block * piv - np.outer(A[r + 1:, c], A[r, c:])) // prev
        prev = piv
        r += 1
        rank += 1
    return rank


def _rref_fraction(rows):
    """Reduced row echelon form over Q.  Returns (rref rows, pivot cols)."""
    a = [[Fraction(v) for v in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_gf(a: np.ndarray, p: int):
    A = a % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        j = r + int(nz[0])
        if j != r:
            A[[r, j], :] = A[[j, r], :]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, :] = (A[r, :] * inv) % p
        for i in range(m):
            if i != r and A[i, c]:
                A[i, :] = (A[i, :] - A[i, c] * A[r, :]) % p
        pivots.append(c)
        r += 1
    return A, pivots


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

# fixed prime for the full-rank certificate below; any nonzero minor
# mod a prime is a nonzero integer minor
_CERT_PRIME = 1_073_741_789


def rank(m: ExactMatrix, f: FieldSpec) -> int:
    """Exact rank of m over f.  Empty matrices have rank 0.

    Characteristic zero first certifies full rank modulo a fixed prime
    (sufficient: a surviving maximal minor is nonzero over Z); only
    rank-deficient matrices pay for fraction-free Bareiss elimination.
    """
    if m.rows == 0 or m.cols == 0 or m.nnz == 0:
        return 0
    p = f.characteristic
    if p:
        return _rank_gf(m, p)
    rows = _integer_rows(m)
    full = min(m.rows, m.cols)
    ent = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if v % _CERT_PRIME:
                ent[(r, c)] = v % _CERT_PRIME
    if _rank_gf(ExactMatrix(m.rows, m.cols, ent), _CERT_PRIME) == full:
        return full
    return _rank_bareiss(rows)


def kernel_basis(m: ExactMatrix, f: FieldSpec):
    """Deterministic basis of the right kernel of m over f.

    Vectors are returned in free-column order; over GF(p) entries are
    reduced residues, over Q they are Fractions.
    """
    p = f.characteristic
    if m.cols == 0:
        return []
    if p:
        A, pivots = _rref_gf(_gf_array(m, p), p)
        pivset = set(pivots)
        basis = []
        for c in range(m.cols):
            if c in pivset:
                continue
            v = [0] * m.cols
            v[c] = 1
            for r, pc in enumerate(pivots):
                v[pc] = (-int(A[r, c])) % p
            basis.append(v)
        return basis
    rref, pivots = _rref_fraction(m.to_dense())
    pivset = set(pivots)
    basis = []
    for c in range(m.cols):
        if c in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[c] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][c]
        basis.append(v)
    return basis


def subspace_intersection_dim(a, b, f: FieldSpec) -> int:
    """dim(span(a) ∩ span(b)) for lists of vectors in a common ambient space."""
    if not a or not b:
        return 0
    amb = len(a[0])
    if any(len(v) != amb for v in a) or any(len(v) != amb for v in b):
        raise ValueError("ambient dimension mismatch")
    A = ExactMatrix.from_columns(a, amb)
    B = ExactMatrix.from_columns(b, amb)
    joint = ExactMatrix.hstack([A, B])
    return rank(A, f) + rank(B, f) - rank(joint, f)


def graded_rank(m: ExactMatrix, f: FieldSpec, row_weights, col_weights) -> int:
    """Rank of a weight-graded matrix, one small block per weight class.

    Entries must connect each column-weight class to a single
    row-weight class (and conversely); this holds for every equivariant
    map in this package and is verified, not assumed.
    """
    if len(row_weights) != m.rows or len(col_weights) != m.cols:
        raise ValueError("weight vector length mismatch")
    col_groups = {}
    for c, w in enumerate(col_weights):
        col_groups.setdefault(w, []).append(c)
    row_groups = {}
    for r, w in enumerate(row_weights):
        row_groups.setdefault(w, []).append(r)
    # map each column class to the row class its entries live in
    target_of = {}
    for (r, c), _ in m.items():
        cw, rw = col_weights[c], row_weights[r]
        if target_of.setdefault(cw, rw) != rw:
            raise ValueError("matrix is not weight-graded")
    used_rows = {}
    for cw, rw in target_of.items():
        if used_rows.setdefault(rw, cw) != cw:
            raise ValueError("two column classes hit one row class")
    total = 0
    col_index = {w: {c: i for i, c in enumerate(cs)} for w, cs in col_groups.items()}
    row_index = {w: {r: i for i, r in enumerate(rs)} for w, rs in row_groups.items()}
    blocks = {}
    for (r, c), v in m.items():
        cw = col_weights[c]
        blocks.setdefault(cw, {})[(row_index[row_weights[r]][r],
                                   col_index[cw][c])] = v
    for cw, ent in sorted(blocks.items()):
        rw = target_of[cw]
        sub = ExactMatrix(len(row_groups[rw]), len(col_groups[cw]), ent)
        total += rank(sub, f)
    return total


def rank_multiprime_probe(m: ExactMatrix, seed: int = 0) -> int:
    """Heuristic characteristic-zero rank: max rank over 3 random 30-bit primes.

    Fast and almost always exact, but only a lower bound in principle;
    never used by the acceptance suite.
    """
    rng = random.Random(seed)
    best = 0
    for _ in range(3):
        while True:
            p = rng.randrange(2**29, 2**30)
            if _is_prime(p):
                break
        rows = _integer_rows(m)
        ent = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v % p:
                    ent[(r, c)] = v % p
        best = max(best, _rank_gf(ExactMatrix(m.rows, m.cols, ent), p))
    return best
