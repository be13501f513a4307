"""Independent brute-force oracles used to freeze expected values.

Nothing here shares code paths with the package: polynomials are plain
exponent-dicts, Schur polynomials come from the dual Jacobi-Trudi
determinant (a different rule than the Pieri iteration under test), and
ranks come from minor expansion.
"""

from fractions import Fraction
from itertools import combinations, permutations


# -- symbolic polynomials in z_1..z_k as {exponent tuple: coeff} --------------

def poly_mul(a, b):
    out = {}
    for ea, va in a.items():
        for eb, vb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def poly_one(k):
    return {(0,) * k: 1}


def elementary(j, k):
    """e_j(z_1..z_k) expanded into monomials."""
    out = {}
    for I in combinations(range(k), j):
        e = [0] * k
        for idx in I:
            e[idx] = 1
        out[tuple(e)] = 1
    return out


def e_mu(mu, k):
    out = poly_one(k)
    for part in mu:
        out = poly_mul(out, elementary(part, k))
    return out


def schur_dual_jacobi_trudi(lam, k):
    """s_lam(z_1..z_k) = det(e_{lam'_r - r + c}) expanded symbolically.

    The determinant is over the conjugate partition, which keeps entries
    inside the elementary basis; expansion is over permutations (sizes
    here are tiny).
    """
    lamc = tuple(sum(1 for part in lam if part >= j)
                 for j in range(1, (lam[0] + 1) if lam else 1))
    m = len(lamc)
    if m == 0:
        return poly_one(k)
    out = {}
    for perm in permutations(range(m)):
        sign = perm_sign(perm)
        term = poly_one(k)
        ok = True
        for r in range(m):
            j = lamc[r] - r + perm[r]
            if j < 0 or j > k:
                ok = False
                break
            term = poly_mul(term, elementary(j, k))
        if not ok:
            continue
        for key, v in term.items():
            out[key] = out.get(key, 0) + sign * v
    return {kk: v for kk, v in out.items() if v}


def perm_sign(perm):
    sign = 1
    for a, b in combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


# -- naive exact rank by minor expansion -------------------------------------

def det_fraction(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for perm in permutations(range(n)):
        term = Fraction(perm_sign(perm))
        for r in range(n):
            term *= Fraction(rows[r][perm[r]])
        total += term
    return total


def rank_by_minors(rows, modulus=0):
    """Largest r with a nonvanishing r x r minor (over Q or GF(p))."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    for r in range(min(m, n), 0, -1):
        for rset in combinations(range(m), r):
            for cset in combinations(range(n), r):
                sub = [[rows[i][j] for j in cset] for i in rset]
                d = det_fraction(sub)
                if modulus:
                    assert d.denominator == 1
                    if d.numerator % modulus:
                        return r
                elif d:
                    return r
    return 0


def nonzero_minor_exists(rows, r, modulus):
    """Is some r x r minor nonzero mod the given prime?"""
    m = len(rows)
    n = len(rows[0]) if m else 0
    for rset in combinations(range(m), r):
        for cset in combinations(range(n), r):
            sub = [[rows[i][j] for j in cset] for i in rset]
            d = det_fraction(sub)
            assert d.denominator == 1
            if d.numerator % modulus:
                return True
    return False
