"""Partitions, the Pieri rule, and elementary-symmetric-to-Schur expansion.

Partitions are plain tuples of weakly decreasing non-negative integers
with trailing zeros stripped.  Two bounded families appear throughout:

* ``P(i, d)``  -- at most ``i`` parts, each part at most ``d``;
* ``Pprime(i, d)`` -- parts of size at most ``i``, at most ``d`` parts.

Conjugation is a bijection between the two; both have C(d+i, i)
elements.  Everything downstream of Hermite reciprocity reduces to
iterated Pieri multiplication in these families.
"""

from __future__ import annotations

import functools
from itertools import combinations

Partition = tuple

KIND_P = "P"
KIND_P_PRIME = "P'"


def normalize(parts) -> Partition:
    """Strip trailing zeros; validate weak decrease and non-negativity."""
    parts = tuple(parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {parts}")
    if parts and parts[-1] < 0:
        raise ValueError(f"negative part: {parts}")
    return parts


def is_partition(parts) -> bool:
    seq = tuple(parts)
    return all(a >= b for a, b in zip(seq, seq[1:])) and all(a >= 0 for a in seq)


def size(lam) -> int:
    return sum(lam)


def conjugate(lam) -> Partition:
    """Conjugate partition: lam'_j = #{k : lam_k >= j}.  Involutive."""
    lam = normalize(lam)
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))


@functools.lru_cache(maxsize=None)
def enumerate_family(i: int, d: int, kind: str = KIND_P):
    """All partitions of the family, lexicographically ascending.

    Both families have exactly C(d+i, i) members; the P' family is the
    conjugate image of the P family.
    """
    if kind == KIND_P:
        out = []
        _gen_lex(out, [], i, d)
        return tuple(out)
    if kind == KIND_P_PRIME:
        return tuple(sorted(conjugate(lam) for lam in enumerate_family(i, d, KIND_P)))
    raise ValueError(f"unknown family kind {kind!r}")


def _gen_lex(out, prefix, slots, cap):
    if not slots:
        out.append(normalize(prefix))
        return
    for part in range(0, cap + 1):
        prefix.append(part)
        _gen_lex(out, prefix, slots - 1, part)
        prefix.pop()


def pieri(lam, j: int, i: int):
    """Pieri rule for s_lam * e_j inside the ring of i-variable symmetric
    polynomials: all lam + (1^I) over j-subsets I of [i] that remain
    partitions.  Multiplicity free."""
    if j > i or j < 0:
        raise ValueError(f"pieri needs 0 <= j <= i, got j={j}, i={i}")
    lam = normalize(lam)
    if len(lam) > i:
        raise ValueError(f"{lam} has more than {i} parts")
    padded = lam + (0,) * (i - len(lam))
    out = []
    for I in combinations(range(i), j):
        cand = list(padded)
        for k in I:
            cand[k] += 1
        if is_partition(cand):
            out.append(normalize(cand))
    return out


@functools.lru_cache(maxsize=None)
def e_to_schur(mu, i: int):
    """Expansion of e_mu = e_{mu_1} e_{mu_2} ... in the Schur basis of
    the i-variable symmetric polynomial ring, by iterated Pieri.

    Coefficients are non-negative integers.  Memoized: the Hermite
    isomorphism calls this for every monomial of Sym^d(D^i U).
    """
    mu = normalize(mu)
    if mu and mu[0] > i:
        raise ValueError(f"part {mu[0]} exceeds variable count {i}")
    coeffs = {(): 1}
    for part in mu:
        nxt = {}
        for lam, c in coeffs.items():
            for new in pieri(lam, part, i):
                nxt[new] = nxt.get(new, 0) + c
        coeffs = nxt
    return dict(coeffs)


def hat(lam, j: int, i: int) -> Partition:
    """The (i-1)-part sequence (lam_1+1, ..., lam_{j-1}+1, lam_{j+1}, ..., lam_i).

    Indexes the targets of the Koszul contraction; lands in P(i-1, d+1)
    whenever lam is in P(i, d).
    """
    if not (1 <= j <= i):
        raise ValueError(f"hat needs 1 <= j <= i, got j={j}, i={i}")
    lam = normalize(lam)
    if len(lam) > i:
        raise ValueError(f"{lam} has more than {i} parts")
    padded = lam + (0,) * (i - len(lam))
    return normalize(tuple(padded[k] + 1 for k in range(j - 1)) + padded[j:])
