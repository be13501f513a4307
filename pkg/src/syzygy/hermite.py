"""Characteristic-free Hermite reciprocity.

The isomorphism Sym^d(D^i U) -> Wedge^i(Sym^{d+i-1} U) is the change of
basis from elementary symmetric polynomials to Schur polynomials inside
the filtered ring of symmetric polynomials in i variables: the source
monomial x^(mu_1)...x^(mu_d) plays the role of e_mu, the target wedge
x^{l_1+i-1} ^ ... ^ x^{l_i} the role of s_l, and the matrix is the
(integer, determinant +-1) transition matrix between the two bases.
Being an integer change of basis it is invertible over every field,
which is the whole point.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .exactla import ExactMatrix, FieldSpec
from .partitions import e_to_schur
from .reps import RepMap, RepSpace, compose, nu, sympow_mul, tensor_map


@dataclass(frozen=True)
class HermiteIso:
    """The reciprocity isomorphism for one (d, i, field) triple."""

    d: int
    i: int
    field: FieldSpec
    matrix: ExactMatrix

    @property
    def source(self) -> RepSpace:
        return RepSpace.sym_power(self.d, RepSpace.div(self.i))

    @property
    def target(self) -> RepSpace:
        return RepSpace.wedge(self.i, RepSpace.sym(self.d + self.i - 1))


@functools.lru_cache(maxsize=None)
def psi_map(d: int, i: int) -> RepMap:
    """The integer matrix of the reciprocity map, one column per source
    monomial, built from iterated Pieri expansion (never by solving
    equations)."""
    src = RepSpace.sym_power(d, RepSpace.div(i))
    tgt = RepSpace.wedge(i, RepSpace.sym(d + i - 1))
    if src.dim != tgt.dim:
        raise AssertionError(f"dimension mismatch for psi({d},{i})")
    ent = {}
    for c, mu in enumerate(src.basis):
        for lam, coeff in e_to_schur(mu, i).items():
            exps = RepSpace._lam_to_exps(lam, i)
            ent[(tgt.index(exps), c)] = coeff
    return RepMap(src, tgt, ExactMatrix(tgt.dim, src.dim, ent), f"psi({d},{i})")


def psi(d: int, i: int, f: FieldSpec) -> HermiteIso:
    if d < 0 or i < 0:
        raise ValueError("psi needs d, i >= 0")
    return HermiteIso(d, i, f, psi_map(d, i).matrix)


def psi_inverse(d: int, i: int, f: FieldSpec) -> ExactMatrix:
    """Inverse of psi over f, by exact elimination.  Only cross-checks
    use this; the forward map is always built combinatorially."""
    from .exactla import kernel_basis

    m = psi_map(d, i).matrix
    n = m.rows
    # solve m X = I column by column via the kernel of [m | -e_k]
    cols = []
    for k in range(n):
        ext = ExactMatrix.hstack([m, ExactMatrix(n, 1, {(k, 0): -1})])
        null = kernel_basis(ext, f)
        vec = None
        for v in null:
            if v[n] != 0:
                p = f.characteristic
                if p:
                    inv = pow(int(v[n]), p - 2, p)
                    vec = [(int(x) * inv) % p for x in v[:n]]
                else:
                    vec = [x / v[n] for x in v[:n]]
                break
        if vec is None:
            raise ValueError(f"psi({d},{i}) not invertible over {f}")
        cols.append(vec)
    return ExactMatrix.from_columns(cols, n)


def psi_compat_check(d: int, i: int, f: FieldSpec) -> bool:
    """Does nu o (psi (x) id) equal psi o multiplication, over f?

    This is the square that propagates equivariance from degree d to
    degree d+1.
    """
    div_i = RepSpace.div(i)
    lhs = compose(nu(d, i), tensor_map([psi_map(d, i), div_i], "psi(x)id"))
    rhs = compose(psi_map(d + 1, i), sympow_mul(d, div_i))
    return lhs.matrix.equals_mod(rhs.matrix, f)
