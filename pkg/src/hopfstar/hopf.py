"""
Finite-dimensional Hopf *-algebras given by structure constants.

Every structure map is also available as a matrix on the lexicographic
tensor basis (index of e_i (x) e_j is i*d + j), so each axiom becomes a
single exact matrix identity:

    M : d x d^2      multiplication
    u : d x 1        unit
    D : d^2 x d      coproduct (column i is the coordinate vector of Delta(e_i))
    e : 1 x d        counit
    S : d x d        antipode
    P : d x d        star, a* = P conj(a)
"""

from functools import cached_property

from .errors import DimensionMismatch, NotInvertible
from .linalg import Matrix, swap_matrix
from .report import Report
from .scalar import ONE, ZERO, as_scalar

__all__ = [
    "HopfStarAlgebra",
    "verify_hopf_star",
    "antipode_inverse",
    "iterated_coproduct",
    "HOPF_CHECKS",
]

HOPF_CHECKS = (
    "assoc",
    "unit",
    "coassoc",
    "counit",
    "bialgebra",
    "antipode",
    "star-involution",
    "star-antimult",
    "star-coprod",
    "counit-star",
    "star-antipode-involution",
)


class HopfStarAlgebra:
    """Structure constants (m, 1, Delta, epsilon, S, *) on a d-dimensional space."""

    def __init__(self, dim, mult, unit, coprod, counit, antipode, star, scalar_order=1, name="H"):
        self.dim = d = int(dim)
        self.name = name
        self.scalar_order = int(scalar_order)
        self.mult = tuple(tuple(tuple(as_scalar(v) for v in vec) for vec in row) for row in mult)
        self.unit = tuple(as_scalar(v) for v in unit)
        self.coprod = tuple(
            tuple((as_scalar(c), int(j), int(k)) for c, j, k in terms) for terms in coprod
        )
        self.counit = tuple(as_scalar(v) for v in counit)
        self.antipode = antipode if isinstance(antipode, Matrix) else Matrix(antipode)
        self.star = star if isinstance(star, Matrix) else Matrix(star)
        self._check_shapes(d)

    def _check_shapes(self, d):
        if len(self.mult) != d or any(len(r) != d or any(len(v) != d for v in r) for r in self.mult):
            raise DimensionMismatch(f"multiplication table is not {d}x{d} of length-{d} vectors")
        if len(self.unit) != d:
            raise DimensionMismatch("unit has wrong length")
        if len(self.coprod) != d:
            raise DimensionMismatch("coproduct needs one term list per basis element")
        for terms in self.coprod:
            for _, j, k in terms:
                if not (0 <= j < d and 0 <= k < d):
                    raise DimensionMismatch(f"coproduct index ({j}, {k}) out of range")
        if len(self.counit) != d:
            raise DimensionMismatch("counit has wrong length")
        if self.antipode.shape != (d, d) or self.star.shape != (d, d):
            raise DimensionMismatch("antipode and star must be d x d")

    def replace(self, **changes):
        fields = dict(
            dim=self.dim,
            mult=self.mult,
            unit=self.unit,
            coprod=self.coprod,
            counit=self.counit,
            antipode=self.antipode,
            star=self.star,
            scalar_order=self.scalar_order,
            name=self.name,
        )
        fields.update(changes)
        return HopfStarAlgebra(**fields)

    # -- matrix forms ------------------------------------------------------

    @cached_property
    def M(self):
        d = self.dim
        return Matrix.from_columns([self.mult[i][j] for i in range(d) for j in range(d)])

    @cached_property
    def u(self):
        return Matrix.from_columns([self.unit])

    @cached_property
    def D(self):
        d = self.dim
        cols = []
        for terms in self.coprod:
            col = [ZERO] * (d * d)
            for c, j, k in terms:
                col[j * d + k] = col[j * d + k] + c
            cols.append(col)
        return Matrix.from_columns(cols)

    @cached_property
    def eps(self):
        return Matrix([self.counit])

    @cached_property
    def S(self):
        return self.antipode

    @cached_property
    def P(self):
        return self.star

    @cached_property
    def S_inv(self):
        return antipode_inverse(self)

    @cached_property
    def S2(self):
        return self.S @ self.S

    @cached_property
    def I(self):
        return Matrix.identity(self.dim)

    @cached_property
    def swap(self):
        return swap_matrix(self.dim, self.dim)

    @cached_property
    def _mult_sparse(self):
        d = self.dim
        return [
            [tuple((k, v) for k, v in enumerate(self.mult[i][j]) if not v.is_zero()) for j in range(d)]
            for i in range(d)
        ]

    # -- element operations -----------------------------------------------

    def basis(self, i):
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def zero(self):
        return (ZERO,) * self.dim

    def mul(self, a, b):
        out = [ZERO] * self.dim
        table = self._mult_sparse
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if bj.is_zero():
                    continue
                c = ai * bj
                for k, v in table[i][j]:
                    out[k] = out[k] + c * v
        return tuple(out)

    def apply_star(self, a):
        return self.P.apply(tuple(v.conj() for v in a))

    def apply_antipode(self, a):
        return self.S.apply(a)

    def apply_counit(self, a):
        acc = ZERO
        for e, v in zip(self.counit, a):
            if not v.is_zero():
                acc = acc + e * v
        return acc

    def coproduct(self, a):
        """Delta(a) as a sparse tensor {(j, k): coefficient}."""
        out = {}
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for c, j, k in self.coprod[i]:
                out[(j, k)] = out.get((j, k), ZERO) + ai * c
        return {key: v for key, v in out.items() if not v.is_zero()}

    # -- sparse tensors in H^(x)k -------------------------------------------

    def tensor_mul(self, x, y):
        """Leg-wise product of two sparse tensors with the same number of legs."""
        table = self._mult_sparse
        out = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                c = cx * cy
                partial = [((), c)]
                for a, b in zip(kx, ky):
                    nxt = []
                    for idx, coef in partial:
                        for k, v in table[a][b]:
                            nxt.append((idx + (k,), coef * v))
                    partial = nxt
                for idx, coef in partial:
                    out[idx] = out.get(idx, ZERO) + coef
        return {k: v for k, v in out.items() if not v.is_zero()}

    def tensor_apply_leg(self, x, leg, matrix):
        """Apply a linear map H -> H on one leg of a sparse tensor."""
        cols = [tuple((r, v) for r, v in enumerate(matrix.col(j)) if not v.is_zero()) for j in range(self.dim)]
        out = {}
        for key, c in x.items():
            for r, v in cols[key[leg]]:
                nk = key[:leg] + (r,) + key[leg + 1:]
                out[nk] = out.get(nk, ZERO) + c * v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def tensor_coproduct_leg(self, x, leg):
        """Apply Delta on one leg, producing a tensor with one more leg."""
        out = {}
        for key, c in x.items():
            for cc, j, k in self.coprod[key[leg]]:
                nk = key[:leg] + (j, k) + key[leg + 1:]
                out[nk] = out.get(nk, ZERO) + c * cc
        return {k: v for k, v in out.items() if not v.is_zero()}

    def tensor_counit_leg(self, x, leg):
        out = {}
        for key, c in x.items():
            e = self.counit[key[leg]]
            if e.is_zero():
                continue
            nk = key[:leg] + key[leg + 1:]
            out[nk] = out.get(nk, ZERO) + c * e
        return {k: v for k, v in out.items() if not v.is_zero()}

    def tensor_unit(self, legs):
        out = {(): ONE}
        for _ in range(legs):
            out = {k + (i,): c * u for k, c in out.items() for i, u in enumerate(self.unit) if not u.is_zero()}
        return out

    def __repr__(self):
        return f"HopfStarAlgebra({self.name!r}, dim={self.dim})"


def _diff(report, name, lhs, rhs):
    ok = lhs == rhs
    report.add(name, ok, None if ok else lhs - rhs)
    return ok


def verify_hopf_star(H):
    """Check every Hopf *-algebra axiom plus two derived star identities."""
    r = Report(f"hopf-star-algebra {H.name}")
    M, u, D, e, S, P, I = H.M, H.u, H.D, H.eps, H.S, H.P, H.I
    tau = H.swap
    one = Matrix.identity(1)

    _diff(r, "assoc", M @ M.kron(I), M @ I.kron(M))
    lhs = M @ u.kron(I)
    rhs = M @ I.kron(u)
    ok = lhs == I and rhs == I
    r.add("unit", ok, None if ok else (lhs - I).hstack(rhs - I))

    _diff(r, "coassoc", D.kron(I) @ D, I.kron(D) @ D)
    lhs = e.kron(I) @ D
    rhs = I.kron(e) @ D
    ok = lhs == I and rhs == I
    r.add("counit", ok, None if ok else (lhs - I).hstack(rhs - I))

    middle = I.kron(tau).kron(I)
    bi = [
        (D @ M, M.kron(M) @ middle @ D.kron(D)),
        (D @ u, u.kron(u)),
        (e @ M, e.kron(e)),
        (e @ u, one),
    ]
    bad = [a - b for a, b in bi if a != b]
    r.add("bialgebra", not bad, bad[0] if bad else None)

    ue = u @ e
    lhs = M @ S.kron(I) @ D
    rhs = M @ I.kron(S) @ D
    ok = lhs == ue and rhs == ue
    r.add("antipode", ok, None if ok else (lhs - ue).hstack(rhs - ue))

    _diff(r, "star-involution", P @ P.conj(), I)
    _diff(r, "star-antimult", P @ M.conj(), M @ P.kron(P) @ tau)
    _diff(r, "star-coprod", D @ P, P.kron(P) @ D.conj())
    _diff(r, "counit-star", e @ P, e.conj())
    _diff(r, "star-antipode-involution", P @ S.conj() @ P.conj() @ S, I)
    return r


def antipode_inverse(H):
    """Matrix of a -> (S(a*))*, checked to invert S."""
    S, P = H.S, H.P
    Sinv = P @ S.conj() @ P.conj()
    I = Matrix.identity(H.dim)
    if S @ Sinv != I or Sinv @ S != I:
        raise NotInvertible("(S(a*))* does not invert the antipode")
    return Sinv


def iterated_coproduct(H, a, k):
    """Delta^(k-1)(a) as a sparse order-k tensor; k = 1 returns a itself."""
    if k < 1:
        raise ValueError("k must be at least 1")
    x = {(i,): v for i, v in enumerate(a) if not v.is_zero()}
    for legs in range(1, k):
        x = H.tensor_coproduct_leg(x, legs - 1)
    return x
