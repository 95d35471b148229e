"""
Invariant inner products, adjoints, End(V) as a star algebra, and the
correspondence between stars, inner products and bilinear forms.

A Gram matrix G gives <v, w> = conj(v)^T G w (conjugate-linear in the first
slot).  A bilinear form h is stored as h(x, w) = x^T h w.
"""

from dataclasses import dataclass, field

from .conj import conjugate_module, star_of_antipode
from .errors import Inconsistent, NotInnerProduct, NotInvertible
from .hmod import (
    HModule,
    ModuleMap,
    hom_left,
    is_module_map,
    left_dual,
    tensor_module,
    trivial_module,
    unvec,
    vec,
)
from .linalg import Matrix, swap_matrix
from .report import Report
from .scalar import ONE, Scalar, scalar_sign
from .staralg import ModuleAlgebra, StarStructure, verify_module_algebra, verify_star_algebra

__all__ = [
    "InnerProduct",
    "verify_inner_product",
    "is_positive_definite",
    "solve_invariant_grams",
    "mu",
    "check_mu_naturality",
    "adjoint",
    "check_adjoint_module_props",
    "end_left_star_algebra",
    "two_out_of_three",
    "TwoOutOfThree",
]


@dataclass
class InnerProduct:
    module: HModule
    G: Matrix
    name: str = field(default="<,>")


def is_positive_definite(G):
    """Sylvester's criterion with exact signs of the leading minors."""
    return all(scalar_sign(m) == "positive" for m in G.leading_minors())


def _invariance_defect(V, G):
    H = V.algebra
    for i in range(H.dim):
        lhs = V.action[i].H @ G
        rhs = G @ V.rho(H.apply_star(H.basis(i)))
        if lhs != rhs:
            return i, lhs - rhs
    return None


def verify_inner_product(V, G):
    r = Report(f"inner-product {V.name}")
    if G.shape != (V.dim, V.dim):
        r.add("shape", False, f"Gram is {G.shape}, module has dimension {V.dim}")
        return r
    herm = G.H == G
    r.add("conjugate-symmetric", herm, None if herm else G.H - G)
    if herm:
        minors = G.leading_minors()
        signs = [scalar_sign(m) for m in minors]
        r.add("positive-definite", all(s == "positive" for s in signs), None if all(s == "positive" for s in signs) else dict(minors=minors, signs=signs))
    else:
        r.skip("positive-definite", "minors of a non-Hermitian matrix need not be real")
    bad = _invariance_defect(V, G)
    r.add("invariant", bad is None, None if bad is None else {"basis": bad[0], "difference": bad[1]})
    return r


def solve_invariant_grams(V):
    """
    Basis (over the reals) of the Hermitian solutions of the invariance system.
    The complex solution space is closed under conjugate transpose, so the
    Hermitian parts (B + B^H)/2 and i(B - B^H)/2 of a kernel basis span it.
    """
    H = V.algebra
    n = V.dim
    I = Matrix.identity(n)
    blocks = []
    for i in range(H.dim):
        A = V.action[i].H
        B = V.rho(H.apply_star(H.basis(i)))
        blocks.append(A.kron(I) - I.kron(B.T))
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    kernel = [unvec(v, n, n) for v in stacked.nullspace()]
    half = Scalar.rational(1) / 2
    i_unit = Scalar.i()
    candidates = []
    for B in kernel:
        candidates.append((B + B.H).scale(half))
        anti = B - B.H
        if not anti.is_zero():
            candidates.append(anti.scale(i_unit * half))
    chosen = []
    rows = []
    for C in candidates:
        if C.is_zero():
            continue
        trial = rows + [vec(C)]
        if Matrix(trial).rank() == len(trial):
            rows = trial
            chosen.append(C)
    return chosen


def mu(V, G):
    """conj(V) -> V*, c(v) -> <c(v), ->; the matrix is G^T."""
    rep = verify_inner_product(V, G)
    if not rep.passed:
        raise NotInnerProduct(f"not an invariant inner product: {', '.join(rep.failed_names())}")
    m = ModuleMap(conjugate_module(V), left_dual(V), G.T, f"mu_{V.name}")
    if not m.is_module_map():
        raise NotInnerProduct("mu fails to intertwine")
    return m


def check_mu_naturality(T, G_V, G_W):
    """For an isometry T: V -> W, T^tr mu_W conj(T) = mu_V."""
    r = Report("mu-naturality")
    iso = T.H @ G_W @ T == G_V
    r.add("isometry", iso)
    lhs = T.T @ G_W.T @ T.conj()
    r.add("naturality square", lhs == G_V.T, None if lhs == G_V.T else lhs - G_V.T)
    return r


def adjoint(T, G_V, G_W):
    """T^dagger = G_V^-1 conj(T)^T G_W, checked against <T^dagger w, v> = <w, T v>."""
    try:
        Tdag = G_V.inverse() @ T.H @ G_W
    except NotInvertible:
        raise NotInnerProduct("Gram matrix is singular") from None
    if Tdag.H @ G_V != G_W @ T:
        raise Inconsistent("adjoint relation fails")
    return Tdag


def check_adjoint_module_props(T, V, W, G_V, G_W):
    r = Report(f"adjoint-props {V.name}->{W.name}")
    H = V.algebra
    Tdag = adjoint(T, G_V, G_W)
    r.add("defining relation", Tdag.H @ G_V == G_W @ T)
    r.add("double adjoint", adjoint(Tdag, G_W, G_V) == T)
    r.add("T module map iff adjoint module map", is_module_map(T, V, W) == is_module_map(Tdag, W, V))
    HVW, HWV = hom_left(V, W), hom_left(W, V)
    bad = None
    for i in range(H.dim):
        aT = unvec(HVW.action[i].apply(vec(T)), W.dim, V.dim)
        lhs = adjoint(aT, G_V, G_W)
        rhs = unvec(HWV.rho(star_of_antipode(H, i)).apply(vec(Tdag)), V.dim, W.dim)
        if lhs != rhs:
            bad = i
            break
    r.add("(a|>T)^dagger = S(a)*|>T^dagger", bad is None, bad)
    # sigma conj(mu_V^-1) conj(T^tr) conj(mu_W) sigma^-1, with sigma = identity
    muV, muW = G_V.T, G_W.T
    composite = muV.inverse().conj() @ T.T.conj() @ muW.conj()
    r.add("adjoint equals the conjugate-transpose composite", composite == Tdag, None if composite == Tdag else composite - Tdag)
    return r


def end_left_star_algebra(V, G):
    """End(V) with composition, the Hom action and the adjoint as star."""
    rep = verify_inner_product(V, G)
    if not rep.passed:
        raise NotInnerProduct(f"not an invariant inner product: {', '.join(rep.failed_names())}")
    n = V.dim
    N = n * n
    entries = {}
    for a in range(n):
        for b in range(n):
            for d in range(n):
                # E_ab E_bd = E_ad
                entries[(a * n + d, (a * n + b) * N + b * n + d)] = ONE
    M = Matrix.from_sparse(N, N * N, entries)
    unit = vec(Matrix.identity(n))
    A = ModuleAlgebra(hom_left(V, V), M, unit, f"End({V.name})")
    Ginv = G.inverse()
    cols = []
    for r_ in range(n):
        for c in range(n):
            E = Matrix.from_sparse(n, n, {(c, r_): ONE})
            cols.append(vec(Ginv @ E @ G))
    D = Matrix.from_columns(cols)
    star = StarStructure(A.carrier, D, "adjoint")
    report = verify_module_algebra(A)
    report.subject = f"end-star-algebra {V.name}"
    report.extend(verify_star_algebra(A, D))
    Vb = conjugate_module(V)
    Phi = Matrix.identity(n).kron(G.T)
    report.add("V(x)conj(V) -> End(V) is a module map", is_module_map(Phi, tensor_module(V, Vb), A.carrier))
    report.add("V(x)conj(V) -> End(V) is invertible", Phi.rank() == N)
    env = swap_matrix(n, n)
    ok = Phi @ env == D @ Phi.conj()
    report.add("enveloping star corresponds to the adjoint", ok)
    return A, star, report


@dataclass
class TwoOutOfThree:
    D: Matrix
    G: Matrix
    h: Matrix
    report: Report


def two_out_of_three(V, D=None, G=None, h=None):
    """
    Given two of a star D, a Gram matrix G and a bilinear form h linked by
    h(c(v)*, w) = <c(v), w> (so G = D^T h), derive the third and check the
    conditions relating them.
    """
    given = [x is not None for x in (D, G, h)]
    if sum(given) < 2:
        raise ValueError("two of D, G, h are required")
    try:
        if h is None:
            h = D.T.inverse() @ G
        elif G is None:
            G = D.T @ h
        elif D is None:
            D = (G @ h.inverse()).T
    except NotInvertible:
        raise Inconsistent("the supplied data cannot be completed: singular matrix") from None
    if D.T @ h != G:
        raise Inconsistent("G != D^T h for the supplied triple")

    from .staralg import verify_star_module

    r = Report(f"two-out-of-three {V.name}")
    n = V.dim
    pent = D.T @ h @ D == h.T.conj()
    r.add("pentagon", pent, None if pent else D.T @ h @ D - h.T.conj())
    herm = G.H == G
    r.add("rectangle", herm, None if herm else G.H - G)
    row = Matrix([[h[p, q] for p in range(n) for q in range(n)]])
    inv = is_module_map(row, tensor_module(V, V), trivial_module(V.algebra))
    r.add("h invariant", inv)
    pos = herm and is_positive_definite(G)
    r.add("positivity", pos)

    star = verify_star_module(V, D)
    inner = verify_inner_product(V, G)
    r.note(f"D is {'a' if star.passed else 'not a'} star structure")
    r.note(f"G is {'an' if inner.passed else 'not an'} inner product")
    if inner.passed:
        r.add("(a) given the inner product, D is a star iff the pentagon holds", star.passed == pent)
    if star.passed:
        r.add("(b) given the star, G is an inner product iff h meets its conditions", inner.passed == (pent and herm and pos and inv))
    return TwoOutOfThree(D, G, h, r)

