"""
Left H-modules as families of action matrices, with tensor products, duals,
Hom-modules, evaluation maps, invariants and intertwiner solving.

Global basis conventions: tensor products are lexicographic (b_p (x) b'_q has
index p*n_W + q), duals use the dual basis, and Hom(V, W) uses row-major
elementary matrices E_rc (index r*n_V + c).  With row-major vectorisation
vec(A T B) = (A (x) B^T) vec(T).
"""

from dataclasses import dataclass, field
from functools import cached_property

from .errors import AlgebraMismatch, DimensionMismatch, NotInner, NotInvertible, NotModuleMap
from .linalg import Matrix, echelon_basis, permutation_matrix, same_span
from .report import Report

__all__ = [
    "HModule",
    "ModuleMap",
    "verify_module",
    "is_module_map",
    "module_map",
    "trivial_module",
    "tensor_module",
    "direct_sum_module",
    "left_dual",
    "right_dual",
    "evaluation_maps",
    "double_dual_embedding",
    "hom_left",
    "hom_right",
    "invariants",
    "intertwiners",
    "check_hom_invariants",
    "hom_tensor_decomposition",
    "ssquared_inner_isos",
    "algebra_inverse",
    "vec",
    "unvec",
]


class HModule:
    """A left module: one n x n action matrix per algebra basis element."""

    def __init__(self, algebra, action, name="V"):
        self.algebra = algebra
        self.action = tuple(a if isinstance(a, Matrix) else Matrix(a) for a in action)
        self.name = name
        if len(self.action) != algebra.dim:
            raise DimensionMismatch(
                f"{name}: {len(self.action)} action matrices for a {algebra.dim}-dimensional algebra"
            )
        self.dim = self.action[0].nrows if self.action else 0
        for a in self.action:
            if a.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"{name}: action matrices must all be {self.dim}x{self.dim}")

    def rho(self, a):
        """Action matrix of an arbitrary algebra element given by coordinates."""
        out = Matrix.zeros(self.dim, self.dim)
        for ai, m in zip(a, self.action):
            if not ai.is_zero():
                out = out + m.scale(ai)
        return out

    @cached_property
    def rho_S(self):
        """rho(S e_i) for every basis index i."""
        H = self.algebra
        return tuple(self.rho(H.S.col(i)) for i in range(H.dim))

    @cached_property
    def rho_S_inv(self):
        H = self.algebra
        return tuple(self.rho(H.S_inv.col(i)) for i in range(H.dim))

    def identity(self):
        return ModuleMap(self, self, Matrix.identity(self.dim))

    def same_action(self, other):
        return self.dim == other.dim and self.action == other.action

    def __repr__(self):
        return f"HModule({self.name!r}, dim={self.dim})"


@dataclass
class ModuleMap:
    domain: HModule
    codomain: HModule
    matrix: Matrix
    name: str = field(default="T")

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionMismatch(
                f"map {self.name}: matrix {self.matrix.shape} between dims "
                f"{self.domain.dim} -> {self.codomain.dim}"
            )

    def is_module_map(self):
        return is_module_map(self.matrix, self.domain, self.codomain)

    def compose(self, other):
        """self o other."""
        return ModuleMap(other.domain, self.codomain, self.matrix @ other.matrix)


def _same_algebra(V, W):
    if V.algebra is not W.algebra and V.algebra.name != W.algebra.name:
        raise AlgebraMismatch(f"{V.name} and {W.name} live over different algebras")


def intertwining_defect(T, V, W):
    """First index i with T rho_V(e_i) != rho_W(e_i) T, with the difference."""
    for i, (a, b) in enumerate(zip(V.action, W.action)):
        lhs = T @ a
        rhs = b @ T
        if lhs != rhs:
            return i, lhs - rhs
    return None


def is_module_map(T, V, W):
    if T.shape != (W.dim, V.dim):
        raise DimensionMismatch(f"matrix {T.shape} cannot map dim {V.dim} to dim {W.dim}")
    return intertwining_defect(T, V, W) is None


def module_map(T, V, W, name="T"):
    """Build a ModuleMap, raising NotModuleMap if T does not intertwine."""
    m = ModuleMap(V, W, T, name)
    bad = intertwining_defect(T, V, W)
    if bad is not None:
        raise NotModuleMap(f"{name} fails to intertwine basis element {bad[0]}")
    return m


def verify_module(V):
    H = V.algebra
    r = Report(f"module {V.name}")
    I = Matrix.identity(V.dim)
    unit = V.rho(H.unit)
    r.add("unit", unit == I, None if unit == I else unit - I)
    bad = None
    for i in range(H.dim):
        for j in range(H.dim):
            lhs = V.action[i] @ V.action[j]
            rhs = V.rho(H.mult[i][j])
            if lhs != rhs:
                bad = {"i": i, "j": j, "difference": lhs - rhs}
                break
        if bad:
            break
    r.add("multiplicativity", bad is None, bad)
    return r


def trivial_module(H):
    return HModule(H, [Matrix([[e]]) for e in H.counit], name="trivial")


def tensor_module(V, W):
    _same_algebra(V, W)
    H = V.algebra
    action = []
    for terms in H.coprod:
        acc = Matrix.zeros(V.dim * W.dim, V.dim * W.dim)
        for c, j, k in terms:
            acc = acc + V.action[j].kron(W.action[k]).scale(c)
        action.append(acc)
    return HModule(H, action, name=f"({V.name}(x){W.name})")


def direct_sum_module(*mods):
    from .linalg import block_diag

    H = mods[0].algebra
    for m in mods[1:]:
        _same_algebra(mods[0], m)
    action = [block_diag(*[m.action[i] for m in mods]) for i in range(H.dim)]
    return HModule(H, action, name="(" + "+".join(m.name for m in mods) + ")")


def left_dual(V):
    return HModule(V.algebra, [m.T for m in V.rho_S], name=f"{V.name}*")


def right_dual(V):
    return HModule(V.algebra, [m.T for m in V.rho_S_inv], name=f"*{V.name}")


def _pairing_row(n):
    """Row vector of phi_p (x) v_q -> delta_pq on the lexicographic basis."""
    return Matrix([[1 if (k // n) == (k % n) else 0 for k in range(n * n)]])


def evaluation_maps(V):
    """ev: V* (x) V -> C and ev': V (x) *V -> C, both checked as module maps."""
    H = V.algebra
    triv = trivial_module(H)
    row = _pairing_row(V.dim)
    ev = module_map(row, tensor_module(left_dual(V), V), triv, "ev")
    ev_r = module_map(row, tensor_module(V, right_dual(V)), triv, "ev'")
    return ev, ev_r


def double_dual_embedding(V):
    """V -> *(V*) and V -> (*V)*, identity matrices in dual-of-dual bases."""
    I = Matrix.identity(V.dim)
    a = module_map(I, V, right_dual(left_dual(V)), "delta")
    b = module_map(I, V, left_dual(right_dual(V)), "delta'")
    return a, b


def hom_left(V, W):
    """Hom(V, W) with a |> T = a_(1) T S(a_(2))."""
    _same_algebra(V, W)
    H = V.algebra
    n = V.dim * W.dim
    action = []
    for terms in H.coprod:
        acc = Matrix.zeros(n, n)
        for c, j, k in terms:
            acc = acc + W.action[j].kron(V.rho_S[k].T).scale(c)
        action.append(acc)
    return HModule(H, action, name=f"Hom_l({V.name},{W.name})")


def hom_right(V, W):
    """Hom(V, W) with a |> T = a_(2) T S^-1(a_(1))."""
    _same_algebra(V, W)
    H = V.algebra
    n = V.dim * W.dim
    action = []
    for terms in H.coprod:
        acc = Matrix.zeros(n, n)
        for c, j, k in terms:
            acc = acc + W.action[k].kron(V.rho_S_inv[j].T).scale(c)
        action.append(acc)
    return HModule(H, action, name=f"Hom_r({V.name},{W.name})")


def vec(T):
    """Row-major vectorisation of a matrix."""
    return tuple(v for r in T.rows for v in r)


def unvec(v, nrows, ncols):
    return Matrix([v[r * ncols:(r + 1) * ncols] for r in range(nrows)])


def _kernel(blocks, ncols):
    if not blocks:
        return [tuple(Matrix.identity(ncols).rows[i]) for i in range(ncols)]
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return stacked.nullspace()


def invariants(V):
    """Echelon basis of {v : e_i |> v = eps(e_i) v for all i}."""
    H = V.algebra
    I = Matrix.identity(V.dim)
    blocks = [m - I.scale(e) for m, e in zip(V.action, H.counit)]
    kern = _kernel(blocks, V.dim)
    return list(echelon_basis(kern, V.dim).rows)


def intertwiners(V, W):
    """Basis of Hom_H(V, W) as matrices, canonical via echelon form of vec(T)."""
    _same_algebra(V, W)
    IW = Matrix.identity(W.dim)
    IV = Matrix.identity(V.dim)
    blocks = [IW.kron(a.T) - b.kron(IV) for a, b in zip(V.action, W.action)]
    kern = _kernel(blocks, V.dim * W.dim)
    return [unvec(r, W.dim, V.dim) for r in echelon_basis(kern, V.dim * W.dim).rows]


def check_hom_invariants(V, W):
    """Invariants of Hom_l(V,W), Hom_H(V,W) and invariants of Hom_r(V,W) coincide."""
    r = Report(f"hom-invariants {V.name},{W.name}")
    n = V.dim * W.dim
    left = invariants(hom_left(V, W))
    mid = [vec(T) for T in intertwiners(V, W)]
    right = invariants(hom_right(V, W))
    dims = {"hom_left_invariants": len(left), "intertwiners": len(mid), "hom_right_invariants": len(right)}
    r.add("left-invariants = intertwiners", same_span(left, mid, n), dims)
    r.add("right-invariants = intertwiners", same_span(right, mid, n), dims)
    r.note(f"dimensions {len(left)}={len(mid)}={len(right)}")
    return r


def hom_tensor_decomposition(V, W):
    """W (x) V* -> Hom_l(V,W) and *V (x) W -> Hom_r(V,W) as verified isomorphisms."""
    nV, nW = V.dim, W.dim
    a = module_map(Matrix.identity(nW * nV), tensor_module(W, left_dual(V)), hom_left(V, W), "w(x)phi")
    # phi_c (x) w_r  (index c*nW + r)  ->  E_rc  (index r*nV + c)
    perm = [r * nV + c for c in range(nV) for r in range(nW)]
    b = module_map(permutation_matrix(perm), tensor_module(right_dual(V), W), hom_right(V, W), "phi(x)w")
    for m in (a, b):
        if m.matrix.rank() != m.matrix.nrows:
            raise NotInvertible(f"{m.name} is not an isomorphism")
    return a, b


def algebra_inverse(H, u):
    """Two-sided inverse of u in H, or NotInvertible."""
    left_mult = Matrix.from_columns([H.mul(u, H.basis(j)) for j in range(H.dim)])
    try:
        inv = left_mult.inverse().apply(H.unit)
    except NotInvertible:
        raise NotInvertible("element is not invertible") from None
    if H.mul(inv, u) != H.unit:
        raise NotInvertible("element has no two-sided inverse")
    return inv


def ssquared_inner_isos(H, u, V):
    """
    For u with S^2(a) = u a u^-1: f -> u |> f as *V -> V*, and v -> delta_{u v}
    as V -> V**.  Also checks (a u) |> f = (u a) |> f across the two dual actions.
    """
    try:
        algebra_inverse(H, u)
    except NotInvertible as exc:
        raise NotInner(f"u is not invertible: {exc}") from None
    for i in range(H.dim):
        a = H.basis(i)
        if H.mul(H.S2.apply(a), u) != H.mul(u, a):
            raise NotInner(f"S^2(e_{i}) u != u e_{i}")
    Vl, Vr = left_dual(V), right_dual(V)
    to_left = module_map(Vl.rho(u), Vr, Vl, "u|>")
    Vll = left_dual(Vl)
    to_double = module_map(V.rho(u), V, Vll, "delta_u")
    r = Report(f"ssquared-inner {V.name}")
    bad = None
    for i in range(H.dim):
        a = H.basis(i)
        if Vl.rho(H.mul(a, u)) != Vr.rho(H.mul(u, a)):
            bad = i
            break
    r.add("au |> f = ua |> f", bad is None, None if bad is None else f"basis element {bad}")
    r.add("*V -> V* module iso", to_left.matrix.rank() == V.dim)
    r.add("V -> V** module iso", to_double.matrix.rank() == V.dim)
    return to_left, to_double, r

