"""
Module-algebras, star structures and the degree-truncated tensor algebra.

A module-algebra is stored as a carrier module, an n x n^2 multiplication
matrix M (column i*n + j holds e_i e_j) and a unit vector.  A star structure
on a module is a matrix D with v -> D conj(v).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .conj import AntimoduleMap, conjugate_module, is_antimodule
from .errors import NotAntimodule, NotModuleMap, NotStarClosed, NotStarMap, NotSubmodule
from .hmod import HModule, ModuleMap, direct_sum_module, is_module_map, tensor_module, trivial_module
from .linalg import Matrix, block_diag, echelon_basis, permutation_matrix, swap_matrix
from .report import Report
from .scalar import ONE, ZERO

__all__ = [
    "ModuleAlgebra",
    "StarStructure",
    "TruncatedTensorAlgebra",
    "verify_module_algebra",
    "conjugate_algebra",
    "verify_star_module",
    "is_star_morphism",
    "enveloping_star",
    "direct_sum_star",
    "tensor_power_module",
    "tensor_power_star",
    "reversal_permutation",
    "star_submodule_check",
    "quotient_star",
    "kernel_image_star",
    "verify_star_algebra",
    "truncated_tensor_algebra",
    "lift_module_map",
    "lift_antimodule_map",
    "kappa",
    "tensor_algebra_star",
    "star_universal_lift",
    "ideal_generated",
    "is_algebra_morphism",
]


def _kron_vec(x, y):
    return tuple(a * b for a in x for b in y)


@dataclass
class ModuleAlgebra:
    carrier: HModule
    M: Matrix
    unit: tuple
    name: str = field(default="A")

    @property
    def dim(self):
        return self.carrier.dim

    def mul(self, x, y):
        out = [ZERO] * self.dim
        cols = self._cols
        for i, a in enumerate(x):
            if a.is_zero():
                continue
            for j, b in enumerate(y):
                if b.is_zero():
                    continue
                c = a * b
                for k, v in cols[i * self.dim + j]:
                    out[k] = out[k] + c * v
        return tuple(out)

    @cached_property
    def _cols(self):
        cols = [[] for _ in range(self.M.ncols)]
        for i, j, v in self.M.nonzero_entries():
            cols[j].append((i, v))
        return cols

    def basis(self, i):
        return tuple(ONE if k == i else ZERO for k in range(self.dim))


@dataclass
class StarStructure:
    module: HModule
    D: Matrix
    name: str = field(default="*")

    def apply(self, v):
        return self.D.apply(tuple(a.conj() for a in v))


def verify_module_algebra(A, pairs=None):
    """
    Associativity, unit laws, compatibility of the product with the action and
    invariance of the unit.  ``pairs`` restricts associativity to admissible
    basis triples (used by truncated algebras).
    """
    r = Report(f"module-algebra {A.name}")
    n = A.dim
    M, I = A.M, Matrix.identity(n)
    u = Matrix.from_columns([A.unit])
    lhs = M @ M.kron(I)
    rhs = M @ I.kron(M)
    r.add("assoc", lhs == rhs, None if lhs == rhs else lhs - rhs)
    lu, ru = M @ u.kron(I), M @ I.kron(u)
    ok = lu == I and ru == I
    r.add("unit", ok, None if ok else (lu - I).hstack(ru - I))
    V = A.carrier
    VV = tensor_module(V, V)
    ok = is_module_map(M, VV, V)
    r.add("product is a module map", ok)
    H = V.algebra
    bad = [i for i in range(H.dim) if V.action[i].apply(A.unit) != tuple(H.counit[i] * c for c in A.unit)]
    r.add("unit is invariant", not bad, bad or None)
    return r


def conjugate_algebra(A):
    """conj(A) with c(a) c(b) = c(ba) and unit c(1); sigma_A is the identity."""
    n = A.dim
    Ab = ModuleAlgebra(
        conjugate_module(A.carrier),
        A.M.conj() @ swap_matrix(n, n),
        tuple(v.conj() for v in A.unit),
        f"bar({A.name})",
    )
    return Ab


def is_algebra_morphism(F, A, B, admissible=None):
    """F M_A = M_B (F (x) F) on admissible basis pairs, and F(1_A) = 1_B."""
    if F.apply(A.unit) != B.unit:
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            if admissible is not None and not admissible(i, j):
                continue
            lhs = F.apply(A.mul(A.basis(i), A.basis(j)))
            rhs = B.mul(F.col(i), F.col(j))
            if lhs != rhs:
                return False
    return True


def verify_star_module(V, D):
    r = Report(f"star-module {V.name}")
    I = Matrix.identity(V.dim)
    inv = D @ D.conj()
    r.add("involutive", inv == I, None if inv == I else inv - I)
    r.add("antimodule", is_antimodule(D, V, V))
    return r


def is_star_morphism(T, D_V, D_W):
    return T @ D_V == D_W @ T.conj()


def enveloping_star(V):
    """Stars on conj(V) (x) V and V (x) conj(V): c(c(x) (x) w) -> c(w) (x) x."""
    Vb = conjugate_module(V)
    n = V.dim
    D = swap_matrix(n, n)
    return (
        StarStructure(tensor_module(Vb, V), D, f"env({V.name})"),
        StarStructure(tensor_module(V, Vb), D, f"env'({V.name})"),
    )


def direct_sum_star(stars):
    mod = direct_sum_module(*[s.module for s in stars]) if len(stars) > 1 else stars[0].module
    return StarStructure(mod, block_diag(*[s.D for s in stars]), "sum")


def tensor_power_module(V, n):
    if n == 0:
        return trivial_module(V.algebra)
    out = V
    for _ in range(n - 1):
        out = tensor_module(out, V)
    return out


def reversal_permutation(dim, n):
    """Matrix of e_a1 (x) ... (x) e_an -> e_an (x) ... (x) e_a1."""
    idx = list(product(range(dim), repeat=n))
    pos = {t: k for k, t in enumerate(idx)}
    return permutation_matrix([pos[t[::-1]] for t in idx])


def tensor_power_star(V, D, n):
    """Star on V^(x)n: c(v1 (x) ... (x) vn) -> vn* (x) ... (x) v1*."""
    if n == 0:
        return StarStructure(trivial_module(V.algebra), Matrix.identity(1), "1")
    Dn = D
    for _ in range(n - 1):
        Dn = Dn.kron(D)
    return StarStructure(tensor_power_module(V, n), reversal_permutation(V.dim, n) @ Dn, f"star^{n}")


def _span_contains(basis_rows, vectors, dim):
    if not vectors:
        return True
    base = echelon_basis(list(basis_rows), dim)
    r0 = base.nrows
    ext = echelon_basis(list(basis_rows) + list(vectors), dim)
    return ext.nrows == r0


def _is_submodule(V, W_basis):
    rows = list(W_basis)
    for a in V.action:
        if not _span_contains(rows, [a.apply(w) for w in rows], V.dim):
            return False
    return True


def star_submodule_check(V, D, W_basis):
    """W is a submodule and conj(W)* is contained in W."""
    if not _is_submodule(V, W_basis):
        raise NotSubmodule("span is not closed under the action")
    return _span_contains(W_basis, [D.apply(tuple(a.conj() for a in w)) for w in W_basis], V.dim)


def _quotient_maps(n, W_basis):
    """Projection q and section s for the echelon-pivot complement of span(W)."""
    E = echelon_basis(list(W_basis), n)
    pivots = []
    for r in E.rows:
        pivots.append(next(j for j, v in enumerate(r) if not v.is_zero()))
    free = [j for j in range(n) if j not in set(pivots)]
    where = {j: k for k, j in enumerate(free)}
    q = [[ZERO] * n for _ in range(len(free))]
    for j in range(n):
        if j in where:
            q[where[j]][j] = ONE
    for row, p in zip(E.rows, pivots):
        for c in free:
            if not row[c].is_zero():
                q[where[c]][p] = -row[c]
    qm = Matrix(q, n)
    s = Matrix.from_columns([tuple(ONE if k == j else ZERO for k in range(n)) for j in free], n)
    return qm, s


def quotient_module(V, W_basis):
    if not _is_submodule(V, W_basis):
        raise NotSubmodule("span is not closed under the action")
    q, s = _quotient_maps(V.dim, W_basis)
    return HModule(V.algebra, [q @ a @ s for a in V.action], f"{V.name}/W"), q, s


def quotient_star(V, D, W_basis):
    """The unique star on V/W making the projection a star morphism."""
    if not star_submodule_check(V, D, W_basis):
        raise NotStarClosed("subspace is not closed under the star")
    Q, q, s = quotient_module(V, W_basis)
    DQ = q @ D @ s
    return Q, StarStructure(Q, DQ, f"{V.name}/W"), q


def kernel_image_star(T, D_V, D_W):
    """For a star morphism T: V -> W, ker T and im T are star-submodules."""
    V, W = T.domain, T.codomain
    r = Report(f"kernel-image-star {T.name}")
    r.add("star morphism", is_star_morphism(T.matrix, D_V, D_W))
    ker = T.matrix.nullspace()
    img = list(echelon_basis(T.matrix.columns(), W.dim).rows)
    r.add("kernel star-closed", star_submodule_check(V, D_V, ker))
    r.add("image star-closed", star_submodule_check(W, D_W, img))
    return r


def verify_star_algebra(A, D, admissible=None):
    r = verify_star_module(A.carrier, D)
    r.subject = f"star-algebra {A.name}"
    n = A.dim
    if admissible is None:
        lhs = D @ A.M.conj()
        rhs = A.M @ D.kron(D) @ swap_matrix(n, n)
        ok = lhs == rhs
        r.add("antimultiplicative", ok, None if ok else lhs - rhs)
    else:
        bad = None
        for i in range(n):
            for j in range(n):
                if not admissible(i, j):
                    continue
                lhs = D.apply(tuple(v.conj() for v in A.mul(A.basis(i), A.basis(j))))
                rhs = A.mul(D.col(j), D.col(i))
                if lhs != rhs:
                    bad = (i, j)
                    break
            if bad:
                break
        r.add("antimultiplicative", bad is None, bad)
    unit = D.apply(tuple(v.conj() for v in A.unit))
    r.add("unital", unit == A.unit)
    return r


class TruncatedTensorAlgebra(ModuleAlgebra):
    """T(V) up to degree N with concatenation products; higher degrees vanish."""

    def __init__(self, V, N):
        self.V = V
        self.N = N
        self.words = [w for k in range(N + 1) for w in product(range(V.dim), repeat=k)]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.degree_of = [len(w) for w in self.words]
        self.blocks = [tensor_power_module(V, k) for k in range(N + 1)]
        n = len(self.words)
        action = [block_diag(*[b.action[i] for b in self.blocks]) for i in range(V.algebra.dim)]
        carrier = HModule(V.algebra, action, f"T<={N}({V.name})")
        entries = {}
        for i, a in enumerate(self.words):
            for j, b in enumerate(self.words):
                if len(a) + len(b) <= N:
                    entries[(self.index[a + b], i * n + j)] = ONE
        M = Matrix.from_sparse(n, n * n, entries)
        super().__init__(carrier, M, self.basis_of(()), f"T<={N}({V.name})")

    def basis_of(self, word):
        n = len(self.words)
        k = self.index[word]
        return tuple(ONE if i == k else ZERO for i in range(n))

    def offset(self, k):
        return sum(self.V.dim ** j for j in range(k))

    def admissible(self, i, j):
        return self.degree_of[i] + self.degree_of[j] <= self.N

    def inclusion(self):
        """iota_V: V -> T(V) onto degree 1."""
        cols = [self.basis_of((a,)) for a in range(self.V.dim)]
        return ModuleMap(self.V, self.carrier, Matrix.from_columns(cols), "iota")

    def degree_block(self, X, k):
        o = self.offset(k)
        rng = range(o, o + self.V.dim ** k)
        return X.submatrix(rng, rng)


def truncated_tensor_algebra(V, N):
    if N < 0:
        raise ValueError("degree bound must be non-negative")
    return TruncatedTensorAlgebra(V, N)


def _truncation_note(T):
    return f"checked on degree pairs with total degree <= {T.N}; higher products are truncated to zero"


def lift_module_map(f, A, N, T=None):
    """Extend a module map f: V -> A to the algebra map T<=N(V) -> A."""
    V = f.domain
    if not is_module_map(f.matrix, V, A.carrier):
        raise NotModuleMap(f"{f.name} is not a module map")
    T = T or truncated_tensor_algebra(V, N)
    images = [f.matrix.col(a) for a in range(V.dim)]
    cols = []
    for w in T.words:
        x = A.unit
        for a in w:
            x = A.mul(x, images[a])
        cols.append(x)
    F = Matrix.from_columns(cols, A.dim)
    r = Report(f"lift {f.name}")
    r.add("module map", is_module_map(F, T.carrier, A.carrier))
    r.add("algebra morphism", is_algebra_morphism(F, T, A, T.admissible))
    r.add("restricts to f", F @ T.inclusion().matrix == f.matrix)
    r.note(_truncation_note(T))
    return F, r


def lift_antimodule_map(f, A, N, T=None):
    """Extend an antimodule map f: V -> A to the antimodule-algebra map f#."""
    V = f.domain
    if not is_antimodule(f.matrix, V, A.carrier):
        raise NotAntimodule(f"{f.name} is not an antimodule map")
    T = T or truncated_tensor_algebra(V, N)
    images = [f.matrix.col(a) for a in range(V.dim)]
    cols = []
    for w in T.words:
        x = A.unit
        for a in reversed(w):
            x = A.mul(x, images[a])
        cols.append(x)
    F = Matrix.from_columns(cols, A.dim)
    r = Report(f"antilift {f.name}")
    r.add("antimodule map", is_antimodule(F, T.carrier, A.carrier))
    bad = None
    for i in range(T.dim):
        for j in range(T.dim):
            if not T.admissible(i, j):
                continue
            lhs = F.apply(T.mul(T.basis(i), T.basis(j)))
            rhs = A.mul(F.col(j), F.col(i))
            if lhs != rhs:
                bad = (i, j)
                break
        if bad:
            break
    r.add("antimultiplicative", bad is None, bad)
    r.add("unital", F.apply(T.unit) == A.unit)
    r.add("restricts to f", F @ T.inclusion().matrix == f.matrix)
    r.note(_truncation_note(T))
    return F, r


def kappa(V, N):
    """T<=N(conj V) -> conj(T<=N(V)), reversing words in every degree."""
    Vb = conjugate_module(V)
    Tb = truncated_tensor_algebra(Vb, N)
    T = truncated_tensor_algebra(V, N)
    K = block_diag(*[reversal_permutation(V.dim, k) if k else Matrix.identity(1) for k in range(N + 1)])
    target = conjugate_algebra(T)
    r = Report(f"kappa {V.name} N={N}")
    r.add("module map", is_module_map(K, Tb.carrier, target.carrier))
    lhs = K @ Tb.M
    rhs = target.M @ K.kron(K)
    r.add("multiplicative", lhs == rhs, None if lhs == rhs else lhs - rhs)
    r.add("unital", K.apply(Tb.unit) == target.unit)
    r.add("invertible", K.rank() == K.nrows)
    for k in range(N + 1):
        ok = is_module_map(T.degree_block(K, k), tensor_power_module(Vb, k), conjugate_module(tensor_power_module(V, k)))
        r.add(f"degree {k} block conj(V)^(x){k} -> conj(V^(x){k})", ok)
    r.note(_truncation_note(T))
    return K, r


def tensor_algebra_star(V, D, N, T=None):
    """The star on T<=N(V) extending D, block-diagonal over degrees."""
    T = T or truncated_tensor_algebra(V, N)
    DT = block_diag(*[tensor_power_star(V, D, k).D for k in range(N + 1)])
    return StarStructure(T.carrier, DT, f"star T<={N}({V.name})")


def star_universal_lift(f, D_V, D_A, A, N, T=None):
    """Lift a star module map f: V -> A to a star-algebra morphism T<=N(V) -> A."""
    if not is_star_morphism(f.matrix, D_V, D_A):
        raise NotStarMap(f"{f.name} does not commute with the stars")
    T = T or truncated_tensor_algebra(f.domain, N)
    F, r = lift_module_map(f, A, N, T)
    DT = tensor_algebra_star(f.domain, D_V, N, T).D
    r.add("star morphism", is_star_morphism(F, DT, D_A))
    return F, r


@dataclass
class IdealResult:
    basis: list
    star_closed: bool
    quotient: object
    quotient_star: object
    projection: Matrix
    report: Report


def ideal_generated(T, W_basis, D=None):
    """
    Two-sided ideal of T<=N(V) generated by W, its star closure under the
    lifted star, and the quotient algebra.
    """
    n = T.dim
    spans = []
    for w in W_basis:
        for i in range(n):
            left = T.mul(T.basis(i), w)
            for j in range(n):
                spans.append(T.mul(left, T.basis(j)))
    spans = [s for s in spans if any(not v.is_zero() for v in s)]
    J = list(echelon_basis(spans, n).rows)
    r = Report(f"ideal in {T.name}")
    r.note(_truncation_note(T))
    if not _is_submodule(T.carrier, J):
        raise NotSubmodule("generators do not span a submodule; the ideal is not a submodule")
    closed = True
    if D is not None:
        closed = star_submodule_check(T.carrier, D, J)
    r.add("star-closed", closed)
    Q, q, s = quotient_module(T.carrier, J)
    MQ = q @ T.M @ s.kron(s)
    uQ = q.apply(T.unit)
    A = ModuleAlgebra(Q, MQ, uQ, f"{T.name}/J")
    qstar = None
    if q.nrows:
        r.add("projection is a module map", is_module_map(q, T.carrier, Q))
        r.add("projection is multiplicative", is_algebra_morphism(q, T, A, T.admissible))
        if D is not None and closed:
            qstar = StarStructure(Q, q @ D @ s, "quotient star")
            r.add("projection is a star morphism", is_star_morphism(q, D, qstar.D))
    return IdealResult(J, closed, A, qstar, q, r)
