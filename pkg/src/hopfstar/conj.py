"""
Complex conjugation of modules.

Coordinates of the conjugate vector c(v) in conj(V) are the entrywise
conjugates of the coordinates of v.  With that single convention the
double-conjugation, unit, direct-sum and dual comparison maps are identity
matrices and the tensor-reversal map is a permutation.
"""

from dataclasses import dataclass, field

from .errors import NotAntimodule
from .hmod import (
    HModule,
    ModuleMap,
    direct_sum_module,
    hom_left,
    hom_right,
    is_module_map,
    left_dual,
    module_map,
    right_dual,
    tensor_module,
    trivial_module,
)
from .linalg import Matrix, swap_matrix
from .report import Report

__all__ = [
    "AntimoduleMap",
    "conjugate_module",
    "conjugate_map",
    "is_antimodule",
    "psi",
    "psi_inv",
    "conjugation_map",
    "natural_isos",
    "check_rho_associativity",
    "check_naturality",
    "tilde_conjugate_module",
    "check_tilde_relations",
    "star_of_antipode",
]


def star_of_antipode(H, i):
    """Coordinates of S(e_i)*."""
    return H.apply_star(H.S.col(i))


def conjugate_module(V):
    """conj(V) with e_i |> c(v) = c(S(e_i)* |> v)."""
    H = V.algebra
    action = [V.rho(star_of_antipode(H, i)).conj() for i in range(H.dim)]
    return HModule(H, action, name=f"bar({V.name})")


def conjugate_map(T, domain_bar=None, codomain_bar=None):
    """conj(T): conj(V) -> conj(W), the entrywise conjugate matrix."""
    Vb = domain_bar or conjugate_module(T.domain)
    Wb = codomain_bar or conjugate_module(T.codomain)
    return module_map(T.matrix.conj(), Vb, Wb, f"bar({T.name})")


@dataclass
class AntimoduleMap:
    """v -> D conj(v) from V to W, antilinear."""

    domain: HModule
    codomain: HModule
    matrix: Matrix
    name: str = field(default="T")

    def is_antimodule(self):
        return is_antimodule(self.matrix, self.domain, self.codomain)


def antimodule_defect(D, V, W):
    H = V.algebra
    for i in range(H.dim):
        lhs = D @ V.action[i].conj()
        rhs = W.rho(star_of_antipode(H, i)) @ D
        if lhs != rhs:
            return i, lhs - rhs
    return None


def is_antimodule(D, V, W):
    """D conj(rho_V(e_i)) = rho_W(S(e_i)*) D for every i."""
    return antimodule_defect(D, V, W) is None


def psi(T, domain_bar=None):
    """The antimodule map T read as a module map conj(V) -> W (same matrix)."""
    bad = antimodule_defect(T.matrix, T.domain, T.codomain)
    if bad is not None:
        raise NotAntimodule(f"{T.name} fails the antimodule identity at basis element {bad[0]}")
    Vb = domain_bar or conjugate_module(T.domain)
    return module_map(T.matrix, Vb, T.codomain, f"psi({T.name})")


def psi_inv(f, V):
    """Module map f: conj(V) -> W back to the antimodule map f o c_V."""
    return AntimoduleMap(V, f.codomain, f.matrix, f"psi^-1({f.name})")


def conjugation_map(V):
    """c_V: V -> conj(V) as an antimodule map (identity matrix)."""
    return AntimoduleMap(V, conjugate_module(V), Matrix.identity(V.dim), f"c_{V.name}")


def natural_isos(V, W, U=None):
    """
    gamma, sigma, pi, rho, beta_dual and beta_hom for the pair (V, W), each
    verified as a module map, plus the associativity square of rho on (U, V, W).
    """
    H = V.algebra
    r = Report(f"conjugation-isos {V.name},{W.name}")
    triv = trivial_module(H)
    Vb, Wb = conjugate_module(V), conjugate_module(W)
    maps = {}

    def build(key, T, dom, cod):
        ok = is_module_map(T, dom, cod)
        r.add(f"{key} is a module map", ok, None if ok else T)
        maps[key] = ModuleMap(dom, cod, T, key)

    build("gamma", Matrix.identity(1), conjugate_module(triv), triv)
    build("sigma", Matrix.identity(V.dim), conjugate_module(Vb), V)
    build("pi", Matrix.identity(V.dim + W.dim), conjugate_module(direct_sum_module(V, W)), direct_sum_module(Vb, Wb))
    build("rho", swap_matrix(V.dim, W.dim), conjugate_module(tensor_module(V, W)), tensor_module(Wb, Vb))
    build("beta_dual", Matrix.identity(V.dim), conjugate_module(left_dual(V)), right_dual(Vb))
    build("beta_hom", Matrix.identity(V.dim * W.dim), conjugate_module(hom_left(V, W)), hom_right(Vb, Wb))

    for key in ("gamma", "sigma", "pi", "rho", "beta_dual", "beta_hom"):
        m = maps[key].matrix
        r.add(f"{key} is invertible", m.rank() == m.nrows)

    r.extend(check_rho_associativity(U if U is not None else V, V, W))
    return maps, r


def rho_matrix(V, W):
    """conj(V (x) W) -> conj(W) (x) conj(V)."""
    return swap_matrix(V.dim, W.dim)


def check_rho_associativity(U, V, W):
    """(rho_VW (x) id) rho_{U,V(x)W} = (id (x) rho_UV) rho_{U(x)V,W} on conj(U(x)V(x)W)."""
    r = Report(f"rho-associativity {U.name},{V.name},{W.name}")
    IU, IW = Matrix.identity(U.dim), Matrix.identity(W.dim)
    lhs = rho_matrix(V, W).kron(IU) @ rho_matrix(U, tensor_module(V, W))
    rhs = IW.kron(rho_matrix(U, V)) @ rho_matrix(tensor_module(U, V), W)
    r.add("rho associativity square", lhs == rhs, None if lhs == rhs else lhs - rhs)
    src = conjugate_module(tensor_module(tensor_module(U, V), W))
    tgt = tensor_module(tensor_module(conjugate_module(W), conjugate_module(V)), conjugate_module(U))
    r.add("rho composite is a module map", is_module_map(lhs, src, tgt))
    return r


def check_naturality(f, g):
    """Naturality of sigma, rho and beta_dual for module maps f: V -> V', g: W -> W'."""
    r = Report(f"conjugation-naturality {f.name},{g.name}")
    V, V2, W, W2 = f.domain, f.codomain, g.domain, g.codomain
    fb, gb = f.matrix.conj(), g.matrix.conj()
    # sigma: f o sigma_V = sigma_V' o conj(conj(f))
    r.add("sigma naturality", f.matrix == fb.conj())
    # rho: rho_{V'W'} conj(f (x) g) = (conj g (x) conj f) rho_{VW}
    lhs = rho_matrix(V2, W2) @ f.matrix.kron(g.matrix).conj()
    rhs = gb.kron(fb) @ rho_matrix(V, W)
    r.add("rho naturality", lhs == rhs, None if lhs == rhs else lhs - rhs)
    # beta_dual: beta_V conj(f^T) = conj(f)^T beta_V', both betas identities
    lhs = f.matrix.T.conj()
    rhs = fb.T
    ok = lhs == rhs and is_module_map(lhs, conjugate_module(left_dual(V2)), right_dual(conjugate_module(V)))
    r.add("beta_dual naturality", ok, None if ok else lhs - rhs)
    return r


def tilde_conjugate_module(V):
    """The variant conjugate with e_i |> c(v) = c(S(e_i*) |> v)."""
    H = V.algebra
    action = []
    for i in range(H.dim):
        a = H.S.apply(H.apply_star(H.basis(i)))
        action.append(V.rho(a).conj())
    return HModule(H, action, name=f"tilde({V.name})")


def check_tilde_relations(V):
    """(tilde V)* equals *(bar V); bar(tilde V) and tilde(bar V) differ by S^4."""
    H = V.algebra
    r = Report(f"tilde-relations {V.name}")
    Vt, Vb = tilde_conjugate_module(V), conjugate_module(V)
    a, b = left_dual(Vt), right_dual(Vb)
    r.add("(tilde V)* = *(bar V)", a.same_action(b))
    bt = conjugate_module(Vt)
    tb = tilde_conjugate_module(Vb)
    S4 = H.S2 @ H.S2
    bad = [i for i in range(H.dim) if bt.action[i] != tb.rho(S4.col(i))]
    r.add("bar(tilde V)(a) = tilde(bar V)(S^4 a)", not bad, bad or None)
    S2 = H.S2
    ok = all(bt.action[i] == V.rho(S2.col(i)) for i in range(H.dim))
    r.add("bar(tilde V)(a) = V(S^2 a)", ok)
    return r
