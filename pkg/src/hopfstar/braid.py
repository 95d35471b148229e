"""
Universal R-matrices, the braidings they induce on modules, the conjugate
braiding and the real / inverse-real classification.

An R-matrix is a d x d grid with R = sum R_ij e_i (x) e_j.  Elements of
H (x) H (x) ... are sparse dicts {index tuple: scalar}.
"""

from dataclasses import dataclass, field

from .errors import AlgebraMismatch, InversePairFails, NoInverse, NotApplicable, NotInvertible
from .hmod import intertwiners, is_module_map, tensor_module
from .linalg import Matrix, swap_matrix
from .report import Report
from .scalar import ONE, ZERO
from .staralg import is_star_morphism, tensor_power_star

__all__ = [
    "RMatrix",
    "grid_to_tensor",
    "tensor_to_grid",
    "invert_r",
    "verify_quasitriangular",
    "drinfeld_u",
    "braiding",
    "check_braiding_coherence",
    "conjugate_braiding",
    "check_conjugate_braiding_is_braiding",
    "r_reality",
    "r_star",
    "check_reality_consequences",
    "check_qybe_operators",
]


def grid_to_tensor(grid):
    return {(i, j): v for i, j, v in grid.nonzero_entries()}


def tensor_to_grid(t, d):
    return Matrix.from_sparse(d, d, t)


def _clean(t):
    return {k: v for k, v in t.items() if not v.is_zero()}


def _add(x, y, sign=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, ZERO) + (v if sign > 0 else -v)
    return _clean(out)


@dataclass
class RMatrix:
    algebra: object
    coeffs: Matrix
    inverse: Matrix = None
    name: str = field(default="R")

    def __post_init__(self):
        d = self.algebra.dim
        if self.coeffs.shape != (d, d):
            raise AlgebraMismatch("R-matrix grid must be d x d")
        if self.inverse is None:
            self.inverse = invert_r(self.algebra, self.coeffs)

    @property
    def tensor(self):
        return grid_to_tensor(self.coeffs)

    @property
    def inverse_tensor(self):
        return grid_to_tensor(self.inverse)


def invert_r(H, grid):
    """Exact inverse in H (x) H via the left-multiplication operator."""
    d = H.dim
    R = grid_to_tensor(grid)
    cols = []
    for i in range(d):
        for j in range(d):
            prod = H.tensor_mul(R, {(i, j): ONE})
            cols.append(tuple(prod.get((a, b), ZERO) for a in range(d) for b in range(d)))
    L = Matrix.from_columns(cols)
    one = H.tensor_unit(2)
    rhs = tuple(one.get((a, b), ZERO) for a in range(d) for b in range(d))
    try:
        x = L.inverse().apply(rhs)
    except NotInvertible:
        raise NoInverse("R is not invertible in H (x) H") from None
    inv = Matrix([x[a * d:(a + 1) * d] for a in range(d)])
    if H.tensor_mul(grid_to_tensor(inv), R) != one:
        raise NoInverse("left inverse of R is not a right inverse")
    return inv


def _embed(H, t, legs, total=3):
    """Place a two-leg tensor on the given legs of an order-`total` tensor, units elsewhere."""
    unit = [(k, v) for k, v in enumerate(H.unit) if not v.is_zero()]
    out = {}
    others = [p for p in range(total) if p not in legs]
    for (i, j), c in t.items():
        partial = [((None,) * total, c)]
        for p in others:
            partial = [(key[:p] + (k,) + key[p + 1:], coef * v) for key, coef in partial for k, v in unit]
        for key, coef in partial:
            key = list(key)
            key[legs[0]] = i
            key[legs[1]] = j
            key = tuple(key)
            out[key] = out.get(key, ZERO) + coef
    return _clean(out)


def _flip(t):
    return {(j, i): v for (i, j), v in t.items()}


def _check(report, name, lhs, rhs):
    ok = lhs == rhs
    diff = None
    if not ok:
        diff = {str(k): v for k, v in _add(lhs, rhs, -1).items()}
    report.add(name, ok, diff)
    return ok


def verify_quasitriangular(H, R):
    """Defining axioms of an R-matrix and their standard consequences."""
    r = Report(f"quasitriangular {R.name}")
    Rt, Ri = R.tensor, R.inverse_tensor
    one2 = H.tensor_unit(2)
    if H.tensor_mul(Rt, Ri) != one2 or H.tensor_mul(Ri, Rt) != one2:
        raise NoInverse(f"stored inverse of {R.name} is not a two-sided inverse")
    r.add("inverse", True)

    bad = None
    for k in range(H.dim):
        dk = H.coproduct(H.basis(k))
        lhs = H.tensor_mul(Rt, dk)
        rhs = H.tensor_mul(_flip(dk), Rt)
        if lhs != rhs:
            bad = k
            break
    r.add("coproduct-reversal", bad is None, None if bad is None else f"basis element {bad}")

    R12, R13, R23 = _embed(H, Rt, (0, 1)), _embed(H, Rt, (0, 2)), _embed(H, Rt, (1, 2))
    _check(r, "coproduct-left", H.tensor_coproduct_leg(Rt, 0), H.tensor_mul(R13, R23))
    _check(r, "coproduct-right", H.tensor_coproduct_leg(Rt, 1), H.tensor_mul(R13, R12))
    _check(
        r,
        "qybe",
        H.tensor_mul(H.tensor_mul(R12, R13), R23),
        H.tensor_mul(H.tensor_mul(R23, R13), R12),
    )
    unit1 = H.tensor_unit(1)
    ok = H.tensor_counit_leg(Rt, 0) == unit1 and H.tensor_counit_leg(Rt, 1) == unit1
    r.add("counit", ok)
    _check(r, "antipode-left", H.tensor_apply_leg(Rt, 0, H.S), Ri)
    _check(r, "antipode-right", H.tensor_apply_leg(Ri, 1, H.S), Rt)
    _check(r, "antipode-both", H.tensor_apply_leg(H.tensor_apply_leg(Rt, 0, H.S), 1, H.S), Rt)
    return r


def drinfeld_u(H, R):
    """u = sum R_ij S(e_j) e_i and u^-1 = sum R_ij e_j S^2(e_i), with checks."""
    u = H.zero()
    uinv = H.zero()
    for (i, j), c in R.tensor.items():
        t = H.mul(H.S.col(j), H.basis(i))
        u = tuple(a + c * b for a, b in zip(u, t))
        t = H.mul(H.basis(j), H.S2.col(i))
        uinv = tuple(a + c * b for a, b in zip(uinv, t))
    r = Report(f"drinfeld-u {R.name}")
    if H.mul(u, uinv) != H.unit or H.mul(uinv, u) != H.unit:
        raise InversePairFails("u and the candidate inverse do not multiply to 1")
    r.add("u u^-1 = 1", True)
    Su = H.S.apply(u)
    c = H.mul(u, Su)
    central = all(H.mul(c, H.basis(i)) == H.mul(H.basis(i), c) for i in range(H.dim))
    r.add("u S(u) central", central)
    r.add("u S(u) = S(u) u", c == H.mul(Su, u))
    bad = [i for i in range(H.dim) if H.mul(H.S2.col(i), u) != H.mul(u, H.basis(i))]
    r.add("S^2(a) = u a u^-1", not bad, bad or None)
    bad = [i for i in range(H.dim) if H.S_inv.col(i) != H.mul(H.mul(uinv, H.S.col(i)), u)]
    r.add("S^-1(a) = u^-1 S(a) u", not bad, bad or None)
    return u, uinv, r


def _action_of(t, V, W):
    """Matrix of sum c (x) rho_V(e_i) (x) rho_W(e_j) on V (x) W."""
    out = Matrix.zeros(V.dim * W.dim, V.dim * W.dim)
    for (i, j), c in t.items():
        out = out + V.action[i].kron(W.action[j]).scale(c)
    return out


def braiding(R, V, W):
    """psi_VW = flip o R acting on V (x) W."""
    if V.algebra is not W.algebra and V.algebra.name != W.algebra.name:
        raise AlgebraMismatch("modules over different algebras")
    return swap_matrix(V.dim, W.dim) @ _action_of(R.tensor, V, W)


def conjugate_braiding(R, V, W, report=None):
    """
    The conjugate braiding on V (x) W, built from its definition through
    the conjugate modules, and cross-checked against flip o (R_21)* .
    """
    from .conj import conjugate_module

    H = V.algebra
    Vb, Wb = conjugate_module(V), conjugate_module(W)
    # xi on conj(Vb) (x) conj(Wb) = rho o conj(psi_{Wb Vb}) o rho^-1; sigma is the identity
    rho_inv = swap_matrix(W.dim, V.dim).T
    xi = swap_matrix(V.dim, W.dim) @ braiding(R, Wb, Vb).conj() @ rho_inv
    star_t = {}
    for (i, j), c in R.tensor.items():
        for (k, l), v in _star_pair(H, j, i).items():
            star_t[(k, l)] = star_t.get((k, l), ZERO) + c.conj() * v
    shortcut = swap_matrix(V.dim, W.dim) @ _action_of(_clean(star_t), V, W)
    if report is not None:
        report.add(f"conjugate braiding routes agree on {V.name},{W.name}", xi == shortcut, None if xi == shortcut else xi - shortcut)
    return xi, shortcut


def _star_pair(H, j, i):
    """e_j* (x) e_i* as a sparse tensor."""
    a, b = H.P.col(j), H.P.col(i)
    return _clean({(k, l): a[k] * b[l] for k in range(H.dim) for l in range(H.dim) if not a[k].is_zero() and not b[l].is_zero()})


def check_braiding_coherence(R, U, V, W, maps=None, braid=None, label="psi"):
    """Both hexagons on (U, V, W) and naturality for (f: U -> U', g: V -> V') pairs."""
    braid = braid or braiding
    r = Report(f"{label}-coherence {U.name},{V.name},{W.name}")
    IU, IV, IW = (Matrix.identity(m.dim) for m in (U, V, W))
    lhs = braid(R, U, tensor_module(V, W))
    rhs = IV.kron(braid(R, U, W)) @ braid(R, U, V).kron(IW)
    r.add("hexagon U,V(x)W", lhs == rhs, None if lhs == rhs else lhs - rhs)
    lhs = braid(R, tensor_module(U, V), W)
    rhs = braid(R, U, W).kron(IV) @ IU.kron(braid(R, V, W))
    r.add("hexagon U(x)V,W", lhs == rhs, None if lhs == rhs else lhs - rhs)
    for f, g in maps or []:
        lhs = braid(R, f.codomain, g.codomain) @ f.matrix.kron(g.matrix)
        rhs = g.matrix.kron(f.matrix) @ braid(R, f.domain, g.domain)
        r.add(f"naturality {f.name},{g.name}", lhs == rhs, None if lhs == rhs else lhs - rhs)
    return r


def _psibar(R, V, W):
    return conjugate_braiding(R, V, W)[0]


def _intertwiner_maps(mods):
    from .hmod import ModuleMap

    out = []
    for X in mods:
        for Y in mods:
            for k, T in enumerate(intertwiners(X, Y)):
                out.append(ModuleMap(X, Y, T, f"{X.name}->{Y.name}#{k}"))
    return out


def check_conjugate_braiding_is_braiding(R, mods, include_psi=True):
    """Coherence of psi and psi-bar over all triples, naturality over intertwiner pairs."""
    r = Report(f"conjugate-braiding {R.name}")
    for V in mods:
        for W in mods:
            conjugate_braiding(R, V, W, r)
            pb = _psibar(R, V, W)
            r.add(f"psi-bar module map {V.name},{W.name}", is_module_map(pb, tensor_module(V, W), tensor_module(W, V)))
            if include_psi:
                r.add(f"psi module map {V.name},{W.name}", is_module_map(braiding(R, V, W), tensor_module(V, W), tensor_module(W, V)))
    maps = _intertwiner_maps(mods)
    pairs = [(f, g) for f in maps for g in maps]
    for U in mods:
        for V in mods:
            for W in mods:
                if include_psi:
                    r.extend(check_braiding_coherence(R, U, V, W), prefix=f"psi {U.name},{V.name},{W.name}: ")
                r.extend(check_braiding_coherence(R, U, V, W, braid=_psibar, label="psibar"), prefix=f"psibar {U.name},{V.name},{W.name}: ")
    nat_psi = check_braiding_coherence(R, mods[0], mods[0], mods[0], pairs) if include_psi else None
    nat_bar = check_braiding_coherence(R, mods[0], mods[0], mods[0], pairs, braid=_psibar, label="psibar")
    for rep, label in ((nat_psi, "psi"), (nat_bar, "psibar")):
        if rep is None:
            continue
        for c in rep.checks:
            if c.name.startswith("naturality"):
                r.checks.append(type(c)(f"{label} {c.name}", c.status, c.witness))
    return r


def r_star(H, R):
    """Grid of R* = sum conj(R_ij) e_i* (x) e_j*."""
    return H.P @ R.coeffs.conj() @ H.P.T


def r_reality(H, R):
    Rs = r_star(H, R)
    real = Rs == R.coeffs.T
    inv_real = Rs == R.inverse
    if real and inv_real:
        return "both"
    if real:
        return "real"
    if inv_real:
        return "inverse_real"
    return "neither"


def check_reality_consequences(R, V, W, D=None):
    H = R.algebra
    kind = r_reality(H, R)
    if kind == "neither":
        raise NotApplicable(f"{R.name} is neither real nor inverse real")
    r = Report(f"reality {R.name} ({kind}) {V.name},{W.name}")
    pb = _psibar(R, V, W)
    if kind in ("real", "both"):
        ok = pb == braiding(R, V, W)
        r.add("psi-bar = psi", ok, None if ok else pb - braiding(R, V, W))
    if kind in ("inverse_real", "both"):
        inv = braiding(R, W, V).inverse()
        ok = pb == inv
        r.add("psi-bar_VW = psi_WV^-1", ok, None if ok else pb - inv)
    if D is not None:
        psi = braiding(R, V, V)
        D2 = tensor_power_star(V, D, 2).D
        DD = D.kron(D)
        lhs = psi @ D2
        rhs = _action_of(_flip(R.tensor), V, V) @ DD
        r.add("psi D2 = R21 (D(x)D)", lhs == rhs, None if lhs == rhs else lhs - rhs)
        lhs = D2 @ psi.conj()
        rhs = _action_of(grid_to_tensor(r_star(H, R)), V, V) @ DD
        r.add("D2 conj(psi) = R* (D(x)D)", lhs == rhs, None if lhs == rhs else lhs - rhs)
        star_ok = is_star_morphism(psi, D2, D2)
        if kind in ("real", "both"):
            r.add("psi_VV is a star morphism", star_ok)
        else:
            r.skip("psi_VV is a star morphism", f"no claim for inverse-real R; computed: {star_ok}")
    return r


def check_qybe_operators(R, U, V, W):
    """R12 R13 R23 = R23 R13 R12 as operators on U (x) V (x) W."""
    Rt = R.tensor

    def leg_op(legs):
        mods = (U, V, W)
        out = None
        for (i, j), c in Rt.items():
            mats = []
            for p in range(3):
                if p == legs[0]:
                    mats.append(mods[p].action[i])
                elif p == legs[1]:
                    mats.append(mods[p].action[j])
                else:
                    mats.append(Matrix.identity(mods[p].dim))
            term = mats[0].kron(mats[1]).kron(mats[2]).scale(c)
            out = term if out is None else out + term
        return out

    R12, R13, R23 = leg_op((0, 1)), leg_op((0, 2)), leg_op((1, 2))
    return R12 @ R13 @ R23 == R23 @ R13 @ R12
