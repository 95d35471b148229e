"""
Catalog of small Hopf *-algebras with modules, star structures, inner
products and R-matrices.  Every object is re-verified when a bundle is built.
"""

import re
from dataclasses import dataclass, field

from .braid import RMatrix
from .errors import CheckFailed, UnknownFixture
from .hmod import HModule, trivial_module
from .hopf import HopfStarAlgebra
from .linalg import Matrix
from .report import Report
from .scalar import ONE, ZERO, Scalar, as_scalar

# Sweedler basis order
ONE_, G, X, GX = 0, 1, 2, 3


def trivial_algebra(order=4):
    """The ground field as a 1-dimensional Hopf *-algebra over Q(zeta_order)."""
    return HopfStarAlgebra(
        dim=1,
        mult=[[[ONE]]],
        unit=[ONE],
        coprod=[[(ONE, 0, 0)]],
        counit=[ONE],
        antipode=[[ONE]],
        star=[[ONE]],
        scalar_order=order,
        name="ground",
    )


def group_algebra(n):
    """Group algebra of Z/n: g^a g^b = g^(a+b), g^a grouplike, (g^a)* = g^-a."""
    def e(k):
        return [ONE if i == k % n else ZERO for i in range(n)]

    inverse = Matrix([[ONE if i == (-j) % n else ZERO for j in range(n)] for i in range(n)])
    return HopfStarAlgebra(
        dim=n,
        mult=[[e(a + b) for b in range(n)] for a in range(n)],
        unit=e(0),
        coprod=[[(ONE, a, a)] for a in range(n)],
        counit=[ONE] * n,
        antipode=inverse,
        star=inverse,
        scalar_order=n if n > 2 else 1,
        name=f"group_z{n}",
    )


def sweedler_algebra():
    """
    Sweedler's 4-dimensional algebra with basis 1, g, x, gx:
    g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x, S(x) = -gx,
    star g* = g, x* = x.
    """
    z, o, m = ZERO, ONE, -ONE

    def v(*c):
        return [as_scalar(t) for t in c]

    table = {
        (ONE_, ONE_): v(1, 0, 0, 0),
        (ONE_, G): v(0, 1, 0, 0),
        (ONE_, X): v(0, 0, 1, 0),
        (ONE_, GX): v(0, 0, 0, 1),
        (G, ONE_): v(0, 1, 0, 0),
        (G, G): v(1, 0, 0, 0),
        (G, X): v(0, 0, 0, 1),
        (G, GX): v(0, 0, 1, 0),
        (X, ONE_): v(0, 0, 1, 0),
        (X, G): v(0, 0, 0, -1),
        (X, X): v(0, 0, 0, 0),
        (X, GX): v(0, 0, 0, 0),
        (GX, ONE_): v(0, 0, 0, 1),
        (GX, G): v(0, 0, -1, 0),
        (GX, X): v(0, 0, 0, 0),
        (GX, GX): v(0, 0, 0, 0),
    }
    mult = [[table[(i, j)] for j in range(4)] for i in range(4)]
    coprod = [
        [(o, ONE_, ONE_)],
        [(o, G, G)],
        [(o, X, ONE_), (o, G, X)],
        [(o, GX, G), (o, ONE_, GX)],
    ]
    antipode = Matrix([[o, z, z, z], [z, o, z, z], [z, z, z, o], [z, z, m, z]])
    star = Matrix([[o, z, z, z], [z, o, z, z], [z, z, o, z], [z, z, z, m]])
    return HopfStarAlgebra(
        dim=4,
        mult=mult,
        unit=v(1, 0, 0, 0),
        coprod=coprod,
        counit=v(1, 1, 0, 0),
        antipode=antipode,
        star=star,
        scalar_order=1,
        name="sweedler",
    )


def sweedler_r_matrix(H, lam):
    """R_lambda = 1/2(1(x)1 + 1(x)g + g(x)1 - g(x)g) + lambda/2 (x(x)x - x(x)gx + gx(x)x + gx(x)gx)."""
    lam = as_scalar(lam)
    half = Scalar.rational(1) / 2
    entries = {
        (ONE_, ONE_): half,
        (ONE_, G): half,
        (G, ONE_): half,
        (G, G): -half,
        (X, X): lam * half,
        (X, GX): -lam * half,
        (GX, X): lam * half,
        (GX, GX): lam * half,
    }
    return Matrix.from_sparse(4, 4, entries)


@dataclass
class Bundle:
    """An algebra with curated modules, stars, Gram matrices and R-matrices."""

    name: str
    algebra: HopfStarAlgebra
    modules: dict = field(default_factory=dict)
    stars: dict = field(default_factory=dict)
    grams: dict = field(default_factory=dict)
    rmatrices: dict = field(default_factory=dict)

    def module_list(self):
        return list(self.modules.values())

    def hermitian(self):
        return [(self.modules[k], g) for k, g in self.grams.items()]

    def star_modules(self):
        return [(self.modules[k], d) for k, d in self.stars.items()]


def _mod(H, mats, name):
    return HModule(H, [m if isinstance(m, Matrix) else Matrix(m) for m in mats], name)


def _cyclic_shift(n, a):
    return Matrix([[ONE if i == (j + a) % n else ZERO for j in range(n)] for i in range(n)])


def _trivial_bundle():
    H = trivial_algebra()
    b = Bundle("trivial", H)
    b.modules["trivial"] = trivial_module(H)
    b.stars["trivial"] = Matrix.identity(1)
    b.grams["trivial"] = Matrix.identity(1)
    b.rmatrices["R1"] = RMatrix(H, Matrix.identity(1), name="R1")
    return b


def _group_bundle(n):
    H = group_algebra(n)
    b = Bundle(H.name, H)
    b.modules["trivial"] = trivial_module(H)
    if n == 2:
        b.modules["sign"] = _mod(H, [[[1]], [[-1]]], "sign")
    else:
        for k in range(1, n):
            b.modules[f"chi{k}"] = _mod(H, [[[Scalar.zeta(n, a * k)]] for a in range(n)], f"chi{k}")
    b.modules["regular"] = _mod(H, [_cyclic_shift(n, a) for a in range(n)], "regular")
    # characters chi_k with k != -k have no star: conjugation sends chi_k to chi_-k
    for key, V in b.modules.items():
        if key in ("trivial", "sign", "regular"):
            b.stars[key] = Matrix.identity(V.dim)
        b.grams[key] = Matrix.identity(V.dim)
    b.rmatrices["R1"] = RMatrix(H, _unit_r(H), name="R1")
    b.rmatrices["Rchi"] = RMatrix(H, bicharacter_r_matrix(n), name="Rchi")
    return b


def _unit_r(H):
    return Matrix.from_sparse(H.dim, H.dim, {(0, 0): ONE})


def bicharacter_r_matrix(n):
    """R = (1/n) sum_{a,b} zeta_n^(-ab) g^a (x) g^b, acting on chi_j (x) chi_k by zeta^(jk)."""
    inv_n = Scalar.rational(1) / n
    return Matrix([[Scalar.zeta(n, -a * b) * inv_n for b in range(n)] for a in range(n)])


def _sweedler_bundle(lam):
    H = sweedler_algebra()
    lam = as_scalar(lam)
    b = Bundle(f"sweedler({lam.c[0]})", H)
    b.modules["trivial"] = trivial_module(H)
    b.modules["sign"] = _mod(H, [[[1]], [[-1]], [[0]], [[0]]], "sign")
    nil = Matrix([[0, 0], [1, 0]])
    for key, g in (("P+", Matrix([[1, 0], [0, -1]])), ("P-", Matrix([[-1, 0], [0, 1]]))):
        b.modules[key] = _mod(H, [Matrix.identity(2), g, nil, g @ nil], key)
    b.stars["trivial"] = Matrix.identity(1)
    b.stars["sign"] = Matrix.identity(1)
    b.stars["P+"] = Matrix([[1, 0], [0, -1]])
    b.stars["P-"] = Matrix.identity(2)
    # x must act by a Hermitian nilpotent, hence by zero, on any Hermitian module
    b.grams["trivial"] = Matrix.identity(1)
    b.grams["sign"] = Matrix.identity(1)
    b.rmatrices["R"] = RMatrix(H, sweedler_r_matrix(H, lam), name=f"R_{lam.c[0]}")
    return b


_FIXTURE_RE = re.compile(r"^\s*(trivial|group_z2|group_z3|group_zn|sweedler)\s*(?:\(\s*([+-]?\d+(?:/\d+)?)\s*\))?\s*$")


def parse_fixture_name(name):
    m = _FIXTURE_RE.match(name)
    if m is None:
        raise UnknownFixture(f"unknown fixture {name!r}")
    kind, arg = m.group(1), m.group(2)
    if kind == "trivial" and arg is None:
        return ("trivial", None)
    if kind == "group_z2" and arg is None:
        return ("group_zn", 2)
    if kind == "group_z3" and arg is None:
        return ("group_zn", 3)
    if kind == "group_zn" and arg is not None and "/" not in arg and int(arg) >= 2:
        return ("group_zn", int(arg))
    if kind == "sweedler":
        return ("sweedler", arg if arg is not None else "1")
    raise UnknownFixture(f"unknown fixture {name!r}")


def fixture(name, verify=True):
    """Build a bundle by name and re-verify every object in it."""
    kind, arg = parse_fixture_name(name)
    if kind == "trivial":
        b = _trivial_bundle()
    elif kind == "group_zn":
        b = _group_bundle(arg)
    else:
        b = _sweedler_bundle(arg)
    if verify:
        verify_bundle(b, raise_on_failure=True)
    return b


def verify_bundle(b, raise_on_failure=False):
    from .braid import verify_quasitriangular
    from .hmod import verify_module
    from .hopf import verify_hopf_star
    from .inner import verify_inner_product
    from .staralg import verify_star_module

    r = Report(f"fixture {b.name}")
    r.extend(verify_hopf_star(b.algebra), "algebra: ")
    for key, V in b.modules.items():
        r.extend(verify_module(V), f"module {key}: ")
    for key, D in b.stars.items():
        r.extend(verify_star_module(b.modules[key], D), f"star {key}: ")
    for key, G in b.grams.items():
        r.extend(verify_inner_product(b.modules[key], G), f"gram {key}: ")
    for key, R in b.rmatrices.items():
        r.extend(verify_quasitriangular(b.algebra, R), f"R-matrix {key}: ")
    if raise_on_failure and not r.passed:
        raise CheckFailed(r)
    return r


FIXTURE_NAMES = ("trivial", "group_z2", "group_z3", "sweedler(0)", "sweedler(1)", "sweedler(-2)")
