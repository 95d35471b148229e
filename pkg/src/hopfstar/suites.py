"""
Named proposition suites.  Each suite takes a bundle (an algebra with its
modules, stars, Gram matrices and R-matrices) and returns one Report.
"""

import random

from .braid import (
    check_conjugate_braiding_is_braiding,
    check_qybe_operators,
    check_reality_consequences,
    drinfeld_u,
    r_reality,
    verify_quasitriangular,
)
from .conj import check_naturality, check_tilde_relations, natural_isos
from .errors import NotApplicable
from .hmod import ModuleMap, check_hom_invariants, intertwiners, ssquared_inner_isos, verify_module
from .hopf import antipode_inverse, verify_hopf_star
from .inner import check_adjoint_module_props, end_left_star_algebra, mu, two_out_of_three, verify_inner_product
from .linalg import Matrix
from .report import Report
from .scalar import Scalar
from .staralg import (
    direct_sum_star,
    enveloping_star,
    kappa,
    reversal_permutation,
    star_universal_lift,
    tensor_algebra_star,
    tensor_power_star,
    truncated_tensor_algebra,
    verify_star_module,
    StarStructure,
)

__all__ = ["SUITES", "run_suite", "random_matrix", "KAPPA_DEGREE", "ADJOINT_SAMPLES"]

KAPPA_DEGREE = 3
ADJOINT_SAMPLES = 20
# tensor algebras on larger modules are skipped to keep suites at desk scale
MAX_TENSOR_DIM = 2


def random_matrix(rng, nrows, ncols, order=1):
    """Small random entries in Q(zeta_order); deterministic for a seeded rng."""
    from .scalar import field

    deg = field(order).degree

    def entry():
        if rng.random() < 0.3:
            return Scalar.rational(0)
        coeffs = [rng.randint(-3, 3) for _ in range(deg)]
        den = rng.choice((1, 1, 2, 3))
        return Scalar(order, coeffs) / den

    return Matrix([[entry() for _ in range(ncols)] for _ in range(nrows)])


def hopf_axioms(b):
    return verify_hopf_star(b.algebra)


def antipode_involution(b):
    H = b.algebra
    r = Report(f"antipode-involution {b.name}")
    lhs = H.P @ H.S.conj() @ H.P.conj() @ H.S
    r.add("* S * S = id", lhs.is_identity(), None if lhs.is_identity() else lhs)
    Sinv = antipode_inverse(H)
    r.add("S^-1 S = id", (Sinv @ H.S).is_identity())
    r.add("S S^-1 = id", (H.S @ Sinv).is_identity())
    return r


def modules(b):
    r = Report(f"modules {b.name}")
    for key, V in b.modules.items():
        r.extend(verify_module(V), f"{key}: ")
    return r


def hom_invariants(b):
    r = Report(f"hom-invariants {b.name}")
    mods = b.module_list()
    for V in mods:
        for W in mods:
            r.extend(check_hom_invariants(V, W), f"{V.name},{W.name}: ")
    r.note(f"{len(mods) ** 2} ordered pairs")
    return r


def conjugation_isos(b):
    r = Report(f"conjugation-isos {b.name}")
    mods = b.module_list()
    for V in mods:
        for W in mods:
            _, rep = natural_isos(V, W, U=W)
            r.extend(rep, f"{V.name},{W.name}: ")
    maps = []
    for V in mods:
        for W in mods:
            for k, T in enumerate(intertwiners(V, W)):
                maps.append(ModuleMap(V, W, T, f"{V.name}->{W.name}#{k}"))
    for f in maps:
        for g in maps[:4]:
            r.extend(check_naturality(f, g), f"{f.name},{g.name}: ")
    for V in mods:
        r.extend(check_tilde_relations(V), f"{V.name}: ")
    return r


def star_modules(b):
    r = Report(f"star-modules {b.name}")
    starred = b.star_modules()
    for V, D in starred:
        r.extend(verify_star_module(V, D), f"{V.name}: ")
        for env in enveloping_star(V):
            r.extend(verify_star_module(env.module, env.D), f"{env.name}: ")
        if V.dim <= MAX_TENSOR_DIM:
            st = tensor_power_star(V, D, 2)
            r.extend(verify_star_module(st.module, st.D), f"{V.name}^(x)2: ")
    if len(starred) > 1:
        s = direct_sum_star([StarStructure(V, D) for V, D in starred])
        r.extend(verify_star_module(s.module, s.D), "direct sum: ")
    return r


def kappa_suite(b):
    r = Report(f"kappa {b.name}")
    N = KAPPA_DEGREE
    for V in b.module_list():
        if V.dim > MAX_TENSOR_DIM:
            r.note(f"{V.name} skipped: dimension {V.dim} > {MAX_TENSOR_DIM}")
            continue
        K, rep = kappa(V, N)
        r.extend(rep, f"{V.name}: ")
        T = truncated_tensor_algebra(V, N)
        block = T.degree_block(K, N)
        ok = block == reversal_permutation(V.dim, N)
        r.add(f"{V.name}: degree {N} block is the index reversal ({block.nrows}x{block.ncols})", ok)
    return r


def star_lift(b):
    r = Report(f"star-lift {b.name}")
    N = KAPPA_DEGREE
    for V, D in b.star_modules():
        if V.dim > MAX_TENSOR_DIM:
            r.note(f"{V.name} skipped: dimension {V.dim} > {MAX_TENSOR_DIM}")
            continue
        T = truncated_tensor_algebra(V, N)
        DT = tensor_algebra_star(V, D, N, T).D
        for k in range(N + 1):
            ok = T.degree_block(DT, k) == tensor_power_star(V, D, k).D
            r.add(f"{V.name}: degree {k} block equals the tensor-power star", ok)
        r.extend(verify_star_module(T.carrier, DT), f"{V.name} T<={N}: ")
        inc = T.inclusion()
        for sign in (1, -1):
            f = ModuleMap(V, T.carrier, inc.matrix.scale(Scalar.rational(sign)), f"{'+' if sign > 0 else '-'}inclusion")
            F, rep = star_universal_lift(f, D, DT, T, N, T)
            r.extend(rep, f"{V.name} {f.name}: ")
        r.note(f"{V.name}: tensor algebra truncated at degree {N}")
    return r


def inner_adjoint(b, seed=0):
    rng = random.Random(seed)
    r = Report(f"inner-adjoint {b.name}")
    herm = b.hermitian()
    order = b.algebra.scalar_order
    for k, (V, G) in enumerate(herm):
        r.extend(verify_inner_product(V, G), f"{V.name}: ")
        mu(V, G)
        r.add(f"{V.name}: mu is a module map", True)
        for s in range(ADJOINT_SAMPLES):
            W, GW = herm[(k + s) % len(herm)]
            T = random_matrix(rng, W.dim, V.dim, order)
            rep = check_adjoint_module_props(T, V, W, G, GW)
            r.extend(rep, f"{V.name}->{W.name} sample {s}: ")
        A, star, rep = end_left_star_algebra(V, G)
        r.extend(rep, f"End({V.name}): ")
        D = b.stars.get(_key(b, V))
        if D is not None:
            first = two_out_of_three(V, D=D, G=G)
            r.extend(first.report, f"{V.name} (D,G): ")
            back_G = two_out_of_three(V, D=D, h=first.h).G
            back_D = two_out_of_three(V, G=G, h=first.h).D
            r.add(f"{V.name}: (D,h) reproduces G", back_G == G)
            r.add(f"{V.name}: (G,h) reproduces D", back_D == D)
    return r


def _key(b, V):
    for k, W in b.modules.items():
        if W is V:
            return k
    return V.name


def quasitriangular(b):
    r = Report(f"quasitriangular {b.name}")
    H = b.algebra
    mods = b.module_list()
    for key, R in b.rmatrices.items():
        r.extend(verify_quasitriangular(H, R), f"{key}: ")
        u, _, rep = drinfeld_u(H, R)
        r.extend(rep, f"{key}: ")
        for V in mods:
            _, _, rep = ssquared_inner_isos(H, u, V)
            r.extend(rep, f"{key} {V.name}: ")
        for U in mods:
            for V in mods:
                for W in mods:
                    r.add(f"{key}: QYBE on {U.name},{V.name},{W.name}", check_qybe_operators(R, U, V, W))
    return r


def braiding(b):
    r = Report(f"braiding {b.name}")
    for key, R in b.rmatrices.items():
        r.extend(check_conjugate_braiding_is_braiding(R, b.module_list()), f"{key}: ")
    return r


def reality(b):
    r = Report(f"reality {b.name}")
    H = b.algebra
    mods = b.module_list()
    for key, R in b.rmatrices.items():
        kind = r_reality(H, R)
        r.note(f"{key} is {kind.replace('_', '-')}")
        for V in mods:
            for W in mods:
                D = b.stars.get(_key(b, V)) if V is W else None
                try:
                    rep = check_reality_consequences(R, V, W, D)
                except NotApplicable as e:
                    r.skip(f"{key} {V.name},{W.name}", str(e))
                    continue
                r.extend(rep, f"{key} {V.name},{W.name}: ")
    return r


SUITES = {
    "hopf-axioms": hopf_axioms,
    "antipode-involution": antipode_involution,
    "modules": modules,
    "hom-invariants": hom_invariants,
    "conjugation-isos": conjugation_isos,
    "star-modules": star_modules,
    "kappa": kappa_suite,
    "star-lift": star_lift,
    "inner-adjoint": inner_adjoint,
    "quasitriangular": quasitriangular,
    "braiding": braiding,
    "reality": reality,
}


def run_suite(name, bundles):
    """Run one suite (or "all") over several bundles and merge the reports."""
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    r = Report(f"suite {name}")
    for b in bundles:
        for n in names:
            rep = SUITES[n](b)
            r.extend(rep, f"[{b.name}] {n}: ")
    return r
