import pytest

from hopfstar.conj import (
    AntimoduleMap,
    check_naturality,
    check_rho_associativity,
    check_tilde_relations,
    conjugate_map,
    conjugate_module,
    conjugation_map,
    is_antimodule,
    natural_isos,
    psi,
    psi_inv,
    tilde_conjugate_module,
)
from hopfstar.errors import NotAntimodule
from hopfstar.fixtures import trivial_algebra
from hopfstar.hmod import ModuleMap, intertwiners, trivial_module, verify_module
from hopfstar.linalg import Matrix, swap_matrix
from hopfstar.scalar import Scalar

from conftest import bundle
from oracle import conjugate_action

FIXTURES = ("trivial", "group_z2", "group_z3", "sweedler(0)", "sweedler(1)", "sweedler(-2)")
I_ = Scalar.i()


def mods(name):
    return bundle(name).module_list()


@pytest.mark.parametrize("name", FIXTURES)
def test_conjugate_action_matches_oracle(name):
    for V in mods(name):
        Vb = conjugate_module(V)
        assert verify_module(Vb).passed
        for i in range(V.algebra.dim):
            assert Vb.action[i] == conjugate_action(V, i)


def test_conjugate_examples():
    b = bundle("group_z2")
    assert conjugate_module(b.modules["trivial"]).same_action(b.modules["trivial"])
    assert conjugate_module(b.modules["sign"]).same_action(b.modules["sign"])


def test_z3_conjugation_swaps_characters():
    b = bundle("group_z3")
    # g* = g^-1 and S(g) = g^-1, so S(g)* = g and conjugation sends chi1 to chi2
    assert conjugate_module(b.modules["chi1"]).same_action(b.modules["chi2"])


def test_conjugate_map_functorial():
    b = bundle("sweedler(1)")
    V = b.modules["P+"]
    ident = V.identity()
    assert conjugate_map(ident).matrix.is_identity()
    maps = [ModuleMap(V, V, T) for T in intertwiners(V, V)]
    T = ModuleMap(V, V, maps[0].matrix.scale(Scalar.rational(3)))
    U = maps[0]
    lhs = conjugate_map(T.compose(U)).matrix
    assert lhs == conjugate_map(T).matrix @ conjugate_map(U).matrix


def test_conjugate_map_of_i():
    H = trivial_algebra(order=4)
    V = trivial_module(H)
    T = ModuleMap(V, V, Matrix([[I_]]))
    assert conjugate_map(T).matrix == Matrix([[-I_]])


def test_psi_of_conjugation_map():
    for V in mods("sweedler(1)"):
        c = conjugation_map(V)
        assert c.is_antimodule()
        f = psi(c)
        assert f.matrix.is_identity() and f.is_module_map()
        assert psi_inv(f, V).matrix == c.matrix


def test_psi_scalar_conjugation_is_gamma():
    H = trivial_algebra(order=4)
    V = trivial_module(H)
    f = psi(AntimoduleMap(V, V, Matrix([[1]]), "conj"))
    assert f.matrix == Matrix([[1]])


def test_fixture_stars_are_antimodule_maps():
    b = bundle("sweedler(1)")
    for V, D in b.star_modules():
        assert is_antimodule(D, V, V)
        assert psi(AntimoduleMap(V, V, D)).is_module_map()


def test_psi_rejects():
    V = bundle("group_z2").modules["sign"]
    W = bundle("group_z2").modules["trivial"]
    with pytest.raises(NotAntimodule):
        psi(AntimoduleMap(V, W, Matrix([[1]])))


@pytest.mark.parametrize("name", FIXTURES)
def test_natural_isos(name):
    ms = mods(name)
    for V in ms:
        for W in ms:
            maps, rep = natural_isos(V, W, U=W)
            assert rep.passed, rep.failed_names()
            assert maps["gamma"].matrix == Matrix([[1]])
            assert maps["rho"].matrix == swap_matrix(V.dim, W.dim)
            for k in ("sigma", "pi", "beta_dual", "beta_hom"):
                assert maps[k].matrix.is_identity()


def test_rho_associativity_triples():
    ms = mods("sweedler(1)")
    for U in ms:
        for V in ms:
            for W in ms:
                assert check_rho_associativity(U, V, W).passed


def test_naturality():
    ms = mods("group_z2")
    maps = [ModuleMap(V, W, T) for V in ms for W in ms for T in intertwiners(V, W)]
    for f in maps:
        for g in maps:
            assert check_naturality(f, g).passed


def test_tilde_on_sign_equals_bar():
    V = bundle("group_z2").modules["sign"]
    assert tilde_conjugate_module(V).same_action(conjugate_module(V))


@pytest.mark.parametrize("name", FIXTURES)
def test_tilde_relations(name):
    for V in mods(name):
        assert check_tilde_relations(V).passed
