import random
from fractions import Fraction

import pytest

from conftest import load, random_element
from twistgrowth.group import (
    Endomorphism,
    GroupElement,
    VAGroupData,
    apply_endo,
    inverse,
    multiply,
    product,
    twist_data,
    twisted_commutator,
    twisted_conjugate,
    validate_endo,
    validate_group,
)
from twistgrowth.intlin import IntMatrix


def affine(G, g, shifts):
    """Affine map v -> M_a v + x + s_a as an (n+1)x(n+1) Fraction matrix."""
    n = G.n
    M = G.action[g.coset].tolist()
    s = shifts[g.coset]
    rows = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(g.vector[i]) + s[i]]
            for i in range(n)]
    return rows + [[Fraction(0)] * n + [Fraction(1)]]


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


# rational translation parts making (x,a) -> affine map a homomorphism
AFFINE_SHIFTS = {
    "p2_group": [(0, 0), (0, 0)],
    "p4_group": [(0, 0)] * 4,
    "klein_group": [(0, 0), (Fraction(1, 2), 0)],
}


class TestArithmetic:
    def test_worked_product(self, p2):
        G = p2["G"]
        g = G.element((1, 2), "t")
        h = G.element((3, 4), "t")
        assert multiply(G, g, h) == G.element((-2, -2), "e")

    def test_inverses(self, p2):
        G = p2["G"]
        assert inverse(G, G.element((1, 2), "t")) == G.element((1, 2), "t")
        assert inverse(G, G.element((1, 2), "e")) == G.element((-1, -2), "e")

    def test_klein_cocycle(self):
        (G,) = load("klein_group")
        t = G.coset_element(1)
        assert multiply(G, t, t) == G.element((1, 0), "e")
        assert inverse(G, t) == G.element((-1, 0), "t")

    @pytest.mark.parametrize("name", ["p2_group", "p4_group", "klein_group"])
    def test_affine_representation(self, name):
        (G,) = load(name)
        shifts = AFFINE_SHIFTS[name]
        rng = random.Random(1)
        for _ in range(300):
            g, h = random_element(G, rng), random_element(G, rng)
            assert affine(G, multiply(G, g, h), shifts) == matmul(
                affine(G, g, shifts), affine(G, h, shifts))

    def test_group_axioms(self, pair):
        G, phi = pair
        rng = random.Random(42)
        e = G.identity()
        for _ in range(1000):
            g, h, k = (random_element(G, rng) for _ in range(3))
            assert multiply(G, multiply(G, g, h), k) == multiply(G, g, multiply(G, h, k))
            assert multiply(G, g, inverse(G, g)) == e == multiply(G, inverse(G, g), g)
            assert multiply(G, g, e) == g == multiply(G, e, g)
            assert apply_endo(G, phi, multiply(G, g, h)) == multiply(
                G, apply_endo(G, phi, g), apply_endo(G, phi, h))

    def test_product_and_errors(self, p2):
        G = p2["G"]
        assert product(G) == G.identity()
        with pytest.raises(ValueError):
            multiply(G, GroupElement((1,), 0), G.identity())
        with pytest.raises(ValueError):
            multiply(G, GroupElement((1, 2), 5), G.identity())


class TestValidation:
    def test_shipped_data_valid(self, pair):
        G, phi = pair
        assert validate_group(G).ok
        assert validate_endo(G, phi).ok

    def test_broken_multiplication(self, p2):
        G = p2["G"]
        bad = VAGroupData.build(2, ["e", "t"], [[0, 1], [1, 1]], G.cocycle, G.action)
        rep = validate_group(bad)
        assert not rep.ok
        assert any("permutation" in f for f in rep.failures)

    def test_broken_cocycle_names_triple(self, p2):
        G = p2["G"]
        cocycle = [[(0, 0), (0, 0)], [(0, 0), (1, 0)]]
        bad = VAGroupData.build(2, ["e", "t"], G.mult, cocycle, G.action)
        rep = validate_group(bad)
        assert not rep.ok
        assert any("(a,b,c)=" in f for f in rep.failures)

    def test_non_unimodular_action(self, p2):
        G = p2["G"]
        action = [IntMatrix.identity(2), IntMatrix.from_rows([[2, 0], [0, 1]])]
        rep = validate_group(VAGroupData.build(2, ["e", "t"], G.mult, G.cocycle, action))
        assert not rep.ok

    def test_swap_endomorphism_rejected(self, p2):
        G = p2["G"]
        swap = Endomorphism.build([[0, 1], [1, 0]], [G.identity(), G.identity()])
        rep = validate_endo(G, swap)
        assert not rep.ok
        assert any("intertwining" in f for f in rep.failures)

    def test_nonmultiplicative_rep_image(self):
        G, _ = load("klein_group", "klein_id")
        # intertwines, but t^2 = (1,0) is not sent to phi(t)^2
        phi = Endomorphism.build([[1, 0], [0, 1]], [G.identity(), G.element((0, 0), "e")])
        assert not validate_endo(G, phi).ok

    def test_identity_image_required(self, p2):
        G = p2["G"]
        phi = Endomorphism.build([[1, 0], [0, 1]], [G.element((1, 0), "e"), G.coset_element(1)])
        assert not validate_endo(G, phi).ok


class TestEndomorphism:
    def test_worked_images(self, p2):
        G, phi = p2["G"], p2["phi1"]
        assert apply_endo(G, phi, G.identity()) == G.identity()
        assert apply_endo(G, phi, G.element((5, 3), "e")) == G.element((-5, -3), "e")

    def test_singleton_class_of_t(self, p2):
        G, phi = p2["G"], p2["phi1"]
        t = G.element((0, 0), "t")
        assert twisted_conjugate(G, phi, G.element((1, 0), "e"), t) == t
        assert twisted_conjugate(G, phi, G.identity(), t) == t


class TestTwistData:
    def test_worked_example(self, p2):
        G, phi = p2["G"], p2["phi1"]
        de, dt = twist_data(G, phi, 0), twist_data(G, phi, 1)
        assert de.stabiliser == dt.stabiliser == (0, 1)
        assert de.twisted_matrix == IntMatrix.from_rows([[2, 0], [0, 2]])
        assert dt.twisted_matrix == IntMatrix.zeros(2, 2)

    def test_commuting_quotient_fixes_everything(self):
        G, phi = load("p4_group", "p4_rotation")
        for a in range(G.m):
            assert twist_data(G, phi, a).stabiliser == tuple(range(G.m))

    def test_twisted_matrix_commutes(self, pair):
        G, phi = pair
        for a in range(G.m):
            d = twist_data(G, phi, a)
            for c in d.stabiliser:
                Mc = G.action[c]
                assert d.twisted_matrix @ Mc == Mc @ d.twisted_matrix

    def test_shifts_realise_conjugation(self, pair):
        # conjugating (x,a) by a coset rep in the stabiliser lands in coset a
        G, phi = pair
        rng = random.Random(9)
        for a in range(G.m):
            d = twist_data(G, phi, a)
            for c in d.stabiliser:
                assert twisted_commutator(G, phi, a, c).coset == 0
                x = tuple(rng.randint(-5, 5) for _ in range(G.n))
                g = twisted_conjugate(G, phi, G.coset_element(c), GroupElement(x, a))
                assert g.coset == a
