import random

import pytest

from orthlat.errors import NotUnimodularError
from orthlat.isometry import membership, reflection, transvection
from orthlat.jacobi import (
    heis_decompose,
    heis_embed,
    jacobi_embed,
    jacobi_lattice,
    paramodular_flip_check,
    s_element,
    sigma1_conjugation_sign,
    sl2_generator_checks,
    stable_group_generators,
    verify_plane_identities,
)
from orthlat.lattice import build
from orthlat.linalg import Mat


@pytest.fixture(scope="module")
def ja2():
    l0 = build("A2")
    lat, split = jacobi_lattice(l0)
    return l0, lat, split


class TestLattice:
    def test_basis_order(self, ja2):
        _, lat, split = ja2
        assert lat.labels == ("e", "e1", "a", "b", "f1", "f")
        assert lat.inner(split.e, split.f) == 1
        assert lat.inner(split.e1, split.f1) == 1
        assert lat.norm(split.e) == 0

    def test_det(self, ja2):
        l0, lat, _ = ja2
        assert lat.det() == l0.det()


class TestEmbeddings:
    def test_generator_correspondences(self, ja2):
        _, _, split = ja2
        assert all(c.holds for c in sl2_generator_checks(split))

    def test_shear_is_plane_transvection(self, ja2):
        _, lat, split = ja2
        assert jacobi_embed(split, Mat([[1, 1], [0, 1]])) \
            == transvection(lat, split.e, split.f1)
        assert jacobi_embed(split, Mat([[1, 0], [-1, 1]])) \
            == transvection(lat, split.f, split.e1)

    def test_heisenberg_center(self, ja2):
        _, lat, split = ja2
        assert heis_embed(split, [0, 0], [0, 0], 1) \
            == transvection(lat, split.e, split.e1)

    def test_rejects_non_unimodular(self, ja2):
        _, _, split = ja2
        with pytest.raises(NotUnimodularError):
            jacobi_embed(split, Mat([[1, 0], [0, 2]]))
        with pytest.raises(NotUnimodularError):
            jacobi_embed(split, Mat([[0, 1], [1, 0]]))

    def test_homomorphism(self, ja2):
        _, _, split = ja2
        rng = random.Random(1)
        mats = [Mat([[1, 1], [0, 1]]), Mat([[1, 0], [-1, 1]]), Mat([[0, -1], [1, 0]])]
        for _ in range(10):
            a, b = rng.choice(mats), rng.choice(mats)
            assert jacobi_embed(split, a) * jacobi_embed(split, b) \
                == jacobi_embed(split, a @ b)


class TestHeisenberg:
    def test_group_law(self, ja2):
        l0, _, split = ja2
        rng = random.Random(2)
        s0 = l0.gram
        for _ in range(25):
            u = [rng.randint(-3, 3) for _ in range(2)]
            v = [rng.randint(-3, 3) for _ in range(2)]
            up = [rng.randint(-3, 3) for _ in range(2)]
            vp = [rng.randint(-3, 3) for _ in range(2)]
            z, zp = rng.randint(-3, 3), rng.randint(-3, 3)
            prod = heis_embed(split, u, v, z) * heis_embed(split, up, vp, zp)
            uu, vv, zz = heis_decompose(split, prod)
            pair = sum(u[i] * int(s0[i, j]) * vp[j]
                       for i in range(2) for j in range(2))
            # empirically determined center offset of the composition
            assert uu == [a + b for a, b in zip(u, up)]
            assert vv == [a + b for a, b in zip(v, vp)]
            assert zz == z + zp - pair

    def test_semidirect_shape(self, ja2):
        _, _, split = ja2
        rng = random.Random(3)
        for _ in range(15):
            u = [rng.randint(-2, 2) for _ in range(2)]
            v = [rng.randint(-2, 2) for _ in range(2)]
            z = rng.randint(-2, 2)
            a = Mat([[1, 1], [0, 1]]) if rng.random() < 0.5 else Mat([[0, -1], [1, 0]])
            ja = jacobi_embed(split, a)
            conj = ja * heis_embed(split, u, v, z) * ja.inverse()
            heis_decompose(split, conj)  # raises if not of Heisenberg shape

    def test_full_decomposition(self, ja2):
        from orthlat.jacobi import jacobi_decompose

        _, _, split = ja2
        rng = random.Random(7)
        mats = [Mat([[1, 1], [0, 1]]), Mat([[1, 0], [-1, 1]]), Mat([[0, -1], [1, 0]])]
        for _ in range(15):
            a = rng.choice(mats) @ rng.choice(mats)
            u = [rng.randint(-3, 3) for _ in range(2)]
            v = [rng.randint(-3, 3) for _ in range(2)]
            z = rng.randint(-3, 3)
            g = jacobi_embed(split, a) * heis_embed(split, u, v, z)
            aa, uu, vv, zz = jacobi_decompose(split, g)
            assert (aa, uu, vv, zz) == (a, u, v, z)
        s2 = s_element(split) * s_element(split)
        assert jacobi_decompose(split, s2) == (Mat([[-1, 0], [0, -1]]), [0, 0], [0, 0], 0)
        lat = split.lattice
        with pytest.raises(ValueError):
            jacobi_decompose(split, reflection(lat, split.e - split.f))

    def test_membership_stable_so_plus(self, ja2):
        _, lat, split = ja2
        rng = random.Random(4)
        for _ in range(10):
            g = (jacobi_embed(split, Mat([[1, 1], [0, 1]]))
                 * heis_embed(split, [rng.randint(-2, 2), 0], [0, 1], rng.randint(-2, 2)))
            mem = membership(lat, g.mat)
            assert mem.in_stable_so_plus


class TestPlaneIdentities:
    def test_s_action(self, ja2):
        _, _, split = ja2
        s = s_element(split)
        assert s.apply(split.e) == -split.e1
        assert s.apply(split.f) == -split.f1

    def test_s_squared(self, ja2):
        _, _, split = ja2
        s = s_element(split)
        assert s * s == jacobi_embed(split, Mat([[-1, 0], [0, -1]]))
        for v in (split.e, split.f, split.e1, split.f1):
            assert (s * s).apply(v) == -v

    def test_sigma1_transvection_conjugation(self, ja2):
        _, lat, split = ja2
        s1 = reflection(lat, split.e1 - split.f1)
        assert s1 * transvection(lat, split.f, split.e1) * s1 \
            == transvection(lat, split.f, split.f1)

    def test_conjugation_sign_fixed(self, ja2):
        _, _, split = ja2
        assert sigma1_conjugation_sign(split) == -1

    def test_full_report(self, ja2):
        _, _, split = ja2
        checks = verify_plane_identities(split, [[1, 0], [0, 1], [2, -3]])
        assert all(c.holds for c in checks)


class TestParamodular:
    EXPECTED = Mat([
        [0, 0, 0, 0, -1],
        [0, 0, 0, -1, 0],
        [0, 0, 1, 0, 0],
        [0, -1, 0, 0, 0],
        [-1, 0, 0, 0, 0],
    ])

    @pytest.mark.parametrize("t", [1, 2, 5])
    def test_flip_matrix(self, t):
        from orthlat.jacobi import paramodular_lattice
        lat, split = paramodular_lattice(t)
        prod = reflection(lat, split.e + split.f) * reflection(lat, split.e1 + split.f1)
        assert prod.mat == self.EXPECTED
        assert lat.norm(split.e + split.f) == 2
        assert prod.det() == 1

    def test_mirrors_commute(self):
        from orthlat.jacobi import paramodular_lattice
        lat, split = paramodular_lattice(3)
        a = reflection(lat, split.e + split.f)
        b = reflection(lat, split.e1 + split.f1)
        assert a * b == b * a

    @pytest.mark.parametrize("t", [1, 2, 5])
    def test_check_report(self, t):
        assert all(c.holds for c in paramodular_flip_check(t))

    def test_generator_list(self):
        gens = stable_group_generators(2)
        assert gens["extra"] == "sigma_(e1-f1)"
        assert "t(e,e1)" in gens["jacobi"]
