import random
from fractions import Fraction

import pytest

from orthlat.discform import (
    class_of,
    discriminant_form,
    enumerate_orth_d,
    identity_automorphism,
    induced_map,
    is_stable,
)
from orthlat.errors import (
    NotIntegralError,
    NotIsometryError,
    NotPrimitiveError,
    TooLargeError,
)
from orthlat.eichler import standard_splitting
from orthlat.isometry import reflection
from orthlat.lattice import build
from orthlat.linalg import Mat
from orthlat.sampling import integral_transvection_atom


def minus_identity(n):
    return Mat([[-1 if i == j else 0 for j in range(n)] for i in range(n)])


class TestForm:
    def test_unimodular_trivial(self):
        form = discriminant_form(build("U"))
        assert form.orders == ()
        assert len(form) == 1

    def test_cyclic_value(self):
        for d in (1, 2, 3, 5):
            form = discriminant_form(build(f"<-{2 * d}>"))
            assert form.orders == (2 * d,)
            q = form.q(form.element([1]))
            # q(gen) = -1/(2d) up to 2Z, stored in [0, 2)
            assert (q + Fraction(1, 2 * d)) % 2 == 0

    def test_u2(self):
        form = discriminant_form(build("U(2)"))
        assert form.orders == (2, 2)
        x, y = form.element([1, 0]), form.element([0, 1])
        assert form.b(x, y) == Fraction(1, 2)
        assert form.q(x) == 0 and form.q(y) == 0
        assert form.q(x + y) == 1

    def test_order_is_determinant(self):
        for spec in ("2U+<-6>", "U(2)", "A2(-3)", "2U+A2"):
            lat = build(spec)
            assert len(discriminant_form(lat)) == abs(lat.det())

    def test_q_is_quadratic(self):
        form = discriminant_form(build("A2(-3)+<-4>"))
        rng = random.Random(0)
        els = form.elements()
        for _ in range(60):
            x, y = rng.choice(els), rng.choice(els)
            n = rng.randint(-3, 3)
            assert (form.q(x + y) - form.q(x) - form.q(y) - 2 * form.b(x, y)) % 2 == 0
            assert (form.q(n * x) - n * n * form.q(x)) % 2 == 0


class TestClassOf:
    def test_zero_class_examples(self):
        lat = build("2U+<-6>")
        assert class_of(lat, [1, 0, 0, 0, 0]).is_zero()
        assert class_of(lat, [1, -1, 0, 0, 0]).is_zero()

    def test_generator_class(self):
        lat = build("2U+<-6>")
        cls = class_of(lat, [0, 0, 0, 0, 1])
        assert cls.order() == 6

    def test_order_equals_divisor(self):
        lat = build("2U+<-4>")
        for v in lat.enumerate_vectors(-2, 2)[::7]:
            assert class_of(lat, v).order() == lat.divisor(v)

    def test_not_primitive(self):
        with pytest.raises(NotPrimitiveError):
            class_of(build("U"), [2, 0])


class TestInducedMap:
    def test_transvections_stable(self):
        lat = build("2U+<-6>")
        split = standard_splitting(lat)
        rng = random.Random(1)
        for _ in range(25):
            atom = integral_transvection_atom(split, rng)
            assert is_stable(lat, atom.to_isometry(lat).mat)

    def test_minus_id_not_stable(self):
        for d in (2, 3, 5):
            lat = build(f"2U+<-{2 * d}>")
            assert not is_stable(lat, minus_identity(5))

    def test_minus_id_stable_order_two(self):
        assert is_stable(build("2U+<-2>"), minus_identity(5))

    def test_root_reflection_stable(self):
        lat = build("2U+<-6>")
        assert is_stable(lat, reflection(lat, [1, -1, 0, 0, 0]).mat)

    def test_rejects_non_isometry(self):
        lat = build("U")
        with pytest.raises(NotIsometryError):
            induced_map(lat, Mat([[2, 0], [0, 1]]))
        with pytest.raises(NotIntegralError):
            induced_map(lat, Mat([[Fraction(1, 2), 0], [0, 2]]))

    def test_homomorphism(self):
        lat = build("2U+<-6>")
        split = standard_splitting(lat)
        rng = random.Random(2)
        for _ in range(15):
            g = integral_transvection_atom(split, rng).to_isometry(lat)
            h = reflection(lat, rng.choice(lat.enumerate_vectors(-2, 1)))
            lhs = induced_map(lat, (g * h).mat)
            rhs = induced_map(lat, g.mat).compose(induced_map(lat, h.mat))
            assert lhs == rhs

    def test_preserves_q_and_b(self):
        lat = build("2U+A2(-3)")
        form = discriminant_form(lat)
        rng = random.Random(9)
        split = standard_splitting(lat)
        maps = [minus_identity(lat.rank)]
        maps += [integral_transvection_atom(split, rng).to_isometry(lat).mat
                 for _ in range(5)]
        els = form.elements()
        for mat in maps:
            aut = induced_map(lat, mat)
            for _ in range(20):
                x, y = rng.choice(els), rng.choice(els)
                assert form.q(aut.apply(x)) == form.q(x)
                assert form.b(aut.apply(x), aut.apply(y)) == form.b(x, y)


class TestEnumerate:
    def test_trivial(self):
        auts = enumerate_orth_d(discriminant_form(build("U")))
        assert len(auts) == 1
        assert auts[0].is_identity()

    def test_cyclic_counts_match_unit_oracle(self):
        for d in range(1, 13):
            form = discriminant_form(build(f"2U+<-{2 * d}>"))
            auts = enumerate_orth_d(form)
            units = [u for u in range(2 * d) if (u * u - 1) % (4 * d) == 0]
            assert len(auts) == len(units)
            # the automorphisms are exactly x -> u x for those units
            assert sorted(a.images[0].coords[0] for a in auts) == units

    def test_u2_order(self):
        form = discriminant_form(build("U(2)"))
        assert len(enumerate_orth_d(form)) == 2

    def test_group_closure(self):
        form = discriminant_form(build("2U+<-12>"))
        auts = enumerate_orth_d(form)
        keys = {a.key() for a in auts}
        for a in auts:
            for b in auts:
                assert a.compose(b).key() in keys

    def test_cap(self):
        with pytest.raises(TooLargeError):
            enumerate_orth_d(discriminant_form(build("<-100>")), cap=10)
