import random
from fractions import Fraction

import pytest

from quathom.errors import ParseError, RingMismatch, SingularLinearPart, ValidationError
from quathom.gaussian import GaussianRational
from quathom.series import (
    Ideal,
    SeriesRing,
    SubstitutionMap,
    TruncatedSeries,
    compose_maps,
    grevlex_key,
    invert_map,
    substitute,
)


@pytest.fixture
def ring():
    return SeriesRing(("x", "y"), 5)


def test_ring_rejects_reserved_and_bad_input():
    with pytest.raises(ValueError):
        SeriesRing(("i", "x"), 4)
    with pytest.raises(ValueError):
        SeriesRing(("x", "x"), 4)
    with pytest.raises(ValueError):
        SeriesRing(("x",), 1)


def test_truncation_in_arithmetic(ring):
    x = ring.var("x")
    f = (1 + x) ** 9
    assert f.degree() == 5
    assert f.coeffs[(5, 0)] == GaussianRational(126)
    assert (x ** 6).is_zero()


def test_string_round_trip(ring):
    f = ring.from_string("x^2*y - 3/2*x + (1 + i)*y^3")
    assert str(f) == "x^2*y + (1+i)*y^3 - 3/2*x"
    assert ring.from_string(str(f)) == f


def test_parse_errors_carry_positions(ring):
    with pytest.raises(ParseError) as err:
        ring.from_string("x^^2")
    assert err.value.line == 1
    assert err.value.column == 3
    with pytest.raises(ValidationError):
        ring.from_string("x + z")
    with pytest.raises(ParseError):
        ring.from_string("x / y")


def test_grevlex_key_orders_by_degree_then_reverse_lex():
    assert grevlex_key((2, 0)) > grevlex_key((1, 1)) > grevlex_key((0, 2))
    assert grevlex_key((0, 3)) > grevlex_key((2, 0))


def test_division_only_by_constants(ring):
    x = ring.var("x")
    assert x / 2 == x * Fraction(1, 2)
    half_i = (x * GaussianRational(0, 1)) / GaussianRational(0, 2)
    assert half_i == x / 2


def test_graded_component_and_min_degree(ring):
    f = ring.from_string("x + x*y + y^3")
    assert f.graded_component(2) == ring.from_string("x*y")
    assert f.min_degree() == 1
    assert ring.zero().min_degree() is None


def test_ring_mismatch_raises(ring):
    other = SeriesRing(("x", "y"), 4)
    with pytest.raises(RingMismatch):
        ring.var("x") + other.var("x")


def test_substitution_is_ring_homomorphism(ring):
    rng = random.Random(11)

    def rand(min_deg=0):
        data = {}
        for _ in range(5):
            a, b = rng.randrange(4), rng.randrange(4)
            if min_deg <= a + b <= ring.trunc:
                data[(a, b)] = Fraction(rng.randrange(-4, 5))
        return ring.series(data)

    for _ in range(20):
        m = SubstitutionMap(
            ring,
            [ring.var(0) * 2 + rand(2), ring.var(1) - ring.var(0) + rand(2)],
        )
        f, g = rand(), rand()
        assert m(f * g) == m(f) * m(g)
        assert m(f + g) == m(f) + m(g)
        assert substitute(m, f) == m(f)


def test_substitution_rejects_constant_terms(ring):
    with pytest.raises(ValueError):
        SubstitutionMap(ring, [ring.one(), ring.var(1)])


def test_composition_matches_sequential_application(ring):
    x, y = ring.var(0), ring.var(1)
    g = SubstitutionMap(ring, [x + y * y, y])
    h = SubstitutionMap(ring, [x * 2, y - x])
    gh = compose_maps(g, h)
    f = ring.from_string("x*y + x^3")
    assert gh(f) == g(h(f))


def test_inverse_catalan_fixture():
    ring = SeriesRing(("x",), 5)
    x = ring.var(0)
    m = SubstitutionMap(ring, [x + x * x])
    inv = invert_map(m)
    assert inv.images[0] == ring.from_string(
        "x - x^2 + 2*x^3 - 5*x^4 + 14*x^5"
    )
    assert m(inv.images[0]) == x
    assert inv(m.images[0]) == x


def test_inverse_requires_invertible_linear_part(ring):
    with pytest.raises(SingularLinearPart):
        SubstitutionMap(ring, [ring.var(0), ring.var(0)]).inverse()


def test_linear_map_constructors(ring):
    d = SubstitutionMap.diagonal(ring, Fraction(1, 2))
    assert d.linear_matrix() == [
        [GaussianRational(Fraction(1, 2)), GaussianRational(0)],
        [GaussianRational(0), GaussianRational(Fraction(1, 2))],
    ]
    assert SubstitutionMap.identity(ring).is_identity()


def test_ideal_membership_and_normal_form(ring):
    x, y = ring.var(0), ring.var(1)
    ideal = Ideal(ring, [y - x * x])
    assert ideal.contains(y * y - x ** 4)
    assert not ideal.contains(x)
    # Grevlex leads x^2 for y - x^2, so x-powers rewrite into y-powers.
    nf = ideal.normal_form(x ** 4)
    assert nf == y * y


def test_ideal_equality_modulo_truncation():
    ring = SeriesRing(("x",), 4)
    x = ring.var(0)
    # (x) and (x + x^2) agree modulo m^5: the unit 1 + x is invertible.
    assert Ideal(ring, [x]).equals(Ideal(ring, [x + x * x]))
    assert not Ideal(ring, [x * x]).equals(Ideal(ring, [x]))


def test_ideal_intersection_of_coordinate_lines():
    ring = SeriesRing(("x", "y"), 4)
    x, y = ring.var(0), ring.var(1)
    meet = Ideal(ring, [x]).intersect(Ideal(ring, [y]))
    assert meet.equals(Ideal(ring, [x * y]))


def test_ideal_rejects_units(ring):
    with pytest.raises(ValueError):
        Ideal(ring, [ring.one() + ring.var(0)])


def test_hashable_and_immutable_semantics(ring):
    f = ring.from_string("x + y^2")
    g = ring.from_string("y^2 + x")
    assert f == g
    assert hash(f) == hash(g)
    assert len({f, g}) == 1
