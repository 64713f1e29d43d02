import math

import pytest

from quathom import groebner as gb
from quathom.errors import BudgetExceeded, RingMismatch
from quathom.series import Ideal, SeriesRing, grevlex_key


def test_monomials_of_degree_count_and_order():
    monos = gb.monomials_of_degree(3, 4)
    assert len(monos) == math.comb(4 + 2, 2)
    keys = [grevlex_key(e) for e in monos]
    assert keys == sorted(keys, reverse=True)
    assert all(sum(e) == 4 for e in monos)


def test_block_key_eliminates_leading_block():
    key = gb.block_key(1)
    # Any power of the eliminated variable beats any power of the others.
    assert key((1, 0, 0)) > key((0, 5, 5))
    assert key((0, 2, 0)) > key((0, 1, 1))


def test_reduced_groebner_basis_twisted_cubic_style():
    ring = SeriesRing(("x", "y", "z"), 6)
    x, y, z = ring.var(0), ring.var(1), ring.var(2)
    basis = gb.reduced_groebner_basis(ring, [y - x * x, z - x * y])
    ideal = Ideal(ring, [y - x * x, z - x * y])
    # Mutual membership: the basis generates the same ideal.
    assert Ideal(ring, list(basis)).equals(ideal)
    # The classical syzygy element is in the ideal.
    assert ideal.contains(x * z - y * y)


def test_groebner_basis_is_deterministic():
    ring = SeriesRing(("x", "y"), 5)
    x, y = ring.var(0), ring.var(1)
    gens = [x * x + y, x * y + x]
    b1 = gb.reduced_groebner_basis(ring, gens)
    b2 = gb.reduced_groebner_basis(ring, list(reversed(gens)))
    assert [str(g) for g in b1] == [str(g) for g in b2]


def test_truncation_basis_reduces_high_degrees_to_zero():
    ring = SeriesRing(("x", "y"), 3)
    basis = gb.truncation_groebner_basis(ring, [])
    f = ring.var(0) ** 3  # degree 3 survives, degree 4 would not exist
    assert not gb.normal_form(ring, f, basis).is_zero()
    g = ring.var(0) ** 2 * ring.var(1)
    assert gb.normal_form(ring, g, basis) == g


def test_elimination_ideal():
    # Eliminate t from (t*x, (1 - t)*y): the intersection (x) ∩ (y) = (x*y).
    ring = SeriesRing(("x", "y"), 4)
    meet = gb.intersect_ideals(
        ring, Ideal(ring, [ring.var(0)]), Ideal(ring, [ring.var(1)])
    )
    assert meet.equals(Ideal(ring, [ring.var(0) * ring.var(1)]))


def test_intersection_is_commutative_and_contained():
    ring = SeriesRing(("x", "y"), 4)
    x, y = ring.var(0), ring.var(1)
    i1 = Ideal(ring, [x + y])
    i2 = Ideal(ring, [x - y, x * x])
    m12 = i1.intersect(i2)
    m21 = i2.intersect(i1)
    assert m12.equals(m21)
    for g in m12.generators:
        assert i1.contains(g) and i2.contains(g)


def test_budget_exceeded(monkeypatch):
    ring = SeriesRing(("x", "y", "z"), 5)
    x, y, z = ring.var(0), ring.var(1), ring.var(2)
    gens = [x * x + y * z, y * y + x * z, z * z + x * y]
    with pytest.raises(BudgetExceeded):
        gb.reduced_groebner_basis(ring, gens, budget=1)
    monkeypatch.setenv("QUATHOM_BUDGET", "1")
    with pytest.raises(BudgetExceeded):
        gb.reduced_groebner_basis(ring, gens)
    monkeypatch.setenv("QUATHOM_BUDGET", "not-a-number")
    assert gb.current_budget() == gb.DEFAULT_BUDGET


def test_float_rings_are_rejected():
    ring = SeriesRing(("x",), 4, "float")
    with pytest.raises(RingMismatch):
        gb.reduced_groebner_basis(ring, [ring.var(0)])
