"""Buchberger's algorithm and ideal arithmetic over Gaussian rationals.

The engine works on raw {exponent: coefficient} dicts with NO degree
truncation, so every Groebner basis here is a genuine polynomial Groebner
basis.  Truncated-ring semantics ("valid modulo degree N+1") are obtained by
adjoining all monomials of degree N+1 as extra generators, which realizes
the ideal m^{N+1} exactly.

Orders are degree-compatible: graded reverse lexicographic for plain bases,
and a block order (grevlex on the eliminated leading block, then grevlex on
the rest) for elimination.
"""

import heapq
import itertools
import os

from .errors import BudgetExceeded, RingMismatch
from .gaussian import GaussianRational
from .series import TruncatedSeries, grevlex_key

DEFAULT_BUDGET = 100000


def current_budget():
    """Pair budget; the QUATHOM_BUDGET environment variable overrides it."""
    try:
        return int(os.environ.get("QUATHOM_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def block_key(nelim):
    """Elimination order key: the first ``nelim`` variables dominate."""

    def key(exp):
        return (grevlex_key(exp[:nelim]), grevlex_key(exp[nelim:]))

    return key


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, grevlex-descending."""
    exps = []
    for cuts in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exp = []
        for c in cuts:
            exp.append(c - prev - 1)
            prev = c
        exp.append(degree + nvars - 2 - prev)
        exps.append(tuple(exp))
    exps.sort(key=grevlex_key, reverse=True)
    return exps


# -- raw polynomial helpers -------------------------------------------------


def _require_exact(ring):
    if ring.field != "exact":
        raise RingMismatch("Groebner computations require the exact backend")


def _leading(poly, key):
    exp = max(poly, key=key)
    return exp, poly[exp]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled_shifted(target, poly, coeff, shift):
    """target -= coeff * x^shift * poly, in place."""
    for exp, c in poly.items():
        key = tuple(a + b for a, b in zip(exp, shift))
        acc = target.get(key)
        val = coeff * c
        acc = -val if acc is None else acc - val
        if acc:
            target[key] = acc
        elif key in target:
            del target[key]


def normal_form_raw(poly, basis, key):
    """Full normal form of a raw dict against [(lead_exp, lead_coeff, dict)]."""
    work = dict(poly)
    remainder = {}
    while work:
        exp = max(work, key=key)
        coeff = work[exp]
        for lead_exp, lead_coeff, g in basis:
            if _divides(lead_exp, exp):
                shift = tuple(a - b for a, b in zip(exp, lead_exp))
                _sub_scaled_shifted(work, g, coeff / lead_coeff, shift)
                break
        else:
            remainder[exp] = coeff
            del work[exp]
    return remainder


def buchberger_raw(gens, key, budget=None):
    """Groebner basis (not yet reduced) of raw polynomial dicts."""
    budget = budget if budget is not None else current_budget()
    basis = []
    for g in gens:
        if g:
            lead_exp, lead_coeff = _leading(g, key)
            basis.append((lead_exp, lead_coeff, g))

    counter = itertools.count()
    heap = []

    def push_pairs(new_index):
        lead_new = basis[new_index][0]
        for i in range(new_index):
            lead_i = basis[i][0]
            lcm = tuple(max(a, b) for a, b in zip(lead_i, lead_new))
            heapq.heappush(
                heap, (sum(lcm), next(counter), i, new_index, lcm)
            )

    for idx in range(len(basis)):
        push_pairs(idx)

    processed = 0
    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        gi = basis[i]
        gj = basis[j]
        # S-polynomial of two monomials is identically zero.
        if len(gi[2]) == 1 and len(gj[2]) == 1:
            continue
        # Product (coprime leading monomials) criterion.
        if all(a + b == c for a, b, c in zip(gi[0], gj[0], lcm)):
            continue
        processed += 1
        if processed > budget:
            raise BudgetExceeded("Groebner pair budget %d exhausted" % budget)
        s = {}
        _sub_scaled_shifted(
            s, gi[2], -1 / gi[1], tuple(a - b for a, b in zip(lcm, gi[0]))
        )
        _sub_scaled_shifted(
            s, gj[2], 1 / gj[1], tuple(a - b for a, b in zip(lcm, gj[0]))
        )
        r = normal_form_raw(s, basis, key)
        if r:
            lead_exp, lead_coeff = _leading(r, key)
            basis.append((lead_exp, lead_coeff, r))
            push_pairs(len(basis) - 1)
    return basis


def interreduce_raw(basis, key):
    """Reduced Groebner basis: minimal, monic, fully inter-reduced, sorted."""
    # Minimalize: drop entries whose lead is divisible by another lead.
    minimal = []
    for idx, (lead_exp, lead_coeff, g) in enumerate(basis):
        redundant = False
        for jdx, (other_exp, _, _) in enumerate(basis):
            if jdx == idx:
                continue
            if _divides(other_exp, lead_exp) and (
                other_exp != lead_exp or jdx < idx
            ):
                redundant = True
                break
        if not redundant:
            minimal.append((lead_exp, lead_coeff, g))
    # Inter-reduce tails.
    reduced = []
    for idx, (lead_exp, lead_coeff, g) in enumerate(minimal):
        others = [minimal[j] for j in range(len(minimal)) if j != idx]
        r = normal_form_raw(g, others, key)
        if not r:
            continue
        le, lc = _leading(r, key)
        monic = {e: c / lc for e, c in r.items()}
        reduced.append((le, GaussianRational(1), monic))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return reduced


# -- conversions between ring elements and raw dicts ------------------------


def _to_raw(f):
    return {e: c for e, c in f.coeffs.items()}


def _from_raw(ring, raw):
    data = {e: c for e, c in raw.items() if sum(e) <= ring.trunc and c}
    return TruncatedSeries(ring, data)


def truncation_monomials(ring):
    """Generators of m^{N+1} as raw dicts."""
    return [
        {exp: GaussianRational(1)}
        for exp in monomials_of_degree(ring.nvars, ring.trunc + 1)
    ]


# -- ring-facing operations --------------------------------------------------


def reduced_groebner_basis(ring, generators, budget=None):
    """Reduced grevlex Groebner basis of the generators as polynomials."""
    _require_exact(ring)
    raw = buchberger_raw([_to_raw(g) for g in generators], grevlex_key, budget)
    reduced = interreduce_raw(raw, grevlex_key)
    return [_from_raw(ring, g) for _, _, g in reduced]


def truncation_groebner_basis(ring, generators, budget=None):
    """Reduced Groebner basis of (generators) + m^{N+1}, kept raw.

    Elements may have degree N+1 (the surviving truncation monomials), so
    the basis is returned as [(lead_exp, lead_coeff, dict)] for use with
    :func:`normal_form`.
    """
    _require_exact(ring)
    gens = [_to_raw(g) for g in generators] + truncation_monomials(ring)
    raw = buchberger_raw(gens, grevlex_key, budget)
    return interreduce_raw(raw, grevlex_key)


def normal_form(ring, f, raw_basis):
    """Normal form of a ring element against a raw basis; stays in the ring."""
    _require_exact(ring)
    return _from_raw(ring, normal_form_raw(_to_raw(f), list(raw_basis), grevlex_key))


def elimination_ideal(gens_raw, nelim, budget=None):
    """Raw generators of (gens) intersected with the subring without the
    first ``nelim`` variables."""
    key = block_key(nelim)
    raw = buchberger_raw(gens_raw, key, budget)
    reduced = interreduce_raw(raw, key)
    out = []
    for _, _, g in reduced:
        if all(sum(e[:nelim]) == 0 for e in g):
            out.append({e[nelim:]: c for e, c in g.items()})
    return out


def intersect_ideals(ring, ideal1, ideal2, budget=None):
    """(I + m^{N+1}) intersected with (J + m^{N+1}), modulo degree N+1."""
    from .series import Ideal

    _require_exact(ring)
    n = ring.nvars
    monos = truncation_monomials(ring)
    gens = []
    one = GaussianRational(1)
    for g in [_to_raw(f) for f in ideal1.generators] + monos:
        # t * g
        gens.append({(1,) + e: c for e, c in g.items()})
    for g in [_to_raw(f) for f in ideal2.generators] + monos:
        # (1 - t) * g
        poly = {(0,) + e: c for e, c in g.items()}
        for e, c in g.items():
            key = (1,) + e
            acc = poly.get(key)
            acc = -c if acc is None else acc - c
            if acc:
                poly[key] = acc
            elif key in poly:
                del poly[key]
        gens.append(poly)
    eliminated = elimination_ideal(gens, 1, budget)
    out = []
    for g in eliminated:
        if min((sum(e) for e in g), default=ring.trunc + 1) > ring.trunc:
            continue  # pure truncation artifact
        out.append(_from_raw(ring, g))
    return Ideal(ring, out)
