"""Truncated multivariate formal power series and substitution endomorphisms.

A SeriesRing models C[[x_1..x_n]] / m^{N+1}: every value stores coefficients
for exponent vectors of total degree <= N and all arithmetic is exact modulo
degree N+1.  The exact backend uses Gaussian-rational coefficients; the float
backend uses complex, and is only meant for generic-angle jobs where the
scalar lambda is irrational.
"""

from fractions import Fraction

from .errors import RingMismatch, SingularLinearPart
from .gaussian import GaussianRational, coerce_scalar
from . import linalg


def grevlex_key(exp):
    """Sort key for graded reverse lexicographic order (larger key = larger)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class SeriesRing:
    """C[[varnames]] truncated at total degree ``trunc``."""

    __slots__ = ("varnames", "trunc", "field")

    def __init__(self, varnames, trunc, field="exact"):
        varnames = tuple(varnames)
        if len(set(varnames)) != len(varnames):
            raise ValueError("variable names must be distinct")
        if "i" in varnames:
            raise ValueError("'i' is reserved for the imaginary unit")
        if trunc < 2:
            raise ValueError("truncation order must be at least 2")
        if field not in ("exact", "float"):
            raise ValueError("field must be 'exact' or 'float'")
        self.varnames = varnames
        self.trunc = trunc
        self.field = field

    @property
    def nvars(self):
        return len(self.varnames)

    def coerce(self, value):
        return coerce_scalar(value, self.field)

    def zero_scalar(self):
        return self.coerce(0)

    def one_scalar(self):
        return self.coerce(1)

    def zero(self):
        return TruncatedSeries(self, {})

    def one(self):
        return self.monomial((0,) * self.nvars)

    def var(self, which):
        if isinstance(which, str):
            which = self.varnames.index(which)
        exp = [0] * self.nvars
        exp[which] = 1
        return self.monomial(tuple(exp))

    def monomial(self, exp, coeff=1):
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent length mismatch")
        if sum(exp) > self.trunc:
            return self.zero()
        coeff = self.coerce(coeff)
        if not coeff:
            return self.zero()
        return TruncatedSeries(self, {exp: coeff})

    def series(self, coeffs):
        """Build a series from an {exponent: coefficient} mapping."""
        data = {}
        for exp, c in coeffs.items():
            exp = tuple(exp)
            if len(exp) != self.nvars:
                raise ValueError("exponent length mismatch")
            if sum(exp) > self.trunc:
                continue
            c = self.coerce(c)
            if c:
                data[exp] = c
        return TruncatedSeries(self, data)

    def from_string(self, text):
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def with_trunc(self, trunc):
        return SeriesRing(self.varnames, trunc, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and self.varnames == other.varnames
            and self.trunc == other.trunc
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.varnames, self.trunc, self.field))

    def __repr__(self):
        return "SeriesRing(%r, trunc=%d, field=%r)" % (
            list(self.varnames),
            self.trunc,
            self.field,
        )


class TruncatedSeries:
    """An element of a SeriesRing; immutable, no stored zero coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    # -- helpers -----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(
                "operands live in %r and %r" % (self.ring, other.ring)
            )

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Total degree of the highest stored term; -1 for zero."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def min_degree(self):
        """Order of vanishing at the origin; None for zero."""
        return min((sum(e) for e in self.coeffs), default=None)

    def constant_term(self):
        return self.coeffs.get((0,) * self.ring.nvars, self.ring.zero_scalar())

    def linear_coeffs(self):
        """Coefficients of the degree-1 monomials, as a list over variables."""
        out = []
        for i in range(self.ring.nvars):
            exp = [0] * self.ring.nvars
            exp[i] = 1
            out.append(self.coeffs.get(tuple(exp), self.ring.zero_scalar()))
        return out

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        self._check(other)
        data = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            acc = data.get(exp)
            acc = c if acc is None else acc + c
            if acc:
                data[exp] = acc
            elif exp in data:
                del data[exp]
        return TruncatedSeries(self.ring, data)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            scalar = self.ring.coerce(other)
            if not scalar:
                return self.ring.zero()
            return TruncatedSeries(
                self.ring, {e: c * scalar for e, c in self.coeffs.items()}
            )
        self._check(other)
        trunc = self.ring.trunc
        data = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > trunc:
                    continue
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = data.get(exp)
                acc = prod if acc is None else acc + prod
                if acc:
                    data[exp] = acc
                elif exp in data:
                    del data[exp]
        return TruncatedSeries(self.ring, data)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, scalar):
        return self * (self.ring.one_scalar() / self.ring.coerce(scalar))

    # -- structure ---------------------------------------------------------

    def graded_component(self, d):
        """The degree-d homogeneous part."""
        if d < 0 or d > self.ring.trunc:
            raise ValueError("degree %d outside [0, %d]" % (d, self.ring.trunc))
        return TruncatedSeries(
            self.ring, {e: c for e, c in self.coeffs.items() if sum(e) == d}
        )

    def truncate(self, bound):
        """Drop all terms of total degree above ``bound``."""
        return TruncatedSeries(
            self.ring, {e: c for e, c in self.coeffs.items() if sum(e) <= bound}
        )

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        data = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if v:
                data[e] = v
        return TruncatedSeries(ring, data)

    def sorted_terms(self):
        """Terms sorted grevlex-descending; the canonical iteration order."""
        return sorted(self.coeffs.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            if not self.coeffs:
                return not self.ring.coerce(other)
            return self.coeffs == {(0,) * self.ring.nvars: self.ring.coerce(other)}
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.varnames, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or ("i" in cs and cs not in ("i", "-i")):
                cs = "(%s)" % cs
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "<series %s>" % self


class SubstitutionMap:
    """A filtered ring morphism given by variable images with zero constant term.

    ``domain`` and ``codomain`` may differ (used for chart changes); most maps
    are endomorphisms.  Immutable apart from internal memo tables.
    """

    __slots__ = ("domain", "codomain", "images", "_mono_cache", "_pow_cache")

    def __init__(self, domain, images, codomain=None):
        codomain = codomain or domain
        images = tuple(images)
        if len(images) != domain.nvars:
            raise ValueError("need one image per domain variable")
        for img in images:
            if img.ring != codomain:
                raise RingMismatch("image outside the codomain ring")
            if img.constant_term():
                raise ValueError("variable images must have zero constant term")
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._mono_cache = {}
        self._pow_cache = {}

    @classmethod
    def identity(cls, ring):
        return cls(ring, [ring.var(i) for i in range(ring.nvars)])

    @classmethod
    def diagonal(cls, ring, lam):
        return cls(ring, [ring.var(i) * lam for i in range(ring.nvars)])

    @classmethod
    def linear(cls, domain, matrix, codomain=None):
        """Map with images[i] = sum_j matrix[i][j] * var_j of the codomain."""
        codomain = codomain or domain
        images = []
        for row in matrix:
            img = codomain.zero()
            for j, c in enumerate(row):
                img = img + codomain.var(j) * c
            images.append(img)
        return cls(domain, images, codomain)

    def linear_matrix(self):
        """Rows are the linear parts of the images (the Jacobian at 0)."""
        return [img.linear_coeffs() for img in self.images]

    def is_identity(self):
        if self.domain != self.codomain:
            return False
        return all(
            img == self.domain.var(i) for i, img in enumerate(self.images)
        )

    def _power(self, i, k):
        key = (i, k)
        cached = self._pow_cache.get(key)
        if cached is None:
            if k == 0:
                cached = self.codomain.one()
            elif k == 1:
                cached = self.images[i]
            else:
                cached = self._power(i, k - 1) * self.images[i]
            self._pow_cache[key] = cached
        return cached

    def _monomial_image(self, exp):
        cached = self._mono_cache.get(exp)
        if cached is None:
            if sum(exp) > self.codomain.trunc:
                cached = self.codomain.zero()
            else:
                cached = self.codomain.one()
                for i, e in enumerate(exp):
                    if e:
                        cached = cached * self._power(i, e)
            self._mono_cache[exp] = cached
        return cached

    def __call__(self, f):
        """Apply the morphism: replace every domain variable by its image."""
        if f.ring != self.domain:
            raise RingMismatch("series not in the domain ring")
        result = self.codomain.zero()
        for exp, coeff in f.sorted_terms():
            if sum(exp) == 0:
                result = result + coeff
            else:
                result = result + self._monomial_image(exp) * coeff
        return result

    def compose(self, other):
        """(self o other): x_i |-> self(other(x_i))."""
        if other.codomain != self.domain:
            raise RingMismatch("composition rings do not match")
        return SubstitutionMap(
            other.domain, [self(img) for img in other.images], self.codomain
        )

    def inverse(self):
        """The inverse substitution modulo degree N+1 (endomorphisms only).

        Satisfies self(result_i) = x_i for every variable; computed by a
        Newton-style iteration whose error degree strictly increases.
        """
        if self.domain != self.codomain:
            raise SingularLinearPart("only endomorphisms can be inverted")
        ring = self.domain
        lmat = self.linear_matrix()
        tol = 0 if ring.field == "exact" else 1e-12
        try:
            linv = linalg.inverse(lmat, ring.zero_scalar(), ring.one_scalar(), tol)
        except SingularLinearPart:
            raise SingularLinearPart("linear part of the map is singular")
        linv_map = SubstitutionMap.linear(ring, linv)
        result = linv_map
        variables = [ring.var(i) for i in range(ring.nvars)]
        for _ in range(ring.trunc):
            deltas = [
                variables[i] - self(result.images[i]) for i in range(ring.nvars)
            ]
            if all(d.is_zero() for d in deltas):
                break
            result = SubstitutionMap(
                ring,
                [
                    result.images[i] + linv_map(deltas[i])
                    for i in range(ring.nvars)
                ],
            )
        return result

    def __repr__(self):
        rules = ", ".join(
            "%s -> %s" % (n, img)
            for n, img in zip(self.domain.varnames, self.images)
        )
        return "<map %s>" % rules


def compose_maps(g, h):
    """compose(g, h)(x_i) = g(h(x_i)); associative modulo truncation."""
    return g.compose(h)


def invert_map(m):
    return m.inverse()


def substitute(m, f):
    return m(f)


def graded_component(f, d):
    return f.graded_component(d)


class Ideal:
    """A finitely generated ideal of a SeriesRing, proper at the origin."""

    __slots__ = ("ring", "generators", "_plain_gb", "_membership_gb")

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatch("generator outside the ring")
            if g.constant_term():
                raise ValueError("ideal generators must vanish at the origin")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._plain_gb = None
        self._membership_gb = None

    def groebner(self):
        """The reduced Groebner basis of the generators under grevlex."""
        from . import groebner as gb

        if self._plain_gb is None:
            self._plain_gb = tuple(gb.reduced_groebner_basis(self.ring, self.generators))
        return self._plain_gb

    def _membership_basis(self):
        """Groebner basis of (generators) + m^{N+1}: exact ideal arithmetic
        modulo the truncation degree."""
        from . import groebner as gb

        if self._membership_gb is None:
            self._membership_gb = tuple(
                gb.truncation_groebner_basis(self.ring, self.generators)
            )
        return self._membership_gb

    def normal_form(self, f):
        """Groebner normal form of ``f`` modulo (generators) + m^{N+1}."""
        from . import groebner as gb

        if f.ring != self.ring:
            raise RingMismatch("element outside the ring")
        return gb.normal_form(self.ring, f, self._membership_basis())

    def contains(self, f):
        """Membership modulo degree N+1 via Groebner normal form."""
        return self.normal_form(f).is_zero()

    def equals(self, other):
        """Ideal equality modulo degree N+1 (mutual membership)."""
        if self.ring != other.ring:
            raise RingMismatch("ideals in different rings")
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def intersect(self, other):
        """Intersection modulo degree N+1, via the auxiliary-variable
        elimination construction."""
        from . import groebner as gb

        if self.ring != other.ring:
            raise RingMismatch("ideals in different rings")
        return gb.intersect_ideals(self.ring, self, other)

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.generators)
