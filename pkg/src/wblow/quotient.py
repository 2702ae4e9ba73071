"""Cyclic quotient and hyperquotient singularity types.

A cyclic quotient of order m acts diagonally on affine n-space with integer
weights taken mod m; its coordinate ring is the ring of invariant monomials.
A hyperquotient is a hypersurface inside such a quotient, cut out by a
semi-invariant equation.  This module holds those types, the semi-invariance
check, exhaustive computation of the invariant-monomial Hilbert basis at desk
scale, and the modular bookkeeping for lifting a quotient action through an
invariant-coordinate cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import ExpVec, check_enum_budget, expvec, vec_add
from .errors import (
    DimensionError,
    InvalidInstanceError,
    InvalidWeightsError,
    NotSemiInvariantError,
    UndefinedWeightError,
    UnsupportedShapeError,
)


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Terms map exponent tuples to nonzero ``Fraction`` coefficients; zero
    coefficients are dropped at construction and all exponent tuples must
    share one length (``nvars``).  Instances are immutable by convention and
    hashable; the zero polynomial has an empty term map but still knows its
    variable count.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[ExpVec, Fraction] | Iterable = ()):
        if not isinstance(nvars, int) or nvars < 1:
            raise DimensionError(f"nvars must be a positive integer, got {nvars!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for exp, coeff in items:
            e = expvec(exp)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            c = acc.get(e, Fraction(0)) + Fraction(coeff)
            if c == 0:
                acc.pop(e, None)
            else:
                acc[e] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", {e: acc[e] for e in sorted(acc)})

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The coordinate x_index (1-based)."""
        if not 1 <= index <= nvars:
            raise DimensionError(f"variable index {index} out of range 1..{nvars}")
        exp = tuple(1 if j == index - 1 else 0 for j in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, exp: ExpVec, coeff=1) -> "Polynomial":
        e = expvec(exp)
        return cls(len(e), {e: Fraction(coeff)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> tuple:
        """Exponent vectors with nonzero coefficient, in lexicographic order."""
        return tuple(self._terms)

    def coefficient(self, exp: ExpVec) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def items(self):
        return self._terms.items()

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.nvars != other.nvars:
            raise DimensionError("cannot add polynomials in different variable counts")
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, merged)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.nvars != other.nvars:
            raise DimensionError("cannot multiply polynomials in different variable counts")
        prod: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = vec_add(e1, e2)
                prod[e] = prod.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, prod)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(self._terms.items())))

    def text(self) -> str:
        """Canonical plain-text form, parseable by the notation grammar."""
        if self.is_zero:
            return "0"
        parts = []
        # descending by (total degree, exponents): highest-order term first
        for exp in sorted(self._terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self._terms[exp]
            factors = []
            for j, p in enumerate(exp):
                if p == 0:
                    continue
                var = f"x{j + 1}" if j + 1 <= 9 else f"x{{{j + 1}}}"
                factors.append(var if p == 1 else f"{var}^{p}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if coeff < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.text()!r})"

    def __str__(self):
        return self.text()


@dataclass(frozen=True, slots=True)
class CyclicQuotientType:
    """The quotient of affine n-space by a cyclic group of order m acting
    diagonally with the given weights, written 1/m(a_1,...,a_n).

    Weights are canonically reduced into [0, m) at construction, so the
    negative spellings like 1/3(1,-1,1) compare equal to 1/3(1,2,1).
    """

    m: int
    weights: tuple

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidWeightsError(f"group order must be a positive integer, got {self.m!r}")
        ws = tuple(self.weights)
        if not ws:
            raise InvalidWeightsError("at least one weight is required")
        for w in ws:
            if not isinstance(w, int) or isinstance(w, bool):
                raise InvalidWeightsError(f"weights must be integers, got {w!r}")
        object.__setattr__(self, "weights", tuple(w % self.m for w in ws))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def is_trivial(self) -> bool:
        return self.m == 1

    def notation(self) -> str:
        return f"1/{self.m}({','.join(str(w) for w in self.weights)})"

    def __str__(self):
        return self.notation()


@dataclass(frozen=True, slots=True)
class HyperquotientType:
    """A hypersurface (g = 0) inside a cyclic quotient, type 1/m(a_0,...,a_n; e).

    ``g`` must be semi-invariant of class ``e`` under the ambient action; the
    constructor verifies this instead of trusting the caller.  ``g == 0`` is
    allowed and means "no equation" (the type is then a plain cyclic
    quotient); its class is taken to be 0 by convention.
    """

    ambient: CyclicQuotientType
    g: Polynomial
    e: int

    def __post_init__(self):
        if self.g.nvars != self.ambient.n:
            raise DimensionError(
                f"equation has {self.g.nvars} variables, ambient type has {self.ambient.n}"
            )
        if self.g.is_zero:
            object.__setattr__(self, "e", 0)
            return
        e = semi_invariant_class(self.g, self.ambient)
        declared = self.e % self.ambient.m
        if declared != e:
            raise NotSemiInvariantError(
                f"equation is semi-invariant of class {e} mod {self.ambient.m},"
                f" not the declared class {declared}",
                monomials=self.g.support()[:1],
            )
        object.__setattr__(self, "e", e)

    @property
    def dimension(self) -> int:
        """Dimension of the singularity: ambient n minus one when g is a real equation."""
        return self.ambient.n - (0 if self.g.is_zero else 1)

    def notation(self) -> str:
        ws = ",".join(str(w) for w in self.ambient.weights)
        return f"1/{self.ambient.m}({ws};{self.e}){{g={self.g.text()}}}"

    def __str__(self):
        return self.notation()


def semi_invariant_class(g: Polynomial, q: CyclicQuotientType) -> int:
    """Eigenvalue class of a semi-invariant polynomial under the quotient action.

    Every monomial x^s transforms by the character sum(s_i a_i) mod m; the
    polynomial is an eigenfunction exactly when all its monomials agree.
    """
    if g.is_zero:
        raise UndefinedWeightError("the zero polynomial has no eigenvalue class")
    if g.nvars != q.n:
        raise DimensionError(f"polynomial has {g.nvars} variables, type has {q.n}")
    support = g.support()
    first = support[0]
    cls = sum(s * a for s, a in zip(first, q.weights)) % q.m
    for exp in support[1:]:
        c = sum(s * a for s, a in zip(exp, q.weights)) % q.m
        if c != cls:
            raise NotSemiInvariantError(
                f"monomials {first} (class {cls}) and {exp} (class {c})"
                f" lie in different weight classes mod {q.m}",
                monomials=(first, exp),
            )
    return cls


@dataclass(frozen=True, slots=True)
class MonoidBasis:
    """Hilbert basis of the invariant-exponent monoid, up to a degree bound.

    ``complete`` is True when the bound provably captured the whole basis:
    every basis element of this monoid has all entries at most m, hence total
    degree at most n*m.
    """

    generators: tuple
    complete: bool
    degree_bound: int


def invariant_monoid_basis(q: CyclicQuotientType, degree_bound: int) -> MonoidBasis:
    """Minimal additive generators of {s in N^n : sum(s_i a_i) = 0 mod m}.

    Exhaustive desk-scale enumeration: all candidate exponent vectors of
    total degree <= degree_bound are generated, invariants kept, and an
    element is a generator iff it is not the sum of two nonzero invariants.
    Practical ceiling: the candidate count C(degree_bound + n, n) must stay
    within the enumeration budget, which in practice means n <= 4.
    """
    if degree_bound < 1:
        raise InvalidInstanceError("degree bound must be at least 1")
    n, m = q.n, q.m
    check_enum_budget(math.comb(degree_bound + n, n), "invariant monoid enumeration")

    elements = []
    for total in range(1, degree_bound + 1):
        for s in _compositions(total, n):
            if sum(si * ai for si, ai in zip(s, q.weights)) % m == 0:
                elements.append(s)
    elem_set = set(elements)

    generators = []
    for s in elements:  # ascending total degree
        if not _is_sum_of_two(s, elements, elem_set):
            generators.append(s)
    generators.sort(key=lambda e: (sum(e), e))
    return MonoidBasis(tuple(generators), degree_bound >= n * m, degree_bound)


def _compositions(total: int, n: int):
    """All n-tuples of non-negative ints summing to total."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def _is_sum_of_two(s: ExpVec, elements: list, elem_set: set) -> bool:
    half = sum(s) // 2
    for u in elements:
        if sum(u) > half:
            break  # elements are sorted by total degree
        if u != s and all(ui <= si for ui, si in zip(u, s)):
            v = tuple(si - ui for si, ui in zip(s, u))
            if any(v) and v in elem_set:
                return True
    return False


@dataclass(frozen=True, slots=True)
class BinomialRelation:
    """The single relation alpha*u + beta*v = gamma*w among a 3-element basis.

    ``basis`` is ordered (u, v, w) with w the generator expressible through
    the other two; exponents are positive and primitive.
    """

    basis: tuple
    exponents: tuple

    def holds(self) -> bool:
        alpha, beta, gamma = self.exponents
        u, v, w = self.basis
        lhs = tuple(alpha * ui + beta * vi for ui, vi in zip(u, v))
        rhs = tuple(gamma * wi for wi in w)
        return lhs == rhs


def binomial_relation_2d(q: CyclicQuotientType) -> BinomialRelation:
    """Exponent identity among the three invariant generators of a 2-variable quotient.

    Only the 3-generator shape is modelled (one relation); anything else is
    rejected.  The relation is found as the integer kernel of the 3x2 matrix
    of generators, via 2d cross products.
    """
    if q.n != 2:
        raise UnsupportedShapeError(f"binomial relation needs 2 variables, got {q.n}")
    basis = invariant_monoid_basis(q, 2 * q.m).generators
    if len(basis) != 3:
        raise UnsupportedShapeError(
            f"invariant basis has {len(basis)} generators; only the 3-generator case"
            " carries a single binomial relation"
        )
    p, r, s = basis
    cross = lambda u, v: u[0] * v[1] - u[1] * v[0]
    c = (cross(r, s), cross(s, p), cross(p, r))
    if 0 in c:
        raise UnsupportedShapeError("degenerate basis: two generators are parallel")
    g = math.gcd(*c)
    c = tuple(x // g for x in c)
    negatives = [i for i, x in enumerate(c) if x < 0]
    if len(negatives) == 2:
        c = tuple(-x for x in c)
        negatives = [i for i, x in enumerate(c) if x < 0]
    if len(negatives) != 1:
        raise UnsupportedShapeError("basis admits no positive binomial relation")
    k = negatives[0]
    others = [i for i in range(3) if i != k]
    ordered = (basis[others[0]], basis[others[1]], basis[k])
    exponents = (c[others[0]], c[others[1]], -c[k])
    rel = BinomialRelation(ordered, exponents)
    assert rel.holds()
    return rel


@dataclass(frozen=True, slots=True)
class ActionLiftReport:
    """Outcome of lifting a residual quotient action through the invariant cover.

    For the degree-rm cover (x, y, z) = (xi^rm, eta^rm, xi*eta) of the
    2-variable order-rm quotient, the candidate order-r^2*m action on
    (xi, eta) with weights (a, rm-a) induces weights on (x, y, z) that must
    be (rm*a, -rm*a, rm) mod r^2*m, i.e. the residual order-r action pushed
    through the rm-th power of the group generator.
    """

    ok: bool
    group_order: int
    induced: tuple
    expected: tuple

    def __bool__(self):
        return self.ok


def action_lift_check(r: int, m: int, a: int) -> ActionLiftReport:
    """Verify the modular weight bookkeeping for the lifted action.

    Purely exponent arithmetic: x = xi^rm picks up rm*a, y = eta^rm picks up
    rm*(rm - a), z = xi*eta picks up a + (rm - a) = rm, everything mod r^2*m.
    """
    for name, v in (("r", r), ("m", m), ("a", a)):
        if not isinstance(v, int) or v < 1:
            raise InvalidInstanceError(f"{name} must be a positive integer, got {v!r}")
    if math.gcd(a, r) != 1:
        raise InvalidInstanceError(f"a={a} must be coprime to r={r}")
    order = r * r * m
    rm = r * m
    induced = ((rm * a) % order, (rm * (rm - a)) % order, rm % order)
    expected = ((rm * a) % order, (-rm * a) % order, rm % order)
    return ActionLiftReport(induced == expected, order, induced, expected)


def section_type(q: CyclicQuotientType, i: int) -> CyclicQuotientType:
    """Type of the hyperplane section x_i = 0: the same quotient with one weight dropped."""
    if q.n < 2:
        raise DimensionError("cannot take a section of a 1-variable type")
    if not 1 <= i <= q.n:
        raise DimensionError(f"coordinate index {i} out of range 1..{q.n}")
    ws = q.weights[: i - 1] + q.weights[i:]
    return CyclicQuotientType(q.m, ws)


def lift_type(q: CyclicQuotientType, a_n: int) -> CyclicQuotientType:
    """Ambient type one dimension up: append a_n (mod m) as the last weight."""
    return CyclicQuotientType(q.m, q.weights + (a_n,))
