"""The weighted blow-up as toric and chart data.

The blow-up of the quotient of affine n-space with weights (a_1,...,a_n)
over a group of order m is the star subdivision of the positive orthant at
the ray through e = (a_1/m,...,a_n/m).  Each top cone C_i (drop the i-th
unit ray, add e) is an affine chart: a cyclic quotient of order a_i whose
coordinates map back by x_j -> xbar_j * xbar_i^(a_j/m).  The exceptional
divisor is cut out by xbar_i in chart i, so the xbar_i-exponent after
substitution is the vanishing order along it.

Chart substitutions carry fractional exponents as exact rationals and are
treated as formal symbols; all consequences used here (valuations, strict
transforms) only need exponent arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionError,
    InternalConsistencyError,
    OutOfDomainError,
    UndefinedWeightError,
)
from .quotient import CyclicQuotientType, Polynomial, semi_invariant_class
from .wideal import WeightedIdeal, WeightSystem, ideal_generators, polynomial_weight


@dataclass(frozen=True, slots=True)
class Fan:
    """Star subdivision data: unit rays e_1..e_n, the center e, and top cones.

    ``rays`` lists e_1,...,e_n then e (exact rational vectors); cone i is
    given by the indices of its n generating rays (all unit rays but the
    i-th, plus the center).  The record itself is unvalidated so that tests
    can corrupt it; ``build_fan`` output always satisfies the invariants and
    ``fan_is_subdivision`` checks them.
    """

    n: int
    m: int
    rays: tuple
    cones: tuple


def build_fan(system: WeightSystem) -> Fan:
    """Fan of the blow-up: orthant star-subdivided at (1/m)(a_1,...,a_n)."""
    n = system.n
    unit = [tuple(Fraction(1 if k == j else 0) for k in range(n)) for j in range(n)]
    center = tuple(Fraction(a, system.m) for a in system.weights)
    rays = tuple(unit) + (center,)
    cones = tuple(
        tuple(j for j in range(n) if j != i) + (n,) for i in range(n)
    )
    return Fan(n, system.m, rays, cones)


def _solve_cone_coordinates(gens, point):
    """Solve sum(lambda_k * gens[k]) = point exactly; None when the gens are dependent."""
    n = len(point)
    # columns are the generators
    aug = [[gens[k][row] for k in range(len(gens))] + [point[row]] for row in range(n)]
    cols = len(gens)
    perm = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[r], aug[pivot] = aug[pivot], aug[r]
        perm.append(c)
        inv = Fraction(1) / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [v - factor * w for v, w in zip(aug[i], aug[r])]
        r += 1
    if any(aug[i][-1] != 0 for i in range(r, n)):
        return None  # inconsistent: point outside the span
    coeffs = [Fraction(0)] * cols
    for row, c in enumerate(perm):
        coeffs[c] = aug[row][-1]
    return coeffs


def _det(rows) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    mat = [list(r) for r in rows]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = Fraction(1) / mat[c][c]
        mat[c] = [v * inv for v in mat[c]]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[c])]
    return det


#: Deterministic sampling grid for the subdivision check: all integer points
#: of [0, GRID]^n except the origin, as exact rationals.
SUBDIVISION_GRID = 4


def fan_is_subdivision(fan: Fan, grid: int = SUBDIVISION_GRID) -> bool:
    """Sanity-check the subdivision: full-dimensional cones covering the orthant.

    (a) each cone's generators are linearly independent over the rationals;
    (b) every sampled orthant point lies in some cone; (c) no sampled point
    is interior to two cones.  Sampling uses the fixed integer grid above,
    so the check is deterministic.
    """
    gens_by_cone = []
    for cone in fan.cones:
        gens = [fan.rays[k] for k in cone]
        if len(gens) != fan.n or _det(gens) == 0:
            return False
        gens_by_cone.append(gens)

    for point in itertools.product(range(grid + 1), repeat=fan.n):
        if not any(point):
            continue
        p = tuple(Fraction(v) for v in point)
        covered = 0
        interior = 0
        for gens in gens_by_cone:
            coeffs = _solve_cone_coordinates(gens, p)
            if coeffs is None:
                continue
            if all(c >= 0 for c in coeffs):
                covered += 1
                if all(c > 0 for c in coeffs):
                    interior += 1
        if covered == 0 or interior > 1:
            return False
    return True


def cone_index(fan: Fan, i: int) -> int:
    """Index of chart cone i in the blow-up lattice (unit lattice plus the center ray).

    Computed as |det| of the cone generators in standard coordinates times
    the order of the center modulo the unit lattice (the lcm of its entry
    denominators); must come out an integer.
    """
    if not 1 <= i <= fan.n:
        raise DimensionError(f"chart index {i} out of range 1..{fan.n}")
    gens = [fan.rays[k] for k in fan.cones[i - 1]]
    vol = abs(_det(gens))
    center_order = math.lcm(*(fr.denominator for fr in fan.rays[-1]))
    idx = vol * center_order
    if idx.denominator != 1:
        raise InternalConsistencyError(f"cone index {idx} is not an integer")
    return int(idx)


@dataclass(frozen=True, slots=True)
class Chart:
    """One affine piece of the blow-up.

    ``substitution`` is the n x n matrix of exact rational exponents: row j
    gives the barred-variable exponents of the image of x_j, so row j is the
    unit row at j plus a_j/m in column i, and row i is a_i/m at position i.
    ``quotient_type`` is the chart's cyclic quotient: order a_i with weights
    (-a_1,...,m,...,-a_n) reduced mod a_i (trivial when a_i = 1).
    """

    index: int
    quotient_type: CyclicQuotientType
    substitution: tuple


def chart(system: WeightSystem, i: int) -> Chart:
    """The i-th chart (1-based) of the blow-up for the given weight system."""
    n = system.n
    if not 1 <= i <= n:
        raise DimensionError(f"chart index {i} out of range 1..{n}")
    a = system.weights
    order = a[i - 1]
    chart_weights = tuple(
        system.m if j == i - 1 else -a[j] for j in range(n)
    )
    qtype = CyclicQuotientType(order, chart_weights)
    rows = []
    for j in range(n):
        row = [Fraction(0)] * n
        if j != i - 1:
            row[j] = Fraction(1)
        row[i - 1] += Fraction(a[j], system.m)
        rows.append(tuple(row))
    return Chart(i, qtype, tuple(rows))


def _substitute_exponents(s, ch: Chart) -> tuple:
    """Barred exponent vector of the image of the monomial x^s under the chart map."""
    n = len(ch.substitution)
    if len(s) != n:
        raise DimensionError(f"exponent length {len(s)} does not match chart dimension {n}")
    out = []
    for k in range(n):
        total = Fraction(0)
        for j, sj in enumerate(s):
            if sj:
                total += sj * ch.substitution[j][k]
        out.append(total if total.denominator != 1 else int(total))
    return tuple(out)


def exceptional_valuation(f: Polynomial, system: WeightSystem, chart_index: int) -> Fraction:
    """Vanishing order of f along the exceptional divisor, read off in one chart.

    Substitutes the chart map symbolically and takes the minimal exponent of
    the chart's barred coordinate (the local equation of the divisor) over
    the support.  The result must equal the weight valuation computed
    directly; the two routes are compared and a mismatch raises, since they
    agree by construction.
    """
    if f.is_zero:
        raise UndefinedWeightError("the zero polynomial has no vanishing order")
    ch = chart(system, chart_index)
    i0 = chart_index - 1
    order = min(Fraction(_substitute_exponents(s, ch)[i0]) for s in f.support())
    direct = polynomial_weight(f, system)
    if order != direct:
        raise InternalConsistencyError(
            f"chart {chart_index} reads vanishing order {order} but the weight"
            f" valuation is {direct}"
        )
    return order


@dataclass(frozen=True, slots=True)
class PushforwardRecord:
    """One level of the pushforward: the ideal of functions vanishing to order >= a."""

    a: int
    ideal: WeightedIdeal


@dataclass(frozen=True, slots=True)
class PushforwardReport:
    """Decomposition of the pullback of the divisor (f = 0).

    The pullback is the strict transform plus ``multiplicity`` times the
    exceptional divisor, where the multiplicity is the weight of f.  The
    attached records give, level by level, the ideal of the direct image of
    functions vanishing to order >= a along the divisor; that identity is a
    structural fact of the blow-up, while each ideal is computed here.
    """

    system: WeightSystem
    multiplicity: Fraction
    eigenvalue_class: int
    records: tuple


def pushforward_decomposition(
    f: Polynomial, system: WeightSystem, a_max: int | None = None
) -> PushforwardReport:
    """Multiplicity of the exceptional divisor in the pullback of (f = 0), with ideals.

    ``f`` must be semi-invariant under the order-m action with these weights
    (checked).  Records cover integer levels 0..a_max; the default bound
    brackets the multiplicity by one extra level.
    """
    if f.is_zero:
        raise UndefinedWeightError("the zero polynomial defines no divisor")
    ambient = CyclicQuotientType(system.m, system.weights)
    eig = semi_invariant_class(f, ambient)  # raises NotSemiInvariantError when mixed
    multiplicity = polynomial_weight(f, system)
    if a_max is None:
        a_max = math.ceil(multiplicity) + 1
    if a_max < 0:
        raise OutOfDomainError(f"a_max must be non-negative, got {a_max}")
    records = tuple(
        PushforwardRecord(a, ideal_generators(system, Fraction(a))) for a in range(a_max + 1)
    )
    return PushforwardReport(system, multiplicity, eig, records)


@dataclass(frozen=True, slots=True)
class TransformedEquation:
    """Strict transform of an equation in one chart.

    ``terms`` maps barred exponent vectors (exact, possibly fractional in the
    chart coordinate) to coefficients, normalized so the minimal exponent of
    the chart coordinate is zero; ``factored_exponent`` is the power of the
    chart coordinate divided out, i.e. the weight of the equation.
    """

    chart_index: int
    factored_exponent: Fraction
    terms: tuple  # ((exponent tuple, coefficient), ...) sorted

    def term_dict(self) -> dict:
        return dict(self.terms)

    def divisor_restriction(self) -> tuple:
        """Terms surviving on the exceptional divisor (chart-coordinate exponent 0)."""
        i0 = self.chart_index - 1
        return tuple((e, c) for e, c in self.terms if e[i0] == 0)


def strict_transform_in_chart(
    g: Polynomial, system: WeightSystem, chart_index: int
) -> TransformedEquation:
    """Substitute the chart map into g and factor out the exceptional multiplicity.

    Each monomial acquires chart-coordinate exponent equal to its weight;
    dividing by the minimal one leaves the residual equation of the strict
    transform, whose restriction to the divisor is read off by keeping the
    exponent-zero terms.
    """
    if g.is_zero:
        raise UndefinedWeightError("the zero polynomial has no strict transform")
    ch = chart(system, chart_index)
    i0 = chart_index - 1
    substituted = {}
    for s, c in g.items():
        e = _substitute_exponents(s, ch)
        if e in substituted:
            raise InternalConsistencyError(f"chart map collided two monomials at {e}")
        substituted[e] = c
    w_min = min(Fraction(e[i0]) for e in substituted)
    residual = {}
    for e, c in substituted.items():
        shifted = Fraction(e[i0]) - w_min
        key = e[:i0] + (shifted if shifted.denominator != 1 else int(shifted),) + e[i0 + 1 :]
        residual[key] = c
    terms = tuple(sorted(residual.items(), key=lambda item: tuple(map(Fraction, item[0]))))
    report = TransformedEquation(chart_index, w_min, terms)
    if min(Fraction(e[i0]) for e, _ in terms) != 0:
        raise InternalConsistencyError("residual does not reach chart-coordinate exponent 0")
    return report


def invert_transform(
    teq: TransformedEquation, system: WeightSystem
) -> Polynomial:
    """Undo a strict transform: multiply the factored power back and invert the chart map.

    Used as a round-trip check; raises when the data does not come from an
    actual substitution (non-integral or negative recovered exponents).
    """
    i0 = teq.chart_index - 1
    a = system.weights
    terms = {}
    for e, c in teq.terms:
        total_i = Fraction(e[i0]) + teq.factored_exponent
        others = [Fraction(e[k]) for k in range(len(e)) if k != i0]
        if any(v.denominator != 1 or v < 0 for v in others):
            raise InternalConsistencyError("barred exponents off the chart coordinate must be integers")
        s = [0] * len(e)
        pos = 0
        acc = Fraction(0)
        for k in range(len(e)):
            if k == i0:
                continue
            s[k] = int(others[pos])
            acc += s[k] * Fraction(a[k], system.m)
            pos += 1
        si = (total_i - acc) * Fraction(system.m, a[i0])
        if si.denominator != 1 or si < 0:
            raise InternalConsistencyError(f"recovered exponent {si} is not a non-negative integer")
        s[i0] = int(si)
        terms[tuple(s)] = c
    return Polynomial(len(system.weights), terms)


@dataclass(frozen=True, slots=True)
class ExceptionalInfo:
    """Bookkeeping for the exceptional divisor of the blow-up.

    ``projective_space`` describes the divisor (weighted projective space of
    the blow-up weights); ``cartier_generator`` is the integral generator of
    the relative Picard group, -lcm(weights) times the divisor.  The
    restriction rule answers only at levels divisible by the product of the
    weights.  The vanishing statement is a recorded fact about the blow-up,
    carried for reports and never computed here.
    """

    lcm: int
    weights_product: int
    m: int
    projective_space: str
    cartier_generator: str
    vanishing_fact: str

    def restriction(self, a: int) -> str:
        """Degree of the restricted sheaf at level a (a must be divisible by the weight product)."""
        if a % self.weights_product != 0:
            raise OutOfDomainError(
                f"restriction rule answers only for a divisible by {self.weights_product}, got {a}"
            )
        return f"O_P({self.m * a})"


def exceptional_info(system: WeightSystem) -> ExceptionalInfo:
    """Divisor descriptors derived from the weight system alone."""
    M = system.lcm
    prod = math.prod(system.weights)
    names = ",".join(str(a) for a in system.weights)
    return ExceptionalInfo(
        lcm=M,
        weights_product=prod,
        m=system.m,
        projective_space=f"P({names})",
        cartier_generator=f"H = -{M}E",
        vanishing_fact=(
            "recorded fact (not computed): higher direct images of every integer"
            " multiple of the relatively ample Cartier generator vanish"
        ),
    )
