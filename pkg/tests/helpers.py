"""Shared test utilities: independent brute-force oracles and random data.

The oracles here deliberately use different algorithms from the library
(full-box enumeration with pairwise divisibility minimalization, direct
definition checks) so that agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from wblow.quotient import Polynomial
from wblow.wideal import WeightSystem


def ceil_div(p, q):
    return -(-p // q)


def brute_min_gens(weights, t):
    """Oracle: minimal generators of {s : sum(s_i w_i) >= t} by full box +
    pairwise divisibility minimalization."""
    n = len(weights)
    if t <= 0:
        return {(0,) * n}
    caps = [ceil_div(t, w) for w in weights]
    members = [
        s
        for s in itertools.product(*[range(c + 1) for c in caps])
        if sum(si * wi for si, wi in zip(s, weights)) >= t
    ]
    gens = set()
    for s in members:
        if not any(u != s and all(ui <= si for ui, si in zip(u, s)) for u in members):
            gens.add(s)
    return gens


def brute_upset_in_box(weights, threshold_num, m, caps):
    """Oracle: members of {s : sum(s_i w_i)/m >= threshold} inside the given box."""
    out = set()
    for s in itertools.product(*[range(c + 1) for c in caps]):
        if Fraction(sum(si * wi for si, wi in zip(s, weights)), m) >= threshold_num:
            out.add(s)
    return out


def brute_monoid_basis(m, weights, bound):
    """Oracle: Hilbert basis of the invariant monoid up to total degree bound."""
    elems = []
    for s in itertools.product(range(bound + 1), repeat=len(weights)):
        if 0 < sum(s) <= bound and sum(si * ai for si, ai in zip(s, weights)) % m == 0:
            elems.append(s)
    eset = set(elems)
    basis = set()
    for s in elems:
        decomposable = False
        for u in elems:
            if u != s and all(ui <= si for ui, si in zip(u, s)):
                v = tuple(si - ui for si, ui in zip(s, u))
                if any(v) and v in eset:
                    decomposable = True
                    break
        if not decomposable:
            basis.add(s)
    return basis


def random_weight_system(rng: random.Random, n_choices=(2, 3, 4), max_a=12, max_m=10):
    """A random valid weight system: positive entries with gcd 1."""
    n = rng.choice(n_choices)
    while True:
        weights = tuple(rng.randint(1, max_a) for _ in range(n))
        if math.gcd(*weights) == 1:
            return WeightSystem(weights, rng.randint(1, max_m))


def random_semi_invariant(rng: random.Random, system: WeightSystem, max_terms=4, max_deg=6):
    """A random nonzero polynomial whose monomials share one weight class mod m."""
    n, m = system.n, system.m
    target = None
    terms = {}
    attempts = 0
    wanted = rng.randint(1, max_terms)
    while len(terms) < wanted and attempts < 400:
        attempts += 1
        s = tuple(rng.randint(0, max_deg) for _ in range(n))
        cls = sum(si * ai for si, ai in zip(s, system.weights)) % m
        if target is None:
            target = cls
        if cls != target:
            continue
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[s] = terms.get(s, 0) + coeff
    terms = {k: v for k, v in terms.items() if v != 0}
    if not terms:  # collisions cancelled everything; fall back to one monomial
        s = tuple(rng.randint(0, max_deg) for _ in range(n))
        terms = {s: 1}
    return Polynomial(n, {k: Fraction(v) for k, v in terms.items()})
