"""Independent brute-force oracles used to cross-check the algebra engine.

The jet-space dimension counter below never touches the standard-basis
machinery: it truncates to finite-dimensional jet spaces and does exact
Gaussian elimination over the rationals, stopping once the answer is
stable under raising the truncation degree.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
import random

from matsing import Poly


def monomials_below(nvars, degree):
    """All exponent vectors of total degree < degree, graded order."""
    out = []
    for d in range(degree):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _rank(rows):
    """Rank of a list of Fraction rows, by Gaussian elimination."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]),
                     None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / lead
                rows[i] = [a - factor * b
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def jet_quotient_dimension(gens, degree_cap=14):
    """dim of O/(gens) as a vector space at the origin, or None when it
    does not stabilize below the cap (treated as infinite by callers).

    Works degree by degree: dim O/(I + m^D) is the number of monomials of
    degree < D minus the rank of all multiples of the generators truncated
    to that jet space; the sequence stabilizes exactly at dim O/I when the
    colength is finite.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return None
    nvars = gens[0].nvars
    if any(g.constant_term() != 0 for g in gens):
        return 0
    prev = None
    for degree in range(2, degree_cap + 1):
        basis = monomials_below(nvars, degree)
        index = {e: i for i, e in enumerate(basis)}
        rows = []
        for g in gens:
            for mono in monomials_below(nvars, degree):
                row = [Fraction(0)] * len(basis)
                hit = False
                for e, c in g:
                    prod = tuple(a + b for a, b in zip(e, mono))
                    slot = index.get(prod)
                    if slot is not None:
                        row[slot] = c
                        hit = True
                if hit:
                    rows.append(row)
        dim = len(basis) - _rank(rows)
        if dim == prev:
            return dim
        prev = dim
    return None


def jet_milnor(g, degree_cap=14):
    from matsing.poly import partial
    return jet_quotient_dimension(
        [partial(g, i) for i in range(g.nvars)], degree_cap)


def jet_tjurina(g, degree_cap=14):
    from matsing.poly import partial
    return jet_quotient_dimension(
        [g] + [partial(g, i) for i in range(g.nvars)], degree_cap)


def random_poly(rng: random.Random, nvars, max_degree=3, terms=4,
                zero_constant=True) -> Poly:
    """A random sparse rational polynomial, reproducible from the rng."""
    parts = {}
    for _ in range(rng.randint(1, terms)):
        e = [0] * nvars
        for _ in range(rng.randint(0 if not zero_constant else 1,
                                   max_degree)):
            e[rng.randrange(nvars)] += 1
        if zero_constant and sum(e) == 0:
            e[rng.randrange(nvars)] = 1
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if c:
            parts[tuple(e)] = parts.get(tuple(e), Fraction(0)) + c
    p = Poly(nvars, parts)
    return p


def random_finite_colength_ideal(rng: random.Random, nvars):
    """Generators that certainly cut out a finite-dimensional quotient: a
    unit multiple of a pure power of every variable, plus sometimes one
    extra random element.  The unit keeps the colength finite and small,
    so the jet oracle stabilizes quickly."""
    max_power = 3 if nvars <= 2 else 2
    gens = []
    for i in range(nvars):
        e = [0] * nvars
        e[i] = rng.randint(1, max_power)
        power = Poly.monomial(nvars, tuple(e))
        unit = Poly.constant(nvars, 1) + random_poly(
            rng, nvars, max_degree=2, terms=2)
        gens.append(power * unit)
    if rng.random() < 0.5:
        gens.append(random_poly(rng, nvars, max_degree=2, terms=3))
    return gens
