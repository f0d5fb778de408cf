"""Standard bases for submodules of free modules over polynomial rings.

Supports both global monomial orders (ordinary Groebner bases, terminating
division) and local orders (standard bases in the ring of germs at the
origin, Mora's tangent-cone division).  Everything is done degree-exactly
over the rationals; there is no numerical step anywhere.

Vectors in a free module O^r are stored flat as dicts keyed by
(component, exponent-tuple): this keeps division and s-vector code
identical for the ideal case (r = 1) and the module case.

The local normal form returns a unit certificate: nf(v) = u*v - sum q_i g_i
with u a unit of the local ring (constant term 1 after scaling).  Over a
global order u is literally 1.  Membership tests therefore produce exact
polynomial identities that can be re-multiplied and checked.

A step counter guards all completion loops.  Local-order completion always
terminates in theory, but badly posed inputs can be astronomically slow, so
the guard raises StepLimitExceeded instead of hanging.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence, Tuple

from .poly import (ExpVec, Poly, exp_divides, exp_lcm, exp_mul, exp_sub)

Vector = Tuple[Poly, ...]
FlatKey = Tuple[int, ExpVec]  # (component, exponent)
Flat = dict


class _Infinite:
    """Sentinel for an infinite vector-space dimension."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):  # keeps the singleton under pickling
        return (_Infinite, ())


INFINITE = _Infinite()


class StepLimitExceeded(RuntimeError):
    """Raised when a completion loop exceeds the configured step budget."""

    def __init__(self, steps: int):
        super().__init__(f"step limit of {steps} exceeded")
        self.steps = steps


_DEFAULT_STEP_LIMIT = 2_000_000


def set_step_limit(n: int) -> int:
    """Set the default step budget for basis completion; returns the old one."""
    global _DEFAULT_STEP_LIMIT
    if n <= 0:
        raise ValueError("step limit must be positive")
    old = _DEFAULT_STEP_LIMIT
    _DEFAULT_STEP_LIMIT = n
    return old


class _Counter:
    __slots__ = ("limit", "steps")

    def __init__(self, limit: Optional[int]):
        self.limit = limit if limit is not None else _DEFAULT_STEP_LIMIT
        self.steps = 0

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.steps > self.limit:
            raise StepLimitExceeded(self.limit)


class MonomialOrder:
    """A monomial order given by name, extended to free modules.

    kinds:
      degrevlex-global    degree first, reverse-lex tie break (well order)
      lex-global          pure lexicographic (well order)
      negdegrevlex-local  negative degree first; 1 is the largest monomial,
                          so leading terms detect units (local order)

    module_extension:
      position-over-term  component index decides first (lower index wins),
                          then the monomial order
      term-over-position  monomial order decides first, then component

    Orders are exposed as key functions: larger key means larger monomial,
    so the leading term of a nonzero object is the max of the keys.
    """

    KINDS = ("degrevlex-global", "lex-global", "negdegrevlex-local")
    EXTENSIONS = ("position-over-term", "term-over-position")

    __slots__ = ("kind", "module_extension")

    def __init__(self, kind: str = "degrevlex-global",
                 module_extension: str = "position-over-term"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order kind {kind!r}")
        if module_extension not in self.EXTENSIONS:
            raise ValueError(f"unknown module extension {module_extension!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "module_extension", module_extension)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MonomialOrder is immutable")

    @property
    def is_global(self) -> bool:
        return self.kind != "negdegrevlex-local"

    def key(self, exp: ExpVec):
        if self.kind == "degrevlex-global":
            return (sum(exp),) + tuple(-e for e in reversed(exp))
        if self.kind == "lex-global":
            return exp
        # negdegrevlex-local
        return (-sum(exp),) + tuple(-e for e in reversed(exp))

    def module_key(self, comp: int, exp: ExpVec):
        if self.module_extension == "position-over-term":
            return (-comp,) + self.key(exp)
        return self.key(exp) + (-comp,)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.kind == other.kind
                and self.module_extension == other.module_extension)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.module_extension!r})"


GLOBAL = MonomialOrder("degrevlex-global")
LOCAL = MonomialOrder("negdegrevlex-local")


# -- flat vector helpers -----------------------------------------------------

def flatten_vector(vec: Sequence[Poly]) -> Flat:
    out: Flat = {}
    for comp, p in enumerate(vec):
        for exp, coeff in p.terms.items():
            out[(comp, exp)] = coeff
    return out


def unflatten_vector(flat: Flat, rank: int, nvars: int) -> Vector:
    per_comp: list[dict] = [dict() for _ in range(rank)]
    for (comp, exp), coeff in flat.items():
        per_comp[comp][exp] = coeff
    return tuple(Poly(nvars, t) for t in per_comp)


def _leading(flat: Flat, order: MonomialOrder) -> tuple[FlatKey, Fraction]:
    key = max(flat, key=lambda ce: order.module_key(ce[0], ce[1]))
    return key, flat[key]


def _maxdeg(flat: Flat) -> int:
    return max(sum(exp) for (_, exp) in flat)


def _scale_into(dst: Flat, src: Flat, coeff: Fraction, shift: ExpVec) -> None:
    """dst += coeff * x^shift * src, in place."""
    if not coeff:
        return
    for (comp, exp), c in src.items():
        k = (comp, exp_mul(exp, shift))
        s = dst.get(k)
        if s is None:
            dst[k] = coeff * c
        else:
            s = s + coeff * c
            if s:
                dst[k] = s
            else:
                del dst[k]


def _poly_scale_into(dst: dict, src: dict, coeff: Fraction, shift: ExpVec) -> None:
    """Same as _scale_into for plain polynomial dicts (exponent keys)."""
    if not coeff:
        return
    for exp, c in src.items():
        k = exp_mul(exp, shift)
        s = dst.get(k)
        if s is None:
            dst[k] = coeff * c
        else:
            s = s + coeff * c
            if s:
                dst[k] = s
            else:
                del dst[k]


def _normalize_content(flat: Flat, order: MonomialOrder) -> Flat:
    """Clear denominators, divide by content, make the leading coeff positive."""
    if not flat:
        return flat
    den = 1
    for c in flat.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in flat.values():
        num = gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    _, lead = _leading(flat, order)
    if lead * scale < 0:
        scale = -scale
    return {k: c * scale for k, c in flat.items()}


class _Gen:
    """A basis element with its cached leading data."""

    __slots__ = ("flat", "lt", "lc", "ecart")

    def __init__(self, flat: Flat, order: MonomialOrder):
        self.flat = flat
        self.lt, self.lc = _leading(flat, order)
        self.ecart = _maxdeg(flat) - sum(self.lt[1])


@dataclass
class ModuleBasis:
    """A generating set for a submodule of O^ambient_rank.

    generators are tuples of Poly, all of the same length ambient_rank.
    is_reduced is True only for a fully tail-reduced basis under a global
    order; local standard bases are lead-interreduced but keep their tails.
    """

    ambient_rank: int
    generators: list
    order: MonomialOrder
    is_reduced: bool = False
    completed: bool = False

    def __post_init__(self):
        gens = []
        nv = None
        for g in self.generators:
            if isinstance(g, Poly):
                g = (g,)
            g = tuple(g)
            if len(g) != self.ambient_rank:
                raise ValueError(
                    f"generator has {len(g)} components, ambient rank is "
                    f"{self.ambient_rank}")
            for p in g:
                if nv is None:
                    nv = p.nvars
                elif p.nvars != nv:
                    raise ValueError("generators live in different rings")
            if any(p.terms for p in g):
                gens.append(g)
        self.generators = gens
        self.nvars = nv
        self._stacked = None

    def leading_terms(self) -> list[FlatKey]:
        return [_leading(flatten_vector(g), self.order)[0] for g in self.generators]


# -- division ---------------------------------------------------------------

def _normal_form(f: Flat, gens: list, order: MonomialOrder,
                 counter: _Counter, certificate: bool = False,
                 stop_components: Optional[int] = None):
    """Division with remainder, Mora-style under a local order.

    Returns (h, unit, quotients) with the exact identity
        unit * f  =  sum_i quotients[i] * gens[i].flat  +  h
    where unit = 1 under a global order and a unit of the local ring
    otherwise.  unit and quotients are plain polynomial dicts; they are
    None unless certificate=True.

    Under a local order the reducer set is extended by intermediate results
    whose ecart is smaller (Mora's trick); those carry their own certificate
    data so the final identity still refers to the original gens only.

    stop_components: if given, stop as soon as the leading term falls in a
    component >= stop_components (used for division against a stacked basis
    where the lower block is bookkeeping, under position-over-term this is
    exactly "the working block is exhausted").
    """
    local = not order.is_global
    nloc = len(gens)
    # Working list entries: (gen, cert_c or None, cert_q or None); cert data
    # expresses the element as c*f - sum q_i g_i over the ORIGINAL gens.
    zero_exp: Optional[ExpVec] = None
    if gens:
        zero_exp = (0,) * len(gens[0].lt[1])
    elif f:
        zero_exp = (0,) * len(next(iter(f))[1])

    work = [(g, None, None) for g in gens]

    h = dict(f)
    if certificate:
        c_h: dict = {zero_exp: Fraction(1)} if zero_exp is not None else {}
        q_h: dict = {}  # index -> poly dict
    else:
        c_h = q_h = None

    while h:
        lt, lc = _leading(h, order)
        if stop_components is not None and lt[0] >= stop_components:
            break
        comp, exp = lt
        best = None
        best_ecart = None
        for i, (g, _, _) in enumerate(work):
            gc, ge = g.lt
            if gc != comp or not exp_divides(ge, exp):
                continue
            if best is None or g.ecart < best_ecart:
                best, best_ecart = i, g.ecart
        counter.tick()
        if best is None:
            break
        g, gc_c, gc_q = work[best]
        if local and g.ecart > _maxdeg(h) - sum(exp):
            # Reducer has larger ecart: remember the current h as an extra
            # reducer before cancelling, so the loop cannot cycle upward.
            extra = _Gen(dict(h), order)
            if certificate:
                work.append((extra, dict(c_h), {k: dict(v) for k, v in q_h.items()}))
            else:
                work.append((extra, None, None))
        shift = exp_sub(exp, g.lt[1])
        coeff = lc / g.lc
        _scale_into(h, g.flat, -coeff, shift)
        if certificate:
            if best < nloc:
                # Original generator: u*f = ... + q_best * g_best.
                qd = q_h.setdefault(best, {})
                _poly_scale_into(qd, {zero_exp: Fraction(1)}, coeff, shift)
            else:
                # T-extension element t with t = c_t*f - sum q_t,i g_i:
                # subtracting coeff*x^shift*t rewrites both certificates.
                _poly_scale_into(c_h, gc_c, -coeff, shift)
                for i, qd in gc_q.items():
                    _poly_scale_into(q_h.setdefault(i, {}), qd, -coeff, shift)
    if certificate:
        quots = [q_h.get(i, {}) for i in range(nloc)]
        return h, c_h, quots
    return h, None, None


# -- completion --------------------------------------------------------------

def _spair(gi: _Gen, gj: _Gen) -> Flat:
    """The s-vector of two elements with the same leading component,
    cross-multiplied to stay denominator free."""
    comp = gi.lt[0]
    lcm = exp_lcm(gi.lt[1], gj.lt[1])
    si = exp_sub(lcm, gi.lt[1])
    sj = exp_sub(lcm, gj.lt[1])
    out: Flat = {}
    _scale_into(out, gi.flat, gj.lc, si)
    _scale_into(out, gj.flat, -gi.lc, sj)
    return out


def _complete(flats: list, order: MonomialOrder, ambient_rank: int,
              counter: _Counter) -> list:
    """Buchberger/Mora completion; returns the list of _Gen (not interreduced)."""
    gens: list = []
    pairs: dict = {}   # (i, j) -> sort key
    treated: set = set()

    def add_elem(flat: Flat) -> None:
        flat = _normalize_content(flat, order)
        g = _Gen(flat, order)
        k = len(gens)
        gens.append(g)
        for i in range(k):
            if gens[i].lt[0] != g.lt[0]:
                continue
            lcm = exp_lcm(gens[i].lt[1], g.lt[1])
            if ambient_rank == 1 and lcm == exp_mul(gens[i].lt[1], g.lt[1]):
                # Coprime leading monomials reduce to zero (ideal case only).
                treated.add((i, k))
                continue
            pairs[(i, k)] = (sum(lcm), g.lt[0], lcm, i, k)

    for flat in flats:
        if flat:
            add_elem(dict(flat))

    while pairs:
        counter.tick()
        ij = min(pairs, key=pairs.get)
        i, j = ij
        lcm = exp_lcm(gens[i].lt[1], gens[j].lt[1])
        del pairs[ij]
        treated.add(ij)
        # Classical chain criterion: skip if some third leading term divides
        # the lcm and both side pairs were already handled.
        skip = False
        for k in range(len(gens)):
            if k == i or k == j or gens[k].lt[0] != gens[i].lt[0]:
                continue
            if not exp_divides(gens[k].lt[1], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in treated and b in treated:
                skip = True
                break
        if skip:
            continue
        s = _spair(gens[i], gens[j])
        if not s:
            continue
        h, _, _ = _normal_form(s, gens, order, counter)
        if h:
            add_elem(h)
    return gens


def _lead_interreduce(gens: list, order: MonomialOrder) -> list:
    """Drop elements whose leading term is divisible by another one's."""
    keep: list = []
    indexed = sorted(range(len(gens)),
                     key=lambda i: order.module_key(*gens[i].lt),
                     reverse=True)
    for i in indexed:
        g = gens[i]
        redundant = False
        for h in keep:
            if h.lt[0] == g.lt[0] and exp_divides(h.lt[1], g.lt[1]):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return keep


def _tail_reduce(gens: list, order: MonomialOrder, counter: _Counter) -> list:
    """Fully reduce each element against the others and make it monic
    (global orders only, where this is the unique reduced basis)."""
    out = []
    for i, g in enumerate(gens):
        others = [h for j, h in enumerate(gens) if j != i]
        h, _, _ = _normal_form(g.flat, others, order, counter)
        if not h:
            continue
        lt, lc = _leading(h, order)
        h = {k: c / lc for k, c in h.items()}
        out.append(_Gen(h, order))
    return _lead_interreduce(out, order)


def groebner_basis(basis: ModuleBasis, max_steps: Optional[int] = None) -> ModuleBasis:
    """Complete a generating set to a standard basis.

    Global order: the unique reduced (monic, tail-reduced) Groebner basis.
    Local order: a lead-interreduced standard basis (tails kept, since tail
    reduction need not terminate in the local ring).
    """
    if basis.completed:
        return basis
    counter = _Counter(max_steps)
    flats = [flatten_vector(g) for g in basis.generators]
    gens = _complete(flats, basis.order, basis.ambient_rank, counter)
    gens = _lead_interreduce(gens, basis.order)
    if basis.order.is_global:
        gens = _tail_reduce(gens, basis.order, counter)
    gens.sort(key=lambda g: basis.order.module_key(*g.lt), reverse=True)
    vectors = [unflatten_vector(g.flat, basis.ambient_rank, basis.nvars)
               for g in gens]
    out = ModuleBasis(basis.ambient_rank, vectors, basis.order,
                      is_reduced=basis.order.is_global, completed=True)
    return out


def quotient_dimension(basis: ModuleBasis, max_steps: Optional[int] = None):
    """dim_Q of O^r / <generators>, as a vector space; INFINITE if not finite.

    O is the local ring at the origin for a local order and the polynomial
    ring for a global one.  The dimension is the number of standard
    monomials: pairs (component, monomial) outside the leading-term module.
    """
    completed = groebner_basis(basis, max_steps)
    if not completed.generators:
        return INFINITE
    r = completed.ambient_rank
    nv = completed.nvars
    lts: list = [[] for _ in range(r)]
    for g in completed.generators:
        flat = flatten_vector(g)
        (comp, exp), _ = _leading(flat, completed.order)
        lts[comp].append(exp)
    total = 0
    for comp in range(r):
        exps = lts[comp]
        bounds = []
        for i in range(nv):
            pure = [e[i] for e in exps if all(e[j] == 0 for j in range(nv) if j != i)]
            if not pure:
                return INFINITE
            bounds.append(min(pure))
        for mono in product(*(range(b) for b in bounds)):
            if not any(exp_divides(e, mono) for e in exps):
                total += 1
    return total


# -- stacked bases: syzygies, membership certificates ------------------------

class _StackedBasis:
    """Completion of the module generated by g_j + e_j in O^(r+s).

    The order is position-over-term with the original components dominant,
    so an element reduces its upper block first.  Completed elements with
    vanishing upper block are exactly the syzygies of the g_j; dividing
    (v, 0) against the basis until the upper block dies yields a membership
    certificate for v in terms of the original generators.
    """

    def __init__(self, basis: ModuleBasis, max_steps: Optional[int]):
        self.rank = basis.ambient_rank
        self.count = len(basis.generators)
        self.nvars = basis.nvars
        order = basis.order
        if order.module_extension != "position-over-term":
            order = MonomialOrder(order.kind, "position-over-term")
        self.order = order
        counter = _Counter(max_steps)
        flats = []
        for j, g in enumerate(basis.generators):
            flat = flatten_vector(g)
            flat[(self.rank + j, (0,) * self.nvars)] = Fraction(1)
            flats.append(flat)
        gens = _complete(flats, order, self.rank + self.count, counter)
        self.gens = gens
        self.counter = counter

    def syzygy_vectors(self) -> list:
        """Syzygies of the original generators, as vectors in O^count."""
        out = []
        seen = []
        for g in self.gens:
            if any(comp < self.rank for (comp, _) in g.flat):
                continue
            lower = {(comp - self.rank, exp): c for (comp, exp), c in g.flat.items()}
            lg = _Gen(lower, self.order)
            out.append(lg)
        out = _lead_interreduce(out, self.order)
        return [unflatten_vector(g.flat, self.count, self.nvars) for g in out]

    def express(self, vec: Sequence[Poly]):
        """Certificate (unit, coeffs, remainder) with
        unit * vec = sum coeffs[j] * g_j + remainder."""
        flat = flatten_vector(vec)
        h, c_h, _ = _normal_form(flat, self.gens, self.order, self.counter,
                                 certificate=True,
                                 stop_components=self.rank)
        upper = {k: c for k, c in h.items() if k[0] < self.rank}
        lower = {(k[0] - self.rank, k[1]): c for k, c in h.items()
                 if k[0] >= self.rank}
        unit = Poly(self.nvars, c_h)
        if not self.order.is_global and unit.constant_term() == 0:
            raise AssertionError("division produced a non-unit multiplier")
        coeffs = unflatten_vector({k: -c for k, c in lower.items()},
                                  self.count, self.nvars)
        remainder = unflatten_vector(upper, self.rank, self.nvars)
        return unit, coeffs, remainder


def _stacked(basis: ModuleBasis, max_steps: Optional[int]) -> _StackedBasis:
    if getattr(basis, "_stacked", None) is None:
        basis._stacked = _StackedBasis(basis, max_steps)
    return basis._stacked


def syzygies_of_basis(basis: ModuleBasis, max_steps: Optional[int] = None) -> list:
    """Generators of the syzygy module {w : sum w_j g_j = 0} in O^len(gens)."""
    return _stacked(basis, max_steps).syzygy_vectors()


def syzygies(m, order: MonomialOrder = LOCAL, max_steps: Optional[int] = None):
    """Syzygy matrix of a polynomial matrix: columns generate ker(m: O^c -> O^r).

    Returns a PolyMatrix z with m * z = 0 whose columns generate all
    relations among the columns of m over the (local or global) ring.
    """
    from .matalg import PolyMatrix
    cols = [m.column(j) for j in range(m.cols)]
    basis = ModuleBasis(m.rows, cols, order)
    # Zero columns were dropped by ModuleBasis; recover their trivial syzygies.
    keep = [j for j in range(m.cols) if any(p.terms for p in m.column(j))]
    vecs = syzygies_of_basis(basis, max_steps)
    out_cols: list = []
    nv = m.nvars
    for v in vecs:
        col = [Poly.zero(nv)] * m.cols
        for slot, j in enumerate(keep):
            col[j] = v[slot]
        out_cols.append(col)
    for j in range(m.cols):
        if j not in keep:
            col = [Poly.zero(nv)] * m.cols
            col[j] = Poly.constant(nv, 1)
            out_cols.append(col)
    return PolyMatrix.from_columns(m.cols, out_cols, nv)


@dataclass
class MemberResult:
    """Outcome of a membership test.

    On success (contains=True) the exact identity
        unit * vec = sum coefficients[j] * generators[j]
    holds, with unit = 1 for a global order and unit(0) != 0 for a local
    one.  On failure, remainder is the (order-dependent) normal form.
    """

    contains: bool
    coefficients: tuple
    unit: Poly
    remainder: tuple


def member(vec, basis: ModuleBasis, max_steps: Optional[int] = None) -> MemberResult:
    """Decide membership of a vector (or Poly, for rank 1) with certificate.

    The certificate satisfies unit * vec == sum coefficients[i] *
    generators[i] + remainder, with unit == 1 under a global order and a
    unit of the local ring otherwise.  For a bare Poly input the remainder
    is returned as a bare Poly as well.
    """
    scalar = isinstance(vec, Poly)
    if scalar:
        vec = (vec,)
    vec = tuple(vec)
    if len(vec) != basis.ambient_rank:
        raise ValueError("vector rank does not match ambient rank")
    if all(p.is_zero() for p in vec):
        nv = basis.nvars if basis.nvars is not None else vec[0].nvars
        zero = tuple(Poly.zero(nv) for _ in basis.generators)
        return MemberResult(True, zero, Poly.constant(nv, 1),
                            vec[0] if scalar else vec)
    st = _stacked(basis, max_steps)
    unit, coeffs, remainder = st.express(vec)
    ok = all(p.is_zero() for p in remainder)
    return MemberResult(ok, coeffs, unit,
                        remainder[0] if scalar else remainder)
