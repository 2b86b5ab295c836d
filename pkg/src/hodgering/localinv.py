"""Standard bases in the local ring and the invariants they give.

The engine is Mora's tangent cone algorithm for a local degree order (the
negative degree reverse lexicographic order, optionally with integer weights).
Once the leading ideal becomes zero-dimensional the *highest corner* is known:
every monomial of order-degree above the largest standard monomial lies in
the ideal, so all polynomials are truncated there and the remaining work is
finite.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .polycore import (
    MonomialOrder,
    Polynomial,
    Q,
    gradient,
    monomials_of_degree,
    translate_to_origin,
)

log = logging.getLogger(__name__)


class NonIsolated(ValueError):
    """The quotient by the ideal is infinite-dimensional at the origin."""


class NotSingular(ValueError):
    """The origin is not a singular point of the germ."""


# ---------------------------------------------------------------------------
# germs


@dataclass(frozen=True)
class LocalGerm:
    """A hypersurface germ, stored translated so the base point is the origin."""

    f: Polynomial
    point: tuple = ()

    def __post_init__(self):
        if not self.point:
            object.__setattr__(self, "point", (mpq(0),) * self.f.nvars)
        elif len(self.point) != self.f.nvars:
            raise ValueError("base point dimension does not match variable count")

    @classmethod
    def at(cls, f: Polynomial, point: Sequence) -> "LocalGerm":
        pt = tuple(Q(v) for v in point)
        return cls(translate_to_origin(f, pt), pt)

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def dim(self) -> int:
        """Dimension n of the hypersurface germ (variables minus one)."""
        return self.f.nvars - 1

    def is_singular(self) -> bool:
        return not self.f.constant_term() and all(not g.constant_term() for g in gradient(self.f))


def _check_singular(g: LocalGerm):
    if g.f.constant_term():
        raise NotSingular("the base point does not lie on the hypersurface")
    for i, d in enumerate(gradient(g.f)):
        if d.constant_term():
            raise NotSingular(f"partial derivative {i} is a unit at the base point")


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    """Polynomials are plain dicts exponent -> mpq; all caches live here."""

    def __init__(self, order: MonomialOrder):
        if not order.is_local:
            raise ValueError("standard bases here need a local order")
        self.order = order
        self.n = order.nvars
        self._key: dict = {}
        self._deg: dict = {}
        self.cut = None  # terms of order-degree > cut are dropped

    def key(self, e):
        k = self._key.get(e)
        if k is None:
            k = self._key[e] = self.order.key(e)
        return k

    def deg(self, e):
        d = self._deg.get(e)
        if d is None:
            d = self._deg[e] = self.order.degree(e)
        return d

    def lm(self, p: dict):
        return max(p, key=self.key)

    def ecart(self, p: dict, lm) -> int:
        return max(self.deg(e) for e in p) - self.deg(lm)

    def truncate(self, p: dict) -> dict:
        if self.cut is None:
            return p
        cut, deg = self.cut, self.deg
        return {e: c for e, c in p.items() if deg(e) <= cut}

    def sub_mul(self, h: dict, coef, mono, g: dict) -> dict:
        """h - coef * x^mono * g, truncated."""
        out = dict(h)
        cut, deg = self.cut, self.deg
        for e, c in g.items():
            m = tuple(a + b for a, b in zip(e, mono))
            if cut is not None and deg(m) > cut:
                continue
            s = out.get(m, 0) - coef * c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out


@dataclass
class _Elem:
    p: dict
    lm: tuple
    lc: object
    ecart: int


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quot(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class StandardBasis:
    """A standard basis of an ideal of the local ring, with its leading data."""

    generators: list
    order: MonomialOrder
    leading: list
    unit: bool = False
    corner: int | None = None
    _engine: _Engine | None = field(default=None, repr=False)

    @property
    def nvars(self) -> int:
        return self.order.nvars

    def is_zero_dimensional(self) -> bool:
        return self.unit or self.corner is not None

    def standard_monomials(self) -> list[tuple]:
        """Monomials outside the leading ideal (raises NonIsolated if infinite)."""
        if self.unit:
            return []
        if self.corner is None:
            raise NonIsolated("leading ideal lacks a pure power of some variable")
        return _standard_monomials(self.leading, self.nvars, self.order, self.corner)

    def leading_ideal(self) -> list[tuple]:
        """Minimal monomial generators of the full leading ideal."""
        if self.unit:
            return [(0,) * self.nvars]
        return _minimal_nonstandard(self.standard_monomials(), self.nvars)

    def dimension(self) -> int:
        return len(self.standard_monomials())

    def polynomials(self, variables=None) -> list[Polynomial]:
        return [Polynomial(g, self.nvars, variables) for g in self.generators]

    def weak_normal_form(self, g: Polynomial) -> dict:
        return _mora_nf(self._engine, dict(g.terms), [_make(self._engine, p) for p in self.generators])

    def reduce(self, g: Polynomial) -> dict:
        """Full normal form: a combination of standard monomials congruent to g.

        Needs a zero-dimensional ideal (the highest corner bounds the work).
        """
        if self.unit:
            return {}
        if self.corner is None:
            raise NonIsolated("full reduction needs a zero-dimensional ideal")
        return _full_reduce(self._engine, dict(g.terms), self)


def _make(eng: _Engine, p: dict) -> _Elem:
    lm = eng.lm(p)
    return _Elem(p, lm, p[lm], eng.ecart(p, lm))


def _has_pure_powers(leading, n) -> bool:
    for i in range(n):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leading):
            return False
    return True


def _minimalize(monos) -> list:
    out = []
    for m in sorted(set(monos), key=sum):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _standard_monomials(leading, n, order: MonomialOrder | None = None, cut=None) -> list[tuple]:
    """Monomials outside the ideal spanned by ``leading`` and by every monomial
    of order-degree above ``cut``."""
    order = order or MonomialOrder.local(n)
    bounds = []
    for i in range(n):
        pure = [e[i] for e in leading if e[i] > 0 and sum(e) == e[i]]
        bounds.append(min(pure) if pure else None)
    if cut is None and None in bounds:
        raise NonIsolated("leading ideal lacks a pure power of some variable")
    unit = [0] * n
    out = []

    def rec(prefix, i, d):
        if i == n:
            out.append(prefix)
            return
        unit[i] = 1
        step = order.degree(tuple(unit))
        unit[i] = 0
        a = 0
        while bounds[i] is None or a < bounds[i]:
            if cut is not None and d + a * step > cut:
                break
            m = prefix + (a,)
            # the prefix padded with zeros is the smallest extension
            if any(_divides(g, m + (0,) * (n - i - 1)) for g in leading):
                break
            rec(m, i + 1, d + a * step)
            a += 1

    rec((), 0, 0)
    out = [m for m in out if not any(_divides(g, m) for g in leading)]
    out.sort(key=order.key, reverse=True)
    return out


def _minimal_nonstandard(std: list, n: int) -> list[tuple]:
    """Minimal generators of the monomial ideal whose complement is ``std``."""
    stdset = set(std)
    cands = set()
    for m in std:
        for i in range(n):
            cands.add(m[:i] + (m[i] + 1,) + m[i + 1:])
    out = []
    for c in cands:
        if c in stdset:
            continue
        if all(c[i] == 0 or (c[:i] + (c[i] - 1,) + c[i + 1:]) in stdset for i in range(n)):
            out.append(c)
    return sorted(out)


def _mora_nf(eng: _Engine, h: dict, T: list) -> dict:
    """Mora's weak normal form of h with respect to T (T is copied)."""
    h = eng.truncate(h)
    if not h:
        return h
    T = list(T)
    while h:
        hl = eng.lm(h)
        cands = [t for t in T if _divides(t.lm, hl)]
        if not cands:
            return h
        he = eng.ecart(h, hl)
        g = min(cands, key=lambda t: t.ecart)
        if g.ecart > he and eng.cut is None:
            T.append(_Elem(h, hl, h[hl], he))
        h = eng.sub_mul(h, h[hl] / g.lc, _quot(hl, g.lm), g.p)
    return h


def _full_reduce(eng: _Engine, h: dict, sb: StandardBasis) -> dict:
    h = eng.truncate(h)
    elems = [_make(eng, p) for p in sb.generators]
    done: dict = {}
    while h:
        hl = eng.lm(h)
        g = None
        for t in elems:
            if _divides(t.lm, hl):
                if g is None or len(t.p) < len(g.p):
                    g = t
        if g is None:
            done[hl] = h.pop(hl)
            continue
        h = eng.sub_mul(h, h[hl] / g.lc, _quot(hl, g.lm), g.p)
    return done


def _corner(eng: _Engine, leading) -> int | None:
    if eng.cut is None and not _has_pure_powers(leading, eng.n):
        return None
    std = _standard_monomials(leading, eng.n, eng.order, eng.cut)
    return max((eng.deg(m) for m in std), default=-1)


def standard_basis(generators: Sequence[Polynomial], order: MonomialOrder | None = None) -> StandardBasis:
    """Standard basis of the ideal generated in the localization at the origin.

    A generator with nonzero constant term makes the ideal the whole ring.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].nvars
    order = order or MonomialOrder.local(n)
    eng = _Engine(order)
    if any(g.constant_term() for g in gens):
        zero = (0,) * n
        return StandardBasis([{zero: mpq(1)}], order, [zero], unit=True, corner=0, _engine=eng)

    S: list[_Elem] = []
    pairs: list[tuple] = []

    def add(h: dict):
        e = _make(eng, h)
        # Gebauer-Moeller style pruning of old pairs
        keep = []
        for (i, j, l) in pairs:
            if S[i] is None or S[j] is None:
                continue
            if _divides(e.lm, l) and _lcm(S[i].lm, e.lm) != l and _lcm(S[j].lm, e.lm) != l:
                continue
            keep.append((i, j, l))
        pairs[:] = keep
        k = len(S)
        S.append(e)
        new = []
        for i in range(k):
            if S[i] is None:
                continue
            l = _lcm(S[i].lm, e.lm)
            if all(a == 0 or b == 0 for a, b in zip(S[i].lm, e.lm)):
                continue  # product criterion
            new.append((i, k, l))
        # among new pairs with equal lcm keep one
        seen = set()
        for p in sorted(new, key=lambda t: eng.key(t[2]), reverse=True):
            if p[2] in seen:
                continue
            seen.add(p[2])
            pairs.append(p)
        update_corner()

    def update_corner():
        lead = _minimalize([s.lm for s in S if s is not None])
        c = _corner(eng, lead)
        if c is not None and (eng.cut is None or c < eng.cut):
            eng.cut = c
            for idx, s in enumerate(S):
                if s is None:
                    continue
                p = eng.truncate(s.p)
                if not p:
                    S[idx] = None
                    continue
                S[idx] = _make(eng, p)

    for g in sorted(gens, key=lambda g: eng.key(eng.lm(g.terms)), reverse=True):
        h = _mora_nf(eng, dict(g.terms), [s for s in S if s is not None])
        if h:
            add(h)

    while pairs:
        # lowest-degree lcm first
        best = max(range(len(pairs)), key=lambda t: eng.key(pairs[t][2]))
        i, j, l = pairs.pop(best)
        a, b = S[i], S[j]
        if a is None or b is None:
            continue
        sp = eng.sub_mul(eng.truncate({_add(m, _quot(l, a.lm)): c / a.lc for m, c in a.p.items()}),
                         1 / b.lc, _quot(l, b.lm), b.p)
        h = _mora_nf(eng, sp, [s for s in S if s is not None])
        if h:
            add(h)

    final = [s for s in S if s is not None]
    lead = _minimalize([s.lm for s in final])
    # keep one generator per minimal leading monomial
    chosen = []
    for m in lead:
        cands = [s for s in final if s.lm == m]
        chosen.append(min(cands, key=lambda s: (s.ecart, len(s.p))))
    gens_out = [{e: c / s.lc for e, c in s.p.items()} for s in chosen]
    return StandardBasis(gens_out, order, lead, unit=False, corner=eng.cut, _engine=eng)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# invariants


def jacobian_ideal(f: Polynomial) -> list[Polynomial]:
    return gradient(f)


def _order_for(g: LocalGerm, weights) -> MonomialOrder:
    if weights is None:
        return MonomialOrder.local(g.nvars)
    return MonomialOrder.local(g.nvars, integer_weights(weights))


def integer_weights(weights: Sequence) -> list[int]:
    """Scale rational weights to the smallest proportional positive integers."""
    from math import gcd, lcm

    ws = [Q(w) for w in weights]
    den = 1
    for w in ws:
        den = lcm(den, int(w.denominator))
    ints = [int(w * den) for w in ws]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def milnor_standard_basis(g: LocalGerm, weights=None) -> StandardBasis:
    _check_singular(g)
    return standard_basis(jacobian_ideal(g.f), _order_for(g, weights))


def tjurina_standard_basis(g: LocalGerm, weights=None) -> StandardBasis:
    _check_singular(g)
    return standard_basis([g.f] + jacobian_ideal(g.f), _order_for(g, weights))


@dataclass
class MilnorAlgebraBasis:
    monomials: list

    @property
    def mu(self) -> int:
        return len(self.monomials)

    def __len__(self):
        return len(self.monomials)


def milnor_basis(g: LocalGerm, weights=None) -> MilnorAlgebraBasis:
    """Standard monomials of the Jacobian ideal (times the volume form they span Omega_f)."""
    return MilnorAlgebraBasis(milnor_standard_basis(g, weights).standard_monomials())


def milnor_number(g: LocalGerm, weights=None) -> int:
    return milnor_standard_basis(g, weights).dimension()


def tjurina_number(g: LocalGerm, weights=None) -> int:
    return tjurina_standard_basis(g, weights).dimension()


def local_membership(g: Polynomial, ideal: Sequence[Polynomial]) -> bool:
    """True iff g lies in the ideal generated in the local ring at the origin."""
    if g.is_zero():
        return True
    sb = standard_basis(list(ideal))
    if sb.unit:
        return True
    return not sb.weak_normal_form(g)


# ---------------------------------------------------------------------------
# brute-force oracle


def truncated_quotient_dim(generators: Sequence[Polynomial], N: int) -> int:
    """dim Q[x] / (I + m^N) by linear algebra on polynomials of degree < N.

    Equals the local quotient dimension as soon as m^N lies in the local ideal.
    """
    from .exactlinalg import span_rank

    n = generators[0].nvars
    monos = [m for k in range(N) for m in monomials_of_degree(k, n)]
    rows = []
    for gen in generators:
        for m in monos:
            if sum(m) + max(gen.min_degree, 0) >= N:
                continue
            row = {}
            for e, c in gen.terms.items():
                t = _add(e, m)
                if sum(t) < N:
                    row[t] = c
            if row:
                rows.append(row)
    return len(monos) - span_rank(rows)


# ---------------------------------------------------------------------------
# minimal Tjurina number on the mu-constant stratum


@dataclass
class TauMinResult:
    tau_min: int
    mu: int
    samples: int
    taus: list
    best_deformation: Polynomial | None
    seed: int


def upper_monomials(g: LocalGerm, weights) -> list[tuple]:
    """Milnor-basis monomials of weighted degree > 1."""
    ws = [Q(w) for w in weights]
    basis = milnor_basis(g, weights).monomials
    return [m for m in basis if sum(a * w for a, w in zip(m, ws)) > 1]


def tau_min_search(g: LocalGerm, samples: int = 32, seed: int = 0, weights=None,
                   coeff_bound: int = 9) -> TauMinResult:
    """Randomized search for the minimal Tjurina number of mu-constant deformations.

    Each sample adds random nonzero integer multiples (|c| <= coeff_bound) of
    every upper monomial to ``g.f``; samples that change mu are rejected
    (ValueError), since they would leave the mu-constant stratum.
    """
    if weights is None:
        from .spectrum import find_weights

        weights = find_weights(g)
        if weights is None:
            raise ValueError("tau_min_search needs a quasi-homogeneous germ or explicit weights")
    mu0 = milnor_number(g, weights)
    uppers = upper_monomials(g, weights)
    rng = random.Random(seed)
    taus = []
    best = None
    best_tau = None
    if not uppers:
        tau = tjurina_number(g, weights)
        return TauMinResult(tau, mu0, samples, [tau] * samples, g.f, seed)
    for s in range(samples):
        terms = dict(g.f.terms)
        for m in uppers:
            c = rng.randint(1, coeff_bound) * rng.choice((1, -1))
            terms[m] = terms.get(m, 0) + c
        ft = Polynomial(terms, g.nvars, g.f.variables)
        gt = LocalGerm(ft)
        mu = milnor_number(gt, weights)
        if mu != mu0:
            raise ValueError(f"sample {s} left the mu-constant stratum (mu={mu}, expected {mu0})")
        tau = tjurina_number(gt, weights)
        log.debug("tau_min sample %d: tau=%d", s, tau)
        taus.append(tau)
        if best_tau is None or tau < best_tau:
            best_tau, best = tau, ft
    return TauMinResult(best_tau, mu0, samples, taus, best, seed)


def random_linear_change(nvars: int, rng: random.Random, bound: int = 3) -> list[list[int]]:
    """A random invertible integer matrix (unit lower times unit upper triangular)."""
    L = [[(1 if i == j else (rng.randint(-bound, bound) if j < i else 0)) for j in range(nvars)]
         for i in range(nvars)]
    U = [[(1 if i == j else (rng.randint(-bound, bound) if j > i else 0)) for j in range(nvars)]
         for i in range(nvars)]
    perm = list(range(nvars))
    rng.shuffle(perm)
    M = [[sum(L[i][k] * U[k][j] for k in range(nvars)) for j in range(nvars)] for i in range(nvars)]
    return [M[p] for p in perm]


__all__ = [
    "LocalGerm",
    "MilnorAlgebraBasis",
    "NonIsolated",
    "NotSingular",
    "StandardBasis",
    "TauMinResult",
    "integer_weights",
    "local_membership",
    "milnor_basis",
    "milnor_number",
    "random_linear_change",
    "standard_basis",
    "tau_min_search",
    "tjurina_number",
    "truncated_quotient_dim",
    "upper_monomials",
]
