"""Spectra of quasi-homogeneous germs and the numbers read off them.

Normalization: the monomial x^a of a weighted-homogeneous Milnor basis
contributes the spectral number sum_i (a_i + 1) w_i - 1.  For a germ in n+1
variables the spectrum lies in (-1, n) and is symmetric about (n-1)/2; plane
curve spectra are symmetric about 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactlinalg import rank_and_kernel
from .localinv import LocalGerm, NonIsolated, milnor_basis
from .polycore import Q, rational_str


class NotQuasiHomogeneous(ValueError):
    pass


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Multiset of spectral numbers ``{b: d(b)}`` of a germ of dimension ``n``."""

    multiplicities: tuple  # sorted ((b, d), ...)
    n: int

    @classmethod
    def from_values(cls, values: Iterable, n: int) -> "Spectrum":
        c = Counter(Q(v) for v in values)
        return cls(tuple(sorted(c.items())), n)

    @property
    def values(self) -> list:
        """All spectral numbers with repetition, increasing."""
        return [b for b, d in self.multiplicities for _ in range(d)]

    @property
    def distinct(self) -> list:
        return [b for b, _ in self.multiplicities]

    def multiplicity(self, b) -> int:
        return dict(self.multiplicities).get(Q(b), 0)

    def __len__(self):
        return sum(d for _, d in self.multiplicities)

    @property
    def mu(self) -> int:
        return len(self)

    def is_symmetric(self) -> bool:
        centre = mpq(self.n - 1)
        m = dict(self.multiplicities)
        return all(m.get(centre - b, 0) == d for b, d in m.items())

    def in_range(self) -> bool:
        return all(-1 < b < self.n for b in self.distinct)

    def roundup(self, x):
        """x itself when it is a spectral value, else the next larger one (None past the top)."""
        x = Q(x)
        for b in self.distinct:
            if b >= x:
                return b
        return None

    def as_strings(self) -> list[str]:
        return [rational_str(b) for b in self.values]


# ---------------------------------------------------------------------------
# weights


def find_weights(g: LocalGerm):
    """Weights w with sum a_i w_i = 1 on the support of f, or None.

    Returns None when the system is inconsistent, not uniquely solvable, or
    the solution leaves (0, 1/2].
    """
    f = g.f
    if f.is_zero():
        return None
    n = f.nvars
    rows = [list(e) + [-1] for e in sorted(f.terms)]
    res = rank_and_kernel(rows)
    sols = [v for v in res.kernel_basis if v[n]]
    if res.kernel_dim != 1 or not sols:
        return None
    v = sols[0]
    w = tuple(v[i] / v[n] for i in range(n))
    if not all(0 < wi <= mpq(1, 2) for wi in w):
        return None
    return w


def weighted_degree(m: Sequence[int], weights: Sequence) -> mpq:
    return sum((a * Q(w) for a, w in zip(m, weights)), mpq(0))


def milnor_orlik(weights: Sequence) -> mpq:
    """Milnor number prod(1/w_i - 1) of an isolated quasi-homogeneous germ."""
    return prod((1 / Q(w) - 1 for w in weights), start=mpq(1))


def _require_weights(g: LocalGerm):
    w = find_weights(g)
    if w is None:
        raise NotQuasiHomogeneous("germ is not quasi-homogeneous with weights in (0, 1/2]")
    return w


# ---------------------------------------------------------------------------
# spectrum and Hodge numbers


def spectral_number(m: Sequence[int], weights: Sequence) -> mpq:
    return sum((Q(w) * (a + 1) for a, w in zip(m, weights)), mpq(0)) - 1


def spectrum_qh(g: LocalGerm) -> Spectrum:
    w = _require_weights(g)
    basis = milnor_basis(g, w).monomials
    return Spectrum.from_values((spectral_number(m, w) for m in basis), g.dim)


def is_morse(g: LocalGerm) -> bool:
    """Nondegenerate quadratic part at the origin (an A1 point, mu = 1)."""
    f = g.f
    if f.min_degree < 2:
        return False
    n = f.nvars
    hess = []
    for i in range(n):
        row = []
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = f.coefficient(tuple(e))
            row.append(c * 2 if i == j else c)
        hess.append(row)
    return rank_and_kernel(hess).rank == n


def germ_spectrum(g: LocalGerm) -> Spectrum:
    """Spectrum of a quasi-homogeneous germ, or of an A1 point in any coordinates."""
    if find_weights(g) is not None:
        return spectrum_qh(g)
    if is_morse(g):
        return Spectrum.from_values([mpq(g.dim - 1, 2)], g.dim)
    raise NotQuasiHomogeneous("spectrum unavailable: germ is neither quasi-homogeneous nor Morse")


def hodge_numbers(sp: Spectrum) -> list[int]:
    """s_k = number of spectral values b with n-k-1 < b <= n-k, for k = 0..n."""
    n = sp.n
    s = [0] * (n + 1)
    for b, d in sp.multiplicities:
        for k in range(n + 1):
            if n - k - 1 < b <= n - k:
                s[k] += d
                break
    return s


def geometric_genus(g: LocalGerm) -> int:
    if g.dim != 2:
        raise DimensionError("geometric genus is computed for surface germs only")
    return hodge_numbers(spectrum_qh(g))[2]


# ---------------------------------------------------------------------------
# V-degrees of multiples of f


def v_degree(m: Sequence[int], weights: Sequence, extra_shift=0) -> mpq:
    return spectral_number(m, weights) + Q(extra_shift)


@dataclass
class InducedFiltration:
    weights: tuple
    spectrum: Spectrum
    f_degree: mpq          # V-degree of the class of f times the volume form
    generator: mpq | None  # rounded up to the spectrum

    def induced_degree(self, m: Sequence[int]):
        """Rounded V-degree of the class of x^m f times the volume form."""
        if self.generator is None:
            return None
        return self.spectrum.roundup(self.generator + weighted_degree(m, self.weights))

    def gaps(self) -> list:
        """Spectral values strictly between the generator degree and the first
        induced degree above it."""
        if self.generator is None:
            return []
        n = len(self.weights)
        steps = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            d = self.induced_degree(e)
            if d is not None:
                steps.append(d)
        top = min(steps, default=None)
        return [b for b in self.spectrum.distinct
                if b > self.generator and (top is None or b < top)]


def induced_filtration(g: LocalGerm) -> InducedFiltration:
    w = _require_weights(g)
    sp = spectrum_qh(g)
    fdeg = v_degree((0,) * g.nvars, w, 1)
    # the class of f lies strictly above its naive degree
    return InducedFiltration(w, sp, fdeg, _strictly_above(sp, fdeg))


def _strictly_above(sp: Spectrum, x):
    for b in sp.distinct:
        if b > x:
            return b
    return None


def induced_filtration_gaps(g: LocalGerm) -> list:
    return induced_filtration(g).gaps()


# ---------------------------------------------------------------------------
# combination rules and inequality checks


def thom_sebastiani(sp_f: Spectrum, sp_g: Spectrum) -> Spectrum:
    """Spectrum of f(x) + g(y) in disjoint variables: all a + b + 1."""
    vals = Counter()
    for a, da in sp_f.multiplicities:
        for b, db in sp_g.multiplicities:
            vals[a + b + 1] += da * db
    return Spectrum(tuple(sorted(vals.items())), sp_f.n + sp_g.n + 1)


def _curve(sp: Spectrum):
    if sp.n != 1:
        raise DimensionError("this check applies to plane curve spectra (n = 1)")


def pairing_check(sp: Spectrum) -> bool:
    _curve(sp)
    pos = [b for b in sp.values if b > 0]
    k = len(pos)
    return all(pos[j] + pos[k - 1 - j] >= 1 for j in range(k))


def hertling_variance_check(sp: Spectrum):
    """(variance, (max - min)/12, variance <= bound) for a curve spectrum."""
    _curve(sp)
    vals = sp.values
    mu = len(vals)
    mean = sum(vals, mpq(0)) / mu
    lhs = sum(((a - mean) ** 2 for a in vals), mpq(0)) / mu
    rhs = (vals[-1] - vals[0]) / 12
    return lhs, rhs, lhs <= rhs


def nemethi_check(g: LocalGerm):
    """(p_g, mu/6, p_g <= mu/6) for a suspension f(x, y) + z^2."""
    if g.dim != 2:
        raise DimensionError("expects a surface germ f(x, y) + z^2")
    sp = spectrum_qh(g)
    pg = hodge_numbers(sp)[2]
    bound = mpq(len(sp), 6)
    return pg, bound, pg <= bound


__all__ = [
    "DimensionError",
    "InducedFiltration",
    "NonIsolated",
    "NotQuasiHomogeneous",
    "Spectrum",
    "find_weights",
    "geometric_genus",
    "germ_spectrum",
    "hertling_variance_check",
    "hodge_numbers",
    "induced_filtration",
    "induced_filtration_gaps",
    "is_morse",
    "milnor_orlik",
    "nemethi_check",
    "pairing_check",
    "spectral_number",
    "spectrum_qh",
    "thom_sebastiani",
    "v_degree",
    "weighted_degree",
]
