"""Graded Jacobian rings of projective hypersurfaces with isolated singularities.

F is a homogeneous polynomial of degree d in n+2 variables X_0..X_{n+1}; the
hypersurface X = V(F) has dimension n.  Every dimension below is a rank
computation on explicit matrices of monomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from gmpy2 import mpq

from . import exactlinalg
from .localinv import LocalGerm, milnor_number, tjurina_standard_basis
from .polycore import (
    NotHomogeneousError,
    Polynomial,
    Q,
    dehomogenize,
    gradient,
    monomials_of_degree,
    translate_to_origin,
)


class PrecondH0(RuntimeError):
    """H^0 of the log n-forms is nonzero, so the four-term sequence is unavailable."""


class IncompleteSingularList(RuntimeError):
    """The stabilized Hilbert function does not match the listed singular points."""


class NotASingularPoint(ValueError):
    pass


# ---------------------------------------------------------------------------
# pure numbers


def graded_dim_S(k: int, nvars: int) -> int:
    return comb(k + nvars - 1, nvars - 1) if k >= 0 else 0


def hilbert_series_smooth(d: int, n: int) -> list[int]:
    """Coefficients of (1 + t + ... + t^(d-2))^(n+2)."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    coeffs = [1]
    for _ in range(n + 2):
        out = [0] * (len(coeffs) + d - 2)
        for i, c in enumerate(coeffs):
            for j in range(d - 1):
                out[i + j] += c
        coeffs = out
    return coeffs


def c_d(d: int, n: int) -> int:
    if d < 2:
        raise ValueError("degree must be at least 2")
    return comb(2 * d - 1, n + 1) - (n + 2) * comb(d, n + 1)


# ---------------------------------------------------------------------------
# Jacobian matrices


def _require_homogeneous(F: Polynomial) -> int:
    if F.is_zero() or not F.is_homogeneous():
        raise NotHomogeneousError("F must be a nonzero homogeneous polynomial")
    return F.degree


def _multiples(polys: Sequence[Polynomial], shift_degree: int) -> list[dict]:
    """Sparse vectors m * p for every p and every monomial m of degree shift_degree."""
    if not polys:
        return []
    nv = polys[0].nvars
    cols = []
    for p in polys:
        for m in monomials_of_degree(shift_degree, nv):
            cols.append({tuple(a + b for a, b in zip(e, m)): c for e, c in p.terms.items()})
    return cols


def jacobian_matrix(F: Polynomial, k: int) -> exactlinalg.RationalMatrix:
    """Matrix of (A_i) -> sum A_i dF/dX_i from S_{k-d+1}^{n+2} to S_k."""
    d = _require_homogeneous(F)
    return _to_matrix(_multiples(gradient(F), k - d + 1), F.nvars, k)


def jacobian_rank(F: Polynomial, k: int, sparse: bool | None = None) -> int:
    """dim J(F)_k."""
    return exactlinalg.rank(jacobian_matrix(F, k), sparse)


def _to_matrix(cols: list[dict], nvars: int, k: int) -> exactlinalg.RationalMatrix:
    monos = monomials_of_degree(k, nvars)
    index = {m: i for i, m in enumerate(monos)}
    return exactlinalg.RationalMatrix.from_columns(
        [{index[e]: c for e, c in col.items()} for col in cols], len(monos))


def jacobian_ring_dim(F: Polynomial, k: int, sparse: bool | None = None) -> int:
    """dim R_k for R = S / J(F)."""
    _require_homogeneous(F)
    return graded_dim_S(k, F.nvars) - jacobian_rank(F, k, sparse)


def h0_log(F: Polynomial) -> int:
    """dim ker(h) - dim S_{d-n-2} for h: S_{d-n-1}^{n+2} -> S_{2d-n-2} / F S_{d-n-2}."""
    d = _require_homogeneous(F)
    nv = F.nvars
    n = nv - 2
    a_deg = d - n - 1
    if a_deg < 0:
        return 0
    jac = _multiples(gradient(F), a_deg)
    fcols = _multiples([F], d - n - 2)
    k = 2 * d - n - 2
    M = _to_matrix(jac + fcols, nv, k)
    # the F-columns are independent, so ker(h) has the dimension of ker(M)
    kernel = M.ncols - exactlinalg.rank(M)
    return kernel - graded_dim_S(d - n - 2, nv)


def h0_log_unreduced(F: Polynomial) -> int:
    """dim ker(S_{d-n-1}^{n+2} -> S_{2d-n-2}); equals :func:`h0_log`."""
    d = _require_homogeneous(F)
    nv = F.nvars
    a_deg = d - (nv - 2) - 1
    if a_deg < 0:
        return 0
    jac = _multiples(gradient(F), a_deg)
    return len(jac) - exactlinalg.span_rank(jac)


# ---------------------------------------------------------------------------
# singular points


@dataclass
class SingularPoint:
    chart: int
    coords: tuple          # affine coordinates in the chart
    germ: LocalGerm
    mu: int
    tau: int

    @property
    def homogeneous(self) -> tuple:
        return self.coords[:self.chart] + (mpq(1),) + self.coords[self.chart:]


def canonical_chart(point: Sequence) -> tuple[int, tuple]:
    """First nonzero homogeneous coordinate and the affine coordinates there."""
    pt = [Q(v) for v in point]
    for i, v in enumerate(pt):
        if v:
            aff = tuple(x / v for j, x in enumerate(pt) if j != i)
            return i, aff
    raise ValueError("the zero vector is not a projective point")


def local_germ(F: Polynomial, chart: int, coords: Sequence) -> LocalGerm:
    f = dehomogenize(F, chart)
    return LocalGerm(translate_to_origin(f, [Q(c) for c in coords]), tuple(Q(c) for c in coords))


def singular_point(F: Polynomial, chart: int, coords: Sequence) -> SingularPoint:
    """Verify that (chart, coords) is an isolated singular point of V(F)."""
    if len(coords) != F.nvars - 1:
        raise ValueError(f"expected {F.nvars - 1} affine coordinates, got {len(coords)}")
    hom = list(coords[:chart]) + [1] + list(coords[chart:])
    chart, coords = canonical_chart(hom)
    if F.evaluate(hom) or any(g.evaluate(hom) for g in gradient(F)):
        raise NotASingularPoint(f"{tuple(hom)} is not a singular point of the hypersurface")
    g = local_germ(F, chart, coords)
    mu = milnor_number(g)  # raises NonIsolated when infinite
    sb = tjurina_standard_basis(g)
    return SingularPoint(chart, tuple(coords), g, mu, sb.dimension())


@dataclass
class HypersurfaceRecord:
    F: Polynomial
    d: int
    n: int
    points: list = field(default_factory=list)

    @classmethod
    def build(cls, F: Polynomial, points: Sequence = ()) -> "HypersurfaceRecord":
        """``points`` holds (chart, affine coords) pairs or homogeneous tuples."""
        d = _require_homogeneous(F)
        verified = []
        for p in points:
            if len(p) == 2 and isinstance(p[0], int) and isinstance(p[1], (tuple, list)):
                verified.append(singular_point(F, p[0], p[1]))
            else:
                chart, aff = canonical_chart(p)
                verified.append(singular_point(F, chart, aff))
        seen = set()
        for sp in verified:
            if sp.homogeneous in seen:
                raise ValueError(f"singular point {sp.homogeneous} listed twice")
            seen.add(sp.homogeneous)
        return cls(F, d, F.nvars - 2, verified)

    @property
    def tau_total(self) -> int:
        return sum(p.tau for p in self.points)

    @property
    def mu_total(self) -> int:
        return sum(p.mu for p in self.points)

    def without(self, index: int) -> "HypersurfaceRecord":
        pts = list(self.points)
        del pts[index]
        return HypersurfaceRecord(self.F, self.d, self.n, pts)


# ---------------------------------------------------------------------------
# global bookkeeping


def stabilization_degree(d: int, n: int) -> int:
    return (n + 2) * (d - 2) + 1


def completeness_check(H: HypersurfaceRecord) -> bool:
    """True iff dim R_k at k* and k*+1 both equal the listed total Tjurina number."""
    k = stabilization_degree(H.d, H.n)
    a = jacobian_ring_dim(H.F, k)
    if a != H.tau_total:
        return False
    return jacobian_ring_dim(H.F, k + 1) == H.tau_total


@dataclass
class SequenceDims:
    dimR: int
    tau_total: int
    h1: int
    h2: int
    c_d: int

    def exact(self) -> bool:
        return self.h1 - self.h2 == self.dimR - self.tau_total and self.h1 >= 0 and self.h2 >= 0


def evaluation_matrix(H: HypersurfaceRecord) -> exactlinalg.RationalMatrix:
    """S_{2d-n-2} -> direct sum of the local Tjurina algebras (columns = monomials)."""
    k = 2 * H.d - H.n - 2
    monos = monomials_of_degree(k, H.F.nvars)
    offset = 0
    columns: list[dict] = [dict() for _ in monos]
    for sp in H.points:
        sb = tjurina_standard_basis(sp.germ)
        std = sb.standard_monomials()
        index = {m: offset + i for i, m in enumerate(std)}
        for j, m in enumerate(monos):
            a = dehomogenize(Polynomial({m: 1}, H.F.nvars), sp.chart)
            a = translate_to_origin(a, sp.coords)
            for e, c in sb.reduce(a).items():
                columns[j][index[e]] = c
        offset += len(std)
    return exactlinalg.RationalMatrix.from_columns(columns, offset)


def sequence_dims(H: HypersurfaceRecord, check: bool = True) -> SequenceDims:
    if check:
        if h0_log(H.F) != 0:
            raise PrecondH0("H^0 of the log n-forms is nonzero")
        if not completeness_check(H):
            raise IncompleteSingularList("listed singular points do not account for the Hilbert function")
    k = 2 * H.d - H.n - 2
    dimR = jacobian_ring_dim(H.F, k)
    tau = H.tau_total
    rank = exactlinalg.rank(evaluation_matrix(H)) if tau else 0
    return SequenceDims(dimR, tau, dimR - rank, tau - rank, c_d(H.d, H.n))


def euler_characteristic_report(H: HypersurfaceRecord, s_list: Sequence[int]) -> tuple[int, int]:
    """(tau + c_d, s_{n-1} + c_d) summed over the listed points."""
    if len(s_list) != len(H.points):
        raise ValueError("need one s_{n-1} value per singular point")
    cd = c_d(H.d, H.n)
    return H.tau_total + cd, sum(s_list) + cd


@dataclass
class SemicontinuityResult:
    holds: bool
    k: int
    dim_J: int
    dims_Jt: list
    equality_required: bool

    def __bool__(self):
        return self.holds


def semicontinuity_check(F: Polynomial, G: Polynomial, k: int, samples: Sequence,
                         points: Sequence = ()) -> SemicontinuityResult:
    """dim J(F+tG)_k >= dim J(F)_k for each t; equality at k = 2d-n-2 when h0_log(F) = 0."""
    d = _require_homogeneous(F)
    if _require_homogeneous(G) != d:
        raise ValueError("F and G must have the same degree")
    for p in points:
        if not G.evaluate(p):
            raise ValueError(f"G vanishes at the singular point {tuple(p)}")
    base = jacobian_rank(F, k)
    dims = [jacobian_rank(F + G * Q(t), k) for t in samples]
    ok = all(x >= base for x in dims)
    n = F.nvars - 2
    need_eq = k == 2 * d - n - 2 and h0_log(F) == 0
    if need_eq:
        ok = ok and all(x == base for x in dims)
    return SemicontinuityResult(ok, k, base, dims, need_eq)
