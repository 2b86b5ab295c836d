"""Class test tau = s_{n-1} and the inequality checks around it."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from importlib import resources

from gmpy2 import mpq

from .localinv import LocalGerm, milnor_number, tau_min_search, tjurina_number
from .polycore import Polynomial, parse_polynomial
from .spectrum import (
    NotQuasiHomogeneous,
    Spectrum,
    find_weights,
    germ_spectrum,
    hodge_numbers,
    spectrum_qh,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceResolutionData:
    """Geometric genus, total genus of exceptional curves, first Betti number of the dual graph."""

    p_g: int
    g: int
    b: int

    def __post_init__(self):
        if min(self.p_g, self.g, self.b) < 0:
            raise ValueError("resolution data must be non-negative")


@dataclass(frozen=True)
class CurveBranchData:
    r: int
    m: int
    delta: int


@dataclass(frozen=True)
class ClassVerdict:
    tau: int
    s_n_minus_1: int
    defect: int
    in_class: bool


def s_from_resolution(mu: int, data: SurfaceResolutionData) -> tuple[int, int, int]:
    """(s_0, s_1, s_2) of a surface germ: s_2 = p_g, s_0 = p_g - g - b."""
    s2 = data.p_g
    s0 = data.p_g - data.g - data.b
    return s0, mu - s0 - s2, s2


def class_test(g: LocalGerm, s_n_minus_1: int | None = None, reference: LocalGerm | None = None,
               tau: int | None = None, weights=None) -> ClassVerdict:
    """Compare tau with s_{n-1}.

    s_{n-1} comes from ``s_n_minus_1`` if given, else from the spectrum of
    ``reference`` (a quasi-homogeneous germ on whose mu-constant stratum g
    lies), else from the spectrum of g itself.
    """
    if s_n_minus_1 is None:
        src = reference if reference is not None else g
        try:
            sp = germ_spectrum(src)
        except NotQuasiHomogeneous:
            raise NotQuasiHomogeneous(
                "spectrum unavailable: germ is not quasi-homogeneous or Morse and no reference or s_{n-1} given"
            ) from None
        s_n_minus_1 = hodge_numbers(sp)[g.dim - 1]
    if tau is None:
        tau = tjurina_number(g, weights)
    defect = tau - s_n_minus_1
    if defect < 0:
        log.warning("negative class defect %d (tau=%d, s=%d): red-flag finding", defect, tau, s_n_minus_1)
    return ClassVerdict(tau, s_n_minus_1, defect, defect == 0)


def wahl_check(mu: int, tau: int, data: SurfaceResolutionData) -> tuple[int, bool]:
    bound = mu - (2 * data.p_g - 2 * data.g - data.b)
    return bound, tau >= bound


def surface_classification(mu: int, tau: int, data: SurfaceResolutionData) -> bool:
    bound, _ = wahl_check(mu, tau, data)
    return data.g == 0 and tau == bound


@dataclass
class ZariskiResult:
    a: int
    mu: int
    tau_expected: int
    p_g: int
    consistent: bool
    tau_min: int | None = None


def zariski_polynomial(a: int) -> Polynomial:
    return parse_polynomial(f"z^2+x^{2 * a + 1}+y^{2 * a + 2}", ["x", "y", "z"])


def zariski_family_check(a: int, samples: int = 0, seed: int = 0) -> ZariskiResult:
    """mu - 2 p_g against 3a(a+1) for z^2 + x^(2a+1) + y^(2a+2); optionally search tau_min."""
    if a < 1:
        raise ValueError("a must be at least 1")
    g = LocalGerm(zariski_polynomial(a))
    sp = spectrum_qh(g)
    mu = len(sp)
    pg = hodge_numbers(sp)[2]
    expected = 3 * a * (a + 1)
    ok = mu - 2 * pg == expected
    tmin = None
    if samples:
        tmin = tau_min_search(g, samples=samples, seed=seed).tau_min
        ok = ok and tmin == expected
    return ZariskiResult(a, mu, expected, pg, ok, tmin)


def curve_branch_data(g: LocalGerm, r: int, mu: int | None = None) -> CurveBranchData:
    """Multiplicity from the lowest degree of f, delta from mu = 2 delta - r + 1."""
    if g.nvars != 2:
        raise ValueError("expects a plane curve germ")
    if mu is None:
        mu = milnor_number(g)
    delta, _, _ = buchweitz_greuel_check(mu, mu, r, g.f.min_degree)
    return CurveBranchData(r, g.f.min_degree, delta)


def buchweitz_greuel_check(tau: int, mu: int, r: int, m: int) -> tuple[int, bool, bool]:
    """(delta, tau >= delta + m - r, delta - r + 1 == tau)."""
    if r < 1:
        raise ValueError("a curve germ has at least one branch")
    if (mu + r - 1) % 2:
        raise ValueError(f"mu + r - 1 must be even (mu={mu}, r={r})")
    delta = (mu + r - 1) // 2
    return delta, tau >= delta + m - r, delta - r + 1 == tau


def suspension_bound_check(g: LocalGerm, m: int) -> tuple[int, int, bool]:
    """dim V^{-2/m} of a homogeneous curve germ of degree m against delta + 2m - 5."""
    if g.nvars != 2:
        raise ValueError("expects a plane curve germ")
    w = find_weights(g)
    if w is None or any(wi != mpq(1, m) for wi in w):
        raise NotQuasiHomogeneous(f"germ is not of homogeneous type with weights 1/{m}")
    if m < 3:
        raise ValueError("m must be at least 3")
    sp: Spectrum = spectrum_qh(g)
    cut = mpq(-2, m)
    dimV = sum(1 for b in sp.values if b >= cut)
    delta = (len(sp) + m - 1) // 2  # r = m branches
    bound = delta + 2 * m - 5
    return dimV, bound, dimV == bound


def homogeneous_dimV_count(m: int) -> int:
    """Closed form (m-1)^2 - #{a1 + a2 <= m-5} for the degree-m homogeneous curve."""
    return (m - 1) ** 2 - max(m - 4, 0) * max(m - 3, 0) // 2


# ---------------------------------------------------------------------------
# catalog of named germs


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    equation: str
    variables: tuple
    mu: int
    tau: int
    p_g: int | None = None
    g: int | None = None
    b: int | None = None
    r: int | None = None
    tau_min: int | None = None

    def germ(self) -> LocalGerm:
        return LocalGerm(parse_polynomial(self.equation, self.variables))

    def resolution_data(self) -> SurfaceResolutionData | None:
        if self.p_g is None:
            return None
        return SurfaceResolutionData(self.p_g, self.g, self.b)


def load_catalog(path=None) -> list[CatalogEntry]:
    """Entries of the bundled catalog, or of a JSON file with the same layout."""
    if path is None:
        text = resources.files("hodgering").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out = []
    for e in json.loads(text)["entries"]:
        e = dict(e)
        e["variables"] = tuple(e["variables"])
        out.append(CatalogEntry(**e))
    return out


def catalog_entry(name: str) -> CatalogEntry:
    for e in load_catalog():
        if e.name == name:
            return e
    raise KeyError(name)


__all__ = [
    "CatalogEntry",
    "ClassVerdict",
    "CurveBranchData",
    "SurfaceResolutionData",
    "ZariskiResult",
    "buchweitz_greuel_check",
    "class_test",
    "curve_branch_data",
    "catalog_entry",
    "homogeneous_dimV_count",
    "load_catalog",
    "s_from_resolution",
    "surface_classification",
    "suspension_bound_check",
    "wahl_check",
    "zariski_family_check",
    "zariski_polynomial",
]
