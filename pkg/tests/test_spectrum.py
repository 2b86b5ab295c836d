from fractions import Fraction

import pytest
from gmpy2 import mpq

from hodgering.localinv import LocalGerm, NonIsolated, milnor_number
from hodgering.polycore import parse_polynomial
from hodgering.spectrum import (
    DimensionError,
    NotQuasiHomogeneous,
    Spectrum,
    find_weights,
    geometric_genus,
    germ_spectrum,
    hertling_variance_check,
    hodge_numbers,
    induced_filtration,
    induced_filtration_gaps,
    is_morse,
    milnor_orlik,
    nemethi_check,
    pairing_check,
    spectrum_qh,
    thom_sebastiani,
    v_degree,
)

V2 = ["x", "y"]
V3 = ["x", "y", "z"]


def germ(s, names=V3):
    return LocalGerm(parse_polynomial(s, names))


def S(*vals, n=1):
    return Spectrum.from_values([Fraction(v) for v in vals], n)


def qh_curve_corpus(max_mu=30):
    """Quasi-homogeneous plane curves from four weighted families, mu <= max_mu."""
    texts = set()
    for a in range(2, 32):
        for b in range(a, 32):
            texts.add(f"x^{a}+y^{b}")
            texts.add(f"x^{a}*y+y^{b}")
            texts.add(f"x^{a}+x*y^{b}")
            texts.add(f"x^{a}*y+x*y^{b}")
    out = []
    for t in sorted(texts):
        g = germ(t, V2)
        w = find_weights(g)
        if w is None or milnor_orlik(w) > max_mu:
            continue
        try:
            mu = milnor_number(g)
        except NonIsolated:
            continue
        out.append((t, g, mu))
    return out


CURVES = qh_curve_corpus()


def test_corpus_is_substantial():
    assert len(CURVES) > 60
    assert max(mu for _, _, mu in CURVES) == 30


def test_find_weights_examples():
    assert find_weights(germ("x^2+y^3", V2)) == (mpq(1, 2), mpq(1, 3))
    assert find_weights(germ("x^5+y^11+z^2")) == (mpq(1, 5), mpq(1, 11), mpq(1, 2))
    # 2wx = 1, 3wy = 1, 7wz = 1 and wx + wy + wz = 1 are inconsistent
    assert find_weights(germ("x^2+y^3+z^7+x*y*z")) is None
    # not unique
    assert find_weights(germ("x^2*y^2", V2)) is None
    # weight above 1/2
    assert find_weights(germ("x+y^2", V2)) is None


def test_spectrum_examples():
    assert spectrum_qh(germ("x^2+y^3", V2)).values == [mpq(-1, 6), mpq(1, 6)]
    assert spectrum_qh(germ("x^2+y^2+z^2")).values == [mpq(1, 2)]
    assert spectrum_qh(germ("x^2+y^2", V2)).values == [mpq(0)]
    sp = spectrum_qh(germ("x^5+y^11+z^2"))
    formula = sorted(mpq(22 * a + 10 * b - 23, 110) for a in range(4) for b in range(10))
    assert sp.values == formula
    assert len(sp) == 40


def test_spectrum_requires_weights():
    with pytest.raises(NotQuasiHomogeneous):
        spectrum_qh(germ("x^2+y^3+z^7+x*y*z"))


def test_hodge_numbers_examples():
    assert hodge_numbers(spectrum_qh(germ("x^2+y^2+z^2"))) == [0, 1, 0]
    assert hodge_numbers(spectrum_qh(germ("x^3+y^10+z^19")))[2] == 39
    assert hodge_numbers(spectrum_qh(germ("x^2+y^3+z^5")))[1] == 8


def test_geometric_genus():
    assert geometric_genus(germ("x^3+y^10+z^19")) == 39
    assert geometric_genus(germ("x^5+y^11+z^2")) == 4
    assert geometric_genus(germ("x^2+y^2+z^2")) == 0
    with pytest.raises(DimensionError):
        geometric_genus(germ("x^2+y^3", V2))


def test_morse_fallback():
    # an A1 point in coordinates where it is not quasi-homogeneous
    g = germ("x*y+z^2+x^3+y^4*z")
    assert find_weights(g) is None
    assert is_morse(g)
    assert germ_spectrum(g).values == [mpq(1, 2)]
    assert not is_morse(germ("x^2+y^3", V2))
    with pytest.raises(NotQuasiHomogeneous):
        germ_spectrum(germ("x^2+y^3+z^7+x*y*z"))


def test_v_degree_examples():
    w = (mpq(1, 5), mpq(1, 11), mpq(1, 2))
    assert v_degree((0, 0, 0), w, 1) == mpq(87, 110)
    assert v_degree((0, 1, 0), w, 1) == mpq(97, 110)
    assert v_degree((0, 0), (mpq(1, 2), mpq(1, 2)), 0) == mpq(0)
    assert v_degree((0, 0, 0), (mpq(1, 2),) * 3, 0) == mpq(1, 2)


def test_induced_filtration_ladder():
    filt = induced_filtration(germ("x^5+y^11+z^2"))
    assert filt.f_degree == mpq(87, 110)
    assert filt.generator == mpq(89, 110)
    assert filt.induced_degree((1, 0, 0)) == mpq(111, 110)
    assert filt.induced_degree((0, 1, 0)) == mpq(101, 110)
    assert filt.induced_degree((0, 2, 0)) == mpq(111, 110)
    assert filt.gaps() == [mpq(91, 110), mpq(93, 110)]
    # the first gap has denominator 110 like every other rung of the ladder
    assert mpq(91, 111) not in filt.gaps()


def test_gaps_empty_for_ordinary_double_point():
    assert induced_filtration_gaps(germ("x^2+y^2+z^2")) == []


def test_roundup():
    sp = S("-1/6", "1/6")
    assert sp.roundup(0) == mpq(1, 6)
    assert sp.roundup(mpq(-1, 6)) == mpq(-1, 6)
    assert sp.roundup(1) is None


def test_thom_sebastiani_examples():
    z2 = spectrum_qh(germ("z^2", ["z"]))
    assert z2.values == [mpq(-1, 2)]
    a2 = spectrum_qh(germ("x^2+y^3", V2))
    assert thom_sebastiani(a2, z2).values == [mpq(1, 3), mpq(2, 3)]
    assert thom_sebastiani(a2, z2) == spectrum_qh(germ("x^2+y^3+z^2"))
    w2 = spectrum_qh(germ("w^2", ["w"]))
    assert thom_sebastiani(z2, w2).values == [mpq(0)]
    x2 = spectrum_qh(germ("x^2", ["x"]))
    assert thom_sebastiani(thom_sebastiani(x2, w2), z2).values == [mpq(1, 2)]


def test_pairing_check_examples():
    assert not pairing_check(spectrum_qh(germ("x^2+y^3", V2)))
    assert not pairing_check(spectrum_qh(germ("x^2+y^5", V2)))
    assert pairing_check(S("-3/4", "-1/2", "1/2", "3/4"))
    with pytest.raises(DimensionError):
        pairing_check(S("1/2", n=2))


def test_hertling_examples():
    assert hertling_variance_check(spectrum_qh(germ("x^2+y^3", V2))) == (mpq(1, 36), mpq(1, 36), True)
    assert hertling_variance_check(spectrum_qh(germ("x^2+y^5", V2))) == (mpq(1, 20), mpq(1, 20), True)
    # x^3 + y^4: numbers (4a + 3b - 5)/12, a, b in {0, 1}, {0, 1, 2}
    vals = [mpq(4 * a + 3 * b + 7, 12) - 1 for a in range(2) for b in range(3)]
    mean = sum(vals) / len(vals)
    lhs = sum((v - mean) ** 2 for v in vals) / len(vals)
    rhs = (max(vals) - min(vals)) / 12
    assert hertling_variance_check(spectrum_qh(germ("x^3+y^4", V2))) == (lhs, rhs, lhs <= rhs)
    assert lhs <= rhs


def test_nemethi_examples():
    pg, bound, holds = nemethi_check(germ("x^3+y^7+z^2"))
    assert (pg, bound, holds) == (1, mpq(2), True)
    assert nemethi_check(germ("x^2+y^3+z^2")) == (0, mpq(1, 3), True)
    assert nemethi_check(germ("x^5+y^11+z^2")) == (4, mpq(40, 6), True)


@pytest.mark.parametrize("text,g,mu", CURVES, ids=[c[0] for c in CURVES])
def test_curve_spectrum_properties(text, g, mu):
    sp = spectrum_qh(g)
    assert len(sp) == mu
    assert sp.is_symmetric()
    assert sp.in_range()
    assert sum(hodge_numbers(sp)) == mu
    assert hertling_variance_check(sp)[2]
    assert milnor_orlik(find_weights(g)) == mu
    # suspension by z^2
    f3 = parse_polynomial(text + "+z^2", V3)
    z2 = spectrum_qh(germ("z^2", ["z"]))
    assert thom_sebastiani(sp, z2) == spectrum_qh(LocalGerm(f3))


@pytest.mark.parametrize("text", ["x^2+y^2+z^2", "x^3+y^4+z^2", "x^5+y^11+z^2", "x^3+y^10+z^19",
                                  "z^2+x^7+y^8", "x^2*y+y^5+z^3", "x^3+y^3+z^3"])
def test_surface_spectrum_properties(text):
    g = germ(text)
    sp = spectrum_qh(g)
    s = hodge_numbers(sp)
    assert len(sp) == milnor_number(g) == sum(s)
    assert sp.is_symmetric() and sp.in_range()
    assert s[2] == geometric_genus(g)
