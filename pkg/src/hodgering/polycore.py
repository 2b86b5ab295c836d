"""Sparse multivariate polynomials over the rationals.

Coefficients are ``gmpy2.mpq`` values; exponent vectors are plain tuples of
non-negative ints.  Polynomials are treated as immutable once built.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))
Exponent = tuple


def Q(value) -> Rational:
    """Coerce ints, Fractions, strings like ``"3/2"`` or mpq values to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    return mpq(value)


def rational_str(value) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Degree reverse lexicographic orders, global or local.

    ``key(e)`` is larger for larger monomials.  The global order makes 1 the
    smallest monomial, the local order makes it the largest.  Optional integer
    ``weights`` replace the standard degree by a weighted one.
    """

    GLOBAL = "grevlex"
    LOCAL = "neg-grevlex"

    def __init__(self, kind: str, nvars: int, weights: Sequence[int] | None = None):
        if kind not in (self.GLOBAL, self.LOCAL):
            raise ValueError(f"unknown order {kind!r}")
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != nvars or min(weights) <= 0:
                raise ValueError("weights must be positive, one per variable")
        self.kind = kind
        self.nvars = nvars
        self.weights = weights

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls(cls.GLOBAL, nvars)

    @classmethod
    def local(cls, nvars: int, weights: Sequence[int] | None = None) -> "MonomialOrder":
        return cls(cls.LOCAL, nvars, weights)

    @property
    def is_local(self) -> bool:
        return self.kind == self.LOCAL

    def degree(self, e: Exponent) -> int:
        if self.weights is None:
            return sum(e)
        return sum(a * w for a, w in zip(e, self.weights))

    def key(self, e: Exponent):
        rev = tuple(-a for a in reversed(e))
        d = self.degree(e)
        return (-d if self.is_local else d, rev)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.nvars, self.weights) == (other.kind, other.nvars, other.weights)
        )

    def __hash__(self):
        return hash((self.kind, self.nvars, self.weights))

    def __repr__(self):
        w = f", weights={self.weights}" if self.weights else ""
        return f"MonomialOrder({self.kind!r}, {self.nvars}{w})"


# ---------------------------------------------------------------------------
# polynomials


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(nvars))


class Polynomial:
    __slots__ = ("terms", "nvars", "variables", "_degree")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, nvars: int | None = None,
                 variables: Sequence[str] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Q(c)
            if c:
                e = tuple(int(a) for a in e)
                if min(e, default=0) < 0:
                    raise ValueError(f"negative exponent in {e}")
                clean[e] = c
        if nvars is None:
            if variables is not None:
                nvars = len(variables)
            elif clean:
                nvars = len(next(iter(clean)))
            else:
                raise ValueError("cannot infer the number of variables")
        for e in clean:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
        if variables is None:
            variables = default_names(nvars)
        elif len(variables) != nvars:
            raise ValueError("variable names do not match variable count")
        self.terms = clean
        self.nvars = nvars
        self.variables = tuple(variables)
        self._degree = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int, variables: tuple) -> "Polynomial":
        # terms must already be clean: mpq values, no zeros
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p.variables = variables
        p._degree = None
        return p

    @classmethod
    def zero(cls, nvars: int, variables=None) -> "Polynomial":
        return cls({}, nvars, variables)

    @classmethod
    def constant(cls, c, nvars: int, variables=None) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, variables)

    @classmethod
    def monomial(cls, e: Exponent, c=1, variables=None) -> "Polynomial":
        return cls({tuple(e): c}, len(e), variables)

    @classmethod
    def variable(cls, i: int, nvars: int, variables=None) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, variables)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._degree is None:
            self._degree = max((sum(e) for e in self.terms), default=-1)
        return self._degree

    @property
    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def coefficient(self, e: Exponent) -> Rational:
        return self.terms.get(tuple(e), mpq(0))

    def constant_term(self) -> Rational:
        return self.coefficient((0,) * self.nvars)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Exponent, Rational]]:
        order = order or MonomialOrder.grevlex(self.nvars)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder) -> tuple[Exponent, Rational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw({e: c for e, c in self.terms.items() if sum(e) == k},
                               self.nvars, self.variables)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(Q(other), self.nvars, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.nvars, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.nvars, self.variables)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Q(other)
            if not c:
                return Polynomial.zero(self.nvars, self.variables)
            return Polynomial._raw({e: v * c for e, v in self.terms.items()}, self.nvars, self.variables)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c}, self.nvars, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Exponent, c=1) -> "Polynomial":
        """Multiply by the monomial ``c * x^e``."""
        c = Q(c)
        return Polynomial._raw({tuple(a + b for a, b in zip(m, e)): v * c for m, v in self.terms.items()},
                               self.nvars, self.variables)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        return Polynomial._raw(self.terms, self.nvars, tuple(variables))

    # -- calculus and substitution -----------------------------------------

    def diff(self, i: int) -> "Polynomial":
        return partial_derivative(self, i)

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Rational:
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match variable count")
        pt = [Q(v) for v in point]
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for v, a in zip(pt, e):
                if a:
                    t *= v ** a
            total += t
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by ``images[i]`` (all images in one common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(1, target.nvars, target.variables)}
                                               for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc: dict = {}
        for e, c in self.terms.items():
            t = Polynomial.constant(c, target.nvars, target.variables)
            for i, a in enumerate(e):
                if a:
                    t = t * power(i, a)
            for m, v in t.terms.items():
                acc[m] = acc.get(m, 0) + v
        return Polynomial._raw({m: v for m, v in acc.items() if v}, target.nvars, target.variables)


# ---------------------------------------------------------------------------
# parser and printer


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r}", position)
        self.name = name


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the ordered variable list ``variables``.

    >>> str(parse_polynomial("3/2 x^2 - y", ["x", "y"]))
    '3/2*x^2-y'
    """
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    if len(index) != len(variables):
        raise ValueError("duplicate variable names")
    nvars = len(variables)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_uint(what):
        kind, val, at = take()
        if kind != "int":
            if kind == "op" and val in "-(.":
                raise PolynomialSyntaxError(f"non-integer {what}", at)
            raise PolynomialSyntaxError(f"expected {what}", at)
        nxt = peek()
        if nxt[0] == "op" and nxt[1] in "./":
            raise PolynomialSyntaxError(f"non-integer {what}", nxt[2])
        return int(val)

    def parse_term(sign):
        coeff = Q(sign)
        exps = [0] * nvars
        seen = False
        kind, val, at = peek()
        if kind == "int":
            take()
            num = int(val)
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                den = parse_uint("denominator")
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", at)
                coeff *= mpq(num, den)
            else:
                coeff *= num
            seen = True
        while True:
            kind, val, at = peek()
            if kind == "op" and val == "*":
                if not seen:
                    raise PolynomialSyntaxError("unexpected '*'", at)
                take()
                kind, val, at = peek()
                if kind == "int":
                    # allow 2*3 style constant factors
                    take()
                    coeff *= int(val)
                    continue
                if kind != "name":
                    raise PolynomialSyntaxError("expected a factor after '*'", at)
            if kind != "name":
                break
            take()
            if val not in index:
                raise UnknownVariableError(val, at)
            k = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                k = parse_uint("exponent")
            exps[index[val]] += k
            seen = True
        if not seen:
            raise PolynomialSyntaxError("expected a term", peek()[2])
        return tuple(exps), coeff

    terms: dict = {}
    sign = 1
    kind, val, at = peek()
    if kind == "op" and val in "+-":
        take()
        sign = -1 if val == "-" else 1
    while True:
        e, c = parse_term(sign)
        terms[e] = terms.get(e, 0) + c
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise PolynomialSyntaxError(f"unexpected {val!r}", at)
    return Polynomial(terms, nvars, variables)


def format_polynomial(f: Polynomial, variables: Sequence[str] | None = None,
                      order: MonomialOrder | None = None) -> str:
    """Canonical text: decreasing monomial order, ``^`` powers, ``*`` everywhere."""
    names = tuple(variables) if variables is not None else f.variables
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms(order):
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = rational_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{rational_str(mag)}*{mono}"
        if parts:
            parts.append(("-" if neg else "+") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# operations used throughout


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    out = {}
    for e, c in f.terms.items():
        a = e[i]
        if a:
            out[e[:i] + (a - 1,) + e[i + 1:]] = c * a
    return Polynomial._raw(out, f.nvars, f.variables)


def gradient(f: Polynomial) -> list[Polynomial]:
    return [partial_derivative(f, i) for i in range(f.nvars)]


class NotHomogeneousError(ValueError):
    pass


def euler_check(F: Polynomial) -> bool:
    """True iff sum_i X_i dF/dX_i == deg(F) * F."""
    if not F.is_homogeneous():
        raise NotHomogeneousError("euler_check needs a homogeneous polynomial")
    lhs = Polynomial.zero(F.nvars, F.variables)
    for i in range(F.nvars):
        e = [0] * F.nvars
        e[i] = 1
        lhs = lhs + partial_derivative(F, i).shift(tuple(e))
    return lhs == F * max(F.degree, 0)


def translate_to_origin(f: Polynomial, point: Sequence) -> Polynomial:
    """Return g with g(y) = f(y + point)."""
    if len(point) != f.nvars:
        raise ValueError("point dimension does not match variable count")
    pt = [Q(v) for v in point]
    if not any(pt):
        return f
    n = f.nvars
    # binomial expansion per variable: (y + p)^a = sum_k C(a,k) p^(a-k) y^k
    out: dict = {}
    for e, c in f.terms.items():
        partial = {(): c}
        for i, a in enumerate(e):
            p = pt[i]
            nxt = {}
            if a == 0 or not p:
                for m, v in partial.items():
                    nxt[m + (a,)] = v
            else:
                for m, v in partial.items():
                    for k in range(a + 1):
                        nxt[m + (k,)] = v * comb(a, k) * p ** (a - k)
            partial = nxt
        for m, v in partial.items():
            out[m] = out.get(m, 0) + v
    return Polynomial({m: v for m, v in out.items() if v}, n, f.variables)


def dehomogenize(F: Polynomial, chart: int, variables: Sequence[str] | None = None) -> Polynomial:
    """Set the chart variable to 1; the result lives in the other n+1 variables."""
    if not F.is_homogeneous():
        raise NotHomogeneousError("dehomogenize needs a homogeneous polynomial")
    if not 0 <= chart < F.nvars:
        raise IndexError("chart index out of range")
    out: dict = {}
    for e, c in F.terms.items():
        m = e[:chart] + e[chart + 1:]
        out[m] = out.get(m, 0) + c
    names = variables or (F.variables[:chart] + F.variables[chart + 1:])
    return Polynomial({m: v for m, v in out.items() if v}, F.nvars - 1, names)


def homogenize(f: Polynomial, chart: int, degree: int | None = None) -> Polynomial:
    """Inverse of :func:`dehomogenize` (inserts the chart variable)."""
    d = f.degree if degree is None else degree
    out = {}
    for e, c in f.terms.items():
        out[e[:chart] + (d - sum(e),) + e[chart:]] = c
    return Polynomial(out, f.nvars + 1)


def linear_change(f: Polynomial, matrix: Sequence[Sequence]) -> Polynomial:
    """Return f(M x): variable i is replaced by sum_j M[i][j] x_j."""
    n = f.nvars
    images = []
    for row in matrix:
        images.append(Polynomial({tuple(int(k == j) for k in range(n)): v for j, v in enumerate(row)},
                                 n, f.variables))
    return f.substitute(images)


def monomials_of_degree(k: int, nvars: int) -> list[Exponent]:
    """All exponent vectors of total degree k, in decreasing grevlex order."""
    if k < 0:
        return []
    if nvars == 0:
        return [()] if k == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), k, nvars)
    order = MonomialOrder.grevlex(nvars)
    out.sort(key=order.key, reverse=True)
    return out
