"""Exact arithmetic cores.

Rationals, dense univariate polynomials, truncated power series and sparse
multivariate polynomials, all over exact fractions, plus the two families of
coefficient polynomials (reciprocal powers and k-th powers of a truncated
series) that the coordinate machinery downstream keeps evaluating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(value: int | str | Fraction) -> Fraction:
    """Parse the canonical "p/q" text form; plain integers are allowed."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def rat_str(value: int | Fraction) -> str:
    """Canonical text form: "p/q", with "/q" omitted when q = 1."""
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------


def _strip(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, coefficients indexed by degree.

    Trailing zeros are stripped; the zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((_ONE,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((_ZERO, _ONE))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    if cj:
                        out[i + j] += ci * cj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(c)
        return acc

    def shift(self, a) -> "Poly":
        """P(t + a)."""
        return self.compose(Poly((Fraction(a), _ONE)))

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quot = [_ZERO] * (dq + 1)
        oc = other.coeffs
        lead = oc[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(oc) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(oc):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self * (_ONE / self.leading)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def coeff_strings(self) -> list[str]:
        """Dense ascending-degree list of canonical "p/q" strings."""
        if self.is_zero:
            return ["0"]
        return [rat_str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = rat_str(c)
            else:
                var = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = "-" + var
                else:
                    term = f"{rat_str(c)}*{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out


def poly_from_roots(roots: Sequence) -> Poly:
    p = Poly.one()
    for r in roots:
        p = p * Poly((-Fraction(r), _ONE))
    return p


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Power series known modulo t^(order+1); coefficients c_0..c_order."""

    order: int
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [Fraction(c) for c in self.coeffs][: self.order + 1]
        cs += [_ZERO] * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(self.order, other.order)
        return TruncSeries(k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(self.order, other.order)
        out = [_ZERO] * (k + 1)
        for i, ci in enumerate(self.coeffs[: k + 1]):
            if ci:
                for j in range(k + 1 - i):
                    cj = other.coeffs[j]
                    if cj:
                        out[i + j] += ci * cj
        return TruncSeries(k, out)

    def __str__(self) -> str:
        return str(Poly(self.coeffs)) + f" + O(t^{self.order + 1})"


def series_compose(f: TruncSeries, h: TruncSeries, order: int | None = None) -> TruncSeries:
    """h(f(t)) truncated; both series must have zero constant term.

    This is the product in the group of reparametrizations, whose law
    composes the right factor with the left.
    """
    if f.coeffs[0] != 0 or h.coeffs[0] != 0:
        raise ValueError("composition requires zero constant terms")
    k = min(f.order, h.order) if order is None else order
    if k > min(f.order, h.order):
        raise ValueError("requested order exceeds operand truncation")
    ft = f.truncate(k)
    acc = TruncSeries(k)
    for c in reversed(h.coeffs[: k + 1]):
        acc = acc * ft + TruncSeries(k, (c,))
    return acc


def series_reciprocal(f: TruncSeries, order: int | None = None) -> TruncSeries:
    """g with f*g = 1 modulo t^(order+1); requires invertible constant term."""
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ValueError("series is not a unit: zero constant term")
    k = f.order if order is None else order
    if k > f.order:
        raise ValueError("requested order exceeds operand truncation")
    out = [_ZERO] * (k + 1)
    out[0] = _ONE / c0
    for m in range(1, k + 1):
        s = _ZERO
        for i in range(1, m + 1):
            ci = f.coeffs[i] if i < len(f.coeffs) else _ZERO
            if ci:
                s += ci * out[m - i]
        out[m] = -s / c0
    return TruncSeries(k, out)


def reciprocal_power_coeffs(unit: Sequence[Fraction], ell: int, order: int) -> list[Fraction]:
    """Coefficients 0..order of (c_0 + c_1 t + ...)^(-ell) for a unit series."""
    inv = series_reciprocal(TruncSeries(order, tuple(unit)), order)
    acc = TruncSeries(order, (_ONE,))
    for _ in range(ell):
        acc = acc * inv
    return list(acc.coeffs)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials in Y_1..Y_m
# ---------------------------------------------------------------------------


def _strip_key(key: Sequence[int]) -> tuple[int, ...]:
    k = list(key)
    while k and k[-1] == 0:
        k.pop()
    return tuple(k)


def _term_sort_key(item):
    key, _ = item
    return (-sum(key), tuple(-e for e in key))


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial in variables Y_1, Y_2, ...

    Exponent keys are tuples (e_1, e_2, ...) with trailing zeros stripped;
    no zero coefficients are stored, and terms are kept in a canonical
    graded order so printing is deterministic.
    """

    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    def __post_init__(self):
        agg: dict[tuple[int, ...], Fraction] = {}
        for key, c in self.terms:
            key = _strip_key(key)
            agg[key] = agg.get(key, _ZERO) + Fraction(c)
        cleaned = {k: v for k, v in agg.items() if v != 0}
        object.__setattr__(
            self, "terms", tuple(sorted(cleaned.items(), key=_term_sort_key))
        )

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls((((), Fraction(c)),))

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.const(1)

    @classmethod
    def variable(cls, q: int) -> "MultiPoly":
        if q < 1:
            raise ValueError("variables are indexed from 1")
        key = (0,) * (q - 1) + (1,)
        return cls(((key, _ONE),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        return MultiPoly(self.terms + other.terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(tuple((k, c * other) for k, c in self.terms))
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                n = max(len(k1), len(k2))
                key = tuple(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0)
                    for i in range(n)
                )
                out[key] = out.get(key, _ZERO) + c1 * c2
        return MultiPoly(tuple(out.items()))

    __rmul__ = __mul__

    def evaluate(self, values: Sequence) -> Fraction:
        """Value at Y_q = values[q-1]; missing trailing values default to 0."""
        vals = [Fraction(v) for v in values]
        total = _ZERO
        for key, c in self.terms:
            prod = c
            for q, e in enumerate(key):
                if e:
                    v = vals[q] if q < len(vals) else _ZERO
                    prod *= v**e
            total += prod
        return total

    def weighted_degrees(self) -> set[int]:
        """Set of weighted degrees over the terms, with Y_q of weight q."""
        return {sum((q + 1) * e for q, e in enumerate(key)) for key, _ in self.terms}

    def total_degrees(self) -> set[int]:
        return {sum(key) for key, _ in self.terms}

    def variables_used(self) -> set[int]:
        used = set()
        for key, _ in self.terms:
            used.update(q + 1 for q, e in enumerate(key) if e)
        return used

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, c in self.terms:
            factors = []
            for q, e in enumerate(key):
                if e == 1:
                    factors.append(f"Y{q + 1}")
                elif e > 1:
                    factors.append(f"Y{q + 1}^{e}")
            mon = "*".join(factors)
            if not mon:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{rat_str(c)}*{mon}")
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out


def _mp_series_mul(a: list[MultiPoly], b: list[MultiPoly], order: int) -> list[MultiPoly]:
    out = [MultiPoly.zero() for _ in range(order + 1)]
    for i, ai in enumerate(a[: order + 1]):
        if ai.is_zero:
            continue
        for j in range(order + 1 - i):
            bj = b[j] if j < len(b) else MultiPoly.zero()
            if not bj.is_zero:
                out[i + j] = out[i + j] + ai * bj
    return out


def _mp_series_reciprocal(a: list[MultiPoly], order: int) -> list[MultiPoly]:
    # requires a[0] = 1
    out = [MultiPoly.zero() for _ in range(order + 1)]
    out[0] = MultiPoly.one()
    for m in range(1, order + 1):
        s = MultiPoly.zero()
        for i in range(1, m + 1):
            ai = a[i] if i < len(a) else MultiPoly.zero()
            if not ai.is_zero:
                s = s + ai * out[m - i]
        out[m] = -s
    return out


def h_poly(ell: int, j: int) -> MultiPoly:
    """Coefficient of X^j in (1 + Y_1 X + Y_2 X^2 + ...)^(-ell).

    Weighted-homogeneous of degree j when Y_q carries weight q, with
    constant term 1 at j = 0 and leading linear part -ell*Y_j.
    """
    if ell < 1:
        raise ValueError("exponent ell must be positive")
    if j < 0:
        raise ValueError("coefficient index must be nonnegative")
    base = [MultiPoly.one()] + [MultiPoly.variable(q) for q in range(1, j + 1)]
    power = [MultiPoly.one()]
    for _ in range(ell):
        power = _mp_series_mul(power, base, j)
    rec = _mp_series_reciprocal(power, j)
    return rec[j]


def g_poly(k: int, j: int) -> MultiPoly:
    """Coefficient of X^(k(k-1)+j) in (Y_1 X + ... + Y_k X^k)^k, 1 <= j <= k.

    Homogeneous of total degree k; triangular in the sense that Y_j enters
    only through the monomial k * Y_k^(k-1) * Y_j, all other monomials being
    supported on Y_(j+1)..Y_k.
    """
    if not 1 <= j <= k:
        raise ValueError("index j out of range 1..k")
    base = [MultiPoly.zero()] + [MultiPoly.variable(q) for q in range(1, k + 1)]
    power = [MultiPoly.one()]
    for _ in range(k):
        nxt = [MultiPoly.zero() for _ in range(len(power) + k)]
        for i, pi in enumerate(power):
            if pi.is_zero:
                continue
            for m in range(1, k + 1):
                nxt[i + m] = nxt[i + m] + pi * base[m]
        power = nxt
    return power[k * (k - 1) + j]


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def poly_resultant(p: Poly, q: Poly) -> Fraction:
    """Resultant with the Sylvester determinant sign convention.

    Computed by a Euclidean descent; equals lc(p)^deg(q) * prod q(alpha)
    over the roots of p.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("resultant of two zero polynomials is undefined")
    if p.is_zero or q.is_zero:
        return _ZERO
    res = _ONE
    a, b = p, q
    while True:
        if b.degree == 0:
            return res * b.coeffs[0] ** a.degree
        if a.degree == 0:
            return res * a.coeffs[0] ** b.degree
        r = a.divmod(b)[1]
        if r.is_zero:
            return _ZERO
        if (a.degree * b.degree) % 2:
            res = -res
        res *= b.leading ** (a.degree - r.degree)
        a, b = b, r


def _lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    total = Poly.zero()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = Poly.one()
        den = _ONE
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = num * Poly((-xj, _ONE))
            den *= xi - xj
        total = total + num * (yi / den)
    return total


def poly_resultant_in_t(a: Poly, num: Poly, den: Poly) -> Poly:
    """res_z(a(z), t*den(z) - num(z)) as a polynomial in t.

    The elimination keeps the structural z-degree max(deg den, deg num), so
    evaluation points where the leading z-coefficient would vanish are
    skipped before interpolating.
    """
    if a.is_zero:
        raise ValueError("cannot eliminate against the zero polynomial")
    if den.is_zero and num.is_zero:
        raise ValueError("degenerate elimination input")
    struct_deg = max(den.degree, num.degree)
    if a.degree == 0:
        return Poly.constant(a.coeffs[0] ** struct_deg)
    bad: Fraction | None = None
    if den.degree > num.degree:
        bad = _ZERO
    elif den.degree == num.degree:
        bad = num.leading / den.leading
    points: list[tuple[Fraction, Fraction]] = []
    t0 = _ZERO
    while len(points) < a.degree + 1:
        if bad is None or t0 != bad:
            points.append((t0, poly_resultant(a, den * t0 - num)))
        t0 += 1
    return _lagrange_interpolate(points)
