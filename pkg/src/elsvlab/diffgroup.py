"""Truncated formal reparametrizations and polar-part coordinates.

The group elements are series a_0*t + a_1*t^2 + ... + a_{k-1}*t^k with
invertible a_0, multiplied by composing the right factor with the left.
They act on principal parts (Laurent tails) by substitution, and the same
action is carried over to cone coordinates through an explicit chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import Poly, reciprocal_power_coeffs

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ChartError(ValueError):
    """Coordinates violate the chart normalization they are used in."""


class UnsolvableOverRationalsError(ValueError):
    """The requested witness exists only over a field extension."""


def _fracs(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class LaurentTail:
    """Principal part a_1/t + a_2/t^2 + ... + a_k/t^k, stored a_1..a_k."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a tail needs at least one coefficient slot")
        object.__setattr__(self, "coeffs", _fracs(self.coeffs))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int | None:
        """Largest pole order with nonzero coefficient; None for the zero tail."""
        for ell in range(self.k, 0, -1):
            if self.coeffs[ell - 1] != 0:
                return ell
        return None

    @property
    def has_full_order(self) -> bool:
        return self.coeffs[-1] != 0

    def coeff(self, ell: int) -> Fraction:
        """Coefficient of t^(-ell)."""
        if not 1 <= ell <= self.k:
            return _ZERO
        return self.coeffs[ell - 1]

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentTail":
        """c * t^(-k)."""
        return cls((_ZERO,) * (k - 1) + (Fraction(c),))

    def __str__(self) -> str:
        parts = []
        for ell in range(self.k, 0, -1):
            c = self.coeff(ell)
            if c:
                parts.append(f"({c})*t^-{ell}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FormalDiffeo:
    """Reparametrization a_0*t + a_1*t^2 + ... + a_{k-1}*t^k, a_0 invertible."""

    k: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        cs = _fracs(self.coeffs)
        if len(cs) != self.k:
            raise ValueError("expected k coefficients a_0..a_{k-1}")
        if cs[0] == 0:
            raise ValueError("a_0 must be invertible")
        object.__setattr__(self, "coeffs", cs)

    @property
    def alpha0(self) -> Fraction:
        return self.coeffs[0]

    @property
    def is_unipotent(self) -> bool:
        return self.coeffs[0] == 1

    @classmethod
    def identity(cls, k: int) -> "FormalDiffeo":
        return cls(k, (_ONE,) + (_ZERO,) * (k - 1))

    @classmethod
    def torus(cls, k: int, lam) -> "FormalDiffeo":
        return cls(k, (Fraction(lam),) + (_ZERO,) * (k - 1))

    def as_poly(self) -> Poly:
        return Poly((_ZERO,) + self.coeffs)

    def unit_part(self) -> tuple[Fraction, ...]:
        """Coefficients of f(t)/(a_0 t) = 1 + (a_1/a_0) t + ..., length k."""
        a0 = self.alpha0
        return (_ONE,) + tuple(c / a0 for c in self.coeffs[1:])

    def __str__(self) -> str:
        return str(self.as_poly())


@dataclass(frozen=True)
class ConeCoord:
    """Chart point (alpha; a_k, ..., a_1) with a_k invertible."""

    k: int
    alpha: Fraction
    a: tuple[Fraction, ...]  # descending pole order: a_k first

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        a = _fracs(self.a)
        if len(a) != self.k:
            raise ValueError("expected k coefficients a_k..a_1")
        if a[0] == 0:
            raise ChartError("a_k must be nonzero")
        object.__setattr__(self, "a", a)

    def coeff(self, ell: int) -> Fraction:
        """Coefficient a_ell, 1 <= ell <= k."""
        return self.a[self.k - ell]

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.a)
        return f"({self.alpha}; {body})"


# ---------------------------------------------------------------------------
# Group structure
# ---------------------------------------------------------------------------


def diff_compose(f: FormalDiffeo, h: FormalDiffeo) -> FormalDiffeo:
    """Group product of f and h: the substitution h(f(t)) truncated to t^k."""
    if f.k != h.k:
        raise ValueError("mismatched truncation levels")
    k = f.k
    fp = f.as_poly()
    acc = Poly.zero()
    for c in reversed(h.coeffs):
        acc = Poly(((acc * fp).coeffs[: k + 1])) + Poly.constant(c)
    acc = Poly((acc * fp).coeffs[: k + 1])
    return FormalDiffeo(k, tuple(acc.coeff(i) for i in range(1, k + 1)))


def diff_inverse(f: FormalDiffeo) -> FormalDiffeo:
    """Two-sided inverse for diff_compose."""
    k = f.k
    g = [_ONE / f.alpha0] + [_ZERO] * (k - 1)
    for m in range(1, k):
        # adding d*t^(m+1) to g changes g(f(t)) by d*a_0^(m+1)*t^(m+1) + higher
        comp = diff_compose(f, FormalDiffeo(k, tuple(g)))
        err = comp.coeffs[m]
        g[m] -= err / f.alpha0 ** (m + 1)
    out = FormalDiffeo(k, tuple(g))
    return out


# ---------------------------------------------------------------------------
# Action on tails
# ---------------------------------------------------------------------------


def act_on_tail(f: FormalDiffeo, rho: LaurentTail) -> LaurentTail:
    """Principal part of rho(f(t)).

    The substitution multiplies the top coefficient by a_0^(-k), so tails of
    full order stay of full order; elements trivial modulo t^(k+1) act as
    the identity.
    """
    if f.k != rho.k:
        raise ValueError("mismatched truncation levels")
    k = f.k
    unit = f.unit_part()
    a0 = f.alpha0
    out = [_ZERO] * k
    inv_pows: dict[int, list[Fraction]] = {}
    for ell in range(1, k + 1):
        c = rho.coeff(ell)
        if c == 0:
            continue
        if ell not in inv_pows:
            inv_pows[ell] = reciprocal_power_coeffs(unit, ell, ell - 1)
        w = inv_pows[ell]
        scale = c * a0 ** (-ell)
        for m in range(1, ell + 1):
            out[m - 1] += scale * w[ell - m]
    return LaurentTail(tuple(out))


def _integer_kth_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    lo, hi = 1, 1
    while hi**k < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def rational_kth_root(x: Fraction, k: int) -> Fraction | None:
    """Exact rational k-th root (the positive one for even k), or None."""
    x = Fraction(x)
    if k < 1:
        raise ValueError("k must be positive")
    if x == 0:
        return Fraction(0)
    neg = x < 0
    if neg and k % 2 == 0:
        return None
    p, q = abs(x.numerator), x.denominator
    rp = _integer_kth_root(p, k)
    rq = _integer_kth_root(q, k)
    if rp is None or rq is None:
        return None
    root = Fraction(rp, rq)
    return -root if neg else root


def _power_root_series(target: Sequence[Fraction], k: int) -> list[Fraction]:
    """v with v^k = target and v_0 = 1, for a unit series with target_0 = 1."""
    n = len(target)
    v = [_ONE] + [_ZERO] * (n - 1)
    for m in range(1, n):
        # v^k coefficient at t^m is k*v_m plus terms in v_1..v_{m-1}
        acc = [_ONE] + [_ZERO] * (n - 1)
        for _ in range(k):
            nxt = [_ZERO] * n
            for i, ci in enumerate(acc):
                if ci:
                    for j in range(n - i):
                        if v[j]:
                            nxt[i + j] += ci * v[j]
            acc = nxt
        v[m] = (target[m] - acc[m]) / k
    return v


def tail_orbit_witness(rho: LaurentTail) -> FormalDiffeo:
    """f with act_on_tail(f, t^(-k)) = rho, solved over the rationals.

    The top coefficient forces a_0^(-k) = a_k; when a_k has no rational
    k-th root (or the wrong sign for even k) the witness only exists over
    an extension and the obstruction is reported instead.
    """
    if not rho.has_full_order:
        raise ValueError("tail must have full order: top coefficient nonzero")
    k = rho.k
    ak = rho.coeff(k)
    inv_a0 = rational_kth_root(ak, k)
    if inv_a0 is None:
        raise UnsolvableOverRationalsError(
            f"{ak} has no rational {k}-th root; the orbit witness lives in an extension"
        )
    a0 = _ONE / inv_a0
    # act(f, t^-k) has coefficient a_k * w_{k-m} at t^-m for w = unit^(-k)
    w_target = [rho.coeff(k - j) / ak for j in range(k)]  # w_0 = 1
    inv_unit = _power_root_series(w_target, k)  # (unit)^(-1) coefficients
    # unit = reciprocal of inv_unit
    unit = reciprocal_power_coeffs(inv_unit, 1, k - 1)
    return FormalDiffeo(k, tuple(a0 * unit[i] for i in range(k)))


# ---------------------------------------------------------------------------
# Cone chart
# ---------------------------------------------------------------------------


def torus_unipotent_split(f: FormalDiffeo) -> tuple[Fraction, FormalDiffeo]:
    """Write f as the product (torus lam) * (unipotent u), returning (lam, u)."""
    lam = f.alpha0
    u = [_ONE] + [f.coeffs[i] / lam ** (i + 1) for i in range(1, f.k)]
    return lam, FormalDiffeo(f.k, tuple(u))


def sigma_t(x, f: FormalDiffeo) -> ConeCoord:
    """Chart map: (x, torus(lam)*u) goes to alpha = x/lam with fiber
    coefficients read off the reciprocal k-th power of the unipotent part."""
    lam, u = torus_unipotent_split(f)
    k = f.k
    alpha = Fraction(x) / lam
    w = reciprocal_power_coeffs(u.unit_part(), k, k - 1)
    # a_ell = w[k - ell]; in particular a_k = w[0] = 1
    a = tuple(w[k - ell] for ell in range(k, 0, -1))
    return ConeCoord(k, alpha, a)


def sigma_t_inverse(c: ConeCoord) -> tuple[Fraction, Fraction, FormalDiffeo]:
    """Inverse chart map on the a_k = 1 slice.

    Returns the canonical representative (x, lam, u) with lam = 1; the fiber
    coefficients determine the unipotent part through a triangular system.
    """
    if c.coeff(c.k) != 1:
        raise ChartError("chart normalization requires a_k = 1")
    k = c.k
    w = [c.coeff(k - j) for j in range(k)]  # w_0 = 1
    inv_unit = _power_root_series(w, k)
    unit = reciprocal_power_coeffs(inv_unit, 1, k - 1)
    u = FormalDiffeo(k, tuple(unit))
    return c.alpha, _ONE, u


def cone_coord_to_tail(c: ConeCoord) -> LaurentTail:
    """Polar part attached to a chart point with invertible alpha."""
    if c.alpha == 0:
        raise ChartError("the polar-part identification needs alpha invertible")
    return LaurentTail(tuple(c.coeff(ell) * c.alpha**ell for ell in range(1, c.k + 1)))


def tail_to_cone_coord(rho: LaurentTail, alpha) -> ConeCoord:
    """Inverse of the polar-part identification for invertible alpha."""
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ChartError("the polar-part identification needs alpha invertible")
    k = rho.k
    a = tuple(rho.coeff(ell) / alpha**ell for ell in range(k, 0, -1))
    return ConeCoord(k, alpha, a)


def cone_action(g: FormalDiffeo, c: ConeCoord) -> ConeCoord:
    """Action on chart points, defined by the polynomial transport formula.

    a*_m = sum over ell >= m of a_ell * alpha^(ell-m) * lam^(m-ell) * w_ell[ell-m]
    with w_ell the reciprocal ell-th power of the unipotent unit of g; the
    top coefficient is always fixed and alpha scales by 1/lam.  On the
    alpha-invertible chart this agrees with the substitution action on
    tails; at alpha = 0 the same polynomials define the (trivial) action.
    """
    if g.k != c.k:
        raise ValueError("mismatched truncation levels")
    k = g.k
    lam = g.alpha0
    unit = g.unit_part()
    w = {ell: reciprocal_power_coeffs(unit, ell, ell - 1) for ell in range(1, k + 1)}
    new_a = []
    for m in range(k, 0, -1):
        s = _ZERO
        for ell in range(m, k + 1):
            a_ell = c.coeff(ell)
            if a_ell:
                s += a_ell * c.alpha ** (ell - m) * lam ** (m - ell) * w[ell][ell - m]
        new_a.append(s)
    return ConeCoord(k, c.alpha / lam, tuple(new_a))


# ---------------------------------------------------------------------------
# The k-th power map and its triangular inverse
# ---------------------------------------------------------------------------


def _power_coeff(a_by_ell: Sequence[Fraction], k: int, degree: int) -> Fraction:
    """Coefficient of X^degree in (a_1 X + ... + a_k X^k)^k."""
    p = Poly((_ZERO,) + tuple(a_by_ell))
    return (p**k).coeff(degree)


def nu_k(c: ConeCoord) -> ConeCoord:
    """Power map: fiber coefficients of the k-th tensor power.

    b_j is the coefficient of X^(k(k-1)+j) in (a_1 X + ... + a_k X^k)^k;
    alpha is carried along unchanged and b_k = a_k^k stays invertible.
    """
    k = c.k
    a_by_ell = [c.coeff(ell) for ell in range(1, k + 1)]
    p = Poly((_ZERO,) + tuple(a_by_ell)) ** k
    b = tuple(p.coeff(k * (k - 1) + j) for j in range(k, 0, -1))
    return ConeCoord(k, c.alpha, b)


class InvalidRootError(ValueError):
    """Supplied root does not solve root^k = b_k."""


def nu_k_inverse(b: ConeCoord, root_choice) -> ConeCoord:
    """Triangular inverse of nu_k once a k-th root of b_k is fixed."""
    k = b.k
    root = Fraction(root_choice)
    if root**k != b.coeff(k):
        raise InvalidRootError(f"{root} is not a {k}-th root of {b.coeff(k)}")
    a = [_ZERO] * (k + 1)  # a[ell] for ell = 1..k
    a[k] = root
    lead = k * root ** (k - 1)
    for j in range(k - 1, 0, -1):
        known = _power_coeff(a[1:], k, k * (k - 1) + j)
        a[j] = (b.coeff(j) - known) / lead
    return ConeCoord(k, b.alpha, tuple(a[ell] for ell in range(k, 0, -1)))
