"""Trigonometric Lax matrices over the multiplicative difference algebra.

Entries are uniform rational functions of the spectral parameter (the
plus/minus current expansions of the construction are expansions of these
same functions, so all identities are checked exactly on the rational
forms).  Half powers of the slot variables are carried by the generators
wh[i,r] with wh^2 = w[i,r]; the quantum parameter v appears only in
integer powers.

The degeneration back to the rational case substitutes

    v -> exp(eps/2),  z -> exp(eps z),  x -> exp(eps x),
    w[i,r] -> exp(eps (p[i,r] - i/2)),
    D[i,r] -> -e^{-q[i,r]} eps^(a_i - a_{i+1})

and matches the eps^0 coefficient against the rational builder on the
divisor with both framings merged at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import List, Optional, Tuple

from .algebra import (
    AlgebraElement,
    AlgebraSignature,
    ShiftMonomial,
    mat_map,
    mat_zero,
)
from .coweight import Divisor
from .errors import (
    MismatchWithRational,
    NegativeEpsPower,
    NotLinearCase,
    NotPolynomial,
    SignatureMismatch,
)
from .lax_rational import LaxMatrix, build_lax
from .ratfun import Poly, RatFun, V, Z, wh_var, x_var
from .series import TruncSeries


@dataclass
class TrigLaxMatrix:
    signature: AlgebraSignature
    divisor: Optional[Divisor]
    entries: List[List[AlgebraElement]]
    gauss: Optional[Tuple[list, list, list]] = None
    normalized: bool = False

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> AlgebraElement:
        return self.entries[i - 1][j - 1]

    def equals(self, other) -> bool:
        from .algebra import mat_equal

        return mat_equal(self.entries, other.entries)


# ---------------------------------------------------------------------------
# building blocks


def _w_full(i: int, r: int, factor: int = 1) -> Poly:
    return Poly.variable(wh_var(i, r, factor), 2)


def _w_half_prod(sig: AlgebraSignature, i: int, exp: int, factor: int = 1) -> RatFun:
    """prod over slots of row i of wh[i,t]^exp (exp in half-units of w)."""
    out = Poly.const(1)
    for t in range(1, sig.a(i, factor) + 1):
        out = out * Poly.variable(wh_var(i, t, factor), exp)
    return RatFun.from_poly(out)


def _v_pow(k: int) -> Poly:
    return Poly.variable(V, k) if k else Poly.const(1)


def _point_poly(pt) -> Poly:
    if isinstance(pt, str):
        return Poly.variable(x_var(pt))
    return Poly.const(pt)


def one_minus_ratio(num: Poly, den: Poly) -> RatFun:
    """(1 - num/den) as a reduced RatFun; den a monomial in z/w/x/units."""
    return RatFun.ratio(den - num, den)


def sw_row(sig: AlgebraSignature, j: int, arg_num: Poly, arg_den: Poly,
           skip: Optional[int] = None, factor: int = 1,
           invert: bool = False) -> RatFun:
    """prod over slots of row j of (1 - w[j,t]/y)^(+-1) at the evaluation
    point y = arg_num / arg_den, i.e. factors
    (arg_num - w[j,t] arg_den) / arg_num, kept factored either way."""
    out = RatFun.one()
    for t in range(1, sig.a(j, factor) + 1):
        if t == skip:
            continue
        num = arg_num - _w_full(j, t, factor) * arg_den
        if invert:
            out = out * RatFun.ratio(arg_num, num)
        else:
            out = out * RatFun.ratio(num, arg_num)
    return out


def sz_row(div: Divisor, k: int, arg_num: Poly, arg_den: Poly) -> RatFun:
    """prod over index-k summands of (1 - v^{-k} x_s / y)^sign at
    y = arg_num/arg_den."""
    out = RatFun.one()
    for pt, sign in div.points_with(k):
        f = RatFun.ratio(arg_num - _v_pow(-k) * _point_poly(pt) * arg_den, arg_num)
        out = out * (f if sign == 1 else f.invert())
    return out


# ---------------------------------------------------------------------------
# Gauss factors


def diag_entry_trig(div: Divisor, i: int, sig: Optional[AlgebraSignature] = None,
                    factor: int = 1) -> RatFun:
    sig = sig or div.signature()
    z = Poly.variable(Z)
    dplus_i = div.mu.d[i - 1]
    out = _w_half_prod(sig, i, -1, factor) * _w_half_prod(sig, i - 1, 1, factor)
    out = out * RatFun.variable(Z, dplus_i)
    out = out * sw_row(sig, i, z, _v_pow(i), factor=factor)
    out = out * sw_row(sig, i - 1, z, _v_pow(i + 1), factor=factor, invert=True)
    # point factors: prod (1 - x/z)^(-eps_i of the summand coweight)
    for s in div.summands:
        if i > s.index:  # eps_i(omega_k) = -1 exactly when i > k
            f = RatFun.ratio(z - _point_poly(s.point), z)
            out = out * (f if s.sign == 1 else f.invert())
    return out


def upper_entry_trig(div: Divisor, i: int, j: int,
                     sig: Optional[AlgebraSignature] = None, factor: int = 1,
                     drop_pole: bool = False) -> AlgebraElement:
    sig = sig or div.signature()
    z = Poly.variable(Z)
    bplus = [div.mu.d[k - 1] - div.mu.d[k] for k in range(1, div.n)]  # b+_k, 1-based
    pref = RatFun.const((-1) ** ((i - j + 1) % 2))
    pref = pref * _w_half_prod(sig, j - 1, 2, factor)
    for k in range(i, j - 1):
        pref = pref * _w_half_prod(sig, k, 1, factor)
    pref = pref * _w_half_prod(sig, i - 1, -1, factor)
    out = AlgebraElement.zero(sig)
    ranges = [range(1, sig.a(k, factor) + 1) for k in range(i, j)]
    for tup in iproduct(*ranges):
        slots = dict(zip(range(i, j), tup))
        coeff = RatFun.one()
        for k in range(i, j):
            bk = bplus[k - 1]
            if bk:
                coeff = coeff * RatFun.from_poly(
                    _v_pow(-k * bk) * Poly.variable(wh_var(k, slots[k], factor), -2 * bk)
                )
        if not drop_pole:
            wlead = _w_full(i, slots[i], factor)
            coeff = coeff * one_minus_ratio(_v_pow(i) * wlead, z).invert()
        coeff = coeff * sw_row(
            sig, i - 1, _w_full(i, slots[i], factor), _v_pow(1), factor=factor
        )
        for k in range(i, j - 1):
            coeff = coeff * sw_row(
                sig, k, _w_full(k + 1, slots[k + 1], factor), _v_pow(1),
                skip=slots[k], factor=factor,
            )
        for k in range(i, j):
            coeff = coeff * sw_row(
                sig, k, _w_full(k, slots[k], factor), Poly.const(1),
                skip=slots[k], factor=factor, invert=True,
            )
            coeff = coeff * sz_row(div, k, _w_full(k, slots[k], factor), Poly.const(1))
        coeff = coeff * RatFun.from_poly(
            Poly.variable(wh_var(i, slots[i], factor), 2)
            * Poly.variable(wh_var(j - 1, slots[j - 1], factor), -2)
        )
        shift = ShiftMonomial({(factor, k, slots[k]): -1 for k in range(i, j)})
        out = out + AlgebraElement(sig, {shift: pref * coeff})
    return out


def lower_entry_trig(div: Divisor, j: int, i: int,
                     sig: Optional[AlgebraSignature] = None, factor: int = 1,
                     drop_pole: bool = False) -> AlgebraElement:
    sig = sig or div.signature()
    z = Poly.variable(Z)
    pref = RatFun.const((-1) ** ((i - j + 1) % 2))
    pref = pref * RatFun.variable(V, i - j)
    for k in range(i + 1, j + 1):
        pref = pref * _w_half_prod(sig, k, -1, factor)
    out = AlgebraElement.zero(sig)
    ranges = [range(1, sig.a(k, factor) + 1) for k in range(i, j)]
    for tup in iproduct(*ranges):
        slots = dict(zip(range(i, j), tup))
        coeff = RatFun.one()
        if not drop_pole:
            wlead = _w_full(i, slots[i], factor)
            coeff = coeff * one_minus_ratio(z, _v_pow(i + 2) * wlead).invert()
        coeff = coeff * sw_row(
            sig, j, _v_pow(1) * _w_full(j - 1, slots[j - 1], factor), Poly.const(1),
            factor=factor,
        )
        for k in range(i + 1, j):
            coeff = coeff * sw_row(
                sig, k, _v_pow(1) * _w_full(k - 1, slots[k - 1], factor), Poly.const(1),
                skip=slots[k], factor=factor,
            )
        for k in range(i, j):
            coeff = coeff * sw_row(
                sig, k, _w_full(k, slots[k], factor), Poly.const(1),
                skip=slots[k], factor=factor, invert=True,
            )
        coeff = coeff * RatFun.from_poly(
            Poly.variable(wh_var(j - 1, slots[j - 1], factor), 2)
            * Poly.variable(wh_var(i, slots[i], factor), -2)
        )
        shift = ShiftMonomial({(factor, k, slots[k]): 1 for k in range(i, j)})
        out = out + AlgebraElement(sig, {shift: pref * coeff})
    return out


def build_gauss_factors_trig(div: Divisor):
    if div.mode != "trig":
        raise SignatureMismatch("trig builder got a rational divisor")
    sig = div.signature()
    n = div.n
    lower = mat_zero(sig, n)
    upper = mat_zero(sig, n)
    for i in range(n):
        lower[i][i] = AlgebraElement.one(sig)
        upper[i][i] = AlgebraElement.one(sig)
    diag = [
        AlgebraElement.from_ratfun(sig, diag_entry_trig(div, i, sig))
        for i in range(1, n + 1)
    ]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            upper[i - 1][j - 1] = upper_entry_trig(div, i, j, sig)
            lower[j - 1][i - 1] = lower_entry_trig(div, j, i, sig)
    return lower, diag, upper


def build_lax_trig(div: Divisor) -> TrigLaxMatrix:
    lower, diag, upper = build_gauss_factors_trig(div)
    sig = div.signature()
    n = div.n
    entries = mat_zero(sig, n)
    for alpha in range(1, n + 1):
        for beta in range(1, n + 1):
            acc = AlgebraElement.zero(sig)
            for i in range(1, min(alpha, beta) + 1):
                acc = acc + lower[alpha - 1][i - 1] * (diag[i - 1] * upper[i - 1][beta - 1])
            entries[alpha - 1][beta - 1] = acc
    return TrigLaxMatrix(sig, div, entries, gauss=(lower, diag, upper))


# ---------------------------------------------------------------------------
# normalization


def normalizer_trig(div: Divisor) -> RatFun:
    """z^(eps_1 of (lambda + mu_zero)) / sZ_0(z)."""
    z = Poly.variable(Z)
    e1 = div.total_finite().d[0] + div.mu_zero.d[0]
    out = RatFun.variable(Z, e1)
    for pt, sign in div.points_with(0):
        f = RatFun.ratio(z - _point_poly(pt), z)
        out = out * (f.invert() if sign == 1 else f)
    return out


def normalize_and_check_polynomial_trig(T: TrigLaxMatrix) -> TrigLaxMatrix:
    factor = normalizer_trig(T.divisor)
    entries = mat_map(T.entries, lambda e: e * factor)
    for a, row in enumerate(entries):
        for b, e in enumerate(row):
            for s, c in e.terms.items():
                bad = [atom for atom in c.den if atom.degree(Z)]
                if bad:
                    raise NotPolynomial(
                        f"entry ({a + 1},{b + 1}) keeps spectral atom {bad[0]!r}",
                        entry=(a + 1, b + 1),
                    )
                if c.num.min_exp(Z) < 0:
                    raise NotPolynomial(
                        f"entry ({a + 1},{b + 1}) has a pole at z = 0",
                        entry=(a + 1, b + 1),
                    )
    return TrigLaxMatrix(T.signature, T.divisor, entries, T.gauss, normalized=True)


# ---------------------------------------------------------------------------
# linear fast path


def build_linear_lax_trig(div: Divisor) -> TrigLaxMatrix:
    """Closed-form z T+ - T- matrix for blambda_n = bmu-_n = 0, bmu+_n = -1."""
    if div.mode != "trig":
        raise SignatureMismatch("trig builder got a rational divisor")
    if any(s.index == 0 for s in div.summands):
        raise NotLinearCase("index-0 summands need the general builder")
    n = div.n
    bl_cw = div.total_finite()
    bl = tuple(-bl_cw.d[n - i] for i in range(1, n + 1))
    bmp = tuple(-div.mu.d[n - i] for i in range(1, n + 1))
    bmm = tuple(-div.mu_zero.d[n - i] for i in range(1, n + 1))
    for rows in (bl, bmp, bmm):
        if any(x < y for x, y in zip(rows, rows[1:])):
            raise NotLinearCase("divisor is not encoded by pseudo Young diagrams")
    sig = div.signature()
    if bl[n - 1] != 0 or bmm[n - 1] != 0:
        raise NotLinearCase("blambda_n and bmu-_n must vanish")
    if bmp[n - 1] == 0:
        if any(bl) or any(bmp) or any(bmm):
            raise NotLinearCase("bmu+_n = 0 forces the identity matrix case")
        entries = mat_zero(sig, n)
        for i in range(n):
            entries[i][i] = AlgebraElement.one(sig)
        return TrigLaxMatrix(sig, div, entries)
    if bmp[n - 1] != -1:
        raise NotLinearCase(f"bmu+_n = {bmp[n-1]} not in {{0, -1}}")

    def scalar_factor(i: int) -> RatFun:
        # (-v^i)^{a_i} / (-v^{i+1})^{a_{i-1}} * prod over low-index points (-x_s)
        ai, aim = sig.a(i), sig.a(i - 1)
        sign = (-1) ** ((ai + aim) % 2)
        out = RatFun.from_poly(_v_pow(i * ai - (i + 1) * aim)) * sign
        for s in div.summands:
            if s.index <= i - 1:
                out = out * (
                    RatFun.from_poly(-_point_poly(s.point))
                    if s.sign == 1
                    else RatFun.from_poly(-_point_poly(s.point)).invert()
                )
        return out

    z = RatFun.variable(Z)
    entries = mat_zero(sig, n)
    for i in range(1, n + 1):
        acc = AlgebraElement.zero(sig)
        if bmp[n - i] == -1:
            acc = acc + AlgebraElement.from_ratfun(
                sig, z * _w_half_prod(sig, i, -1) * _w_half_prod(sig, i - 1, 1)
            )
        if bmm[n - i] == 0:
            acc = acc + AlgebraElement.from_ratfun(
                sig,
                _w_half_prod(sig, i, 1) * _w_half_prod(sig, i - 1, -1) * scalar_factor(i),
            )
        entries[i - 1][i - 1] = acc
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if bmp[n - i] == -1:
                e = upper_entry_trig(div, i, j, sig, drop_pole=True)
                # z -> infinity limit of g_i/z is the half-power prefactor
                g_inf = AlgebraElement.from_ratfun(
                    sig, _w_half_prod(sig, i, -1) * _w_half_prod(sig, i - 1, 1)
                )
                entries[i - 1][j - 1] = g_inf * e * z
            if bmm[n - i] == 0:
                f = lower_entry_trig(div, j, i, sig, drop_pole=True)
                # f(0) g_i(0): crossing the shift monomials past g_i(0)
                # contributes one power of v; scalar_factor carries the rest
                g0 = AlgebraElement.from_ratfun(
                    sig,
                    _w_half_prod(sig, i, 1)
                    * _w_half_prod(sig, i - 1, -1)
                    * scalar_factor(i),
                )
                entries[j - 1][i - 1] = f * g0
    return TrigLaxMatrix(sig, div, entries)


# ---------------------------------------------------------------------------
# quantum determinant (n = 2)


def qdet2_trig(T: TrigLaxMatrix) -> RatFun:
    """T_11(z) T_22(v^-2 z) - v^-1 T_12(z) T_21(v^-2 z); asserted scalar."""
    if T.n != 2:
        raise ValueError("qdet2 is the n = 2 quantum determinant")
    scale = lambda e: e.map_coeffs(lambda c: c.scale_var(Z, ((V, -2),)))
    a = T.entries[0][0] * scale(T.entries[1][1])
    b = T.entries[0][1] * scale(T.entries[1][0])
    vm1 = RatFun.variable(V, -1)
    out = a - b * vm1
    return out.scalar_part()


# ---------------------------------------------------------------------------
# limits


def limits_trig(T: TrigLaxMatrix, direction: str) -> TrigLaxMatrix:
    """Send the last point to zero (plain substitution) or to infinity
    (column scaling then leading limit)."""
    div = T.divisor
    last = div.last_point()
    if not isinstance(last.point, str):
        raise ValueError("limits need a symbolic last point")
    xv = x_var(last.point)
    n = T.n
    if direction == "to_zero":
        target = div.move_last_point_to_zero()
        if last.index == 0:
            f = RatFun.ratio(Poly.variable(Z) - Poly.variable(xv), Poly.variable(Z))
            scale = f.invert() if last.sign == 1 else f
            entries = mat_map(T.entries, lambda e: e * scale)
            entries = mat_map(
                entries, lambda e: e.map_coeffs(lambda c: c.set_value(xv, 0))
            )
        else:
            entries = mat_map(
                T.entries, lambda e: e.map_coeffs(lambda c: c.set_value(xv, 0))
            )
    elif direction == "to_infinity":
        target = div.move_last_point_to_infinity()
        if last.index == 0:
            lin = RatFun.from_poly(Poly.variable(Z) - Poly.variable(xv))
            scale = lin.invert() if last.sign == 1 else lin
            entries = mat_map(T.entries, lambda e: e * scale)
            entries = mat_map(
                entries, lambda e: e.map_coeffs(lambda c: c.limit_leading(xv))
            )
        else:
            minus_inv = RatFun.ratio(Poly.const(-1), Poly.variable(xv))
            entries = [
                [
                    T.entries[a][b] * (minus_inv if b + 1 > last.index else 1)
                    for b in range(n)
                ]
                for a in range(n)
            ]
            entries = mat_map(
                entries, lambda e: e.map_coeffs(lambda c: c.limit_leading(xv))
            )
    else:
        raise ValueError(direction)
    sig = target.signature()
    entries = mat_map(entries, lambda e: AlgebraElement(sig, dict(e.terms)))
    return TrigLaxMatrix(sig, target, entries)


# ---------------------------------------------------------------------------
# finite RTT split


def split_finite_rtt(T: TrigLaxMatrix):
    """Write a z-linear matrix as z T+ - T-; returns the two z-independent
    matrices (verification of the three finite relations lives in rtt)."""
    n = T.n
    sig = T.signature
    t_plus = mat_zero(sig, n)
    t_minus = mat_zero(sig, n)
    for a in range(n):
        for b in range(n):
            coeffs = T.entries[a][b].z_poly_coeffs(Z)
            if any(k not in (0, 1) for k in coeffs):
                raise NotLinearCase(f"entry ({a+1},{b+1}) is not linear in z")
            t_plus[a][b] = coeffs.get(1, AlgebraElement.zero(sig))
            t_minus[a][b] = -coeffs.get(0, AlgebraElement.zero(sig))
    return t_plus, t_minus


# ---------------------------------------------------------------------------
# degeneration to the rational case


def degenerate_to_rational(T: TrigLaxMatrix, order: int = 2) -> LaxMatrix:
    """Expand in the deformation parameter and match the rational builder
    on the merged divisor; returns the rational matrix."""
    div = T.divisor
    merged = div.merge_framings_at_infinity()
    rat = build_lax(merged)
    rat_sig = rat.signature
    a_vec = div.a_vector()

    def s_exp(k: int) -> int:
        ak = a_vec[k - 1] if 1 <= k <= len(a_vec) else 0
        ak1 = a_vec[k] if k < len(a_vec) else 0
        return ak - ak1

    d_total = div.mu + div.mu_zero
    n = T.n
    for a in range(n):
        for b in range(n):
            series = TruncSeries({}, None, AlgebraElement.zero(rat_sig))
            for shift, coeff in T.entries[a][b].terms.items():
                cs = coeff.eps_series(order)
                sign = 1
                extra = 0
                new_exps = {}
                for (f, i, r), m in shift.exps.items():
                    sign *= (-1) ** (m % 2)
                    extra += m * s_exp(i)
                    new_exps[(f, i, r)] = -m
                new_shift = ShiftMonomial(new_exps)
                term = TruncSeries(
                    {
                        k + extra: AlgebraElement(
                            rat_sig, {new_shift: c * sign}
                        )
                        for k, c in cs.coeffs.items()
                    },
                    (cs.hi + extra) if cs.hi is not None else None,
                    AlgebraElement.zero(rat_sig),
                )
                series = series + term
            series = series.shift_powers(-d_total.d[b])
            v = series.val()
            if v is not None and v < 0:
                raise NegativeEpsPower(
                    f"entry ({a+1},{b+1}) degenerates with eps^{v}"
                )
            got = series.coeff(0)
            if not got.equals(rat.entries[a][b]):
                raise MismatchWithRational(
                    f"entry ({a+1},{b+1}) disagrees with the rational builder",
                    position=(a + 1, b + 1),
                )
    return rat
