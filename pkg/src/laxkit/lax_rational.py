"""Rational Lax matrices from admissible divisors.

The matrix is assembled from its Gauss factors: a diagonal of explicit
rational functions and uni-triangular factors whose entries are
multi-index sums over slot tuples, with the shift generators on the
right.  Everything downstream (normalization, qdet, limits, fusion, the
linear fast path) reuses the same closed forms; the general builder is
the oracle for all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import List, Optional, Tuple

from .algebra import (
    AlgebraElement,
    AlgebraSignature,
    ShiftMonomial,
    embed,
    mat_equal,
    mat_map,
    mat_mul,
    mat_zero,
)
from .coweight import Divisor
from .errors import (
    NotAdmissible,
    NotLinearCase,
    NotPolynomial,
    NotScalar,
    SignatureMismatch,
)
from .ratfun import Poly, RatFun, Z, p_var, x_var


@dataclass
class GaussFactors:
    lower: List[List[AlgebraElement]]  # unit lower triangular
    diag: List[AlgebraElement]  # scalar entries
    upper: List[List[AlgebraElement]]  # unit upper triangular


@dataclass
class LaxMatrix:
    signature: AlgebraSignature
    divisor: Optional[Divisor]
    entries: List[List[AlgebraElement]]
    gauss: Optional[GaussFactors] = None
    normalized: bool = False

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> AlgebraElement:
        """1-based access."""
        return self.entries[i - 1][j - 1]

    def equals(self, other: "LaxMatrix") -> bool:
        return mat_equal(self.entries, other.entries)


# ---------------------------------------------------------------------------
# polynomial building blocks


def _point_value(pt) -> RatFun:
    if isinstance(pt, str):
        return RatFun.variable(x_var(pt))
    return RatFun.const(pt)


def _point_poly(pt) -> Poly:
    if isinstance(pt, str):
        return Poly.variable(x_var(pt))
    return Poly.const(pt)


def slot_product(sig: AlgebraSignature, j: int, arg: Poly, skip: Optional[int] = None,
                 factor: int = 1) -> Poly:
    """prod over slots r of row j of (arg - p[j,r]), optionally skipping one."""
    out = Poly.const(1)
    for r in range(1, sig.a(j, factor) + 1):
        if r == skip:
            continue
        out = out * (arg - Poly.variable(p_var(j, r, factor)))
    return out


def slot_ratio(sig: AlgebraSignature, j: int, arg: Poly, skip: Optional[int] = None,
               factor: int = 1, invert: bool = False) -> RatFun:
    """Same product as a RatFun, kept factor-by-factor when inverted."""
    out = RatFun.one()
    for r in range(1, sig.a(j, factor) + 1):
        if r == skip:
            continue
        lin = arg - Poly.variable(p_var(j, r, factor))
        out = out * (RatFun.ratio(Poly.const(1), lin) if invert else RatFun.from_poly(lin))
    return out


def point_product(div: Divisor, index: int, arg: Poly) -> RatFun:
    """prod over summands with the given fundamental index of
    (arg - x_s)^sign."""
    out = RatFun.one()
    for pt, sign in div.points_with(index):
        lin = RatFun.from_poly(arg - _point_poly(pt))
        out = out * (lin if sign == 1 else lin.invert())
    return out


def _zvar() -> Poly:
    return Poly.variable(Z)


# ---------------------------------------------------------------------------
# Gauss factors


def diag_entry(div: Divisor, i: int, factor: int = 1,
               sig: Optional[AlgebraSignature] = None) -> RatFun:
    """Diagonal Gauss entry: row-i slot product over the shifted row-(i-1)
    product, times the point factors of all lower indices."""
    sig = sig or div.signature()
    z = _zvar()
    out = RatFun.from_poly(slot_product(sig, i, z, factor=factor))
    out = out * slot_ratio(sig, i - 1, z - Poly.const(1), factor=factor, invert=True)
    for k in range(0, i):
        out = out * point_product(div, k, z)
    return out


def upper_entry(div: Divisor, i: int, j: int, factor: int = 1,
                sig: Optional[AlgebraSignature] = None,
                drop_pole: bool = False) -> AlgebraElement:
    """Entry (i, j), i < j, of the upper unitriangular factor.

    The sum over slot tuples is materialized eagerly: one term per element
    of the product of the slot ranges of rows i..j-1, so the cost per
    entry is bounded by prod a_k over that range.

    With drop_pole the spectral pole 1/(z - p[i, r_i]) is omitted; that is
    exactly the z-linear fast path residue."""
    sig = sig or div.signature()
    out = AlgebraElement.zero(sig)
    ranges = [range(1, sig.a(k, factor) + 1) for k in range(i, j)]
    for tup in iproduct(*ranges):
        slots = dict(zip(range(i, j), tup))
        lead = p_var(i, slots[i], factor)
        coeff = RatFun.from_poly(
            slot_product(sig, i - 1, Poly.variable(lead) - Poly.const(1), factor=factor)
        )
        for k in range(i, j - 1):
            coeff = coeff * RatFun.from_poly(
                slot_product(
                    sig,
                    k,
                    Poly.variable(p_var(k + 1, slots[k + 1], factor)) - Poly.const(1),
                    skip=slots[k],
                    factor=factor,
                )
            )
        if not drop_pole:
            coeff = coeff * RatFun.ratio(
                Poly.const(1), _zvar() - Poly.variable(lead)
            )
        for k in range(i, j):
            coeff = coeff * slot_ratio(
                sig, k, Poly.variable(p_var(k, slots[k], factor)),
                skip=slots[k], factor=factor, invert=True,
            )
            coeff = coeff * point_product(
                div, k, Poly.variable(p_var(k, slots[k], factor))
            )
        shift = ShiftMonomial({(factor, k, slots[k]): 1 for k in range(i, j)})
        out = out + AlgebraElement(sig, {shift: -coeff})
    return out


def lower_entry(div: Divisor, j: int, i: int, factor: int = 1,
                sig: Optional[AlgebraSignature] = None,
                drop_pole: bool = False) -> AlgebraElement:
    """Entry (j, i), i < j, of the lower unitriangular factor."""
    sig = sig or div.signature()
    out = AlgebraElement.zero(sig)
    ranges = [range(1, sig.a(k, factor) + 1) for k in range(i, j)]
    for tup in iproduct(*ranges):
        slots = dict(zip(range(i, j), tup))
        coeff = RatFun.from_poly(
            slot_product(
                sig, j,
                Poly.variable(p_var(j - 1, slots[j - 1], factor)) + Poly.const(1),
                factor=factor,
            )
        )
        for k in range(i + 1, j):
            coeff = coeff * RatFun.from_poly(
                slot_product(
                    sig, k,
                    Poly.variable(p_var(k - 1, slots[k - 1], factor)) + Poly.const(1),
                    skip=slots[k], factor=factor,
                )
            )
        if not drop_pole:
            coeff = coeff * RatFun.ratio(
                Poly.const(1),
                _zvar() - Poly.variable(p_var(i, slots[i], factor)) - Poly.const(1),
            )
        for k in range(i, j):
            coeff = coeff * slot_ratio(
                sig, k, Poly.variable(p_var(k, slots[k], factor)),
                skip=slots[k], factor=factor, invert=True,
            )
        shift = ShiftMonomial({(factor, k, slots[k]): -1 for k in range(i, j)})
        out = out + AlgebraElement(sig, {shift: coeff})
    return out


def build_gauss_factors(div: Divisor) -> GaussFactors:
    if div.mode != "rational":
        raise SignatureMismatch("rational builder got a trig divisor")
    sig = div.signature()
    n = div.n
    lower = mat_zero(sig, n)
    upper = mat_zero(sig, n)
    for i in range(n):
        lower[i][i] = AlgebraElement.one(sig)
        upper[i][i] = AlgebraElement.one(sig)
    diag = [AlgebraElement.from_ratfun(sig, diag_entry(div, i)) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            upper[i - 1][j - 1] = upper_entry(div, i, j, sig=sig)
            lower[j - 1][i - 1] = lower_entry(div, j, i, sig=sig)
    return GaussFactors(lower=lower, diag=diag, upper=upper)


def build_lax(div: Divisor) -> LaxMatrix:
    """T(z) = F G E with the closed-form factors."""
    gauss = build_gauss_factors(div)
    sig = div.signature()
    n = div.n
    entries = mat_zero(sig, n)
    for alpha in range(1, n + 1):
        for beta in range(1, n + 1):
            acc = AlgebraElement.zero(sig)
            for i in range(1, min(alpha, beta) + 1):
                f = gauss.lower[alpha - 1][i - 1]
                g = gauss.diag[i - 1]
                e = gauss.upper[i - 1][beta - 1]
                acc = acc + f * (g * e)
            entries[alpha - 1][beta - 1] = acc
    return LaxMatrix(signature=sig, divisor=div, entries=entries, gauss=gauss)


# ---------------------------------------------------------------------------
# normalization


def normalizer(div: Divisor) -> RatFun:
    """1 / Z_0(z): strips the index-0 point factors."""
    out = RatFun.one()
    for pt, sign in div.points_with(0):
        lin = RatFun.from_poly(_zvar() - _point_poly(pt))
        out = out * (lin.invert() if sign == 1 else lin)
    return out


def normalize_and_check_polynomial(T: LaxMatrix) -> LaxMatrix:
    """Divide by Z_0(z) and assert every coefficient is polynomial in z."""
    if T.divisor is None:
        raise ValueError("matrix carries no divisor")
    factor = normalizer(T.divisor)
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
    return LaxMatrix(
        signature=T.signature,
        divisor=T.divisor,
        entries=entries,
        gauss=T.gauss,
        normalized=True,
    )


# ---------------------------------------------------------------------------
# linear fast path


def _young_data(div: Divisor) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Recover (blambda, bmu) row vectors from an encodable divisor."""
    n = div.n
    bl_cw = div.total_finite()
    bl = tuple(-bl_cw.d[n - i] for i in range(1, n + 1))  # rows from coweight
    bm = tuple(-div.mu.d[n - i] for i in range(1, n + 1))
    return bl, bm


def build_linear_lax(div: Divisor) -> LaxMatrix:
    """Closed-form degree-1 matrix for blambda_n = 0, bmu_n = -1 (the
    identity matrix when both vanish)."""
    if div.mode != "rational":
        raise SignatureMismatch("rational builder got a trig divisor")
    if any(s.index == 0 for s in div.summands):
        raise NotLinearCase("index-0 summands need the general builder")
    bl, bm = _young_data(div)
    n = div.n
    if any(x < y for x, y in zip(bl, bl[1:])) or any(x < y for x, y in zip(bm, bm[1:])):
        raise NotLinearCase("divisor is not encoded by pseudo Young diagrams")
    sig = div.signature()
    if bl[n - 1] != 0:
        raise NotLinearCase(f"blambda_n = {bl[n-1]} != 0")
    if bm[n - 1] == 0:
        if any(bl) or any(bm):
            raise NotLinearCase("bmu_n = 0 forces the identity matrix case")
        return LaxMatrix(sig, div, _identity_entries(sig, n))
    if bm[n - 1] != -1:
        raise NotLinearCase(f"bmu_n = {bm[n-1]} not in {{0, -1}}")
    m = max(i for i in range(1, n + 1) if bm[n - i] == -1)
    m_prime = max(i for i in range(1, n + 1) if bm[n - i] <= 0)
    entries = mat_zero(sig, n)
    z = _zvar()
    for i in range(1, n + 1):
        if i <= m:
            val = RatFun.from_poly(z)
            for r in range(1, sig.a(i - 1) + 1):
                val = val + RatFun.variable(p_var(i - 1, r)) + 1
            for r in range(1, sig.a(i) + 1):
                val = val - RatFun.variable(p_var(i, r))
            for s in div.summands:
                # epsilon_i of an index-k fundamental coweight is -1 for i > k
                if i > s.index:
                    val = val - s.sign * _point_value(s.point)
            entries[i - 1][i - 1] = AlgebraElement.from_ratfun(sig, val)
        elif i <= m_prime:
            entries[i - 1][i - 1] = AlgebraElement.one(sig)
    for i in range(1, n + 1):
        if i > m:
            continue
        for j in range(i + 1, n + 1):
            entries[i - 1][j - 1] = upper_entry(div, i, j, sig=sig, drop_pole=True)
            entries[j - 1][i - 1] = lower_entry(div, j, i, sig=sig, drop_pole=True)
    return LaxMatrix(sig, div, entries)


def _identity_entries(sig: AlgebraSignature, n: int):
    out = mat_zero(sig, n)
    for i in range(n):
        out[i][i] = AlgebraElement.one(sig)
    return out


# ---------------------------------------------------------------------------
# quantum determinant


def qdet_image(T_or_div) -> RatFun:
    """Product of the shifted diagonal Gauss entries; asserted scalar and
    equal to the closed-form point product."""
    if isinstance(T_or_div, LaxMatrix):
        div = T_or_div.divisor
    else:
        div = T_or_div
    out = RatFun.one()
    for i in range(1, div.n + 1):
        g = diag_entry(div, i).shift_var(Z, Fraction(i - 1))
        out = out * g
    closed = RatFun.one()
    z = _zvar()
    for s in div.summands:
        for k in range(s.index, div.n):
            lin = RatFun.from_poly(z - _point_poly(s.point) + Poly.const(k))
            closed = closed * (lin if s.sign == 1 else lin.invert())
    if not out.equals(closed):
        raise NotScalar("qdet disagrees with its closed form")
    return out


# ---------------------------------------------------------------------------
# normalized limits


def normalized_limit(T: LaxMatrix) -> LaxMatrix:
    """Send the last point of the divisor to infinity (after the diagonal
    column scaling for index >= 1) and return the resulting matrix; the
    divisor moves its coefficient onto the framing point."""
    div = T.divisor
    last = div.last_point()
    if not isinstance(last.point, str):
        raise ValueError("limits need a symbolic last point")
    target_div = div.move_last_point_to_infinity()
    xv = x_var(last.point)
    n = T.n
    if last.index == 0:
        lin = RatFun.from_poly(_zvar() - Poly.variable(xv))
        scale = lin.invert() if last.sign == 1 else lin
        entries = mat_map(T.entries, lambda e: e * scale)
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
    sig = target_div.signature()
    entries = mat_map(entries, lambda e: AlgebraElement(sig, dict(e.terms)))
    return LaxMatrix(sig, target_div, entries)


# ---------------------------------------------------------------------------
# fusion and Hamiltonians


def fuse(T1: LaxMatrix, T2: LaxMatrix) -> LaxMatrix:
    """Matrix product over the tensor algebra: the monodromy of two local
    matrices, also the coproduct image of the T-matrix."""
    s1, s2 = T1.signature, T2.signature
    if s1.n != s2.n or s1.mode != s2.mode:
        raise SignatureMismatch("fuse needs equal rank and mode")
    sig = s1.tensor(s2)
    a = mat_map(T1.entries, lambda e: embed(e, sig, 1))
    b = mat_map(T2.entries, lambda e: embed(e, sig, 1 + s1.tensor_factors))
    entries = mat_mul(a, b)
    div = None
    if T1.divisor is not None and T2.divisor is not None and s1.plain() and s2.plain():
        d1, d2 = T1.divisor, T2.divisor
        try:
            div = Divisor(
                d1.n,
                d1.mode,
                d1.summands + d2.summands,
                d1.mu + d2.mu,
                None
                if d1.mode == "rational"
                else d1.mu_zero + d2.mu_zero,
            )
        except NotAdmissible:
            div = None
    return LaxMatrix(sig, div, entries)


def commuting_hamiltonians_n2(T: LaxMatrix, eps) -> List[AlgebraElement]:
    """z-coefficients of T_11 + eps T_22 for n = 2; pairwise commutation is
    asserted.  eps may be an exact rational or a symbol name."""
    if T.n != 2:
        raise ValueError("defined for n = 2")
    if isinstance(eps, str):
        eps_val = RatFun.variable(x_var(eps))
    else:
        eps_val = RatFun.const(eps)
    combo = T.entries[0][0] + T.entries[1][1] * eps_val
    coeffs = combo.z_poly_coeffs(Z)
    out = [coeffs[k] for k in sorted(coeffs, reverse=True)]
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            if not out[a].commutator(out[b]).is_zero():
                raise NotScalar(
                    f"coefficients {a} and {b} of the spectral combo do not commute"
                )
    return out
