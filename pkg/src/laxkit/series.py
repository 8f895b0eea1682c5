"""Truncated Laurent series with exactness tracking.

Coefficients live in any ring with +, -, * and an is_zero() predicate
(RatFun, or difference-operator elements for the noncommutative series
used by the Gauss decomposition).  A series stores a dict power ->
coefficient together with `hi`, the largest power known exactly; hi=None
means the series is exact (a Laurent polynomial).  Multiplication keeps
the convolution order, so noncommutative coefficients are safe.
"""

from __future__ import annotations

from typing import Callable, Dict, Optional

from .errors import PoleAtExpansionPoint


class TruncSeries:
    __slots__ = ("coeffs", "hi", "zero")

    def __init__(self, coeffs: Dict[int, object], hi: Optional[int], zero):
        self.zero = zero
        if hi is None:
            self.coeffs = {k: c for k, c in coeffs.items() if not _is_zero(c)}
        else:
            self.coeffs = {
                k: c for k, c in coeffs.items() if k <= hi and not _is_zero(c)
            }
        self.hi = hi

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.hi is None

    def val(self) -> Optional[int]:
        """Lowest known power with a nonzero coefficient (None if none seen)."""
        return min(self.coeffs) if self.coeffs else None

    def coeff(self, k: int):
        if self.hi is not None and k > self.hi:
            raise ValueError(f"coefficient {k} beyond exact window {self.hi}")
        return self.coeffs.get(k, self.zero)

    def is_zero_through(self, k: int) -> bool:
        if self.hi is not None and k > self.hi:
            raise ValueError(f"window too small ({self.hi} < {k})")
        return all(kk > k for kk in self.coeffs)

    def truncate(self, hi: Optional[int]) -> "TruncSeries":
        if hi is None:
            return self
        if self.hi is not None:
            hi = min(hi, self.hi)
        return TruncSeries(self.coeffs, hi, self.zero)

    def shift_powers(self, d: int) -> "TruncSeries":
        return TruncSeries(
            {k + d: c for k, c in self.coeffs.items()},
            None if self.hi is None else self.hi + d,
            self.zero,
        )

    def map_coeffs(self, fn) -> "TruncSeries":
        return TruncSeries(
            {k: fn(c) for k, c in self.coeffs.items()}, self.hi, self.zero
        )

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        hi = _min_hi(self.hi, other.hi)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = out.get(k)
            out[k] = c if cur is None else cur + c
        return TruncSeries(out, hi, self.zero)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries({k: -c for k, c in self.coeffs.items()}, self.hi, self.zero)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if self.is_exact_zero() or other.is_exact_zero():
            return TruncSeries({}, None, self.zero)
        hi = None
        if self.hi is not None:
            ov = other.val()
            hi = self.hi + (ov if ov is not None else 0)
        if other.hi is not None:
            sv = self.val()
            h2 = other.hi + (sv if sv is not None else 0)
            hi = h2 if hi is None else min(hi, h2)
        out: Dict[int, object] = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in other.coeffs.items():
                k = ka + kb
                if hi is not None and k > hi:
                    continue
                c = ca * cb
                cur = out.get(k)
                out[k] = c if cur is None else cur + c
        return TruncSeries(out, hi, self.zero)

    def scale_left(self, c) -> "TruncSeries":
        return TruncSeries(
            {k: c * cc for k, cc in self.coeffs.items()}, self.hi, self.zero
        )

    def scale_right(self, c) -> "TruncSeries":
        return TruncSeries(
            {k: cc * c for k, cc in self.coeffs.items()}, self.hi, self.zero
        )

    def inverse(self, order: int, invert_leading: Callable) -> "TruncSeries":
        """Reciprocal, exact through power min(order, hi - 2*val).

        Writes s = t^v c0 (1 - u) with val(u) >= 1 and sums the geometric
        series; the leading coefficient c0 is inverted by the callback.
        Noncommutative-safe: s^{-1} = (sum u^j) c0^{-1} t^{-v}.
        """
        v = self.val()
        if v is None:
            raise PoleAtExpansionPoint(
                "no leading term visible in the expansion window"
            )
        target = order
        if self.hi is not None:
            target = min(target, self.hi - 2 * v)
        c0 = self.coeffs[v]
        c0_inv = invert_leading(c0)
        one = c0_inv * c0
        window = target + v  # exactness needed for the geometric sum
        u = TruncSeries(
            {k - v: -(c0_inv * c) for k, c in self.coeffs.items() if k != v},
            None if self.hi is None else self.hi - v,
            self.zero,
        ).truncate(window)
        total = TruncSeries({0: one}, window, self.zero)
        term = total
        while True:
            term = (term * u).truncate(window)
            if term.val() is None:
                break
            total = total + term
        return TruncSeries(
            {k - v: c * c0_inv for k, c in total.coeffs.items()}, target, self.zero
        )

    def agrees_through(self, other: "TruncSeries", k: int) -> bool:
        return (self - other).is_zero_through(k)

    def __repr__(self):
        ks = sorted(self.coeffs)
        inner = ", ".join(f"{k}: {self.coeffs[k]!r}" for k in ks)
        return f"TruncSeries({{{inner}}}, hi={self.hi})"


def _is_zero(c) -> bool:
    z = getattr(c, "is_zero", None)
    if z is not None:
        return z()
    return not c


def _min_hi(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
