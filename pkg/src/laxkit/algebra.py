"""Difference-operator algebras in normal-ordered form.

An element is a finite sum  coefficient * shift-monomial  with every
coefficient written to the LEFT of every shift generator.  The shift
generators obey

    rational mode:  e^{q[i,r]} f(p) = f(p - 1) e^{q[i,r]}
                    (from [e^{+-q}, p] = -+ e^{+-q})
    trig mode:      D[i,r] f(w^{1/2}) = f(v w^{1/2}) D[i,r]
                    (from D w^{1/2} = v w^{1/2} D, so w -> v^2 w)

Both directions of the contract are property-tested; the sign and the
full-versus-half power of v are the classic implementation traps, pinned
by the golden matrices in the test suite.

Tensor powers reuse the same machinery: slot variables carry a tensor
factor index and shift monomials are keyed by (factor, i, r); generators
from different factors commute.

Elements are immutable and all operations pure; matrix entries can be
built and compared in parallel with no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .errors import NonIntegerShift, NotScalar, SignatureMismatch
from .ratfun import Poly, RatFun, as_ratfun, p_var, wh_var


@dataclass(frozen=True)
class AlgebraSignature:
    """Shape of the algebra: rank, per-factor slot counts, mode, points."""

    n: int
    mode: str  # 'rational' | 'trig'
    slot_counts: Tuple[Tuple[int, ...], ...]  # one (a_1..a_{n-1}) per factor
    points: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.mode not in ("rational", "trig"):
            raise ValueError(f"bad mode {self.mode!r}")
        for a in self.slot_counts:
            if len(a) != self.n - 1:
                raise ValueError("slot vector length must be n-1")

    @property
    def tensor_factors(self) -> int:
        return len(self.slot_counts)

    def a(self, i: int, factor: int = 1) -> int:
        """Slot count of row i (a_0 = a_n = 0 convention)."""
        counts = self.slot_counts[factor - 1]
        if i <= 0 or i >= self.n:
            return 0
        return counts[i - 1]

    def tensor(self, other: "AlgebraSignature") -> "AlgebraSignature":
        if self.n != other.n or self.mode != other.mode:
            raise SignatureMismatch("tensor of incompatible signatures")
        points = self.points + tuple(
            p for p in other.points if p not in self.points
        )
        return AlgebraSignature(
            self.n, self.mode, self.slot_counts + other.slot_counts, points
        )

    def plain(self) -> bool:
        return self.tensor_factors == 1


class ShiftMonomial:
    """Product of shift generators: exps maps (factor, i, r) -> exponent."""

    __slots__ = ("exps", "_key")

    def __init__(self, exps: Dict[Tuple[int, int, int], int]):
        self.exps = {k: m for k, m in exps.items() if m}
        self._key = tuple(sorted(self.exps.items()))

    @staticmethod
    def identity() -> "ShiftMonomial":
        return _SHIFT_ONE

    @staticmethod
    def generator(i: int, r: int, m: int = 1, factor: int = 1) -> "ShiftMonomial":
        return ShiftMonomial({(factor, i, r): m})

    def __mul__(self, other: "ShiftMonomial") -> "ShiftMonomial":
        out = dict(self.exps)
        for k, m in other.exps.items():
            out[k] = out.get(k, 0) + m
        return ShiftMonomial(out)

    def inverse(self) -> "ShiftMonomial":
        return ShiftMonomial({k: -m for k, m in self.exps.items()})

    def is_identity(self) -> bool:
        return not self.exps

    def __eq__(self, other):
        return isinstance(other, ShiftMonomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if not self.exps:
            return "ShiftMonomial(1)"
        inner = " ".join(f"({f};{i},{r})^{m}" for (f, i, r), m in self._key)
        return f"ShiftMonomial({inner})"


_SHIFT_ONE = ShiftMonomial({})


class AlgebraElement:
    """Normal-ordered element: finite map shift-monomial -> RatFun."""

    __slots__ = ("signature", "terms")

    def __init__(self, signature: AlgebraSignature, terms: Dict[ShiftMonomial, RatFun]):
        self.signature = signature
        self.terms = {s: c for s, c in terms.items() if not c.is_zero()}

    # -- constructors

    @staticmethod
    def zero(sig: AlgebraSignature) -> "AlgebraElement":
        return AlgebraElement(sig, {})

    @staticmethod
    def from_ratfun(sig: AlgebraSignature, f) -> "AlgebraElement":
        return AlgebraElement(sig, {_SHIFT_ONE: as_ratfun(f)})

    @staticmethod
    def one(sig: AlgebraSignature) -> "AlgebraElement":
        return AlgebraElement.from_ratfun(sig, 1)

    @staticmethod
    def shift(sig: AlgebraSignature, i: int, r: int, m: int = 1, factor: int = 1,
              coeff=1) -> "AlgebraElement":
        """coeff * e^{m q[i,r]} (rational) or coeff * D[i,r]^m (trig)."""
        if not (1 <= i < sig.n and 1 <= r <= sig.a(i, factor)):
            raise SignatureMismatch(f"no slot ({i},{r}) in factor {factor}")
        return AlgebraElement(
            sig, {ShiftMonomial.generator(i, r, m, factor): as_ratfun(coeff)}
        )

    # -- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(s.is_identity() for s in self.terms)

    def scalar_part(self) -> RatFun:
        """The coefficient of the identity shift; NotScalar if others remain."""
        if not self.is_scalar():
            raise NotScalar(f"shift monomials survive: {list(self.terms)!r}")
        return self.terms.get(_SHIFT_ONE, RatFun.zero())

    # -- additive structure

    def __add__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            cur = out.get(s)
            out[s] = c if cur is None else cur + c
        return AlgebraElement(self.signature, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.signature, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    # -- multiplicative structure (normal ordering)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Fraction, RatFun)):
            c = as_ratfun(other)
            return AlgebraElement(
                self.signature, {s: cc * c for s, cc in self.terms.items()}
            )
        other = self._coerce(other)
        sig = self.signature
        out: Dict[ShiftMonomial, RatFun] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                c2s = c2
                for (factor, i, r), m in s1.exps.items():
                    step = -m if sig.mode == "rational" else m
                    c2s = c2s.shift_slot(sig.mode, factor, i, r, step)
                s = s1 * s2
                c = c1 * c2s
                cur = out.get(s)
                out[s] = c if cur is None else cur + c
        return AlgebraElement(sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFun)):
            return self * other  # scalars commute
        return self._coerce(other) * self

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            return self.invert_single_term() ** (-k)
        out = AlgebraElement.one(self.signature)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        return self * other - other * self

    def invert_single_term(self) -> "AlgebraElement":
        """(c * S)^{-1} = shift_{S^{-1}}(c^{-1}) * S^{-1}; one term only."""
        if len(self.terms) != 1:
            raise NotScalar("can only invert single-term elements")
        (s, c), = self.terms.items()
        sig = self.signature
        cinv = c.invert()
        for (factor, i, r), m in s.exps.items():
            step = m if sig.mode == "rational" else -m
            cinv = cinv.shift_slot(sig.mode, factor, i, r, step)
        return AlgebraElement(sig, {s.inverse(): cinv})

    # -- equality

    def equals(self, other) -> bool:
        return (self - self._coerce(other)).is_zero()

    __eq__ = equals

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.signature != self.signature:
                raise SignatureMismatch(
                    f"{other.signature} vs {self.signature}"
                )
            return other
        if isinstance(other, (int, Fraction, RatFun)):
            return AlgebraElement.from_ratfun(self.signature, other)
        raise TypeError(f"cannot coerce {type(other)!r}")

    # -- coefficient maps

    def map_coeffs(self, fn: Callable[[RatFun], RatFun],
                   signature: Optional[AlgebraSignature] = None) -> "AlgebraElement":
        return AlgebraElement(
            signature or self.signature, {s: fn(c) for s, c in self.terms.items()}
        )

    def rename_spectral(self, old, new) -> "AlgebraElement":
        return self.map_coeffs(lambda c: c.rename_var(old, new))

    def subst_z(self, fn) -> "AlgebraElement":
        return self.map_coeffs(fn)

    def z_poly_coeffs(self, var) -> Dict[int, "AlgebraElement"]:
        """Decompose by powers of a central variable (z-free denominators)."""
        out: Dict[int, Dict[ShiftMonomial, RatFun]] = {}
        for s, c in self.terms.items():
            for k, ck in c.poly_coeffs(var).items():
                out.setdefault(k, {})[s] = ck
        return {
            k: AlgebraElement(self.signature, terms) for k, terms in out.items()
        }

    def __repr__(self):
        from .textio import render_element

        return f"AlgebraElement({render_element(self)})"


# ---------------------------------------------------------------------------
# tensor embeddings


def embed(elem: AlgebraElement, target: AlgebraSignature, factor: int) -> AlgebraElement:
    """Include an element as tensor factors factor, factor+1, ... of target.

    Works for multi-factor sources: source factor f lands on target factor
    f + factor - 1."""
    src = elem.signature
    if src.mode != target.mode or src.n != target.n:
        raise SignatureMismatch("incompatible embed target")
    off = factor - 1
    for f in range(1, src.tensor_factors + 1):
        if src.slot_counts[f - 1] != target.slot_counts[f + off - 1]:
            raise SignatureMismatch("slot counts differ in the chosen factors")
    if off == 0 and src.tensor_factors == target.tensor_factors:
        return AlgebraElement(target, dict(elem.terms))

    def remap_coeff(c: RatFun) -> RatFun:
        # highest source factor first so targets never collide with sources
        for f in range(src.tensor_factors, 0, -1):
            for i in range(1, src.n):
                for r in range(1, src.a(i, f) + 1):
                    if src.mode == "rational":
                        c = c.rename_var(p_var(i, r, f), p_var(i, r, f + off))
                    else:
                        c = c.rename_var(wh_var(i, r, f), wh_var(i, r, f + off))
        return c

    out: Dict[ShiftMonomial, RatFun] = {}
    for s, c in elem.terms.items():
        new_s = ShiftMonomial(
            {(f + off, i, r): m for (f, i, r), m in s.exps.items()}
        )
        out[new_s] = remap_coeff(c)
    return AlgebraElement(target, out)


def tensor(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """a (x) b over the doubled signature."""
    sig = a.signature.tensor(b.signature)
    return embed(a, sig, 1) * embed(b, sig, a.signature.tensor_factors + 1)


# ---------------------------------------------------------------------------
# gauges (rational mode)


@dataclass(frozen=True)
class GammaGauge:
    """Conjugation by a product of Gamma values of linear forms.

    factors: sequence of (L, e) with L a linear Poly in p/x variables and
    e = +-1.  Gamma itself is never evaluated: conjugating a shift
    monomial only needs the integer-step quotients supplied by the
    functional equation Gamma(y + 1) = y Gamma(y).
    """

    factors: Tuple[Tuple[Poly, int], ...]

    def conjugate(self, elem: AlgebraElement) -> AlgebraElement:
        sig = elem.signature
        if sig.mode != "rational":
            raise SignatureMismatch("Gamma gauges act on rational mode")
        out: Dict[ShiftMonomial, RatFun] = {}
        for s, c in elem.terms.items():
            factor = RatFun.one()
            for L, e in self.factors:
                k_total = Fraction(0)
                for (f, i, r), m in s.exps.items():
                    coeff = L.coeff_of(p_var(i, r, f), 1).const_value() if not L.coeff_of(p_var(i, r, f), 1).is_zero() else Fraction(0)
                    k_total += m * coeff
                if k_total.denominator != 1:
                    raise NonIntegerShift(f"Gamma shift by {k_total}")
                factor = factor * _gamma_quotient(L, int(k_total), e)
            # the quotient sits to the right of the shift monomial; move it left
            for (f, i, r), m in s.exps.items():
                factor = factor.shift_slot("rational", f, i, r, -m)
            new_c = c * factor
            cur = out.get(s)
            out[s] = new_c if cur is None else cur + new_c
        return AlgebraElement(sig, out)


def _gamma_quotient(L: Poly, k: int, e: int) -> RatFun:
    """(Gamma(L + k) / Gamma(L))^e as a rational function."""
    if k == 0:
        return RatFun.one()
    if k > 0:
        prod = RatFun.one()
        for j in range(k):
            prod = prod * RatFun.from_poly(L + Poly.const(j))
    else:
        prod = RatFun.one()
        for j in range(1, -k + 1):
            prod = prod * RatFun.ratio(Poly.const(1), L - Poly.const(j))
    return prod if e == 1 else prod.invert()


@dataclass(frozen=True)
class MonomialGauge:
    """Conjugation by a sign-twisted translation: p[i,r] -> p[i,r] +
    shifts[i,r], and e^{q[i,r]} picks up (-1)^(signs[i,r])."""

    shifts: Tuple[Tuple[Tuple[int, int], Fraction], ...]
    signs: Tuple[Tuple[Tuple[int, int], int], ...] = ()

    def conjugate(self, elem: AlgebraElement) -> AlgebraElement:
        sig = elem.signature
        if sig.mode != "rational":
            raise SignatureMismatch("monomial gauges act on rational mode")
        shift_map = dict(self.shifts)
        sign_map = dict(self.signs)
        out: Dict[ShiftMonomial, RatFun] = {}
        for s, c in elem.terms.items():
            nc = c
            for (i, r), t in shift_map.items():
                nc = nc.shift_var(p_var(i, r, 1), t)
            sgn = 1
            for (f, i, r), m in s.exps.items():
                if sign_map.get((i, r), 0) % 2 and m % 2:
                    sgn = -sgn
            nc = nc * sgn
            cur = out.get(s)
            out[s] = nc if cur is None else cur + nc
        return AlgebraElement(sig, out)


# ---------------------------------------------------------------------------
# matrices of algebra elements


def mat_zero(sig: AlgebraSignature, n: int) -> List[List[AlgebraElement]]:
    return [[AlgebraElement.zero(sig) for _ in range(n)] for _ in range(n)]


def mat_identity(sig: AlgebraSignature, n: int) -> List[List[AlgebraElement]]:
    out = mat_zero(sig, n)
    for i in range(n):
        out[i][i] = AlgebraElement.one(sig)
    return out


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    sig = None
    for row in a:
        for e in row:
            sig = e.signature
            break
        if sig:
            break
    out = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = None
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            out[i][j] = acc if acc is not None else AlgebraElement.zero(sig)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_map(a, fn):
    return [[fn(x) for x in row] for row in a]


def mat_equal(a, b) -> bool:
    return all(
        (x - y).is_zero() for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def mat_embed(mat, target: AlgebraSignature, factor: int):
    return mat_map(mat, lambda e: embed(e, target, factor))
