"""Exact multivariate rational functions with factored denominators.

A value is a pair (numerator polynomial, multiset of denominator atoms).
Numerators are sparse polynomials over exact rationals; denominators are
never expanded.  Every denominator produced by the Lax-matrix formulas is a
product of *atoms*:

  * rational mode: linear forms  c0 + sum c_v * v  over z, w, p[i,r], x[s];
  * trig mode: two-term combinations  A*M1 - B*M2  of Laurent monomials in
    z, w, x[s], v and the half generators wh[i,r] (wh^2 = w[i,r]).

The shift action permutes atoms, so cancellation is a per-atom exact
divisibility test and equality of rational functions reduces to a
polynomial identity.

Variables are identified by tuples:

    ('z',)              spectral parameter
    ('w',)              second spectral parameter
    ('p', t, i, r)      rational slot variable, tensor factor t
    ('wh', t, i, r)     square root of the trig slot variable, factor t
    ('v',)              quantum parameter (Laurent)
    ('x', label)        free scalar parameter (point of the divisor, ...)
    ('eps',)            degeneration parameter (reserved for series)

Exponents of 'v' and 'wh' variables may be negative (they are units);
all other exponents are non-negative.  The canonical term order is graded
lexicographic with variables compared by their identifying tuples.

Coefficients are arbitrary-precision Fractions; nothing here is ever
floating point.  Values are immutable after construction and every
operation is pure, so they may be shared and sent across threads freely;
callers can parallelize over independent computations without locks.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DivergesAtInfinity,
    NotAtomFactorable,
    PoleAtExpansionPoint,
)

Var = Tuple
Monomial = Tuple[Tuple[Var, int], ...]

Q0 = Fraction(0)
Q1 = Fraction(1)

Z = ("z",)
W = ("w",)
V = ("v",)
EPS = ("eps",)

_UNIT_KINDS = frozenset({"v", "wh"})


def p_var(i: int, r: int, slot: int = 1) -> Var:
    return ("p", slot, i, r)


def wh_var(i: int, r: int, slot: int = 1) -> Var:
    return ("wh", slot, i, r)


def x_var(label) -> Var:
    return ("x", str(label))


def is_unit_var(v: Var) -> bool:
    return v[0] in _UNIT_KINDS


# ---------------------------------------------------------------------------
# monomial helpers (sorted tuples of (var, exp), exp != 0)

_EMPTY_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        ne = out.get(v, 0) + e
        if ne:
            out[v] = ne
        else:
            del out[v]
    return tuple(sorted(out.items()))


def mono_pow(m: Monomial, k: int) -> Monomial:
    if k == 0 or not m:
        return _EMPTY_MONO
    return tuple((v, e * k) for v, e in m)


def mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when b / a has non-negative exponents."""
    da = dict(a)
    for v, e in b:
        da[v] = da.get(v, 0) - e
    return all(e <= 0 for e in da.values())


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b as a (possibly Laurent) monomial."""
    return mono_mul(a, mono_pow(b, -1))


_KIND_RANK = {"z": 0, "w": 1, "v": 2, "eps": 3, "x": 4, "p": 5, "wh": 6}


def var_precedence(v: Var):
    """Smaller key = more significant variable (z, w, v, eps, x, p, wh;
    within a kind, smaller indices are more significant)."""
    return (_KIND_RANK[v[0]],) + tuple(v[1:])


def mono_cmp_key(m: Monomial):
    """Sort key realizing graded lexicographic order: total degree first,
    ties broken by the most significant variable with a larger exponent."""
    return (mono_deg(m), _LexTail(m))


class _LexTail:
    """Comparison helper: lex order on exponent vectors, the most
    significant variable with the larger exponent wins."""

    __slots__ = ("items",)

    def __init__(self, m: Monomial):
        # items sorted most-significant first
        self.items = sorted(m, key=lambda ve: var_precedence(ve[0]))

    def _walk(self, other: "_LexTail") -> int:
        a, b = self.items, other.items
        ia = ib = 0
        while ia < len(a) or ib < len(b):
            ka = var_precedence(a[ia][0]) if ia < len(a) else None
            kb = var_precedence(b[ib][0]) if ib < len(b) else None
            if ka is not None and (kb is None or ka < kb):
                ea, eb = a[ia][1], 0
                ia += 1
            elif kb is not None and (ka is None or kb < ka):
                ea, eb = 0, b[ib][1]
                ib += 1
            else:
                ea, eb = a[ia][1], b[ib][1]
                ia += 1
                ib += 1
            if ea != eb:
                return 1 if ea > eb else -1
        return 0

    def __lt__(self, other):
        return self._walk(other) < 0

    def __gt__(self, other):
        return self._walk(other) > 0

    def __eq__(self, other):
        return self.items == other.items

    def __le__(self, other):
        return self._walk(other) <= 0

    def __ge__(self, other):
        return self._walk(other) >= 0


# ---------------------------------------------------------------------------


class Poly:
    """Immutable sparse polynomial: dict monomial -> Fraction, no zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction]):
        self.terms = terms

    # -- constructors

    @staticmethod
    def zero() -> "Poly":
        return _P_ZERO

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({_EMPTY_MONO: c}) if c else _P_ZERO

    @staticmethod
    def variable(v: Var, exp: int = 1) -> "Poly":
        if exp == 0:
            return _P_ONE
        return Poly({((v, exp),): Q1})

    @staticmethod
    def monomial(m: Monomial, c=Q1) -> "Poly":
        c = Fraction(c)
        return Poly({m: c}) if c else _P_ZERO

    # -- predicates / views

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY_MONO in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Q0
        if len(self.terms) == 1 and _EMPTY_MONO in self.terms:
            return self.terms[_EMPTY_MONO]
        raise ValueError("not a constant polynomial")

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, Q0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return _P_ZERO
            return Poly({m: cc * c for m, cc in self.terms.items()})
        other = _as_poly(other)
        if not self.terms or not other.terms:
            return _P_ZERO
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                nc = out.get(m, Q0) + ca * cb
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a Poly")
        out = _P_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- per-variable structure

    def degree(self, v: Var) -> int:
        """Largest exponent of v (0 when absent; min 0 even for Laurent)."""
        d = 0
        for m in self.terms:
            for vv, e in m:
                if vv == v and e > d:
                    d = e
        return d

    def min_exp(self, v: Var) -> int:
        """True minimum exponent of v over all terms (0 for the zero poly)."""
        lo = None
        for m in self.terms:
            e = 0
            for vv, ee in m:
                if vv == v:
                    e = ee
                    break
            if lo is None or e < lo:
                lo = e
        return 0 if lo is None else lo

    def decompose(self, v: Var) -> Dict[int, "Poly"]:
        """Write self = sum_k coeff_k * v^k; coefficients omit v."""
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for vv, ee in m:
                if vv == v:
                    e = ee
                else:
                    rest.append((vv, ee))
            out.setdefault(e, {})[tuple(rest)] = c
        return {k: Poly(t) for k, t in out.items()}

    def coeff_of(self, v: Var, k: int) -> "Poly":
        return self.decompose(v).get(k, _P_ZERO)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=mono_cmp_key)
        return m, self.terms[m]

    def total_degree(self) -> int:
        return max((mono_deg(m) for m in self.terms), default=0)

    # -- substitutions

    def shift_var(self, v: Var, c: Fraction) -> "Poly":
        """v -> v + c (binomial expansion; v must be non-Laurent in self)."""
        c = Fraction(c)
        if not c:
            return self
        out = _P_ZERO
        for k, coeff in self.decompose(v).items():
            if k < 0:
                raise ValueError("additive shift of a Laurent exponent")
            out = out + coeff * (Poly.variable(v) + Poly.const(c)) ** k
        return out

    def scale_var(self, v: Var, unit: Monomial, c=Q1) -> "Poly":
        """v -> c * unit * v  (unit a Laurent monomial in unit variables)."""
        c = Fraction(c)
        out: Dict[Monomial, Fraction] = {}
        for m, coeff in self.terms.items():
            e = 0
            for vv, ee in m:
                if vv == v:
                    e = ee
                    break
            nm = mono_mul(m, mono_pow(unit, e)) if e else m
            nc = coeff * (c ** e if e >= 0 else Q1 / (c ** (-e)))
            nc = out.get(nm, Q0) + nc
            if nc:
                out[nm] = nc
            else:
                out.pop(nm, None)
        return Poly(out)

    def set_value(self, v: Var, value: Fraction) -> "Poly":
        value = Fraction(value)
        out = _P_ZERO
        for k, coeff in self.decompose(v).items():
            if k >= 0:
                out = out + coeff * (value ** k)
            else:
                if not value:
                    raise ZeroDivisionError("substituting 0 into a Laurent exponent")
                out = out + coeff * (Q1 / value ** (-k))
        return out

    def subst_poly(self, v: Var, repl: "Poly") -> "Poly":
        out = _P_ZERO
        for k, coeff in self.decompose(v).items():
            if k < 0:
                raise ValueError("polynomial substitution into a Laurent exponent")
            out = out + coeff * repl ** k
        return out

    def rename_var(self, old: Var, new: Var) -> "Poly":
        if old == new:
            return self
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            items = dict(m)
            if old in items:
                e = items.pop(old)
                items[new] = items.get(new, 0) + e
                if not items[new]:
                    del items[new]
            nm = tuple(sorted(items.items()))
            nc = out.get(nm, Q0) + c
            if nc:
                out[nm] = nc
            else:
                out.pop(nm, None)
        return Poly(out)

    def partial(self, v: Var) -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for idx, (vv, e) in enumerate(m):
                if vv == v:
                    nm = list(m)
                    if e == 1:
                        nm.pop(idx)
                    else:
                        nm[idx] = (vv, e - 1)
                    key = tuple(nm)
                    nc = out.get(key, Q0) + c * e
                    if nc:
                        out[key] = nc
                    else:
                        out.pop(key, None)
                    break
        return Poly(out)

    def evaluate(self, assignment: Dict[Var, Fraction]) -> Fraction:
        total = Q0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                val = assignment[v]
                if e >= 0:
                    term *= val ** e
                else:
                    term *= Q1 / val ** (-e)
            total += term
        return total

    def __repr__(self):
        from .textio import render_poly

        return f"Poly({render_poly(self)})"


_P_ZERO = Poly({})
_P_ONE = Poly({_EMPTY_MONO: Q1})


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot coerce {type(x)!r} to Poly")


# ---------------------------------------------------------------------------
# exact division


def poly_div_exact(f: Poly, g: Poly) -> Optional[Poly]:
    """Return q with f = q*g, or None.  Handles Laurent exponents in unit
    variables by clearing them first (units do not affect divisibility)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return _P_ZERO
    # normalize every variable of both operands to zero minimum exponent;
    # the quotient is corrected by the difference of the removed contents
    shift_f: Monomial = _EMPTY_MONO
    shift_g: Monomial = _EMPTY_MONO
    for v in f.variables():
        lo = f.min_exp(v)
        if lo:
            shift_f = mono_mul(shift_f, ((v, -lo),))
    for v in g.variables():
        lo = g.min_exp(v)
        if lo:
            shift_g = mono_mul(shift_g, ((v, -lo),))
    fp = f * Poly.monomial(shift_f) if shift_f else f
    gp = g * Poly.monomial(shift_g) if shift_g else g
    q = _poly_div_nonneg(fp, gp)
    if q is None:
        return None
    adjust = mono_div(shift_g, shift_f)
    if any(e < 0 and not is_unit_var(v) for v, e in adjust):
        # quotient would need a genuine denominator
        return None
    return q * Poly.monomial(adjust) if adjust else q


def _poly_div_nonneg(f: Poly, g: Poly) -> Optional[Poly]:
    gm, gc = g.leading_term()
    rem = dict(f.terms)
    q: Dict[Monomial, Fraction] = {}
    while rem:
        fm = max(rem, key=mono_cmp_key)
        fc = rem[fm]
        if not mono_divides(gm, fm):
            return None
        t = mono_div(fm, gm)
        tc = fc / gc
        q[t] = q.get(t, Q0) + tc
        for m, c in g.terms.items():
            key = mono_mul(m, t)
            nc = rem.get(key, Q0) - c * tc
            if nc:
                rem[key] = nc
            else:
                rem.pop(key, None)
    return Poly(q)


# ---------------------------------------------------------------------------
# denominator atoms


class Atom:
    """Canonical irreducible denominator factor.

    Stored as a normalized Poly: content-free, non-negative z/w/x/p
    exponents, unit-variable exponents shifted to be >= 0 with a zero
    minimum, leading coefficient 1 under the term order.
    """

    __slots__ = ("poly", "key", "_hash")

    def __init__(self, poly: Poly, key):
        self.poly = poly
        self.key = key
        self._hash = hash(key)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key == other.key

    def __hash__(self):
        return self._hash

    def degree(self, v: Var) -> int:
        return self.poly.degree(v)

    def __repr__(self):
        from .textio import render_poly

        return f"Atom({render_poly(self.poly)})"


def _atom_key(p: Poly):
    return tuple(sorted(p.terms.items(), key=lambda kv: mono_cmp_key(kv[0])))


_TRIG_ATOM_KINDS = frozenset({"z", "w", "wh", "x", "v"})
_LINEAR_ATOM_KINDS = frozenset({"z", "w", "p", "x"})


def _is_atom_shape(p: Poly) -> bool:
    """Linear form over z/w/p/x, or a two-term Laurent combo over
    z/w/wh/x/v (the two denominator shapes the formulas produce)."""
    if p.is_zero() or p.is_const():
        return False
    if len(p.terms) <= 2 and all(
        v[0] in _TRIG_ATOM_KINDS for m in p.terms for v, _ in m
    ):
        return True
    return all(
        mono_deg(m) <= 1 and all(v[0] in _LINEAR_ATOM_KINDS for v, _ in m)
        for m in p.terms
    )


def normalize_factor(p: Poly) -> Tuple[Poly, Dict[Atom, int]]:
    """Split p into unit * product of atoms.

    Returns (unit, atoms) with p = unit * prod atom^mult and unit a
    scalar times a Laurent monomial in unit variables.  Raises
    NotAtomFactorable when the primitive part is not atom shaped.
    """
    if p.is_zero():
        raise ZeroDivisionError("zero cannot be a denominator factor")
    unit, atoms, residual = _peel_content(p)
    if residual.is_const():
        return unit * residual, atoms
    if not _is_atom_shape(residual):
        raise NotAtomFactorable(f"not an atom: {residual!r}")
    atom, cofactor = _canonical_atom(residual)
    atoms[atom] = atoms.get(atom, 0) + 1
    return unit * cofactor, atoms


def _peel_content(p: Poly) -> Tuple[Poly, Dict[Atom, int], Poly]:
    """Extract monomial content: unit factors to `unit`, non-unit single
    variables to monomial atoms, returning (unit, atoms, primitive)."""
    atoms: Dict[Atom, int] = {}
    unit_mono: Monomial = _EMPTY_MONO
    content: Monomial = _EMPTY_MONO
    for v in p.variables():
        lo = p.min_exp(v)
        if is_unit_var(v):
            if lo:
                unit_mono = mono_mul(unit_mono, ((v, lo),))
                content = mono_mul(content, ((v, lo),))
        elif lo > 0:
            a = _monomial_atom(v)
            atoms[a] = atoms.get(a, 0) + lo
            content = mono_mul(content, ((v, lo),))
    residual = p * Poly.monomial(mono_pow(content, -1)) if content else p
    return Poly.monomial(unit_mono), atoms, residual


def _monomial_atom(v: Var) -> Atom:
    p = Poly.variable(v)
    return Atom(p, _atom_key(p))


def _canonical_atom(p: Poly) -> Tuple[Atom, Poly]:
    """Scale a content-free atom candidate to leading coefficient 1.

    Returns (atom, cofactor) with p = cofactor * atom.poly, the cofactor a
    scalar polynomial."""
    _, lc = p.leading_term()
    if lc != 1:
        p = p * (Q1 / lc)
    return Atom(p, _atom_key(p)), Poly.const(lc)


# ---------------------------------------------------------------------------


class RatFun:
    """Reduced rational function: Poly numerator over a multiset of atoms."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Dict[Atom, int]):
        self.num = num
        self.den = den

    # -- constructors

    @staticmethod
    def _make(num: Poly, den: Dict[Atom, int]) -> "RatFun":
        if num.is_zero():
            return RatFun(_P_ZERO, {})
        den = {a: m for a, m in den.items() if m}
        if any(m < 0 for m in den.values()):
            raise ValueError("negative atom multiplicity")
        changed = True
        while changed and den:
            changed = False
            for a in list(den):
                while den.get(a, 0) > 0:
                    q = poly_div_exact(num, a.poly)
                    if q is None:
                        break
                    num = q
                    den[a] -= 1
                    if not den[a]:
                        del den[a]
                    changed = True
        return RatFun(num, den)

    @staticmethod
    def from_poly(p) -> "RatFun":
        return RatFun(_as_poly(p), {})

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c), {})

    @staticmethod
    def variable(v: Var, exp: int = 1) -> "RatFun":
        if exp >= 0 or is_unit_var(v):
            return RatFun(Poly.variable(v, exp), {})
        return RatFun(_P_ONE, {_monomial_atom(v): -exp})

    @staticmethod
    def ratio(num, den) -> "RatFun":
        """num / den with den factored into atoms (raises if impossible)."""
        num = _as_poly(num)
        den = _as_poly(den)
        unit, atoms = factor_atoms(den)
        return RatFun._make(num * _invert_unit(unit), atoms)

    zero = staticmethod(lambda: _R_ZERO)
    one = staticmethod(lambda: _R_ONE)

    # -- predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return not self.den and self.num.is_const()

    def const_value(self) -> Fraction:
        if self.den:
            raise ValueError("not a constant")
        return self.num.const_value()

    def is_poly(self) -> bool:
        return not self.den

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic

    def __add__(self, other) -> "RatFun":
        other = as_ratfun(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common: Dict[Atom, int] = dict(self.den)
        for a, m in other.den.items():
            if common.get(a, 0) < m:
                common[a] = m
        na = self.num
        for a, m in common.items():
            extra = m - self.den.get(a, 0)
            if extra:
                na = na * a.poly ** extra
        nb = other.num
        for a, m in common.items():
            extra = m - other.den.get(a, 0)
            if extra:
                nb = nb * a.poly ** extra
        return RatFun._make(na + nb, common)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        return self + (-as_ratfun(other))

    def __rsub__(self, other):
        return as_ratfun(other) - self

    def __mul__(self, other) -> "RatFun":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return _R_ZERO
            return RatFun(self.num * c, self.den)
        other = as_ratfun(other)
        if self.is_zero() or other.is_zero():
            return _R_ZERO
        den = dict(self.den)
        for a, m in other.den.items():
            den[a] = den.get(a, 0) + m
        return RatFun._make(self.num * other.num, den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return self.invert() ** (-k)
        out = _R_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other) -> "RatFun":
        return self * as_ratfun(other).invert()

    def __rtruediv__(self, other):
        return as_ratfun(other) / self

    def equals(self, other) -> bool:
        """Mathematical equality via exact cross multiplication."""
        return (self - as_ratfun(other)).is_zero()

    __eq__ = equals

    def __hash__(self):
        raise TypeError("RatFun is not hashable")

    # -- inversion

    def invert(self) -> "RatFun":
        """Reciprocal; numerator must factor into atoms (see factor_atoms)."""
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        unit, atoms = factor_atoms(self.num)
        num = _invert_unit(unit)
        for a, m in self.den.items():
            num = num * a.poly ** m
        return RatFun._make(num, atoms)

    # -- substitutions (atoms are remapped and renormalized)

    def _map(self, poly_fn) -> "RatFun":
        num = poly_fn(self.num)
        den: Dict[Atom, int] = {}
        for a, m in self.den.items():
            unit, atoms = normalize_factor(poly_fn(a.poly))
            num = num * _invert_unit(unit) ** m
            for na, nm in atoms.items():
                den[na] = den.get(na, 0) + nm * m
        return RatFun._make(num, den)

    def shift_var(self, v: Var, c) -> "RatFun":
        return self._map(lambda p: p.shift_var(v, c))

    def scale_var(self, v: Var, unit: Monomial, c=Q1) -> "RatFun":
        return self._map(lambda p: p.scale_var(v, unit, c))

    def set_value(self, v: Var, value) -> "RatFun":
        return self._map(lambda p: p.set_value(v, value))

    def rename_var(self, old: Var, new: Var) -> "RatFun":
        return self._map(lambda p: p.rename_var(old, new))

    def shift_slot(self, mode: str, slot: int, i: int, r: int, m: int) -> "RatFun":
        """The m-fold shift automorphism on slot (i, r) of tensor factor
        `slot`: rational p -> p + m; trig wh -> v^m wh (so w -> v^{2m} w)."""
        if m == 0:
            return self
        if mode == "rational":
            return self.shift_var(p_var(i, r, slot), Fraction(m))
        return self.scale_var(wh_var(i, r, slot), ((V, m),))

    # -- structure in one variable

    def degree_in(self, v: Var) -> int:
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.num.degree(v) - sum(
            a.degree(v) * m for a, m in self.den.items()
        )

    def has_var(self, v: Var) -> bool:
        if any(v == vv for vv in self.num.variables()):
            return True
        return any(v in a.poly.variables() for a in self.den)

    def limit_leading(self, v: Var) -> "RatFun":
        """Limit as v -> infinity.  Degrees equal: ratio of leading
        coefficients; numerator smaller: 0; larger: DivergesAtInfinity."""
        if self.is_zero():
            return _R_ZERO
        dn = self.num.degree(v)
        dd = sum(a.degree(v) * m for a, m in self.den.items())
        if dn < dd:
            return _R_ZERO
        if dn > dd:
            raise DivergesAtInfinity(f"degree {dn} > {dd} in {v}")
        lead = RatFun.from_poly(self.num.coeff_of(v, dn))
        for a, m in self.den.items():
            d = a.degree(v)
            if d:
                lead = lead * RatFun.from_poly(a.poly.coeff_of(v, d)).invert() ** m
            else:
                lead = lead * RatFun(_P_ONE, {a: m})
        return lead

    def poly_coeffs(self, v: Var) -> Dict[int, "RatFun"]:
        """Decompose by powers of v; requires a v-free denominator."""
        if any(a.degree(v) or a.poly.min_exp(v) for a in self.den):
            raise ValueError(f"denominator involves {v}")
        return {
            k: RatFun._make(c, dict(self.den))
            for k, c in self.num.decompose(v).items()
        }

    # -- series

    def series(self, direction: str, order: int) -> "TruncSeries":
        """Expand in t = 1/z ('z_inf') or t = z ('z_zero') with RatFun
        coefficients, exact through t^(val + order - 1)."""
        from .series import TruncSeries

        if direction not in ("z_inf", "z_zero"):
            raise ValueError(direction)
        at_inf = direction == "z_inf"
        if self.is_zero():
            return TruncSeries({}, None, _R_ZERO)

        def poly_series(p: Poly) -> TruncSeries:
            coeffs = {}
            for k, c in p.decompose(Z).items():
                t = -k if at_inf else k
                coeffs[t] = RatFun.from_poly(c)
            return TruncSeries(coeffs, None, _R_ZERO)

        num_s = poly_series(self.num)
        factors = []
        val_total = num_s.val() if num_s.coeffs else 0
        for a, m in self.den.items():
            s = poly_series(a.poly)
            factors.append((s, m))
            val_total -= s.val() * m
        hi = val_total + order - 1
        out = num_s
        for s, m in factors:
            inv = _series_invert_ratfun(s, hi + abs(s.val()) * m + order)
            for _ in range(m):
                out = out * inv
        return out.truncate(hi)

    def eps_series(self, order: int, lmap=None) -> "TruncSeries":
        """Exponential degeneration: substitute every trig variable u by
        exp(eps * l(u)) with l the default linear map (z -> z, x -> x,
        v -> 1/2, wh[t,i,r] -> (p[t,i,r] - i/2)/2, w -> w) and expand as a
        Laurent series in eps with rational-mode RatFun coefficients."""
        from .series import TruncSeries

        if self.is_zero():
            return TruncSeries({}, None, _R_ZERO)
        lm = lmap or default_eps_linear_map
        # atom series have valuation 0 or 1, so a fixed pad of 6 leaves
        # every intermediate window at least `order`; coeff() would raise
        # if a window ever fell short
        hi = order
        out = _eps_poly_series(self.num, hi + 4, lm)
        for a, m in self.den.items():
            s = _eps_poly_series(a.poly, hi + 6, lm)
            inv = _series_invert_ratfun(s, hi + 4)
            for _ in range(m):
                out = out * inv
        return out.truncate(hi)

    def __repr__(self):
        from .textio import render_ratfun

        return f"RatFun({render_ratfun(self)})"


_R_ZERO = RatFun(_P_ZERO, {})
_R_ONE = RatFun(_P_ONE, {})


def as_ratfun(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, Poly):
        return RatFun.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFun.const(x)
    raise TypeError(f"cannot coerce {type(x)!r} to RatFun")


def _invert_unit(unit: Poly) -> Poly:
    """Invert scalar * Laurent monomial in unit variables."""
    if len(unit.terms) != 1:
        raise ValueError("not a unit")
    (m, c), = unit.terms.items()
    if any(not is_unit_var(v) for v, _ in m):
        raise ValueError("not a unit monomial")
    return Poly.monomial(mono_pow(m, -1), Q1 / c)


def _series_invert_ratfun(s, order):
    return s.inverse(order, lambda c: c.invert())


def series_expand(f: RatFun, direction: str, order: int) -> "TruncSeries":
    """Documented expansion surface: direction is 'z_inf' (powers of 1/z),
    'z_zero' (powers of z), or 'eps' (exponential degeneration)."""
    if direction == "eps":
        return f.eps_series(order)
    return f.series(direction, order)


_PROB_RNG = random.Random


def equals_probabilistic(a: RatFun, b: RatFun, trials: int = 4,
                         seed: int = 0xA5A5, bound: int = 10 ** 9) -> bool:
    """Randomized equality: evaluate both sides at uniform rational points.

    By the degree-counting (Schwartz-Zippel) bound, a nonzero difference of
    total degree d vanishes at a uniform point of S^k with probability at
    most d/|S|; with |S| = 2*bound and `trials` independent points the
    false-positive probability is at most (d/(2*bound))^trials.  Never used
    on acceptance paths; the exact cross-multiplied identity is the default.
    """
    diff = a - as_ratfun(b)
    if diff.is_zero():
        return True
    rng = _PROB_RNG(seed)
    variables = sorted(diff.num.variables())
    for atom in diff.den:
        variables = sorted(set(variables) | atom.poly.variables())
    for _ in range(trials):
        for _retry in range(32):
            point = {
                v: Fraction(rng.randint(-bound, bound), rng.randint(1, 997))
                for v in variables
            }
            try:
                den_val = Q1
                for atom, m in diff.den.items():
                    val = atom.poly.evaluate(point)
                    if not val:
                        raise ZeroDivisionError
                    den_val *= val ** m
                num_val = diff.num.evaluate(point)
                break
            except ZeroDivisionError:
                continue
        else:
            raise PoleAtExpansionPoint("could not avoid the denominator locus")
        if num_val:
            return False
    return True


# ---------------------------------------------------------------------------
# eps degeneration support


def default_eps_linear_map(v: Var) -> Poly:
    """Linear form l with  u -> exp(eps * l(u))  under degeneration."""
    kind = v[0]
    if kind == "z":
        return Poly.variable(Z)
    if kind == "w":
        return Poly.variable(W)
    if kind == "x":
        return Poly.variable(v)
    if kind == "v":
        return Poly.const(Fraction(1, 2))
    if kind == "wh":
        _, slot, i, r = v
        return (Poly.variable(p_var(i, r, slot)) - Poly.const(Fraction(i, 2))) * Fraction(1, 2)
    raise ValueError(f"variable {v} has no degeneration rule")


def _eps_poly_series(p: Poly, hi: int, lm) -> "TruncSeries":
    from .series import TruncSeries

    coeffs: Dict[int, RatFun] = {}
    for m, c in p.terms.items():
        ell = _P_ZERO
        for v, e in m:
            ell = ell + lm(v) * e
        # c * exp(eps * ell) truncated
        term = Poly.const(c)
        fact = Q1
        power = _P_ONE
        for k in range(0, max(hi, 0) + 1):
            if k:
                power = power * ell
                fact = fact * k
            add = term * power * (Q1 / fact)
            cur = coeffs.get(k, _R_ZERO) + RatFun.from_poly(add)
            if cur.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = cur
    return TruncSeries(coeffs, hi, _R_ZERO)


# ---------------------------------------------------------------------------
# numerator factorization (for invert)

_FACTOR_RNG_SEED = 0x5EED


def factor_atoms(p: Poly) -> Tuple[Poly, Dict[Atom, int]]:
    """Write p = unit * prod atoms^mult or raise NotAtomFactorable.

    Complete for rational-mode numerators that are products of linear
    forms (rational root extraction plus gradient reconstruction); for
    trig numerators it covers monomials, single atoms and products
    separable by leading-coefficient peeling.
    """
    if p.is_zero():
        raise ZeroDivisionError("factoring zero")
    unit, atoms, residual = _peel_content(p)
    if residual.is_const():
        return unit * residual, atoms
    _factor_residual(residual, unit_box := [unit], atoms)
    return unit_box[0], atoms


def _factor_residual(p: Poly, unit_box: List[Poly], atoms: Dict[Atom, int]) -> None:
    if p.is_const():
        unit_box[0] = unit_box[0] * p
        return
    unit, catoms, p = _peel_content(p)
    unit_box[0] = unit_box[0] * unit
    for a, m in catoms.items():
        atoms[a] = atoms.get(a, 0) + m
    if p.is_const():
        unit_box[0] = unit_box[0] * p
        return
    if _is_atom_shape(p):
        atom, cofactor = _canonical_atom(p)
        atoms[atom] = atoms.get(atom, 0) + 1
        unit_box[0] = unit_box[0] * cofactor
        return
    variables = sorted(p.variables())
    v = variables[-1]
    d = p.degree(v)
    if d == 0:
        # Laurent-only variable or degenerate; cannot continue generically
        raise NotAtomFactorable(f"cannot factor {p!r}")
    lead = p.coeff_of(v, d)
    if not lead.is_const():
        q = poly_div_exact(p, lead)
        if q is None:
            raise NotAtomFactorable(f"cannot factor {p!r}")
        _factor_residual(lead, unit_box, atoms)
        _factor_residual(q, unit_box, atoms)
        return
    # all factors involve v, with scalar v-leading coefficients
    rest = [u for u in variables if u != v]
    if not any(not is_unit_var(u) for u in rest) and len(p.decompose(v)) <= 2:
        # two-term Laurent combo missed by shape test (multiplicity > 2 forms)
        pass
    rng = random.Random(_FACTOR_RNG_SEED ^ hash(_atom_key(p)))
    for _attempt in range(8):
        point = {u: Fraction(rng.randint(2, 97)) for u in rest}
        uni = {k: c.evaluate(point) for k, c in p.decompose(v).items()}
        roots = _rational_roots(uni)
        if roots is None:
            continue
        dv = p.partial(v)
        progressed = False
        for rho in roots:
            point_v = dict(point)
            point_v[v] = rho
            dvv = dv.evaluate(point_v)
            if not dvv:
                continue  # multiple root; another attempt or derivative path
            cand = Poly.variable(v) - Poly.const(rho)
            for u in rest:
                cu = p.partial(u).evaluate(point_v) / dvv
                if cu:
                    cand = cand + Poly.variable(u) * cu - Poly.const(cu * point[u])
            q = poly_div_exact(p, cand)
            if q is not None:
                atom, cofactor = _canonical_atom(cand)
                atoms[atom] = atoms.get(atom, 0) + 1
                unit_box[0] = unit_box[0] * cofactor
                _factor_residual(q, unit_box, atoms)
                return
        if not progressed and roots is not None and len(roots) == 0:
            break
    # repeated-factor fallback: factors of dp/dv are factors of p when all
    # roots were multiple
    dv = p.partial(v)
    if not dv.is_zero() and dv.total_degree() >= 1:
        try:
            _, datoms = factor_atoms(dv)
        except NotAtomFactorable:
            datoms = {}
        for a in datoms:
            q = poly_div_exact(p, a.poly)
            if q is not None:
                atoms[a] = atoms.get(a, 0) + 1
                _factor_residual(q, unit_box, atoms)
                return
    raise NotAtomFactorable(f"cannot factor {p!r}")


def _rational_roots(uni: Dict[int, Fraction]) -> Optional[List[Fraction]]:
    """All rational roots (with repetition collapsed) of sum c_k v^k."""
    if not uni:
        return None
    lo = min(uni)
    if lo:
        uni = {k - lo: c for k, c in uni.items()}
    deg = max(uni)
    if deg == 0:
        return []
    denom_lcm = 1
    for c in uni.values():
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = {k: int(c * denom_lcm) for k, c in uni.items()}
    a0 = ints.get(0, 0)
    ad = ints[deg]
    if a0 == 0:
        roots = _rational_roots({k - 1: Fraction(c) for k, c in ints.items() if k})
        return ([Fraction(0)] + roots) if roots is not None else None
    cands = set()
    for pn in _divisors(abs(a0)):
        for qd in _divisors(abs(ad)):
            cands.add(Fraction(pn, qd))
            cands.add(Fraction(-pn, qd))
    out = []
    for rho in cands:
        val = Q0
        for k, c in ints.items():
            val += c * rho ** k
        if val == 0:
            out.append(rho)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n and i <= 100000:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))
