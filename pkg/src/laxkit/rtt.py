"""R-matrices, Yang-Baxter checks, the exchange-relation verifier,
coproducts, and truncated-series Gauss decomposition.

Scalar n^2 x n^2 matrices are kept sparse as {row: {col: RatFun}}.  The
exchange check R T1(z) T2(w) = T2(w) T1(z) R is exact: both sides are
matrices of difference-operator elements whose coefficients are rational
in the two spectral parameters, and the difference is tested entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraElement, AlgebraSignature, embed, mat_map
from .coweight import Divisor
from .errors import SignatureMismatch, SingularLeadingMode
from .lax_rational import fuse
from .ratfun import RatFun, V, W, Z, x_var
from .series import TruncSeries

Sparse = Dict[int, Dict[int, object]]


# ---------------------------------------------------------------------------
# sparse scalar matrices


def _sp_set(m: Sparse, r: int, c: int, val) -> None:
    if val.is_zero() if hasattr(val, "is_zero") else not val:
        return
    m.setdefault(r, {})[c] = val


def _sp_add(m: Sparse, r: int, c: int, val) -> None:
    row = m.setdefault(r, {})
    cur = row.get(c)
    new = val if cur is None else cur + val
    if new.is_zero() if hasattr(new, "is_zero") else not new:
        row.pop(c, None)
    else:
        row[c] = new


def sp_mul(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for r, row in a.items():
        for k, av in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for c, bv in brow.items():
                _sp_add(out, r, c, av * bv)
    return out


def sp_sub(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {r: dict(row) for r, row in a.items()}
    for r, row in b.items():
        for c, v in row.items():
            _sp_add(out, r, c, -v)
    return {r: row for r, row in out.items() if row}


def sp_nonzero(a: Sparse):
    for r, row in a.items():
        for c, v in row.items():
            yield r, c, v


# ---------------------------------------------------------------------------
# R-matrices


def r_rational(n: int, z_arg: RatFun) -> Sparse:
    """(z - w) Id + P on the tensor square, evaluated at z_arg."""
    out: Sparse = {}
    for i in range(n):
        for a in range(n):
            row = i * n + a
            _sp_add(out, row, row, z_arg)
            _sp_add(out, i * n + a, a * n + i, RatFun.one())
    return out


def r_trig(n: int, z_arg: RatFun, w_arg: RatFun) -> Sparse:
    v = RatFun.variable(V)
    v_inv = RatFun.variable(V, -1)
    out: Sparse = {}
    for i in range(n):
        _sp_add(out, i * n + i, i * n + i, v * z_arg - v_inv * w_arg)
    for i in range(n):
        for j in range(n):
            if i != j:
                r = i * n + j
                _sp_add(out, r, r, z_arg - w_arg)
    coeff = v - v_inv
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            # E_ij (x) E_ji has the single entry (row (i,j), col (j,i))
            val = coeff * (z_arg if i < j else w_arg)
            _sp_add(out, i * n + j, j * n + i, val)
    return out


def r_finite(n: int) -> Sparse:
    v_inv = RatFun.variable(V, -1)
    v = RatFun.variable(V)
    out: Sparse = {}
    for i in range(n):
        _sp_add(out, i * n + i, i * n + i, v_inv)
    for i in range(n):
        for j in range(n):
            if i != j:
                _sp_add(out, i * n + j, i * n + j, RatFun.one())
    for i in range(n):
        for j in range(n):
            if i > j:
                _sp_add(out, i * n + j, j * n + i, v_inv - v)
    return out


def _leg_lift(r: Sparse, n: int, legs: Tuple[int, int]) -> Sparse:
    """Promote a two-leg R-matrix to three tensor legs."""
    out: Sparse = {}
    la, lb = legs
    free = next(k for k in range(3) if k not in legs)
    for rr, row in r.items():
        i, a = divmod(rr, n)
        for cc, val in row.items():
            j, b = divmod(cc, n)
            for f in range(n):
                idx_r = [0, 0, 0]
                idx_c = [0, 0, 0]
                idx_r[la], idx_r[lb], idx_r[free] = i, a, f
                idx_c[la], idx_c[lb], idx_c[free] = j, b, f
                r3 = (idx_r[0] * n + idx_r[1]) * n + idx_r[2]
                c3 = (idx_c[0] * n + idx_c[1]) * n + idx_c[2]
                _sp_add(out, r3, c3, val)
    return out


def check_yang_baxter(variant: str, n: int) -> bool:
    """Exact triple-product identity on the tensor cube."""
    u1 = RatFun.variable(x_var("u1"))
    u2 = RatFun.variable(x_var("u2"))
    u3 = RatFun.variable(x_var("u3"))
    if variant == "rational":
        # additive arguments u, u + v, v
        r12 = r_rational(n, u1)
        r13 = r_rational(n, u1 + u2)
        r23 = r_rational(n, u2)
    elif variant == "trig":
        r12 = r_trig(n, u1, u2)
        r13 = r_trig(n, u1, u3)
        r23 = r_trig(n, u2, u3)
    elif variant == "finite":
        r12 = r23 = r13 = r_finite(n)
    else:
        raise ValueError(variant)
    a = _leg_lift(r12, n, (0, 1))
    b = _leg_lift(r13, n, (0, 2))
    c = _leg_lift(r23, n, (1, 2))
    lhs = sp_mul(sp_mul(a, b), c)
    rhs = sp_mul(sp_mul(c, b), a)
    return not sp_sub(lhs, rhs)


# ---------------------------------------------------------------------------
# RTT verification


@dataclass
class RttReport:
    ok: bool
    failures: List[Tuple[int, int]] = field(default_factory=list)
    n: int = 0
    probabilistic: bool = False

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "n": self.n,
            "failures": self.failures,
            "probabilistic": self.probabilistic,
        }


def _t_leg(mat, n: int, sig: AlgebraSignature, leg: int) -> Sparse:
    """T acting on tensor leg 1 or 2 of the square."""
    out: Sparse = {}
    for i in range(n):
        for j in range(n):
            e = mat[i][j]
            if e.is_zero():
                continue
            for a in range(n):
                if leg == 1:
                    _sp_set(out, i * n + a, j * n + a, e)
                else:
                    _sp_set(out, a * n + i, a * n + j, e)
    return out


def verify_rtt(T, second=None, probabilistic: bool = False) -> RttReport:
    """Check of R T1(z) T2(w) = T2(w) T1(z) R, exact by default.

    `second` defaults to the same matrix; a different matrix over the same
    signature checks the mixed exchange relation.  With `probabilistic`
    the difference is tested by random rational evaluation (for
    exploratory large instances only; the report is labeled)."""
    sig = T.signature
    n = T.n
    other = second if second is not None else T
    if other.signature != sig:
        raise SignatureMismatch("mixed RTT needs a common signature")
    lift = lambda f: AlgebraElement.from_ratfun(sig, f)
    t1 = _t_leg(T.entries, n, sig, 1)
    t2_entries = mat_map(other.entries, lambda e: e.rename_spectral(Z, W))
    t2 = _t_leg(t2_entries, n, sig, 2)
    zw = RatFun.variable(Z)
    wv = RatFun.variable(W)
    if sig.mode == "rational":
        r = r_rational(n, zw - wv)
    else:
        r = r_trig(n, zw, wv)
    r = {rr: {c: lift(v) for c, v in row.items()} for rr, row in r.items()}
    lhs = sp_mul(sp_mul(r, t1), t2)
    rhs = sp_mul(sp_mul(t2, t1), r)
    diff = sp_sub(lhs, rhs)
    if probabilistic:
        from .ratfun import equals_probabilistic

        failures = sorted(
            {
                (rr, c)
                for rr, c, e in sp_nonzero(diff)
                if any(
                    not equals_probabilistic(coeff, RatFun.zero())
                    for coeff in e.terms.values()
                )
            }
        )
    else:
        failures = sorted({(rr, c) for rr, c, _ in sp_nonzero(diff)})
    return RttReport(
        ok=not failures, failures=failures, n=n, probabilistic=probabilistic
    )


def verify_finite_rtt(t_plus, t_minus, sig: AlgebraSignature) -> RttReport:
    """The three z-independent exchange relations of the split pair."""
    n = len(t_plus)
    lift = lambda f: AlgebraElement.from_ratfun(sig, f)
    r = {
        rr: {c: lift(v) for c, v in row.items()}
        for rr, row in r_finite(n).items()
    }
    failures = []
    for left, right in (
        (t_plus, t_plus),
        (t_minus, t_minus),
        (t_minus, t_plus),
    ):
        l1 = _t_leg(left, n, sig, 1)
        r2 = _t_leg(right, n, sig, 2)
        lhs = sp_mul(sp_mul(r, l1), r2)
        rhs = sp_mul(sp_mul(r2, l1), r)
        diff = sp_sub(lhs, rhs)
        failures.extend(sorted({(rr, c) for rr, c, _ in sp_nonzero(diff)}))
    return RttReport(ok=not failures, failures=failures, n=n)


# ---------------------------------------------------------------------------
# coproduct


def coproduct(T1, T2):
    """Delta(T) = T (x) T: the fused matrix over the tensor algebra."""
    return fuse(T1, T2)


# ---------------------------------------------------------------------------
# series Gauss decomposition


def element_z_series(elem: AlgebraElement, hi: int) -> TruncSeries:
    """Expand in t = 1/z with AlgebraElement coefficients, exact to t^hi."""
    sig = elem.signature
    zero = AlgebraElement.zero(sig)
    total = TruncSeries({}, hi, zero)
    for shift, coeff in elem.terms.items():
        probe = coeff.series("z_inf", 1)
        v = probe.val()
        if v is None:
            continue
        s = coeff.series("z_inf", hi - v + 1)
        term = TruncSeries(
            {
                k: AlgebraElement(sig, {shift: c})
                for k, c in s.coeffs.items()
            },
            s.hi,
            zero,
        )
        total = total + term
    return total


def series_gauss_decompose(entries, order: int):
    """LDU factorization of a matrix of z^{-1}-series, order by order.

    entries: square matrix of TruncSeries (t = 1/z) with AlgebraElement
    coefficients; leading diagonal modes must be invertible single terms.
    Returns (F, G, E) with F, E unitriangular and G the diagonal list.
    """
    n = len(entries)
    zero = entries[0][0].zero
    sig = zero.signature
    one_series = lambda: TruncSeries({0: AlgebraElement.one(sig)}, None, zero)
    zero_series = lambda: TruncSeries({}, None, zero)
    S = [[entries[i][j] for j in range(n)] for i in range(n)]
    span = max(
        (abs(e.val()) for row in entries for e in row if e.val() is not None),
        default=0,
    )
    F = [[one_series() if i == j else zero_series() for j in range(n)] for i in range(n)]
    E = [[one_series() if i == j else zero_series() for j in range(n)] for i in range(n)]
    G: List[TruncSeries] = []
    for k in range(n):
        g = S[k][k]
        if g.val() is None:
            raise SingularLeadingMode(f"diagonal {k + 1} vanishes to working order")
        G.append(g)
        try:
            # padded so products with entries of valuation >= -span stay
            # exact through the requested order
            g_inv = g.inverse(order + span, lambda c: c.invert_single_term())
        except Exception as exc:  # leading mode not a unit
            raise SingularLeadingMode(str(exc)) from exc
        cap = order + span
        for b in range(k + 1, n):
            E[k][b] = (g_inv * S[k][b]).truncate(cap)
        for a in range(k + 1, n):
            F[a][k] = (S[a][k] * g_inv).truncate(cap)
        for a in range(k + 1, n):
            for b in range(k + 1, n):
                S[a][b] = (S[a][b] - F[a][k] * g * E[k][b]).truncate(cap)
    return F, G, E


def recompose_gauss(F, G, E, order: int):
    """FGE product for round-trip testing."""
    n = len(G)
    zero = G[0].zero
    out = [[TruncSeries({}, order, zero) for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = TruncSeries({}, order, zero)
            for k in range(min(a, b) + 1):
                acc = acc + (F[a][k] * G[k] * E[k][b]).truncate(order)
            out[a][b] = acc
    return out


# ---------------------------------------------------------------------------
# coproduct on current-algebra generators


@dataclass
class GeneratorCheck:
    name: str
    ok: bool


@dataclass
class CoproductReport:
    checks: List[GeneratorCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]


def _gauss_mode(series_mat, i: int, j: int, r: int):
    return series_mat[i - 1][j - 1].coeff(r)


def _nested_e_bracket(e_ones: List[AlgebraElement], a: int, b: int) -> AlgebraElement:
    """E^(1) attached to the root spanning rows a..b-1:
    [E_{b-1}, [..., [E_{a+1}, E_a] ...]]."""
    out = e_ones[a - 1]
    for k in range(a + 1, b):
        out = e_ones[k - 1].commutator(out)
    return out


def _nested_f_bracket(f_ones: List[AlgebraElement], a: int, b: int) -> AlgebraElement:
    """[[ ... [F_a, F_{a+1}], ... ], F_{b-1}]."""
    out = f_ones[a - 1]
    for k in range(a + 1, b):
        out = out.commutator(f_ones[k - 1])
    return out


def verify_coproduct_generators(div1: Divisor, div2: Divisor,
                                order: Optional[int] = None) -> CoproductReport:
    """Check the finite list of coproduct formulas on the images of the
    low current-algebra modes, through the series Gauss decomposition of
    the fused matrix."""
    from .lax_rational import build_lax

    if div1.mode != "rational" or div2.mode != "rational":
        raise SignatureMismatch("generator-level checks run in rational mode")
    n = div1.n
    T1 = build_lax(div1)
    T2 = build_lax(div2)
    delta = fuse(T1, T2)
    sig = delta.signature
    d1 = div1.mu.d
    d2 = div2.mu.d
    d = [a + b for a, b in zip(d1, d2)]
    b1 = [d1[i] - d1[i + 1] for i in range(n - 1)]
    b2 = [d2[i] - d2[i + 1] for i in range(n - 1)]
    if order is None:
        order = max(4, 2 + max(abs(x) for x in d))
    work = order + 2 * max(abs(x) for x in d) + 2
    series = [[element_z_series(e, work) for e in row] for row in delta.entries]
    F, G, E = series_gauss_decompose(series, order)

    def f_mode(T, j, i, r, factor):
        ser = element_z_series(T.gauss.lower[j - 1][i - 1], r)
        return embed(ser.coeff(r), sig, factor)

    def e_mode(T, i, j, r, factor):
        ser = element_z_series(T.gauss.upper[i - 1][j - 1], r)
        return embed(ser.coeff(r), sig, factor)

    def g_mode(T, i, r, factor):
        ser = element_z_series(T.gauss.diag[i - 1], r)
        return embed(ser.coeff(r), sig, factor)

    checks: List[GeneratorCheck] = []

    def add(name, lhs, rhs):
        checks.append(GeneratorCheck(name, lhs.equals(rhs)))

    zero = AlgebraElement.zero(sig)
    for i in range(1, n):
        # F-side, slot 1 shift
        for r in range(1, b1[i - 1] + 1):
            add(
                f"F_{i}^({r}) passthrough",
                F[i][i - 1].coeff(r),
                f_mode(T1, i + 1, i, r, 1),
            )
        r = b1[i - 1] + 1
        add(
            f"F_{i}^({r}) mixing",
            F[i][i - 1].coeff(r),
            f_mode(T1, i + 1, i, r, 1) + f_mode(T2, i + 1, i, 1, 2),
        )
        # E-side, slot 2 shift
        for r in range(1, b2[i - 1] + 1):
            add(
                f"E_{i}^({r}) passthrough",
                E[i - 1][i].coeff(r),
                e_mode(T2, i, i + 1, r, 2),
            )
        r = b2[i - 1] + 1
        add(
            f"E_{i}^({r}) mixing",
            E[i - 1][i].coeff(r),
            e_mode(T2, i, i + 1, r, 2) + e_mode(T1, i, i + 1, 1, 1),
        )
    # D-side
    e1_first = [
        element_z_series(T1.gauss.upper[i - 1][i], 1).coeff(1) for i in range(1, n)
    ]
    f2_first = [
        element_z_series(T2.gauss.lower[i][i - 1], 1).coeff(1) for i in range(1, n)
    ]
    for i in range(1, n + 1):
        r1 = 1 - d[i - 1]
        lhs = G[i - 1].coeff(r1)
        rhs = g_mode(T1, i, 1 - d1[i - 1], 1) + g_mode(T2, i, 1 - d2[i - 1], 2)
        add(f"D_{i} first mode", lhs, rhs)
        r2 = 2 - d[i - 1]
        lhs = G[i - 1].coeff(r2)
        rhs = g_mode(T1, i, 2 - d1[i - 1], 1) + g_mode(T2, i, 2 - d2[i - 1], 2)
        rhs = rhs + g_mode(T1, i, 1 - d1[i - 1], 1) * g_mode(T2, i, 1 - d2[i - 1], 2)
        cross = zero
        for a in range(1, n):
            for b in range(a + 1, n + 1):
                eps = (1 if i == a else 0) - (1 if i == b else 0)
                if not eps:
                    continue
                e_br = embed(_nested_e_bracket(e1_first, a, b), sig, 1)
                f_br = embed(_nested_f_bracket(f2_first, a, b), sig, 2)
                cross = cross + e_br * f_br * eps
        add(f"D_{i} second mode", lhs, rhs + cross)
    return CoproductReport(checks)


def coproduct_mode_contract(delta, order: int = 4) -> bool:
    """Gauss-mode contract of the fused matrix: strictly negative z-modes
    for the unitriangular factors, leading diagonal mode z^{d_i} with
    coefficient one."""
    div = delta.divisor
    if div is None:
        raise ValueError("fused matrix lost its divisor")
    d = div.mu.d
    n = delta.n
    work = order + 2 * max(abs(x) for x in d) + 2
    series = [[element_z_series(e, work) for e in row] for row in delta.entries]
    F, G, E = series_gauss_decompose(series, order)
    sig = delta.signature
    one = AlgebraElement.one(sig)
    for i in range(n):
        if G[i].val() != -d[i]:
            return False
        if not G[i].coeff(-d[i]).equals(one):
            return False
        for j in range(n):
            if i == j:
                continue
            mat = E if i < j else F
            if not mat[i][j].is_zero_through(0):
                return False
    return True
