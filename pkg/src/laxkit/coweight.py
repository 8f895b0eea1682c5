"""Coweights, pseudo Young diagrams, and divisors on the projective line.

A coweight is stored in the epsilon basis (d_1, ..., d_n).  The
fundamental basis (indexed 0..n-1) relates by d_j = -(c_0 + ... +
c_{j-1}); dominance means d_1 >= ... >= d_n, i.e. c_i >= 0 for i >= 1
with c_0 unconstrained.

A divisor is a formal sum of fundamental coweights at finite points plus
framing coefficients at infinity (and at zero in trig mode).  Finite
summands are (point, index, sign) with sign -1 allowed only for index 0.
Admissibility solves  total = sum a_i alpha_i  in non-negative integers;
the a-vector sizes the slot rows of the difference-operator algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .algebra import AlgebraSignature
from .errors import BadDiagram, NotAdmissible, SizeMismatch

Point = Union[str, Fraction]


@dataclass(frozen=True)
class Coweight:
    d: Tuple[int, ...]

    @staticmethod
    def zero(n: int) -> "Coweight":
        return Coweight((0,) * n)

    @staticmethod
    def from_epsilon(d: Sequence[int]) -> "Coweight":
        return Coweight(tuple(int(x) for x in d))

    @staticmethod
    def from_fundamental(c: Sequence[int]) -> "Coweight":
        # d_j = -(c_0 + ... + c_{j-1})
        d = []
        run = 0
        for cj in c:
            run += int(cj)
            d.append(-run)
        return Coweight(tuple(d))

    def to_fundamental(self) -> Tuple[int, ...]:
        n = len(self.d)
        c = [-self.d[0]]
        for i in range(1, n):
            c.append(self.d[i - 1] - self.d[i])
        return tuple(c)

    @property
    def n(self) -> int:
        return len(self.d)

    def is_dominant(self) -> bool:
        return all(self.d[i] >= self.d[i + 1] for i in range(len(self.d) - 1))

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.d, other.d)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a - b for a, b in zip(self.d, other.d)))

    def __mul__(self, k: int) -> "Coweight":
        return Coweight(tuple(a * k for a in self.d))

    __rmul__ = __mul__

    def __neg__(self) -> "Coweight":
        return self * (-1)


def fundamental_coweight(n: int, i: int) -> Coweight:
    """The i-th fundamental coweight, 0 <= i < n (index 0 is the
    determinant direction: all entries -1)."""
    if not 0 <= i < n:
        raise ValueError(f"fundamental index {i} out of range")
    return Coweight(tuple(0 if j < i else -1 for j in range(n)))


def simple_coroot(n: int, i: int) -> Coweight:
    """alpha_i = epsilon_i - epsilon_{i+1}, 1 <= i <= n-1."""
    if not 1 <= i < n:
        raise ValueError(f"coroot index {i} out of range")
    return Coweight(tuple(1 if j == i - 1 else -1 if j == i else 0 for j in range(n)))


def convert_basis(vec: Sequence[int], n: int, to: str) -> Tuple[int, ...]:
    """Exact change of basis for coweights.

    to='epsilon': input is fundamental coefficients (c_0..c_{n-1});
    to='fundamental': input is epsilon coefficients (d_1..d_n).
    """
    if to == "epsilon":
        return Coweight.from_fundamental(list(vec)).d
    if to == "fundamental":
        return Coweight.from_epsilon(list(vec)).to_fundamental()
    raise ValueError(f"unknown basis {to!r}")


@dataclass(frozen=True)
class PseudoYoungDiagram:
    """Weakly decreasing integer rows; encodes a dominant coweight."""

    rows: Tuple[int, ...]

    def __post_init__(self):
        if any(self.rows[i] < self.rows[i + 1] for i in range(len(self.rows) - 1)):
            raise BadDiagram(f"rows not weakly decreasing: {self.rows}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def size(self) -> int:
        return sum(self.rows)

    def coweight(self) -> Coweight:
        # lambda = -sum rows[n-i] eps_i  (1-based i)
        n = self.n
        return Coweight(tuple(-self.rows[n - i] for i in range(1, n + 1)))

    def is_young(self) -> bool:
        return all(r >= 0 for r in self.rows)

    def transpose(self) -> Tuple[int, ...]:
        """Column heights (requires a genuine Young diagram)."""
        if not self.is_young():
            raise BadDiagram("transpose needs non-negative rows")
        width = self.rows[0] if self.rows else 0
        return tuple(
            sum(1 for r in self.rows if r >= c + 1) for c in range(width)
        )


@dataclass(frozen=True)
class Summand:
    point: Point
    index: int  # 0 <= index < n
    sign: int  # +1, or -1 only when index == 0

    def coweight(self, n: int) -> Coweight:
        return self.sign * fundamental_coweight(n, self.index)


@dataclass(frozen=True)
class Divisor:
    """Admissible divisor: finite summands + framing coweights."""

    n: int
    mode: str
    summands: Tuple[Summand, ...]
    mu: Coweight  # coefficient at infinity
    mu_zero: Optional[Coweight] = None  # trig only

    def __post_init__(self):
        if self.mode not in ("rational", "trig"):
            raise ValueError(f"bad mode {self.mode!r}")
        if self.mode == "trig" and self.mu_zero is None:
            object.__setattr__(self, "mu_zero", Coweight.zero(self.n))
        if self.mode == "rational" and self.mu_zero is not None:
            raise ValueError("rational divisors have no coefficient at zero")
        for s in self.summands:
            if not 0 <= s.index < self.n:
                raise NotAdmissible(f"fundamental index {s.index} out of range")
            if s.sign not in (1, -1) or (s.sign == -1 and s.index != 0):
                raise NotAdmissible("sign -1 is only allowed on index-0 summands")
            if self.mode == "trig" and isinstance(s.point, Fraction) and s.point == 0:
                raise NotAdmissible("trig points must be nonzero")
        self.a_vector()  # reject inadmissible data at construction

    @staticmethod
    def make(n: int, mode: str, points: Sequence[Tuple[Point, Coweight]],
             mu: Coweight, mu_zero: Optional[Coweight] = None) -> "Divisor":
        """Build from per-point dominant coweights, decomposed into
        fundamental summands."""
        summands: List[Summand] = []
        for pt, cw in points:
            if isinstance(pt, (int,)):
                pt = Fraction(pt)
            c = cw.to_fundamental()
            if any(ci < 0 for ci in c[1:]):
                raise NotAdmissible(f"non-dominant coefficient at {pt}: {c}")
            for i in range(1, n):
                summands.extend([Summand(pt, i, 1)] * c[i])
            sgn = 1 if c[0] >= 0 else -1
            summands.extend([Summand(pt, 0, sgn)] * abs(c[0]))
        return Divisor(n, mode, tuple(summands), mu, mu_zero)

    def total_finite(self) -> Coweight:
        out = Coweight.zero(self.n)
        for s in self.summands:
            out = out + s.coweight(self.n)
        return out

    def a_vector(self) -> Tuple[int, ...]:
        total = self.total_finite() + self.mu
        if self.mu_zero is not None:
            total = total + self.mu_zero
        partial = 0
        out = []
        for j in range(self.n):
            partial += total.d[j]
            out.append(partial)
        if out and out[-1] != 0:
            raise NotAdmissible(
                f"coefficient sum is not in the coroot lattice: {total.d}"
            )
        a = tuple(out[:-1])
        if any(x < 0 for x in a):
            raise NotAdmissible(f"negative slot count in {a}")
        return a

    def signature(self) -> AlgebraSignature:
        labels = []
        for s in self.summands:
            lbl = s.point if isinstance(s.point, str) else str(s.point)
            if lbl not in labels:
                labels.append(lbl)
        return AlgebraSignature(self.n, self.mode, (self.a_vector(),), tuple(labels))

    def points_with(self, index: int) -> List[Tuple[Point, int]]:
        """(point, sign) of all summands carrying the given fundamental index."""
        return [(s.point, s.sign) for s in self.summands if s.index == index]

    def last_point(self) -> Summand:
        """The limit machinery consumes points in reverse construction order."""
        if not self.summands:
            raise ValueError("no finite points to remove")
        return self.summands[-1]

    def move_last_point_to_infinity(self) -> "Divisor":
        last = self.last_point()
        mu = self.mu + last.sign * fundamental_coweight(self.n, last.index)
        return Divisor(self.n, self.mode, self.summands[:-1], mu, self.mu_zero)

    def move_last_point_to_zero(self) -> "Divisor":
        if self.mode != "trig":
            raise ValueError("only trig divisors have a coefficient at zero")
        last = self.last_point()
        mz = self.mu_zero + last.sign * fundamental_coweight(self.n, last.index)
        return Divisor(self.n, self.mode, self.summands[:-1], self.mu, mz)

    def merge_framings_at_infinity(self) -> "Divisor":
        """Trig -> rational bookkeeping: same finite part, mu+ + mu- at
        infinity."""
        return Divisor(
            self.n, "rational", self.summands, self.mu + self.mu_zero, None
        )

    # -- JSON wire format

    def to_json(self) -> dict:
        pts = {}
        order = []
        for s in self.summands:
            key = s.point if isinstance(s.point, str) else str(s.point)
            if key not in pts:
                pts[key] = [0] * self.n
                order.append(key)
            pts[key][s.index] += s.sign
        return {
            "n": self.n,
            "mode": self.mode,
            "points": [
                {"x": key, "coweight": {"fundamental": pts[key]}} for key in order
            ],
            "infinity": {"fundamental": list(self.mu.to_fundamental())},
            "zero": (
                {"fundamental": list(self.mu_zero.to_fundamental())}
                if self.mode == "trig"
                else None
            ),
        }

    @staticmethod
    def from_json(data: dict) -> "Divisor":
        n = int(data["n"])
        mode = data["mode"]
        points = []
        for p in data.get("points", []):
            x = p["x"]
            if isinstance(x, (int, float)) or (
                isinstance(x, str) and _looks_numeric(x)
            ):
                x = Fraction(x)
            points.append(
                (x, Coweight.from_fundamental(p["coweight"]["fundamental"]))
            )
        mu = Coweight.from_fundamental(data["infinity"]["fundamental"])
        mu_zero = None
        if data.get("zero") is not None:
            mu_zero = Coweight.from_fundamental(data["zero"]["fundamental"])
        return Divisor.make(n, mode, points, mu, mu_zero)

    @staticmethod
    def load(path: str) -> "Divisor":
        with open(path, "r", encoding="utf-8") as fh:
            return Divisor.from_json(json.load(fh))


def _looks_numeric(s: str) -> bool:
    try:
        Fraction(s)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def divisor_from_young(
    blambda: PseudoYoungDiagram,
    points: Sequence[Point],
    bmu: PseudoYoungDiagram,
    bmu_minus: Optional[PseudoYoungDiagram] = None,
    mode: str = "rational",
) -> Divisor:
    """Encode (Young diagram, points, pseudo diagram(s)) as a divisor:
    column i of blambda contributes its fundamental coweight at points[i],
    bmu sits at infinity (and bmu_minus at zero in trig mode)."""
    n = blambda.n
    if bmu.n != n or (bmu_minus is not None and bmu_minus.n != n):
        raise SizeMismatch("diagram ranks differ")
    if not blambda.is_young():
        raise BadDiagram("first diagram must have non-negative rows")
    total = blambda.size() + bmu.size() + (bmu_minus.size() if bmu_minus else 0)
    if total != 0:
        raise SizeMismatch(f"total size {total} != 0")
    heights = blambda.transpose()
    if len(points) != len(heights):
        raise SizeMismatch(
            f"{len(heights)} columns but {len(points)} points"
        )
    pt_pairs = []
    for pt, h in zip(points, heights):
        if isinstance(pt, int):
            pt = Fraction(pt)
        pt_pairs.append((pt, fundamental_coweight(n, n - h)))
    mu_zero = bmu_minus.coweight() if bmu_minus is not None else None
    if mode == "trig" and mu_zero is None:
        mu_zero = Coweight.zero(n)
    return Divisor.make(n, mode, pt_pairs, bmu.coweight(), mu_zero)
