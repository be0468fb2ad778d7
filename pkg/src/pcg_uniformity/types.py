"""
Core data types for polynomial congruential generator analysis.

Digit order is least significant first everywhere. All exact quantities
(frequencies, deviations, discrepancies, box corners) are ints or
Fractions; floats only appear as renderings and in Weyl sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import FrozenSet, Optional, Tuple, Union

from .errors import ConfigurationError, DimensionError, UsageError


@dataclass(frozen=True)
class RingSpec:
    """The residue ring [m^n], i.e. integers modulo m^n."""
    m: int
    n: int

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 2:
            raise ConfigurationError(f"base m must be an integer >= 2, got {self.m!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ConfigurationError(f"digit count n must be an integer >= 1, got {self.n!r}")

    @cached_property
    def modulus(self) -> int:
        """m^n as an unbounded integer."""
        return self.m ** self.n

    def header(self) -> str:
        """The "m,n" header used in serialized output."""
        return f"{self.m},{self.n}"

    def with_n(self, n: int) -> "RingSpec":
        return RingSpec(self.m, n)


@dataclass(frozen=True)
class Residue:
    """
    An element of [m^n] stored as n base-m digits.

    Attributes:
        digits: length-n tuple, digits[0] is the least significant digit
        spec: the ring the residue lives in
    """
    digits: Tuple[int, ...]
    spec: RingSpec

    def __post_init__(self):
        if len(self.digits) != self.spec.n:
            raise UsageError(
                f"residue needs {self.spec.n} digits, got {len(self.digits)}"
            )
        m = self.spec.m
        for d in self.digits:
            if not 0 <= d < m:
                raise UsageError(f"digit {d} outside [0, {m})")

    @classmethod
    def from_int(cls, value: int, spec: RingSpec) -> "Residue":
        """Build a residue from an integer already in [m^n]."""
        if not 0 <= value < spec.modulus:
            raise UsageError(f"{value} is not in [0, {spec.modulus})")
        digits = []
        m = spec.m
        for _ in range(spec.n):
            value, d = divmod(value, m)
            digits.append(d)
        return cls(tuple(digits), spec)

    @cached_property
    def value(self) -> int:
        v = 0
        m = self.spec.m
        for d in reversed(self.digits):
            v = v * m + d
        return v

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class UnitPoint:
    """
    The normalized coordinate numerator / m^n in [0, 1).

    Kept as an exact pair; ``as_fraction`` and ``float`` are renderings.
    """
    numerator: int
    base: int
    exponent: int

    def __post_init__(self):
        if not 0 <= self.numerator < self.denominator:
            raise UsageError(
                f"numerator {self.numerator} outside [0, {self.denominator})"
            )

    @property
    def denominator(self) -> int:
        return self.base ** self.exponent

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


# =============================================================================
# Polynomials and collections
# =============================================================================

@dataclass(frozen=True)
class IntPolynomial:
    """
    Integer polynomial, coefficients lowest degree first.

    Trailing zero coefficients are stripped on construction; the zero
    polynomial is stored as (0,).
    """
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise UsageError("a polynomial needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for constants, including 0)."""
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        """Evaluate over the unbounded integers."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @classmethod
    def identity(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, j: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * j + (coefficient,))


@dataclass(frozen=True)
class Explicit:
    """An explicitly given polynomial f_i."""
    poly: IntPolynomial


@dataclass(frozen=True)
class Iterate:
    """The iteration f^(i); i = 0 is the identity map."""
    base: IntPolynomial
    i: int

    def __post_init__(self):
        if self.i < 0:
            raise UsageError(f"iteration count must be >= 0, got {self.i}")


@dataclass(frozen=True)
class Monomial:
    """The monomial x^j, j >= 1."""
    j: int

    def __post_init__(self):
        if self.j < 1:
            raise UsageError(f"monomial exponent must be >= 1, got {self.j}")


FunctionSpec = Union[Explicit, Iterate, Monomial]


@dataclass(frozen=True)
class Collection:
    """The ordered tuple (f_1, ..., f_s)."""
    entries: Tuple[FunctionSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise UsageError("a collection needs at least one function")

    @property
    def s(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix stored row by row."""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, s: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(s)) for i in range(s)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def apply(self, vector) -> Tuple[int, ...]:
        """A @ vector over the integers."""
        if len(vector) != self.size:
            raise DimensionError(
                f"vector of length {len(vector)} against a {self.size}x{self.size} matrix"
            )
        return tuple(sum(a * v for a, v in zip(row, vector)) for row in self.rows)


# =============================================================================
# Point sets
# =============================================================================

@dataclass(frozen=True)
class Point:
    """phi_n evaluated at one residue: s coordinates sharing one ring."""
    coords: Tuple[Residue, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise UsageError("a point needs at least one coordinate")
        spec = self.coords[0].spec
        if any(c.spec != spec for c in self.coords):
            raise UsageError("point coordinates must share one ring spec")

    @property
    def spec(self) -> RingSpec:
        return self.coords[0].spec

    @property
    def s(self) -> int:
        return len(self.coords)

    def numerators(self) -> Tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    def as_fractions(self) -> Tuple[Fraction, ...]:
        modulus = self.spec.modulus
        return tuple(Fraction(c.value, modulus) for c in self.coords)


@dataclass(frozen=True)
class SuffixCondition:
    """The event xi_d = beta: the d lowest digits of x spell beta."""
    d: int
    beta: int

    def __post_init__(self):
        if self.d < 1:
            raise UsageError(f"suffix length d must be >= 1, got {self.d}")
        if self.beta < 0:
            raise UsageError(f"suffix value must be >= 0, got {self.beta}")

    def validate(self, spec: RingSpec) -> None:
        if self.d > spec.n:
            raise UsageError(f"suffix length {self.d} exceeds n = {spec.n}")
        if self.beta >= spec.m ** self.d:
            raise UsageError(f"suffix value {self.beta} outside [0, {spec.m}^{self.d})")


@dataclass(frozen=True)
class EnumerationMode:
    """
    Exhaustive enumeration of the domain or a seeded uniform sample of it.

    Attributes:
        kind: "exhaustive" or "sampled"
        count: number of draws (sampled only)
        seed: seed of the auxiliary SplitMix64 stream (sampled only)
    """
    kind: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exhaustive", "sampled"):
            raise UsageError(f"unknown enumeration mode {self.kind!r}")
        if self.kind == "sampled" and self.count < 1:
            raise UsageError("sampled mode needs count >= 1")

    @classmethod
    def exhaustive(cls) -> "EnumerationMode":
        return cls("exhaustive")

    @classmethod
    def sampled(cls, count: int, seed: int = 0) -> "EnumerationMode":
        return cls("sampled", count, seed)

    @property
    def is_exhaustive(self) -> bool:
        return self.kind == "exhaustive"


EXHAUSTIVE = EnumerationMode.exhaustive()


# =============================================================================
# Reports
# =============================================================================

@dataclass(frozen=True)
class GridBox:
    """The cube J_k(a): [a_i / m^k, (a_i + 1) / m^k) in every coordinate."""
    k: int
    a: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if self.k < 1:
            raise UsageError(f"box resolution k must be >= 1, got {self.k}")
        if not self.a:
            raise UsageError("box corner must have at least one coordinate")

    def validate(self, m: int, s: Optional[int] = None) -> None:
        side = m ** self.k
        if any(not 0 <= ai < side for ai in self.a):
            raise UsageError(f"box corner {self.a} outside [0, {side})^{len(self.a)}")
        if s is not None and len(self.a) != s:
            raise DimensionError(f"box of dimension {len(self.a)} against s = {s}")

    def volume(self, m: int) -> Fraction:
        return Fraction(1, m ** (self.k * len(self.a)))


@dataclass(frozen=True)
class FrequencyReport:
    """Hit frequency of one cube against its volume."""
    box: GridBox
    hits: int
    total: int
    target: Fraction

    def __post_init__(self):
        if not 0 <= self.hits <= self.total:
            raise UsageError(f"hits {self.hits} outside [0, {self.total}]")

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.hits, self.total) if self.total else Fraction(0)

    @property
    def deviation(self) -> Fraction:
        return abs(self.frequency - self.target)


@dataclass(frozen=True)
class WeylSumResult:
    """
    Normalized exponential sum (1/N) sum exp(2 pi i <h, phi_n(x)>).

    error_budget is the documented N * 2^-50 bound on accumulated rounding.
    """
    h: Tuple[int, ...]
    value: complex
    count: int
    error_budget: float

    @property
    def magnitude(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class DiscrepancyMode:
    """grid(k): corners on the m^-k grid; exact: corners from the points themselves."""
    kind: str
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("grid", "exact"):
            raise UsageError(f"unknown discrepancy mode {self.kind!r}")
        if self.kind == "grid" and (self.k is None or self.k < 1):
            raise UsageError("grid discrepancy needs k >= 1")

    @classmethod
    def grid(cls, k: int) -> "DiscrepancyMode":
        return cls("grid", k)

    @classmethod
    def exact(cls) -> "DiscrepancyMode":
        return cls("exact")

    def __str__(self) -> str:
        return f"grid({self.k})" if self.kind == "grid" else "exact"


@dataclass(frozen=True)
class DiscrepancyReport:
    """
    sup over half-open boxes [lower, upper) of |count/N - volume|.

    The witness box attains the supremum; its corners are exact.
    """
    mode: DiscrepancyMode
    value: Fraction
    lower: Tuple[Fraction, ...]
    upper: Tuple[Fraction, ...]
    points: int

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise UsageError(f"discrepancy {self.value} outside [0, 1]")


@dataclass(frozen=True)
class SweepRow:
    """One row of a convergence sweep."""
    n: int
    max_deviation: Fraction
    discrepancy: Fraction
    total: int


@dataclass(frozen=True)
class CoreSets:
    """
    The core M(K) of J_k(a) at resolution K.

    Attributes:
        members: the vectors b of M(K)
        count: |M(K)| = (m^(K-k) - 2)^s
        outer_count: |M'(K)| = m^((K-k)s)
    """
    members: FrozenSet[Tuple[int, ...]]
    count: int
    outer_count: int


# =============================================================================
# Witness construction
# =============================================================================

@dataclass(frozen=True)
class WitnessParams:
    """
    Parameters of the hitting-set construction.

    Derived: j = sK (least window index), window = 2(s-1)K (window width),
    targets a_i = m^((s-1)K + (i-1)K) for i = 1..s-1.
    """
    m: int
    s: int
    K: int
    N: int
    n: int

    def __post_init__(self):
        if self.m < 2:
            raise ConfigurationError(f"base m must be >= 2, got {self.m}")
        if self.s < 1 or self.K < 1:
            raise UsageError("witness construction needs s >= 1 and K >= 1")
        if self.N < self.j:
            raise UsageError(f"horizon N = {self.N} is below j = sK = {self.j}")
        if self.n < 2 * self.N:
            raise UsageError(f"ring digits n = {self.n} below 2N = {2 * self.N}")

    @property
    def j(self) -> int:
        return self.s * self.K

    @property
    def window(self) -> int:
        return 2 * (self.s - 1) * self.K

    @property
    def targets(self) -> Tuple[int, ...]:
        m, s, K = self.m, self.s, self.K
        return tuple(m ** ((s - 1) * K + (i - 1) * K) for i in range(1, s))

    @property
    def spec(self) -> RingSpec:
        return RingSpec(self.m, self.n)


@dataclass(frozen=True)
class AdmissibleZ:
    """A member z of the admissible set together with its window index ell."""
    z: Residue
    ell: int


@dataclass(frozen=True)
class LResult:
    """Output of the operator L_z: digit blocks c = (c_0, ..., c_{s-1}) and the point y."""
    c: Tuple[int, ...]
    y: Residue


@dataclass(frozen=True)
class WitnessTranscriptEntry:
    z: int
    ell: int
    b: Tuple[int, ...]
    c: Tuple[int, ...]
    y: int
    hit: bool


@dataclass
class WitnessReport:
    """
    Summary of one exhaustive witness scan.

    Attributes:
        params: the construction parameters
        suffix: optional suffix restricting z
        admissible_count: members of the admissible set found by scanning z
        expected_count: passing x in [m^N] times m^(n-N-sK)
        passing_x: x in [m^N] (with the suffix) for which a window index exists
        checks: number of (z, b) pairs pushed through L_z
        hits: how many of those passed verify_hit
        bijective_z: checked z whose map b -> c hit every digit vector once
        transcript: a few sample (z, ell, b, c, y) records
    """
    params: WitnessParams
    suffix: Optional[SuffixCondition]
    admissible_count: int
    expected_count: int
    passing_x: int
    checks: int
    hits: int
    bijective_z: int = 0
    transcript: list = field(default_factory=list)

    @property
    def pass_rate(self) -> Fraction:
        return Fraction(self.hits, self.checks) if self.checks else Fraction(1)


@dataclass(frozen=True)
class HorizonRow:
    """Share of x in [m^N] for which a window index exists, at one horizon N."""
    N: int
    passing: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.passing, self.total)


def volume_fraction(m: int, k: int, s: int) -> Fraction:
    """V(J_k(a)) = m^(-ks)."""
    return Fraction(1, m ** (k * s))


__all__ = [
    "RingSpec", "Residue", "UnitPoint", "IntPolynomial", "Explicit", "Iterate",
    "Monomial", "FunctionSpec", "Collection", "IntMatrix", "Point",
    "SuffixCondition", "EnumerationMode", "EXHAUSTIVE", "GridBox",
    "FrequencyReport", "WeylSumResult", "DiscrepancyMode", "DiscrepancyReport",
    "SweepRow", "CoreSets", "WitnessParams", "AdmissibleZ", "LResult",
    "WitnessTranscriptEntry", "WitnessReport", "HorizonRow", "volume_fraction",
]
