"""
Arithmetic in the residue ring [m^n] on base-m digit vectors.

Addition, subtraction and multiplication work column by column with
carries and borrows, the way m-adic integers are added and multiplied by
hand; anything carried past digit n-1 is dropped, which is exactly
reduction modulo m^n. ``substr`` extracts digit windows and accepts plain
nonnegative integers too, because the windows used by the witness
construction cross ring boundaries.
"""

from typing import Optional, Union

from .errors import UsageError
from .types import Residue, RingSpec, UnitPoint


def reduce(v: int, spec: RingSpec) -> Residue:
    """
    The least nonnegative residue of v modulo m^n.

    v may be negative or arbitrarily large; Python's floor modulo already
    returns the canonical representative for a positive modulus.
    """
    return Residue.from_int(v % spec.modulus, spec)


def _check_same_ring(a: Residue, b: Residue) -> RingSpec:
    if a.spec != b.spec:
        raise UsageError(f"ring mismatch: {a.spec} vs {b.spec}")
    return a.spec


def _add_digits(a, b, m):
    out = []
    carry = 0
    for da, db in zip(a, b):
        carry, d = divmod(da + db + carry, m)
        out.append(d)
    return tuple(out)


def _sub_digits(a, b, m):
    out = []
    borrow = 0
    for da, db in zip(a, b):
        d = da - db - borrow
        if d < 0:
            d += m
            borrow = 1
        else:
            borrow = 0
        out.append(d)
    return tuple(out)


def _mul_digits(a, b, m):
    # Schoolbook product truncated to len(a) columns.
    n = len(a)
    cols = [0] * n
    for i, da in enumerate(a):
        if da == 0:
            continue
        for j in range(n - i):
            cols[i + j] += da * b[j]
    out = []
    carry = 0
    for col in cols:
        carry, d = divmod(col + carry, m)
        out.append(d)
    return tuple(out)


_DIGIT_OPS = {
    "add": _add_digits,
    "sub": _sub_digits,
    "mul": _mul_digits,
}


def arith(kind: str, a: Residue, b: Residue) -> Residue:
    """
    a + b, a - b or a * b in [m^n], by digit-column arithmetic.

    Args:
        kind: "add", "sub" or "mul"
        a, b: residues of the same ring

    Returns:
        The result residue (equal to reduce(int(a) op int(b), spec)).
    """
    spec = _check_same_ring(a, b)
    try:
        op = _DIGIT_OPS[kind]
    except KeyError:
        raise UsageError(f"unknown arithmetic kind {kind!r}") from None
    return Residue(op(a.digits, b.digits, spec.m), spec)


def power(x: Residue, t: int) -> Residue:
    """x^t in [m^n] by repeated digit-column multiplication."""
    if t < 0:
        raise UsageError(f"exponent must be >= 0, got {t}")
    result = reduce(1, x.spec)
    for _ in range(t):
        result = arith("mul", result, x)
    return result


def truncate(x: Residue, n: int) -> Residue:
    """x mod m^n as a residue of the smaller ring [m^n]."""
    if not 1 <= n <= x.spec.n:
        raise UsageError(f"cannot truncate {x.spec.n} digits to {n}")
    return Residue(x.digits[:n], x.spec.with_n(n))


def substr(x: Union[Residue, int], i: int, j: int, m: Optional[int] = None) -> int:
    """
    The integer spelled by the digits of x at positions j .. i-1.

    Equals (x mod m^i - x mod m^j) / m^j and lies in [m^(i-j)].

    Args:
        x: a residue, or a nonnegative integer (then m is required)
        i: exclusive upper digit position
        j: inclusive lower digit position
        m: base, only needed for integer x
    """
    if not i > j >= 0:
        raise UsageError(f"substr needs i > j >= 0, got i={i}, j={j}")
    if isinstance(x, Residue):
        if i > x.spec.n:
            raise UsageError(f"window end {i} beyond n = {x.spec.n}")
        if m is not None and m != x.spec.m:
            raise UsageError(f"base {m} disagrees with residue base {x.spec.m}")
        m = x.spec.m
        v = 0
        for d in reversed(x.digits[j:i]):
            v = v * m + d
        return v
    if m is None or m < 2:
        raise UsageError("substr on an integer needs a base m >= 2")
    if x < 0:
        raise UsageError(f"substr needs a nonnegative integer, got {x}")
    return (x // m ** j) % m ** (i - j)


def to_unit_point(x: Residue) -> UnitPoint:
    """The exact normalized coordinate x / m^n."""
    return UnitPoint(x.value, x.spec.m, x.spec.n)


def carry_defect(x1: int, x2: int, n: int, k: int, m: int) -> int:
    """
    How the top-k window of x1 + x2 (mod m^n) differs from the sum of windows.

    Returns (substr(x1+x2, n, n-k) - substr(x1, n, n-k) - substr(x2, n, n-k))
    mod m^k, which is always 0 or 1: at most one carry enters the window.
    """
    if not n >= k >= 1:
        raise UsageError(f"carry window needs n >= k >= 1, got n={n}, k={k}")
    modulus = m ** n
    lo = n - k
    s = substr((x1 + x2) % modulus, n, lo, m)
    return (s - substr(x1 % modulus, n, lo, m) - substr(x2 % modulus, n, lo, m)) % m ** k


def borrow_defect(x1: int, x2: int, n: int, k: int, m: int) -> int:
    """
    The subtraction analogue of ``carry_defect``.

    Returns (substr(x1-x2, n, n-k) - (substr(x1, n, n-k) - substr(x2, n, n-k)))
    mod m^k, which is always 0 or m^k - 1: at most one borrow leaves the window.
    """
    if not n >= k >= 1:
        raise UsageError(f"borrow window needs n >= k >= 1, got n={n}, k={k}")
    modulus = m ** n
    lo = n - k
    s = substr((x1 - x2) % modulus, n, lo, m)
    return (s - (substr(x1 % modulus, n, lo, m) - substr(x2 % modulus, n, lo, m))) % m ** k
