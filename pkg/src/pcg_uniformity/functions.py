"""
Integer polynomials as compatible functions.

Evaluation modulo m^n uses Horner's scheme with a reduction after every
step, so inputs congruent modulo m^n give equal outputs. Iterations f^(i)
are evaluated by repeated modular evaluation; they are expanded
symbolically only when ``transform_affine`` needs an explicit polynomial,
since the degree of f^(i) grows as (deg f)^i.

Text formats:
    polynomial  "1,1,1"             -> 1 + x + x^2 (lowest degree first)
    collection  "monomials:3"       -> (x, x^2, x^3)
                "iterations:1,1,1:3" -> (x, f, f^(2)) with f = 1 + x + x^2
                "derivative:3"      -> (2x, 3x^2)
                "0,1;1,0,1"         -> explicit (x, 1 + x^2)
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, ParseError, UsageError
from .types import (
    Collection,
    Explicit,
    FunctionSpec,
    IntMatrix,
    IntPolynomial,
    Iterate,
    Monomial,
    Residue,
)

# Moduli below this bound keep every Horner product under 2^62 in int64.
NUMPY_SAFE_MODULUS = 1 << 31


# =============================================================================
# Text formats
# =============================================================================

def _parse_int(token: str, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise ParseError(f"bad integer {token!r} in {what}") from None


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse comma-separated coefficients, lowest degree first."""
    tokens = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in tokens):
        raise ParseError(f"bad polynomial {text!r}")
    return IntPolynomial(tuple(_parse_int(t, "polynomial") for t in tokens))


def format_polynomial(f: IntPolynomial) -> str:
    return ",".join(str(c) for c in f.coeffs)


def parse_int_vector(text: str) -> Tuple[int, ...]:
    """Parse "1,-2,3" into a tuple of ints."""
    if not text.strip():
        raise ParseError("empty integer vector")
    return tuple(_parse_int(t, "vector") for t in text.split(","))


def parse_matrix(text: str) -> IntMatrix:
    """Parse rows separated by ';' with comma-separated entries: "1,0;1,1"."""
    rows = tuple(parse_int_vector(row) for row in text.split(";"))
    try:
        return IntMatrix(rows)
    except DimensionError as exc:
        raise ParseError(f"bad matrix {text!r}: {exc}") from None


def parse_collection(text: str) -> Collection:
    """Parse the collection text format (see module docstring)."""
    text = text.strip()
    if not text:
        raise ParseError("empty collection")
    head, _, rest = text.partition(":")
    try:
        if head == "monomials":
            return build_collection("monomials", s=_parse_int(rest, "collection"))
        if head == "derivative":
            return build_collection("derivative", s=_parse_int(rest, "collection"))
        if head == "iterations":
            poly_text, sep, s_text = rest.rpartition(":")
            if not sep:
                raise ParseError(f"expected iterations:<poly>:s, got {text!r}")
            return build_collection(
                "iterations",
                s=_parse_int(s_text, "collection"),
                base=parse_polynomial(poly_text),
            )
    except UsageError as exc:
        raise ParseError(str(exc)) from None
    return build_collection(
        "explicit",
        polynomials=[parse_polynomial(part) for part in text.split(";")],
    )


def format_collection(c: Collection) -> str:
    """Semicolon-joined explicit form; iterations are expanded symbolically."""
    return ";".join(format_polynomial(to_polynomial(e)) for e in c.entries)


# =============================================================================
# Symbolic polynomial algebra
# =============================================================================

def poly_add(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    size = max(len(f.coeffs), len(g.coeffs))
    a = f.coeffs + (0,) * (size - len(f.coeffs))
    b = g.coeffs + (0,) * (size - len(g.coeffs))
    return IntPolynomial(tuple(x + y for x, y in zip(a, b)))


def poly_scale(f: IntPolynomial, c: int) -> IntPolynomial:
    return IntPolynomial(tuple(c * a for a in f.coeffs))


def poly_mul(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return IntPolynomial(tuple(out))


def compose(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """f(g(x)) by Horner's scheme over polynomials."""
    acc = IntPolynomial((0,))
    for c in reversed(f.coeffs):
        acc = poly_add(poly_mul(acc, g), IntPolynomial((c,)))
    return acc


def expand_iterate(f: IntPolynomial, i: int) -> IntPolynomial:
    """f^(i) as an explicit polynomial; f^(0) = x."""
    if i < 0:
        raise UsageError(f"iteration count must be >= 0, got {i}")
    acc = IntPolynomial.identity()
    for _ in range(i):
        acc = compose(f, acc)
    return acc


def to_polynomial(entry: FunctionSpec) -> IntPolynomial:
    """Resolve any collection entry to an explicit polynomial."""
    if isinstance(entry, Explicit):
        return entry.poly
    if isinstance(entry, Monomial):
        return IntPolynomial.monomial(entry.j)
    return expand_iterate(entry.base, entry.i)


# =============================================================================
# Modular evaluation
# =============================================================================

def eval_int(f: IntPolynomial, x: int, modulus: int) -> int:
    """f(x) mod modulus, reducing after every Horner step."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % modulus
    return acc


def iterate_int(f: IntPolynomial, x: int, i: int, modulus: int) -> int:
    if i < 0:
        raise UsageError(f"iteration count must be >= 0, got {i}")
    x %= modulus
    for _ in range(i):
        x = eval_int(f, x, modulus)
    return x


def eval_mod(f: IntPolynomial, x: Residue) -> Residue:
    """
    f(x) in [m^n].

    Horner's scheme runs on the canonical representatives of the ring, so
    each intermediate value stays below m^n.
    """
    spec = x.spec
    return Residue.from_int(eval_int(f, x.value, spec.modulus), spec)


def iterate_mod(f: IntPolynomial, x: Residue, i: int) -> Residue:
    """The i-fold composition f^(i)(x) in [m^n]; i = 0 returns x."""
    if i < 0:
        raise UsageError(f"iteration count must be >= 0, got {i}")
    if i == 0:
        return x
    spec = x.spec
    return Residue.from_int(iterate_int(f, x.value, i, spec.modulus), spec)


def evaluate_collection(c: Collection, x: int, modulus: int) -> Tuple[int, ...]:
    """
    (f_1(x), ..., f_s(x)) mod modulus.

    Iterations of a shared base polynomial reuse the previous entry's
    value, so (x, f, ..., f^(s-1)) costs s-1 evaluations, not s(s-1)/2.
    """
    x %= modulus
    chains: Dict[IntPolynomial, Tuple[int, int]] = {}
    out = []
    for entry in c.entries:
        if isinstance(entry, Explicit):
            out.append(eval_int(entry.poly, x, modulus))
        elif isinstance(entry, Monomial):
            out.append(pow(x, entry.j, modulus))
        else:
            start_i, value = chains.get(entry.base, (0, x))
            if start_i > entry.i:
                start_i, value = 0, x
            for _ in range(entry.i - start_i):
                value = eval_int(entry.base, value, modulus)
            chains[entry.base] = (entry.i, value)
            out.append(value)
    return tuple(out)


def _eval_array(f: IntPolynomial, xs: np.ndarray, modulus: int) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(f.coeffs):
        acc = (acc * xs + (c % modulus)) % modulus
    return acc


def evaluate_collection_array(c: Collection, xs: np.ndarray, modulus: int) -> List[np.ndarray]:
    """
    Vectorized ``evaluate_collection`` over an array of inputs.

    xs must hold values in [0, modulus). For modulus <= NUMPY_SAFE_MODULUS
    pass int64 arrays; larger moduli need dtype=object arrays of Python ints.
    Coefficients are reduced mod the modulus first, so products stay below
    modulus^2.
    """
    chains: Dict[IntPolynomial, Tuple[int, np.ndarray]] = {}
    out = []
    for entry in c.entries:
        if isinstance(entry, Explicit):
            out.append(_eval_array(entry.poly, xs, modulus))
        elif isinstance(entry, Monomial):
            acc = xs.copy()
            for _ in range(entry.j - 1):
                acc = (acc * xs) % modulus
            out.append(acc)
        else:
            start_i, value = chains.get(entry.base, (0, xs))
            if start_i > entry.i:
                start_i, value = 0, xs
            for _ in range(entry.i - start_i):
                value = _eval_array(entry.base, value, modulus)
            chains[entry.base] = (entry.i, value)
            out.append(value)
    return out


# =============================================================================
# Collection builders
# =============================================================================

def build_collection(
    kind: str,
    s: Optional[int] = None,
    base: Optional[IntPolynomial] = None,
    polynomials: Optional[Sequence[IntPolynomial]] = None,
) -> Collection:
    """
    Build one of the standard collections.

    Args:
        kind: "monomials", "iterations", "derivative" or "explicit"
        s: dimension (monomials, iterations) or top exponent (derivative)
        base: the generator polynomial f (iterations)
        polynomials: the entries (explicit)

    Returns:
        monomials(s)     = (x, x^2, ..., x^s)
        iterations(f, s) = (x, f, f^(2), ..., f^(s-1))
        derivative(s)    = (2x, 3x^2, ..., s x^(s-1))   [s-1 entries]
    """
    if kind == "explicit":
        if not polynomials:
            raise UsageError("explicit collection needs at least one polynomial")
        return Collection(tuple(Explicit(p) for p in polynomials))
    if s is None or s < 1:
        raise UsageError(f"collection dimension must be >= 1, got {s}")
    if kind == "monomials":
        return Collection(tuple(Monomial(j) for j in range(1, s + 1)))
    if kind == "iterations":
        if base is None:
            raise UsageError("iterations collection needs a base polynomial")
        return Collection(tuple(Iterate(base, i) for i in range(s)))
    if kind == "derivative":
        if s < 2:
            raise UsageError("derivative collection needs s >= 2")
        return Collection(tuple(
            Explicit(IntPolynomial.monomial(t - 1, t)) for t in range(2, s + 1)
        ))
    raise UsageError(f"unknown collection kind {kind!r}")


def subcollection(c: Collection, indices: Sequence[int]) -> Collection:
    """The entries at the given strictly increasing 0-based indices."""
    if not indices or any(b <= a for a, b in zip(indices, indices[1:])):
        raise UsageError(f"indices must be nonempty and strictly increasing: {indices}")
    if indices[0] < 0 or indices[-1] >= c.s:
        raise DimensionError(f"indices {indices} outside a collection of size {c.s}")
    return Collection(tuple(c.entries[i] for i in indices))


def coefficient_matrix(c: Collection, degree: int) -> Tuple[IntMatrix, Tuple[int, ...]]:
    """
    Write a collection of `degree` polynomials as A (x, ..., x^degree)^T + z.

    Returns:
        (A, z) where row i of A holds the coefficients of x^1..x^degree of
        entry i and z_i is its free term.
    """
    if c.s != degree:
        raise DimensionError(f"need exactly {degree} entries, got {c.s}")
    rows = []
    shifts = []
    for entry in c.entries:
        poly = to_polynomial(entry)
        if poly.degree > degree:
            raise DimensionError(f"entry of degree {poly.degree} exceeds {degree}")
        coeffs = poly.coeffs + (0,) * (degree + 1 - len(poly.coeffs))
        shifts.append(coeffs[0])
        rows.append(coeffs[1:])
    return IntMatrix(tuple(rows)), tuple(shifts)


def triangular_completion(f: IntPolynomial, s: int) -> Tuple[Collection, Tuple[int, ...]]:
    """
    Complete (x, f, ..., f^(s-1)) to one polynomial of every degree 1..deg f^(s-1).

    Missing degrees are filled with monomials and entries are ordered by
    degree, so the coefficient matrix is triangular with the leading
    coefficients on its diagonal.

    Returns:
        (completed collection, positions of x, f, ..., f^(s-1) inside it)
    """
    if f.degree < 2 and s > 1:
        raise UsageError("iterations of a degree-1 polynomial share one degree")
    by_degree: Dict[int, FunctionSpec] = {}
    originals: Dict[int, int] = {}
    for i in range(s):
        entry = Iterate(f, i)
        deg = f.degree ** i
        by_degree[deg] = entry
        originals[deg] = i
    top = max(by_degree)
    entries = []
    positions = [0] * s
    for deg in range(1, top + 1):
        if deg in by_degree:
            positions[originals[deg]] = len(entries)
            entries.append(by_degree[deg])
        else:
            entries.append(Monomial(deg))
    return Collection(tuple(entries)), tuple(positions)


# =============================================================================
# Matrix transforms
# =============================================================================

def determinant(A: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    rows = [list(row) for row in A.rows]
    size = len(rows)
    sign = 1
    prev = 1
    for col in range(size - 1):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        for r in range(col + 1, size):
            for c2 in range(col + 1, size):
                rows[r][c2] = (rows[r][c2] * rows[col][col] - rows[r][col] * rows[col][c2]) // prev
            rows[r][col] = 0
        prev = rows[col][col]
    return sign * rows[-1][-1]


def is_nondegenerate(A: IntMatrix) -> bool:
    """det(A) != 0 over the integers."""
    return determinant(A) != 0


def transform_affine(A: IntMatrix, z: Sequence[int], c: Collection) -> Collection:
    """
    The collection g with g^T = A f^T + z, as explicit polynomials.

    Iterate entries of c are expanded symbolically first.
    """
    if A.size != c.s:
        raise DimensionError(f"{A.size}x{A.size} matrix against a collection of size {c.s}")
    if len(z) != c.s:
        raise DimensionError(f"shift of length {len(z)} against a collection of size {c.s}")
    polys = [to_polynomial(e) for e in c.entries]
    out = []
    for row, shift in zip(A.rows, z):
        acc = IntPolynomial((shift,))
        for a, p in zip(row, polys):
            if a:
                acc = poly_add(acc, poly_scale(p, a))
        out.append(Explicit(acc))
    return Collection(tuple(out))
