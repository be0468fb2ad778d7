"""
Hitting-set construction for the power collection (y, y^2, ..., y^s).

Given a target cube J_K(b), the construction picks residues y whose point
phi_n(y, ..., y^s) lands in J_K(b') for some b' in O_K(b):

1. x = z mod m^N must admit a window index ell in [sK, N]: the digits
   ell-k' .. ell-1 of each derivative entry g_i(x) = (i+1) x^i spell the
   target a_i = m^((s-1)K + (i-1)K), where k' = 2(s-1)K.
2. z has zero digits at n-ell .. n-ell+k'/2-1 and at n-K .. n-1.
3. L_z writes b_1 into the top block, then a block vector c into the
   window at n-ell, chosen so that the top K digits of y^t become b_t up
   to one carry.

Windows with ell < k' read zero digits below position 0.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from .analysis import box_contains, neighborhood
from .config import DEFAULT_LIMITS, Limits
from .errors import CapacityError, DimensionError, UsageError
from .functions import build_collection
from .mring import arith, power, reduce, substr
from .pointset import phi_n
from .types import (
    AdmissibleZ,
    GridBox,
    HorizonRow,
    LResult,
    Residue,
    SuffixCondition,
    WitnessParams,
    WitnessReport,
    WitnessTranscriptEntry,
)

logger = logging.getLogger(__name__)


def _window(g: int, ell: int, width: int, m: int) -> int:
    if ell >= width:
        return substr(g, ell, ell - width, m)
    return (g % m ** ell) * m ** (width - ell)


def derivative_values(x: int, params: WitnessParams) -> Tuple[int, ...]:
    """(2x, 3x^2, ..., s x^(s-1)) mod m^N."""
    modulus = params.m ** params.N
    return tuple((i + 1) * pow(x, i, modulus) % modulus for i in range(1, params.s))


def find_ell(x: int, params: WitnessParams) -> Optional[int]:
    """
    Least ell in [sK, N] whose windows match every target, or None.

    For s = 1 there are no windows to match and ell is sK = K.
    """
    m, N = params.m, params.N
    if not 0 <= x < m ** N:
        raise UsageError(f"{x} is not in [{m}^{N}]")
    if params.s == 1:
        return params.j
    values = derivative_values(x, params)
    width = params.window
    targets = params.targets
    for ell in range(params.j, N + 1):
        if all(_window(g, ell, width, m) == a for g, a in zip(values, targets)):
            return ell
    return None


def _zero_windows(z: Residue, ell: int, params: WitnessParams) -> bool:
    n, K = params.n, params.K
    half = params.window // 2
    if half and substr(z, n - ell + half, n - ell) != 0:
        return False
    return substr(z, n, n - K) == 0


def membership_in_B(z: Residue, params: WitnessParams) -> Optional[AdmissibleZ]:
    """The admissible record for z, or None when z is not in B."""
    if z.spec != params.spec:
        raise UsageError(f"z lives in {z.spec}, expected {params.spec}")
    ell = find_ell(substr(z, params.N, 0), params)
    if ell is None or not _zero_windows(z, ell, params):
        return None
    return AdmissibleZ(z, ell)


def _check_b(b: Sequence[int], params: WitnessParams) -> None:
    if len(b) != params.s:
        raise DimensionError(f"target of length {len(b)} against s = {params.s}")
    side = params.m ** params.K
    if any(not 0 <= bi < side for bi in b):
        raise UsageError(f"target {tuple(b)} outside [{side}]^{params.s}")


def apply_L(adm: AdmissibleZ, b: Sequence[int], params: WitnessParams) -> LResult:
    """
    The operator L_z.

    c_0 = b_1, z_1 = z + c_0 m^(n-K), then for t = 2..s
    c_(t-1) = (b_t - substr(z_1^t, n, n-K)) mod m^K, and
    y = z_1 + (sum_{i=1}^{s-1} c_(s-i) m^(K(i-1))) m^(n-ell).
    """
    _check_b(b, params)
    m, n, K, s = params.m, params.n, params.K, params.s
    spec = params.spec
    side = m ** K
    c = [b[0]]
    z1 = arith("add", adm.z, reduce(b[0] * m ** (n - K), spec))
    for t in range(2, s + 1):
        c.append((b[t - 1] - substr(power(z1, t), n, n - K)) % side)
    block = sum(c[s - i] * m ** (K * (i - 1)) for i in range(1, s))
    y = arith("add", z1, reduce(block * m ** (n - adm.ell), spec))
    return LResult(tuple(c), y)


def verify_hit(y: Residue, b: Sequence[int], params: WitnessParams) -> bool:
    """True iff phi_n(y, ..., y^s) lies in J_K(b') for some b' in O_K(b)."""
    _check_b(b, params)
    point = phi_n(y, build_collection("monomials", s=params.s))
    return any(
        box_contains(GridBox(params.K, nb), point)
        for nb in sorted(neighborhood(b, params.K, params.m))
    )


def _suffix_ok(x: int, cond: Optional[SuffixCondition], m: int) -> bool:
    return cond is None or x % m ** cond.d == cond.beta


def _check_suffix(cond: Optional[SuffixCondition], params: WitnessParams) -> None:
    if cond is None:
        return
    cond.validate(params.spec)
    if cond.d > params.N:
        raise UsageError(f"suffix length {cond.d} exceeds the horizon N = {params.N}")


def passing_x(params: WitnessParams, cond: Optional[SuffixCondition] = None) -> List[int]:
    """All x in [m^N] with the suffix for which ``find_ell`` succeeds, ascending."""
    _check_suffix(cond, params)
    m = params.m
    return [
        x for x in range(m ** params.N)
        if _suffix_ok(x, cond, m) and find_ell(x, params) is not None
    ]


def admissible_count_formula(params: WitnessParams, cond: Optional[SuffixCondition] = None) -> int:
    """
    |B| (with the suffix) without scanning z.

    Conditions 2 and 3 pin sK of the n-N digits above position N, so
    |B| = #passing x * m^(n-N-sK).
    """
    return len(passing_x(params, cond)) * params.m ** (params.n - params.N - params.j)


def scan_admissible(
    params: WitnessParams,
    cond: Optional[SuffixCondition] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> Iterator[AdmissibleZ]:
    """
    Every z in B (with the suffix), ascending.

    Window indices are computed once per x = z mod m^N.
    """
    _check_suffix(cond, params)
    m, N = params.m, params.N
    spec = params.spec
    d = cond.d if cond is not None else 0
    size = spec.m ** (spec.n - d)
    if size > 1 << limits.exhaustive_max_log2:
        raise CapacityError(f"scanning {size} residues exceeds 2^{limits.exhaustive_max_log2}")
    ells = {x: find_ell(x, params) for x in passing_x(params, cond)}
    logger.info("%d of %d x in [%d^%d] admit a window index", len(ells), m ** (N - d), m, N)

    def members():
        low = m ** N
        for zv in range(cond.beta if cond else 0, spec.modulus, m ** d):
            ell = ells.get(zv % low)
            if ell is None:
                continue
            z = Residue.from_int(zv, spec)
            if _zero_windows(z, ell, params):
                yield AdmissibleZ(z, ell)

    return members()


def horizon_scan(
    m: int,
    s: int,
    K: int,
    N_lo: int,
    N_hi: int,
    cond: Optional[SuffixCondition] = None,
) -> List[HorizonRow]:
    """Share of x in [m^N] (with the suffix) admitting a window index, per N."""
    if N_lo > N_hi:
        raise UsageError(f"empty horizon range {N_lo}:{N_hi}")
    rows = []
    for N in range(N_lo, N_hi + 1):
        params = WitnessParams(m=m, s=s, K=K, N=N, n=2 * N)
        d = cond.d if cond is not None else 0
        passing = len(passing_x(params, cond))
        rows.append(HorizonRow(N=N, passing=passing, total=m ** (N - d)))
        logger.info("N=%d passing=%d of %d", N, passing, m ** (N - d))
    return rows


def run_witness(
    params: WitnessParams,
    cond: Optional[SuffixCondition] = None,
    samples: Optional[int] = None,
    transcript_size: int = 5,
    limits: Limits = DEFAULT_LIMITS,
) -> WitnessReport:
    """
    Scan B, push every target b in [m^K]^s through L_z and verify the hits.

    Args:
        params: construction parameters
        cond: optional suffix restricting z
        samples: check only the first this many admissible z (None checks all)
        transcript_size: number of (z, b) records kept in the report

    Returns:
        WitnessReport; its pass rate is 1 when the construction holds.
    """
    if samples is not None and samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    side = params.m ** params.K
    targets = list(itertools.product(range(side), repeat=params.s))
    admissible = 0
    checks = hits = bijective = 0
    transcript = []
    for adm in scan_admissible(params, cond, limits):
        admissible += 1
        if samples is not None and admissible > samples:
            continue
        seen = set()
        for b in targets:
            result = apply_L(adm, b, params)
            ok = verify_hit(result.y, b, params)
            checks += 1
            hits += ok
            seen.add(result.c)
            if len(transcript) < transcript_size:
                transcript.append(WitnessTranscriptEntry(
                    z=adm.z.value, ell=adm.ell, b=tuple(b), c=result.c,
                    y=result.y.value, hit=ok,
                ))
        bijective += len(seen) == len(targets)
    if checks != hits:
        logger.warning("%d of %d constructed points missed their target", checks - hits, checks)
    passing = len(passing_x(params, cond))
    return WitnessReport(
        params=params,
        suffix=cond,
        admissible_count=admissible,
        expected_count=passing * params.m ** (params.n - params.N - params.j),
        passing_x=passing,
        checks=checks,
        hits=hits,
        bijective_z=bijective,
        transcript=transcript,
    )
