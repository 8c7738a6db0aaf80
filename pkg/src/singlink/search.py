"""Candidate enumeration, full classification, and bulk search.

:func:`classify` bundles every check and invariant for one candidate into a
:class:`LinkReport`.  Whenever one of the closed-form shortcuts applies, its
predicted divisor is compared against the independently expanded one and any
disagreement raises: the two routes are kept as mutual checks, never merged.

:func:`enumerate_candidates` walks all nondecreasing 5-tuples of weights
with gcd 1 and degree sum(w) - index <= max_degree.  The default
(quasi-smooth) mode prunes with necessary consequences of condition I: for
the largest weight w4 there must be j and m >= 1 with m*w4 + w_j = d, which
confines w4 to divisor sets of d, d - w0, d - w1, d - w2 and
w0 + w1 + w2 - index, collapsing the two innermost loops to table lookups.
Surviving tuples are screened by the full condition I before being yielded.
With quasi-smooth filtering disabled the enumeration falls back to the
unpruned loop (kept around as the soundness reference for tests).

Work splits into independent partitions keyed by the (w0, w1) prefix,
assigned round-robin, so any number of workers can cover the space without
coordination; results are merged by sorting, making output independent of
the partition count.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional, Union

from .divisor import LambdaDivisor, NonIntegralDivisorError
from .factorization import Factorization, factorize
from .fano import (
    QuasiSmoothDiagnostics,
    index,
    ke_sufficient,
    quasi_smooth,
    well_formed,
)
from .invariants import (
    Candidate,
    CoprimeShortcut,
    SplitShortcut,
    betti3,
    coprime_shortcut,
    milnor_number,
    monodromy_divisor,
    split_decompose,
    split_invariants,
    torsion_order,
)

__all__ = [
    "LinkReport",
    "SearchConfig",
    "ShortcutMismatchError",
    "classify",
    "is_rational_homology_sphere",
    "enumerate_candidates",
    "enumerate_candidates_bruteforce",
    "run_search",
    "search_rhs",
]


class ShortcutMismatchError(AssertionError):
    """A closed-form shortcut disagrees with the general computation."""


@dataclass(frozen=True)
class LinkReport:
    """Every invariant and flag computed for one candidate.

    For quasi-smooth candidates ``divisor`` and ``b3`` are always present
    and ``torsion_order`` is present iff ``b3 == 0``.  Candidates that fail
    quasi-smoothness may have no meaningful link topology at all; fields
    whose computation degenerates (non-integral divisor, negative
    coefficient sum, negative prime exponents) are None for them.
    """

    candidate: Candidate
    index: int
    well_formed: bool
    quasi_smooth: QuasiSmoothDiagnostics
    milnor_number: Fraction
    divisor: Optional[LambdaDivisor]
    b3: Optional[int]
    torsion_order: Optional[int]
    torsion_factored: Optional[Factorization]
    shortcut: Union[CoprimeShortcut, SplitShortcut, None]
    ke_sufficient: bool

    @property
    def weights(self) -> tuple[int, ...]:
        return self.candidate.weights

    @property
    def degree(self) -> int:
        return self.candidate.degree

    @property
    def is_rational_homology_sphere(self) -> bool:
        return self.b3 == 0

    @property
    def shortcut_kind(self) -> str:
        if isinstance(self.shortcut, CoprimeShortcut):
            return "lemma34"
        if isinstance(self.shortcut, SplitShortcut):
            return "lemma312"
        return "general"


_quasi_smooth_cached = lru_cache(maxsize=1 << 13)(quasi_smooth)


def classify(c: Candidate) -> LinkReport:
    """Compute the full :class:`LinkReport` for one candidate.

    Raises :class:`ShortcutMismatchError` if a closed-form shortcut and the
    general expansion ever disagree; that would be a bug, not bad input.
    """
    wf = well_formed(c)
    qs = _quasi_smooth_cached(c)
    idx = index(c)
    mu = milnor_number(c)

    # Invalid (non-quasi-smooth) candidates can produce divisors that are
    # non-integral, have negative coefficient sums, or accumulate negative
    # prime exponents; those fields become None.  For quasi-smooth
    # candidates any such failure is a bug and propagates.
    divisor: Optional[LambdaDivisor] = None
    b3: Optional[int] = None
    torsion: Optional[int] = None
    try:
        divisor = monodromy_divisor(c)
        b3 = betti3(divisor)
        torsion = torsion_order(divisor) if b3 == 0 else None
    except (NonIntegralDivisorError, ValueError):
        if qs.overall:
            raise
    factored = factorize(torsion) if torsion is not None else None

    shortcut: Union[CoprimeShortcut, SplitShortcut, None]
    shortcut = coprime_shortcut(c) or split_decompose(c)
    if shortcut is not None and divisor is not None:
        predicted = shortcut.divisor(c.degree)
        if predicted != divisor:
            raise ShortcutMismatchError(
                f"shortcut divisor {predicted!r} != expanded divisor {divisor!r} "
                f"for weights {c.weights}, degree {c.degree}"
            )
        if isinstance(shortcut, CoprimeShortcut) and shortcut.N == 1:
            if mu != c.degree - 1 or torsion != c.degree:
                raise ShortcutMismatchError(
                    f"collapsed-divisor case expects mu = d - 1 and torsion = d, "
                    f"got mu={mu}, torsion={torsion} at d={c.degree}"
                )
        if isinstance(shortcut, SplitShortcut) and isinstance(shortcut.l, int):
            if isinstance(shortcut.n, int) and shortcut.l >= 1 and shortcut.n >= 1:
                sb3, smu, storsion = split_invariants(shortcut)
                if sb3 != b3 or (smu is not None and (smu != mu or storsion != torsion)):
                    raise ShortcutMismatchError(
                        f"split closed forms (b3={sb3}, mu={smu}, torsion={storsion}) "
                        f"disagree with general (b3={b3}, mu={mu}, torsion={torsion}) "
                        f"for weights {c.weights}, degree {c.degree}"
                    )

    ke = ke_sufficient(c) if idx >= 1 else False
    return LinkReport(
        candidate=c,
        index=idx,
        well_formed=wf,
        quasi_smooth=qs,
        milnor_number=mu,
        divisor=divisor,
        b3=b3,
        torsion_order=torsion,
        torsion_factored=factored,
        shortcut=shortcut,
        ke_sufficient=ke,
    )


def is_rational_homology_sphere(c: Candidate) -> bool:
    """True iff the middle Betti number of the link vanishes."""
    return classify(c).b3 == 0


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of a bulk search.

    ``partitions`` is the number of independent enumeration slices; results
    do not depend on it.
    """

    max_degree: int
    index: int = 1
    require_quasi_smooth: bool = True
    require_well_formed: bool = True
    require_ke: bool = False
    rhs_only: bool = False
    partitions: int = 1

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.index < 1:
            raise ValueError("index must be >= 1")
        if self.partitions < 1:
            raise ValueError("partitions must be >= 1")


def _prefix_pairs(cfg: SearchConfig) -> Iterator[tuple[int, int]]:
    # (w0, w1) prefixes in lexicographic order
    top = cfg.max_degree + cfg.index
    for w0 in range(1, top // 5 + 1):
        for w1 in range(w0, (top - w0) // 4 + 1):
            yield w0, w1


def _divisor_table(limit: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(limit + 1)]
    for a in range(1, limit + 1):
        for b in range(a, limit + 1, a):
            divs[b].append(a)
    return divs


_WORD = 64
_WORD_MASK = (1 << _WORD) - 1


def _block_candidates(
    w0: int, w1: int, cfg: SearchConfig, divs: list[list[int]]
) -> list[Candidate]:
    """All surviving candidates with this (w0, w1) prefix, in weight-lex order.

    For a sorted quasi-smooth tuple, condition I applied to each of the two
    largest weights forces that weight to divide one of d, d - w0, d - w1,
    d - w2 or w0 + w1 + w2 - I, and condition III applied to the pair of the
    two largest weights forces d to be representable over {w0, w1, w2}.
    Given the prefix (w0, w1, w2) these facts confine d to a bitmask and
    (w3, w4) to small divisor/quotient sets, which is what makes degree
    bounds in the thousands enumerable at all.
    """
    D, I = cfg.max_degree, cfg.index
    out: list[tuple[int, int, int, int]] = []
    g01 = gcd(w0, w1)
    top = D + I
    full_mask = (1 << (D + 1)) - 1
    # d values representable over {w0, w1} (condition III for the top pair,
    # partial); extended per w2 below
    base_bits = 1
    for w in {w0, w1}:
        shift = w
        while shift <= D:
            base_bits |= (base_bits << shift) & full_mask
            shift <<= 1
    my_gcd = gcd
    for w2 in range(w1, (top - w0 - w1) // 3 + 1):
        s2 = w0 + w1 + w2
        d_start = max(1, s2 + 2 * w2 - I)
        if d_start > D:
            break
        g2 = my_gcd(g01, w2)
        a_tail = s2 - I
        tail_divs = divs[a_tail] if 0 < a_tail <= D else ()
        n_tail = len(tail_divs)
        reach = base_bits
        shift = w2
        while shift <= D:
            reach |= (reach << shift) & full_mask
            shift <<= 1
        p_lo = p_hi = 0  # sliding window [lo, hi] into tail_divs
        for word_base in range(d_start, D + 1, _WORD):
            word = (reach >> word_base) & _WORD_MASK
            while word:
                low_bit = word & -word
                word ^= low_bit
                d = word_base + low_bit.bit_length() - 1
                if d < d_start or d > D:
                    continue
                t = d + I - s2  # w3 + w4
                half = (t + 1) >> 1
                lo = half if half > w2 else w2
                hi = t - w2
                xd0 = d - w0
                xd1 = d - w1
                xd2 = d - w2
                hits: list[int] = []
                # source: w4 divides s2 - I  (condition I, i=4, j=3)
                if n_tail:
                    while p_lo < n_tail and tail_divs[p_lo] < lo:
                        p_lo += 1
                    while p_hi < n_tail and tail_divs[p_hi] <= hi:
                        p_hi += 1
                    if p_lo < p_hi:
                        hits.extend(tail_divs[p_lo:p_hi])
                elif a_tail == 0:
                    hits.extend(range(lo, hi + 1))  # unconstrained (s2 == I)
                # sources: w4 divides d (quotient >= 2) or d - wj, j in {0,1,2}
                # (condition I for i=4 with j = 4 resp. j <= 2); probe small
                # quotient ranges directly, fall back to the divisor table
                # when the range is wide
                for x, q_min in ((d, 2), (xd0, 1), (xd1, 1), (xd2, 1)):
                    if x < lo:
                        continue
                    q = q_min if hi * q_min >= x else -(-x // hi)
                    q_top = x // lo
                    if q_top - q > 16:
                        row = divs[x]
                        i_lo = bisect_left(row, lo)
                        i_hi = bisect_right(row, x // q_min if q_min > 1 else hi, i_lo)
                        for v in row[i_lo:i_hi]:
                            if v <= hi and v not in hits:
                                hits.append(v)
                        continue
                    while q <= q_top:
                        if x % q == 0:
                            v = x // q
                            if v not in hits:
                                hits.append(v)
                        q += 1
                for v in hits:
                    w3 = t - v
                    # condition I for i=3: same five dividends, divisor w3
                    if not (
                        (0 < a_tail and a_tail % w3 == 0)
                        or a_tail == 0
                        or (d % w3 == 0 and d >= 2 * w3)
                        or (xd0 >= w3 and xd0 % w3 == 0)
                        or (xd1 >= w3 and xd1 % w3 == 0)
                        or (xd2 >= w3 and xd2 % w3 == 0)
                    ):
                        continue
                    if my_gcd(g2, my_gcd(w3, v)) != 1:
                        continue
                    # condition I for i in {0, 1, 2}
                    xd3 = d - w3
                    xd4 = d - v
                    ok = True
                    for wi in (w0, w1, w2):
                        if not (
                            (xd0 >= wi and xd0 % wi == 0)
                            or (xd1 >= wi and xd1 % wi == 0)
                            or (xd2 >= wi and xd2 % wi == 0)
                            or (xd3 >= wi and xd3 % wi == 0)
                            or (xd4 >= wi and xd4 % wi == 0)
                        ):
                            ok = False
                            break
                    if ok:
                        out.append((w2, w3, v, d))
    out.sort()
    return [Candidate((w0, w1, w2, w3, w4), d) for w2, w3, w4, d in out]


def enumerate_candidates(
    cfg: SearchConfig, partition: int = 0
) -> Iterator[Candidate]:
    """Yield candidates for one partition, in weight-lexicographic order.

    A candidate is a nondecreasing 5-tuple of positive weights with gcd 1
    and degree d = sum(w) - cfg.index between 1 and cfg.max_degree.  With
    ``require_quasi_smooth`` set (the default) tuples that cannot satisfy
    quasi-smoothness condition I are pruned; otherwise every tuple is
    produced.  Partition ``k`` covers the (w0, w1) prefixes whose rank in
    lexicographic order is congruent to k modulo ``cfg.partitions``.
    """
    if not 0 <= partition < cfg.partitions:
        raise ValueError(f"partition {partition} out of range for {cfg.partitions}")
    if not cfg.require_quasi_smooth:
        yield from _bruteforce_partition(cfg, partition)
        return
    divs = _divisor_table(cfg.max_degree)
    for rank, (w0, w1) in enumerate(_prefix_pairs(cfg)):
        if rank % cfg.partitions != partition:
            continue
        yield from _block_candidates(w0, w1, cfg, divs)


def _bruteforce_partition(cfg: SearchConfig, partition: int) -> Iterator[Candidate]:
    D, I = cfg.max_degree, cfg.index
    top = D + I
    for rank, (w0, w1) in enumerate(_prefix_pairs(cfg)):
        if rank % cfg.partitions != partition:
            continue
        for w2 in range(w1, (top - w0 - w1) // 3 + 1):
            s2 = w0 + w1 + w2
            g2 = gcd(gcd(w0, w1), w2)
            for w3 in range(w2, (top - s2) // 2 + 1):
                s3 = s2 + w3
                g3 = gcd(g2, w3)
                w4_lo = max(w3, 1 + I - s3)
                for w4 in range(w4_lo, top - s3 + 1):
                    if gcd(g3, w4) != 1:
                        continue
                    yield Candidate((w0, w1, w2, w3, w4), s3 + w4 - I)


def enumerate_candidates_bruteforce(cfg: SearchConfig) -> Iterator[Candidate]:
    """Reference enumeration without any condition-based pruning."""
    yield from _bruteforce_partition(
        replace(cfg, require_quasi_smooth=False, partitions=1), 0
    )


def _passes(report: LinkReport, cfg: SearchConfig) -> bool:
    if cfg.require_well_formed and not report.well_formed:
        return False
    if cfg.require_quasi_smooth and not report.quasi_smooth.overall:
        return False
    if cfg.require_ke and not (report.index >= 1 and report.ke_sufficient):
        return False
    if cfg.rhs_only and report.b3 != 0:
        return False
    return True


def _search_partition(args: tuple[SearchConfig, int]) -> list[LinkReport]:
    cfg, partition = args
    results = []
    for cand in enumerate_candidates(cfg, partition):
        # cheap screens first; classify re-reads quasi_smooth from the cache
        if cfg.require_well_formed and not well_formed(cand):
            continue
        if cfg.require_quasi_smooth and not _quasi_smooth_cached(cand).overall:
            continue
        report = classify(cand)
        if _passes(report, cfg):
            results.append(report)
    return results


def run_search(cfg: SearchConfig) -> list[LinkReport]:
    """Classify every enumerated candidate and keep those passing the flags.

    Results are sorted by weight vector (then degree), so the output is a
    pure function of the configuration, independent of ``cfg.partitions``.
    """
    if cfg.partitions == 1:
        results = _search_partition((cfg, 0))
    else:
        from multiprocessing import Pool

        with Pool(processes=cfg.partitions) as pool:
            chunks = pool.map(
                _search_partition, [(cfg, k) for k in range(cfg.partitions)]
            )
        results = [r for chunk in chunks for r in chunk]
    results.sort(key=lambda r: (r.weights, r.degree))
    return results


def search_rhs(cfg: SearchConfig) -> list[LinkReport]:
    """Bulk search restricted to rational homology spheres (b3 == 0)."""
    if not cfg.rhs_only:
        cfg = replace(cfg, rhs_only=True)
    return run_search(cfg)
