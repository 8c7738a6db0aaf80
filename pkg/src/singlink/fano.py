"""Combinatorial validity checks for hypersurface candidates in weighted P^4.

A weight vector w = (w_0, ..., w_4) with degree d cuts out a hypersurface of
the weighted projective 4-space P(w).  Whether a generic such hypersurface is
quasi-smooth (its affine cone is smooth away from the origin) is a question
about which monomials of total weight d exist; the three conditions checked
by :func:`quasi_smooth` are the standard ones:

I.   for each i there are j and m >= 1 with m*w_i + w_j = d;
II.  for each pair i != j, either b_i*w_i + b_j*w_j = d is solvable in
     nonnegative integers, or there are two distinct indices k, l outside
     {i, j} such that both d - w_k and d - w_l are so representable;
III. for each pair i != j, d is representable over the three remaining
     weights.

Well-formedness (every four of the five weights coprime) rules out
codimension-1 orbifold strata and makes the index I = |w| - d the honest
Fano index.  :func:`ke_sufficient` evaluates the sufficient inequality
d * (n-1) * I < n * w_0 * w_1 (smallest two weights, exact integer
arithmetic) under which a positive Kaehler-Einstein orbifold metric exists
downstairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .invariants import Candidate

__all__ = [
    "QuasiSmoothDiagnostics",
    "index",
    "well_formed",
    "representable",
    "quasi_smooth",
    "ke_sufficient",
]


def index(c: Candidate) -> int:
    """The Fano index I = sum(weights) - degree (any sign)."""
    return sum(c.weights) - c.degree


def well_formed(c: Candidate) -> bool:
    """True iff every proper sub-vector omitting one weight has gcd 1."""
    w = c.weights
    return all(gcd(*(w[j] for j in range(len(w)) if j != i)) == 1 for i in range(len(w)))


@lru_cache(maxsize=1 << 16)
def _reachable_bits(target: int, weights: tuple[int, ...]) -> int:
    # bit t set <=> t is a nonnegative integer combination of the weights
    bits = 1
    mask = (1 << (target + 1)) - 1
    for w in weights:
        if w > target:
            continue
        shift = w
        while shift <= target:
            bits |= (bits << shift) & mask
            shift <<= 1
    return bits


def representable(target: int, weights: Sequence[int]) -> bool:
    """Is ``target`` a nonnegative integer combination of ``weights``?

    Dynamic programming over 0..target (bitset form), memoized per
    (target, weight multiset).  target 0 is always representable (the
    empty combination).
    """
    if target < 0:
        return False
    if target == 0:
        return True
    ws = tuple(sorted(set(int(w) for w in weights)))
    if any(w < 1 for w in ws):
        raise ValueError(f"weights must be positive, got {tuple(weights)}")
    if not ws:
        return False
    return bool(_reachable_bits(target, ws) >> target & 1)


def _two_var_representable(d: int, a: int, b: int) -> bool:
    # exists x, y >= 0 with a*x + b*y == d
    if d < 0:
        return False
    g = gcd(a, b)
    if d % g:
        return False
    a2, b2, d2 = a // g, b // g, d // g
    if b2 == 1:
        return True
    x0 = d2 * pow(a2, -1, b2) % b2
    return a2 * x0 <= d2


@dataclass(frozen=True)
class QuasiSmoothDiagnostics:
    """Outcome of the three quasi-smoothness conditions, with witnesses.

    Each ``condition_*`` flag carries, on failure, the index (condition I)
    or unordered index pair (conditions II and III) that broke it; the
    witness is None when the condition holds.
    """

    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    failing_index: Optional[int] = None
    failing_pair_ii: Optional[tuple[int, int]] = None
    failing_pair_iii: Optional[tuple[int, int]] = None

    @property
    def overall(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def __bool__(self) -> bool:
        return self.overall


def _condition_i(w: tuple[int, ...], d: int) -> Optional[int]:
    # z_i^m * z_j of degree d, m >= 1, j == i allowed; returns a failing i
    for i, wi in enumerate(w):
        for wj in w:
            r = d - wj
            if r >= wi and r % wi == 0:
                break
        else:
            return i
    return None


def _condition_ii(w: tuple[int, ...], d: int) -> Optional[tuple[int, int]]:
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n):
            if _two_var_representable(d, w[i], w[j]):
                continue
            # need monomials z_i^a z_j^b z_k for two distinct k outside {i, j}
            hits = 0
            for k in range(n):
                if k == i or k == j:
                    continue
                if _two_var_representable(d - w[k], w[i], w[j]):
                    hits += 1
                    if hits == 2:
                        break
            if hits < 2:
                return (i, j)
    return None


def _condition_iii(w: tuple[int, ...], d: int) -> Optional[tuple[int, int]]:
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n):
            rest = tuple(w[k] for k in range(n) if k != i and k != j)
            if not representable(d, rest):
                return (i, j)
    return None


def quasi_smooth(c: Candidate) -> QuasiSmoothDiagnostics:
    """Check the three quasi-smoothness conditions for a 5-weight candidate."""
    if len(c.weights) != 5:
        raise ValueError("quasi-smoothness conditions are specific to 5 weights")
    w, d = c.weights, c.degree
    fail_i = _condition_i(w, d)
    fail_ii = _condition_ii(w, d)
    fail_iii = _condition_iii(w, d)
    return QuasiSmoothDiagnostics(
        condition_i=fail_i is None,
        condition_ii=fail_ii is None,
        condition_iii=fail_iii is None,
        failing_index=fail_i,
        failing_pair_ii=fail_ii,
        failing_pair_iii=fail_iii,
    )


def ke_sufficient(c: Candidate, ambient_dim: int = 4) -> bool:
    """The sufficient inequality for a positive Kaehler-Einstein metric.

    True iff d * (n - 1) * I < n * w0 * w1 strictly, where n is the ambient
    dimension (default 4), I the index, and w0 <= w1 the two smallest
    weights.  Evaluated cross-multiplied in exact integer arithmetic.
    Candidates with nonpositive index are rejected.
    """
    idx = index(c)
    if idx < 1:
        raise ValueError(f"index {idx} is not positive; not a Fano candidate")
    w0, w1 = sorted(c.weights)[:2]
    return c.degree * (ambient_dim - 1) * idx < ambient_dim * w0 * w1
