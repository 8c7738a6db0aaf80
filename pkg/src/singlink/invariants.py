"""Link invariants of isolated weighted homogeneous hypersurface singularities.

A candidate is a weight vector w = (w_0, ..., w_n) of positive integers with
gcd 1 together with a degree d.  For a polynomial that scales with weight w_i
in the i-th coordinate and total weight d, the link of the singularity at the
origin carries classical invariants that are pure arithmetic in (w, d):

* the Milnor number  mu = prod_i (d/w_i - 1);
* the divisor of the characteristic polynomial Delta(t) of the monodromy,
  obtained by expanding prod_i (L(u_i)/v_i - 1) in the divisor ring, where
  u_i/v_i is d/w_i in lowest terms;
* the middle Betti number of the link, which is the multiplicity of (t - 1)
  in Delta(t), i.e. the coefficient sum of the divisor;
* when that Betti number vanishes, the torsion order |Delta(1)|
  = prod_{j>=2} j**a_j over the divisor terms.

Everything is exact (integers and fractions); weight vectors of any length
>= 3 are accepted.  Two closed-form shortcuts cover the situations used in
bulk searches: all weights coprime to the degree (the divisor collapses to a
single period d), and a coprime two-factor split of the degree whose factors
appear as the reduced numerators in a 3 + 2 pattern.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import NamedTuple, Optional, Sequence, Union

from .divisor import LambdaDivisor, NonIntegralDivisorError, lambda_

__all__ = [
    "Candidate",
    "RationalWeight",
    "CoprimeShortcut",
    "SplitShortcut",
    "ExpansionCapExceeded",
    "DEFAULT_EXPANSION_CAP",
    "EXPANSION_CAP_ENV_VAR",
    "milnor_number",
    "rational_weights",
    "monodromy_divisor",
    "betti3",
    "torsion_order",
    "alexander_polynomial",
    "coprime_shortcut",
    "split_decompose",
    "split_invariants",
]

#: Default bound on the expansion degree of :func:`alexander_polynomial`.
DEFAULT_EXPANSION_CAP = 10_000

#: Environment variable overriding the expansion cap (decimal integer).
EXPANSION_CAP_ENV_VAR = "SINGLINK_EXPANSION_CAP"


@dataclass(frozen=True)
class Candidate:
    """A weight vector with a degree.

    Weights are positive integers with overall gcd 1; any ordering is
    accepted and all invariants computed here are independent of it.
    Canonical candidates (as produced by enumeration or parsed from
    catalogs) keep their weights nondecreasing.
    """

    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) < 3:
            raise ValueError("need at least 3 weights")
        if any(w < 1 for w in ws):
            raise ValueError(f"weights must be positive, got {ws}")
        if gcd(*ws) != 1:
            raise ValueError(f"weights {ws} have gcd {gcd(*ws)} != 1")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"degree must be a positive integer, got {self.degree!r}")

    @property
    def is_sorted(self) -> bool:
        return all(a <= b for a, b in zip(self.weights, self.weights[1:]))

    def sorted(self) -> "Candidate":
        return Candidate(tuple(sorted(self.weights)), self.degree)

    @property
    def index(self) -> int:
        """sum(weights) - degree; positive for Fano candidates."""
        return sum(self.weights) - self.degree


class RationalWeight(NamedTuple):
    """d/w_i in lowest terms: numerator u, denominator v."""

    u: int
    v: int


def rational_weights(c: Candidate) -> list[RationalWeight]:
    """The reduced fractions d/w_i, one per weight, in weight order."""
    return [
        RationalWeight(*Fraction(c.degree, w).as_integer_ratio()) for w in c.weights
    ]


def milnor_number(c: Candidate) -> Fraction:
    """prod_i (d/w_i - 1), exactly.

    The product is an integer for every genuinely smoothable candidate;
    a non-integer value is a sign the candidate is invalid and is left to
    callers to flag.
    """
    return prod((Fraction(c.degree, w) - 1 for w in c.weights), start=Fraction(1))


def monodromy_divisor(c: Candidate) -> LambdaDivisor:
    """Divisor of the characteristic polynomial of the monodromy.

    Expands prod_i (L(u_i)/v_i - 1) in the divisor ring and checks that the
    result has integer coefficients.  Raises
    :class:`~singlink.divisor.NonIntegralDivisorError` otherwise; that can
    only happen for candidates that do not define an isolated singularity.

    The expansion runs over the common denominator prod(v_i), so all
    intermediate coefficients are integers; the final division restores the
    true (rational, here necessarily integral) coefficients exactly.
    """
    denominator = 1
    terms: dict[int, int] = {1: 1}
    for u, v in rational_weights(c):
        denominator *= v
        # multiply by (L(u) - v), over integers
        new: dict[int, int] = {}
        for p, a in terms.items():
            g = gcd(p, u)
            key = p * u // g
            new[key] = new.get(key, 0) + g * a
            new[p] = new.get(p, 0) - v * a
        terms = {p: a for p, a in new.items() if a}
    out: dict[int, int] = {}
    for p in sorted(terms):
        a = terms[p]
        quotient, remainder = divmod(a, denominator)
        if remainder:
            raise NonIntegralDivisorError(p, Fraction(a, denominator))
        out[p] = quotient
    return LambdaDivisor(out)


def betti3(div: LambdaDivisor) -> int:
    """Multiplicity of (t - 1) in the polynomial encoded by ``div``.

    For the divisor of a 7-dimensional link this is its third Betti number.
    Requires an integral divisor; a negative sum means the divisor does not
    come from a valid link.
    """
    div.assert_integral()
    total = div.coefficient_sum()
    if total < 0:
        raise ValueError(f"coefficient sum {total} is negative: not a link divisor")
    return int(total)


def torsion_order(div: LambdaDivisor) -> int:
    """Delta(1) for a divisor with vanishing (t - 1)-multiplicity.

    Computed as prod_{j >= 2} j**a_j by accumulating prime exponents, so
    negative a_j never force rational intermediates.  Every accumulated
    exponent must come out nonnegative.
    """
    from .factorization import factor_exponents

    if betti3(div) != 0:
        raise ValueError("torsion order is defined only when betti3(div) == 0")
    exps: dict[int, int] = {}
    for period, coeff in div.items():
        if period == 1:
            continue
        for p, e in factor_exponents(period):
            exps[p] = exps.get(p, 0) + e * coeff
    bad = {p: e for p, e in exps.items() if e < 0}
    if bad:
        raise ValueError(f"negative accumulated prime exponents {bad}: inconsistent divisor")
    return prod(p**e for p, e in exps.items())


# -- dense polynomial expansion ---------------------------------------------


class ExpansionCapExceeded(ValueError):
    """The requested polynomial expansion exceeds the configured degree cap."""


def _expansion_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(EXPANSION_CAP_ENV_VAR)
    return int(env) if env else DEFAULT_EXPANSION_CAP


def _mul_cyclic(poly: list[int], j: int) -> list[int]:
    # poly * (t^j - 1), via shift-and-subtract
    out = [0] * (len(poly) + j)
    for i, c in enumerate(poly):
        if c:
            out[i + j] += c
            out[i] -= c
    return out


def _div_cyclic(poly: list[int], j: int) -> list[int]:
    # poly // (t^j - 1); raises if the division is not exact
    rem = list(poly)
    top = len(rem) - 1
    if top < j:
        raise ArithmeticError(f"cannot divide degree-{top} polynomial by t^{j} - 1")
    quot = [0] * (top - j + 1)
    for e in range(top, j - 1, -1):
        c = rem[e]
        if c:
            quot[e - j] = c
            rem[e] = 0
            rem[e - j] += c
    if any(rem[:j]):
        raise ArithmeticError(f"nonzero remainder dividing by t^{j} - 1: {rem[:j]}")
    return quot


def alexander_polynomial(
    div: LambdaDivisor, expansion_cap: Optional[int] = None
) -> list[int]:
    """Delta(t) = prod_j (t^j - 1)**a_j as a dense coefficient list.

    Coefficients are ascending in degree.  The period-1 coefficient takes
    part like any other (one factor of (t - 1) per unit), so the unified
    divisor expands directly.  Negative exponents are handled by exact
    polynomial division; a nonzero remainder would mean the divisor is
    inconsistent and raises.

    The expansion refuses (raising :class:`ExpansionCapExceeded`) when the
    intermediate numerator degree would exceed ``expansion_cap`` (default
    :data:`DEFAULT_EXPANSION_CAP`, overridable via the
    ``SINGLINK_EXPANSION_CAP`` environment variable).
    """
    div.assert_integral()
    cap = _expansion_cap(expansion_cap)
    numerator_degree = sum(p * c for p, c in div.items() if c > 0)
    if numerator_degree > cap:
        raise ExpansionCapExceeded(
            f"expansion degree {numerator_degree} exceeds cap {cap}"
        )
    poly = [1]
    for period, coeff in div.items():
        if coeff > 0:
            for _ in range(coeff):
                poly = _mul_cyclic(poly, period)
    for period, coeff in div.items():
        if coeff < 0:
            for _ in range(-coeff):
                poly = _div_cyclic(poly, period)
    expected = div.weighted_degree()
    if len(poly) - 1 != expected:
        raise ArithmeticError(
            f"expanded degree {len(poly) - 1} != divisor degree {expected}"
        )
    return poly


# -- closed-form shortcuts ---------------------------------------------------


def _as_int(x: Fraction) -> Union[int, Fraction]:
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class CoprimeShortcut:
    """Closed form for the divisor when every weight is coprime to d.

    All reduced numerators then equal d and the divisor collapses to
    {d: N, 1: -1}.  N is computed from the pair sums r01 and r23 of the
    first four weights and the last weight; it always equals
    (mu + 1)/d.  The link is a rational homology sphere iff N == 1.
    """

    N: Union[int, Fraction]
    r01: Fraction
    r23: Fraction

    def divisor(self, degree: int) -> LambdaDivisor:
        return LambdaDivisor({degree: self.N}) + lambda_(1).scale(-1)


def _pair_sum(d: int, wi: int, wj: int) -> Fraction:
    return Fraction(d, wi * wj) - Fraction(1, wi) - Fraction(1, wj)


def coprime_shortcut(c: Candidate) -> Optional[CoprimeShortcut]:
    """The collapsed-divisor shortcut, or None when it does not apply.

    Applies to 5-weight candidates with gcd(w_i, d) == 1 for every i.
    """
    if len(c.weights) != 5:
        return None
    if any(gcd(w, c.degree) != 1 for w in c.weights):
        return None
    w = c.weights
    d = c.degree
    r01 = _pair_sum(d, w[0], w[1])
    r23 = _pair_sum(d, w[2], w[3])
    a = d * r01 * r23 + r01 + r23
    n = (d * a + 1) / Fraction(w[4]) - a
    return CoprimeShortcut(N=_as_int(n), r01=r01, r23=r23)


@dataclass(frozen=True)
class SplitShortcut:
    """Closed form for a coprime split d = m3 * m2 of the degree.

    Exactly three reduced numerators equal m3 (denominators
    ``triple_denominators``) and the other two equal m2 (denominators
    ``pair_denominators``).  The divisor is then
    {d: l*n, m3: l, m2: -n, 1: -1}; the link is a rational homology
    sphere iff l == 1, in which case mu = (m3 - 1) * (n * m2 + 1) and the
    torsion order is m3 ** (n + 1).
    """

    m3: int
    m2: int
    triple_denominators: tuple[int, int, int]
    pair_denominators: tuple[int, int]
    l: Union[int, Fraction]
    n: Union[int, Fraction]

    def divisor(self, degree: int) -> LambdaDivisor:
        return (
            LambdaDivisor({degree: self.l * self.n})
            + LambdaDivisor({self.m3: self.l})
            + LambdaDivisor({self.m2: -self.n})
            + lambda_(1).scale(-1)
        )


def _coprime_factor_pairs(d: int):
    # ordered pairs (a, b) with a*b == d, gcd(a, b) == 1, both > 1
    from .factorization import factor_exponents

    blocks = [p**e for p, e in factor_exponents(d)]
    pairs = []
    for mask in range(1, (1 << len(blocks)) - 1):
        a = prod(b for i, b in enumerate(blocks) if mask >> i & 1)
        pairs.append((a, d // a))
    return pairs


def split_decompose(c: Candidate) -> Optional[SplitShortcut]:
    """Find a coprime split d = m3 * m2 matching the 3 + 2 numerator pattern.

    Scans every coprime ordered factorization of the degree (both factors
    > 1) and returns the one for which exactly three reduced numerators
    equal m3 and the remaining two equal m2; None when no factorization
    fits.  The split, when it exists, is unique.
    """
    if len(c.weights) != 5:
        return None
    rw = rational_weights(c)
    for m3, m2 in _coprime_factor_pairs(c.degree):
        triple = [v for u, v in rw if u == m3]
        pair = [v for u, v in rw if u == m2]
        if len(triple) == 3 and len(pair) == 2:
            v1, v2, v3 = triple
            l = (
                Fraction(m3 * m3, v1 * v2 * v3)
                - m3 * (Fraction(1, v1 * v2) + Fraction(1, v1 * v3) + Fraction(1, v2 * v3))
                + Fraction(1, v1)
                + Fraction(1, v2)
                + Fraction(1, v3)
            )
            u1, u2 = pair
            n = Fraction(m2, u1 * u2) - Fraction(1, u1) - Fraction(1, u2)
            return SplitShortcut(
                m3=m3,
                m2=m2,
                triple_denominators=tuple(sorted(triple)),
                pair_denominators=tuple(sorted(pair)),
                l=_as_int(l),
                n=_as_int(n),
            )
    return None


def split_invariants(
    s: SplitShortcut,
) -> tuple[int, Optional[int], Optional[int]]:
    """(b3, mu, torsion) from a split shortcut.

    b3 = (n + 1) * (l - 1) always; mu and the torsion order are defined by
    the closed forms only in the rational-homology-sphere case l == 1 and
    are None otherwise.
    """
    if not isinstance(s.l, int) or not isinstance(s.n, int) or s.l < 1 or s.n < 1:
        raise ValueError(f"split parameters l={s.l}, n={s.n} are not positive integers")
    b3 = (s.n + 1) * (s.l - 1)
    if s.l == 1:
        return b3, (s.m3 - 1) * (s.n * s.m2 + 1), s.m3 ** (s.n + 1)
    return b3, None, None
