"""Exact arithmetic for divisors built from the root multisets of t^n - 1.

The basic symbol ``L(n)`` stands for the multiset of all n-th roots of
unity, i.e. the divisor of t^n - 1 regarded as a set of points on the unit
circle with multiplicity.  A :class:`LambdaDivisor` is a finite linear
combination of such symbols with exact (integer or rational) coefficients.

Two operations matter:

* addition, which is coefficient-wise and corresponds to multiplying the
  underlying polynomials, and
* a ring product extended bilinearly from the generator rule

      L(a) * L(b) == gcd(a, b) * L(lcm(a, b)),

  which encodes the pointwise product of root multisets: every product of
  an a-th and a b-th root of unity is an lcm(a, b)-th root of unity, and
  each such root is hit exactly gcd(a, b) times.

``L(1)`` is the single point {1}; it is the multiplicative identity, and a
constant summand "c" in a divisor expression is stored as the coefficient
of period 1.  With that convention the multiplicity of (t - 1) in the
polynomial encoded by a divisor is simply the sum of all coefficients.

Coefficients may be rational during intermediate computations (scaling by
1/v happens before integrality is restored); :meth:`LambdaDivisor.assert_integral`
checks and normalizes the final result.  Everything is exact; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[int, Fraction]
_TermsInput = Union[Mapping[int, Coeff], Iterable[tuple[int, Coeff]]]


class NonIntegralDivisorError(ValueError):
    """A divisor expected to have integer coefficients does not."""

    def __init__(self, period: int, coeff: Fraction):
        self.period = period
        self.coeff = coeff
        super().__init__(
            f"non-integral coefficient {coeff} at period {period}; "
            "the computation that produced this divisor is inconsistent"
        )


def _normalize(c: Coeff) -> Coeff:
    # Keep plain ints whenever the value is integral so reprs stay readable.
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


class LambdaDivisor:
    """Immutable sparse map from period n >= 1 to an exact coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: _TermsInput = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Coeff] = {}
        for period, coeff in items:
            if not isinstance(period, int) or isinstance(period, bool) or period < 1:
                raise ValueError(f"invalid period {period!r}: periods are integers >= 1")
            acc[period] = acc.get(period, 0) + Fraction(coeff)
        object.__setattr__(
            self, "_terms", {p: _normalize(c) for p, c in acc.items() if c}
        )

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LambdaDivisor is immutable")

    # -- inspection ---------------------------------------------------------

    def items(self) -> tuple[tuple[int, Coeff], ...]:
        """Terms as (period, coefficient) pairs, periods ascending."""
        return tuple(sorted(self._terms.items()))

    def coefficient(self, period: int) -> Coeff:
        return self._terms.get(period, 0)

    def periods(self) -> tuple[int, ...]:
        return tuple(sorted(self._terms))

    def coefficient_sum(self) -> Coeff:
        """Sum of all coefficients (the (t - 1)-multiplicity, see module doc)."""
        return _normalize(sum(self._terms.values(), Fraction(0)))

    def weighted_degree(self) -> Coeff:
        """Sum of period * coefficient: the degree of the encoded polynomial."""
        return _normalize(sum((p * Fraction(c) for p, c in self._terms.items()), Fraction(0)))

    @property
    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) for c in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, Coeff]]:
        return iter(self.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaDivisor):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {c}" for p, c in self.items())
        return f"LambdaDivisor({{{body}}})"

    def __reduce__(self):
        return (LambdaDivisor, (self._terms,))

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "LambdaDivisor") -> "LambdaDivisor":
        if not isinstance(other, LambdaDivisor):
            return NotImplemented
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return LambdaDivisor(out)

    def __neg__(self) -> "LambdaDivisor":
        return LambdaDivisor({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "LambdaDivisor") -> "LambdaDivisor":
        if not isinstance(other, LambdaDivisor):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coeff) -> "LambdaDivisor":
        c = Fraction(c)
        if not c:
            return LambdaDivisor()
        return LambdaDivisor({p: a * c for p, a in self._terms.items()})

    def __mul__(self, other) -> "LambdaDivisor":
        if isinstance(other, LambdaDivisor):
            out: dict[int, Fraction] = {}
            for p, a in self._terms.items():
                for q, b in other._terms.items():
                    key = lcm(p, q)
                    out[key] = out.get(key, 0) + gcd(p, q) * Fraction(a) * Fraction(b)
            return LambdaDivisor(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def assert_integral(self) -> "LambdaDivisor":
        """Return self with integer coefficients, or raise.

        Raises :class:`NonIntegralDivisorError` naming the first offending
        period (smallest) if any coefficient is not an integer.
        """
        for p, c in self.items():
            if isinstance(c, Fraction):
                raise NonIntegralDivisorError(p, c)
        return self


def lambda_(n: int) -> LambdaDivisor:
    """The generator L(n): the divisor of t^n - 1.  Requires n >= 1."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"invalid period {n!r}: periods are integers >= 1")
    return LambdaDivisor({n: 1})


#: The multiplicative identity L(1) = {1}.
ONE = lambda_(1)

#: The empty divisor.
ZERO = LambdaDivisor()
