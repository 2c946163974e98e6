"""Truncated multivariable Laurent series with exact coefficients.

Coefficients live in a sympy domain: `QQ` for rational point mode or a
fraction field `QQ.frac_field(c0, c1, ...)` for symbolic mode. Each variable
carries an exclusive truncation order (None when the series is exact in that
variable). Products keep only what both factors determine, and reading a
coefficient at or past a truncation order raises `InconsistentTruncation`.

A coefficient is known when its exponent is below the order in every
truncated variable. Unknown tails never reach below the known valuation in
any variable, so Laurent parts must be exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from sympy.polys.domains import QQ

from src.errors import InconsistentTruncation
from src.utils.rational import to_domain

Exponent = tuple[int, ...]


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncSeries:
    """sum_a coeff[a] x^a over the named variables, known below `orders`."""

    __slots__ = ("names", "domain", "terms", "orders")

    def __init__(
        self,
        names: Sequence[str],
        terms: dict[Exponent, object] | None = None,
        orders: Sequence[int | None] | None = None,
        domain=QQ,
    ):
        self.names = tuple(names)
        self.domain = domain
        self.orders: tuple[int | None, ...] = (
            tuple(orders) if orders is not None else (None,) * len(self.names)
        )
        if len(self.orders) != len(self.names):
            raise ValueError("one truncation order per variable")
        self.terms: dict[Exponent, object] = {}
        for exp, value in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.names):
                raise ValueError(f"exponent {exp} does not match variables {self.names}")
            if self._beyond(exp):
                continue
            value = to_domain(value, domain)
            if value:
                self.terms[exp] = value

    # -------------------------------------------------------------------------
    # constructors
    # -------------------------------------------------------------------------

    @classmethod
    def constant(cls, names: Sequence[str], value, domain=QQ, orders=None) -> "TruncSeries":
        return cls(names, {(0,) * len(names): value}, orders, domain)

    @classmethod
    def variable(cls, names: Sequence[str], name: str, domain=QQ, orders=None) -> "TruncSeries":
        names = tuple(names)
        exp = tuple(1 if n == name else 0 for n in names)
        return cls(names, {exp: 1}, orders, domain)

    @classmethod
    def polynomial(
        cls, name: str, coefficients: Sequence, domain=QQ, order: int | None = None
    ) -> "TruncSeries":
        """Univariate sum_k coefficients[k] name^k."""
        terms = {(k,): c for k, c in enumerate(coefficients)}
        return cls((name,), terms, (order,), domain)

    def _like(self, terms: dict, orders: Sequence[int | None]) -> "TruncSeries":
        return TruncSeries(self.names, terms, orders, self.domain)

    # -------------------------------------------------------------------------
    # inspection
    # -------------------------------------------------------------------------

    def _beyond(self, exp: Exponent) -> bool:
        return any(o is not None and e >= o for e, o in zip(exp, self.orders))

    def is_exact_zero(self) -> bool:
        return not self.terms and all(o is None for o in self.orders)

    def valuation(self, k: int) -> int:
        """Lower bound for the exponent of variable k, the unknown tail included."""
        candidates = [exp[k] for exp in self.terms]
        if self.orders[k] is not None:
            candidates.append(self.orders[k])
        return min(candidates, default=0)

    def coeff(self, exp: Sequence[int]):
        """Coefficient of x^exp.

        Raises:
            InconsistentTruncation: exp is at or past a truncation order
        """
        exp = tuple(exp)
        if self._beyond(exp):
            raise InconsistentTruncation(
                f"coefficient {dict(zip(self.names, exp))} requested, series known below {self.orders}"
            )
        return self.terms.get(exp, self.domain.zero)

    def coefficients(self, k: int, start: int, stop: int) -> list:
        """Univariate helper: coefficients of x_k^start .. x_k^(stop-1), others at 0."""
        base = [0] * len(self.names)
        out = []
        for e in range(start, stop):
            base[k] = e
            out.append(self.coeff(base))
        return out

    def __repr__(self) -> str:
        return f"TruncSeries({self.names}, {len(self.terms)} terms, orders={self.orders})"

    # -------------------------------------------------------------------------
    # arithmetic
    # -------------------------------------------------------------------------

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.names != self.names or other.domain != self.domain:
                raise ValueError("series live over different variables or fields")
            return other
        return TruncSeries.constant(self.names, other, self.domain)

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, value in other.terms.items():
            terms[exp] = terms.get(exp, self.domain.zero) + value
        return self._like(terms, [_min_order(a, b) for a, b in zip(self.orders, other.orders)])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return self._like({exp: -v for exp, v in self.terms.items()}, self.orders)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._coerce(other) - self

    def scale(self, value) -> "TruncSeries":
        factor = to_domain(value, self.domain)
        return self._like({exp: v * factor for exp, v in self.terms.items()}, self.orders)

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        other = self._coerce(other)
        if self.is_exact_zero() or other.is_exact_zero():
            return TruncSeries(self.names, {}, None, self.domain)
        orders = []
        for k in range(len(self.names)):
            bound_a = None if self.orders[k] is None else self.orders[k] + other.valuation(k)
            bound_b = None if other.orders[k] is None else other.orders[k] + self.valuation(k)
            orders.append(_min_order(bound_a, bound_b))
        limits = TruncSeries(self.names, {}, orders, self.domain)
        terms: dict[Exponent, object] = {}
        for ea, va in self.terms.items():
            for eb, vb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                if limits._beyond(exp):
                    continue
                terms[exp] = terms.get(exp, self.domain.zero) + va * vb
        return self._like(terms, orders)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.constant(self.names, 1, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, orders: Sequence[int | None]) -> "TruncSeries":
        """Lower the truncation orders.

        Raises:
            InconsistentTruncation: an order would be raised past what is known
        """
        for new, old in zip(orders, self.orders):
            if old is not None and (new is None or new > old):
                raise InconsistentTruncation(f"cannot extend order {old} to {new}")
        return self._like(self.terms, orders)

    def inverse(self, order: int | None = None) -> "TruncSeries":
        """1/self for a univariate power series with nonzero constant term.

        Exact non-constant series need an explicit `order`.
        """
        if len(self.names) != 1:
            raise ValueError("inverse is only implemented for one variable")
        a0 = self.coeff((0,))
        if not a0 or any(exp[0] < 0 for exp in self.terms):
            raise ValueError("inverse needs a power series with nonzero constant term")
        target = _min_order(self.orders[0], order)
        tail = self - a0
        if target is None:
            if tail.terms:
                raise InconsistentTruncation("inverse of an exact non-constant series needs an order")
            return TruncSeries.constant(self.names, 1 / a0, self.domain)
        tail = tail.truncate((target,)).scale(-1 / a0)
        result = TruncSeries.constant(self.names, 1, self.domain, (target,))
        power = result
        for _ in range(target):
            power = power * tail
            if not power.terms:
                break
            result = result + power
        return result.scale(1 / a0)


def power_series_in(names: Iterable[str], name: str, coefficients: Sequence, domain=QQ, order=None):
    """sum_k coefficients[k] name^k as a series over all `names`."""
    names = tuple(names)
    k = names.index(name)
    terms = {}
    for e, value in enumerate(coefficients):
        exp = [0] * len(names)
        exp[k] = e
        terms[tuple(exp)] = value
    orders = [None] * len(names)
    orders[k] = order
    return TruncSeries(names, terms, orders, domain)
