"""Named q-series builders.

Everything here returns a TruncatedSeries.  Pochhammer factors f_a expand by
Euler's pentagonal number theorem, so they have O(sqrt(order/a)) nonzero
terms; eta quotients are assembled from them by multiplication, inversion,
and q-power shifts.  The theta series phi and psi are built as direct lattice
sums, independent of any product form, so comparing the two routes is a real
cross-check and not a tautology.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

from .etaexpr import EtaQuotient, parse_eta_expression
from .series import Ring, TruncatedSeries


class ThetaKind(Enum):
    PHI_PLUS = "phi"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi"
    PSI_MINUS = "psi-"


@lru_cache(maxsize=512)
def pochhammer(a: int, ring: Ring, order: int) -> TruncatedSeries:
    """f_a = (q^a; q^a)_infinity = sum_j (-1)^j q^{a*j(3j-1)/2} over all integers j."""
    if a < 1:
        raise ValueError(f"subscript must be >= 1, got {a}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    coeffs = [0] * order
    coeffs[0] = 1
    j = 1
    while True:
        e1 = a * j * (3 * j - 1) // 2
        if e1 >= order:
            break
        sign = -1 if j & 1 else 1
        coeffs[e1] += sign
        e2 = a * j * (3 * j + 1) // 2
        if e2 < order:
            coeffs[e2] += sign
        j += 1
    return TruncatedSeries(ring, coeffs)


def _inflate(series: TruncatedSeries, a: int, order: int) -> TruncatedSeries:
    """Substitute q -> q^a, filling up to the requested order."""
    coeffs = [0] * order
    for i, c in enumerate(series.coeffs):
        e = i * a
        if e >= order:
            break
        coeffs[e] = c
    return TruncatedSeries(series.ring, coeffs, _canonical=True)


@lru_cache(maxsize=512)
def _inverse_pochhammer(a: int, ring: Ring, order: int) -> TruncatedSeries:
    # 1/f_a is 1/f_1 in the variable q^a, so invert at the reduced order and
    # inflate; that keeps the recurrence length at order/a.
    if a == 1:
        return pochhammer(1, ring, order).invert()
    reduced = _inverse_pochhammer(1, ring, (order + a - 1) // a)
    return _inflate(reduced, a, order)


def eta_quotient(eq: EtaQuotient, ring: Ring, order: int) -> TruncatedSeries:
    """Evaluate coeff * q^q_power * prod f_a^b as a truncated series."""
    series = TruncatedSeries.one(ring, order)
    for a, b in eq.factors:
        base = pochhammer(a, ring, order) if b > 0 else _inverse_pochhammer(a, ring, order)
        series = series * (base ** abs(b))
    if eq.coeff != 1:
        series = series.scale(eq.coeff)
    if eq.q_power:
        series = series.shift(eq.q_power)
    return series


def evaluate_eta_expression(expr, ring: Ring, order: int) -> TruncatedSeries:
    """Evaluate a parsed term list, or a source string, as a sum of quotients."""
    if isinstance(expr, str):
        expr = parse_eta_expression(expr)
    total = TruncatedSeries.zero(ring, order)
    for term in expr:
        total = total + eta_quotient(term, ring, order)
    return total


def theta(kind: ThetaKind, ring: Ring, order: int) -> TruncatedSeries:
    """Theta series as explicit lattice sums.

    phi(q)  = 1 + 2*sum_{n>=1} q^{n^2}          phi(-q) twists by (-1)^n
    psi(q)  = sum_{n>=0} q^{n(n+1)/2}           psi(-q) twists by (-1)^{n(n+1)/2}
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    kind = ThetaKind(kind)
    coeffs = [0] * order
    if kind in (ThetaKind.PHI_PLUS, ThetaKind.PHI_MINUS):
        coeffs[0] = 1
        n = 1
        while n * n < order:
            if kind is ThetaKind.PHI_PLUS or n % 2 == 0:
                coeffs[n * n] += 2
            else:
                coeffs[n * n] -= 2
            n += 1
    else:
        n = 0
        while n * (n + 1) // 2 < order:
            e = n * (n + 1) // 2
            if kind is ThetaKind.PSI_PLUS or e % 2 == 0:
                coeffs[e] += 1
            else:
                coeffs[e] -= 1
            n += 1
    return TruncatedSeries(ring, coeffs)


@lru_cache(maxsize=16)
def a_series(ring: Ring, order: int) -> TruncatedSeries:
    """Generating function of the signed cubic-partition count, built as f1/f4.

    A(n) counts partitions of n where even parts come in two colors, weighted
    +1 for an even number of parts and -1 for odd.
    """
    return eta_quotient(EtaQuotient(((1, 1), (4, -1))), ring, order)
