"""Arithmetic-progression extraction on truncated series.

dissect(s, k, r) fuses three steps: keep the exponents congruent to r mod k,
divide by q^r, and substitute q^k -> q.  The result's n-th coefficient is
s[k*n + r].  recombine is the inverse interleaving.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import RingMismatchError, TruncatedSeries


def dissect(s: TruncatedSeries, k: int, r: int) -> TruncatedSeries:
    """Component series sum_n s[k*n + r] q^n, truncated where s runs out."""
    if k < 2:
        raise ValueError(f"dissection modulus must be >= 2, got {k}")
    if not 0 <= r < k:
        raise ValueError(f"residue {r} out of range [0, {k})")
    return TruncatedSeries(s.ring, s.coeffs[r::k], _canonical=True)


@dataclass(frozen=True)
class DissectionResult:
    """All k components of a dissection, indexed by residue."""

    k: int
    components: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        if len(self.components) != self.k:
            raise ValueError(f"expected {self.k} components, got {len(self.components)}")


def dissect_all(s: TruncatedSeries, k: int) -> DissectionResult:
    return DissectionResult(k, tuple(dissect(s, k, r) for r in range(k)))


def recombine(d: DissectionResult, order: int) -> TruncatedSeries:
    """Interleave components back: sum_r q^r * component_r(q^k), truncated."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    ring = d.components[0].ring
    coeffs = [0] * order
    for r, comp in enumerate(d.components):
        if comp.ring != ring:
            raise RingMismatchError("dissection components must share one ring")
        for i, c in enumerate(comp.coeffs):
            e = i * d.k + r
            if e >= order:
                break
            coeffs[e] = c
    return TruncatedSeries(ring, coeffs, _canonical=True)
