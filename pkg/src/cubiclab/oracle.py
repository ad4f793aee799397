"""Ground-truth counting for cubic partitions, independent of any series algebra.

A cubic partition of n is a multiset of positive parts summing to n in which
every even part carries one of two colors.  The signed count A(n) weighs each
partition by +1 when its number of parts is even and -1 when odd.

Two routes are provided on purpose:

  * enumerate_cubic walks every partition explicitly (small n only) and
    tallies the two parities separately, so it is unarguably the definition;
  * signed_count_dp divides the all-ones series by each factor (1 + q^k)
    in place, which is fast enough for tens of thousands of values.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_ENUMERATION_CAP = 40


@dataclass(frozen=True)
class OracleCount:
    n: int
    even_parts_count: int
    odd_parts_count: int

    @property
    def a_value(self) -> int:
        return self.even_parts_count - self.odd_parts_count


def enumerate_cubic(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> OracleCount:
    """Tally cubic partitions of n by parity of the number of parts.

    Parts are chosen in canonical order (value descending, color index
    ascending for equal values), so each multiset is visited exactly once.
    Refuses n above the cap; use signed_count_dp for large n.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > cap:
        raise ValueError(
            f"n={n} exceeds the enumeration cap ({cap}); use signed_count_dp for large n"
        )
    if n == 0:
        return OracleCount(0, 1, 0)
    # Type table: one entry per (value, color), value descending.
    values = []
    for v in range(n, 0, -1):
        values.append(v)
        if v % 2 == 0:
            values.append(v)
    # first_le[r] = least type index whose value fits in remainder r.
    first_le = [0] * (n + 1)
    for r in range(n - 1, -1, -1):
        width = 1 if (r + 1) % 2 else 2
        first_le[r] = first_le[r + 1] + width
    tallies = [0, 0]  # even parity, odd parity

    def walk(start: int, remaining: int, parity: int) -> None:
        i = first_le[remaining]
        if i < start:
            i = start
        end = len(values)
        while i < end:
            rest = remaining - values[i]
            if rest == 0:
                tallies[parity ^ 1] += 1
            else:
                walk(i, rest, parity ^ 1)
            i += 1

    walk(0, n, 0)
    return OracleCount(n, tallies[0], tallies[1])


def signed_count_dp(limit: int) -> list[int]:
    """A(0), ..., A(limit-1) by dividing out (1+q^k), twice for even k.

    The product of 1/(1+q^k) over all parts-with-color is exactly the signed
    generating function, and each division is the in-place ascending pass
    arr[i] -= arr[i-k].
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    arr = [0] * limit
    arr[0] = 1
    for k in range(1, limit):
        for _ in range(2 if k % 2 == 0 else 1):
            for i in range(k, limit):
                arr[i] -= arr[i - k]
    return arr


def total_count_dp(limit: int) -> list[int]:
    """Unsigned totals: partitions of n with two-colored even parts."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    arr = [0] * limit
    arr[0] = 1
    for k in range(1, limit):
        for _ in range(2 if k % 2 == 0 else 1):
            for i in range(k, limit):
                arr[i] += arr[i - k]
    return arr


def oracle_table(limit: int) -> list[OracleCount]:
    """Even/odd tallies for all n < limit, derived from the two DP runs."""
    signed = signed_count_dp(limit)
    totals = total_count_dp(limit)
    rows = []
    for n in range(limit):
        if (totals[n] + signed[n]) % 2:
            raise AssertionError(f"parity split impossible at n={n}")
        even = (totals[n] + signed[n]) // 2
        rows.append(OracleCount(n, even, even - signed[n]))
    return rows
