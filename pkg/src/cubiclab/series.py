"""Truncated formal power series over exact integers or integers mod m.

A series is a finite coefficient prefix: coeffs[n] is the q^n coefficient and
everything at or beyond the truncation order is unknown, not zero.  Binary
operations therefore align both operands to the shorter order, and equality
means "equal up to O(q^N)" for the common N.
"""

from __future__ import annotations

import math

import numpy as np

# Accumulator headroom for int64 arithmetic in the numpy fast path.
_INT64_SAFE = 1 << 62


class RingMismatchError(ValueError):
    """Two series from different coefficient rings were combined."""


class NonInvertibleError(ValueError):
    """A series with a non-unit constant term was inverted."""


class Ring:
    """Coefficient ring: exact unbounded integers (modulus None) or Z/m.

    Mod-m coefficients are kept canonical in [0, m).
    """

    __slots__ = ("modulus",)

    def __init__(self, modulus: int | None = None):
        if modulus is not None and modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        self.modulus = modulus

    @classmethod
    def exact(cls) -> "Ring":
        return cls(None)

    @classmethod
    def mod(cls, m: int) -> "Ring":
        return cls(m)

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def normalize(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return math.gcd(x, self.modulus) == 1

    def unit_inverse(self, x: int) -> int:
        if self.modulus is None:
            if x not in (1, -1):
                raise NonInvertibleError(f"{x} is not a unit in {self}")
            return x
        try:
            return pow(x, -1, self.modulus)
        except ValueError as exc:
            raise NonInvertibleError(f"{x} is not a unit in {self}") from exc

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("Ring", self.modulus))

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"

    def __repr__(self) -> str:
        return "Ring.exact()" if self.modulus is None else f"Ring.mod({self.modulus})"


EXACT = Ring.exact()


class TruncatedSeries:
    """Immutable truncated power series over a Ring.

    Coefficients are stored as a tuple, so instances are safe to share and
    to cache.  Do not rebind the attributes.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs, *, _canonical: bool = False):
        self.ring = ring
        if _canonical:
            self.coeffs = tuple(coeffs)
        else:
            norm = ring.normalize
            self.coeffs = tuple(norm(c) for c in coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, order: int) -> "TruncatedSeries":
        return cls(ring, (0,) * order, _canonical=True)

    @classmethod
    def one(cls, ring: Ring, order: int) -> "TruncatedSeries":
        return cls.monomial(ring, order, 0)

    @classmethod
    def monomial(cls, ring: Ring, order: int, exponent: int, coeff: int = 1) -> "TruncatedSeries":
        if exponent < 0:
            raise ValueError(f"exponent must be >= 0, got {exponent}")
        c = [0] * order
        if exponent < order:
            c[exponent] = ring.normalize(coeff)
        return cls(ring, c, _canonical=True)

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < len(self.coeffs):
            raise IndexError(f"coefficient {n} is beyond truncation order {len(self.coeffs)}")
        return self.coeffs[n]

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        """Least exponent below min(order) where the two series differ, else None."""
        self._require_same_ring(other)
        a, b = self.coeffs, other.coeffs
        for i in range(min(len(a), len(b))):
            if a[i] != b[i]:
                return i
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        n = min(len(self.coeffs), len(other.coeffs))
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None  # equality is order-relative

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries({self.ring}, order={len(self.coeffs)}, [{head}{tail}])"

    # -- arithmetic -------------------------------------------------------

    def _require_same_ring(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot combine series over {self.ring} and {other.ring}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_ring(other)
        m = self.ring.modulus
        if m is None:
            c = [x + y for x, y in zip(self.coeffs, other.coeffs)]
        else:
            c = [(x + y) % m for x, y in zip(self.coeffs, other.coeffs)]
        return TruncatedSeries(self.ring, c, _canonical=True)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_ring(other)
        m = self.ring.modulus
        if m is None:
            c = [x - y for x, y in zip(self.coeffs, other.coeffs)]
        else:
            c = [(x - y) % m for x, y in zip(self.coeffs, other.coeffs)]
        return TruncatedSeries(self.ring, c, _canonical=True)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, c: int) -> "TruncatedSeries":
        c = self.ring.normalize(c)
        m = self.ring.modulus
        if m is None:
            out = [c * x for x in self.coeffs]
        else:
            out = [(c * x) % m for x in self.coeffs]
        return TruncatedSeries(self.ring, out, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_ring(other)
        n = min(len(self.coeffs), len(other.coeffs))
        if n == 0:
            return TruncatedSeries(self.ring, (), _canonical=True)
        a = self.coeffs[:n]
        b = other.coeffs[:n]
        ta = [(e, c) for e, c in enumerate(a) if c]
        tb = [(e, c) for e, c in enumerate(b) if c]
        # Iterate the sparser factor: pentagonal factors have O(sqrt(n))
        # nonzero terms, giving O(n*sqrt(n)) products against a dense factor.
        if len(tb) < len(ta):
            ta, a, tb, b = tb, b, ta, a
        m = self.ring.modulus
        if not ta or not tb:
            return TruncatedSeries.zero(self.ring, n)
        if m is None:
            out = _mul_sparse_exact(ta, b, n)
        else:
            out = _mul_sparse_mod(ta, b, n, m)
        return TruncatedSeries(self.ring, out, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (self ** (-e)).invert()
        result = TruncatedSeries.one(self.ring, len(self.coeffs))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse, via b_n = -a_0^{-1} * sum_{k>=1} a_k b_{n-k}.

        The inner sum iterates only the nonzero a_k, so inverting a pentagonal
        expansion costs O(order^1.5).
        """
        n = len(self.coeffs)
        if n == 0:
            return self
        a = self.coeffs
        ring = self.ring
        if not ring.is_unit(a[0]):
            raise NonInvertibleError(
                f"cannot invert series: constant term {a[0]} is not a unit in {ring}"
            )
        inv0 = ring.unit_inverse(a[0])
        nz = [(k, c) for k, c in enumerate(a) if k and c]
        b = [0] * n
        b[0] = ring.normalize(inv0)
        m = ring.modulus
        if m is None:
            for i in range(1, n):
                s = 0
                for k, c in nz:
                    if k > i:
                        break
                    bk = b[i - k]
                    if bk:
                        s += c * bk
                b[i] = -inv0 * s
        else:
            neg = (-inv0) % m
            for i in range(1, n):
                s = 0
                for k, c in nz:
                    if k > i:
                        break
                    bk = b[i - k]
                    if bk:
                        s += c * bk
                b[i] = (neg * s) % m
        return TruncatedSeries(ring, b, _canonical=True)

    def shift(self, s: int) -> "TruncatedSeries":
        """Multiply by q^s: prepend s zeros, dropping what falls off the end."""
        if s < 0:
            raise ValueError(f"shift must be >= 0, got {s}")
        n = len(self.coeffs)
        if s == 0 or n == 0:
            return self
        if s >= n:
            return TruncatedSeries.zero(self.ring, n)
        return TruncatedSeries(self.ring, (0,) * s + self.coeffs[: n - s], _canonical=True)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order < 0:
            raise ValueError(f"order must be >= 0, got {order}")
        if order >= len(self.coeffs):
            return self
        return TruncatedSeries(self.ring, self.coeffs[:order], _canonical=True)

    def reduce_mod(self, m: int) -> "TruncatedSeries":
        """Project an exact-integer series into Z/m."""
        if not self.ring.is_exact:
            raise RingMismatchError("reduce_mod expects a series over exact integers")
        return TruncatedSeries(Ring.mod(m), self.coeffs)


def _mul_sparse_exact(sparse: list[tuple[int, int]], dense, n: int) -> list[int]:
    out = [0] * n
    for e, c in sparse:
        limit = n - e
        for i in range(limit):
            v = dense[i]
            if v:
                out[e + i] += c * v
    return out


def _mul_sparse_mod(sparse: list[tuple[int, int]], dense, n: int, m: int) -> list[int]:
    step = (m - 1) * (m - 1)
    if step >= _INT64_SAFE:
        # Modulus too large for int64 accumulation; plain Python big ints.
        out = [0] * n
        for e, c in sparse:
            limit = n - e
            for i in range(limit):
                v = dense[i]
                if v:
                    out[e + i] = (out[e + i] + c * v) % m
        return out
    arr = np.fromiter(dense, dtype=np.int64, count=n)
    out = np.zeros(n, dtype=np.int64)
    budget = _INT64_SAFE // step
    since = 0
    for e, c in sparse:
        out[e:] += c * arr[: n - e]
        since += 1
        if since >= budget:
            out %= m
            since = 0
    out %= m
    return out.tolist()
