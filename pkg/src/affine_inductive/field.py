"""Exact arithmetic in GF(p^n).

Elements are polynomials of degree < n over Z_p, stored as coefficient tuples
with the constant term first, reduced modulo a fixed monic irreducible
modulus. A :class:`FieldContext` fixes the realization: the modulus is the
lexicographically least monic irreducible of degree n (constant term compared
first), the generator is the primitive element with the least integer code
(``sum(c_i * p**i)``), and
the canonical enumeration of k is ``0, g^0, g^1, ..., g^(q-2)``.

That enumeration is the indexing contract for everything downstream: the
element with enumeration index ``i > 0`` is ``g^(i-1)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContextMismatch, DivisionByZero, NonPrime, UnsupportedSize

DEFAULT_MAX_ORDER = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n`` and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            return (p, n) if r == 1 else None
    return None


def prime_powers_up_to(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if prime_power_decomposition(q)]


# polynomial helpers: coefficient lists over Z_p, constant term first


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    r = _trim(list(num))
    den = _trim(list(den))
    inv_lead = pow(den[-1], -1, p)
    while len(r) >= len(den):
        f = (r[-1] * inv_lead) % p
        shift = len(r) - len(den)
        for i, c in enumerate(den):
            r[shift + i] = (r[shift + i] - f * c) % p
        _trim(r)
    return r


def _poly_mul(u: Sequence[int], v: Sequence[int], p: int) -> list[int]:
    if not u or not v:
        return []
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(_trim(list(modulus))) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n, constant term compared first.

    The returned tuple has length n + 1 and ends with the leading 1.
    """
    # itertools.product varies the last position fastest, so the first
    # position (the constant term) is the most significant in this order
    for low in itertools.product(range(p), repeat=n):
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {n} over Z_{p}")


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An element of a specific :class:`FieldContext`.

    ``coeffs`` has length n with entries in ``0..p-1`` (constant term first).
    """

    ctx: FieldContext
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.ctx._index[self.coeffs]

    @property
    def log(self) -> int:
        """Discrete log to the base of the generator; undefined for zero."""
        i = self.index
        if i == 0:
            raise DivisionByZero("discrete log of zero")
        return i - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return add(self, neg(other))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return add(other, neg(self))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return mul(self, inv(other))

    def __pow__(self, e: int):
        if self.is_zero():
            if e <= 0:
                raise DivisionByZero("0 ** non-positive")
            return self
        ctx = self.ctx
        return ctx.elements[1 + (self.log * e) % (ctx.q - 1)]

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_element(self.coeffs)

    def __repr__(self):
        return f"GF({self.ctx.q})<{self}>"


def format_element(coeffs: Sequence[int]) -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if not c:
            continue
        mono = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


class FieldContext:
    """A concrete realization of GF(p^n).

    Immutable after construction. Besides the defining data it carries
    lookup tables over enumeration indices (``add_table``, ``mul_table``,
    ``neg_table``, ``inv_table``, ``trace_table``) that the numeric layers
    use directly.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._index: dict[tuple[int, ...], int] = {}

        zero = (0,) * n
        one = (1,) + (0,) * (n - 1)
        gen = None
        # candidates in integer-code order: code = sum(c_i * p**i)
        for code in range(1, self.q):
            cand = tuple((code // p**i) % p for i in range(n))
            if self._order(cand) == self.q - 1:
                gen = cand
                break
        assert gen is not None
        powers = [one]
        for _ in range(self.q - 2):
            powers.append(self._pmul(powers[-1], gen))
        coeff_list = [zero] + powers
        self._index = {c: i for i, c in enumerate(coeff_list)}
        if len(self._index) != self.q:
            raise AssertionError("generator powers repeat")
        self.elements: tuple[FieldElement, ...] = tuple(FieldElement(self, c) for c in coeff_list)
        self.generator = self.elements[self._index[gen]]
        self.log_table = {x: i - 1 for i, x in enumerate(self.elements) if i > 0}

        q, d = self.q, self.q - 1
        idx = np.arange(q)
        self.neg_table = np.array(
            [self._index[tuple((-c) % p for c in cc)] for cc in coeff_list], dtype=np.int64
        )
        add = np.empty((q, q), dtype=np.int64)
        for i, u in enumerate(coeff_list):
            for j, v in enumerate(coeff_list):
                add[i, j] = self._index[tuple((a + b) % p for a, b in zip(u, v))]
        self.add_table = add
        logs = idx - 1
        mul = np.zeros((q, q), dtype=np.int64)
        if d:
            mul[1:, 1:] = 1 + (logs[1:, None] + logs[None, 1:]) % d
        self.mul_table = mul
        self.inv_table = np.zeros(q, dtype=np.int64)
        self.inv_table[1:] = 1 + (-logs[1:]) % d
        self.trace_table = np.array([self._trace_coeffs(c) for c in coeff_list], dtype=np.int64)

    # construction-time polynomial arithmetic

    def _pmul(self, u, v):
        r = _poly_mod(_poly_mul(u, v, self.p), self.modulus, self.p)
        return tuple(r + [0] * (self.n - len(r)))

    def _order(self, c) -> int:
        one = (1,) + (0,) * (self.n - 1)
        x, k = c, 1
        while x != one:
            x = self._pmul(x, c)
            k += 1
            if k > self.q:
                return 0
        return k

    def _trace_coeffs(self, c) -> int:
        total = [0] * self.n
        x = c
        for _ in range(self.n):
            total = [(s + t) % self.p for s, t in zip(total, x)]
            y = (1,) + (0,) * (self.n - 1)
            for _ in range(self.p):
                y = self._pmul(y, x)
            x = y
        if any(total[1:]):
            raise AssertionError("trace left the prime field")
        return total[0]

    # element construction

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.n:
            c = _poly_mod(c, self.modulus, self.p)
        c = tuple(c + [0] * (self.n - len(c)))
        return self.elements[self._index[c]]

    def from_int(self, value: int) -> FieldElement:
        """Element whose coefficients are the base-p digits of ``value`` (low digit = constant term)."""
        digits = []
        value = int(value)
        if value < 0 or value >= self.q:
            if self.n == 1:
                value %= self.p
            else:
                raise ValueError(f"integer code {value} out of range for GF({self.q})")
        for _ in range(self.n):
            digits.append(value % self.p)
            value //= self.p
        return self.element(digits)

    def parse(self, text: str) -> FieldElement:
        """Parse an element literal.

        Accepted forms: an integer code (base-p digits, constant term lowest),
        ``g`` or ``g^k`` for powers of the generator, or a polynomial in ``x``
        such as ``x^2+2x+1``.
        """
        s = text.replace(" ", "").lower()
        if re.fullmatch(r"-?\d+", s):
            return self.from_int(int(s))
        m = re.fullmatch(r"g(?:\^(-?\d+))?", s)
        if m:
            return self.generator ** int(m.group(1) or 1)
        coeffs = [0] * max(self.n, 1)
        if not re.fullmatch(r"[0-9x^+]+", s):
            raise ValueError(f"cannot parse field element {text!r}")
        for term in s.split("+"):
            tm = re.fullmatch(r"(\d*)(x(?:\^(\d+))?)?", term)
            if not tm or not term:
                raise ValueError(f"cannot parse field element {text!r}")
            c = int(tm.group(1)) if tm.group(1) else 1
            deg = 0 if not tm.group(2) else int(tm.group(3) or 1)
            if deg >= len(coeffs):
                coeffs.extend([0] * (deg + 1 - len(coeffs)))
            coeffs[deg] += c
        return self.element(coeffs)

    @property
    def zero(self) -> FieldElement:
        return self.elements[0]

    @property
    def one(self) -> FieldElement:
        return self.elements[1]

    @property
    def units(self) -> tuple[FieldElement, ...]:
        """k^x in generator-power order."""
        return self.elements[1:]

    def index(self, x: FieldElement) -> int:
        self._own(x)
        return self._index[x.coeffs]

    def _own(self, x: FieldElement) -> None:
        if x.ctx is not self and x.ctx != self:
            raise ContextMismatch(f"element of {x.ctx} used with {self}")

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": list(self.generator.coeffs),
        }

    def __eq__(self, other):
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldContext(p={self.p}, n={self.n}, modulus={format_element(self.modulus)})"


_CACHE: dict[tuple[int, int], FieldContext] = {}


def build_field(p: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldContext:
    """Build (or fetch the cached) canonical realization of GF(p^n)."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be >= 1")
    if p**n > max_order:
        raise UnsupportedSize(f"q = {p}^{n} = {p**n} exceeds bound {max_order}")
    key = (p, n)
    if key not in _CACHE:
        _CACHE[key] = FieldContext(p, n, least_irreducible(p, n))
    return _CACHE[key]


def field_of_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldContext:
    pn = prime_power_decomposition(q)
    if pn is None:
        raise NonPrime(f"{q} is not a prime power")
    return build_field(*pn, max_order=max_order)


def _same(x: FieldElement, y: FieldElement) -> FieldContext:
    if x.ctx is not y.ctx and x.ctx != y.ctx:
        raise ContextMismatch(f"{x.ctx} vs {y.ctx}")
    return x.ctx


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    ctx = _same(x, y)
    return ctx.elements[ctx.add_table[x.index, y.index]]


def neg(x: FieldElement) -> FieldElement:
    return x.ctx.elements[x.ctx.neg_table[x.index]]


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    ctx = _same(x, y)
    return ctx.elements[ctx.mul_table[x.index, y.index]]


def inv(x: FieldElement) -> FieldElement:
    if x.is_zero():
        raise DivisionByZero("inverse of zero")
    return x.ctx.elements[x.ctx.inv_table[x.index]]


def trace(x: FieldElement) -> int:
    """Absolute trace x + x^p + ... + x^(p^(n-1)), an integer in 0..p-1."""
    return int(x.ctx.trace_table[x.index])


def frobenius(x: FieldElement) -> FieldElement:
    return x**x.ctx.p if not x.is_zero() else x
