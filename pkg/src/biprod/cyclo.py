"""Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is a polynomial in zeta_N of degree < phi(N), reduced modulo the
N-th cyclotomic polynomial.  Coefficients are stored as integer numerators
over one positive common denominator, kept in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (low degree first), den monic up to sign
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first.

    >>> cyclotomic_poly(4)
    (1, 0, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


class CyclotomicField:
    """Reduction data for Q(zeta_N); use ``field(N)`` to get the shared instance."""

    def __init__(self, n: int):
        self.N = n
        phi = cyclotomic_poly(n)
        self.degree = len(phi) - 1
        d = self.degree
        # rows[k] = x^k mod Phi_N for 0 <= k < max(N, 2d-1)
        rows = []
        cur = [1] + [0] * (d - 1)
        for _ in range(max(n, 2 * d - 1)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * phi[i]
        self._rows = rows
        self._high = rows[d:]

    def root(self, k: int) -> "CycloNum":
        return CycloNum(self.N, self._rows[k % self.N], 1)

    def reduce(self, poly: list[int]) -> list[int]:
        d = self.degree
        out = list(poly[:d]) + [0] * max(0, d - len(poly))
        for k in range(d, len(poly)):
            c = poly[k]
            if c:
                row = self._rows[k] if k < len(self._rows) else self._power_row(k)
                for i in range(d):
                    out[i] += c * row[i]
        return out

    def _power_row(self, k: int) -> tuple[int, ...]:
        return self._rows[k % self.N]

    def __repr__(self) -> str:
        return f"CyclotomicField({self.N})"


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = den
    for a in nums:
        if g == 1:
            break
        g = gcd(g, a)
    if g != 1:
        nums = [a // g for a in nums]
        den //= g
    return tuple(nums), den


class CycloNum:
    """Element of Q(zeta_N) in the power basis modulo Phi_N."""

    __slots__ = ("N", "nums", "den", "_hash")

    def __init__(self, n: int, nums, den: int = 1, _normal: bool = False):
        self.N = n
        if _normal:
            self.nums, self.den = nums, den
        else:
            deg = field(n).degree
            nums = list(nums)
            if len(nums) != deg:
                nums = field(n).reduce(nums)
            self.nums, self.den = _normalize(nums, den)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_rational(cls, n: int, q) -> "CycloNum":
        q = Fraction(q)
        deg = field(n).degree
        return cls(n, (q.numerator,) + (0,) * (deg - 1), q.denominator)

    @classmethod
    def zero(cls, n: int) -> "CycloNum":
        return cls(n, (0,) * field(n).degree, 1, _normal=True)

    @classmethod
    def one(cls, n: int) -> "CycloNum":
        return cls.from_rational(n, 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def lift(self, m: int) -> "CycloNum":
        """Re-express in Q(zeta_m) for a multiple m of the conductor."""
        if m == self.N:
            return self
        if m % self.N:
            raise ValueError(f"conductor {self.N} does not divide {m}")
        step = m // self.N
        poly = [0] * (step * (len(self.nums) - 1) + 1)
        for k, a in enumerate(self.nums):
            poly[k * step] = a
        return CycloNum(m, field(m).reduce(poly), self.den)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.N == self.N:
                return other
            raise ValueError(f"conductor mismatch {self.N} vs {other.N}; lift first")
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.N, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycloNum(self.N, [a + b for a, b in zip(self.nums, o.nums)], self.den)
        d1, d2 = self.den, o.den
        return CycloNum(self.N, [a * d2 + b * d1 for a, b in zip(self.nums, o.nums)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.N, tuple(-a for a in self.nums), self.den, _normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum(self.N, [a * other for a in self.nums], self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.nums, o.nums
        d = len(a)
        if d == 1:
            return CycloNum(self.N, (a[0] * b[0],), self.den * o.den)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloNum(self.N, field(self.N).reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_poly(self.N)]
        a = _trim([Fraction(c) for c in self.nums])
        # invariant: s0*self = r0, s1*self = r1 (mod phi)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r1 is a nonzero constant since phi is irreducible
        c = r1[0]
        inv = [x / c for x in s1]
        den = lcm(*(x.denominator for x in inv)) if inv else 1
        nums = [int(x * den) * self.den for x in inv]
        deg = field(self.N).degree
        nums = nums + [0] * (deg - len(nums)) if len(nums) <= deg else field(self.N).reduce(nums)
        return CycloNum(self.N, nums, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNum.one(self.N)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.N, other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        if other.N != self.N:
            m = lcm(self.N, other.N)
            return self.lift(m) == other.lift(m)
        return self.den == other.den and self.nums == other.nums

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.nums, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"CycloNum({self.N}: {' + '.join(terms) or '0'})"


def embed_root(n: int, k: int) -> CycloNum:
    """The class of zeta_n^k."""
    return field(n).root(k)


# small dense polynomial helpers over Fraction (low degree first) ----------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _psub(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, q):
    p = list(p)
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return [Fraction(0)], _trim(p)
    out = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = p[k + dq] / q[-1]
        out[k] = c
        if c:
            for i, b in enumerate(q):
                p[k + i] -= c * b
    return _trim(out), _trim(p[:dq] or [Fraction(0)])


def mat_inverse(M: list, n_conductor: int) -> list:
    """Inverse of a square matrix of CycloNum entries by Gauss-Jordan elimination."""
    n = len(M)
    zero = CycloNum.zero(n_conductor)
    one = CycloNum.one(n_conductor)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv if not x.is_zero() else x for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                fct = aug[r][col]
                aug[r] = [x - fct * y if not y.is_zero() else x for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_consistent(rows: list, rhs: list, n_vars: int, n_conductor: int):
    """One solution of rows * x = rhs, or None if inconsistent."""
    zero = CycloNum.zero(n_conductor)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n_vars):
        piv = next((i for i in range(r, len(aug)) if not aug[i][col].is_zero()), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and not aug[i][col].is_zero():
                fct = aug[i][col]
                aug[i] = [x - fct * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if not aug[i][-1].is_zero():
            return None
    x = [zero] * n_vars
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return x
