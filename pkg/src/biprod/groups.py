"""Finite abelian groups C_m1 x ... x C_mn and double dihedral groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm

DEFAULT_CAP = 64


class CapExceeded(ValueError):
    """An exhaustive routine was asked to run on a group above the cap."""


def check_cap(order: int, cap: int | None, what: str = "exhaustive check") -> None:
    if cap is not None and order > cap:
        raise CapExceeded(f"{what}: group order {order} exceeds cap {cap}")


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if not self.moduli:
            raise ValueError("need at least one cyclic factor")
        if any(m < 2 for m in self.moduli):
            raise ValueError(f"cyclic orders must be >= 2, got {self.moduli}")

    @property
    def n(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.moduli, 1)

    @cached_property
    def M(self) -> int:
        m = self.moduli
        vals = [gcd(m[r], m[s], m[t]) for r, s, t in itertools.combinations(range(self.n), 3)]
        return lcm(*vals) if vals else 1

    @cached_property
    def N(self) -> int:
        """Conductor for witnesses and v: LCM of all m_j^2 and m_s m_t."""
        m = self.moduli
        vals = [x * x for x in m] + [m[s] * m[t] for s, t in itertools.combinations(range(self.n), 2)]
        return lcm(*vals)

    @cached_property
    def exponent(self) -> int:
        """LCM of the m_j; the value modulus of the representative 3-cocycles."""
        return lcm(*self.moduli)

    @property
    def L(self) -> int:
        if self.n != 2:
            raise ValueError("L is defined for two cyclic factors only")
        return lcm(*self.moduli)

    # elements ------------------------------------------------------------
    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.n

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def _check(self, x):
        if len(x) != self.n:
            raise ValueError(f"element {x} has wrong length for {self.moduli}")

    def mul(self, x, y) -> tuple[int, ...]:
        self._check(x)
        self._check(y)
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def inv(self, x) -> tuple[int, ...]:
        self._check(x)
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def canon(self, x) -> tuple[int, ...]:
        self._check(x)
        return tuple(a % m for a, m in zip(x, self.moduli))

    def power(self, x, k: int) -> tuple[int, ...]:
        return tuple((a * k) % m for a, m in zip(x, self.moduli))

    def __str__(self) -> str:
        return "abelian:" + ",".join(map(str, self.moduli))


def abelian_op(G: AbelianGroup, x, y=None, mode: str = "mul"):
    if mode == "mul":
        return G.mul(x, y)
    if mode == "inv":
        return G.inv(x)
    if mode == "identity":
        return G.identity
    raise ValueError(f"unknown mode {mode!r}")


def bracket_rem(a: int, n: int) -> int:
    """Signed remainder of a modulo 2n, in the range [-n+1, n]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = a % (2 * n)
    return r + 2 * ((n - r) // (2 * n)) * n


@dataclass(frozen=True)
class DdnGroup:
    """Double dihedral group <R, X | R^2n = e, X^2 = R^n, XR = R^-1 X>.

    The element X^A R^a is stored as the pair (A, a) with a in [-n+1, n].
    """

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("double dihedral groups need n >= 2")

    @property
    def order(self) -> int:
        return 4 * self.n

    @property
    def identity(self) -> tuple[int, int]:
        return (0, 0)

    @property
    def R(self) -> tuple[int, int]:
        return (0, 1)

    @property
    def X(self) -> tuple[int, int]:
        return (1, 0)

    @property
    def Rn(self) -> tuple[int, int]:
        return (0, self.n)

    def elements(self) -> list[tuple[int, int]]:
        n = self.n
        return [(A, a) for A in (0, 1) for a in range(-n + 1, n + 1)]

    def canon(self, x) -> tuple[int, int]:
        return (x[0] % 2, bracket_rem(x[1], self.n))

    def mul(self, x, y) -> tuple[int, int]:
        (A, a), (B, b) = x, y
        sign = -1 if B else 1
        return ((A + B) % 2, bracket_rem(sign * a + b + self.n * A * B, self.n))

    def inv(self, x) -> tuple[int, int]:
        A, a = x
        if A == 0:
            return (0, bracket_rem(-a, self.n))
        return (1, bracket_rem(a - self.n, self.n))

    def power(self, x, k: int):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def __str__(self) -> str:
        return f"ddn:{self.n}"


def ddn_mul(D: DdnGroup, x, y):
    return D.mul(x, y)


def center(group, cap: int | None = DEFAULT_CAP) -> list:
    """Center of the group; exhaustive commutation for nonabelian groups."""
    if isinstance(group, AbelianGroup):
        return group.elements()
    check_cap(group.order, cap, "center")
    elems = group.elements()
    return [z for z in elems if all(group.mul(z, x) == group.mul(x, z) for x in elems)]


def characters(G: AbelianGroup) -> list[tuple[int, ...]]:
    """Exponent vectors lambda; the character sends g_j to xi_{m_j}^{lambda_j}."""
    return G.elements()


def parse_group(text: str):
    """Parse ``abelian:2,6`` or ``ddn:2``."""
    kind, _, rest = text.strip().partition(":")
    try:
        if kind == "abelian":
            return AbelianGroup(tuple(int(t) for t in rest.split(",")))
        if kind == "ddn":
            return DdnGroup(int(rest))
    except ValueError as exc:
        raise ValueError(f"bad group spec {text!r}: {exc}") from None
    raise ValueError(f"bad group spec {text!r}; expected abelian:m1,m2,... or ddn:n")
