"""Root-of-unity cochains on finite groups.

Values are stored as exponents k of zeta_K over an explicit modulus K, so all
identities are checked by integer arithmetic.  This module provides the
representative 3-cocycles on abelian and double dihedral groups, the
flattening at an element, coboundaries of 1-cochains and the explicit
1-cochains whose coboundary is a given flattening.
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Callable, Optional

from .groups import DEFAULT_CAP, AbelianGroup, DdnGroup, bracket_rem, check_cap


@dataclass(frozen=True)
class RootExp:
    """The root of unity zeta_modulus^exp."""

    modulus: int
    exp: int

    def __post_init__(self):
        object.__setattr__(self, "exp", self.exp % self.modulus)

    def rescale(self, m: int) -> "RootExp":
        if m % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {m}")
        return RootExp(m, self.exp * (m // self.modulus))

    def __mul__(self, other: "RootExp") -> "RootExp":
        m = lcm(self.modulus, other.modulus)
        return RootExp(m, self.rescale(m).exp + other.rescale(m).exp)

    def inverse(self) -> "RootExp":
        return RootExp(self.modulus, -self.exp)

    def __truediv__(self, other: "RootExp") -> "RootExp":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, RootExp):
            return NotImplemented
        m = lcm(self.modulus, other.modulus)
        return self.rescale(m).exp == other.rescale(m).exp

    def __hash__(self):
        g = gcd(self.exp, self.modulus)
        return hash((self.exp // g, self.modulus // g))

    def is_one(self) -> bool:
        return self.exp == 0

    def to_cyclo(self, conductor: Optional[int] = None):
        from .cyclo import embed_root

        r = self.rescale(conductor) if conductor else self
        return embed_root(r.modulus, r.exp)


# ---------------------------------------------------------------------------
# cocycle data on abelian groups


@dataclass(frozen=True)
class CocycleDatum:
    """Coefficients (c_l, c_st, c_rst) selecting a representative 3-cocycle.

    ``c_pair`` and ``c_triple`` are tuples of (index tuple, value) with
    0-based indices in lexicographic order; missing entries are zero.
    """

    c: tuple[int, ...]
    c_pair: tuple = ()
    c_triple: tuple = ()
    _pairs: dict = field(default=None, compare=False, hash=False, repr=False)
    _triples: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.c)
        pairs = dict(self.c_pair)
        triples = dict(self.c_triple)
        full_p = tuple((st, pairs.get(st, 0)) for st in itertools.combinations(range(n), 2))
        full_t = tuple((rst, triples.get(rst, 0)) for rst in itertools.combinations(range(n), 3))
        if set(pairs) - {k for k, _ in full_p} or set(triples) - {k for k, _ in full_t}:
            raise ValueError("datum index out of range")
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "c_pair", full_p)
        object.__setattr__(self, "c_triple", full_t)
        object.__setattr__(self, "_pairs", dict(full_p))
        object.__setattr__(self, "_triples", dict(full_t))

    @property
    def n(self) -> int:
        return len(self.c)

    def pair(self, s: int, t: int) -> int:
        return self._pairs[(s, t)]

    def triple(self, r: int, s: int, t: int) -> int:
        return self._triples[(r, s, t)]

    def as_tuple(self) -> tuple[int, ...]:
        """Flat sequence (c_1..c_n, c_12, c_13, ..., c_123, ...)."""
        return self.c + tuple(v for _, v in self.c_pair) + tuple(v for _, v in self.c_triple)

    def without_triples(self) -> "CocycleDatum":
        return CocycleDatum(self.c, self.c_pair, ())

    def validate(self, G: AbelianGroup) -> None:
        if self.n != G.n:
            raise ValueError(f"datum has {self.n} entries c_l but group has {G.n} factors")
        m = G.moduli
        for l, cl in enumerate(self.c):
            if not 0 <= cl < m[l]:
                raise ValueError(f"c_{l + 1}={cl} outside [0, {m[l]})")
        for (s, t), v in self.c_pair:
            _check_bound(f"c_{s + 1}{t + 1}", v, gcd(m[s], m[t]))
        for (r, s, t), v in self.c_triple:
            _check_bound(f"c_{r + 1}{s + 1}{t + 1}", v, gcd(m[r], m[s], m[t]))

    def label(self) -> str:
        parts = ["c=" + ",".join(map(str, self.c))]
        for (s, t), v in self.c_pair:
            if v:
                parts.append(f"c{s + 1}{t + 1}={v}")
        for (r, s, t), v in self.c_triple:
            if v:
                parts.append(f"c{r + 1}{s + 1}{t + 1}={v}")
        return ";".join(parts)

    @classmethod
    def from_tuple(cls, n: int, seq) -> "CocycleDatum":
        seq = list(seq)
        pairs = list(itertools.combinations(range(n), 2))
        triples = list(itertools.combinations(range(n), 3))
        if len(seq) != n + len(pairs) + len(triples):
            raise ValueError(f"datum sequence of length {len(seq)} does not fit n={n}")
        c = tuple(seq[:n])
        cp = tuple(zip(pairs, seq[n:n + len(pairs)]))
        ct = tuple(zip(triples, seq[n + len(pairs):]))
        return cls(c, cp, ct)


def _check_bound(name: str, v: int, bound: int) -> None:
    if v == bound:
        warnings.warn(f"{name}={v} equals its bound {bound}; accepted as given", stacklevel=3)
    elif not 0 <= v < bound:
        raise ValueError(f"{name}={v} outside [0, {bound})")


_KEY = re.compile(r"^c(\d+)$")


def parse_datum(text: str, G: AbelianGroup) -> CocycleDatum:
    """Parse ``c=1,3;c12=1`` (indices are 1-based digits, one per factor)."""
    c = None
    pairs, triples = {}, {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq:
            raise ValueError(f"bad datum item {item!r}")
        if key == "c":
            c = tuple(int(v) for v in val.split(","))
            continue
        mm = _KEY.match(key)
        if not mm:
            raise ValueError(f"bad datum key {key!r}")
        idx = tuple(int(ch) - 1 for ch in mm.group(1))
        if list(idx) != sorted(set(idx)) or min(idx) < 0:
            raise ValueError(f"datum key {key!r} must use increasing indices")
        if len(idx) == 2:
            pairs[idx] = int(val)
        elif len(idx) == 3:
            triples[idx] = int(val)
        else:
            raise ValueError(f"bad datum key {key!r}")
    if c is None:
        c = (0,) * G.n
    datum = CocycleDatum(c, tuple(sorted(pairs.items())), tuple(sorted(triples.items())))
    datum.validate(G)
    return datum


def all_data(G: AbelianGroup) -> list[CocycleDatum]:
    """All representative data in lexicographic order."""
    m = G.moduli
    n = G.n
    bounds = list(m)
    bounds += [gcd(m[s], m[t]) for s, t in itertools.combinations(range(n), 2)]
    bounds += [gcd(m[r], m[s], m[t]) for r, s, t in itertools.combinations(range(n), 3)]
    return [CocycleDatum.from_tuple(n, seq) for seq in itertools.product(*(range(b) for b in bounds))]


# ---------------------------------------------------------------------------
# cochains


@dataclass
class Cochain:
    """A map G^arity -> roots of unity, stored as exponents over ``modulus``."""

    group: object
    arity: int
    modulus: int
    table: dict

    def __call__(self, *args) -> RootExp:
        return RootExp(self.modulus, self.table[tuple(args)])

    def exp(self, *args) -> int:
        return self.table[tuple(args)]

    def rescale(self, m: int) -> "Cochain":
        if m % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {m}")
        k = m // self.modulus
        return Cochain(self.group, self.arity, m, {x: (e * k) % m for x, e in self.table.items()})

    def __mul__(self, other: "Cochain") -> "Cochain":
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        return Cochain(self.group, self.arity, m, {x: (a.table[x] + b.table[x]) % m for x in a.table})

    def inverse(self) -> "Cochain":
        return Cochain(self.group, self.arity, self.modulus, {x: (-e) % self.modulus for x, e in self.table.items()})

    def __truediv__(self, other: "Cochain") -> "Cochain":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.arity != other.arity or self.table.keys() != other.table.keys():
            return False
        m = lcm(self.modulus, other.modulus)
        return self.rescale(m).table == other.rescale(m).table

    def is_trivial(self) -> bool:
        return not any(self.table.values())

    def first_difference(self, other: "Cochain"):
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        for x in a.table:
            if a.table[x] != b.table[x]:
                return x
        return None


def make_cochain(group, arity: int, modulus: int, fn: Callable, cap: Optional[int] = None) -> Cochain:
    check_cap(group.order ** arity, None if cap is None else cap ** arity, "cochain table")
    elems = group.elements()
    table = {args: fn(*args) % modulus for args in itertools.product(elems, repeat=arity)}
    return Cochain(group, arity, modulus, table)


def omega_abelian_exp(G: AbelianGroup, a: CocycleDatum, x, y, z) -> int:
    """Exponent of omega_a(x, y, z) over the modulus G.exponent."""
    m = G.moduli
    E = G.exponent
    n = G.n
    e = 0
    for l in range(n):
        cl = a.c[l]
        if cl:
            e += cl * x[l] * ((y[l] + z[l]) // m[l]) * (E // m[l])
    for (s, t), cst in a.c_pair:
        if cst:
            e += cst * x[t] * ((y[s] + z[s]) // m[s]) * (E // m[t])
    for (r, s, t), crst in a.c_triple:
        if crst:
            e -= crst * z[r] * y[s] * x[t] * (E // gcd(m[r], m[s], m[t]))
    return e % E


def omega_abelian(G: AbelianGroup, a: CocycleDatum, x, y, z) -> RootExp:
    if a.n != G.n:
        raise ValueError("datum/group mismatch")
    return RootExp(G.exponent, omega_abelian_exp(G, a, x, y, z))


def omega_abelian_cochain(G: AbelianGroup, a: CocycleDatum, cap: Optional[int] = DEFAULT_CAP) -> Cochain:
    if a.n != G.n:
        raise ValueError("datum/group mismatch")
    check_cap(G.order, cap, "3-cochain table")
    return make_cochain(G, 3, G.exponent, lambda x, y, z: omega_abelian_exp(G, a, x, y, z))


def ddn_modulus(n: int) -> int:
    return lcm(2 * n * n, 4)


def omega_ddn_exp(n: int, p: int, x, y, z) -> int:
    """Exponent of omega_p(X^A R^a, X^B R^b, X^C R^c) over ddn_modulus(n)."""
    (A, a), (B, b), (C, c) = x, y, z
    K = ddn_modulus(n)
    sC = -1 if C else 1
    sBC = -1 if (B + C) % 2 else 1
    inner = sC * b + c
    main = sBC * a * (inner - bracket_rem(inner + n * B * C, n))
    # main is an exponent of xi_{2n^2}; the ABC term is xi_4^{-pABC}
    return (p * main * (K // (2 * n * n)) - p * A * B * C * (K // 4)) % K


def omega_ddn(n: int, p: int, x, y, z) -> RootExp:
    return RootExp(ddn_modulus(n), omega_ddn_exp(n, p, x, y, z))


def omega_ddn_cochain(n: int, p: int) -> Cochain:
    D = DdnGroup(n)
    return make_cochain(D, 3, ddn_modulus(n), lambda x, y, z: omega_ddn_exp(n, p, x, y, z))


def flat(omega: Cochain, g) -> Cochain:
    """(x, y) -> omega(g, x, y) omega(x, y, g) / omega(x, g, y)."""
    G = omega.group
    w = omega.table
    K = omega.modulus
    elems = G.elements()
    table = {(x, y): (w[(g, x, y)] + w[(x, y, g)] - w[(x, g, y)]) % K for x in elems for y in elems}
    return Cochain(G, 2, K, table)


def coboundary(rho: Cochain) -> Cochain:
    """(x, y) -> rho(xy)^-1 rho(x) rho(y)."""
    if rho.arity != 1:
        raise ValueError("coboundary expects a 1-cochain")
    G = rho.group
    r = rho.table
    K = rho.modulus
    if r[(G.identity,)] % K:
        raise ValueError("1-cochain is not normalized")
    elems = G.elements()
    table = {(x, y): (r[(x,)] + r[(y,)] - r[(G.mul(x, y),)]) % K for x in elems for y in elems}
    return Cochain(G, 2, K, table)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def check_cocycle(c: Cochain, kind: str, g=None, cap: Optional[int] = DEFAULT_CAP) -> CheckResult:
    """Exhaustive check of the 2-cocycle, 3-cocycle or flat condition.

    Normalization (value 1 when an argument is the identity) is part of the
    2- and 3-cocycle checks.
    """
    G = c.group
    check_cap(G.order, cap, f"{kind} check")
    elems = G.elements()
    e = G.identity
    t = c.table
    K = c.modulus
    mul = G.mul
    if kind == "2cocycle":
        if c.arity != 2:
            raise ValueError("2-cocycle check needs a 2-cochain")
        for x in elems:
            if t[(e, x)] % K or t[(x, e)] % K:
                return CheckResult(False, ("normalization", x))
        for x, y, z in itertools.product(elems, repeat=3):
            if (t[(x, y)] + t[(mul(x, y), z)] - t[(x, mul(y, z))] - t[(y, z)]) % K:
                return CheckResult(False, (x, y, z))
        return CheckResult(True)
    if kind == "3cocycle":
        if c.arity != 3:
            raise ValueError("3-cocycle check needs a 3-cochain")
        for x, y in itertools.product(elems, repeat=2):
            if t[(e, x, y)] % K or t[(x, e, y)] % K or t[(x, y, e)] % K:
                return CheckResult(False, ("normalization", x, y))
        for x, y, z, w in itertools.product(elems, repeat=4):
            lhs = t[(y, z, w)] + t[(x, mul(y, z), w)] + t[(x, y, z)]
            rhs = t[(x, y, mul(z, w))] + t[(mul(x, y), z, w)]
            if (lhs - rhs) % K:
                return CheckResult(False, (x, y, z, w))
        return CheckResult(True)
    if kind == "flat_condition":
        if c.arity != 3 or g is None:
            raise ValueError("flat condition needs a 3-cochain and an element g")
        for x, y, z in itertools.product(elems, repeat=3):
            lhs = t[(mul(g, x), y, z)] + t[(x, mul(g, y), z)] + t[(x, y, mul(g, z))]
            rhs = t[(mul(x, g), y, z)] + t[(x, mul(y, g), z)] + t[(x, y, mul(z, g))]
            if (lhs - rhs) % K:
                return CheckResult(False, (x, y, z))
        return CheckResult(True)
    raise ValueError(f"unknown check kind {kind!r}")


# ---------------------------------------------------------------------------
# 1-cochains


def fg_witness_exp(G: AbelianGroup, a: CocycleDatum, f, j) -> int:
    """Exponent over G.N of the witness f_g evaluated at g^j."""
    m = G.moduli
    N = G.N
    e = 0
    for l in range(G.n):
        e += a.c[l] * f[l] * j[l] * (N // (m[l] * m[l]))
    for (s, t), cst in a.c_pair:
        e += cst * f[t] * j[s] * (N // (m[s] * m[t]))
    return e % N


def fg_witness(G: AbelianGroup, a: CocycleDatum, f) -> Cochain:
    f = tuple(f)
    if any(not 0 <= fj < mj for fj, mj in zip(f, G.moduli)) or len(f) != G.n:
        raise ValueError(f"f={f} not in the canonical box")
    return make_cochain(G, 1, G.N, lambda j: fg_witness_exp(G, a, f, j))


def character(G: AbelianGroup, lam) -> Cochain:
    """The character g_j -> xi_{m_j}^{lambda_j}, over modulus G.exponent."""
    E = G.exponent
    m = G.moduli
    return make_cochain(G, 1, E, lambda j: sum(l * x * (E // mj) for l, x, mj in zip(lam, j, m)))


def ddn_witness(n: int, p: int) -> Cochain:
    """f(X^A R^a) = (-1)^A xi_{2n}^{-pa}."""
    D = DdnGroup(n)
    K = ddn_modulus(n)
    return make_cochain(D, 1, K, lambda x: x[0] * (K // 2) - p * x[1] * (K // (2 * n)))


def ddn_characters(n: int) -> list[Cochain]:
    """The four characters, (theta(X), theta(R)) in {(1,1), (-1,1), (xi_4^n,-1), (-xi_4^n,-1)}."""
    D = DdnGroup(n)
    K = ddn_modulus(n)
    q = K // 4
    choices = [(0, 0), (K // 2, 0), (n * q, K // 2), (n * q + K // 2, K // 2)]
    return [make_cochain(D, 1, K, lambda x, tX=tX, tR=tR: x[0] * tX + x[1] * tR) for tX, tR in choices]


def is_homomorphism(rho: Cochain) -> bool:
    return coboundary(rho).is_trivial()
