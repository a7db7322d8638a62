"""Classification of pairs (g, rho), equivalently (sigma, v), over k^G_omega.

For an abelian group G = C_m1 x ... x C_mn with representative 3-cocycle
omega_a, an admissible pair is an exponent vector f (the central element
g = g_1^f_1 ... g_n^f_n) together with a character exponent lambda such that
the flattening of omega_a at g is a coboundary and rho(g) = -1.  The
admissible f are cut out by a system of congruences modulo M, solved either
by brute force or through a Smith normal form; the admissible lambda by an
integrality condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from . import cocycles as cc
from .groups import AbelianGroup, DdnGroup, CapExceeded, check_cap
from .zlattice import IntMat, SnfDecomposition, ext_gcd, identity, matmul, smith_normal_form

ENUM_CAP = 10_000


# ---------------------------------------------------------------------------
# the divisibility system


def mc_rst(G: AbelianGroup, a: cc.CocycleDatum, r: int, s: int, t: int) -> int:
    m = G.moduli
    return (G.M // gcd(m[r], m[s], m[t])) * a.triple(r, s, t)


def divisibility_coeff(G: AbelianGroup, a: cc.CocycleDatum, i: int, r: int, s: int) -> int:
    """Coefficient of f_i in the congruence attached to the pair r < s."""
    if i < r:
        return mc_rst(G, a, i, r, s)
    if r < i < s:
        return -mc_rst(G, a, r, i, s)
    if i > s:
        return mc_rst(G, a, r, s, i)
    return 0


@dataclass(frozen=True)
class DivisibilitySystem:
    A: IntMat
    n: int
    npairs: int
    M: int
    pairs: tuple

    @property
    def A_prime(self) -> IntMat:
        return [list(row) for row in self.A[: self.n]]


def build_divisibility_system(G: AbelianGroup, a: cc.CocycleDatum) -> DivisibilitySystem:
    """Matrix A = [A'; M*I] with one column per pair (r, s), r < s.

    f is admissible iff (f, y) A = 0 for some integer y.  For n <= 2 there
    are no congruences and the system is empty.
    """
    n = G.n
    if a.n != n:
        raise ValueError("datum/group mismatch")
    pairs = tuple(itertools.combinations(range(n), 2)) if n >= 3 else ()
    npairs = len(pairs)
    if not npairs:
        return DivisibilitySystem([], n, 0, G.M, ())
    Ap = [[divisibility_coeff(G, a, i, r, s) for (r, s) in pairs] for i in range(n)]
    lower = [[G.M * int(i == j) for j in range(npairs)] for i in range(npairs)]
    return DivisibilitySystem(Ap + lower, n, npairs, G.M, pairs)


def divisibility_ok(G: AbelianGroup, a: cc.CocycleDatum, f) -> bool:
    if G.n < 3:
        return True
    M = G.M
    for r, s in itertools.combinations(range(G.n), 2):
        tot = sum(divisibility_coeff(G, a, i, r, s) * f[i] for i in range(G.n))
        if tot % M:
            return False
    return True


@dataclass(frozen=True)
class SnfSolution:
    """Witnesses of the Smith form route to the admissible f."""

    snf_prime: SnfDecomposition
    U2: IntMat          # the gluing matrix U''
    U: IntMat           # U'' * diag(U', V'^-1)
    V: IntMat
    D: IntMat           # U A V
    generators: IntMat  # rows generating the f-lattice


def _inverse_unimodular(V: IntMat) -> IntMat:
    n = len(V)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fct = aug[r][col]
                aug[r] = [x - fct * y for x, y in zip(aug[r], aug[col])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def snf_solution(G: AbelianGroup, a: cc.CocycleDatum) -> SnfSolution:
    """Solve the system through the Smith form of A' and the gluing U''.

    With U'A'V' = D' and alpha_j d'_j + beta_j M = (d'_j, M), U'' combines the
    rows of [U'A'; M V'^-1] so that U A V is diagonal; the last n rows of U
    give the f-lattice, i.e. rows M/(d'_j, M) U'_j for j <= r' and U'_j beyond.
    """
    system = build_divisibility_system(G, a)
    n, nn, M = system.n, system.npairs, system.M
    if nn == 0:
        raise ValueError("empty system: every f is admissible")
    Ap = system.A_prime
    sp = smith_normal_form(Ap)
    d = sp.diag
    rp = sp.rank
    size = n + nn
    U2 = [[0] * size for _ in range(size)]
    row = 0
    for j in range(rp):  # alpha_j e_j + beta_j e_{n+j}
        g, al, be = ext_gcd(d[j], M)
        U2[row][j] = al
        U2[row][n + j] = be
        row += 1
    for j in range(rp, nn):  # M rows left over
        U2[row][n + j] = 1
        row += 1
    for j in range(rp):  # -M/(d_j,M) e_j + d_j/(d_j,M) e_{n+j}
        g = gcd(d[j], M)
        U2[row][j] = -M // g
        U2[row][n + j] = d[j] // g
        row += 1
    for j in range(rp, n):  # zero rows of D'
        U2[row][j] = 1
        row += 1
    Vp_inv = _inverse_unimodular(sp.V)
    block = [[0] * size for _ in range(size)]
    for i in range(n):
        block[i][:n] = sp.U[i]
    for i in range(nn):
        block[n + i][n:] = Vp_inv[i]
    U = matmul(U2, block)
    V = sp.V
    D = matmul(matmul(U, system.A), V)
    gens = [row[:n] for row in U[nn:]]
    return SnfSolution(sp, U2, U, V, D, gens)


def _span_mod_box(gens: IntMat, moduli) -> list[tuple[int, ...]]:
    """Subgroup of prod Z/m_j generated by the rows (closure by breadth-first search)."""
    zero = tuple(0 for _ in moduli)
    gens = [tuple(x % m for x, m in zip(g, moduli)) for g in gens]
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((x + y) % m for x, y, m in zip(v, g, moduli))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def f_solutions(G: AbelianGroup, a: cc.CocycleDatum, method: str = "brute", cap: int = ENUM_CAP) -> list[tuple[int, ...]]:
    """All admissible f in the canonical box, sorted."""
    a.validate(G)
    if method == "brute":
        check_cap(G.order, cap, "brute-force f enumeration")
        return [f for f in G.elements() if divisibility_ok(G, a, f)]
    if method == "snf":
        if G.n < 3:
            return G.elements()
        sol = snf_solution(G, a)
        return _span_mod_box(sol.generators, G.moduli)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# integrality of rho(g)


def integrality_E(G: AbelianGroup, a: cc.CocycleDatum, f, lam) -> tuple[bool, int]:
    """N*E for E = sum lam_j f_j/m_j + sum c_j f_j^2/m_j^2 + sum c_st f_s f_t/(m_s m_t).

    rho(g) = -1 iff E - 1/2 is an integer, i.e. N even and N*E = N/2 mod N.
    """
    m = G.moduli
    N = G.N
    if any(not 0 <= x < mj for x, mj in zip(f, m)):
        raise ValueError(f"f={tuple(f)} not in the canonical box")
    e = 0
    for j in range(G.n):
        e += lam[j] * f[j] * (N // m[j])
        e += a.c[j] * f[j] * f[j] * (N // (m[j] * m[j]))
    for (s, t), cst in a.c_pair:
        e += cst * f[s] * f[t] * (N // (m[s] * m[t]))
    ok = N % 2 == 0 and e % N == N // 2
    return ok, e


def v_exponent(G: AbelianGroup, a: cc.CocycleDatum, f, lam, l) -> int:
    m = G.moduli
    N = G.N
    e = 0
    for j in range(G.n):
        e += lam[j] * l[j] * (N // m[j])
        e += a.c[j] * f[j] * l[j] * (N // (m[j] * m[j]))
    for (s, t), cst in a.c_pair:
        e += cst * l[s] * f[t] * (N // (m[s] * m[t]))
    return e % N


@dataclass(frozen=True)
class PairSolution:
    f: tuple[int, ...]
    lam: tuple[int, ...]
    E_times_N: int


@dataclass(frozen=True)
class BraidedHopfDescriptor:
    """sigma(g^j) = prod xi_{m_l}^{f_l j_l}; v = sum_l zeta_N^{e(l)} 1_l.

    The v exponents are computed on demand from (G, a, f, lambda).
    """

    G: AbelianGroup
    datum: cc.CocycleDatum
    sigma_exps: tuple[int, ...]
    lam: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.G.N

    def v(self, l) -> int:
        return v_exponent(self.G, self.datum, self.sigma_exps, self.lam, tuple(l))

    @property
    def v_exps(self) -> dict:
        return {l: self.v(l) for l in self.G.elements()}


def descriptor(G: AbelianGroup, a: cc.CocycleDatum, f, lam) -> BraidedHopfDescriptor:
    return BraidedHopfDescriptor(G, a, tuple(f), tuple(lam))


def enumerate_pairs(G: AbelianGroup, a: cc.CocycleDatum, cap: int = ENUM_CAP, method: str = "brute"):
    """All admissible (f, lambda) with descriptors, ordered by (f, lambda)."""
    check_cap(G.order, cap, "pair enumeration")
    N = G.N
    if N % 2:
        return []
    m = G.moduli
    out = []
    for f in f_solutions(G, a, method=method, cap=cap):
        _, base = integrality_E(G, a, f, (0,) * G.n)
        # N*E is affine in lambda: base + sum lambda_j f_j N/m_j
        steps = [[(lj, lj * f[j] * (N // m[j])) for lj in range(m[j])] for j in range(G.n)]
        for combo in itertools.product(*steps):
            e = base + sum(w for _, w in combo)
            if e % N == N // 2:
                lam = tuple(lj for lj, _ in combo)
                out.append((PairSolution(tuple(f), lam, e), descriptor(G, a, f, lam)))
    return out


def pair_rho(G: AbelianGroup, a: cc.CocycleDatum, pair: PairSolution) -> cc.Cochain:
    """rho = f_g * theta_lambda as a 1-cochain."""
    return cc.fg_witness(G, a, pair.f) * cc.character(G, pair.lam)


def certify_pair(G: AbelianGroup, a: cc.CocycleDatum, pair: PairSolution, cap: int = cc.DEFAULT_CAP) -> bool:
    """Exhaustively check d(rho) = flat_g(omega_a) and rho(g) = -1."""
    check_cap(G.order, cap, "pair certificate")
    rho = pair_rho(G, a, pair)
    omega = cc.omega_abelian_cochain(G, a, cap=cap)
    if cc.coboundary(rho) != cc.flat(omega, pair.f):
        return False
    return rho(pair.f) == cc.RootExp(2, 1)


def cyclic_obstruction(G: AbelianGroup, a: cc.CocycleDatum, f) -> tuple[bool, cc.RootExp]:
    """Necessary condition for some rho with d(rho) = flat_g(omega) and rho(g) = -1.

    Telescoping d(rho)(g^i, g) over i = 1..k-1, k = ord(g), gives
    rho(g)^k = prod_i omega(g, g^i, g); so the product must equal (-1)^k.
    Independent of the divisibility system, hence a cross-check on it.
    """
    g = G.canon(f)
    k = 1
    while G.power(g, k) != G.identity:
        k += 1
    prod = cc.RootExp(2, 0)
    for i in range(1, k):
        prod = prod * cc.omega_abelian(G, a, g, G.power(g, i), g)
    return prod == cc.RootExp(2, k % 2), prod


# ---------------------------------------------------------------------------
# cyclic groups


@dataclass(frozen=True)
class CyclicResult:
    pairs: list
    exists: bool
    witness: Optional[tuple[int, int]]


def cyclic_pairs(m: int, c: int) -> CyclicResult:
    """Pairs (f, lambda) with lambda f/m + c f^2/m^2 - 1/2 an integer."""
    if m < 2 or not 0 <= c < m:
        raise ValueError("need m >= 2 and 0 <= c < m")
    G = AbelianGroup((m,))
    a = cc.CocycleDatum((c,))
    pairs = [(p.f[0], p.lam[0]) for p, _ in enumerate_pairs(G, a)]
    d = gcd(c, m)
    if d % 2:
        return CyclicResult(pairs, False, None)
    # f = m' d/2; lambda = 2k + 1 - c/2 for the least k landing in [0, m)
    f = (m // d) * (d // 2)
    k = 0
    while 2 * k + 1 - c // 2 < 0:
        k += 1
    lam = 2 * k + 1 - c // 2
    return CyclicResult(pairs, True, (f % m, lam))


# ---------------------------------------------------------------------------
# conic form for two cyclic factors


@dataclass(frozen=True)
class ConicSpec:
    c1: int
    c2: int
    c12: int
    lam1: int
    lam2: int
    k: int
    L: int

    def value(self, x: int, y: int) -> int:
        L = self.L
        return (2 * self.c1 * x * x + 2 * self.c2 * y * y + 2 * self.c12 * x * y
                + 2 * self.lam1 * L * x + 2 * self.lam2 * L * y - (2 * self.k + 1) * L * L)


def conic_points(spec: ConicSpec, x_range, y_range) -> list[tuple[int, int]]:
    return [(x, y) for x in x_range for y in y_range if spec.value(x, y) == 0]


def conic_scan(m1: int, m2: int, a: cc.CocycleDatum, cap: int = ENUM_CAP) -> set:
    """Integer points (x, y; lambda1, lambda2, k) on the conics with x = f1 L/m1, y = f2 L/m2."""
    check_cap(m1 * m2, cap, "conic scan")
    G = AbelianGroup((m1, m2))
    a.validate(G)
    L = G.L
    c1, c2 = a.c
    c12 = a.pair(0, 1)
    xs = [f1 * (L // m1) for f1 in range(m1)]
    ys = [f2 * (L // m2) for f2 in range(m2)]
    out = set()
    for lam1 in range(m1):
        for lam2 in range(m2):
            # largest value of the quadratic part over the box bounds |2k+1| L^2
            top = max(2 * c1 * x * x + 2 * c2 * y * y + 2 * abs(c12) * x * y + 2 * lam1 * L * x + 2 * lam2 * L * y
                      for x in xs for y in ys)
            kmax = top // (L * L)
            for k in range(-kmax - 1, kmax + 1):
                if abs(2 * k + 1) * L * L > top:
                    continue
                spec = ConicSpec(c1, c2, c12, lam1, lam2, k, L)
                for x, y in conic_points(spec, xs, ys):
                    out.add((x, y, lam1, lam2, k))
    return out


def pairs_to_conic(m1: int, m2: int, a: cc.CocycleDatum) -> set:
    """The enumerate_pairs output under the coordinate change (with k recovered)."""
    G = AbelianGroup((m1, m2))
    L = G.L
    out = set()
    for p, _ in enumerate_pairs(G, a):
        x, y = p.f[0] * (L // m1), p.f[1] * (L // m2)
        # N E = N (k + 1/2)
        k = (Fraction(p.E_times_N, G.N) - Fraction(1, 2))
        out.add((x, y, p.lam[0], p.lam[1], int(k)))
    return out


# ---------------------------------------------------------------------------
# double dihedral groups


def ddn_pairs(n: int, p: int) -> list[cc.Cochain]:
    """The maps rho = f * theta with d(rho) = flat_{R^n} omega_p and rho(R^n) = -1."""
    if n < 2 or not 0 <= p < 2 * n:
        raise ValueError("need n >= 2 and 0 <= p < 2n")
    D = DdnGroup(n)
    omega = cc.omega_ddn_cochain(n, p)
    target = cc.flat(omega, D.Rn)
    f = cc.ddn_witness(n, p)
    out = []
    for theta in cc.ddn_characters(n):
        rho = f * theta
        if cc.coboundary(rho) == target and rho(D.Rn) == cc.RootExp(2, 1):
            out.append(rho)
    return out


# ---------------------------------------------------------------------------
# semisimple quasi-Hopf algebras of dimension 4


def orbit_count_cyclic(n: int) -> int:
    """Number of orbits of a -> s^2 a on Z_n, s a unit mod n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    units = [s for s in range(1, n + 1) if gcd(s, n) == 1]
    seen = set()
    orbits = 0
    for a in range(n):
        if a in seen:
            continue
        orbits += 1
        seen.update((s * s * a) % n for s in units)
    return orbits


def klein_structure_count() -> int:
    """Representative 3-cocycles on C2 x C2; the automorphism action on them is trivial."""
    return len(cc.all_data(AbelianGroup((2, 2))))


def dim4_semisimple_count() -> int:
    return orbit_count_cyclic(4) + klein_structure_count()
