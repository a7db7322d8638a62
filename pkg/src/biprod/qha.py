"""Finite-dimensional quasi-Hopf algebras over Q(zeta_N) by structure constants.

Elements of a tensor power H^{(x)k} are sparse dicts mapping index tuples of
length k to CycloNum coefficients.  Structure constants:

* ``mult[i][j]`` is a dict ``{k: c}`` with e_i e_j = sum c e_k
* ``comult[i]`` is a 2-tensor element, ``counit[i]`` a scalar
* ``S[i]`` is a dict ``{j: c}``
* ``unit``, ``alpha``, ``beta`` are 1-tensor elements; ``Phi``, ``PhiInv`` 3-tensors

Products in tensor powers are componentwise.  Throughout, capital X denotes
the legs of Phi and lower-case x, y those of its inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Callable, Optional

from .cyclo import CycloNum, embed_root, mat_inverse, solve_consistent
from .groups import AbelianGroup, CapExceeded, DdnGroup, check_cap

DEFAULT_AXIOM_CAP = 64

Elem = dict


# ---------------------------------------------------------------------------
# sparse tensor arithmetic


def clean(X: Elem) -> Elem:
    return {k: c for k, c in X.items() if not c.is_zero()}


def add(*Xs: Elem) -> Elem:
    out: Elem = {}
    for X in Xs:
        for k, c in X.items():
            out[k] = out[k] + c if k in out else c
    return clean(out)


def scale(X: Elem, c) -> Elem:
    return clean({k: v * c for k, v in X.items()})


def neg(X: Elem) -> Elem:
    return {k: -v for k, v in X.items()}


def sub(X: Elem, Y: Elem) -> Elem:
    return add(X, neg(Y))


def equal(X: Elem, Y: Elem) -> bool:
    return not sub(X, Y)


def outer(*Xs: Elem) -> Elem:
    out: Elem = {(): None}
    for X in Xs:
        nxt: Elem = {}
        for k1, c1 in out.items():
            for k2, c2 in X.items():
                c = c2 if c1 is None else c1 * c2
                key = k1 + k2
                nxt[key] = nxt[key] + c if key in nxt else c
        out = nxt
    return clean(out)


def lift_elem(X: Elem, N: int) -> Elem:
    return {k: c.lift(N) for k, c in X.items()}


def _to_cyclo(N: int, c) -> CycloNum:
    if isinstance(c, CycloNum):
        return c.lift(N) if c.N != N else c
    return CycloNum.from_rational(N, Fraction(c))


# ---------------------------------------------------------------------------
# the structure


@dataclass
class QuasiHopfData:
    N: int
    labels: list
    mult: list
    unit: Elem
    comult: list
    counit: list
    Phi: Elem
    PhiInv: Elem
    S: list
    alpha: Elem
    beta: Elem
    generators: dict = field(default_factory=dict)
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    # scalars and simple elements ----------------------------------------
    def c(self, q) -> CycloNum:
        return _to_cyclo(self.N, q)

    def basis(self, i: int) -> Elem:
        return {(i,): self.c(1)}

    def one(self, k: int = 1) -> Elem:
        return outer(*([self.unit] * k)) if k else {(): self.c(1)}

    def gen(self, name: str) -> Elem:
        return self.generators[name]

    def elem(self, coeffs: dict) -> Elem:
        """1-tensor from {label or index: scalar}."""
        out = {}
        for key, q in coeffs.items():
            i = self.labels.index(key) if not isinstance(key, int) else key
            out[(i,)] = self.c(q)
        return clean(out)

    # products -------------------------------------------------------------
    def _nonzero(self) -> list:
        """nz[i] = [(j, mult[i][j])] over the nonzero products e_i e_j."""
        key = id(self.mult)
        cached = self.__dict__.get("_nz")
        if cached is None or cached[0] != key:
            cached = (key, [[(j, m) for j, m in enumerate(row) if m] for row in self.mult])
            self.__dict__["_nz"] = cached
        return cached[1]

    def mul(self, X: Elem, Y: Elem) -> Elem:
        if not X or not Y:
            return {}
        if () in X or () in Y:
            return clean({(): X[()] * Y[()]}) if () in X and () in Y else {}
        nz = self._nonzero()
        # index Y leg by leg so that zero products are skipped before any arithmetic
        trie: dict = {}
        for ky, cy in Y.items():
            node = trie
            for j in ky[:-1]:
                node = node.setdefault(j, {})
            node[ky[-1]] = cy
        out: Elem = {}
        for kx, cx in X.items():
            partial = [(trie, [])]
            for i in kx:
                partial = [(node[j], ms + [m]) for node, ms in partial for j, m in nz[i] if j in node]
                if not partial:
                    break
            for cy, ms in partial:
                terms = [((), cx * cy)]
                for m in ms:
                    terms = [(t + (k,), c * v) for t, c in terms for k, v in m.items()]
                for key, c in terms:
                    out[key] = out[key] + c if key in out else c
        return clean(out)

    def prod(self, *Xs: Elem) -> Elem:
        out = Xs[0]
        for X in Xs[1:]:
            out = self.mul(out, X)
        return out

    def apply(self, X: Elem, pos: int, images: Callable[[int], Elem]) -> Elem:
        """Apply a linear map leg-wise at ``pos``; images(i) is a tensor element."""
        out: Elem = {}
        for key, c in X.items():
            for k2, c2 in images(key[pos]).items():
                nk = key[:pos] + k2 + key[pos + 1:]
                v = c * c2
                out[nk] = out[nk] + v if nk in out else v
        return clean(out)

    def delta_at(self, X: Elem, pos: int) -> Elem:
        return self.apply(X, pos, lambda i: self.comult[i])

    def eps_at(self, X: Elem, pos: int) -> Elem:
        return self.apply(X, pos, lambda i: {(): self.counit[i]})

    def S_at(self, X: Elem, pos: int, S: Optional[list] = None) -> Elem:
        S = self.S if S is None else S
        return self.apply(X, pos, lambda i: {(j,): c for j, c in S[i].items()})

    def functional_at(self, X: Elem, pos: int, phi: list) -> Elem:
        return self.apply(X, pos, lambda i: {(): phi[i]})

    def scalar(self, X: Elem) -> CycloNum:
        return X.get((), self.c(0))

    def eval_functional(self, phi: list, X: Elem) -> CycloNum:
        return self.scalar(self.functional_at(X, 0, phi))

    def legs(self, X: Elem):
        """Iterate (coefficient, [1-tensor per leg]) over the terms of X."""
        one = self.c(1)
        for key, c in X.items():
            yield c, [{(i,): one} for i in key]

    def Delta(self, X: Elem) -> Elem:
        return self.delta_at(X, 0)

    def antipode(self, X: Elem) -> Elem:
        return self.S_at(X, 0)

    def counit_of(self, X: Elem) -> CycloNum:
        return self.scalar(self.eps_at(X, 0))

    def S_inverse(self) -> list:
        d = self.dim
        zero = self.c(0)
        M = [[self.S[j].get(i, zero) for j in range(d)] for i in range(d)]
        try:
            Minv = mat_inverse(M, self.N)
        except ZeroDivisionError:
            raise ValueError("antipode is singular") from None
        return [{i: Minv[i][j] for i in range(d) if not Minv[i][j].is_zero()} for j in range(d)]

    def lifted(self, N: int) -> "QuasiHopfData":
        if N == self.N:
            return self
        lf = lambda X: lift_elem(X, N)
        return replace(
            self,
            N=N,
            mult=[[{k: c.lift(N) for k, c in m.items()} for m in row] for row in self.mult],
            unit=lf(self.unit),
            comult=[lf(X) for X in self.comult],
            counit=[c.lift(N) for c in self.counit],
            Phi=lf(self.Phi),
            PhiInv=lf(self.PhiInv),
            S=[{k: c.lift(N) for k, c in s.items()} for s in self.S],
            alpha=lf(self.alpha),
            beta=lf(self.beta),
            generators={k: lf(v) for k, v in self.generators.items()},
        )

    def constants(self) -> tuple:
        """Structure constants as a comparable tuple (labels excluded)."""
        fz = lambda X: frozenset(clean(X).items())
        return (
            self.N,
            self.dim,
            tuple(tuple(fz({(k,): c for k, c in m.items()}) for m in row) for row in self.mult),
            fz(self.unit),
            tuple(fz(X) for X in self.comult),
            tuple(self.counit),
            fz(self.Phi),
            fz(self.PhiInv),
            tuple(fz({(k,): c for k, c in s.items()}) for s in self.S),
            fz(self.alpha),
            fz(self.beta),
        )


def same_constants(Q1: QuasiHopfData, Q2: QuasiHopfData) -> bool:
    m = lcm(Q1.N, Q2.N)
    return Q1.lifted(m).constants() == Q2.lifted(m).constants()


def constants_diff(Q1: QuasiHopfData, Q2: QuasiHopfData) -> list[str]:
    """Names of the structure maps on which Q1 and Q2 differ."""
    m = lcm(Q1.N, Q2.N)
    a, b = Q1.lifted(m).constants(), Q2.lifted(m).constants()
    names = ["N", "dim", "mult", "unit", "comult", "counit", "Phi", "PhiInv", "S", "alpha", "beta"]
    return [n for n, x, y in zip(names, a, b) if x != y]


# ---------------------------------------------------------------------------
# axiom checks


@dataclass(frozen=True)
class AxiomResult:
    name: str
    ok: bool
    witness: tuple = ()

    def line(self) -> str:
        if self.ok:
            return f"{self.name}\tPASS"
        return f"{self.name}\tFAIL {','.join(map(str, self.witness))}"


@dataclass
class AxiomReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def _run(name: str, cases, test) -> AxiomResult:
    for case in cases:
        if not test(*case):
            return AxiomResult(name, False, tuple(case))
    return AxiomResult(name, True)


def check_axioms(Q: QuasiHopfData, cap: int = DEFAULT_AXIOM_CAP) -> AxiomReport:
    """Evaluate every quasi-Hopf axiom exactly on all basis elements."""
    if Q.dim > cap:
        raise CapExceeded(f"axiom check: dimension {Q.dim} exceeds cap {cap}")
    d = Q.dim
    e = [Q.basis(i) for i in range(d)]
    one1, one2, one3 = Q.one(1), Q.one(2), Q.one(3)
    one_s = Q.c(1)
    singles = [(i,) for i in range(d)]
    pairs = list(itertools.product(range(d), repeat=2))
    prods = {(i, j): Q.mul(e[i], e[j]) for i, j in pairs}
    Delta = [Q.comult[i] for i in range(d)]
    res = []

    res.append(_run("associativity", itertools.product(range(d), repeat=3),
                    lambda i, j, k: equal(Q.mul(prods[i, j], e[k]), Q.mul(e[i], prods[j, k]))))
    res.append(_run("unit", singles, lambda i: equal(Q.mul(one1, e[i]), e[i]) and equal(Q.mul(e[i], one1), e[i])))
    res.append(_run(
        "counit_multiplicative",
        [("1",)] + pairs,
        lambda *c: Q.counit_of(one1) == one_s if c == ("1",)
        else Q.counit_of(prods[c]) == Q.counit[c[0]] * Q.counit[c[1]],
    ))
    res.append(_run(
        "comult_multiplicative",
        [("1",)] + pairs,
        lambda *c: equal(Q.Delta(one1), one2) if c == ("1",)
        else equal(Q.Delta(prods[c]), Q.mul(Delta[c[0]], Delta[c[1]])),
    ))
    res.append(_run("counit", singles,
                    lambda i: equal(Q.eps_at(Delta[i], 1), e[i]) and equal(Q.eps_at(Delta[i], 0), e[i])))
    res.append(_run("reassociator_inverse", [()],
                    lambda: equal(Q.mul(Q.Phi, Q.PhiInv), one3) and equal(Q.mul(Q.PhiInv, Q.Phi), one3)))
    res.append(_run("quasi_coassociativity", singles, lambda i: equal(
        Q.mul(Q.delta_at(Delta[i], 1), Q.Phi), Q.mul(Q.Phi, Q.delta_at(Delta[i], 0)))))
    res.append(_run("pentagon", [()], lambda: _pentagon(Q)))
    res.append(_run("normalization", [()], lambda: equal(Q.eps_at(Q.Phi, 1), one2)))
    res.append(_run(
        "antipode_antimorphism",
        [("1",)] + pairs,
        lambda *c: equal(Q.antipode(one1), one1) if c == ("1",)
        else equal(Q.antipode(prods[c]), Q.mul(Q.antipode(e[c[1]]), Q.antipode(e[c[0]]))),
    ))
    res.append(_run("q5_alpha", singles, lambda i: equal(_q5_alpha(Q, Delta[i]), scale(Q.alpha, Q.counit[i]))))
    res.append(_run("q5_beta", singles, lambda i: equal(_q5_beta(Q, Delta[i]), scale(Q.beta, Q.counit[i]))))
    res.append(_run("q6_Phi", [()], lambda: equal(_q6(Q, Q.Phi, False), one1)))
    res.append(_run("q6_PhiInv", [()], lambda: equal(_q6(Q, Q.PhiInv, True), one1)))
    return AxiomReport(res)


def _pentagon(Q: QuasiHopfData) -> bool:
    one = Q.one(1)
    lhs = Q.prod(outer(one, Q.Phi), Q.delta_at(Q.Phi, 1), outer(Q.Phi, one))
    rhs = Q.mul(Q.delta_at(Q.Phi, 2), Q.delta_at(Q.Phi, 0))
    return equal(lhs, rhs)


def _q5_alpha(Q, D2):
    # S(h_1) alpha h_2
    return add(*(scale(Q.prod(Q.antipode(a), Q.alpha, b), c) for c, (a, b) in Q.legs(D2))) if D2 else {}


def _q5_beta(Q, D2):
    # h_1 beta S(h_2)
    return add(*(scale(Q.prod(a, Q.beta, Q.antipode(b)), c) for c, (a, b) in Q.legs(D2))) if D2 else {}


def _q6(Q, T, inverse: bool):
    # X^1 beta S(X^2) alpha X^3  or  S(x^1) alpha x^2 beta S(x^3)
    terms = []
    for c, (a, b, d) in Q.legs(T):
        if inverse:
            t = Q.prod(Q.antipode(a), Q.alpha, b, Q.beta, Q.antipode(d))
        else:
            t = Q.prod(a, Q.beta, Q.antipode(b), Q.alpha, d)
        terms.append(scale(t, c))
    return add(*terms)


def with_reassociator(Q: QuasiHopfData, Phi: Elem, PhiInv: Elem) -> QuasiHopfData:
    """Same data with a different reassociator (for negative checks)."""
    return replace(Q, Phi=Phi, PhiInv=PhiInv)


# ---------------------------------------------------------------------------
# p_R, q_R


@dataclass
class PQResult:
    p_R: Elem
    q_R: Elem
    report: AxiomReport


def pq_elements(Q: QuasiHopfData, cap: int = DEFAULT_AXIOM_CAP) -> PQResult:
    """p_R = x^1 (x) x^2 beta S(x^3) and q_R = X^1 (x) S^-1(alpha X^3) X^2, with their identities."""
    if Q.dim > cap:
        raise CapExceeded(f"pq identities: dimension {Q.dim} exceeds cap {cap}")
    Sinv = Q.S_inverse()
    S_ = lambda X: Q.S_at(X, 0)
    Si = lambda X: Q.S_at(X, 0, Sinv)
    one1, one2 = Q.one(1), Q.one(2)
    p_R = add(*(scale(outer(a, Q.prod(b, Q.beta, S_(d))), c) for c, (a, b, d) in Q.legs(Q.PhiInv)))
    q_R = add(*(scale(outer(a, Q.mul(Si(Q.mul(Q.alpha, d)), b)), c) for c, (a, b, d) in Q.legs(Q.Phi)))

    def qr1(i):
        D = Q.comult[i]
        lhs = add(*(scale(Q.prod(Q.Delta(a), p_R, outer(one1, S_(b))), c) for c, (a, b) in Q.legs(D)))
        return equal(lhs, Q.mul(p_R, outer(Q.basis(i), one1)))

    def qr1a(i):
        D = Q.comult[i]
        lhs = add(*(scale(Q.prod(outer(one1, Si(b)), q_R, Q.Delta(a)), c) for c, (a, b) in Q.legs(D)))
        return equal(lhs, Q.mul(outer(Q.basis(i), one1), q_R))

    def pqra():
        lhs = add(*(scale(Q.prod(outer(one1, Si(b)), q_R, Q.Delta(a)), c) for c, (a, b) in Q.legs(p_R)))
        return equal(lhs, one2)

    def pqr():
        lhs = add(*(scale(Q.prod(Q.Delta(a), p_R, outer(one1, S_(b))), c) for c, (a, b) in Q.legs(q_R)))
        return equal(lhs, one2)

    singles = [(i,) for i in range(Q.dim)]
    report = AxiomReport([
        _run("qr1", singles, qr1),
        _run("qr1a", singles, qr1a),
        _run("pqra", [()], pqra),
        _run("pqr", [()], pqr),
    ])
    return PQResult(p_R, q_R, report)


# ---------------------------------------------------------------------------
# twists


@dataclass
class TwistData:
    F: Elem
    FInv: Elem


def twist_errors(Q: QuasiHopfData, T: TwistData) -> list[str]:
    one1, one2 = Q.one(1), Q.one(2)
    errs = []
    if not (equal(Q.mul(T.F, T.FInv), one2) and equal(Q.mul(T.FInv, T.F), one2)):
        errs.append("F * FInv != 1")
    if not (equal(Q.eps_at(T.F, 0), one1) and equal(Q.eps_at(T.F, 1), one1)):
        errs.append("F is not counital")
    return errs


def invert_two_tensor(Q: QuasiHopfData, F: Elem) -> Elem:
    """Inverse of F in H (x) H by exact linear algebra (left multiplication matrix)."""
    d = Q.dim
    idx = [(i, j) for i in range(d) for j in range(d)]
    zero = Q.c(0)
    # column k = F * e_k
    cols = [Q.mul(F, {k: Q.c(1)}) for k in idx]
    M = [[cols[c].get(r, zero) for c in range(len(idx))] for r in idx]
    rhs = [Q.one(2).get(r, zero) for r in idx]
    sol = solve_consistent(M, rhs, len(idx), Q.N)
    if sol is None:
        raise ValueError("twist is not invertible")
    G = clean({k: s for k, s in zip(idx, sol)})
    if not equal(Q.mul(G, F), Q.one(2)):
        raise ValueError("twist is not invertible")
    return G


def make_twist(Q: QuasiHopfData, F: Elem, FInv: Optional[Elem] = None) -> TwistData:
    T = TwistData(F, FInv if FInv is not None else invert_two_tensor(Q, F))
    errs = twist_errors(Q, T)
    if errs:
        raise ValueError("; ".join(errs))
    return T


def twist(Q: QuasiHopfData, T: TwistData) -> QuasiHopfData:
    """The twisted structure Q_F."""
    errs = twist_errors(Q, T)
    if errs:
        raise ValueError("invalid twist: " + "; ".join(errs))
    F, G = T.F, T.FInv
    one = Q.one(1)
    comult = [Q.prod(F, Q.comult[i], G) for i in range(Q.dim)]
    Phi = Q.prod(outer(one, F), Q.delta_at(F, 1), Q.Phi, Q.delta_at(G, 0), outer(G, one))
    PhiInv = Q.prod(outer(F, one), Q.delta_at(F, 0), Q.PhiInv, Q.delta_at(G, 1), outer(one, G))
    alpha = add(*(scale(Q.prod(Q.antipode(a), Q.alpha, b), c) for c, (a, b) in Q.legs(G)))
    beta = add(*(scale(Q.prod(a, Q.beta, Q.antipode(b)), c) for c, (a, b) in Q.legs(F)))
    return replace(Q, comult=comult, Phi=Phi, PhiInv=PhiInv, alpha=alpha, beta=beta,
                   name=f"{Q.name}_F" if Q.name else "")


def inverse_twist(T: TwistData) -> TwistData:
    return TwistData(T.FInv, T.F)


# ---------------------------------------------------------------------------
# generic builders


def build_from_words(
    N: int,
    labels: list,
    mult: list,
    words: list,
    gen_delta: dict,
    gen_S: dict,
    gen_eps: dict,
    Phi: Elem,
    PhiInv: Elem,
    alpha: Elem,
    beta: Elem,
    unit_index: int = 0,
    name: str = "",
) -> QuasiHopfData:
    """Extend Delta, S and epsilon multiplicatively from generator images.

    ``words[i]`` is the generator word whose product is basis element i (the
    empty word for the unit); S reverses the order of the word.
    """
    one = CycloNum.one(N)
    d = len(labels)
    Q = QuasiHopfData(N, labels, mult, {(unit_index,): one}, [None] * d, [None] * d,
                      Phi, PhiInv, [None] * d, alpha, beta, {}, name)
    for i, w in enumerate(words):
        D = Q.one(2)
        s = Q.one(1)
        eps = one
        for g in w:
            D = Q.mul(D, gen_delta[g])
            s = Q.mul(gen_S[g], s)
            eps = eps * _to_cyclo(N, gen_eps[g])
        Q.comult[i] = D
        Q.counit[i] = eps
        Q.S[i] = {k[0]: c for k, c in s.items()}
    for i, w in enumerate(words):
        if len(w) == 1:
            Q.generators.setdefault(w[0], Q.basis(i))
    return Q


def _proj_C2(N, plus: bool, one_idx=0, g_idx=1) -> Elem:
    h = CycloNum.from_rational(N, Fraction(1, 2))
    return {(one_idx,): h, (g_idx,): h if plus else -h}


def _phi_minus(N, pm: Elem):
    """1 - 2 p_-^(x3) and its inverse (it is an involution)."""
    one = CycloNum.one(N)
    unit = {(0,): one}
    Phi = add(outer(unit, unit, unit), scale(outer(pm, pm, pm), -2))
    return Phi, Phi


# ---------------------------------------------------------------------------
# presets


def group_algebra_C2(N: int = 4, gname: str = "g") -> QuasiHopfData:
    """k[C2] with trivial reassociator; basis [1, g]."""
    one = CycloNum.one(N)
    mult = [[{0: one}, {1: one}], [{1: one}, {0: one}]]
    unit = {(0,): one}
    Phi = outer(unit, unit, unit)
    g = {(1,): one}
    return build_from_words(N, ["1", gname], mult, [[], [gname]], {gname: outer(g, g)}, {gname: g},
                            {gname: 1}, Phi, dict(Phi), unit, unit, name="kC2")


def h2(N: int = 4) -> QuasiHopfData:
    """k[C2] with reassociator 1 - 2 p_- (x) p_- (x) p_-; alpha = 1, beta = g."""
    Q = group_algebra_C2(N)
    Phi, PhiInv = _phi_minus(N, _proj_C2(N, False))
    return replace(Q, Phi=Phi, PhiInv=PhiInv, beta={(1,): CycloNum.one(N)}, name="H(2)")


def nichols(n: int, N: int = 4) -> QuasiHopfData:
    """Nichols Hopf algebra H_{2^n}: grouplike g, skew-primitives x_1..x_n.

    Basis g^a x_S (S ascending) at index a + 2*mask(S).  Delta(x_i) = x_i (x) 1 + g (x) x_i.
    """
    if n < 1:
        raise ValueError("nichols needs n >= 1")
    one = CycloNum.one(N)
    d = 2 ** (n + 1)
    labels, words = [], []
    for idx in range(d):
        a, mask = idx % 2, idx // 2
        S = [i for i in range(n) if mask >> i & 1]
        w = (["g"] if a else []) + [f"x{i + 1}" for i in S]
        words.append(w)
        labels.append("*".join(w) if w else "1")
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        a, m1 = i % 2, i // 2
        for j in range(d):
            b, m2 = j % 2, j // 2
            if m1 & m2:
                continue
            sign = (-1) ** (b * bin(m1).count("1"))
            # x_S x_T: move each x_t past the larger elements of S
            for t in range(n):
                if m2 >> t & 1:
                    sign *= (-1) ** bin(m1 >> (t + 1)).count("1")
            mult[i][j] = {(a + b) % 2 + 2 * (m1 | m2): one * sign}
    unit = {(0,): one}
    g = {(1,): one}
    delta = {"g": outer(g, g)}
    S = {"g": g}
    eps = {"g": 1}
    for i in range(n):
        x = {(2 * 2 ** i,): one}
        gx = {(1 + 2 * 2 ** i,): one}
        delta[f"x{i + 1}"] = add(outer(x, unit), outer(g, x))
        S[f"x{i + 1}"] = neg(gx)
        eps[f"x{i + 1}"] = 0
    Phi = outer(unit, unit, unit)
    Q = build_from_words(N, labels, mult, words, delta, S, eps, Phi, dict(Phi), unit, unit,
                         name=f"H_{d}")
    return Q


def h4(N: int = 4) -> QuasiHopfData:
    """Sweedler's algebra, basis [1, g, x, gx]."""
    Q = nichols(1, N)
    Q.labels = ["1", "g", "x", "g*x"]
    Q.generators["x"] = Q.generators.pop("x1")
    Q.name = "H4"
    return Q


def hq8(sign: int = 1, N: int = 4) -> QuasiHopfData:
    """H_q(8) with q = sign * i: g^2 = 1, x^4 = 0, gx = -xg; basis g^a x^k at a + 2k.

    Delta(x) = x (x) (p_+ + q p_-) + 1 (x) p_+ x + g (x) p_- x,  S(x) = -x (p_+ + q p_-),
    Phi = 1 - 2 p_-^(x3), alpha = g, beta = 1.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if N % 4:
        raise ValueError("conductor must be a multiple of 4")
    one = CycloNum.one(N)
    q = embed_root(4, 1 if sign == 1 else 3).lift(N)
    d = 8
    labels, words = [], []
    for idx in range(d):
        a, k = idx % 2, idx // 2
        w = (["g"] if a else []) + ["x"] * k
        words.append(w)
        labels.append(("g" if a else "") + ("*" if a and k else "") + (f"x^{k}" if k > 1 else "x" if k else "")
                      or "1")
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        a, k = i % 2, i // 2
        for j in range(d):
            b, l = j % 2, j // 2
            if k + l < 4:
                mult[i][j] = {(a + b) % 2 + 2 * (k + l): one * (-1) ** (b * k)}
    Q0 = QuasiHopfData(N, labels, mult, {(0,): one}, [], [], {}, {}, [], {}, {})
    unit, g, x = {(0,): one}, {(1,): one}, {(2,): one}
    pp, pm = _proj_C2(N, True), _proj_C2(N, False)
    chi = add(pp, scale(pm, q))
    delta_x = add(outer(x, chi), outer(unit, Q0.mul(pp, x)), outer(g, Q0.mul(pm, x)))
    S_x = neg(Q0.mul(x, chi))
    Phi, PhiInv = _phi_minus(N, pm)
    return build_from_words(N, labels, mult, words, {"g": outer(g, g), "x": delta_x}, {"g": g, "x": S_x},
                            {"g": 1, "x": 0}, Phi, PhiInv, g, unit, name=f"H_q(8){'+' if sign == 1 else '-'}")


def kGw(G, omega, N: Optional[int] = None) -> QuasiHopfData:
    """Dual group algebra k^G with Phi = sum omega(x,y,z) P_x (x) P_y (x) P_z.

    ``omega`` is a Cochain of arity 3; basis P_x in the order of G.elements().
    alpha = 1 and beta = sum omega(x, x^-1, x)^-1 P_x.
    """
    elems = G.elements()
    pos = {x: i for i, x in enumerate(elems)}
    if N is None:
        N = G.N if isinstance(G, AbelianGroup) else omega.modulus
    if N % omega.modulus:
        N = lcm(N, omega.modulus)
    one = CycloNum.one(N)
    d = len(elems)
    root = lambda e: embed_root(omega.modulus, e).lift(N)
    mult = [[{i: one} if i == j else {} for j in range(d)] for i in range(d)]
    unit = {(i,): one for i in range(d)}
    comult = [dict() for _ in range(d)]
    for y in elems:
        for z in elems:
            comult[pos[G.mul(y, z)]][(pos[y], pos[z])] = one
    e_idx = pos[G.identity]
    counit = [one if i == e_idx else CycloNum.zero(N) for i in range(d)]
    S = [{pos[G.inv(x)]: one} for x in elems]
    Phi, PhiInv = {}, {}
    for x, y, z in itertools.product(elems, repeat=3):
        ex = omega.exp(x, y, z)
        Phi[(pos[x], pos[y], pos[z])] = root(ex)
        PhiInv[(pos[x], pos[y], pos[z])] = root(-ex)
    beta = {(pos[x],): root(-omega.exp(x, G.inv(x), x)) for x in elems}
    labels = ["P" + "".join(map(str, x)) if isinstance(G, AbelianGroup) else f"P{x}" for x in elems]
    return QuasiHopfData(N, labels, mult, unit, comult, counit, Phi, PhiInv, S, dict(unit), beta,
                         {}, name=f"k^{G}_w")


def tensor(Q1: QuasiHopfData, Q2: QuasiHopfData, names1: Optional[dict] = None,
           names2: Optional[dict] = None) -> QuasiHopfData:
    """Tensor product quasi-Hopf algebra; basis index i1 * dim(Q2) + i2.

    Generator names may be renamed with ``names1``/``names2``; remaining
    clashes get the suffixes 1 and 2.
    """
    N = lcm(Q1.N, Q2.N)
    A, B = Q1.lifted(N), Q2.lifted(N)
    d1, d2 = A.dim, B.dim
    ix = lambda i, j: i * d2 + j

    def pair(X: Elem, Y: Elem) -> Elem:
        out: Elem = {}
        for k1, c1 in X.items():
            for k2, c2 in Y.items():
                key = tuple(ix(a, b) for a, b in zip(k1, k2))
                v = c1 * c2
                out[key] = out[key] + v if key in out else v
        return clean(out)

    labels = [f"{a}|{b}" for a in A.labels for b in B.labels]
    mult = [[{} for _ in range(d1 * d2)] for _ in range(d1 * d2)]
    for i1, j1 in itertools.product(range(d1), repeat=2):
        m1 = A.mult[i1][j1]
        if not m1:
            continue
        for i2, j2 in itertools.product(range(d2), repeat=2):
            m2 = B.mult[i2][j2]
            if m2:
                mult[ix(i1, i2)][ix(j1, j2)] = {ix(k1, k2): c1 * c2 for k1, c1 in m1.items() for k2, c2 in m2.items()}
    comult, counit, S = [], [], []
    for i1 in range(d1):
        for i2 in range(d2):
            comult.append(pair(A.comult[i1], B.comult[i2]))
            counit.append(A.counit[i1] * B.counit[i2])
            S.append({k: v for (k,), v in pair({(a,): c for a, c in A.S[i1].items()},
                                                 {(b,): c for b, c in B.S[i2].items()}).items()})
    n1 = dict(names1 or {})
    n2 = dict(names2 or {})
    for k in A.generators:
        n1.setdefault(k, k + "1" if k in B.generators and k not in n2.values() else k)
    for k in B.generators:
        n2.setdefault(k, k + "2" if k in A.generators and k not in n1.values() else k)
    gens = {n1[k]: pair(v, B.unit) for k, v in A.generators.items()}
    gens.update({n2[k]: pair(A.unit, v) for k, v in B.generators.items()})
    return QuasiHopfData(
        N, labels, mult, pair(A.unit, B.unit), comult, counit,
        pair(A.Phi, B.Phi), pair(A.PhiInv, B.PhiInv), S,
        pair(A.alpha, B.alpha), pair(A.beta, B.beta), gens, name=f"{A.name}(x){B.name}",
    )


def change_basis(Q: QuasiHopfData, P: list, labels: Optional[list] = None) -> QuasiHopfData:
    """Re-express Q in the basis whose i-th vector is the 1-tensor P[i] (old coordinates)."""
    d = Q.dim
    zero = Q.c(0)
    M = [[P[j].get((i,), zero) for j in range(d)] for i in range(d)]
    Minv = mat_inverse(M, Q.N)
    inv_rows = [{(i,): Minv[i][j] for i in range(d) if not Minv[i][j].is_zero()} for j in range(d)]

    def conv(X: Elem) -> Elem:
        for pos in range(len(next(iter(X))) if X else 0):
            X = Q.apply(X, pos, lambda j: inv_rows[j])
        return X

    mult = [[{k[0]: c for k, c in conv(Q.mul(P[i], P[j])).items()} for j in range(d)] for i in range(d)]
    return QuasiHopfData(
        Q.N, labels or list(Q.labels), mult, conv(Q.unit),
        [conv(Q.Delta(P[i])) for i in range(d)],
        [Q.counit_of(P[i]) for i in range(d)],
        conv(Q.Phi), conv(Q.PhiInv),
        [{k[0]: c for k, c in conv(Q.antipode(P[i])).items()} for i in range(d)],
        conv(Q.alpha), conv(Q.beta),
        {k: conv(v) for k, v in Q.generators.items()}, Q.name,
    )


# ---------------------------------------------------------------------------
# preset parsing


def preset(name: str, params=None) -> QuasiHopfData:
    """Presets: h4, h2, kC2, hq8 (params=+1/-1), nichols (params=n), kGw (params=(G, omega)),
    tensor (params=(Q1, Q2))."""
    if name == "h4":
        return h4()
    if name == "h2":
        return h2()
    if name == "kC2":
        return group_algebra_C2()
    if name == "hq8":
        return hq8(1 if params in (None, "+", 1) else -1 if params in ("-", -1) else _bad(name, params))
    if name == "nichols":
        return nichols(int(params))
    if name == "kGw":
        G, omega = params
        return kGw(G, omega)
    if name == "tensor":
        return tensor(*params)
    raise ValueError(f"unknown preset {name!r}")


def _bad(name, params):
    raise ValueError(f"invalid parameters {params!r} for preset {name!r}")


def parse_preset(text: str) -> QuasiHopfData:
    """Parse ``h4``, ``h2``, ``kC2``, ``hq8:+``, ``nichols:2``, ``kGw:abelian:2,2:c=0,1;c12=1``, ``kGw:ddn:2:p=1``."""
    from . import cocycles as cc
    from .groups import parse_group

    head, _, rest = text.strip().partition(":")
    if head in ("h4", "h2", "kC2") and not rest:
        return preset(head)
    if head == "hq8":
        return preset("hq8", rest or "+")
    if head == "nichols":
        try:
            return preset("nichols", int(rest))
        except ValueError:
            raise ValueError(f"bad preset {text!r}") from None
    if head == "kGw":
        parts = rest.split(":")
        if len(parts) < 2:
            raise ValueError(f"bad preset {text!r}; expected kGw:<group>:<datum>")
        G = parse_group(parts[0] + ":" + parts[1])
        datum = ":".join(parts[2:])
        if isinstance(G, DdnGroup):
            p = int(datum.partition("=")[2] or 0) if datum else 0
            return kGw(G, cc.omega_ddn_cochain(G.n, p))
        if not datum:
            raise ValueError(f"bad preset {text!r}; missing datum")
        a = cc.parse_datum(datum, G)
        return kGw(G, cc.omega_abelian_cochain(G, a, cap=None))
    raise ValueError(f"unknown preset {text!r}")


# ---------------------------------------------------------------------------
# H4 twists


@dataclass(frozen=True)
class H4TwistScalars:
    a: object = 1
    b: object = 0
    c: object = 0
    mu: object = 0
    nu: object = 0
    tau: object = 0
    u: object = 0
    v: object = 0
    w: object = 0

    FIELDS = ("a", "b", "c", "mu", "nu", "tau", "u", "v", "w")

    def as_cyclo(self, N: int = 4) -> "H4TwistScalars":
        return H4TwistScalars(*(_to_cyclo(N, getattr(self, f)) for f in self.FIELDS))

    def values(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)

    def inverse_scalars(self) -> "H4TwistScalars":
        """Scalars of F^-1 in the same normal form."""
        s = self.as_cyclo()
        if s.a.is_zero():
            raise ValueError("a = 0: not a twist")
        a = s.a
        return H4TwistScalars(
            a=a.inverse(), b=-s.b / a, c=-s.c / a, mu=-s.mu / a, nu=-s.nu / a,
            tau=s.c * s.mu / a - s.tau, u=-s.u / a, v=s.u * s.b / a - s.v, w=-s.w / a,
        )


def _h4_pbasis(Q: QuasiHopfData) -> dict:
    pp, pm = _proj_C2(Q.N, True), _proj_C2(Q.N, False)
    x = Q.gen("x")
    return {"p+": pp, "p-": pm, "p+x": Q.mul(pp, x), "p-x": Q.mul(pm, x)}


_H4_SLOTS = {
    "a": ("p-", "p-"), "b": ("p-", "p-x"), "c": ("p-", "p+x"),
    "mu": ("p-x", "p-"), "nu": ("p-x", "p-x"), "tau": ("p-x", "p+x"),
    "u": ("p+x", "p-"), "v": ("p+x", "p-x"), "w": ("p+x", "p+x"),
}


def h4_twist_element(s: H4TwistScalars, Q: Optional[QuasiHopfData] = None) -> Elem:
    """p_+ (x) 1 + p_- (x) p_+ + the nine scalar terms on {p_-, p_+x, p_-x}-slots."""
    Q = Q or h4()
    s = s.as_cyclo(Q.N)
    pb = _h4_pbasis(Q)
    terms = [outer(pb["p+"], Q.one(1)), outer(pb["p-"], pb["p+"])]
    for f, (l, r) in _H4_SLOTS.items():
        terms.append(scale(outer(pb[l], pb[r]), getattr(s, f)))
    return add(*terms)


def h4_twist(s: H4TwistScalars, Q: Optional[QuasiHopfData] = None) -> TwistData:
    Q = Q or h4()
    if s.as_cyclo(Q.N).a.is_zero():
        raise ValueError("a = 0: not a twist")
    F = h4_twist_element(s, Q)
    FInv = h4_twist_element(s.inverse_scalars(), Q)
    if not equal(Q.mul(F, FInv), Q.one(2)):
        raise ArithmeticError("inverse scalars do not invert F")
    return TwistData(F, FInv)


def h4_twist_scalars_of(F: Elem, Q: Optional[QuasiHopfData] = None) -> Optional[H4TwistScalars]:
    """Read a 2-tensor back into normal form, or None if it is not of that shape."""
    Q = Q or h4()
    pb = _h4_pbasis(Q)
    names = ["p+", "p-", "p+x", "p-x"]
    Pinv = mat_inverse([[pb[n].get((i,), Q.c(0)) for n in names] for i in range(4)], Q.N)
    coords = F
    for pos in (0, 1):
        coords = Q.apply(coords, pos, lambda j: {(r,): Pinv[r][j] for r in range(4) if not Pinv[r][j].is_zero()})
    coords = dict(coords)
    z = Q.c(0)
    get = lambda l, r: coords.pop((names.index(l), names.index(r)), z)
    # p_+ (x) 1 = p_+ (x) p_+ + p_+ (x) p_-
    if get("p+", "p+") != 1 or get("p+", "p-") != 1 or get("p-", "p+") != 1:
        return None
    vals = {f: get(l, r) for f, (l, r) in _H4_SLOTS.items()}
    if any(not c.is_zero() for c in coords.values()):
        return None
    return H4TwistScalars(**vals)


@dataclass(frozen=True)
class TwistEquivWitness:
    omega_sq: CycloNum
    kappa: CycloNum
    omega: Optional[CycloNum] = None


def h4_twist_equiv(sF: H4TwistScalars, sG: H4TwistScalars) -> Optional[TwistEquivWitness]:
    """A witness (omega, kappa) relating the two normal forms, or None."""
    F, G = sF.as_cyclo(), sG.as_cyclo()
    if F.a.is_zero() or G.a.is_zero():
        raise ValueError("both scalar sets need a != 0")
    if F.a != G.a:
        return None
    lin = ("b", "c", "mu", "u")
    omega = None
    for f in lin:
        x = getattr(F, f)
        if not x.is_zero():
            omega = getattr(G, f) / x
            break
    if omega is not None:
        if omega.is_zero() or any(getattr(G, f) != omega * getattr(F, f) for f in lin):
            return None
        osq = omega * omega
    else:
        if any(not getattr(G, f).is_zero() for f in lin):
            return None
        # nu' - a tau' = w2 (nu - a tau), v' + tau' = w2 (v + tau), w' + tau' = w2 (w + tau)
        eqs = [(G.nu - G.a * G.tau, F.nu - F.a * F.tau), (G.v + G.tau, F.v + F.tau), (G.w + G.tau, F.w + F.tau)]
        osq = None
        for lhs, coef in eqs:
            if not coef.is_zero():
                osq = lhs / coef
                break
        if osq is None:
            osq = CycloNum.one(4)
        if osq.is_zero():
            return None
    kappa = G.tau - osq * F.tau
    ok = (G.nu == osq * F.nu + kappa * F.a and G.v == osq * F.v - kappa and G.w == osq * F.w - kappa)
    if not ok:
        return None
    if omega is None and osq == 1:
        omega = CycloNum.one(4)
    return TwistEquivWitness(omega_sq=osq, kappa=kappa, omega=omega)


def h4_apply_equiv(s: H4TwistScalars, omega, kappa) -> H4TwistScalars:
    """Scalars of the twist obtained from s by the (omega, kappa) transformation."""
    s = s.as_cyclo()
    w = _to_cyclo(4, omega)
    k = _to_cyclo(4, kappa)
    w2 = w * w
    return H4TwistScalars(
        a=s.a, b=w * s.b, c=w * s.c, mu=w * s.mu, u=w * s.u,
        nu=w2 * s.nu + k * s.a, tau=w2 * s.tau + k, v=w2 * s.v - k, w=w2 * s.w - k,
    )


# ---------------------------------------------------------------------------
# pairs (sigma, v)


@dataclass
class SigmaV:
    sigma: list
    v: Elem


@dataclass(frozen=True)
class PairCheck:
    ok: bool
    failed: Optional[str] = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def is_algebra_map(Q: QuasiHopfData, sigma: list) -> Optional[tuple]:
    """None if sigma is a unital algebra map, else a failing (i, j) or ('unit',)."""
    if Q.eval_functional(sigma, Q.unit) != 1:
        return ("unit",)
    for i in range(Q.dim):
        for j in range(Q.dim):
            lhs = Q.eval_functional(sigma, Q.mul(Q.basis(i), Q.basis(j)))
            if lhs != sigma[i] * sigma[j]:
                return (i, j)
    return None


def _sigma_contract(Q, T: Elem, sigma, pos_list) -> Elem:
    for pos in sorted(pos_list, reverse=True):
        T = Q.functional_at(T, pos, sigma)
    return T


def pair_coproduct_rhs(Q: QuasiHopfData, sv: SigmaV) -> Elem:
    """sigma(y^1 x^3 X^2) x^1 X^1 v y^2 (x) x^2 v X^3 y^3, i.e. B (1 (x) v) A (v (x) 1) C."""
    sig = [_to_cyclo(Q.N, s) for s in sv.sigma]
    one = Q.one(1)
    v = sv.v
    A = _sigma_contract(Q, Q.Phi, sig, [1])        # sigma(X^2) X^1 (x) X^3
    B = _sigma_contract(Q, Q.PhiInv, sig, [2])     # sigma(x^3) x^1 (x) x^2
    C = _sigma_contract(Q, Q.PhiInv, sig, [0])     # sigma(y^1) y^2 (x) y^3
    return Q.prod(B, outer(one, v), A, outer(v, one), C)


def check_pair(Q: QuasiHopfData, sv: SigmaV) -> PairCheck:
    """Check sigma(v) = -1, eps(v) = 1, the coproduct identity for v and
    sigma(h_2) h_1 v = sigma(h_1) v h_2 on every basis element h."""
    sig = [_to_cyclo(Q.N, s) for s in sv.sigma]
    bad = is_algebra_map(Q, sig)
    if bad is not None:
        raise ValueError(f"sigma is not an algebra map (fails at {bad})")
    v = sv.v
    if Q.eval_functional(sig, v) != -1:
        return PairCheck(False, "sigma(v) = -1")
    if Q.counit_of(v) != 1:
        return PairCheck(False, "eps(v) = 1")
    if not equal(Q.Delta(v), pair_coproduct_rhs(Q, sv)):
        return PairCheck(False, "coproduct")
    for i in range(Q.dim):
        D = Q.comult[i]
        lhs = Q.mul(_sigma_contract(Q, D, sig, [1]), v)
        rhs = Q.mul(v, _sigma_contract(Q, D, sig, [0]))
        if not equal(lhs, rhs):
            return PairCheck(False, "commutation", (i,))
    return PairCheck(True)


def sigma_from_generators(Q: QuasiHopfData, values: dict) -> list:
    """The linear functional determined multiplicatively by generator values.

    Words in the generators are explored breadth-first until they span Q;
    consistency (that sigma is an algebra map) is left to check_pair.
    """
    gens = {k: Q.gen(k) for k in values}
    vals = {k: _to_cyclo(Q.N, v) for k, v in values.items()}
    d = Q.dim
    zero = Q.c(0)
    rows, rhs = [], []
    echelon: list = []  # (pivot, row) in reduced form

    def reduce(row):
        row = list(row)
        for p, r in echelon:
            if not row[p].is_zero():
                f = row[p]
                row = [a - f * b for a, b in zip(row, r)]
        return row

    def try_add(X, val):
        row = [X.get((i,), zero) for i in range(d)]
        red = reduce(row)
        p = next((i for i, c in enumerate(red) if not c.is_zero()), None)
        if p is None:
            return False
        inv = red[p].inverse()
        echelon.append((p, [c * inv for c in red]))
        rows.append(row)
        rhs.append(val)
        return True

    frontier = [(Q.unit, Q.c(1))]
    try_add(*frontier[0])
    while frontier and len(echelon) < d:
        nxt = []
        for X, val in frontier:
            for k, g in gens.items():
                Y = Q.mul(X, g)
                if try_add(Y, val * vals[k]):
                    nxt.append((Y, val * vals[k]))
        frontier = nxt
    if len(echelon) < d:
        raise ValueError("generators do not span the algebra")
    sol = solve_consistent(rows, rhs, d, Q.N)
    return sol


# ---------------------------------------------------------------------------
# rank-2 biproducts


def biproduct_g(Q: QuasiHopfData) -> QuasiHopfData:
    """k[C2] (x) Q: a central grouplike g adjoined; basis {b, g b}.

    The new grouplike is called g2; a generator g of Q is renamed g1.
    """
    kc2 = group_algebra_C2(Q.N, "g")
    names2 = {"g": "g1"} if "g" in Q.generators else {}
    out = tensor(kc2, Q, names1={"g": "g2"}, names2=names2)
    out.name = f"{Q.name}_g"
    return out


def biproduct_theta(Q: QuasiHopfData, sv: SigmaV, check: bool = True) -> QuasiHopfData:
    """H(theta)_{sigma, v}: theta^2 = 0, h theta = sigma(h_1) theta h_2.

    Output basis: {b_i} followed by {b_i theta}.
    """
    if check:
        pc = check_pair(Q, sv)
        if not pc:
            raise ValueError(f"invalid pair: {pc.failed} fails")
    N = Q.N
    d = Q.dim
    sig = [_to_cyclo(N, s) for s in sv.sigma]
    one = CycloNum.one(N)
    # first in the basis {b_i, theta b_i}
    mult = [[{} for _ in range(2 * d)] for _ in range(2 * d)]
    sigma_left = [_sigma_contract(Q, Q.comult[i], sig, [0]) for i in range(d)]  # sigma(h_1) h_2
    for i in range(d):
        for j in range(d):
            m = Q.mult[i][j]
            mult[i][j] = dict(m)
            mult[d + i][j] = {d + k: c for k, c in m.items()}
            prod = Q.mul(sigma_left[i], Q.basis(j))
            mult[i][d + j] = {d + k[0]: c for k, c in prod.items()}
    zero = CycloNum.zero(N)
    counit = list(Q.counit) + [zero] * d
    A = QuasiHopfData(N, list(Q.labels) + [f"t*{l}" for l in Q.labels], mult, dict(Q.unit),
                      [None] * (2 * d), counit, dict(Q.Phi), dict(Q.PhiInv), [None] * (2 * d),
                      dict(Q.alpha), dict(Q.beta), dict(Q.generators), f"{Q.name}(theta)")
    theta = {(d + k[0],): c for k, c in Q.unit.items()}
    v = sv.v
    # Delta(theta) = sigma(X^2 x^1) v X^1 x^2 (x) theta X^3 x^3 + sigma(x^1) theta x^2 (x) x^3
    terms = []
    for cX, (X1, X2, X3) in Q.legs(Q.Phi):
        sX = Q.eval_functional(sig, X2)
        if sX.is_zero():
            continue
        for cx, (x1, x2, x3) in Q.legs(Q.PhiInv):
            s = sX * Q.eval_functional(sig, x1)
            if s.is_zero():
                continue
            terms.append(scale(outer(A.prod(v, X1, x2), A.prod(theta, X3, x3)), cX * cx * s))
    for cx, (x1, x2, x3) in Q.legs(Q.PhiInv):
        s = Q.eval_functional(sig, x1)
        if not s.is_zero():
            terms.append(scale(outer(A.mul(theta, x2), x3), cx * s))
    delta_theta = add(*terms)
    # S(theta) = -sigma(X^2 x^1_2) S(X^1 x^1_1 v) alpha theta X^3 x^2 beta S(x^3)
    terms = []
    for cX, (X1, X2, X3) in Q.legs(Q.Phi):
        sX = Q.eval_functional(sig, X2)
        if sX.is_zero():
            continue
        for cx, (x1, x2, x3) in Q.legs(Q.PhiInv):
            right = A.prod(Q.alpha, theta, X3, x2, Q.beta, Q.antipode(x3))
            for ca, (a, b) in Q.legs(Q.Delta(x1)):
                s = sX * Q.eval_functional(sig, b)
                if s.is_zero():
                    continue
                left = Q.antipode(Q.prod(X1, a, v))
                terms.append(scale(A.mul(left, right), -(cX * cx * ca * s)))
    S_theta = add(*terms)
    for i in range(d):
        A.comult[i] = dict(Q.comult[i])
        A.comult[d + i] = A.mul(delta_theta, Q.comult[i])
        A.S[i] = dict(Q.S[i])
        Sb = {(k,): c for k, c in Q.S[i].items()}
        A.S[d + i] = {k[0]: c for k, c in A.mul(Sb, S_theta).items()}
    # switch to {b_i, b_i theta} with b theta = theta sigma(b_1) b_2
    P = [A.basis(i) for i in range(d)] + [A.mul(A.basis(i), theta) for i in range(d)]
    labels = list(Q.labels) + [f"{l}*t" if l != "1" else "t" for l in Q.labels]
    out = change_basis(A, P, labels)
    out.generators = dict(Q.generators)
    out.generators["theta"] = {(d + k[0],): c for k, c in Q.unit.items()}
    return out


def from_classification(G: AbelianGroup, a, pair) -> tuple[QuasiHopfData, SigmaV]:
    """kGw(G, omega_a) together with the (sigma, v) of a classified pair.

    sigma is evaluation at the element f and v = sum_l rho(l) P_l.
    """
    from . import classify as cl
    from . import cocycles as cc

    omega = cc.omega_abelian_cochain(G, a, cap=None)
    Q = kGw(G, omega)
    elems = G.elements()
    f = G.canon(pair.f)
    sigma = [Q.c(1) if x == f else Q.c(0) for x in elems]
    N = G.N
    v = {(i,): embed_root(N, cl.v_exponent(G, a, pair.f, pair.lam, l)).lift(Q.N) for i, l in enumerate(elems)}
    return Q, SigmaV(sigma, v)


def from_ddn(n: int, p: int, rho) -> tuple[QuasiHopfData, SigmaV]:
    """kGw(ddn_n, omega_p) with sigma = evaluation at R^n and v = sum rho(x) P_x."""
    from . import cocycles as cc

    D = DdnGroup(n)
    Q = kGw(D, cc.omega_ddn_cochain(n, p), N=lcm(cc.ddn_modulus(n), rho.modulus))
    sigma = [Q.c(1) if x == D.Rn else Q.c(0) for x in D.elements()]
    v = {(i,): embed_root(rho.modulus, rho.exp(x)).lift(Q.N) for i, x in enumerate(D.elements())}
    return Q, SigmaV(sigma, v)
