"""Invariant means, traces on groupoid algebras, the induced l1 seminorm and
the Passman-style inequalities, all decided in exact rational arithmetic.

Norms are handled through their squares: ``norm_sq(a) = tau(a a*)`` and
``ell1_seminorm(a)**2`` are rational, so inequalities between norms are
compared in squared form and never need square roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import (
    AlgebraElement,
    FiniteBasisAlgebra,
    all_rook_matrices,
    embed_rook,
    groupoid_algebra,
    matrix_algebra,
    random_element,
)
from .errors import InputError, NotInvariantError, SizeError, VerificationError
from .groupoid import (
    DEFAULT_MAX_BISECTION_ARROWS,
    FiniteGroupoid,
    enumerate_bisections,
    orbits_and_isotropy,
)
from .linalg import hermitian_psd, independent_subset, solve
from .scalars import Gaussian, ONE, ZERO
from .simplex import linprog_eq

DEFAULT_MAX_LP_ARROWS = 16


# ---------------------------------------------------------------------------
# means


@dataclass(frozen=True)
class InvariantMean:
    """Nonnegative rational weight per object of the unit space."""

    weights: tuple

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if any(x < 0 for x in w):
            raise InputError("mean weights must be nonnegative")
        object.__setattr__(self, "weights", w)

    def measure(self, objects: Iterable[int]) -> Fraction:
        return sum((self.weights[x] for x in set(objects)), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def faithful(self) -> bool:
        return all(w > 0 for w in self.weights)

    def normalized(self) -> "InvariantMean":
        t = self.total
        if not t:
            raise InputError("cannot normalize the zero mean")
        return InvariantMean(tuple(w / t for w in self.weights))

    def to_json(self) -> dict:
        return {"weights": [[str(x), w.numerator, w.denominator] for x, w in enumerate(self.weights)]}

    @classmethod
    def from_json(cls, data: dict, n_objects: Optional[int] = None) -> "InvariantMean":
        entries = data["weights"]
        w = {}
        for x, num, den in entries:
            w[int(x)] = Fraction(int(num), int(den))
        n = n_objects if n_objects is not None else (max(w) + 1 if w else 0)
        if any(not 0 <= x < n for x in w):
            raise InputError("weight given for an unknown object")
        return cls(tuple(w.get(x, Fraction(0)) for x in range(n)))


def canonical_mean(G: FiniteGroupoid) -> InvariantMean:
    """Weight 1 / (2^i |O_i|) on each object of the i-th orbit (orbits by least object, i from 1)."""
    dec = orbits_and_isotropy(G)
    w = [Fraction(0)] * G.n_objects
    for i, orbit in enumerate(dec.orbits, start=1):
        for x in orbit:
            w[x] = Fraction(1, 2**i * len(orbit))
    return InvariantMean(tuple(w))


@dataclass(frozen=True)
class MeanVerdict:
    invariant: bool
    by_bisections: Optional[bool]
    by_orbits: bool
    certificate: Optional[dict] = None

    def __bool__(self):
        return self.invariant


def _bisections(G: FiniteGroupoid, max_arrows: int) -> list:
    cache = G.__dict__.setdefault("_finitude_cache", {})
    key = "bisections"
    if key not in cache:
        cache[key] = enumerate_bisections(G, max_arrows=max_arrows)
    return cache[key]


def is_invariant_mean(mu: InvariantMean, G: FiniteGroupoid, *,
                      max_arrows: int = DEFAULT_MAX_BISECTION_ARROWS) -> MeanVerdict:
    """Decide invariance two ways: all bisections, and constancy on orbits.

    The bisection scan is skipped above ``max_arrows``; when both run they
    must agree, otherwise a VerificationError is raised.
    """
    if len(mu.weights) != G.n_objects:
        raise InputError("mean has the wrong number of weights")
    dec = orbits_and_isotropy(G)
    by_orbits = True
    cert = None
    for orbit in dec.orbits:
        base = mu.weights[orbit[0]]
        for y in orbit:
            if mu.weights[y] != base:
                by_orbits = False
                cert = cert or {"orbit": list(orbit), "objects": [orbit[0], y]}
                break
    by_bis = None
    if G.n_arrows <= max_arrows:
        by_bis = True
        for U in _bisections(G, max_arrows):
            d = mu.measure(G.dom[a] for a in U)
            r = mu.measure(G.ran[a] for a in U)
            if d != r:
                by_bis = False
                cert = {"bisection": sorted(U), "mu_dom": [d.numerator, d.denominator],
                        "mu_ran": [r.numerator, r.denominator]}
                break
        if by_bis != by_orbits:
            raise VerificationError("bisection and orbit invariance tests disagree")
    return MeanVerdict(by_orbits, by_bis, by_orbits, None if by_orbits else cert)


# ---------------------------------------------------------------------------
# traces


class TraceFunctional:
    """A linear functional given by its values on the basis."""

    def __init__(self, algebra: FiniteBasisAlgebra, values: Sequence):
        if len(values) != algebra.dim:
            raise InputError("one value per basis element")
        self.algebra = algebra
        self.values = tuple(Gaussian.coerce(v) for v in values)

    def __call__(self, x: AlgebraElement) -> Gaussian:
        if x.algebra is not self.algebra:
            raise InputError("element is not in the trace's algebra")
        vals = self.values
        total = ZERO
        for i, c in x.coeffs.items():
            v = vals[i]
            if v:
                total = total + c * v
        return total

    def inner(self, a: AlgebraElement, b: AlgebraElement) -> Gaussian:
        return self(a * b.star())

    def norm_sq(self, a: AlgebraElement) -> Fraction:
        v = self(a * a.star())
        if v.im:
            raise VerificationError("tau(a a*) is not real")
        return v.re

    def scaled(self, c) -> "TraceFunctional":
        c = Gaussian.coerce(c)
        return TraceFunctional(self.algebra, [c * v for v in self.values])

    def to_json(self) -> dict:
        return {"values": [[str(self.algebra.labels[i]), v.to_json()] for i, v in enumerate(self.values) if v]}


def trace_from_mean(mu: InvariantMean, G: FiniteGroupoid, *, check: bool = True) -> TraceFunctional:
    """tau(f) = sum over objects x of f(id_x) mu(x)."""
    if check and not is_invariant_mean(mu, G):
        raise NotInvariantError("mean is not invariant")
    KG = groupoid_algebra(G)
    vals = [ZERO] * G.n_arrows
    for x in range(G.n_objects):
        vals[G.identity[x]] = Gaussian(mu.weights[x])
    return TraceFunctional(KG, vals)


def mean_from_trace(tau: TraceFunctional) -> InvariantMean:
    """mu(x) = tau(1_{x}); the result is checked to be an invariant mean."""
    G = tau.algebra.groupoid
    if G is None:
        raise InputError("trace does not live on a groupoid algebra")
    w = []
    for x in range(G.n_objects):
        v = tau.values[G.identity[x]]
        if v.im or v.re < 0:
            raise InputError(f"tau(1_{{{x}}}) = {v} is not a nonnegative rational")
        w.append(v.re)
    mu = InvariantMean(tuple(w))
    if not is_invariant_mean(mu, G):
        raise InputError("associated mean is not invariant")
    return mu


@dataclass
class TraceReport:
    t1: bool = True
    t2: bool = True
    t3: bool = True
    t4: bool = False
    eq_formula: bool = True
    support_identity: bool = True
    gram_psd: Optional[bool] = None
    gram_pd: Optional[bool] = None
    samples: int = 0
    certificates: dict = field(default_factory=dict)

    @property
    def is_trace(self) -> bool:
        return self.t1 and self.t2 and self.t3

    @property
    def all_pass(self) -> bool:
        return self.is_trace and self.t4 and self.eq_formula and self.support_identity

    def to_json(self) -> dict:
        return {
            "T1": self.t1, "T2": self.t2, "T3": self.t3, "T4_faithful": self.t4,
            "eq_formula": self.eq_formula, "support_identity": self.support_identity,
            "gram_psd": self.gram_psd, "gram_pd": self.gram_pd,
            "random_samples": self.samples,
            "t1_check": "exhaustive on basis pairs",
            "certificates": self.certificates,
        }


def gram_matrix(tau: TraceFunctional, elements: Sequence[AlgebraElement]) -> list:
    """Matrix of the form (x, y) = tau(x y*) on the given elements."""
    stars = [e.star() for e in elements]
    return [[tau(x * ys) for ys in stars] for x in elements]


def verify_trace(tau: TraceFunctional, *, n_random: int = 1000, seed: int = 0,
                 exact_gram_limit: int = 64) -> TraceReport:
    """Check the trace axioms for a candidate functional on a groupoid algebra.

    T1 and T2 are checked on all basis pairs / elements (which decides them,
    by linearity); T3 on the basis and on seeded random elements, and
    exactly through positive semidefiniteness of the Gram matrix when the
    dimension is at most ``exact_gram_limit``.  T4 is decided by positivity
    of the associated mean.
    """
    A = tau.algebra
    G = A.groupoid
    if G is None:
        raise InputError("verify_trace expects a groupoid algebra")
    rep = TraceReport()
    rows = A.rows
    vals = tau.values
    for i in range(A.dim):
        for j in range(A.dim):
            ij, ji = rows[i][j], rows[j][i]
            lhs = vals[ij] if ij >= 0 else ZERO
            rhs = vals[ji] if ji >= 0 else ZERO
            if lhs != rhs:
                rep.t1 = False
                rep.certificates.setdefault("T1", [A.labels[i], A.labels[j]])
    for i in range(A.dim):
        if vals[A.star[i]] != vals[i].conj():
            rep.t2 = False
            rep.certificates.setdefault("T2", A.labels[i])
        v = tau(A.basis(i) * A.basis(i).star())
        if v.im or v.re < 0:
            rep.t3 = False
            rep.certificates.setdefault("T3", A.labels[i])

    rng = random.Random(seed)
    for _ in range(n_random):
        f = random_element(A, rng, terms=rng.randint(1, min(5, A.dim)))
        fs = f.star()
        if tau(fs) != tau(f).conj():
            rep.t2 = False
            rep.certificates.setdefault("T2", repr(f))
        ffs = f * fs
        v = tau(ffs)
        if v.im or v.re < 0:
            rep.t3 = False
            rep.certificates.setdefault("T3", repr(f))
        # (f * f*)(id_x) = sum over arrows into x of |f(gamma)|^2
        for x in range(G.n_objects):
            expected = sum((c.abs_sq() for a, c in f.coeffs.items() if G.ran[a] == x), Fraction(0))
            if ffs.coeffs.get(G.identity[x], ZERO) != expected:
                rep.eq_formula = False
                rep.certificates.setdefault("eq_formula", repr(f))
        unit_support = {G.dom[a] for a in ffs.coeffs if G.is_unit(a)}
        if unit_support != {G.ran[a] for a in f.coeffs}:
            rep.support_identity = False
            rep.certificates.setdefault("support_identity", repr(f))
        rep.samples += 1

    if A.dim <= exact_gram_limit and rep.t1 and rep.t2:
        basis = [A.basis(i) for i in range(A.dim)]
        rep.gram_psd, rep.gram_pd = hermitian_psd(gram_matrix(tau, basis))
        if rep.gram_psd != rep.t3 and rep.t3:
            rep.t3 = False
            rep.certificates.setdefault("T3", "Gram matrix is not positive semidefinite")

    if rep.is_trace:
        w = [vals[G.identity[x]] for x in range(G.n_objects)]
        rep.t4 = all(not v.im and v.re > 0 for v in w)
        if rep.gram_pd is not None and rep.gram_pd != rep.t4:
            raise VerificationError("mean positivity and Gram definiteness disagree on faithfulness")
    return rep


# ---------------------------------------------------------------------------
# contractivity


@dataclass(frozen=True)
class ContractivityResult:
    holds: bool
    checked_elements: int
    sampled_pairs: int
    certificate: Optional[dict] = None

    def __bool__(self):
        return self.holds


def _contractive_form_psd(tau: TraceFunctional, s: AlgebraElement, side: str) -> bool:
    """Exactly decide tau(x x*) - tau(xs (xs)*) >= 0 for all x (or with sx)."""
    A = tau.algebra
    basis = [A.basis(i) for i in range(A.dim)]
    moved = [b * s if side == "right" else s * b for b in basis]
    base = gram_matrix(tau, basis)
    shifted = gram_matrix(tau, moved)
    diff = [[base[i][j] - shifted[i][j] for j in range(A.dim)] for i in range(A.dim)]
    return hermitian_psd(diff)[0]


def contractive_on(tau: TraceFunctional, spanning: Sequence[tuple[str, AlgebraElement]], *,
                   n_random: int = 20, seed: int = 0, exact: bool = True) -> ContractivityResult:
    """Check tau(as(as)*) <= tau(aa*) and tau(sa(sa)*) <= tau(aa*) for each s.

    Every basis element and ``n_random`` seeded random a are tried for each s;
    with ``exact`` the inequality is also decided for all a at once through
    positive semidefiniteness of the difference form.  The left and right
    verdicts must agree.
    """
    A = tau.algebra
    rng = random.Random(seed)
    pairs = 0
    for name, s in spanning:
        trial = [A.basis(i) for i in range(A.dim)]
        trial += [random_element(A, rng, terms=rng.randint(1, min(4, A.dim))) for _ in range(n_random)]
        for a in trial:
            base = tau.norm_sq(a)
            right = tau.norm_sq(a * s)
            left = tau.norm_sq(s * a)
            pairs += 1
            if right > base or left > base:
                return ContractivityResult(False, len(spanning), pairs,
                                           {"s": name, "a": repr(a), "side": "right" if right > base else "left"})
        if exact:
            r = _contractive_form_psd(tau, s, "right")
            l = _contractive_form_psd(tau, s, "left")
            if r != l and _satisfies_t1(tau):
                raise VerificationError("left and right contractivity disagree for a trace")
            if not (r and l):
                return ContractivityResult(False, len(spanning), pairs,
                                           {"s": name, "a": "exact form test", "side": "right" if not r else "left"})
    return ContractivityResult(True, len(spanning), pairs)


def contractivity_check(tau: TraceFunctional, *, spanning: str = "bisections", n_random: int = 20,
                        seed: int = 0, exact: bool = True,
                        max_arrows: int = DEFAULT_MAX_BISECTION_ARROWS) -> ContractivityResult:
    """Contractivity against arrow indicators, or against all bisection indicators."""
    A = tau.algebra
    G = A.groupoid
    if G is None:
        raise InputError("contractivity_check expects a groupoid algebra")
    elems = [(f"d[{A.labels[i]}]", A.basis(i)) for i in range(A.dim)]
    if spanning == "bisections":
        for U in _bisections(G, max_arrows):
            if len(U) > 1:
                elems.append((f"1_{sorted(U)}", AlgebraElement(A, {a: ONE for a in U})))
    elif spanning != "arrows":
        raise InputError("spanning must be 'arrows' or 'bisections'")
    return contractive_on(tau, elems, n_random=n_random, seed=seed, exact=exact)


def _satisfies_t1(tau: TraceFunctional) -> bool:
    A = tau.algebra
    rows, vals = A.rows, tau.values
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            ij, ji = rows[i][j], rows[j][i]
            if (vals[ij] if ij >= 0 else ZERO) != (vals[ji] if ji >= 0 else ZERO):
                return False
    return True


def find_contractivity_violation(tau: TraceFunctional) -> Optional[tuple]:
    """Search basis pairs (a, s) for tau(as(as)*) > tau(aa*) or tau(sa(sa)*) > tau(aa*).

    Returns ``(a, s, side)`` for the first violation found, else None.
    """
    A = tau.algebra
    for j in range(A.dim):
        s = A.basis(j)
        for i in range(A.dim):
            a = A.basis(i)
            base = tau.norm_sq(a)
            if tau.norm_sq(a * s) > base:
                return (A.labels[i], A.labels[j], "right")
            if tau.norm_sq(s * a) > base:
                return (A.labels[i], A.labels[j], "left")
    return None


# ---------------------------------------------------------------------------
# the seminorm induced by bisections


def ell1_seminorm(a: AlgebraElement, *, max_arrows: int = DEFAULT_MAX_LP_ARROWS) -> Fraction:
    """inf of sum |c_U| over representations a = sum c_U 1_U by bisections.

    Solved as an exact LP with split variables c_U = p_U - n_U over all
    nonempty bisections.  Only real coefficients are accepted.
    """
    A = a.algebra
    G = A.groupoid
    if G is None:
        raise InputError("the l1 seminorm is defined on groupoid algebras")
    if not a.is_real:
        raise InputError("ell1_seminorm needs real coefficients; use ell1_bounds for Gaussian elements")
    if G.n_arrows > max_arrows:
        raise SizeError(f"l1 LP is limited to {max_arrows} arrows, got {G.n_arrows}")
    if not a.coeffs:
        return Fraction(0)
    bis = [U for U in _bisections(G, max(max_arrows, G.n_arrows)) if U]
    cols = len(bis)
    A_eq = [[Fraction(0)] * (2 * cols) for _ in range(G.n_arrows)]
    for k, U in enumerate(bis):
        for g in U:
            A_eq[g][k] = Fraction(1)
            A_eq[g][cols + k] = Fraction(-1)
    b = [a.coeffs.get(g, ZERO).re for g in range(G.n_arrows)]
    res = linprog_eq([1] * (2 * cols), A_eq, b)
    if res.status != "optimal":
        raise VerificationError(f"l1 LP ended with status {res.status}")
    return res.value


def ell1_representation(a: AlgebraElement, *, max_arrows: int = DEFAULT_MAX_LP_ARROWS) -> dict:
    """An optimal representation {bisection: coefficient} realizing ell1_seminorm(a)."""
    A = a.algebra
    G = A.groupoid
    if not a.coeffs:
        return {}
    bis = [U for U in _bisections(G, max(max_arrows, G.n_arrows)) if U]
    cols = len(bis)
    A_eq = [[Fraction(0)] * (2 * cols) for _ in range(G.n_arrows)]
    for k, U in enumerate(bis):
        for g in U:
            A_eq[g][k] = Fraction(1)
            A_eq[g][cols + k] = Fraction(-1)
    b = [a.coeffs.get(g, ZERO).re for g in range(G.n_arrows)]
    res = linprog_eq([1] * (2 * cols), A_eq, b)
    return {bis[k]: res.x[k] - res.x[cols + k] for k in range(cols) if res.x[k] - res.x[cols + k]}


@dataclass(frozen=True)
class Ell1Bounds:
    lower: Fraction
    upper: Fraction
    exact: bool


def ell1_bounds(a: AlgebraElement, *, max_arrows: int = DEFAULT_MAX_LP_ARROWS) -> Ell1Bounds:
    """Rational bounds on |a| for Gaussian coefficients.

    Lower: the larger of the seminorms of the real and imaginary parts.
    Upper: their sum.  For real elements both equal the exact value.
    """
    if a.is_real:
        v = ell1_seminorm(a, max_arrows=max_arrows)
        return Ell1Bounds(v, v, True)
    A = a.algebra
    re = AlgebraElement(A, {i: Gaussian(c.re) for i, c in a.coeffs.items()})
    im = AlgebraElement(A, {i: Gaussian(c.im) for i, c in a.coeffs.items()})
    r, m = ell1_seminorm(re, max_arrows=max_arrows), ell1_seminorm(im, max_arrows=max_arrows)
    return Ell1Bounds(max(r, m), r + m, False)


# ---------------------------------------------------------------------------
# inner products, amplification, distances


def inner_product(tau: TraceFunctional, a: AlgebraElement, b: AlgebraElement) -> Gaussian:
    return tau.inner(a, b)


def norm_sq(tau: TraceFunctional, a: AlgebraElement) -> Fraction:
    return tau.norm_sq(a)


def trace_amplify(tau: TraceFunctional, n: int) -> TraceFunctional:
    """tau_n(B) = sum of tau(b_ii) on M_n(A)."""
    A = tau.algebra
    M = matrix_algebra(A, n)
    m = A.dim
    vals = []
    for i in range(n):
        for j in range(n):
            vals.extend(tau.values if i == j else [ZERO] * m)
    return TraceFunctional(M, vals)


def rook_contractivity(tau: TraceFunctional, n: int, *, n_random: int = 10, seed: int = 0,
                       exact: bool = True) -> ContractivityResult:
    """Check that tau_n is R_n(S)-contractive for S = arrow indicators plus zero."""
    A = tau.algebra
    taun = trace_amplify(tau, n)
    M = taun.algebra
    spanning = list(range(A.dim)) + [-1]
    rooks = [R for R in all_rook_matrices(n, spanning) if any(e is not None and e >= 0 for e in R.entries)]
    elems = [(f"rook{R.sigma}{R.entries}", embed_rook(M, R)) for R in rooks]
    return contractive_on(taun, elems, n_random=n_random, seed=seed, exact=exact)


def distance_sq_to_subspace(tau: TraceFunctional, c: AlgebraElement, L: Sequence[AlgebraElement]) -> Fraction:
    """Squared distance from c to span(L), by exact orthogonal projection."""
    L = [x for x in L if x.coeffs]
    if not L:
        return tau.norm_sq(c)
    keep = [L[i] for i in independent_subset([x.coeffs for x in L])]
    gram = [[tau.inner(lj, li) for lj in keep] for li in keep]
    rhs = [tau.inner(c, li) for li in keep]
    x = solve(gram, rhs)
    proj = c.algebra.zero()
    for coef, l in zip(x, keep):
        proj = proj + l.scale(coef)
    return tau.norm_sq(c - proj)


# ---------------------------------------------------------------------------
# Passman-style inequalities


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    holds: bool
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {"holds": self.holds, "lhs": [self.lhs.numerator, self.lhs.denominator],
                "rhs": [self.rhs.numerator, self.rhs.denominator]}


def _check(name, lhs, rhs) -> InequalityCheck:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return InequalityCheck(name, lhs <= rhs, lhs, rhs)


def _require_faithful(tau: TraceFunctional):
    G = tau.algebra.groupoid
    if G is None:
        raise InputError("expected a trace on a groupoid algebra")
    if not mean_from_trace(tau).faithful:
        raise InputError("trace is not faithful")


def passman_product(tau: TraceFunctional, a: AlgebraElement, b: AlgebraElement) -> list[InequalityCheck]:
    """||ab||^2 <= ||a||^2 |b|^2 and ||ab||^2 <= |a|^2 ||b||^2."""
    ab = tau.norm_sq(a * b)
    la, lb = ell1_seminorm(a), ell1_seminorm(b)
    return [
        _check("norm(ab)^2 <= norm(a)^2 |b|^2", ab, tau.norm_sq(a) * lb * lb),
        _check("norm(ab)^2 <= |a|^2 norm(b)^2", ab, la * la * tau.norm_sq(b)),
    ]


def normalized_bounds(tau: TraceFunctional, a: AlgebraElement) -> list[InequalityCheck]:
    """|tau(a)|^2 <= ||a||^2 <= |a|^2 for a normalized trace on a unital algebra."""
    A = tau.algebra
    if tau(A.one()) != 1:
        raise InputError("trace is not normalized")
    n2 = tau.norm_sq(a)
    l = ell1_seminorm(a)
    return [
        _check("|tau(a)|^2 <= norm(a)^2", tau(a).abs_sq(), n2),
        _check("norm(a)^2 <= |a|^2", n2, l * l),
    ]


def sup_below_ell1(a: AlgebraElement) -> InequalityCheck:
    from .algebra import sup_norm_sq
    l = ell1_seminorm(a)
    return _check("|a|_inf^2 <= |a|^2", sup_norm_sq(a), l * l)


def bessel_bound(tau: TraceFunctional, a: AlgebraElement, b: AlgebraElement, c: AlgebraElement,
                 L: Sequence[AlgebraElement]) -> InequalityCheck:
    """|(b, a-c)|^2 <= ||b||^2 (||a-c||^2 - d(c, L)^2) for a, b in span(L)."""
    for x, nm in ((a, "a"), (b, "b")):
        if distance_sq_to_subspace(tau, x, L) != 0:
            raise InputError(f"{nm} is not in span(L)")
    lhs = tau.inner(b, a - c).abs_sq()
    rhs = tau.norm_sq(b) * (tau.norm_sq(a - c) - distance_sq_to_subspace(tau, c, L))
    return _check("|(b,a-c)|^2 <= norm(b)^2 (norm(a-c)^2 - d(c,L)^2)", lhs, rhs)


def idempotent_bound(tau: TraceFunctional, e: AlgebraElement) -> list[InequalityCheck]:
    """tau(e) |e|^2 >= ||e||^2 > 0 for a nonzero idempotent e and normalized tau."""
    if e * e != e or not e.coeffs:
        raise InputError("e must be a nonzero idempotent")
    t = tau(e)
    if t.im:
        raise VerificationError("trace of an idempotent is not real")
    l = ell1_seminorm(e)
    n2 = tau.norm_sq(e)
    return [
        _check("norm(e)^2 <= tau(e) |e|^2", n2, t.re * l * l),
        InequalityCheck("tau(e) > 0", t.re > 0, Fraction(0), t.re),
    ]


def passman_checks(tau: TraceFunctional, a: AlgebraElement, b: AlgebraElement, *,
                   c: Optional[AlgebraElement] = None, e: Optional[AlgebraElement] = None,
                   L: Optional[Sequence[AlgebraElement]] = None) -> dict:
    """Evaluate every applicable inequality; returns {name: InequalityCheck}."""
    _require_faithful(tau)
    checks = passman_product(tau, a, b)
    checks.append(sup_below_ell1(a))
    A = tau.algebra
    if A.unit is not None and tau(A.one()) == 1:
        checks += normalized_bounds(tau, a)
    if c is not None and L is not None:
        checks.append(bessel_bound(tau, a, b, c, L))
    if e is not None:
        checks += idempotent_bound(tau, e)
    return {ch.name: ch for ch in checks}
