"""J-order navigation and the left Schutzenberger representation of a finite
semigroup by monomial matrices over a maximal subgroup.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Optional

from .algebra import (
    AlgebraElement,
    FiniteBasisAlgebra,
    matrix_algebra,
    matrix_index,
    random_element,
    semigroup_algebra,
)
from .errors import InputError, VerificationError
from .scalars import ONE
from .semigroup import (
    FiniteSemigroup,
    GreenStructure,
    green,
    j_class_classify,
    maximal_subgroup,
    opposite,
)

@dataclass(frozen=True)
class MonomialMatrix:
    """n x n matrix over a group with at most one entry in each column.

    Column j holds ``entries[j]`` (an index into the group) in row
    ``sigma[j]``, or nothing when ``sigma[j]`` is None.  For inverse
    semigroups the rows are distinct as well and the matrix is a rook matrix.
    """

    n: int
    sigma: tuple
    entries: tuple

    def __post_init__(self):
        if len(self.sigma) != self.n or len(self.entries) != self.n:
            raise InputError("monomial matrix data must have length n")
        for r, e in zip(self.sigma, self.entries):
            if (r is None) != (e is None):
                raise InputError("entries are given exactly on the filled columns")

    @property
    def is_rook(self) -> bool:
        rows = [r for r in self.sigma if r is not None]
        return len(set(rows)) == len(rows)


def monomial_product(H: FiniteSemigroup, A: MonomialMatrix, B: MonomialMatrix) -> MonomialMatrix:
    """Column j of AB: B sends j to i with entry h, A sends i to k with entry g; AB has gh at (k, j)."""
    if A.n != B.n:
        raise InputError("monomial matrices of different sizes")
    sigma, entries = [], []
    for j in range(B.n):
        i = B.sigma[j]
        if i is None or A.sigma[i] is None:
            sigma.append(None)
            entries.append(None)
        else:
            sigma.append(A.sigma[i])
            entries.append(H.rows[A.entries[i]][B.entries[j]])
    return MonomialMatrix(A.n, tuple(sigma), tuple(entries))


def embed_monomial(M: FiniteBasisAlgebra, A: MonomialMatrix) -> AlgebraElement:
    """The matrix as an element of M_n(K H)."""
    return M.element({matrix_index(M, i, j, A.entries[j]): ONE for j, i in enumerate(A.sigma) if i is not None})


def ideal_complement(S: FiniteSemigroup, j: int, G: Optional[GreenStructure] = None) -> frozenset:
    """The ideal of elements s whose J-class does not lie above J-class ``j``."""
    G = G or green(S)
    I = frozenset(s for s in range(S.size) if not G.j_le(j, G.j_index[s]))
    rows = S.rows
    for part in (I, I | frozenset(G.j_classes[j])):
        for s in part:
            for t in range(S.size):
                if rows[s][t] not in part or rows[t][s] not in part:
                    raise VerificationError("ideal complement is not an ideal")
    return I


def maximal_jclass_meeting(S: FiniteSemigroup, support: Iterable[int], G: Optional[GreenStructure] = None) -> int:
    """A J-class maximal among those meeting ``support``; ties go to the least class number."""
    G = G or green(S)
    classes = sorted({G.j_index[S.index(s)] for s in support})
    if not classes:
        raise InputError("support is empty")
    for c in classes:
        if not any(d != c and G.j_le(c, d) for d in classes):
            return c
    raise VerificationError("J-order has no maximal element on the support")


@dataclass
class SchutzenbergerRep:
    semigroup: FiniteSemigroup
    idempotent: int
    j_class: int
    transversal: tuple
    subgroup: FiniteSemigroup
    matrices: tuple
    pairs_checked: int = 0
    algebra_pairs_checked: int = 0
    _lookup: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.transversal)

    def __call__(self, s: int) -> MonomialMatrix:
        return self.matrices[s]

    @property
    def target(self):
        return matrix_algebra(semigroup_algebra(self.subgroup), self.n)

    def linear(self, x: AlgebraElement) -> AlgebraElement:
        """The linear extension KS -> M_n(K H_f)."""
        M = self.target
        out = M.zero()
        for s, c in x.coeffs.items():
            out = out + embed_monomial(M, self.matrices[s]).scale(c)
        return out

    def to_json(self) -> dict:
        S, H = self.semigroup, self.subgroup
        labels = S.labels
        return {
            "idempotent": labels[self.idempotent],
            "n": self.n,
            "transversal": [labels[x] for x in self.transversal],
            "subgroup_order": H.size,
            "subgroup": [labels[h] for h in H.parent_indices],
            "multiplicative_pairs": self.pairs_checked,
            "algebra_pairs": self.algebra_pairs_checked,
            "matrices": {
                labels[s]: [[i, j, labels[H.parent_indices[R.entries[j]]]]
                            for j, i in enumerate(R.sigma) if i is not None]
                for s, R in enumerate(self.matrices)
            },
        }


def schutzenberger_rep(S: FiniteSemigroup, f, *, verify: bool = True, verify_algebra: bool = True,
                       G: Optional[GreenStructure] = None) -> SchutzenbergerRep:
    """rho(s)_{ij} = h when s x_j = x_i h in L_f, with x_1..x_n the least element of each H-class of L_f.

    With ``verify`` the map is checked multiplicative on all pairs as monomial
    matrices, and with ``verify_algebra`` also after materializing the
    matrices in M_n(K H_f).
    """
    f = S.index(f)
    rows = S.rows
    if rows[f][f] != f:
        raise InputError(f"{S.labels[f]} is not idempotent")
    G = G or green(S)
    j = G.j_index[f]
    H = maximal_subgroup(S, f, G)
    hpos = {h: k for k, h in enumerate(H.parent_indices)}
    lf = G.l_index[f]
    L = [s for s in range(S.size) if G.l_index[s] == lf]
    hclasses = sorted({G.h_index[s] for s in L}, key=lambda c: G.h_classes[c][0])
    transversal = tuple(G.h_classes[c][0] for c in hclasses)
    lookup = {}
    for i, x in enumerate(transversal):
        for h in H.parent_indices:
            y = rows[x][h]
            if y in lookup:
                raise VerificationError("H_f does not act freely on L_f")
            lookup[y] = (i, hpos[h])
    if set(lookup) != set(L):
        raise VerificationError("translates of the transversal do not cover L_f")
    n = len(transversal)
    mats = []
    for s in range(S.size):
        sigma = [None] * n
        entries = [None] * n
        for jj, x in enumerate(transversal):
            y = rows[s][x]
            if y in lookup:
                i, h = lookup[y]
                sigma[jj] = i
                entries[jj] = h
            elif G.j_index[y] == j:
                raise VerificationError("s x_j lies in J but outside L_f")
        mats.append(MonomialMatrix(n, tuple(sigma), tuple(entries)))
    rep = SchutzenbergerRep(S, f, j, transversal, H, tuple(mats), _lookup=lookup)
    if verify:
        for s, t in cartesian(range(S.size), repeat=2):
            if mats[rows[s][t]] != monomial_product(H, mats[s], mats[t]):
                raise VerificationError(f"rho({S.labels[s]}{S.labels[t]}) != rho({S.labels[s]}) rho({S.labels[t]})")
            rep.pairs_checked += 1
        # rho on H_f is a faithful 1-block copy of H_f (conjugated by the transversal element)
        i0 = lookup[f][0]
        block = set()
        for h in H.parent_indices:
            R = mats[h]
            if R.sigma[i0] != i0:
                raise VerificationError("rho(H_f) moves the H-class of f")
            block.add(R.entries[i0])
        if len(block) != H.size:
            raise VerificationError("rho restricted to H_f is not faithful")
    if verify_algebra:
        M = rep.target
        images = [embed_monomial(M, R) for R in mats]
        for s, t in cartesian(range(S.size), repeat=2):
            if images[rows[s][t]] != images[s] * images[t]:
                raise VerificationError("materialized matrices are not multiplicative")
            rep.algebra_pairs_checked += 1
    return rep


@dataclass(frozen=True)
class KernelVerdict:
    rho_zero: bool
    annihilates_lf: bool
    annihilates_j: bool

    @property
    def agree(self) -> bool:
        return self.rho_zero == self.annihilates_lf == self.annihilates_j

    def __bool__(self):
        return self.rho_zero


def _annihilates(S: FiniteSemigroup, x: AlgebraElement, targets, keep) -> bool:
    rows = S.rows
    for y in targets:
        acc: dict = {}
        for s, c in x.coeffs.items():
            z = rows[s][y]
            if z in keep:
                acc[z] = acc.get(z, 0) + c
        if any(acc.values()):
            return False
    return True


def rep_kernel_check(rep: SchutzenbergerRep, x: AlgebraElement) -> KernelVerdict:
    """Compare rho(x) = 0 with x annihilating the spans of L_f and of J modulo the ideal below."""
    S = rep.semigroup
    G = green(S)
    L = frozenset(rep._lookup)
    J = frozenset(G.j_classes[rep.j_class])
    v = KernelVerdict(
        not rep.linear(x).coeffs,
        _annihilates(S, x, sorted(L), L),
        _annihilates(S, x, sorted(J), J),
    )
    if not v.agree:
        raise VerificationError(f"kernel tests disagree on {x!r}: {v}")
    return v


def kernel_check_sweep(rep: SchutzenbergerRep, *, n_random: int = 1000, seed: int = 0) -> int:
    """rep_kernel_check on every basis element and on seeded random elements; returns the count."""
    KS = semigroup_algebra(rep.semigroup)
    rng = random.Random(seed)
    count = 0
    for s in range(KS.dim):
        rep_kernel_check(rep, KS.basis(s))
        count += 1
    below = sorted(ideal_complement(rep.semigroup, rep.j_class))
    for k in range(n_random):
        if below and k % 4 == 0:
            # elements supported on the ideal below J lie in the kernel
            x = random_element(KS, rng, terms=rng.randint(1, min(4, len(below))), support=below)
        else:
            x = random_element(KS, rng, terms=rng.randint(1, min(4, KS.dim)))
        rep_kernel_check(rep, x)
        count += 1
    return count


@dataclass(frozen=True)
class JClassVerdict:
    index: int
    tag: str
    r_classes: int
    l_classes: int
    idempotent: Optional[int]
    subgroup_order: Optional[int]
    side: Optional[str]
    verified_pairs: int

    def to_json(self, S: FiniteSemigroup) -> dict:
        out = {"index": self.index, "tag": self.tag, "r_classes": self.r_classes, "l_classes": self.l_classes}
        if self.tag == "regular":
            out.update({
                "idempotent": S.labels[self.idempotent],
                "maximal_subgroup_order": self.subgroup_order,
                "representation_on": self.side,
                "multiplicative_pairs": self.verified_pairs,
            })
        return out


@dataclass(frozen=True)
class AppendixVerdict:
    classes: tuple

    @property
    def subgroup_orders(self) -> tuple:
        return tuple(c.subgroup_order for c in self.classes if c.tag == "regular")

    def to_json(self, S: FiniteSemigroup) -> dict:
        return {
            "j_classes": [c.to_json(S) for c in self.classes],
            "maximal_subgroup_orders": list(self.subgroup_orders),
            "reduction": "KS is stably finite iff K H is stably finite for each listed maximal subgroup H",
            "note": "the Dedekind-finite to stably-finite step uses K[S x B_n] = M_n(KS) x KS; not materialized",
        }


def appendix_verdict(S: FiniteSemigroup, *, verify_algebra: bool = False) -> AppendixVerdict:
    """Per regular J-class: class counts, maximal subgroup and a verified representation.

    The representation is built on the opposite semigroup when the class has
    fewer L-classes than R-classes, keeping the matrices small.
    """
    G = green(S)
    idem = set(S.idempotents)
    Sop = None
    out = []
    for info in j_class_classify(S, G):
        cls = info.elements
        nr = len({G.r_index[s] for s in cls})
        nl = len({G.l_index[s] for s in cls})
        if info.tag != "regular":
            out.append(JClassVerdict(info.index, info.tag, nr, nl, None, None, None, 0))
            continue
        f = min(s for s in cls if s in idem)
        if nl < nr:
            Sop = Sop or opposite(S)
            rep = schutzenberger_rep(Sop, f, verify_algebra=verify_algebra)
            side = "opposite"
        else:
            rep = schutzenberger_rep(S, f, G=G, verify_algebra=verify_algebra)
            side = "semigroup"
        out.append(JClassVerdict(info.index, "regular", nr, nl, f, rep.subgroup.size, side, rep.pairs_checked))
    return AppendixVerdict(tuple(out))
