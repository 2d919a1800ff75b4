"""Finite discrete groupoids, bisections and universal groupoids of inverse semigroups.

Arrow ``a`` has ``dom[a]`` and ``ran[a]``.  The composite ``compose(a, b)``
means "a after b" and is defined exactly when ``ran[b] == dom[a]``.
Finite unit spaces are discrete, so every subset is compact open and every
bisection is a compact open bisection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, NotInvariantError, SizeError, VerificationError
from .semigroup import FiniteInverseSemigroup, FiniteSemigroup

DEFAULT_MAX_BISECTION_ARROWS = 20


class FiniteGroupoid:
    def __init__(self, n_objects: int, arrows: Sequence[tuple[int, int]], compose: dict,
                 labels: Optional[Sequence[str]] = None, *, check: bool = True):
        self.n_objects = int(n_objects)
        self.dom = tuple(int(d) for d, _ in arrows)
        self.ran = tuple(int(r) for _, r in arrows)
        self.n_arrows = len(self.dom)
        self.labels = tuple(labels) if labels is not None else tuple(str(a) for a in range(self.n_arrows))
        if len(self.labels) != self.n_arrows:
            raise InputError("one label per arrow")
        self.semigroup_elements: Optional[tuple] = None
        self.parent_objects: Optional[tuple] = None
        self.parent_arrows: Optional[tuple] = None
        table = np.full((self.n_arrows, self.n_arrows), -1, dtype=np.int64)
        for (a, b), c in compose.items():
            table[a, b] = c
        table.setflags(write=False)
        self.table = table
        self.rows = table.tolist()
        if check:
            _validate(self)
        self.identity = self._find_identities()
        self.inverse = self._find_inverses()

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"

    def compose(self, a: int, b: int) -> Optional[int]:
        c = self.rows[a][b]
        return None if c < 0 else c

    def arrows_from(self, x: int) -> list[int]:
        return [a for a in range(self.n_arrows) if self.dom[a] == x]

    def arrows_between(self, x: int, y: int) -> list[int]:
        return [a for a in range(self.n_arrows) if self.dom[a] == x and self.ran[a] == y]

    def _find_identities(self) -> tuple:
        ids = [None] * self.n_objects
        for a in range(self.n_arrows):
            x = self.dom[a]
            if self.ran[a] == x and self.rows[a][a] == a and ids[x] is None:
                ids[x] = a
        if any(i is None for i in ids):
            missing = ids.index(None)
            raise InputError(f"no identity arrow at object {missing}")
        return tuple(ids)

    def _find_inverses(self) -> tuple:
        inv = []
        for a in range(self.n_arrows):
            found = None
            for b in range(self.n_arrows):
                if self.rows[a][b] == self.identity[self.ran[a]] and self.rows[b][a] == self.identity[self.dom[a]]:
                    found = b
                    break
            if found is None:
                raise InputError(f"arrow {self.labels[a]} has no inverse")
            inv.append(found)
        return tuple(inv)

    def is_unit(self, a: int) -> bool:
        return self.identity[self.dom[a]] == a

    def to_json(self) -> dict:
        arrows = []
        for a in range(self.n_arrows):
            rec = {"dom": self.dom[a], "ran": self.ran[a], "label": self.labels[a]}
            if self.semigroup_elements is not None:
                rec["semigroup_element"] = self.semigroup_elements[a]
            arrows.append(rec)
        comp = [[a, b, self.rows[a][b]] for a in range(self.n_arrows) for b in range(self.n_arrows)
                if self.rows[a][b] >= 0]
        return {"objects": self.n_objects, "arrows": arrows, "compose": comp}


def _validate(G: FiniteGroupoid) -> None:
    n = G.n_arrows
    for x in G.dom + G.ran:
        if not 0 <= x < G.n_objects:
            raise InputError(f"object {x} out of range")
    rows = G.rows
    for a in range(n):
        for b in range(n):
            c = rows[a][b]
            composable = G.ran[b] == G.dom[a]
            if c >= 0 and not composable:
                raise InputError(
                    f"compose defined for non-composable pair ({G.labels[a]}, {G.labels[b]}): "
                    f"ran({G.labels[b]})={G.ran[b]} != dom({G.labels[a]})={G.dom[a]}")
            if composable and c < 0:
                raise InputError(f"compose undefined for composable pair ({G.labels[a]}, {G.labels[b]})")
            if c >= n:
                raise InputError(f"compose result {c} out of range")
            if c >= 0 and (G.dom[c] != G.dom[b] or G.ran[c] != G.ran[a]):
                raise InputError(
                    f"compose({G.labels[a]}, {G.labels[b]}) = {G.labels[c]} has wrong endpoints")
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            if ab < 0:
                continue
            for c in range(n):
                bc = rows[b][c]
                if bc < 0:
                    continue
                if rows[ab][c] != rows[a][bc]:
                    raise InputError(
                        f"associativity fails on ({G.labels[a]}, {G.labels[b]}, {G.labels[c]})")
    ids = []
    for x in range(G.n_objects):
        cands = [i for i in range(n) if G.dom[i] == x and G.ran[i] == x
                 and all(rows[i][a] == a for a in range(n) if G.ran[a] == x)
                 and all(rows[a][i] == a for a in range(n) if G.dom[a] == x)]
        if not cands:
            raise InputError(f"no identity arrow at object {x}")
        ids.append(cands[0])
    for a in range(n):
        if not any(rows[a][b] == ids[G.ran[a]] and rows[b][a] == ids[G.dom[a]] for b in range(n)):
            raise InputError(f"arrow {G.labels[a]} has no inverse")


def validate_groupoid(data: dict) -> FiniteGroupoid:
    """Build and exhaustively check a groupoid from its JSON description."""
    try:
        n_objects = int(data["objects"])
        arrows = [(int(r["dom"]), int(r["ran"])) for r in data["arrows"]]
        compose = {}
        for a, b, c in data["compose"]:
            if (a, b) in compose:
                raise InputError(f"compose given twice for ({a}, {b})")
            compose[(int(a), int(b))] = int(c)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed groupoid data: {exc}") from None
    labels = [r.get("label", str(i)) for i, r in enumerate(data["arrows"])]
    for (a, b) in compose:
        if not (0 <= a < len(arrows) and 0 <= b < len(arrows)):
            raise InputError(f"compose entry ({a}, {b}) refers to a missing arrow")
    G = FiniteGroupoid(n_objects, arrows, compose, labels)
    if any("semigroup_element" in r for r in data["arrows"]):
        G.semigroup_elements = tuple(r.get("semigroup_element") for r in data["arrows"])
    return G


# ---------------------------------------------------------------------------
# constructions


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows (i, j) : j -> i in lexicographic order; (i, j)(j, k) = (i, k)."""
    arrows = [(j, i) for i in range(n) for j in range(n)]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    compose = {(idx[i, j], idx[j, k]): idx[i, k] for i in range(n) for j in range(n) for k in range(n)}
    return FiniteGroupoid(n, arrows, compose, [f"({i},{j})" for i in range(n) for j in range(n)])


def group_groupoid(H: FiniteSemigroup) -> FiniteGroupoid:
    """A finite group as a one-object groupoid."""
    if not H.is_group():
        raise InputError("not a group")
    compose = {(a, b): H.rows[a][b] for a in range(H.size) for b in range(H.size)}
    return FiniteGroupoid(1, [(0, 0)] * H.size, compose, H.labels)


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    arrows, compose, labels = [], {}, []
    obj_off = arr_off = 0
    for k, G in enumerate(parts):
        for a in range(G.n_arrows):
            arrows.append((G.dom[a] + obj_off, G.ran[a] + obj_off))
            labels.append(f"{k}:{G.labels[a]}")
        for a in range(G.n_arrows):
            for b in range(G.n_arrows):
                c = G.rows[a][b]
                if c >= 0:
                    compose[(a + arr_off, b + arr_off)] = c + arr_off
        obj_off += G.n_objects
        arr_off += G.n_arrows
    return FiniteGroupoid(obj_off, arrows, compose, labels)


def group_bundle(groups: Sequence[FiniteSemigroup]) -> FiniteGroupoid:
    return disjoint_union(*(group_groupoid(H) for H in groups))


def universal_groupoid(S: FiniteInverseSemigroup) -> FiniteGroupoid:
    """The universal groupoid of a finite inverse semigroup.

    Objects are the idempotents of S in index order (every character of a
    finite semilattice is principal); arrow ``s`` goes from ``s*s`` to ``ss*``
    and ``s`` after ``t`` is ``st`` whenever ``s*s = tt*``.
    """
    if S.star is None:
        raise InputError("universal groupoid needs an inverse semigroup")
    idem = S.idempotents
    obj = {e: i for i, e in enumerate(idem)}
    rows, st = S.rows, S.star
    arrows = [(obj[rows[st[s]][s]], obj[rows[s][st[s]]]) for s in range(S.size)]
    compose = {}
    for s in range(S.size):
        for t in range(S.size):
            if arrows[s][0] == arrows[t][1]:
                compose[(s, t)] = rows[s][t]
    G = FiniteGroupoid(len(idem), arrows, compose, S.labels)
    G.semigroup_elements = S.labels
    return G


def restrict(G: FiniteGroupoid, X: Iterable[int]) -> FiniteGroupoid:
    """The full subgroupoid on an invariant object set X."""
    X = sorted(set(int(x) for x in X))
    Xs = set(X)
    if not Xs <= set(range(G.n_objects)):
        raise InputError("object set out of range")
    for a in range(G.n_arrows):
        if (G.dom[a] in Xs) != (G.ran[a] in Xs):
            raise NotInvariantError(
                f"object set not invariant: arrow {G.labels[a]} joins {G.dom[a]} and {G.ran[a]}")
    omap = {x: i for i, x in enumerate(X)}
    keep = [a for a in range(G.n_arrows) if G.dom[a] in Xs]
    amap = {a: i for i, a in enumerate(keep)}
    arrows = [(omap[G.dom[a]], omap[G.ran[a]]) for a in keep]
    compose = {(amap[a], amap[b]): amap[G.rows[a][b]] for a in keep for b in keep if G.rows[a][b] >= 0}
    H = FiniteGroupoid(len(X), arrows, compose, [G.labels[a] for a in keep], check=False)
    H.parent_objects = tuple(X)
    H.parent_arrows = tuple(keep)
    if G.semigroup_elements is not None:
        H.semigroup_elements = tuple(G.semigroup_elements[a] for a in keep)
    return H


# ---------------------------------------------------------------------------
# orbits and isotropy


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple
    orbit_of: tuple
    basepoints: tuple
    transversal: dict
    isotropy: tuple

    def orbit_containing(self, x: int) -> tuple:
        return self.orbits[self.orbit_of[x]]


def orbits_and_isotropy(G: FiniteGroupoid) -> OrbitDecomposition:
    """Orbits ordered by least object, with basepoint = least object of each orbit.

    ``transversal[y]`` is the least-index arrow from the basepoint of y's orbit
    to y; ``isotropy[k]`` is the isotropy group at the k-th basepoint, with
    ``parent_indices`` giving its arrows in G.
    """
    orbit_of = [-1] * G.n_objects
    orbits = []
    for x in range(G.n_objects):
        if orbit_of[x] >= 0:
            continue
        members = sorted({G.ran[a] for a in range(G.n_arrows) if G.dom[a] == x})
        for y in members:
            orbit_of[y] = len(orbits)
        orbits.append(tuple(members))
    transversal = {}
    isotropy = []
    basepoints = tuple(o[0] for o in orbits)
    for base, orbit in zip(basepoints, orbits):
        for y in orbit:
            transversal[y] = G.arrows_between(base, y)[0]
        loops = G.arrows_between(base, base)
        pos = {a: i for i, a in enumerate(loops)}
        table = [[pos[G.rows[a][b]] for b in loops] for a in loops]
        star = [pos[G.inverse[a]] for a in loops]
        H = FiniteSemigroup(table, [G.labels[a] for a in loops], star, check=False)
        H.parent_indices = tuple(loops)
        if not H.is_group():
            raise VerificationError(f"isotropy at object {base} is not a group")
        isotropy.append(H)
    return OrbitDecomposition(tuple(orbits), tuple(orbit_of), basepoints, transversal, tuple(isotropy))


# ---------------------------------------------------------------------------
# bisections


def is_bisection(G: FiniteGroupoid, U: Iterable[int]) -> bool:
    U = list(U)
    doms = [G.dom[a] for a in U]
    rans = [G.ran[a] for a in U]
    return len(set(doms)) == len(doms) and len(set(rans)) == len(rans)


def enumerate_bisections(G: FiniteGroupoid, max_arrows: int = DEFAULT_MAX_BISECTION_ARROWS) -> list[frozenset]:
    """All bisections, ordered by size and then by sorted arrow tuple."""
    if G.n_arrows > max_arrows:
        raise SizeError(f"bisection enumeration is limited to {max_arrows} arrows, got {G.n_arrows}")
    out = []

    def extend(start, chosen, used_dom, used_ran):
        out.append(frozenset(chosen))
        for a in range(start, G.n_arrows):
            d, r = G.dom[a], G.ran[a]
            if d in used_dom or r in used_ran:
                continue
            chosen.append(a)
            used_dom.add(d)
            used_ran.add(r)
            extend(a + 1, chosen, used_dom, used_ran)
            chosen.pop()
            used_dom.discard(d)
            used_ran.discard(r)

    extend(0, [], set(), set())
    out.sort(key=lambda U: (len(U), tuple(sorted(U))))
    return out


def bisection_product(G: FiniteGroupoid, U: frozenset, V: frozenset) -> frozenset:
    return frozenset(G.rows[a][b] for a in U for b in V if G.rows[a][b] >= 0)


def bisection_inverse(G: FiniteGroupoid, U: frozenset) -> frozenset:
    return frozenset(G.inverse[a] for a in U)


def bisection_dom(G: FiniteGroupoid, U: frozenset) -> frozenset:
    """dom(U) as a set of identity arrows."""
    return frozenset(G.identity[G.dom[a]] for a in U)


def bisection_ran(G: FiniteGroupoid, U: frozenset) -> frozenset:
    return frozenset(G.identity[G.ran[a]] for a in U)


def check_bisection_monoid(G: FiniteGroupoid, bisections: Sequence[frozenset], *,
                           triples: int = 2000, seed: int = 0) -> None:
    """Verify the inverse-monoid laws on enumerated bisections.

    Closure, ``U U^-1 U = U``, ``(U^-1)^-1 = U`` and ``dom(U) = U^-1 U`` are
    checked for every bisection; associativity on all pairs' products with a
    seeded sample of third factors.
    """
    known = set(bisections)
    for U in bisections:
        Ui = bisection_inverse(G, U)
        if Ui not in known or bisection_inverse(G, Ui) != U:
            raise VerificationError(f"inverse law fails for {sorted(U)}")
        if bisection_product(G, bisection_product(G, U, Ui), U) != U:
            raise VerificationError(f"U U^-1 U != U for {sorted(U)}")
        if bisection_product(G, Ui, U) != bisection_dom(G, U):
            raise VerificationError(f"U^-1 U != dom(U) for {sorted(U)}")
        if bisection_product(G, U, Ui) != bisection_ran(G, U):
            raise VerificationError(f"U U^-1 != ran(U) for {sorted(U)}")
    rng = random.Random(seed)
    bl = list(bisections)
    for _ in range(triples):
        U, V, W = rng.choice(bl), rng.choice(bl), rng.choice(bl)
        UV = bisection_product(G, U, V)
        if UV not in known:
            raise VerificationError("product of bisections is not a bisection")
        if bisection_product(G, UV, W) != bisection_product(G, U, bisection_product(G, V, W)):
            raise VerificationError("bisection product is not associative")
