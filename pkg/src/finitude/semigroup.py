"""Finite semigroups and inverse semigroups given by multiplication tables.

Elements are the integers ``0..n-1``; ``table[i][j]`` is the index of the
product of element ``i`` and element ``j``.  Products of partial bijections
follow function composition, ``(s*t)(x) = s(t(x))``, so matrix units
multiply as matrices do.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import InputError, NotInverseError, NotRegularError, SizeError, VerificationError

DEFAULT_MAX_SIZE = 100_000


# ---------------------------------------------------------------------------
# partial bijections


@dataclass(frozen=True)
class PartialBijection:
    """A partial injective map on ``{0, ..., degree-1}``; ``None`` marks undefined points."""

    degree: int
    mapping: tuple

    def __post_init__(self):
        mapping = tuple(None if v is None else int(v) for v in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if self.degree < 1 or len(mapping) != self.degree:
            raise InputError(f"mapping must have length degree={self.degree}")
        seen = set()
        for v in mapping:
            if v is None:
                continue
            if not 0 <= v < self.degree:
                raise InputError(f"target {v} out of range for degree {self.degree}")
            if v in seen:
                raise InputError(f"mapping {mapping} is not injective")
            seen.add(v)

    @classmethod
    def identity(cls, degree: int, domain: Optional[Iterable[int]] = None) -> "PartialBijection":
        dom = set(range(degree)) if domain is None else set(domain)
        return cls(degree, tuple(x if x in dom else None for x in range(degree)))

    def __call__(self, x: int) -> Optional[int]:
        return self.mapping[x]

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        if other.degree != self.degree:
            raise InputError("degree mismatch")
        m = self.mapping
        return PartialBijection(self.degree, tuple(None if y is None else m[y] for y in other.mapping))

    def inverse(self) -> "PartialBijection":
        inv = [None] * self.degree
        for x, y in enumerate(self.mapping):
            if y is not None:
                inv[y] = x
        return PartialBijection(self.degree, tuple(inv))

    @property
    def domain(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.mapping) if y is not None)

    @property
    def image(self) -> frozenset:
        return frozenset(y for y in self.mapping if y is not None)

    @property
    def rank(self) -> int:
        return sum(y is not None for y in self.mapping)

    def as_array(self) -> list[int]:
        return [-1 if y is None else y for y in self.mapping]


# ---------------------------------------------------------------------------
# semigroups


class FiniteSemigroup:
    """A finite semigroup stored as a full multiplication table.

    ``star`` is an optional involution given as an index list; when present it
    is checked to satisfy ``(st)* = t*s*`` and ``s** = s``.
    """

    def __init__(self, table, labels: Optional[Sequence[str]] = None,
                 star: Optional[Sequence[int]] = None, *, check: bool = True):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError("multiplication table must be square")
        n = arr.shape[0]
        if n == 0:
            raise InputError("semigroups must be nonempty")
        if check and (arr.min() < 0 or arr.max() >= n):
            raise InputError("table entries out of range")
        arr.setflags(write=False)
        self.table = arr
        self.size = n
        self.rows = arr.tolist()
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise InputError("label count does not match table size")
        if len(set(self.labels)) != n:
            raise InputError("labels must be distinct")
        self.star = tuple(int(x) for x in star) if star is not None else None
        self.parent_indices: Optional[tuple] = None
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if check:
            bad = kernels.find_nonassociative(arr)
            if bad is not None:
                i, j, k = bad
                raise InputError(
                    f"table is not associative: ({self.labels[i]}{self.labels[j]}){self.labels[k]} "
                    f"!= {self.labels[i]}({self.labels[j]}{self.labels[k]})")
            if self.star is not None:
                self._check_star()

    def _check_star(self):
        st = self.star
        n = self.size
        if len(st) != n or any(not 0 <= x < n for x in st):
            raise InputError("star must be an index list of table size")
        for s in range(n):
            if st[st[s]] != s:
                raise InputError(f"star is not an involution at {self.labels[s]}")
        rows = self.rows
        for s in range(n):
            for t in range(n):
                if st[rows[s][t]] != rows[st[t]][st[s]]:
                    raise InputError(
                        f"(st)* != t*s* for s={self.labels[s]}, t={self.labels[t]}")

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"

    def mul(self, s: int, t: int) -> int:
        return self.rows[s][t]

    def product(self, *elements: int) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.rows[acc][x]
        return acc

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element label {label!r}") from None

    @property
    def idempotents(self) -> tuple:
        return tuple(s for s in range(self.size) if self.rows[s][s] == s)

    @property
    def identity(self) -> Optional[int]:
        for e in range(self.size):
            if all(self.rows[e][s] == s and self.rows[s][e] == s for s in range(self.size)):
                return e
        return None

    @property
    def zero(self) -> Optional[int]:
        for z in range(self.size):
            if all(self.rows[z][s] == z and self.rows[s][z] == z for s in range(self.size)):
                return z
        return None

    def is_group(self) -> bool:
        e = self.identity
        if e is None:
            return False
        return all(e in row for row in self.rows) and all(
            any(self.rows[x][s] == e for x in range(self.size)) for s in range(self.size))

    def to_json(self) -> dict:
        out = {"kind": "table", "labels": list(self.labels), "table": self.table.tolist()}
        if self.star is not None:
            out["star"] = list(self.star)
        return out


class FiniteInverseSemigroup(FiniteSemigroup):
    """A finite semigroup in which every element has a unique inverse ``star[s]``."""

    def __init__(self, table, labels=None, star=None, *, check: bool = True):
        if star is None:
            raise InputError("an inverse semigroup needs its involution")
        super().__init__(table, labels, star, check=check)
        if check:
            _check_inverse_laws(self)

    @classmethod
    def _from_checked(cls, S: FiniteSemigroup, star) -> "FiniteInverseSemigroup":
        return cls(S.table, S.labels, star, check=False)


def _check_inverse_laws(S: FiniteSemigroup) -> None:
    rows, st = S.rows, S.star
    for s in range(S.size):
        if rows[rows[s][st[s]]][s] != s or rows[rows[st[s]][s]][st[s]] != st[s]:
            raise NotInverseError(f"s s* s != s for s={S.labels[s]}")
    counts, _ = kernels.weak_inverses(S.table)
    for s in range(S.size):
        if counts[s] != 1:
            raise NotInverseError(f"{S.labels[s]} has {counts[s]} inverses")
    idem = S.idempotents
    for e in idem:
        for f in idem:
            if rows[e][f] != rows[f][e]:
                raise NotInverseError(
                    f"idempotents {S.labels[e]} and {S.labels[f]} do not commute")


def validate_inverse(S: FiniteSemigroup) -> FiniteInverseSemigroup:
    """Check that every element has exactly one inverse and return the inverse semigroup."""
    counts, first = kernels.weak_inverses(S.table)
    for s in range(S.size):
        if counts[s] == 0:
            raise NotRegularError(f"not regular: {S.labels[s]} has no inverse")
        if counts[s] > 1:
            raise NotInverseError(f"not inverse: {S.labels[s]} has {counts[s]} inverses")
    idem = S.idempotents
    rows = S.rows
    for e in idem:
        for f in idem:
            if rows[e][f] != rows[f][e]:
                raise NotInverseError(
                    f"not inverse: idempotents {S.labels[e]}, {S.labels[f]} do not commute")
    return FiniteInverseSemigroup._from_checked(S, [int(x) for x in first])


def induced_subsemigroup(S: FiniteSemigroup, elements: Sequence[int]) -> FiniteSemigroup:
    elements = list(elements)
    pos = {s: i for i, s in enumerate(elements)}
    try:
        table = [[pos[S.rows[a][b]] for b in elements] for a in elements]
    except KeyError:
        raise InputError("subset is not closed under multiplication") from None
    star = None
    if S.star is not None and all(S.star[a] in pos for a in elements):
        star = [pos[S.star[a]] for a in elements]
    sub = FiniteSemigroup(table, [S.labels[a] for a in elements], star, check=False)
    sub.parent_indices = tuple(elements)
    return sub


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    table = [[S.rows[b][a] for b in range(S.size)] for a in range(S.size)]
    cls = FiniteInverseSemigroup if isinstance(S, FiniteInverseSemigroup) else FiniteSemigroup
    if cls is FiniteInverseSemigroup:
        return cls(table, S.labels, S.star, check=False)
    return FiniteSemigroup(table, S.labels, S.star, check=False)


# ---------------------------------------------------------------------------
# closure of partial bijections


def closure(generators: Sequence[PartialBijection], names: Optional[Sequence[str]] = None,
            max_size: int = DEFAULT_MAX_SIZE) -> FiniteInverseSemigroup:
    """The inverse semigroup generated by partial bijections.

    Elements are numbered in breadth-first discovery order: the generators,
    then their new inverses, then right multiples by generators.  Labels are
    words in the generator names joined by ``.``; ``g*`` is the inverse of ``g``.
    """
    if not generators:
        raise InputError("closure needs at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise InputError("generators must have equal degree")
    if names is None:
        names = [f"g{i}" for i in range(len(generators))]
    if len(names) != len(generators):
        raise InputError("one name per generator")

    gens: list[tuple[PartialBijection, str]] = list(zip(generators, names))
    known = {g for g, _ in gens}
    for g, name in list(gens):
        inv = g.inverse()
        if inv not in known:
            known.add(inv)
            gens.append((inv, f"{name}*"))

    elements: list[PartialBijection] = []
    labels: list[str] = []
    index: dict[PartialBijection, int] = {}

    def add(x, label):
        if x in index:
            return
        if len(elements) >= max_size:
            raise SizeError(f"closure exceeds the size bound of {max_size} elements")
        index[x] = len(elements)
        elements.append(x)
        labels.append(label)

    for g, name in gens:
        add(g, name)
    queue = deque(range(len(elements)))
    while queue:
        i = queue.popleft()
        x = elements[i]
        for g, name in gens:
            before = len(elements)
            add(x * g, f"{labels[i]}.{name}")
            if len(elements) > before:
                queue.append(before)

    table = _composition_table(elements, index)
    star = [index[x.inverse()] for x in elements]
    S = FiniteInverseSemigroup(table, labels, star, check=False)
    return S


def _composition_table(elements, index) -> np.ndarray:
    n = len(elements)
    degree = elements[0].degree
    if degree <= 15:
        maps = np.array([x.as_array() for x in elements], dtype=np.int64)
        codes = kernels.encode_maps(maps)
        order = np.argsort(codes)
        sorted_codes = codes[order]
        prods = kernels.product_codes(maps)
        pos = np.searchsorted(sorted_codes, prods)
        if np.any(pos >= n) or np.any(sorted_codes[np.minimum(pos, n - 1)] != prods):
            raise VerificationError("closure is not closed under composition")
        return order[pos]
    table = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[x * y]
    return table


# ---------------------------------------------------------------------------
# Green's relations


@dataclass(frozen=True)
class GreenStructure:
    """Partitions of a finite semigroup into Green classes.

    ``*_index[s]`` is the class number of element ``s``; classes are numbered
    by least element.  ``j_leq`` holds the pairs ``(a, b)`` of J-class numbers
    with ``J_a <= J_b``.
    """

    r_classes: tuple
    l_classes: tuple
    h_classes: tuple
    d_classes: tuple
    j_classes: tuple
    r_index: tuple
    l_index: tuple
    h_index: tuple
    d_index: tuple
    j_index: tuple
    j_leq: frozenset
    right_ideal: np.ndarray = field(repr=False, compare=False)
    left_ideal: np.ndarray = field(repr=False, compare=False)
    two_sided_ideal: np.ndarray = field(repr=False, compare=False)

    def j_le(self, a: int, b: int) -> bool:
        return (a, b) in self.j_leq

    def h_class_of(self, s: int) -> tuple:
        return self.h_classes[self.h_index[s]]


def _classes_from_keys(keys) -> tuple[tuple, tuple]:
    classes: dict = {}
    for s, k in enumerate(keys):
        classes.setdefault(k, []).append(s)
    ordered = sorted(classes.values(), key=lambda c: c[0])
    index = [0] * len(keys)
    for ci, members in enumerate(ordered):
        for s in members:
            index[s] = ci
    return tuple(tuple(c) for c in ordered), tuple(index)


def green(S: FiniteSemigroup) -> GreenStructure:
    right, left, two = kernels.ideal_matrices(S.table)
    r_eq = right & right.T
    l_eq = left & left.T
    j_eq = two & two.T
    r_classes, r_index = _classes_from_keys([r_eq[s].tobytes() for s in range(S.size)])
    l_classes, l_index = _classes_from_keys([l_eq[s].tobytes() for s in range(S.size)])
    j_classes, j_index = _classes_from_keys([j_eq[s].tobytes() for s in range(S.size)])
    h_classes, h_index = _classes_from_keys(list(zip(r_index, l_index)))

    # D as the join of R and L, computed independently of J
    parent = list(range(S.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cls in r_classes + l_classes:
        root = find(cls[0])
        for s in cls[1:]:
            r2 = find(s)
            if r2 != root:
                parent[r2] = root
    d_classes, d_index = _classes_from_keys([find(s) for s in range(S.size)])

    j_leq = set()
    for a, ja in enumerate(j_classes):
        for b, jb in enumerate(j_classes):
            if two[jb[0], ja[0]]:
                j_leq.add((a, b))
    return GreenStructure(
        r_classes, l_classes, h_classes, d_classes, j_classes,
        r_index, l_index, h_index, d_index, j_index, frozenset(j_leq),
        right, left, two)


# ---------------------------------------------------------------------------
# natural partial order and maximal subgroups


class NaturalOrder:
    """The natural partial order ``s <= t  iff  s = t e`` for an idempotent ``e``."""

    def __init__(self, S: FiniteSemigroup):
        rows = S.rows
        idem = S.idempotents
        below: list[set] = [set() for _ in range(S.size)]
        for t in range(S.size):
            for e in idem:
                below[t].add(rows[t][e])
        self.size = S.size
        self._below = [tuple(sorted(b)) for b in below]
        self.pairs = frozenset((s, t) for t in range(S.size) for s in self._below[t])

    def leq(self, s: int, t: int) -> bool:
        return (s, t) in self.pairs

    def below(self, t: int) -> tuple:
        """All ``s <= t`` in index order."""
        return self._below[t]

    def strictly_below(self, t: int) -> tuple:
        return tuple(s for s in self._below[t] if s != t)


def natural_order(S: FiniteInverseSemigroup) -> NaturalOrder:
    return NaturalOrder(S)


def maximal_subgroup(S: FiniteSemigroup, e: int, G: Optional[GreenStructure] = None) -> FiniteSemigroup:
    """The H-class of the idempotent ``e`` as a group; ``parent_indices`` maps back into S."""
    e = S.index(e)
    if S.rows[e][e] != e:
        raise InputError(f"{S.labels[e]} is not idempotent")
    if G is None:
        G = green(S)
    H = induced_subsemigroup(S, G.h_class_of(e))
    if not H.is_group():
        raise VerificationError(f"H-class of {S.labels[e]} is not a group")
    return H


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class DClassInfo:
    index: int
    elements: tuple
    idempotents: tuple
    r_classes: int
    l_classes: int
    subgroup_order: int

    def to_json(self, S: FiniteSemigroup) -> dict:
        return {
            "elements": [S.labels[s] for s in self.elements],
            "idempotents": [S.labels[e] for e in self.idempotents],
            "idempotent_count": len(self.idempotents),
            "r_classes": self.r_classes,
            "l_classes": self.l_classes,
            "maximal_subgroup_order": self.subgroup_order,
        }


@dataclass(frozen=True)
class DClassReport:
    classes: tuple
    subgroup_orders: tuple

    @property
    def stably_finite(self) -> bool:
        # maximal subgroups are finite groups, whose algebras are finite dimensional
        return True

    def to_json(self, S: FiniteSemigroup) -> dict:
        return {
            "d_classes": [c.to_json(S) for c in self.classes],
            "maximal_subgroup_orders": list(self.subgroup_orders),
            "reduction": "KS is stably finite iff KG is stably finite for every listed maximal subgroup G",
            "char0_conclusion": "stably finite" if self.stably_finite else "undecided",
            "note": "each maximal subgroup is finite, so KG is finite dimensional and hence stably finite",
        }


def d_class_report(S: FiniteInverseSemigroup, G: Optional[GreenStructure] = None) -> DClassReport:
    if G is None:
        G = green(S)
    idem = set(S.idempotents)
    classes = []
    for i, cls in enumerate(G.d_classes):
        es = tuple(s for s in cls if s in idem)
        rs = {G.r_index[s] for s in cls}
        ls = {G.l_index[s] for s in cls}
        order = len(G.h_class_of(es[0])) if es else 0
        classes.append(DClassInfo(i, cls, es, len(rs), len(ls), order))
    return DClassReport(tuple(classes), tuple(c.subgroup_order for c in classes))


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    counterexample: Optional[tuple]
    pairs_checked: int

    def __bool__(self):
        return self.stable


def is_stable(S: FiniteSemigroup, G: Optional[GreenStructure] = None) -> StabilityResult:
    """Check ``s J st => s R st`` and ``s J ts => s L ts`` over all pairs."""
    if G is None:
        G = green(S)
    rows = S.rows
    ji, ri, li = G.j_index, G.r_index, G.l_index
    checked = 0
    for s, t in cartesian(range(S.size), repeat=2):
        st, ts = rows[s][t], rows[t][s]
        checked += 1
        if ji[s] == ji[st] and ri[s] != ri[st]:
            return StabilityResult(False, ("right", s, t), checked)
        if ji[s] == ji[ts] and li[s] != li[ts]:
            return StabilityResult(False, ("left", s, t), checked)
    return StabilityResult(True, None, checked)


@dataclass(frozen=True)
class JClassInfo:
    index: int
    elements: tuple
    tag: str
    idempotents_by_r: dict
    idempotents_by_l: dict

    def to_json(self, S: FiniteSemigroup) -> dict:
        return {
            "elements": [S.labels[s] for s in self.elements],
            "tag": self.tag,
            "idempotents_by_r_class": [[S.labels[e] for e in v] for _, v in sorted(self.idempotents_by_r.items())],
            "idempotents_by_l_class": [[S.labels[e] for e in v] for _, v in sorted(self.idempotents_by_l.items())],
        }


def j_class_classify(S: FiniteSemigroup, G: Optional[GreenStructure] = None) -> list[JClassInfo]:
    """Tag each J-class as ``null`` (J^2 misses J) or ``regular``."""
    if G is None:
        G = green(S)
    rows = S.rows
    idem = set(S.idempotents)
    out = []
    for ci, cls in enumerate(G.j_classes):
        members = set(cls)
        null = not any(rows[a][b] in members for a in cls for b in cls)
        regular = all(any(rows[rows[s][x]][s] == s for x in range(S.size)) for s in cls)
        if null == regular:
            raise VerificationError(f"J-class {ci} is neither null nor regular")
        by_r: dict = {}
        by_l: dict = {}
        if regular:
            for s in cls:
                by_r.setdefault(G.r_index[s], [])
                by_l.setdefault(G.l_index[s], [])
            for e in cls:
                if e in idem:
                    by_r[G.r_index[e]].append(e)
                    by_l[G.l_index[e]].append(e)
            if any(not v for v in by_r.values()) or any(not v for v in by_l.values()):
                raise VerificationError(f"regular J-class {ci} has an R- or L-class without idempotent")
        out.append(JClassInfo(ci, cls, "null" if null else "regular",
                              {k: tuple(v) for k, v in by_r.items()},
                              {k: tuple(v) for k, v in by_l.items()}))
    return out


# ---------------------------------------------------------------------------
# JSON


def semigroup_from_json(data: dict, max_size: int = DEFAULT_MAX_SIZE) -> FiniteSemigroup:
    """Build a semigroup from its JSON description.

    Tables with a ``star`` entry are validated as inverse semigroups.
    """
    kind = data.get("kind")
    if kind == "partial_bijections":
        degree = int(data["degree"])
        gens = [PartialBijection(degree, tuple(g)) for g in data["generators"]]
        return closure(gens, data.get("names"), max_size=max_size)
    if kind == "table":
        table = data["table"]
        if len(table) > max_size:
            raise SizeError(f"table exceeds the size bound of {max_size} elements")
        labels = data.get("labels")
        star = data.get("star")
        if star is not None:
            return FiniteInverseSemigroup(table, labels, star)
        return FiniteSemigroup(table, labels)
    raise InputError(f"unknown semigroup kind {kind!r}")
