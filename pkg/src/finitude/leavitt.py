"""Directed graphs, graph inverse semigroups, relative Cohn algebras by
rewriting, the no-exit decision and the path groupoid of a no-exit graph.

Paths are read left to right: ``p = e1 e2 ... en`` with ``ran(e_i) =
dom(e_{i+1})``.  A monomial ``pq*`` acts on finite paths by ``qx -> px``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .algebra import witness_check
from .errors import InputError, VerificationError
from .linalg import rank
from .scalars import Gaussian, ONE, ZERO


# ---------------------------------------------------------------------------
# graphs and paths


class DirectedGraph:
    """A finite directed multigraph with named vertices and edges.

    ``X`` is the vertex set carrying the Cuntz-Krieger relation; it defaults
    to the regular vertices (the Leavitt case).
    """

    def __init__(self, vertices: Sequence[str], edges: Sequence[tuple[str, str, str]],
                 X: Optional[Iterable[str]] = None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("vertex names must be unique")
        vpos = {v: i for i, v in enumerate(self.vertices)}
        names, dom, ran = [], [], []
        for name, d, r in edges:
            if str(d) not in vpos or str(r) not in vpos:
                raise InputError(f"edge {name!r} has an unknown endpoint")
            names.append(str(name))
            dom.append(vpos[str(d)])
            ran.append(vpos[str(r)])
        if len(set(names)) != len(names):
            raise InputError("edge names must be unique")
        if set(names) & set(self.vertices):
            raise InputError("edge and vertex names must be distinct")
        self.edges = tuple(names)
        self.dom = tuple(dom)
        self.ran = tuple(ran)
        self._vpos = vpos
        self._epos = {e: i for i, e in enumerate(names)}
        out = [[] for _ in self.vertices]
        for i in sorted(range(len(names)), key=lambda i: names[i]):
            out[dom[i]].append(i)
        self.out_edges = tuple(tuple(o) for o in out)
        if X is None:
            self.X = regular_vertices(self)
        else:
            xs = set()
            for v in X:
                if str(v) not in vpos:
                    raise InputError(f"X names an unknown vertex {v!r}")
                xs.add(vpos[str(v)])
            irregular = [self.vertices[v] for v in xs if not self.out_edges[v]]
            if irregular:
                raise InputError(f"X may only contain regular vertices; sinks given: {irregular}")
            self.X = frozenset(xs)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex(self, name) -> int:
        try:
            return self._vpos[str(name)]
        except KeyError:
            raise InputError(f"unknown vertex {name!r}") from None

    def edge(self, name) -> int:
        try:
            return self._epos[str(name)]
        except KeyError:
            raise InputError(f"unknown edge {name!r}") from None

    def with_X(self, X: Iterable[str]) -> "DirectedGraph":
        return DirectedGraph(self.vertices, self._edge_records(), X)

    def _edge_records(self):
        return [(e, self.vertices[d], self.vertices[r]) for e, d, r in zip(self.edges, self.dom, self.ran)]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e, "dom": d, "ran": r} for e, d, r in self._edge_records()],
            "X": sorted(self.vertices[v] for v in self.X),
        }

    @classmethod
    def from_json(cls, data) -> "DirectedGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            edges = [(e["name"], e["dom"], e["ran"]) for e in data.get("edges", [])]
            return cls(data["vertices"], edges, data.get("X"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from None

    def __repr__(self):
        return f"DirectedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # paths

    def path(self, edges: Sequence, src=None) -> "Path":
        """Path from edge names or indices; ``src`` is required for the empty path."""
        idx = tuple(self.edge(e) if isinstance(e, str) else int(e) for e in edges)
        if not idx:
            if src is None:
                raise InputError("empty path needs a base vertex")
            v = self.vertex(src) if isinstance(src, str) else int(src)
            return Path(v, v, ())
        for a, b in zip(idx, idx[1:]):
            if self.ran[a] != self.dom[b]:
                raise InputError(f"edges {self.edges[a]} and {self.edges[b]} do not compose")
        return Path(self.dom[idx[0]], self.ran[idx[-1]], idx)

    def vertex_path(self, v) -> "Path":
        v = self.vertex(v) if isinstance(v, str) else int(v)
        return Path(v, v, ())

    def paths(self, length: int, src: Optional[int] = None) -> Iterator["Path"]:
        """All paths of exactly the given length, optionally from ``src``."""
        starts = range(self.n_vertices) if src is None else [src]
        for v in starts:
            frontier = [Path(v, v, ())]
            for _ in range(length):
                frontier = [p.extend(self, e) for p in frontier for e in self.out_edges[p.dst]]
            yield from frontier

    def paths_upto(self, length: int) -> list["Path"]:
        return [p for k in range(length + 1) for p in self.paths(k)]

    def path_name(self, p: "Path") -> str:
        return ".".join(self.edges[e] for e in p.edges) if p.edges else self.vertices[p.src]

    def parse_path(self, text: str) -> "Path":
        text = text.strip()
        if text in self._vpos:
            return self.vertex_path(text)
        return self.path(text.split("."))


@dataclass(frozen=True, order=True)
class Path:
    src: int
    dst: int
    edges: tuple

    def __len__(self):
        return len(self.edges)

    def extend(self, E: DirectedGraph, e: int) -> "Path":
        if E.dom[e] != self.dst:
            raise InputError("edge does not continue the path")
        return Path(self.src, E.ran[e], self.edges + (e,))

    def concat(self, other: "Path") -> "Path":
        if self.dst != other.src:
            raise InputError("paths do not compose")
        return Path(self.src, other.dst, self.edges + other.edges)

    def has_prefix(self, q: "Path") -> bool:
        return self.src == q.src and self.edges[: len(q.edges)] == q.edges

    def drop(self, k: int, E: DirectedGraph) -> "Path":
        """The tail after the first k edges."""
        if k == 0:
            return self
        rest = self.edges[k:]
        v = E.ran[self.edges[k - 1]]
        return Path(v, self.dst, rest)


def regular_vertices(E: DirectedGraph) -> frozenset:
    """Vertices that are neither sinks nor infinite emitters, i.e. out-degree >= 1 here."""
    return frozenset(v for v in range(E.n_vertices) if E.out_edges[v])


# ---------------------------------------------------------------------------
# cycles and exits


def _sccs(E: DirectedGraph) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan)."""
    index, low, on_stack = {}, {}, set()
    stack, out, counter = [], [], [0]
    succ = [[E.ran[e] for e in E.out_edges[v]] for v in range(E.n_vertices)]
    for root in range(E.n_vertices):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            if i < len(succ[v]):
                work.append((v, i + 1))
                w = succ[v][i]
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def cycle_vertices(E: DirectedGraph) -> frozenset:
    """Vertices lying on some cycle."""
    on = set()
    for comp in _sccs(E):
        if len(comp) > 1 or any(E.ran[e] == comp[0] for e in E.out_edges[comp[0]]):
            on.update(comp)
    return frozenset(on)


def _cycle_through(E: DirectedGraph, v: int) -> Path:
    """A shortest cycle starting and ending at v (BFS over edges)."""
    prev = {}
    frontier = [v]
    seen = set()
    while frontier:
        nxt = []
        for u in frontier:
            for e in E.out_edges[u]:
                w = E.ran[e]
                if w == v:
                    edges = [e]
                    x = u
                    while x != v:
                        edges.append(prev[x])
                        x = E.dom[prev[x]]
                    return E.path(list(reversed(edges)))
                if w not in seen:
                    seen.add(w)
                    prev[w] = e
                    nxt.append(w)
        frontier = nxt
    raise InputError(f"vertex {E.vertices[v]} is not on a cycle")


@dataclass(frozen=True)
class ExitWitness:
    cycle: Path
    exit_edge: int

    def to_json(self, E: DirectedGraph) -> dict:
        return {"cycle": E.path_name(self.cycle), "exit": E.edges[self.exit_edge],
                "vertex": E.vertices[self.cycle.src]}


@dataclass(frozen=True)
class NoExitResult:
    no_exit: bool
    witness: Optional[ExitWitness]

    def __bool__(self):
        return self.no_exit


def is_no_exit(E: DirectedGraph) -> NoExitResult:
    """Every vertex on a cycle has out-degree one; otherwise return a cycle and an exit."""
    for v in sorted(cycle_vertices(E)):
        if len(E.out_edges[v]) > 1:
            c = _cycle_through(E, v)
            exit_edge = next(e for e in E.out_edges[v] if e != c.edges[0])
            return NoExitResult(False, ExitWitness(c, exit_edge))
    return NoExitResult(True, None)


# ---------------------------------------------------------------------------
# graph inverse semigroup


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "0"

    def __reduce__(self):
        return (_Zero, ())


ZERO_MONOMIAL = _Zero()


@dataclass(frozen=True, order=True)
class PEMonomial:
    """pq* with ran(p) = ran(q); a vertex v is the monomial (v, v) of empty paths."""

    p: Path
    q: Path

    def __post_init__(self):
        if self.p.dst != self.q.dst:
            raise InputError("pq* needs ran(p) = ran(q)")

    @property
    def length(self) -> int:
        return len(self.p) + len(self.q)

    def star(self) -> "PEMonomial":
        return PEMonomial(self.q, self.p)

    def act(self, x: Path) -> Optional[Path]:
        """qx -> px; None where undefined."""
        if not x.has_prefix(self.q):
            return None
        return Path(self.p.src, x.dst, self.p.edges + x.edges[len(self.q):])

    def text(self, E: DirectedGraph) -> str:
        return f"{E.path_name(self.p)}|{E.path_name(self.q)}"


def pe_multiply(m1, m2):
    """(pq*)(rs*) = (pu)s* if r = qu, p(su)* if q = ru, else zero."""
    if m1 is ZERO_MONOMIAL or m2 is ZERO_MONOMIAL:
        return ZERO_MONOMIAL
    p, q = m1.p, m1.q
    r, s = m2.p, m2.q
    if r.has_prefix(q):
        u = r.edges[len(q):]
        return PEMonomial(Path(p.src, r.dst, p.edges + u), s)
    if q.has_prefix(r):
        u = q.edges[len(r):]
        return PEMonomial(p, Path(s.src, q.dst, s.edges + u))
    return ZERO_MONOMIAL


def parse_monomial(E: DirectedGraph, text: str) -> PEMonomial:
    """'p|q' with paths written 'e.f' or as a vertex name."""
    if "|" not in text:
        raise InputError(f"monomial {text!r} must have the form p|q")
    a, b = text.split("|", 1)
    return PEMonomial(E.parse_path(a), E.parse_path(b))


# ---------------------------------------------------------------------------
# relative Cohn algebras


class CohnContext:
    """Graph, relation set X and special edges gamma(v) for v in X."""

    def __init__(self, E: DirectedGraph, gamma: Optional[Mapping] = None):
        self.graph = E
        g = {}
        for v in sorted(E.X):
            g[v] = E.out_edges[v][0]  # least edge name
        if gamma:
            for v, e in gamma.items():
                vi = E.vertex(v) if isinstance(v, str) else int(v)
                ei = E.edge(e) if isinstance(e, str) else int(e)
                if vi not in E.X:
                    raise InputError(f"special edge given for {E.vertices[vi]}, which is not in X")
                if E.dom[ei] != vi:
                    raise InputError(f"gamma({E.vertices[vi]}) = {E.edges[ei]} is not an edge out of it")
                g[vi] = ei
        self.gamma = g
        self._special = {e: v for v, e in g.items()}

    def is_normal(self, m: PEMonomial) -> bool:
        if not m.p.edges or not m.q.edges:
            return True
        e = m.p.edges[-1]
        return not (e == m.q.edges[-1] and e in self._special)

    def rewrite(self, m: PEMonomial) -> list[tuple[int, PEMonomial]]:
        """One step: p'g(q'g)* -> p'q'* - sum over other edges e out of v of p'e(q'e)*."""
        g = m.p.edges[-1]
        v = self.graph.dom[g]
        p1 = Path(m.p.src, v, m.p.edges[:-1])
        q1 = Path(m.q.src, v, m.q.edges[:-1])
        out = [(1, PEMonomial(p1, q1))]
        for e in self.graph.out_edges[v]:
            if e != g:
                w = self.graph.ran[e]
                out.append((-1, PEMonomial(Path(p1.src, w, p1.edges + (e,)), Path(q1.src, w, q1.edges + (e,)))))
        return out

    def element(self, terms) -> "CohnElement":
        return cohn_reduce(self, terms)

    def monomial(self, m: PEMonomial, c=ONE) -> "CohnElement":
        return cohn_reduce(self, {m: c})

    def vertex(self, v) -> "CohnElement":
        p = self.graph.vertex_path(v)
        return self.monomial(PEMonomial(p, p))

    def edge(self, e) -> "CohnElement":
        p = self.graph.path([e])
        return self.monomial(PEMonomial(p, self.graph.vertex_path(p.dst)))

    def ghost(self, e) -> "CohnElement":
        return self.edge(e).star()

    def path(self, p: Path) -> "CohnElement":
        return self.monomial(PEMonomial(p, self.graph.vertex_path(p.dst)))

    def zero(self) -> "CohnElement":
        return CohnElement(self, {})

    def parse(self, data) -> "CohnElement":
        """[["p|q", coeff], ...] with coefficients as scalar JSON."""
        terms = {}
        for text, c in data:
            m = parse_monomial(self.graph, text)
            c = Gaussian.from_json(c)
            terms[m] = terms.get(m, ZERO) + c
        return cohn_reduce(self, terms)

    def normal_monomials(self, max_len: int) -> list[PEMonomial]:
        """All normal-form monomials of total length at most max_len, sorted."""
        E = self.graph
        by_dst: dict = {}
        for p in E.paths_upto(max_len):
            by_dst.setdefault(p.dst, []).append(p)
        out = []
        for ps in by_dst.values():
            for p in ps:
                for q in ps:
                    if len(p) + len(q) <= max_len:
                        m = PEMonomial(p, q)
                        if self.is_normal(m):
                            out.append(m)
        out.sort(key=lambda m: (m.length, m))
        return out


def cohn_reduce(ctx: CohnContext, terms, strategy: str = "leftmost") -> "CohnElement":
    """Rewrite a formal combination of monomials into normal form.

    ``terms`` maps monomials to coefficients (or is an iterable of pairs).
    ``strategy`` picks the next non-normal monomial to rewrite: the least
    ("leftmost") or the greatest ("rightmost") in the monomial order.  Each
    step either shortens a monomial or replaces it by normal monomials, so
    the process terminates.
    """
    if isinstance(terms, Mapping):
        items = terms.items()
    else:
        items = terms
    pending: dict = {}
    for m, c in items:
        if m is ZERO_MONOMIAL:
            continue
        c = Gaussian.coerce(c)
        if c:
            pending[m] = pending.get(m, ZERO) + c
    done: dict = {}
    if strategy not in ("leftmost", "rightmost"):
        raise InputError("strategy must be 'leftmost' or 'rightmost'")
    pick = min if strategy == "leftmost" else max
    while pending:
        m = pick(pending)
        c = pending.pop(m)
        if not c:
            continue
        if ctx.is_normal(m):
            done[m] = done.get(m, ZERO) + c
            continue
        for sign, m2 in ctx.rewrite(m):
            pending[m2] = pending.get(m2, ZERO) + (c if sign > 0 else -c)
    return CohnElement(ctx, done)


class CohnElement:
    __slots__ = ("context", "coeffs")

    def __init__(self, context: CohnContext, coeffs: Mapping):
        self.context = context
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    def _same(self, other):
        if not isinstance(other, CohnElement) or other.context is not self.context:
            raise InputError("Cohn elements from different contexts")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return CohnElement(self.context, out)

    def __neg__(self):
        return CohnElement(self.context, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CohnElement":
        c = Gaussian.coerce(c)
        return CohnElement(self.context, {m: c * x for m, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, CohnElement):
            return self.scale(other)
        return cohn_multiply(self, other)

    def star(self) -> "CohnElement":
        return CohnElement(self.context, {m.star(): c.conj() for m, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CohnElement):
            return NotImplemented
        return self.context is other.context and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def to_text(self) -> list:
        E = self.context.graph
        return [[m.text(E), c.to_json()] for m, c in sorted(self.coeffs.items())]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        E = self.context.graph
        return " + ".join(f"({c})*[{m.text(E)}]" for m, c in sorted(self.coeffs.items()))


def cohn_multiply(a: CohnElement, b: CohnElement) -> CohnElement:
    a._same(b)
    terms: dict = {}
    for m1, c1 in a.coeffs.items():
        for m2, c2 in b.coeffs.items():
            m = pe_multiply(m1, m2)
            if m is not ZERO_MONOMIAL:
                terms[m] = terms.get(m, ZERO) + c1 * c2
    return cohn_reduce(a.context, terms)


# ---------------------------------------------------------------------------
# the stable-finiteness verdict


@dataclass(frozen=True)
class GraphVerdict:
    no_exit: bool
    stably_finite: bool
    regular_vertices: tuple
    cycle_vertices: tuple
    witness: Optional[dict]

    def to_json(self) -> dict:
        out = {
            "no_exit": self.no_exit,
            "stably_finite": self.stably_finite,
            "regular_vertices": list(self.regular_vertices),
            "cycle_vertices": list(self.cycle_vertices),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def exit_witness(ctx: CohnContext, w: ExitWitness):
    """(e, a, b) = (v, p*, p) with p the cycle from the exit vertex v."""
    v = ctx.vertex(w.cycle.src)
    p = ctx.path(w.cycle)
    return v, p.star(), p


def graph_verdict(E: DirectedGraph, *, X: Optional[Iterable[str]] = None) -> GraphVerdict:
    """Stable finiteness of the Leavitt path algebra: it holds iff the graph has no exit.

    For a graph with an exit the witness (v, p*, p) is certified in the Cohn
    arithmetic for the Leavitt relations: p*p = v while pp* != v, and pp*
    kills the exit edge that v fixes.
    """
    G = E if X is None else E.with_X(X)
    ne = is_no_exit(G)
    reg = tuple(G.vertices[v] for v in sorted(regular_vertices(G)))
    cyc = tuple(G.vertices[v] for v in sorted(cycle_vertices(G)))
    if ne:
        return GraphVerdict(True, True, reg, cyc, None)
    ctx = CohnContext(G)
    e, a, b = exit_witness(ctx, ne.witness)
    verdict = witness_check(e, a, b)
    if not verdict.valid:
        raise VerificationError("exit witness failed: p p* equals the vertex")
    ex = ctx.edge(ne.witness.exit_edge)
    bpa = b * a
    if bpa * ex or e * ex != ex:
        raise VerificationError("exit edge does not separate p p* from v")
    wit = ne.witness.to_json(G)
    wit.update({
        "e": e.to_text(), "a": a.to_text(), "b": b.to_text(),
        "ab": (a * b).to_text(), "ba": bpa.to_text(),
        "ba_times_exit": (bpa * ex).to_text(), "e_times_exit": (e * ex).to_text(),
        "witness_check": verdict.to_json(),
    })
    return GraphVerdict(False, False, reg, cyc, wit)


# ---------------------------------------------------------------------------
# small graph enumeration


def enumerate_graphs(max_vertices: int = 3, max_edges: int = 3, min_vertices: int = 1) -> Iterator[DirectedGraph]:
    """Every vertex-labelled multigraph (loops allowed) in the given size range.

    Edges are unlabelled: a graph is a multiset of ordered vertex pairs.
    Edges are named e1, e2, ... in the multiset order.
    """
    for n in range(min_vertices, max_vertices + 1):
        verts = [f"v{i}" for i in range(n)]
        pairs = [(a, b) for a in range(n) for b in range(n)]
        for k in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(range(len(pairs)), k):
                edges = [(f"e{j + 1}", verts[pairs[c][0]], verts[pairs[c][1]]) for j, c in enumerate(combo)]
                yield DirectedGraph(verts, edges)


# ---------------------------------------------------------------------------
# the path groupoid of a no-exit graph


@dataclass(frozen=True, order=True)
class PathGroupoidUnit:
    """theta_p for a finite path with ran(p) outside X, or theta_{q c^inf}.

    Periodic units store only the stem q: it ends at the first cycle vertex
    of the infinite path, and c is the cycle read from there.
    """

    periodic: bool
    path: Path

    def label(self, E: DirectedGraph) -> str:
        return E.path_name(self.path) + ("(c^inf)" if self.periodic else "")


class PathGroupoid:
    """Discrete groupoid on the finite unit space of a no-exit graph.

    Arrows are (src, dst, winding) with unit indices; winding is 0 on finite
    orbits, and on a periodic orbit lies in a coset m0 + l Z with l the cycle
    length.  Composition adds windings.
    """

    def __init__(self, E: DirectedGraph):
        _check_hypotheses(E)
        self.graph = E
        self.cycle_vertices = cycle_vertices(E)
        self._cycle_at = {v: self._cycle_from(v) for v in self.cycle_vertices}
        self.units = tuple(units_enumerate(E))
        self.index = {u: i for i, u in enumerate(self.units)}
        # orbits: finite units by ran(path), periodic by the cycle's vertex set
        keys = []
        for u in self.units:
            if u.periodic:
                keys.append(("c", min(self._cycle_vertex_set(u.path.dst))))
            else:
                keys.append(("f", u.path.dst))
        order = []
        for k in keys:
            if k not in order:
                order.append(k)
        self.orbit_of = tuple(order.index(k) for k in keys)
        self.orbits = tuple(tuple(i for i in range(len(self.units)) if self.orbit_of[i] == o) for o in range(len(order)))
        self.period = tuple(len(self._cycle_at[self.units[o[0]].path.dst]) if self.units[o[0]].periodic else 0
                            for o in self.orbits)

    def _cycle_from(self, v: int) -> Path:
        E = self.graph
        edges = []
        x = v
        while True:
            e = E.out_edges[x][0]
            edges.append(e)
            x = E.ran[e]
            if x == v:
                return Path(v, v, tuple(edges))

    def _cycle_vertex_set(self, v: int) -> list:
        return [self.graph.dom[e] for e in self._cycle_at[v].edges]

    @property
    def n_units(self) -> int:
        return len(self.units)

    def unit_label(self, i: int) -> str:
        return self.units[i].label(self.graph)

    def sees(self, i: int, v: int) -> bool:
        return self.units[i].path.src == v

    # unit arithmetic on (possibly infinite) paths

    def prefix(self, u: PathGroupoidUnit, n: int) -> Optional[tuple]:
        """The first n edges of the unit's path, or None if the path is shorter."""
        edges = u.path.edges
        if not u.periodic:
            return edges[:n] if len(edges) >= n else None
        c = self._cycle_at[u.path.dst].edges
        out = list(edges[:n])
        k = 0
        while len(out) < n:
            out.append(c[k % len(c)])
            k += 1
        return tuple(out)

    def canonical(self, src: int, word: tuple, periodic: bool) -> PathGroupoidUnit:
        """Unit for the path src.word (finite) or src.word.c^inf (periodic)."""
        E = self.graph
        if not periodic:
            dst = E.ran[word[-1]] if word else src
            return PathGroupoidUnit(False, Path(src, dst, word))
        x = src
        for k, e in enumerate(word):
            if x in self.cycle_vertices:
                return PathGroupoidUnit(True, Path(src, x, tuple(word[:k])))
            x = E.ran[e]
        return PathGroupoidUnit(True, Path(src, x, tuple(word)))

    def apply(self, m: PEMonomial, i: int) -> Optional[tuple[int, int]]:
        """The germ of pq* at unit i: (target unit, winding), or None if q is not a prefix."""
        u = self.units[i]
        q = m.q
        if u.path.src != q.src or self.prefix(u, len(q)) != q.edges:
            return None
        if u.periodic:
            full = self.prefix(u, max(len(q), len(u.path)))
            rest = full[len(q):]
            target = self.canonical(m.p.src, m.p.edges + rest, True)
            return self.index[target], len(m.p) - len(q)
        rest = u.path.edges[len(q):]
        return self.index[self.canonical(m.p.src, m.p.edges + rest, False)], 0

    # arrows

    def base_winding(self, i: int, j: int) -> int:
        """A winding of some arrow i -> j; raises if they lie in different orbits."""
        if self.orbit_of[i] != self.orbit_of[j]:
            raise InputError("units lie in different orbits")
        ui, uj = self.units[i], self.units[j]
        if not ui.periodic:
            return 0
        # theta_i = q_i t, theta_j = q_j d t with d the cycle segment from ran q_j to ran q_i
        c = self._cycle_at[uj.path.dst]
        verts = [self.graph.dom[e] for e in c.edges]
        d = verts.index(ui.path.dst)
        return len(uj.path) + d - len(ui.path)

    def is_arrow(self, a: tuple) -> bool:
        i, j, m = a
        if self.orbit_of[i] != self.orbit_of[j]:
            return False
        ell = self.period[self.orbit_of[i]]
        if ell == 0:
            return m == 0
        return (m - self.base_winding(i, j)) % ell == 0

    def compose(self, b: tuple, a: tuple) -> Optional[tuple]:
        """b after a; None when ran(a) != dom(b)."""
        if a[1] != b[0]:
            return None
        return (a[0], b[1], a[2] + b[2])

    def inverse(self, a: tuple) -> tuple:
        return (a[1], a[0], -a[2])

    def isotropy(self, i: int) -> dict:
        ell = self.period[self.orbit_of[i]]
        if ell == 0:
            return {"type": "trivial"}
        return {"type": "Z", "generator_winding": ell}

    def finite_arrows(self) -> list[tuple]:
        """All arrows, for groupoids without periodic units."""
        if any(self.period):
            raise InputError("the groupoid has infinitely many arrows")
        return [(i, j, 0) for o in self.orbits for i in o for j in o]

    def to_finite_groupoid(self):
        """The same groupoid as a FiniteGroupoid (no periodic units)."""
        from .groupoid import FiniteGroupoid
        arrows = self.finite_arrows()
        pos = {a: k for k, a in enumerate(arrows)}
        compose = {}
        for a in arrows:
            for b in arrows:
                c = self.compose(a, b)
                if c is not None:
                    compose[(pos[a], pos[b])] = pos[c]
        labels = [f"{self.unit_label(i)}->{self.unit_label(j)}" for i, j, _ in arrows]
        return FiniteGroupoid(self.n_units, [(i, j) for i, j, _ in arrows], compose, labels=labels), pos

    def to_json(self) -> dict:
        return {
            "units": [self.unit_label(i) for i in range(self.n_units)],
            "orbits": [[self.unit_label(i) for i in o] for o in self.orbits],
            "isotropy": [self.isotropy(o[0]) for o in self.orbits],
            "periods": list(self.period),
        }

    # algebra

    def delta(self, a: tuple, c=ONE) -> "PathAlgebraElement":
        if not self.is_arrow(a):
            raise InputError(f"{a} is not an arrow")
        return PathAlgebraElement(self, {a: Gaussian.coerce(c)})

    def zero(self) -> "PathAlgebraElement":
        return PathAlgebraElement(self, {})

    def image(self, m: PEMonomial) -> "PathAlgebraElement":
        """Sum over units theta with q a prefix of the germ [pq*, theta]."""
        out = {}
        for i in range(self.n_units):
            g = self.apply(m, i)
            if g is not None:
                j, w = g
                out[(i, j, w)] = ONE
        return PathAlgebraElement(self, out)

    def image_of(self, x: CohnElement) -> "PathAlgebraElement":
        out = self.zero()
        for m, c in x.coeffs.items():
            out = out + self.image(m).scale(c)
        return out


class PathAlgebraElement:
    """Finitely supported function on the arrows of a PathGroupoid."""

    __slots__ = ("groupoid", "coeffs")

    def __init__(self, groupoid: PathGroupoid, coeffs: Mapping):
        self.groupoid = groupoid
        self.coeffs = {a: c for a, c in coeffs.items() if c}

    def _same(self, other):
        if not isinstance(other, PathAlgebraElement) or other.groupoid is not self.groupoid:
            raise InputError("elements of different path groupoid algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, ZERO) + c
        return PathAlgebraElement(self.groupoid, out)

    def __neg__(self):
        return PathAlgebraElement(self.groupoid, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PathAlgebraElement":
        c = Gaussian.coerce(c)
        return PathAlgebraElement(self.groupoid, {a: c * x for a, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, PathAlgebraElement):
            return self.scale(other)
        self._same(other)
        by_dst: dict = {}
        for a, c in other.coeffs.items():
            by_dst.setdefault(a[1], []).append((a, c))
        out: dict = {}
        for b, cb in self.coeffs.items():
            for a, ca in by_dst.get(b[0], ()):
                k = (a[0], b[1], a[2] + b[2])
                out[k] = out.get(k, ZERO) + cb * ca
        return PathAlgebraElement(self.groupoid, out)

    def star(self) -> "PathAlgebraElement":
        return PathAlgebraElement(self.groupoid, {(a[1], a[0], -a[2]): c.conj() for a, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, PathAlgebraElement):
            return NotImplemented
        return self.groupoid is other.groupoid and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def to_json(self) -> list:
        G = self.groupoid
        return [[G.unit_label(i), G.unit_label(j), m, c.to_json()] for (i, j, m), c in sorted(self.coeffs.items())]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*d{a}" for a, c in sorted(self.coeffs.items()))


def _check_hypotheses(E: DirectedGraph) -> None:
    ne = is_no_exit(E)
    if not ne:
        w = ne.witness
        raise InputError(f"graph has an exit: edge {E.edges[w.exit_edge]} leaves cycle {E.path_name(w.cycle)}")
    outside = sorted(E.vertices[v] for v in cycle_vertices(E) if v not in E.X)
    if outside:
        raise InputError(f"cycle vertices outside X give an infinite unit space: {outside}")


def units_enumerate(E: DirectedGraph) -> list[PathGroupoidUnit]:
    """Finite paths ending outside X and eventually periodic infinite paths.

    Requires a no-exit graph whose cycle vertices all lie in X; every vertex
    is then seen by at least one unit, which is checked.
    """
    _check_hypotheses(E)
    cyc = cycle_vertices(E)
    units = []
    # a path meeting a cycle vertex never leaves that cycle, so stems avoid cycle vertices
    frontier = [Path(v, v, ()) for v in range(E.n_vertices)]
    while frontier:
        nxt = []
        for p in frontier:
            if p.dst in cyc:
                units.append(PathGroupoidUnit(True, p))
                continue
            if p.dst not in E.X:
                units.append(PathGroupoidUnit(False, p))
            for e in E.out_edges[p.dst]:
                nxt.append(p.extend(E, e))
        frontier = nxt
    units.sort(key=lambda u: (u.path.src, len(u.path), u.path.edges, u.periodic))
    seen = {u.path.src for u in units}
    missing = [E.vertices[v] for v in range(E.n_vertices) if v not in seen]
    if missing:
        raise VerificationError(f"vertices seen by no unit: {missing}")
    return units


def path_groupoid(E: DirectedGraph) -> PathGroupoid:
    return PathGroupoid(E)


# ---------------------------------------------------------------------------
# the isomorphism check


@dataclass
class CohnGroupoidReport:
    units: int
    orbits: int
    relations_checked: int
    monomials: int
    rank: int
    support_size: int
    multiplicative_pairs: int
    max_len: int

    @property
    def independent(self) -> bool:
        return self.rank == self.monomials

    def to_json(self) -> dict:
        return {
            "units": self.units, "orbits": self.orbits,
            "relations_checked": self.relations_checked,
            "normal_monomials": self.monomials, "rank": self.rank,
            "arrows_in_support": self.support_size,
            "independent": self.independent,
            "multiplicative_pairs": self.multiplicative_pairs,
            "max_len": self.max_len,
        }


def verify_cohn_groupoid_iso(E: DirectedGraph, max_len: int = 4, *, pair_len: Optional[int] = None) -> CohnGroupoidReport:
    """Check that v -> 1_{D(v)} and e -> germs of e define an injective map C(E) -> K G.

    Verifies the graph inverse semigroup relations and the X-relations on
    the generator images, multiplicativity of the monomial map on normal-form
    pairs up to ``pair_len``, that every vertex image is nonzero and that the
    images of all normal-form monomials up to ``max_len`` are independent.
    """
    G = PathGroupoid(E)
    ctx = CohnContext(E)
    V = range(E.n_vertices)
    vert = {v: G.image(PEMonomial(E.vertex_path(v), E.vertex_path(v))) for v in V}
    edge = {e: G.image(PEMonomial(E.path([e]), E.vertex_path(E.ran[e]))) for e in range(E.n_edges)}
    ghost = {e: G.image(PEMonomial(E.vertex_path(E.ran[e]), E.path([e]))) for e in range(E.n_edges)}
    checks = 0

    def require(ok, what):
        nonlocal checks
        checks += 1
        if not ok:
            raise VerificationError(f"relation fails in the groupoid algebra: {what}")

    for v in V:
        require(bool(vert[v]), f"image of {E.vertices[v]} is zero")
        for w in V:
            require(vert[v] * vert[w] == (vert[v] if v == w else G.zero()), f"{E.vertices[v]}{E.vertices[w]}")
    for e in range(E.n_edges):
        name = E.edges[e]
        require(vert[E.dom[e]] * edge[e] == edge[e], f"dom({name}) {name} = {name}")
        require(edge[e] * vert[E.ran[e]] == edge[e], f"{name} ran({name}) = {name}")
        require(ghost[e] == edge[e].star(), f"{name}* = star({name})")
        for f in range(E.n_edges):
            want = vert[E.ran[e]] if e == f else G.zero()
            require(ghost[f] * edge[e] == want, f"{E.edges[f]}* {name}")
    for v in sorted(E.X):
        total = G.zero()
        for e in E.out_edges[v]:
            total = total + edge[e] * ghost[e]
        require(total == vert[v], f"{E.vertices[v]} = sum ee*")

    mons = ctx.normal_monomials(max_len)
    images = [G.image(m) for m in mons]
    # each monomial image equals the product of its generator images
    for m, img in zip(mons, images):
        x = vert[m.p.src]
        for e in m.p.edges:
            x = x * edge[e]
        for e in reversed(m.q.edges):
            x = x * ghost[e]
        require(x == img, f"image of {m.text(E)}")
    r = rank([im.coeffs for im in images])
    if r != len(mons):
        raise VerificationError(f"normal-form images are dependent: rank {r} < {len(mons)}")
    support = set()
    for im in images:
        support.update(im.coeffs)

    pair_len = max_len // 2 if pair_len is None else pair_len
    small = [m for m in mons if m.length <= pair_len]
    pairs = 0
    for a in small:
        for b in small:
            prod = cohn_multiply(ctx.monomial(a), ctx.monomial(b))
            if G.image_of(prod) != G.image(a) * G.image(b):
                raise VerificationError(f"map is not multiplicative on {a.text(E)}, {b.text(E)}")
            pairs += 1
    return CohnGroupoidReport(G.n_units, len(G.orbits), checks, len(mons), r, len(support), pairs, max_len)
