"""Standard small semigroups used throughout the tests and the CLI examples."""

from __future__ import annotations

from itertools import permutations, product

from .semigroup import (
    FiniteInverseSemigroup,
    FiniteSemigroup,
    PartialBijection,
    closure,
)


def trivial_monoid() -> FiniteInverseSemigroup:
    return closure([PartialBijection.identity(2)], ["1"])


def matrix_units(n: int) -> FiniteInverseSemigroup:
    """B_n: the n x n matrix units together with a zero (element 0)."""
    labels = ["0"] + [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]

    def idx(i, j):
        return 1 + i * n + j

    size = n * n + 1
    table = [[0] * size for _ in range(size)]
    star = [0] * size
    for i, j in product(range(n), repeat=2):
        star[idx(i, j)] = idx(j, i)
        for k, l in product(range(n), repeat=2):
            if j == k:
                table[idx(i, j)][idx(k, l)] = idx(i, l)
    return FiniteInverseSemigroup(table, labels, star)


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """I_n generated by a transposition, an n-cycle and a rank n-1 partial identity."""
    gens = []
    names = []
    if n >= 2:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        gens.append(PartialBijection(n, tuple(swap)))
        names.append("a")
        if n > 2:
            gens.append(PartialBijection(n, tuple((x + 1) % n for x in range(n))))
            names.append("b")
    else:
        gens.append(PartialBijection.identity(n))
        names.append("1")
    gens.append(PartialBijection.identity(n, range(1, n)))
    names.append("c")
    return closure(gens, names)


def chain(k: int) -> FiniteInverseSemigroup:
    """The k-element chain semilattice 0 < e1 < ... (product = meet)."""
    labels = ["0"] + (["e"] if k == 2 else [f"e{i}" for i in range(1, k)])
    table = [[min(a, b) for b in range(k)] for a in range(k)]
    return FiniteInverseSemigroup(table, labels, list(range(k)))


def semilattice_pair() -> FiniteInverseSemigroup:
    """The 2-element semilattice {0, e}."""
    return chain(2)


def cyclic_group(n: int) -> FiniteInverseSemigroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    star = [(-a) % n for a in range(n)]
    return FiniteInverseSemigroup(table, [f"g{a}" if a else "1" for a in range(n)], star)


def symmetric_group(n: int) -> FiniteInverseSemigroup:
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(n))

    def inverse(p):
        inv = [0] * n
        for x, y in enumerate(p):
            inv[y] = x
        return tuple(inv)

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    star = [index[inverse(p)] for p in perms]
    labels = ["".join(str(y) for y in p) for p in perms]
    return FiniteInverseSemigroup(table, labels, star)


def full_transformation_monoid(n: int) -> FiniteSemigroup:
    """T_n: all maps {0..n-1} -> {0..n-1}, product = composition (apply right factor first)."""
    maps = list(product(range(n), repeat=n))
    index = {m: i for i, m in enumerate(maps)}
    table = [[index[tuple(f[g[x]] for x in range(n))] for g in maps] for f in maps]
    return FiniteSemigroup(table, ["".join(map(str, m)) for m in maps])


def left_zero(n: int = 2) -> FiniteSemigroup:
    return FiniteSemigroup([[a] * n for a in range(n)], [f"x{a}" for a in range(n)])


def null_semigroup() -> FiniteSemigroup:
    """{0, x} with every product equal to 0."""
    return FiniteSemigroup([[0, 0], [0, 0]], ["0", "x"])


def inverse_corpus() -> dict:
    """The finite inverse semigroups named in the acceptance criteria."""
    return {
        "B2": matrix_units(2),
        "B3": matrix_units(3),
        "I2": symmetric_inverse_monoid(2),
        "I3": symmetric_inverse_monoid(3),
        "chain2": chain(2),
        "chain3": chain(3),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "S3": symmetric_group(3),
    }
