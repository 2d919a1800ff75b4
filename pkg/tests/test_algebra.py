import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finitude import corpus
from finitude.algebra import (
    AlgebraElement, WitnessPreconditionError, all_rook_matrices, contracted_algebra, element_from_json,
    embed_rook, groupoid_algebra, iso_semigroup_to_groupoid, local_projection, matrix_algebra,
    matrix_index, orbit_matrix_iso, random_element, restriction_hom, rook_product, rook_star,
    semigroup_algebra, sup_norm_sq, verify_associative, verify_star_axioms, witness_check,
)
from finitude.errors import InputError
from finitude.groupoid import disjoint_union, group_groupoid, pair_groupoid, universal_groupoid
from finitude.scalars import ONE, Gaussian
from finitude.semigroup import FiniteInverseSemigroup


def test_semigroup_algebra_dims():
    assert semigroup_algebra(corpus.trivial_monoid()).dim == 1
    assert semigroup_algebra(corpus.matrix_units(2)).dim == 5
    C = semigroup_algebra(corpus.chain(2))
    assert C.dim == 2
    e, z = C.basis("e"), C.basis("0")
    assert e * z == z * e and e * e == e


def test_unit_iff_monoid():
    assert semigroup_algebra(corpus.symmetric_inverse_monoid(2)).unit is not None
    assert semigroup_algebra(corpus.matrix_units(2)).unit is None


def test_contracted_algebra():
    S = corpus.matrix_units(2)
    C = contracted_algebra(S, [S.zero])
    assert C.dim == 4
    for i, j, k, l in itertools.product((1, 2), repeat=4):
        want = C.basis(f"E{i}{l}") if j == k else C.zero()
        assert C.basis(f"E{i}{j}") * C.basis(f"E{k}{l}") == want
    assert contracted_algebra(S, range(S.size)).dim == 0
    G = corpus.symmetric_group(3)
    assert contracted_algebra(G, []).dim == 6
    with pytest.raises(InputError):
        contracted_algebra(S, [S.index("E11")])


@pytest.mark.parametrize("A", [semigroup_algebra(corpus.symmetric_inverse_monoid(3)),
                               groupoid_algebra(pair_groupoid(3)),
                               matrix_algebra(semigroup_algebra(corpus.cyclic_group(2)), 2),
                               contracted_algebra(corpus.matrix_units(3), [0])])
def test_constructed_algebras_are_star_algebras(A):
    verify_associative(A)
    verify_star_axioms(A)


def test_pair_groupoid_matrix_units():
    n = 3
    A = groupoid_algebra(pair_groupoid(n))
    for i, j, k, l in itertools.product(range(n), repeat=4):
        want = A.basis(f"({i},{l})") if j == k else A.zero()
        assert A.basis(f"({i},{j})") * A.basis(f"({k},{l})") == want


def test_delta_times_star_is_range_identity():
    G = pair_groupoid(2)
    A = groupoid_algebra(G)
    f = A.basis("(0,1)")
    assert f * f.star() == A.basis(G.identity[G.ran[A.index("(0,1)")]])


def test_group_groupoid_is_group_algebra():
    H = corpus.cyclic_group(3)
    A, B = groupoid_algebra(group_groupoid(H)), semigroup_algebra(H)
    assert A.rows == B.rows


@given(st.integers(0, 10_000))
def test_algebra_ring_laws(seed):
    rng = random.Random(seed)
    A = semigroup_algebra(corpus.symmetric_inverse_monoid(2))
    a, b, c = (random_element(A, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).star() == b.star() * a.star()
    assert a.scale(Gaussian(0, 1)).star() == a.star().scale(Gaussian(0, -1))


def test_iso_chain():
    S = corpus.chain(2)
    iso = iso_semigroup_to_groupoid(S)
    KS, KG = iso.forward.source, iso.forward.target
    img = iso.forward(KS.basis("e"))
    assert img == KG.basis("e") + KG.basis("0")
    assert img * img == img


def test_iso_b2_example():
    S = corpus.matrix_units(2)
    iso = iso_semigroup_to_groupoid(S)
    KS, KG = iso.forward.source, iso.forward.target
    e12 = iso.forward(KS.basis("E12"))
    assert e12 == KG.basis("E12") + KG.basis("0")
    assert e12 * iso.forward(KS.basis("E21")) == KG.basis("E11") + KG.basis("0")


def test_iso_group_is_identity():
    iso = iso_semigroup_to_groupoid(corpus.symmetric_group(3))
    assert iso.forward.is_identity_on_basis()


def test_matrix_algebra_examples():
    A = semigroup_algebra(corpus.cyclic_group(2))
    assert matrix_algebra(A, 1).rows == A.rows
    T = semigroup_algebra(corpus.trivial_monoid())
    M = matrix_algebra(T, 2)
    E = lambda i, j: M.basis(matrix_index(M, i, j, 0))  # noqa: E731
    assert E(0, 0) * E(0, 1) == E(0, 1)
    MA = matrix_algebra(A, 2)
    g = A.index("g1")
    assert MA.basis(matrix_index(MA, 0, 1, g)).star() == MA.basis(matrix_index(MA, 1, 0, A.star[g]))


def test_rook_products_embed():
    S = corpus.symmetric_inverse_monoid(2)
    A = semigroup_algebra(S)
    M = matrix_algebra(A, 2)
    rooks = all_rook_matrices(2, list(range(S.size)))
    rng = random.Random(0)
    for B, C in (rng.sample(rooks, 2) for _ in range(400)):
        assert embed_rook(M, rook_product(A, B, C)) == embed_rook(M, B) * embed_rook(M, C)
        assert embed_rook(M, rook_star(A, B)) == embed_rook(M, B).star()


def test_rook_exhaustive_n2_small_semigroup():
    S = corpus.chain(2)
    A = semigroup_algebra(S)
    M = matrix_algebra(A, 2)
    rooks = all_rook_matrices(2, [0, 1])
    for B in rooks:
        for C in rooks:
            assert embed_rook(M, rook_product(A, B, C)) == embed_rook(M, B) * embed_rook(M, C)


def test_rook_examples():
    S = corpus.chain(2)
    A = semigroup_algebra(S)
    e = S.index("e")
    from finitude.algebra import RookMatrix
    Id = RookMatrix(2, (0, 1), (e, e))
    assert rook_product(A, Id, Id) == Id
    B = RookMatrix(2, (1, None), (e, None))   # column 0 -> row 1
    C = RookMatrix(2, (None, 0), (None, e))   # column 1 -> row 0
    BC = rook_product(A, B, C)
    assert BC.sigma == (None, 1)
    assert rook_star(A, B).sigma == (None, 0)
    with pytest.raises(InputError):
        RookMatrix(2, (0, 0), (e, e))


def test_local_projection():
    G = pair_groupoid(3)
    A = groupoid_algebra(G)
    U, p = local_projection(G, [A.basis("(0,1)")])
    assert U == {0, 1}
    U, p = local_projection(G, [])
    assert U == frozenset() and not p
    U, p = local_projection(G, [A.basis(i) for i in range(A.dim)])
    assert p == A.one()


def test_restriction_hom():
    G = disjoint_union(group_groupoid(corpus.cyclic_group(2)), group_groupoid(corpus.cyclic_group(3)))
    A = groupoid_algebra(G)
    f = A.element({"0:1": 2, "0:g1": 1, "1:g1": 5})
    r = restriction_hom(G, f, [0])
    assert r.coeffs == {0: Gaussian(2), 1: Gaussian(1)}
    P = pair_groupoid(2)
    B = groupoid_algebra(P)
    x = B.element({"(0,1)": 3})
    assert restriction_hom(P, x, [0, 1]).coeffs == x.coeffs


def test_orbit_matrix_iso_dimensions():
    assert orbit_matrix_iso(pair_groupoid(2), [0, 1]).target.dim == 4
    assert orbit_matrix_iso(group_groupoid(corpus.symmetric_group(3)), [0]).target.dim == 6
    # orbit of size 2 with Z/2 isotropy: the universal groupoid of the Brandt semigroup over Z/2
    G = universal_groupoid(_brandt_z2())
    big = max(({G.ran[a] for a in G.arrows_from(x)} for x in range(G.n_objects)), key=len)
    assert orbit_matrix_iso(G, sorted(big)).target.dim == 8
    with pytest.raises(InputError):
        orbit_matrix_iso(disjoint_union(pair_groupoid(1), pair_groupoid(1)), [0, 1])


def _brandt_z2():
    # elements 0 and (i, g, j) for i, j in {0,1}, g in Z/2
    elems = [None] + [(i, g, j) for i in range(2) for g in range(2) for j in range(2)]
    idx = {x: k for k, x in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            if a is None or b is None or a[2] != b[0]:
                row.append(0)
            else:
                row.append(idx[(a[0], (a[1] + b[1]) % 2, b[2])])
        table.append(row)
    star = [0] + [idx[(j, g, i)] for (i, g, j) in elems[1:]]
    return FiniteInverseSemigroup(table, ["0"] + [f"{i}{g}{j}" for i, g, j in elems[1:]], star)


def test_witness_examples():
    A = semigroup_algebra(corpus.chain(2))
    e = A.basis("e")
    v = witness_check(e, e, e)
    assert not v.valid and v.ba_equals_e
    B = semigroup_algebra(corpus.matrix_units(2))
    with pytest.raises(WitnessPreconditionError) as exc:
        witness_check(B.basis("E11"), B.basis("E12"), B.basis("E12"))
    assert "a*b == e" in exc.value.failures


@given(st.integers(0, 10_000))
def test_no_witness_in_commutative_algebra(seed):
    rng = random.Random(seed)
    A = semigroup_algebra(corpus.chain(3))
    e = A.basis(rng.choice(A.semigroup.idempotents))
    a = e * random_element(A, rng) * e
    b = e * random_element(A, rng) * e
    try:
        assert not witness_check(e, a, b).valid
    except WitnessPreconditionError:
        pass


def test_sup_norm():
    A = groupoid_algebra(pair_groupoid(2))
    assert sup_norm_sq(A.zero()) == 0
    assert sup_norm_sq(A.basis(0).scale(3)) == 9
    f = A.basis(0) + A.basis(1).scale(Gaussian(1, 1))
    assert sup_norm_sq(f) == 2


def test_element_json_round_trip():
    A = groupoid_algebra(pair_groupoid(2))
    f = A.element({"(0,1)": Gaussian(1, 2), "(1,1)": -3})
    assert element_from_json(A, f.to_json()["coeffs"]) == f


def test_element_pruning_and_bad_label():
    A = groupoid_algebra(pair_groupoid(2))
    assert (A.basis(0) - A.basis(0)).coeffs == {}
    with pytest.raises(InputError):
        A.basis("(5,5)")
    assert isinstance(A.one(), AlgebraElement) and A.one() * A.basis(1) == A.basis(1)
    assert ONE == A.one().coefficient("(0,0)")
