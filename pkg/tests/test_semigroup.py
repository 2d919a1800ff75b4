import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from finitude import corpus
from finitude.errors import InputError, NotInverseError, NotRegularError, SizeError
from finitude.semigroup import (
    FiniteSemigroup, PartialBijection, closure, d_class_report, green, is_stable, j_class_classify,
    maximal_subgroup, natural_order, opposite, semigroup_from_json, validate_inverse,
)


def all_corpus():
    out = dict(corpus.inverse_corpus())
    out.update({"T3": corpus.full_transformation_monoid(3), "LZ2": corpus.left_zero(2),
                "null": corpus.null_semigroup(), "trivial": corpus.trivial_monoid(),
                "pair": corpus.semilattice_pair()})
    return out


def rank_of(S, e):
    return sum(1 for f in S.idempotents if S.mul(e, f) == f).bit_length() - 1


# --- partial bijections and closure ---------------------------------------


def test_partial_bijection_rejects_non_injective():
    with pytest.raises(InputError):
        PartialBijection(3, (0, 0, None))
    with pytest.raises(InputError):
        PartialBijection(2, (0, 5))


@given(st.permutations(range(4)), st.sets(st.integers(0, 3)))
def test_inverse_composes_to_partial_identity(perm, dom):
    s = PartialBijection(4, tuple(perm[x] if x in dom else None for x in range(4)))
    assert s.inverse() * s == PartialBijection.identity(4, dom)
    assert s * s.inverse() == PartialBijection.identity(4, s.image)


def test_closure_trivial_monoid():
    assert corpus.trivial_monoid().size == 1


def test_closure_i2_size_7_against_oracle():
    gens = [(1, 0), (0, None), (None, 1)]
    S = closure([PartialBijection(2, g) for g in gens])
    assert S.size == 7 == len(oracles.pmap_closure(gens))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_inverse_monoid_sizes(n):
    S = corpus.symmetric_inverse_monoid(n)
    assert S.size == oracles.symmetric_inverse_monoid_size(n) == len(oracles.all_partial_bijections(n))


def test_i3_size_34():
    assert corpus.symmetric_inverse_monoid(3).size == 34


@given(st.lists(st.lists(st.one_of(st.none(), st.integers(0, 3)), min_size=4, max_size=4)
                .filter(lambda m: len([x for x in m if x is not None]) == len({x for x in m if x is not None})),
                min_size=1, max_size=3))
def test_closure_size_matches_oracle(gens):
    S = closure([PartialBijection(4, tuple(g)) for g in gens])
    assert S.size == len(oracles.pmap_closure(gens))


def test_closure_size_bound():
    with pytest.raises(SizeError):
        closure([PartialBijection(3, (1, 2, 0)), PartialBijection(3, (1, 0, 2))], max_size=3)


def test_closure_labels_are_deterministic():
    assert corpus.symmetric_inverse_monoid(3).labels == corpus.symmetric_inverse_monoid(3).labels


# --- validation -------------------------------------------------------------


def test_semilattice_pair_star_identity():
    S = validate_inverse(FiniteSemigroup([[0, 0], [0, 1]], ["0", "e"]))
    assert S.star == (0, 1)


def test_left_zero_not_inverse():
    with pytest.raises(NotInverseError, match="not inverse"):
        validate_inverse(corpus.left_zero(2))


def test_null_semigroup_not_regular():
    with pytest.raises(NotRegularError):
        validate_inverse(corpus.null_semigroup())


def test_b2_star():
    S = corpus.matrix_units(2)
    assert S.labels[S.star[S.index("E12")]] == "E21"
    assert validate_inverse(FiniteSemigroup(S.table, S.labels)).star == S.star


def test_non_associative_table_rejected():
    with pytest.raises(InputError):
        FiniteSemigroup([[1, 0], [0, 0]])


@pytest.mark.parametrize("name", list(corpus.inverse_corpus()))
def test_idempotents_commute(name):
    S = corpus.inverse_corpus()[name]
    for e in S.idempotents:
        for f in S.idempotents:
            assert S.mul(e, f) == S.mul(f, e)


def test_json_round_trip():
    S = corpus.matrix_units(2)
    T = semigroup_from_json(S.to_json())
    assert T.labels == S.labels and (T.table == S.table).all() and T.star == S.star
    U = semigroup_from_json({"kind": "partial_bijections", "degree": 2, "generators": [[1, 0], [0, None]]})
    assert U.size == 7


# --- Green's relations --------------------------------------------------------


@pytest.mark.parametrize("name", list(all_corpus()))
def test_green_matches_ideal_oracle(name):
    S = all_corpus()[name]
    G = green(S)
    ref = oracles.green_partitions(S.rows)
    assert set(map(frozenset, G.r_classes)) == ref["R"]
    assert set(map(frozenset, G.l_classes)) == ref["L"]
    assert set(map(frozenset, G.j_classes)) == ref["J"]
    assert set(map(frozenset, G.h_classes)) == ref["H"]
    assert set(map(frozenset, G.d_classes)) == ref["D"] == ref["J"]


def test_group_has_single_classes():
    G = green(corpus.symmetric_group(3))
    assert len(G.r_classes) == len(G.l_classes) == len(G.j_classes) == len(G.h_classes) == 1


def test_b2_j_classes():
    S = corpus.matrix_units(2)
    G = green(S)
    assert [len(c) for c in G.j_classes] == [1, 4]
    units = G.j_classes[1]
    assert len({G.r_index[s] for s in units}) == 2 and len({G.l_index[s] for s in units}) == 2


def test_i2_j_classes_by_rank():
    S = corpus.symmetric_inverse_monoid(2)
    G = green(S)
    ranks = [{rank_of(S, S.mul(s, S.star[s])) for s in c} for c in G.j_classes]
    assert sorted(min(r) for r in ranks) == [0, 1, 2] and all(len(r) == 1 for r in ranks)


# --- natural order and subgroups -----------------------------------------------


@pytest.mark.parametrize("name", list(corpus.inverse_corpus()))
def test_natural_order_matches_oracle_and_is_partial_order(name):
    S = corpus.inverse_corpus()[name]
    order = natural_order(S)
    assert order.pairs == oracles.natural_order_pairs(S.rows, S.idempotents)
    n = S.size
    for s in range(n):
        assert order.leq(s, s)
        for t in range(n):
            if s != t and order.leq(s, t):
                assert not order.leq(t, s)
            for u in range(n):
                if order.leq(s, t) and order.leq(t, u):
                    assert order.leq(s, u)


def test_group_order_trivial():
    S = corpus.symmetric_group(3)
    assert natural_order(S).pairs == {(s, s) for s in range(S.size)}


def test_b2_order():
    S = corpus.matrix_units(2)
    order = natural_order(S)
    units = [S.index(x) for x in ("E11", "E12", "E21", "E22")]
    assert all(order.leq(0, x) for x in range(S.size))
    assert not any(order.leq(a, b) for a in units for b in units if a != b)


@pytest.mark.parametrize("name", list(corpus.inverse_corpus()))
def test_d_equivalent_idempotents_incomparable(name):
    S = corpus.inverse_corpus()[name]
    G, order = green(S), natural_order(S)
    for e in S.idempotents:
        for f in S.idempotents:
            if e != f and G.d_index[e] == G.d_index[f]:
                assert not order.leq(e, f)


def test_maximal_subgroups():
    assert maximal_subgroup(corpus.symmetric_inverse_monoid(2), corpus.symmetric_inverse_monoid(2).identity).size == 2
    assert maximal_subgroup(corpus.matrix_units(2), "E11").size == 1
    C = corpus.chain(3)
    assert all(maximal_subgroup(C, e).size == 1 for e in C.idempotents)
    with pytest.raises(InputError):
        maximal_subgroup(corpus.matrix_units(2), "E12")


@pytest.mark.parametrize("name", ["B3", "I3"])
def test_conjugate_subgroups_isomorphic(name):
    S = corpus.inverse_corpus()[name]
    G = green(S)
    for s in range(S.size):
        e, f = S.mul(S.star[s], s), S.mul(s, S.star[s])
        He, Hf = G.h_class_of(e), G.h_class_of(f)
        # x -> s x s* maps H_e onto H_f and respects products
        image = {x: S.product(s, x, S.star[s]) for x in He}
        assert sorted(image.values()) == sorted(Hf)
        for x in He:
            for y in He:
                assert image[S.mul(x, y)] == S.mul(image[x], image[y])


# --- reports ------------------------------------------------------------------


def test_d_class_report_b2():
    rep = d_class_report(corpus.matrix_units(2))
    assert [len(c.idempotents) for c in rep.classes] == [1, 2]
    assert rep.subgroup_orders == (1, 1)


def test_d_class_report_i3():
    S = corpus.symmetric_inverse_monoid(3)
    rep = d_class_report(S)
    by_rank = sorted((rank_of(S, c.idempotents[0]), len(c.idempotents), c.subgroup_order) for c in rep.classes)
    assert by_rank == [(0, 1, 1), (1, 3, 1), (2, 3, 2), (3, 1, 6)]
    assert rep.to_json(S)["char0_conclusion"] == "stably finite"


def test_d_class_report_group():
    rep = d_class_report(corpus.symmetric_group(3))
    assert len(rep.classes) == 1 and len(rep.classes[0].idempotents) == 1 and rep.subgroup_orders == (6,)


@pytest.mark.parametrize("name", list(all_corpus()))
def test_every_finite_semigroup_is_stable(name):
    r = is_stable(all_corpus()[name])
    assert r.stable and r.counterexample is None


def test_b2_stability_checks_all_pairs():
    assert is_stable(corpus.matrix_units(2)).pairs_checked == 25


def test_j_class_tags():
    assert [c.tag for c in j_class_classify(corpus.symmetric_group(3))] == ["regular"]
    assert [c.tag for c in j_class_classify(corpus.matrix_units(2))] == ["regular", "regular"]
    tags = {c.elements: c.tag for c in j_class_classify(corpus.null_semigroup())}
    assert tags[(1,)] == "null" and tags[(0,)] == "regular"


def test_opposite_swaps_r_and_l():
    S = corpus.full_transformation_monoid(3)
    G, Gop = green(S), green(opposite(S))
    assert set(G.r_classes) == set(Gop.l_classes) and set(G.l_classes) == set(Gop.r_classes)
