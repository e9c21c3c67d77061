import random
from fractions import Fraction as Q

import pytest

from spflag.charring import RationalPoint
from spflag.fixedpoints import (
    DenominatorZeroError,
    ab_pair,
    abl_evaluate,
    abl_numerator_weight,
    abl_verify,
    denominator_deltas,
    enumerate_fixed_points,
    is_admissible,
    prefix_split,
    realization,
    sample_point,
    sl2_closed_form_check,
    wtq_component,
)
from spflag.geometry import in_resolution
from spflag.rootsys import TypeC, index_pairs


def test_count_n1():
    colls = enumerate_fixed_points(1)
    assert len(colls) == 2
    assert {coll[(1, 1)] for coll in colls} == {frozenset({1}), frozenset({2})}


@pytest.mark.parametrize("n,count", [(1, 2), (2, 16), (3, 512)])
def test_counts(n, count):
    assert len(enumerate_fixed_points(n)) == count


def test_all_admissible():
    for n in (1, 2, 3):
        for coll in enumerate_fixed_points(n):
            assert is_admissible(coll, n)


def test_admissible_matches_exhaustive_coordinate_points_n2():
    """Admissible collections = coordinate-span points of the resolution."""
    from itertools import combinations, product

    n = 2
    order = index_pairs(TypeC(n))
    pools = []
    for i, j in order:
        ambient = sorted(set(range(1, i + 1)) | set(range(j + 1, 2 * n + 1)))
        pools.append([frozenset(c) for c in combinations(ambient, i)])
    admissible = {
        tuple(sorted((ij, tuple(sorted(s))) for ij, s in coll.items()))
        for coll in enumerate_fixed_points(n)
    }
    count = 0
    for assignment in product(*pools):
        coll = dict(zip(order, assignment))
        point = realization(coll, n)
        member = in_resolution(point, (1, 2), n)
        key = tuple(sorted((ij, tuple(sorted(s))) for ij, s in coll.items()))
        assert member == (key in admissible)
        count += member
    assert count == 16


def test_prefix_split_partitions_enumeration():
    n = 2
    full = enumerate_fixed_points(n)
    pieces = []
    for prefix in prefix_split(n, 2):
        pieces.extend(enumerate_fixed_points(n, prefix))
    assert pieces == full


def test_prefix_must_be_initial_segment():
    with pytest.raises(ValueError):
        enumerate_fixed_points(2, {(1, 1): frozenset({1})})


def test_ab_pair_n1():
    assert ab_pair({(1, 1): frozenset({1})}, 1, 1, 1) == (1, 2)
    assert ab_pair({(1, 1): frozenset({2})}, 1, 1, 1) == (2, 1)


def test_ab_pair_generic_example():
    n = 2
    coll = {
        (1, 3): frozenset({4}),
        (1, 2): frozenset({3}),
    }
    # candidate pool S_{1,3} + {3} = {3,4}; a is the element of S_{1,2}
    assert ab_pair(coll, 1, 2, n) == (3, 4)


def test_ab_pair_properties():
    for n in (1, 2, 3):
        for coll in enumerate_fixed_points(n):
            for i, j in index_pairs(TypeC(n)):
                a, b = ab_pair(coll, i, j, n)
                assert a in coll[(i, j)]
                assert b not in coll[(i, j)]


def test_ab_pair_corrupted_collection_raises():
    # n=3 with S_{2,3} containing the partner pair {2,5}: no valid pool at (3,3)
    n = 3
    coll = {(2, 3): frozenset({2, 5}), (3, 3): frozenset({1, 2, 5})}
    with pytest.raises(ValueError):
        ab_pair(coll, 3, 3, n)


def test_sibling_collections_exist():
    for n in (1, 2, 3):
        order = index_pairs(TypeC(n))
        colls = enumerate_fixed_points(n)

        def key(coll, depth):
            return tuple(tuple(sorted(coll[ij])) for ij in order[:depth])

        prefixes = {depth: {key(c, depth) for c in colls} for depth in range(len(order) + 1)}
        for coll in colls:
            for pos, (i, j) in enumerate(order):
                a, b = ab_pair(coll, i, j, n)
                sibling_set = coll[(i, j)] - {a} | {b}
                sibling_key = key(coll, pos) + (tuple(sorted(sibling_set)),)
                assert sibling_key in prefixes[pos + 1]


def test_wtq_component():
    assert wtq_component(frozenset({1, 2}), 2, 2) == ((1, 1), 0)
    assert wtq_component(frozenset({2}), 1, 1) == ((-1,), 1)
    assert wtq_component(frozenset({3}), 1, 2) == ((0, -1), 1)
    with pytest.raises(ValueError):
        wtq_component(frozenset({1, 2}), 1, 2)


def test_numerator_weight():
    n = 2
    highest = {
        (1, 3): frozenset({1}),
        (1, 2): frozenset({1}),
        (2, 2): frozenset({1, 2}),
        (1, 1): frozenset({1}),
    }
    lam = (2, 1)
    w, qd = abl_numerator_weight(highest, lam, n)
    assert (w, qd) == ((3, 1), 0)
    assert abl_numerator_weight(highest, (0, 0), n) == ((0, 0), 0)


def test_numerator_n1():
    assert abl_numerator_weight({(1, 1): frozenset({2})}, (1,), 1) == ((-1,), 1)


def test_unique_qdeg_zero_collection_for_regular_weight():
    for n in (1, 2, 3):
        lam = (1,) * n
        zero_q = [
            coll
            for coll in enumerate_fixed_points(n)
            if abl_numerator_weight(coll, lam, n)[1] == 0
        ]
        assert len(zero_q) == 1
        highest = zero_q[0]
        assert all(s == frozenset(range(1, i + 1)) for (i, _), s in highest.items())


def test_denominator_deltas_shape():
    n = 2
    for coll in enumerate_fixed_points(n):
        deltas = denominator_deltas(coll, n)
        assert len(deltas) == n * n


def test_abl_evaluate_n1_spot():
    pt = RationalPoint((Q(2),), Q(3))
    assert abl_evaluate((1,), pt, 1) == Q(7, 2)


def test_abl_evaluate_zero_weight_is_one():
    for n in (1, 2, 3):
        rng = random.Random(n)
        trials = 50 if n < 3 else 50
        done = 0
        while done < trials:
            pt = sample_point(n, rng)
            try:
                val = abl_evaluate((0,) * n, pt, n)
            except DenominatorZeroError:
                continue
            assert val == 1
            done += 1


def test_abl_denominator_zero_raises():
    pt = RationalPoint((Q(1),), Q(1))
    with pytest.raises(DenominatorZeroError):
        abl_evaluate((1,), pt, 1)


def test_sl2_closed_form():
    for m in range(6):
        assert sl2_closed_form_check(m)


def test_abl_verify_matches_direct():
    report = abl_verify((3,), 1, 20, seed=5)
    assert report["matched"] and report["convention"] == "direct"
    assert len(report["points"]) == 20
    report = abl_verify((0, 1), 2, 10, seed=6)
    assert report["matched"] and report["convention"] == "direct"


def test_abl_verify_zero_weight():
    report = abl_verify((0, 0), 2, 5, seed=7)
    assert report["matched"]
    assert all(r["abl"] == "1" for r in report["points"])


def test_realizations_pass_in_resolution():
    for n in (1, 2):
        d = tuple(range(1, n + 1))
        for coll in enumerate_fixed_points(n):
            assert in_resolution(realization(coll, n), d, n)
