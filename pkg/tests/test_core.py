import json
import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from btu import (
    Btu,
    DomainError,
    Partition,
    ResourceError,
    cage,
    canonical_form,
    canonical_key,
    complement,
    count_nonisomorphic,
    count_p2,
    enumerate_cycles,
    enumerate_nonisomorphic,
    gf2_rank,
    girth,
    is_isomorphic,
    known_cycle_lengths,
    psi,
    random_btu,
)
from btu import reference_values as ref
from oracles import class_count, cycle_lengths_by_edge_subsets, labeled_btus, matrix_min_key


def shuffled(g, rng):
    rows = list(range(g.m))
    cols = list(range(g.m))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return g.permuted(rows, cols)


btu_params = st.integers(min_value=1, max_value=7).flatmap(
    lambda m: st.tuples(st.just(m), st.integers(min_value=1, max_value=m), st.integers(0, 2**32))
)


def make_btu(params):
    m, r, seed = params
    return random_btu(m, r, random.Random(seed))


# --- construction --------------------------------------------------------


def test_btu_rejects_wrong_weights():
    with pytest.raises(DomainError):
        Btu.from_matrix([[1, 1], [0, 1]])
    with pytest.raises(DomainError):
        Btu.from_matrix([[1, 0], [1, 0]])
    with pytest.raises(DomainError):
        Btu.from_matrix([[1, 0, 0], [0, 1, 0]])


def test_text_and_json_round_trip():
    g = psi(Partition([4, 2]))
    assert Btu.parse(g.to_text()) == g
    assert Btu.parse(json.dumps(g.to_json())) == g
    assert Btu.from_json(g.to_json()) == g


def test_from_edges():
    g = Btu.from_edges(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert g.matrix() == [[1, 1], [1, 1]]


# --- psi -----------------------------------------------------------------


def test_psi_222_is_block_diagonal():
    assert psi(Partition([2, 2, 2])).matrix() == ref.PRINTED_PSI[(2, 2, 2)]


def test_psi_2_is_k22():
    assert psi(Partition([2])).matrix() == [[1, 1], [1, 1]]


@pytest.mark.parametrize("parts", list(ref.PRINTED_PSI))
def test_psi_isomorphic_to_printed(parts):
    assert is_isomorphic(psi(Partition(parts)), Btu.from_matrix(ref.PRINTED_PSI[parts]))


def test_psi_rejects_unsorted_or_small_parts():
    with pytest.raises(DomainError):
        psi([2, 4])
    with pytest.raises(DomainError):
        psi([3, 1])


@pytest.mark.parametrize("m", range(2, 9))
def test_psi_r_is_2(m):
    for beta in [Partition([m])]:
        assert psi(beta).r == 2


# --- girth and cycles ----------------------------------------------------


def test_girth_examples():
    assert girth(psi(Partition([4, 2]))) == 4
    assert girth(psi(Partition([5]))) == 10
    assert girth(Btu.identity(5)) == math.inf


def test_known_cycle_lengths():
    assert known_cycle_lengths(Partition([4, 2])) == [8, 4]
    assert known_cycle_lengths(Partition([3, 3])) == [6, 6]
    assert known_cycle_lengths(Partition([7])) == [14]


@pytest.mark.parametrize("m", range(2, 7))
def test_cycles_match_edge_subset_oracle_on_psi(m):
    from btu import enumerate_p2

    for beta in enumerate_p2(m):
        g = psi(beta)
        lengths = sorted(len(c) for c in enumerate_cycles(g, 2 * m))
        assert lengths == cycle_lengths_by_edge_subsets(g.matrix())
        assert lengths == sorted(known_cycle_lengths(beta))


@pytest.mark.parametrize("seed", range(8))
def test_cycles_match_edge_subset_oracle_on_random(seed):
    rng = random.Random(seed)
    m = rng.choice([3, 4])
    g = random_btu(m, 3, rng)
    cycles = enumerate_cycles(g, 2 * m)
    assert sorted(len(c) for c in cycles) == cycle_lengths_by_edge_subsets(g.matrix())
    oracle_girth = min(cycle_lengths_by_edge_subsets(g.matrix()))
    assert girth(g) == oracle_girth


def test_k33_cycles():
    k33 = Btu.from_matrix([[1, 1, 1]] * 3)
    lengths = [len(c) for c in enumerate_cycles(k33, 6)]
    assert lengths.count(4) == 9 and lengths.count(6) == 6


def test_enumerate_cycles_examples():
    assert [len(c) for c in enumerate_cycles(psi(Partition([2, 2, 2])), 8)] == [4, 4, 4]
    assert enumerate_cycles(Btu.identity(4), 8) == []
    assert enumerate_cycles(psi(Partition([6])), 4) == []


@given(btu_params)
@settings(max_examples=60, deadline=None)
def test_cycle_lengths_are_even_and_bounded(params):
    g = make_btu(params)
    cycles = enumerate_cycles(g, 8)
    assert all(len(c) % 2 == 0 and 4 <= len(c) <= 8 for c in cycles)
    if cycles:
        assert girth(g) == len(cycles[0])
    elif girth(g) != math.inf:
        assert girth(g) > 8


@pytest.mark.parametrize("g", [4, 6, 8, 12, 16])
def test_cage(g):
    built = cage(g)
    assert girth(built) == g
    assert built.m == g // 2 and built.r == 2


@pytest.mark.parametrize("g", [3, 2, 7])
def test_cage_rejects_bad_girth(g):
    with pytest.raises(DomainError):
        cage(g)


# --- rank ------------------------------------------------------------------


def test_rank_examples():
    assert gf2_rank(psi(Partition([2, 2, 2]))) == 3
    assert gf2_rank(Btu.identity(6)) == 6


@pytest.mark.parametrize("seed", range(20))
def test_rank_of_even_r_is_deficient(seed):
    rng = random.Random(seed)
    g = random_btu(6, 4, rng)
    assert gf2_rank(g) <= 5


@given(btu_params)
@settings(max_examples=80, deadline=None)
def test_rank_is_relabel_invariant(params):
    g = make_btu(params)
    rng = random.Random(params[2])
    assert gf2_rank(shuffled(g, rng)) == gf2_rank(g) <= g.m


# --- complement --------------------------------------------------------------


def test_complement_examples():
    c = complement(psi(Partition([4])))
    assert is_isomorphic(c, psi(Partition([4])))
    with pytest.raises(DomainError):
        complement(Btu.from_matrix([[1, 1, 1]] * 3))
    c = complement(Btu.identity(4))
    assert c.r == 3 and all(c.bit(i, i) == 0 for i in range(4))


@given(btu_params)
@settings(max_examples=60, deadline=None)
def test_complement_is_involution(params):
    g = make_btu(params)
    if g.r == g.m:
        return
    assert complement(complement(g)) == g
    assert complement(g).r == g.m - g.r


def test_complement_respects_isomorphism_classes():
    from btu import enumerate_p2

    rng = random.Random(7)
    for beta in enumerate_p2(6):
        g = psi(beta)
        h = shuffled(g, rng)
        assert canonical_key(complement(g)) == canonical_key(complement(h))


# --- canonical key -------------------------------------------------------------


@given(btu_params.filter(lambda p: p[0] <= 6))
@settings(max_examples=80, deadline=None)
def test_canonical_form_matches_bruteforce(params):
    g = make_btu(params)
    oracle = [list(row) for row in matrix_min_key(g.matrix())]
    assert canonical_form(g).matrix() == oracle


@pytest.mark.parametrize("m", range(2, 7))
def test_canonical_form_matches_bruteforce_on_psi(m):
    from btu import enumerate_p2

    for beta in enumerate_p2(m):
        g = psi(beta)
        assert canonical_form(g).matrix() == [list(r) for r in matrix_min_key(g.matrix())]


@pytest.mark.parametrize("m", range(2, 7))
def test_canonical_form_matches_bruteforce_on_symmetric_matrices(m):
    from btu import enumerate_p2

    graphs = [Btu.identity(m), complement(Btu.identity(m))]
    graphs += [complement(psi(b)) for b in enumerate_p2(m) if m > 2]
    for g in graphs:
        assert canonical_form(g).matrix() == [list(r) for r in matrix_min_key(g.matrix())]


def test_canonical_key_relabel_invariance_1000():
    rng = random.Random(2024)
    for _ in range(1000):
        m = rng.randint(2, 7)
        r = rng.randint(1, m)
        g = random_btu(m, r, rng)
        assert canonical_key(shuffled(g, rng)) == canonical_key(g)


def test_psi_6_keys_distinct():
    from btu import enumerate_p2

    keys = [canonical_key(psi(b)) for b in enumerate_p2(6)]
    assert len(set(keys)) == 4


def test_canonical_key_hex():
    key = canonical_key(psi(Partition([2])))
    assert key.hex() == "f"
    assert str(key) == key.hex()


def test_canonical_key_limit():
    with pytest.raises(ResourceError):
        canonical_key(Btu.identity(9))
    canonical_key(Btu.identity(9), max_m=9)


# --- isomorphism ---------------------------------------------------------------


def test_published_pairs():
    a, b = (Btu.from_matrix(x) for x in ref.ISOMORPHIC_PAIR)
    assert is_isomorphic(a, b)
    a, b = (Btu.from_matrix(x) for x in ref.NONISOMORPHIC_PAIR)
    assert not is_isomorphic(a, b)


def test_isomorphism_mismatch_is_false():
    assert not is_isomorphic(Btu.identity(3), Btu.identity(4))
    assert not is_isomorphic(Btu.identity(3), complement(Btu.identity(3)))
    g = psi(Partition([3, 3]))
    assert is_isomorphic(g, g)


def test_isomorphism_is_an_equivalence():
    rng = random.Random(11)
    pool = [random_btu(5, 2, rng) for _ in range(12)]
    for a in pool:
        assert is_isomorphic(a, a)
    for a, b in combinations(pool, 2):
        assert is_isomorphic(a, b) == is_isomorphic(b, a)
    for a, b, c in combinations(pool, 3):
        if is_isomorphic(a, b) and is_isomorphic(b, c):
            assert is_isomorphic(a, c)


# --- enumeration ------------------------------------------------------------------


@pytest.mark.parametrize("key, expected", sorted(ref.E_TABLE.items()))
def test_e_table(key, expected):
    assert count_nonisomorphic(*key) == expected


@pytest.mark.parametrize("m", range(2, 8))
def test_r1_single_class(m):
    classes = enumerate_nonisomorphic(m, 1)
    assert len(classes) == 1
    assert is_isomorphic(classes[0], Btu.identity(m))


@pytest.mark.parametrize("m", range(2, 8))
def test_r2_counts_partitions(m):
    assert count_nonisomorphic(m, 2) == count_p2(m)


@pytest.mark.parametrize("m", range(2, 7))
def test_symmetry_e_m_r(m):
    for r in range(1, m):
        assert count_nonisomorphic(m, r) == count_nonisomorphic(m, m - r)


@pytest.mark.parametrize("m, r", [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_class_counts_match_unreduced_oracle(m, r):
    assert count_nonisomorphic(m, r) == class_count(m, r)


@pytest.mark.parametrize("m, expected", [(3, 6), (4, 90), (5, 2040)])
def test_labeled_oracle_sizes(m, expected):
    # number of labeled (m,2) BTUs
    assert len(labeled_btus(m, 2)) == expected


@pytest.mark.parametrize("m", range(3, 8))
def test_closed_forms_match_bruteforce_reduction(m):
    from btu.core import _sorted_labeled

    for r, closed in ((1, 1), (2, count_p2(m)), (m, 1)):
        keys = {canonical_key(Btu(rows, m)) for rows in _sorted_labeled(m, r)}
        assert len(keys) == closed


def test_r_equals_m_single_class():
    assert count_nonisomorphic(5, 5) == 1


def test_enumerated_classes_are_distinct_and_valid():
    classes = enumerate_nonisomorphic(6, 3)
    assert len(classes) == 7
    assert len({canonical_key(g) for g in classes}) == 7
    assert all(g.m == 6 and g.r == 3 for g in classes)


def test_enumeration_limits():
    with pytest.raises(ResourceError):
        count_nonisomorphic(8, 3)
    with pytest.raises(DomainError):
        count_nonisomorphic(4, 5)
