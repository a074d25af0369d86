import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from btu import (
    DomainError,
    NotFoundError,
    Partition,
    Permutation,
    PermutationRep,
    PhiSpec,
    ResourceError,
    beta_of,
    build_phi_member,
    canonical_key,
    count_nonisomorphic_in_phi,
    decompose,
    enumerate_p2,
    enumerate_phi,
    girth,
    has_4cycle,
    is_compatible,
    is_isomorphic,
    partition_profile,
    psi,
    random_btu,
    to_btu,
)
from btu.phi import is_phi_member

P = Permutation


def specs(m, r):
    return [PhiSpec(m, betas) for betas in product(enumerate_p2(m), repeat=r - 1)]


def assert_member(rep, spec):
    assert rep[0] == P.identity(spec.m)
    for i in range(rep.r):
        for j in range(i + 1, rep.r):
            assert is_compatible(rep[i], rep[j])
    for i, b in enumerate(spec.betas):
        assert beta_of(rep[i], rep[i + 1]) == b
    assert is_phi_member(rep, spec)


# --- spec ------------------------------------------------------------------------


def test_spec_parse_and_json():
    spec = PhiSpec.parse("m=6; betas=(3,3)|(2,2,2)")
    assert spec.r == 3
    assert spec.betas == (Partition([3, 3]), Partition([2, 2, 2]))
    assert PhiSpec.from_json(spec.to_json()) == spec
    assert PhiSpec.parse(str(spec)) == spec


def test_spec_validation():
    with pytest.raises(DomainError):
        PhiSpec(5, [[4]])
    with pytest.raises(DomainError):
        PhiSpec(2, [[2], [2]])
    with pytest.raises(DomainError):
        PhiSpec.parse("m6 betas")


# --- build ------------------------------------------------------------------------


def test_build_k33():
    rep = build_phi_member(PhiSpec(3, [[3], [3]]))
    assert to_btu(rep).matrix() == [[1, 1, 1]] * 3


def test_build_single_partition():
    rep = build_phi_member(PhiSpec(4, [[4]]))
    assert is_isomorphic(to_btu(rep), psi(Partition([4])))


def test_build_m2():
    assert build_phi_member(PhiSpec(2, [[2]])) == PermutationRep([P([1, 2]), P([2, 1])])


def test_build_is_seed_deterministic():
    spec = PhiSpec(6, [[3, 3], [2, 2, 2]])
    assert build_phi_member(spec, seed=5) == build_phi_member(spec, seed=5)
    reps = {build_phi_member(spec, seed=s) for s in range(10)}
    for rep in reps:
        assert_member(rep, spec)


def test_empty_family_is_not_found():
    spec = PhiSpec(4, [[4], [2, 2], [2, 2]])
    assert len(enumerate_phi(spec)) == 0
    with pytest.raises(NotFoundError):
        build_phi_member(spec)


@pytest.mark.parametrize("spec", specs(5, 3) + specs(6, 3)[:6], ids=str)
def test_built_members_satisfy_invariants(spec):
    try:
        rep = build_phi_member(spec, seed=1)
    except NotFoundError:
        assert len(enumerate_phi(spec)) == 0
        return
    assert_member(rep, spec)


# --- enumerate ------------------------------------------------------------------------


def test_enumerate_examples():
    members = enumerate_phi(PhiSpec(3, [[3], [3]]))
    assert len(members) == 2
    assert all(to_btu(rep).matrix() == [[1, 1, 1]] * 3 for rep in members)
    members = enumerate_phi(PhiSpec(4, [[2, 2]]))
    assert len(members) == 3
    assert all(is_isomorphic(to_btu(rep), psi(Partition([2, 2]))) for rep in members)
    assert len(enumerate_phi(PhiSpec(2, [[2]]))) == 1


def test_enumerate_truncation():
    spec = PhiSpec(5, [[5]])
    full = enumerate_phi(spec)
    assert len(full) == 24 and not full.truncated
    cut = enumerate_phi(spec, limit=5)
    assert len(cut) == 5 and cut.truncated
    assert cut.members == full.members[:5]


def test_enumerate_limit():
    with pytest.raises(ResourceError):
        enumerate_phi(PhiSpec(8, [[8]]))


@pytest.mark.parametrize("m, r", [(4, 3), (5, 3), (5, 4), (6, 3)])
def test_every_enumerated_member_is_valid(m, r):
    for spec in specs(m, r)[:8]:
        members = enumerate_phi(spec)
        assert len(set(members)) == len(members)
        for rep in members:
            assert_member(rep, spec)


def test_families_partition_all_labeled_reps():
    # every rep starting at I_m lies in exactly the family named by its adjacent partitions
    m = 5
    total = sum(len(enumerate_phi(spec)) for spec in specs(m, 3))
    from btu import iter_compatible

    brute = 0
    for p2 in iter_compatible([P.identity(m)], m):
        brute += sum(1 for _ in iter_compatible([P.identity(m), p2], m))
    assert total == brute


# --- classes ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec, expected",
    [
        (PhiSpec(3, [[3], [3]]), 1),
        (PhiSpec(4, [[4]]), 1),
        (PhiSpec(6, [[3, 3]]), 1),
    ],
    ids=str,
)
def test_count_nonisomorphic_in_phi(spec, expected):
    assert count_nonisomorphic_in_phi(spec) == expected


@pytest.mark.parametrize("m", range(2, 7))
def test_r2_families_are_single_classes(m):
    for beta in enumerate_p2(m):
        assert count_nonisomorphic_in_phi(PhiSpec(m, [beta])) == 1


def test_phi_classes_cover_e_table():
    # the union over all (5,3) families gives every (5,3) class
    keys = set()
    for spec in specs(5, 3):
        keys |= {canonical_key(to_btu(rep)) for rep in enumerate_phi(spec)}
    from btu import count_nonisomorphic

    assert len(keys) == count_nonisomorphic(5, 3)


# --- profile ----------------------------------------------------------------------------


def test_profile_examples():
    rep = build_phi_member(PhiSpec(3, [[3], [3]]))
    assert partition_profile(rep) == {(1, 2): Partition([3]), (2, 3): Partition([3]), (1, 3): Partition([3])}
    assert partition_profile(PermutationRep([P.identity(4)])) == {}
    assert list(partition_profile(decompose(psi(Partition([4, 2])))).values()) == [Partition([4, 2])]


@given(st.integers(2, 7).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m), st.integers(0, 2**32))))
@settings(max_examples=80, deadline=None)
def test_profile_invariant_under_exchanges(params):
    m, r, seed = params
    rng = random.Random(seed)
    rep = decompose(random_btu(m, r, rng))
    profile = partition_profile(rep)
    assert len(profile) == r * (r - 1) // 2
    order = list(range(m))
    rng.shuffle(order)
    sigma = list(range(1, m + 1))
    rng.shuffle(sigma)
    moved = PermutationRep([P([sigma[p.images[i] - 1] for i in order]) for p in rep])
    assert partition_profile(moved) == profile


# --- 4-cycle criterion --------------------------------------------------------------------


def test_has_4cycle_examples():
    assert has_4cycle(build_phi_member(PhiSpec(3, [[3], [3]])))
    assert not has_4cycle(decompose(psi(Partition([6]))))
    assert has_4cycle(decompose(psi(Partition([2, 2]))))


@pytest.mark.parametrize("m, r", [(4, 3), (5, 3), (5, 4), (6, 3)])
def test_has_4cycle_matches_girth_exhaustive(m, r):
    for spec in specs(m, r):
        for rep in enumerate_phi(spec, limit=400):
            assert has_4cycle(rep) == (girth(to_btu(rep)) == 4)


def test_has_4cycle_matches_girth_random_1000():
    rng = random.Random(99)
    for _ in range(1000):
        m = rng.randint(2, 8)
        r = rng.randint(1, m)
        rep = decompose(random_btu(m, r, rng))
        assert has_4cycle(rep) == (girth(to_btu(rep)) == 4)
