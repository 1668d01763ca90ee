import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kuniform.bounds import scott_gap_condition
from kuniform.errors import BudgetExceededError, NotApplicableError
from kuniform.hetero import (
    DimensionProfile,
    ame_verdict,
    hetero_shadow,
    scott_check,
    scott_pair_threshold,
    scott_search,
)
from kuniform.oracle import ame_shadow_oracle


def pair_profile(d1, d2, n):
    return DimensionProfile((d1,) + (d2,) * (2 * n))


def test_profile_parsing():
    prof = DimensionProfile.parse("3x1,2x10")
    assert prof.dims == (3,) + (2,) * 10
    assert prof.to_spec_string() == "3x1,2x10"
    assert DimensionProfile.parse("2x4").dims == (2, 2, 2, 2)
    with pytest.raises(ValueError):
        DimensionProfile.parse("3,2")
    with pytest.raises(ValueError):
        DimensionProfile.parse("3x0")
    with pytest.raises(ValueError):
        DimensionProfile((2,))
    with pytest.raises(ValueError):
        DimensionProfile((2, 1))


def test_schmidt_feasibility():
    assert DimensionProfile((3, 2, 2)).schmidt_feasible()
    assert not DimensionProfile((5,) + (2,) * 8).schmidt_feasible()
    assert DimensionProfile((4, 2, 2)).schmidt_feasible()
    # unequal dimensions force an odd party count
    assert not DimensionProfile((3, 2, 2, 2)).schmidt_feasible()


def test_scott_check_worked_values():
    assert scott_check(DimensionProfile((2,) * 8), range(6)) == -3
    assert scott_check(DimensionProfile((2,) * 4), range(4)) == 3
    with pytest.raises(ValueError):
        scott_check(DimensionProfile((2,) * 8), range(5))
    with pytest.raises(ValueError):
        scott_check(DimensionProfile((2,) * 8), [0, 0, 1, 2, 3, 4])


@st.composite
def profile_and_subset(draw):
    n = draw(st.integers(4, 9))
    dims = tuple(draw(st.sampled_from([2, 2, 3, 3, 4, 5])) for _ in range(n))
    size = n // 2 + 2
    subset = draw(st.permutations(range(n)))[:size]
    return DimensionProfile(dims), tuple(subset)


@given(profile_and_subset(), st.randoms(use_true_random=False))
def test_scott_check_permutation_invariance(case, rng):
    profile, subset = case
    value = scott_check(profile, subset)
    # relabel parties within equal-dimension groups; the value must not move
    mapping = {}
    by_dim = {}
    for i, d in enumerate(profile.dims):
        by_dim.setdefault(d, []).append(i)
    for idxs in by_dim.values():
        shuffled = idxs[:]
        rng.shuffle(shuffled)
        mapping.update(zip(idxs, shuffled))
    relabeled = tuple(mapping[i] for i in subset)
    assert scott_check(profile, relabeled) == value


def test_scott_search_examples():
    assert scott_search(DimensionProfile((2, 2))) is None
    witness = scott_search(DimensionProfile.parse("3x1,2x10"))
    assert witness is not None and witness.value < 0
    assert scott_check(DimensionProfile.parse("3x1,2x10"), witness.subset) == witness.value
    homog43 = scott_search(DimensionProfile((3,) * 43))
    assert homog43 is not None and homog43.value < 0


def test_scott_search_budget_error():
    dims = tuple(range(2, 22))  # 20 distinct dimensions, many multisets
    with pytest.raises(BudgetExceededError):
        scott_search(DimensionProfile(dims), budget=10)


def test_scott_search_matches_classical_condition_on_homogeneous():
    for d in range(2, 7):
        for n in range(3, 31):
            witness = scott_search(DimensionProfile((d,) * n))
            assert (witness is not None) == scott_gap_condition(n, d), (d, n)


def test_pair_thresholds_table_values():
    expected = {
        (3, 2): 5, (4, 2): 5,
        (2, 3): 10, (4, 3): 11, (5, 3): 10, (8, 3): 10, (9, 3): 10,
        (2, 4): 17, (3, 4): 18, (5, 4): 19, (6, 4): 18, (8, 4): 18,
        (9, 4): 17, (16, 4): 17,
    }
    for (d1, d2), n_min in expected.items():
        assert scott_pair_threshold(d1, d2) == n_min, (d1, d2)


def test_pair_threshold_infeasible_error():
    with pytest.raises(NotApplicableError):
        scott_pair_threshold(5, 2)


def test_pair_threshold_is_sharp():
    # at the threshold the structured subset certifies; just below it must not
    for d1, d2 in ((3, 2), (2, 3), (4, 3), (2, 4), (9, 4)):
        t = scott_pair_threshold(d1, d2)
        assert scott_search(pair_profile(d1, d2, t)) is not None
        assert scott_search(pair_profile(d1, d2, t - 1)) is None


def test_hetero_shadow_worked_values():
    assert hetero_shadow(pair_profile(3, 2, 4)).s[1] == Fraction(-23, 12)
    assert hetero_shadow(pair_profile(4, 2, 4)).s[1] == Fraction(-7, 4)
    assert hetero_shadow(pair_profile(3, 2, 5)).s[3] == Fraction(-65, 4)
    assert hetero_shadow(pair_profile(4, 2, 5)).s[3] == Fraction(-225, 16)


def test_hetero_shadow_requires_odd_party_count():
    with pytest.raises(NotApplicableError):
        hetero_shadow(DimensionProfile((2, 2, 2, 2)))


def test_hetero_shadow_aprime_symmetry():
    prof = DimensionProfile((4, 3, 2, 2, 3))
    shadow = hetero_shadow(prof)
    n = prof.n_parties
    assert shadow.a_prime[0] == 1
    for k in range(n + 1):
        assert shadow.a_prime[k] == shadow.a_prime[n - k]


@given(st.lists(st.sampled_from([2, 3, 4]), min_size=3, max_size=9))
def test_hetero_shadow_matches_subset_sum_oracle(dims):
    if len(dims) % 2 == 0:
        dims = dims[:-1]
    prof = DimensionProfile(tuple(dims))
    if not prof.schmidt_feasible():
        return
    assert hetero_shadow(prof).s == ame_shadow_oracle(prof)


def test_ame_verdict_examples():
    v = ame_verdict(DimensionProfile.parse("3x1,2x8"))
    assert v.status == "nonexistent"
    assert v.certificate.kind == "shadow-negative(1)"
    assert v.certificate.shadow_value == Fraction(-23, 12)

    v = ame_verdict(DimensionProfile.parse("2x1,4x34"))
    assert v.status == "nonexistent"
    assert v.certificate.kind == "corollary7"
    assert v.certificate.witness is not None and v.certificate.witness.value < 0
    # the shadow route proves nothing on this profile
    assert hetero_shadow(DimensionProfile.parse("2x1,4x34")).first_negative() is None

    assert ame_verdict(DimensionProfile.parse("2x4")).status == "unknown"
    assert ame_verdict(DimensionProfile.parse("5x1,2x8")).status == "infeasible"


def test_ame_verdict_never_claims_existence():
    random_profiles = [
        (2, 2, 2), (3, 3, 3), (2, 3, 3), (4, 4, 2, 2, 4), (3, 2, 2, 2, 2),
    ]
    for dims in random_profiles:
        assert ame_verdict(DimensionProfile(dims)).status in (
            "infeasible",
            "nonexistent",
            "unknown",
        )


def test_ame_verdict_certificate_serialization():
    doc = ame_verdict(DimensionProfile.parse("3x1,2x8")).to_json_dict()
    assert doc["status"] == "nonexistent"
    assert doc["certificate"]["kind"] == "shadow-negative(1)"
    assert doc["certificate"]["s_j"] == "-23/12"
    doc = ame_verdict(DimensionProfile.parse("2x1,4x34")).to_json_dict()
    assert doc["certificate"]["kind"] == "corollary7"
    assert doc["certificate"]["witness"]["value"].startswith("-")
