from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kuniform.enumerators import shadow_transform, validate_state_constraints
from kuniform.errors import CapacityError, NotApplicableError
from kuniform.exact import GaussianRational
from kuniform.hetero import DimensionProfile
from kuniform.oracle import (
    PureState,
    ame43_state,
    ame_shadow_oracle,
    bell_state,
    bundled_corpus,
    direct_enumerator,
    direct_shadow,
    ghz_state,
    is_k_uniform,
    product_zero_state,
    purity,
    purity_table,
    shadow_from_purities,
    w_state,
)
from kuniform.oracle import _shadow_from_purities_naive


def test_purity_worked_values():
    assert purity(bell_state(), [0]) == Fraction(1, 2)
    assert purity(product_zero_state(2), [0]) == 1
    assert purity(ghz_state(3, 2), [0, 1]) == Fraction(1, 2)
    assert purity(bell_state(), []) == 1
    assert purity(bell_state(), [0, 1]) == 1


def test_purity_handles_unnormalized_and_complex_amplitudes():
    # (3 |00> + 4i |11>) / 5 reduces like an unbalanced pair
    state = PureState.from_amplitudes(
        (2, 2),
        {
            (0, 0): GaussianRational.of(3),
            (1, 1): GaussianRational.of(0, 4),
        },
    )
    expected = Fraction(3**4 + 4**4, 25**2)
    assert purity(state, [0]) == expected
    # scaling amplitudes must not change any purity
    scaled = PureState.from_amplitudes(
        (2, 2),
        {
            (0, 0): GaussianRational.of(Fraction(3, 7)),
            (1, 1): GaussianRational.of(0, Fraction(4, 7)),
        },
    )
    assert purity(scaled, [0]) == expected


def test_is_k_uniform_examples():
    assert is_k_uniform(bell_state(), 1)
    assert is_k_uniform(ghz_state(3, 2), 1)
    assert not is_k_uniform(product_zero_state(2), 1)
    assert not is_k_uniform(w_state(), 1)
    assert is_k_uniform(ame43_state(), 2)
    with pytest.raises(ValueError):
        is_k_uniform(bell_state(), 2)


def test_direct_enumerator_worked_values():
    assert direct_enumerator(bell_state()).coeffs == (1, 0, 3)
    assert direct_enumerator(ghz_state(3, 2)).coeffs == (1, 0, 3, 4)
    assert direct_enumerator(product_zero_state(2)).coeffs == (1, 2, 1)


def test_direct_shadow_worked_values():
    assert direct_shadow(bell_state()).coeffs == (1, 0, 3)
    assert direct_shadow(ghz_state(3, 2)).coeffs == (0, 3, 0, 5)


def test_direct_enumerator_rejects_heterogeneous():
    state = PureState.from_amplitudes(
        (3, 2, 2), {(0, 0, 0): GaussianRational.of(1)}
    )
    with pytest.raises(NotApplicableError):
        direct_enumerator(state)
    with pytest.raises(NotApplicableError):
        direct_shadow(state)


def test_capacity_errors():
    big = ghz_state(7, 2)
    with pytest.raises(CapacityError):
        purity(big, [0], dim_cap=64)
    with pytest.raises(CapacityError):
        direct_shadow(ghz_state(4, 2), party_cap=3)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)


@given(st.integers(1, 5), st.data())
def test_shadow_transform_matches_butterfly(n, data):
    table = data.draw(
        st.lists(rationals, min_size=1 << n, max_size=1 << n)
    )
    assert shadow_from_purities(table) == _shadow_from_purities_naive(table)


@st.composite
def small_states(draw):
    n = draw(st.integers(2, 4))
    d = draw(st.sampled_from([2, 3]))
    n_amps = draw(st.integers(1, 4))
    amps = {}
    for _ in range(n_amps):
        ket = tuple(draw(st.integers(0, d - 1)) for _ in range(n))
        re = draw(st.integers(-3, 3))
        im = draw(st.integers(-3, 3))
        if re or im:
            amps[ket] = GaussianRational.of(re, im)
    if not amps:
        amps[(0,) * n] = GaussianRational.of(1)
    return PureState.from_amplitudes((d,) * n, amps)


@given(small_states())
def test_random_states_satisfy_all_constraints(state):
    enum = direct_enumerator(state)
    n, d = state.profile.n_parties, state.profile.dims[0]
    assert validate_state_constraints(enum).ok
    assert sum(enum.coeffs) == d**n
    assert shadow_transform(enum).coeffs == direct_shadow(state).coeffs


@given(small_states())
def test_complementary_purity_symmetry(state):
    n = state.profile.n_parties
    table = purity_table(state)
    full = (1 << n) - 1
    for mask in range(1 << n):
        assert table[mask] == table[full ^ mask]


def test_bundled_corpus_shape():
    corpus = bundled_corpus()
    assert len(corpus) >= 12
    names = [name for name, _ in corpus]
    assert len(set(names)) == len(names)
    assert any(name == "ghz-n2-d2" for name in names)


def test_corpus_uniformity_iff_prefix_zero():
    for name, state in bundled_corpus():
        enum = direct_enumerator(state)
        for k in range(state.profile.n_parties // 2 + 1):
            prefix_zero = all(enum.coeffs[j] == 0 for j in range(1, k + 1))
            assert is_k_uniform(state, k) == prefix_zero, (name, k)


def test_state_json_round_trip():
    for _, state in bundled_corpus()[:4]:
        doc = state.to_json_dict()
        assert PureState.from_json_dict(doc).amplitudes == state.amplitudes
    doc = bell_state().to_json_dict()
    assert doc["dims"] == [2, 2]
    assert doc["amps"][0] == {"ket": [0, 0], "re": "1", "im": "0"}


def test_state_validation():
    with pytest.raises(ValueError):
        PureState.from_amplitudes((2, 2), {(0, 2): GaussianRational.of(1)})
    with pytest.raises(ValueError):
        PureState.from_amplitudes((2, 2), {(0, 0): GaussianRational.of(0)})
    with pytest.raises(ValueError):
        PureState.from_amplitudes((2, 2), {(0, 0, 0): GaussianRational.of(1)})


def test_ame_shadow_oracle_equals_formula_route():
    from kuniform.hetero import hetero_shadow

    for dims in ((3, 2, 2), (2, 3, 3), (4, 2, 2, 2, 2), (3, 3, 3, 3, 3)):
        prof = DimensionProfile(dims)
        assert ame_shadow_oracle(prof) == hetero_shadow(prof).s
