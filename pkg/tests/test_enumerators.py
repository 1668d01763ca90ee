from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kuniform.enumerators import (
    InvariantBasisCoeffs,
    ShadowCompressed,
    WeightEnumerator,
    a_to_c,
    b_to_c,
    c_to_a,
    c_to_b,
    macwilliams_transform,
    shadow_compress,
    shadow_transform,
    validate_state_constraints,
)
from kuniform.exact import binom

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)


@st.composite
def weight_enumerators(draw, max_parties=14):
    n = draw(st.integers(1, max_parties))
    d = draw(st.sampled_from([2, 3, 4, 5]))
    coeffs = draw(st.lists(rationals, min_size=n + 1, max_size=n + 1))
    return WeightEnumerator(n, d, tuple(coeffs))


@st.composite
def invariant_coeffs(draw, max_parties=14):
    n = draw(st.integers(1, max_parties))
    d = draw(st.sampled_from([2, 3, 4, 5]))
    coeffs = draw(st.lists(rationals, min_size=n // 2 + 1, max_size=n // 2 + 1))
    return InvariantBasisCoeffs(n, d, tuple(coeffs))


BELL = WeightEnumerator(2, 2, (1, 0, 3))
GHZ3 = WeightEnumerator(3, 2, (1, 0, 3, 4))
PRODUCT2 = WeightEnumerator(2, 2, (1, 2, 1))


def test_macwilliams_worked_examples():
    assert macwilliams_transform(BELL).coeffs == (1, 0, 3)
    assert macwilliams_transform(WeightEnumerator(1, 2, (1, 0))).coeffs == (
        Fraction(1, 2),
        Fraction(3, 2),
    )


@given(weight_enumerators())
def test_macwilliams_is_an_involution(enum):
    twice = macwilliams_transform(macwilliams_transform(enum))
    assert twice.coeffs == enum.coeffs


def test_shadow_worked_examples():
    assert shadow_transform(BELL).coeffs == (1, 0, 3)
    assert shadow_transform(GHZ3).coeffs == (0, 3, 0, 5)


@given(invariant_coeffs())
def test_shadow_reflection_symmetry_on_invariant_inputs(inv):
    # enumerators built from the invariant basis satisfy S(x, y) = S(-x, y)
    enum = c_to_a(inv)
    s = shadow_transform(enum).coeffs
    n = enum.n_parties
    flipped = tuple((-1) ** (n - j) * s[j] for j in range(n + 1))
    assert s == flipped


def test_a_to_c_worked_examples():
    assert a_to_c(BELL).coeffs == (1, -2)
    assert a_to_c(PRODUCT2).coeffs == (1, 0)
    for d in (2, 3, 5):
        for n in (2, 5, 9):
            enum = WeightEnumerator(n, d, (1, 0) + (0,) * (n - 1))
            c = a_to_c(enum)
            assert c.coeffs[0] == 1
            assert c.coeffs[1] == -n * (d - 1)


def test_c_to_a_worked_examples():
    assert c_to_a(InvariantBasisCoeffs(2, 2, (1, -2))).coeffs == (1, 0, 3)
    # a single leading basis term expands to the binomial row
    for n, d in ((4, 3), (5, 2), (7, 4)):
        inv = InvariantBasisCoeffs(n, d, (1,) + (0,) * (n // 2))
        expected = tuple(binom(n, j) * (d - 1) ** j for j in range(n + 1))
        assert c_to_a(inv).coeffs == expected


@given(invariant_coeffs())
def test_a_to_c_inverts_c_to_a(inv):
    assert a_to_c(c_to_a(inv)).coeffs == inv.coeffs


def test_c_to_b_worked_examples():
    b = c_to_b(InvariantBasisCoeffs(2, 2, (1, -2)))
    assert b.coeffs == (1, 3) and b.parity == 0
    ghz_b = c_to_b(a_to_c(GHZ3))
    assert ghz_b.coeffs == (3, 5) and ghz_b.parity == 1


@given(invariant_coeffs())
def test_c_to_b_matches_shadow_route(inv):
    # expanding the shadow of the expanded enumerator and compressing must
    # equal the direct linear map
    via_shadow = shadow_compress(shadow_transform(c_to_a(inv)))
    direct = c_to_b(inv)
    assert via_shadow.coeffs == direct.coeffs
    assert via_shadow.parity == direct.parity


def test_b_to_c_worked_example():
    inv = b_to_c(ShadowCompressed(2, 0, (1, 3)), 2)
    assert inv.coeffs == (1, -2)
    zeros = b_to_c(ShadowCompressed(5, 1, (0, 0, 0)), 3)
    assert all(c == 0 for c in zeros.coeffs)


@given(invariant_coeffs(max_parties=30))
def test_b_to_c_inverts_c_to_b(inv):
    assert b_to_c(c_to_b(inv), inv.local_dim).coeffs == inv.coeffs


def test_degenerate_single_party():
    inv = InvariantBasisCoeffs(1, 3, (Fraction(1),))
    enum = c_to_a(inv)
    assert enum.coeffs == (1, 2)
    assert a_to_c(enum).coeffs == (1,)
    b = c_to_b(inv)
    assert b.coeffs == (2,)
    assert b_to_c(b, 3).coeffs == (1,)


def test_validate_state_constraints_examples():
    assert validate_state_constraints(BELL, k=1).ok
    report = validate_state_constraints(WeightEnumerator(2, 2, (1, -1, 3)))
    assert not report.coeffs_nonnegative and not report.ok
    ghz_report = validate_state_constraints(GHZ3, k=2)
    assert ghz_report.uniform_prefix_zero is False
    assert ghz_report.failed_checks() == ("uniform_prefix_zero",)
    assert validate_state_constraints(GHZ3, k=1).ok


def test_constraint_report_fields_are_independent():
    report = validate_state_constraints(WeightEnumerator(2, 2, (2, 0, 6)))
    assert not report.a0_is_one
    assert report.coeffs_nonnegative


def test_json_round_trip():
    doc = BELL.to_json_dict()
    assert doc == {"n": 2, "d": 2, "coeffs": ["1", "0", "3"]}
    assert WeightEnumerator.from_json_dict(doc).coeffs == BELL.coeffs
    s = shadow_transform(GHZ3)
    assert type(s).from_json_dict(s.to_json_dict()).coeffs == s.coeffs


def test_coefficient_length_validation():
    with pytest.raises(ValueError):
        WeightEnumerator(3, 2, (1, 0, 0))
    with pytest.raises(ValueError):
        InvariantBasisCoeffs(4, 2, (1, 0))
    with pytest.raises(ValueError):
        ShadowCompressed(4, 1, (1, 0, 0))
