import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from trustsim.core import Probability, Verdict
from trustsim.dst import (
    VACUOUS,
    BeliefTriple,
    EmptyEvidence,
    MassFunction,
    TotalConflict,
    combine,
    combine_all,
    decide,
    estimated_trust,
    mass_from_recommendation,
)

# ---------------------------------------------------------------------------
# independent oracle: enumerate every hypothesis assignment over the frame
# {T}, {N}, {T, N} and apply the combination rule from first principles
# ---------------------------------------------------------------------------

_FOCAL = {
    "T": frozenset({"T"}),
    "N": frozenset({"N"}),
    "U": frozenset({"T", "N"}),
}


def oracle_combine(masses):
    pooled = {
        frozenset({"T"}): 0.0,
        frozenset({"N"}): 0.0,
        frozenset({"T", "N"}): 0.0,
    }
    conflict = 0.0
    for hypotheses in itertools.product("TNU", repeat=len(masses)):
        weight = 1.0
        meet = frozenset({"T", "N"})
        for mass, name in zip(masses, hypotheses):
            weight *= {"T": mass.trust, "N": mass.distrust, "U": mass.uncertainty}[name]
            meet = meet & _FOCAL[name]
        if meet:
            pooled[meet] += weight
        else:
            conflict += weight
    norm = 1.0 - conflict
    return (
        pooled[frozenset({"T"})] / norm,
        pooled[frozenset({"N"})] / norm,
        pooled[frozenset({"T", "N"})] / norm,
    )


def random_mass(rng):
    trust = rng.random()
    distrust = rng.random() * (1.0 - trust)
    return MassFunction(trust, distrust, 1.0 - trust - distrust)


def masses():
    """Hypothesis strategy for valid mass functions."""
    return st.builds(
        lambda t, frac: MassFunction(t, (1.0 - t) * frac, 1.0 - t - (1.0 - t) * frac),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    )


# ---------------------------------------------------------------------------
# mass construction
# ---------------------------------------------------------------------------


def test_mass_from_trustworthy_recommendation():
    mass = mass_from_recommendation(Verdict.TRUSTWORTHY, 0.8)
    assert mass.trust == 0.8
    assert mass.distrust == 0.0
    assert mass.uncertainty == pytest.approx(0.2, abs=1e-12)


def test_mass_from_zero_credibility_is_vacuous():
    mass = mass_from_recommendation(Verdict.UNTRUSTWORTHY, 0.0)
    assert (mass.trust, mass.distrust, mass.uncertainty) == (0.0, 0.0, 1.0)


def test_full_credibility_is_clamped():
    mass = mass_from_recommendation(Verdict.TRUSTWORTHY, 1.0)
    assert mass.trust == 1.0 - 1e-6
    assert mass.distrust == 0.0
    assert mass.trust + mass.uncertainty == pytest.approx(1.0, abs=1e-12)


def test_mass_validates_sum():
    with pytest.raises(ValueError):
        MassFunction(0.5, 0.5, 0.5)


def test_mass_validates_range():
    with pytest.raises(ValueError):
        MassFunction(1.2, -0.2, 0.0)


# ---------------------------------------------------------------------------
# pairwise combination
# ---------------------------------------------------------------------------


def test_combine_agreeing_advisors():
    got = combine(MassFunction(0.8, 0, 0.2), MassFunction(0.6, 0, 0.4))
    assert got.trust == pytest.approx(0.92, abs=1e-12)
    assert got.distrust == 0.0
    assert got.uncertainty == pytest.approx(0.08, abs=1e-12)


def test_combine_contradicting_advisors():
    got = combine(MassFunction(0.6, 0, 0.4), MassFunction(0, 0.6, 0.4))
    assert got.trust == pytest.approx(0.375, abs=1e-12)
    assert got.distrust == pytest.approx(0.375, abs=1e-12)
    assert got.uncertainty == pytest.approx(0.25, abs=1e-12)


def test_vacuous_mass_is_exact_identity():
    rng = random.Random(7)
    for _ in range(200):
        mass = random_mass(rng)
        got = combine(mass, VACUOUS)
        assert (got.trust, got.distrust, got.uncertainty) == (
            mass.trust,
            mass.distrust,
            mass.uncertainty,
        )


def test_total_conflict_raises():
    with pytest.raises(TotalConflict):
        combine(MassFunction(1.0, 0.0, 0.0), MassFunction(0.0, 1.0, 0.0))


def test_engine_built_masses_cannot_totally_conflict():
    a = mass_from_recommendation(Verdict.TRUSTWORTHY, 1.0)
    b = mass_from_recommendation(Verdict.UNTRUSTWORTHY, 1.0)
    combined = combine(a, b)
    assert combined.trust == pytest.approx(combined.distrust)


@settings(max_examples=300)
@given(masses(), masses())
def test_combine_is_exactly_commutative(a, b):
    assume(a.trust * b.distrust + a.distrust * b.trust < 1.0 - 1e-9)
    left = combine(a, b)
    right = combine(b, a)
    assert (left.trust, left.distrust, left.uncertainty) == (
        right.trust,
        right.distrust,
        right.uncertainty,
    )


@settings(max_examples=300)
@given(masses(), masses())
def test_combine_normalises(a, b):
    assume(a.trust * b.distrust + a.distrust * b.trust < 1.0 - 1e-9)
    got = combine(a, b)
    assert abs(got.trust + got.distrust + got.uncertainty - 1.0) <= 1e-9


@settings(max_examples=200)
@given(masses(), masses())
def test_combine_matches_oracle(a, b):
    assume(a.trust * b.distrust + a.distrust * b.trust < 1.0 - 1e-9)
    got = combine(a, b)
    want = oracle_combine([a, b])
    assert got.trust == pytest.approx(want[0], abs=1e-9)
    assert got.distrust == pytest.approx(want[1], abs=1e-9)
    assert got.uncertainty == pytest.approx(want[2], abs=1e-9)


def test_agreement_is_monotone_over_credibility_grid():
    # two advisors both favouring trust can only reinforce each other
    for i in range(10):
        for j in range(10):
            lam1, lam2 = i / 10, j / 10
            got = combine(
                mass_from_recommendation(Verdict.TRUSTWORTHY, lam1),
                mass_from_recommendation(Verdict.TRUSTWORTHY, lam2),
            )
            assert got.trust >= max(lam1, lam2) - 1e-12
            assert got.distrust == 0.0


# ---------------------------------------------------------------------------
# n-ary combination
# ---------------------------------------------------------------------------


def test_combine_all_singleton():
    got = combine_all([MassFunction(0.8, 0, 0.2)])
    assert (got.trust, got.distrust, got.uncertainty) == (0.8, 0.0, 0.2)


def test_combine_all_three_advisors():
    got = combine_all(
        [MassFunction(0.8, 0, 0.2), MassFunction(0.6, 0, 0.4), MassFunction(0, 0.7, 0.3)]
    )
    assert got.trust == pytest.approx(0.77528089887, abs=1e-9)
    assert got.distrust == pytest.approx(0.15730337078, abs=1e-9)
    assert got.uncertainty == pytest.approx(0.06741573033, abs=1e-9)


def test_combine_all_empty_raises():
    with pytest.raises(EmptyEvidence):
        combine_all([])


def test_combine_all_permutation_invariant():
    rng = random.Random(11)
    for _ in range(50):
        batch = [random_mass(rng) for _ in range(4)]
        reference = combine_all(batch)
        for permutation in itertools.permutations(batch):
            got = combine_all(list(permutation))
            assert got.trust == pytest.approx(reference.trust, abs=1e-9)
            assert got.distrust == pytest.approx(reference.distrust, abs=1e-9)
            assert got.uncertainty == pytest.approx(reference.uncertainty, abs=1e-9)


def test_combine_all_matches_oracle_on_triples():
    rng = random.Random(13)
    for _ in range(100):
        batch = [random_mass(rng) for _ in range(3)]
        got = combine_all(batch)
        want = oracle_combine(batch)
        assert got.trust == pytest.approx(want[0], abs=1e-9)
        assert got.distrust == pytest.approx(want[1], abs=1e-9)


def test_long_saturated_fold_stays_normalised():
    # two large opposing coalitions of near-certain advisors: the worst
    # numerical regime, where the normaliser shrinks to ~1e-6 repeatedly
    masses = [mass_from_recommendation(Verdict.UNTRUSTWORTHY, 1.0)] * 30
    masses += [mass_from_recommendation(Verdict.TRUSTWORTHY, 1.0)] * 14
    got = combine_all(masses)
    assert abs(got.trust + got.distrust + got.uncertainty - 1.0) <= 1e-9
    assert got.distrust > got.trust


def test_credibility_outweighs_count():
    # up to ten barely credible dissenters lose to one strong advisor
    strong = mass_from_recommendation(Verdict.TRUSTWORTHY, 0.9)
    weak = mass_from_recommendation(Verdict.UNTRUSTWORTHY, 0.1)
    for k in range(1, 11):
        verdict = decide(combine_all([strong] + [weak] * k))
        assert verdict is Verdict.TRUSTWORTHY, f"failed at k={k}"


# ---------------------------------------------------------------------------
# decision and scalar trust
# ---------------------------------------------------------------------------


def test_decide_trust_dominant():
    assert decide(BeliefTriple(0.92, 0.0, 0.08)) is Verdict.TRUSTWORTHY


def test_decide_tie_is_untrustworthy():
    assert decide(BeliefTriple(0.375, 0.375, 0.25)) is Verdict.UNTRUSTWORTHY


def test_decide_distrust_dominant():
    assert decide(BeliefTriple(0.1, 0.2, 0.7)) is Verdict.UNTRUSTWORTHY


def test_estimated_trust_saturates():
    assert estimated_trust(BeliefTriple(0.92, 0.0, 0.08)) == 1.0


def test_estimated_trust_of_pure_uncertainty():
    assert estimated_trust(BeliefTriple(0.0, 0.0, 1.0)) == 0.5


def test_estimated_trust_of_symmetric_conflict():
    assert estimated_trust(BeliefTriple(0.375, 0.375, 0.25)) == 0.5


def test_estimated_trust_stays_probability():
    rng = random.Random(3)
    for _ in range(500):
        mass = random_mass(rng)
        value = estimated_trust(BeliefTriple(mass.trust, mass.distrust, mass.uncertainty))
        assert 0.0 <= value <= 1.0
        assert isinstance(value, Probability)
