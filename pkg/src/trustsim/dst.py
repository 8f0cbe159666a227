"""Evidence aggregation over the frame {trustworthy, untrustworthy, uncertain}.

Each collected recommendation becomes a mass function that puts the advisor's
credibility behind the reported verdict and the remainder on uncertainty.
Masses are fused with Dempster's rule of combination: agreeing evidence
reinforces, conflicting evidence is discarded, and the rest is renormalised.
The upshot is that a few highly credible advisors can outweigh a crowd of
barely credible ones, which is the whole point of weighting by credibility.

All functions here are pure and operate on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Probability, Verdict

# Tolerance for the "components sum to one" invariant.
SUM_TOLERANCE = 1e-9

# Credibility is clamped just below 1 so that two fully credible advisors who
# contradict each other cannot produce total conflict (normaliser of zero).
CREDIBILITY_CAP = 1.0 - 1e-6

# Below this, the normaliser is numerically meaningless and combination fails.
MIN_NORMALISER = 1e-12

# Denominators smaller than this are treated as "no directional evidence".
_TRUST_DENOM_FLOOR = 1e-12


class TotalConflict(ArithmeticError):
    """All combined evidence was mutually contradictory; nothing survives."""


class EmptyEvidence(ValueError):
    """Combination was requested over an empty collection of masses."""


def _check_distribution(trust: float, distrust: float, uncertainty: float) -> None:
    total = trust + distrust + uncertainty
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"components must sum to 1, got {total!r}")


@dataclass(frozen=True)
class MassFunction:
    """Basic probability assignment of one piece of evidence.

    ``trust`` backs the trustworthy hypothesis, ``distrust`` the untrustworthy
    one, and ``uncertainty`` is the mass left on "either could be true".
    """

    trust: Probability
    distrust: Probability
    uncertainty: Probability

    def __post_init__(self) -> None:
        object.__setattr__(self, "trust", Probability(self.trust))
        object.__setattr__(self, "distrust", Probability(self.distrust))
        object.__setattr__(self, "uncertainty", Probability(self.uncertainty))
        _check_distribution(self.trust, self.distrust, self.uncertainty)


VACUOUS = MassFunction(Probability(0.0), Probability(0.0), Probability(1.0))


@dataclass(frozen=True)
class BeliefTriple:
    """Normalised aggregate beliefs produced by combining mass functions."""

    trust: Probability
    distrust: Probability
    uncertainty: Probability

    def __post_init__(self) -> None:
        object.__setattr__(self, "trust", Probability(self.trust))
        object.__setattr__(self, "distrust", Probability(self.distrust))
        object.__setattr__(self, "uncertainty", Probability(self.uncertainty))
        _check_distribution(self.trust, self.distrust, self.uncertainty)

    def as_mass(self) -> MassFunction:
        """Reinterpret as a mass function (both are distributions over the
        same three-element frame, so this is a change of role, not of value)."""
        return MassFunction(self.trust, self.distrust, self.uncertainty)


def mass_from_recommendation(verdict: Verdict, credibility: float) -> MassFunction:
    """Turn a single verdict into a mass function weighted by credibility.

    The advisor's credibility goes on the reported hypothesis and the rest on
    uncertainty, after clamping credibility to :data:`CREDIBILITY_CAP`.
    """
    lam = min(float(Probability(credibility)), CREDIBILITY_CAP)
    if verdict is Verdict.TRUSTWORTHY:
        return MassFunction(Probability(lam), Probability(0.0), Probability(1.0 - lam))
    return MassFunction(Probability(0.0), Probability(lam), Probability(1.0 - lam))


def combine(a: MassFunction, b: MassFunction) -> BeliefTriple:
    """Fuse two mass functions with Dempster's rule.

    Mass assigned to contradictory hypothesis pairs (one source says
    trustworthy, the other untrustworthy) is the conflict; the surviving mass
    is renormalised by one minus the conflict. Raises :class:`TotalConflict`
    when essentially everything conflicts.

    The arithmetic is grouped so that ``combine(a, b)`` and ``combine(b, a)``
    are bitwise identical.
    """
    conflict = a.trust * b.distrust + a.distrust * b.trust
    normaliser = 1.0 - conflict
    if normaliser <= MIN_NORMALISER:
        raise TotalConflict(f"conflict {conflict!r} leaves no usable evidence")
    trust = (a.trust * b.trust + (a.trust * b.uncertainty + a.uncertainty * b.trust)) / normaliser
    distrust = (
        a.distrust * b.distrust
        + (a.distrust * b.uncertainty + a.uncertainty * b.distrust)
    ) / normaliser
    uncertainty = (a.uncertainty * b.uncertainty) / normaliser
    return BeliefTriple(
        Probability(min(1.0, trust)),
        Probability(min(1.0, distrust)),
        Probability(min(1.0, uncertainty)),
    )


def combine_all(masses: Iterable[MassFunction]) -> BeliefTriple:
    """Left-fold of pairwise combination over an ordered collection.

    Dempster's rule is associative and commutative on this frame, so the fold
    order does not change the result (beyond float noise); a singleton input
    is returned unchanged in triple form.
    """
    iterator = iter(masses)
    try:
        first = next(iterator)
    except StopIteration:
        raise EmptyEvidence("cannot combine an empty collection of masses") from None
    acc = BeliefTriple(first.trust, first.distrust, first.uncertainty)
    for mass in iterator:
        acc = combine(_renormalised(acc.as_mass()), mass)
    return acc


def _renormalised(mass: MassFunction) -> MassFunction:
    """Rescale components to sum to 1 within an ulp.

    Intermediate fold results drift from 1 by rounding noise; under heavy
    conflict that drift is amplified by the small normaliser, and compounds
    across steps if left in place. Rescaling each step keeps the fold stable
    without touching the exactness of the binary rule.
    """
    total = mass.trust + mass.distrust + mass.uncertainty
    if total == 1.0:
        return mass
    return MassFunction(
        Probability(mass.trust / total),
        Probability(mass.distrust / total),
        Probability(mass.uncertainty / total),
    )


def decide(beliefs: BeliefTriple) -> Verdict:
    """Final verdict: trustworthy only when belief in trust strictly wins.

    Ties fall to untrustworthy, the conservative outcome for a trust decision.
    """
    if beliefs.trust > beliefs.distrust:
        return Verdict.TRUSTWORTHY
    return Verdict.UNTRUSTWORTHY


def estimated_trust(beliefs: BeliefTriple) -> Probability:
    """Scalar trust estimate in [0, 1]: belief in trust renormalised against
    the directional evidence, with pure uncertainty mapping to 0.5."""
    denom = beliefs.trust + beliefs.distrust
    if denom > _TRUST_DENOM_FLOOR:
        return Probability(beliefs.trust / denom)
    return Probability(0.5)
