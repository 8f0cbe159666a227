"""One recommendation round, end to end.

The engine broadcasts a request to every eligible advisor it still has budget
to ask, collects the verdicts of those who answer, fuses them into a belief
triple weighted by each advisor's credibility as of collection time, decides,
and only then settles the ledgers (credibility updates for responders, answer
tallies for the incentive scheme). Reading everything before writing anything
means a round can never feed its own updates back into its own aggregation.

Advisors appear here only as opaque callables keyed by identity; whatever
behavior hides behind a callable is invisible to this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .core import AgentId, Probability, Recommendation, Verdict
from .credibility import CredibilityLedger
from .dst import (
    BeliefTriple,
    TotalConflict,
    combine_all,
    decide,
    estimated_trust,
    mass_from_recommendation,
)
from .incentives import BudgetExhausted, InquiryLedger

#: An advisor's answer policy: a verdict, or None to abstain.
Responder = Callable[[AgentId, Sequence[float]], "Verdict | None"]

#: Belief state reported when every advisor abstained: pure uncertainty.
ALL_ABSTAIN_BELIEFS = BeliefTriple(Probability(0.0), Probability(0.0), Probability(1.0))


class RoundFailure(RuntimeError):
    """The round could not produce a decision (e.g. totally conflicting evidence)."""


@dataclass(frozen=True)
class RecommendationRequest:
    requester: AgentId
    subject: AgentId
    subject_features: tuple[float, ...]
    eligible: tuple[AgentId, ...]

    def __post_init__(self) -> None:
        if self.subject in self.eligible:
            raise ValueError("the subject cannot advise on itself")
        if self.requester in self.eligible:
            raise ValueError("the requester cannot advise itself")


@dataclass(frozen=True)
class RoundOutcome:
    """What one round produced, including who answered and who did not.

    ``not_polled`` lists advisors skipped because the requester's inquiry
    budget toward them was exhausted; they are not abstainers, they were
    never asked.
    """

    beliefs: BeliefTriple
    verdict: Verdict
    estimated_trust: Probability
    responders: tuple[Recommendation, ...]
    abstainers: tuple[AgentId, ...]
    not_polled: tuple[AgentId, ...]


def run_round(
    request: RecommendationRequest,
    population: Mapping[AgentId, Responder],
    credibility: CredibilityLedger,
    inquiries: InquiryLedger | None = None,
    trace: Callable[[dict], None] | None = None,
) -> RoundOutcome:
    """Execute one full round for ``request``.

    Every eligible advisor is polled (budget permitting) with the subject's
    features; responders' verdicts become credibility-weighted masses that are
    fused and decided on. If everyone abstains the outcome is pure uncertainty
    with the conservative untrustworthy verdict. Credibility updates apply to
    responders only, using the aggregate the round just produced.
    """
    if not request.eligible:
        raise ValueError("cannot run a round with no eligible advisors")
    responders: list[Recommendation] = []
    abstainers: list[AgentId] = []
    not_polled: list[AgentId] = []
    for advisor in request.eligible:
        if advisor not in population:
            raise ValueError(f"eligible advisor {advisor.value} is not in the population")
        if inquiries is not None:
            try:
                inquiries.consume(request.requester, advisor)
            except BudgetExhausted:
                not_polled.append(advisor)
                continue
        answer = population[advisor](request.subject, request.subject_features)
        if answer is None:
            abstainers.append(advisor)
            continue
        responders.append(
            Recommendation(advisor, request.subject, answer, credibility.get(advisor))
        )

    before = {rec.advisor: float(rec.credibility_at_issue) for rec in responders}
    if responders:
        masses = [
            mass_from_recommendation(rec.verdict, rec.credibility_at_issue)
            for rec in responders
        ]
        try:
            beliefs = combine_all(masses)
        except TotalConflict as exc:
            raise RoundFailure(
                f"total conflict aggregating {len(masses)} recommendations "
                f"about subject {request.subject.value}"
            ) from exc
        verdict = decide(beliefs)
        trust = estimated_trust(beliefs)
        credibility.batch_update(responders, beliefs)
        if inquiries is not None:
            for rec in responders:
                inquiries.record_answer(rec.advisor, request.requester)
    else:
        beliefs = ALL_ABSTAIN_BELIEFS
        verdict = Verdict.UNTRUSTWORTHY
        trust = Probability(0.5)

    outcome = RoundOutcome(
        beliefs, verdict, trust, tuple(responders), tuple(abstainers), tuple(not_polled)
    )
    if trace is not None:
        trace(_trace_record(request, outcome, before, credibility))
    return outcome


def _trace_record(
    request: RecommendationRequest,
    outcome: RoundOutcome,
    before: dict[AgentId, float],
    credibility: CredibilityLedger,
) -> dict:
    """One structured record per round, for line-delimited logging."""
    return {
        "requester": request.requester.value,
        "subject": request.subject.value,
        "responders": [
            {
                "advisor": rec.advisor.value,
                "verdict": rec.verdict.value,
                "credibility": float(rec.credibility_at_issue),
            }
            for rec in outcome.responders
        ],
        "abstainers": [agent.value for agent in outcome.abstainers],
        "not_polled": [agent.value for agent in outcome.not_polled],
        "beliefs": {
            "trust": float(outcome.beliefs.trust),
            "distrust": float(outcome.beliefs.distrust),
            "uncertainty": float(outcome.beliefs.uncertainty),
        },
        "verdict": outcome.verdict.value,
        "estimated_trust": float(outcome.estimated_trust),
        "credibility_before": {str(a.value): v for a, v in before.items()},
        "credibility_after": {
            str(rec.advisor.value): float(credibility.get(rec.advisor))
            for rec in outcome.responders
        },
    }
