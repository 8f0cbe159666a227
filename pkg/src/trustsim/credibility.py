"""Credibility scores the recommending system holds about its advisors.

After every aggregation round each responding advisor is rewarded or punished
according to whether its verdict converged to the aggregate decision: agreeing
advisors gain the winning belief (capped at 1), disagreeing advisors move to
the absolute difference between their score and the losing belief. Exact
belief ties update nobody. Scores live in [0, 1] and newcomers start at the
ledger's initial score without ever being written implicitly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .core import AgentId, Probability, Verdict
from .dst import BeliefTriple


class DuplicateRecommendation(ValueError):
    """The same advisor appeared twice in one aggregation round."""


class CredibilityLedger:
    """Single-writer map from advisor identity to credibility score."""

    def __init__(self, initial_score: float = 0.5) -> None:
        self.initial_score = Probability(initial_score)
        self._scores: dict[AgentId, Probability] = {}

    def __contains__(self, agent: AgentId) -> bool:
        return agent in self._scores

    def __len__(self) -> int:
        return len(self._scores)

    def get(self, agent: AgentId) -> Probability:
        """Current score, or the initial score for an unknown advisor.

        Lookups never mutate the ledger, so asking about a newcomer leaves no
        trace.
        """
        return self._scores.get(agent, self.initial_score)

    def set(self, agent: AgentId, score: float) -> None:
        self._scores[agent] = Probability(score)

    def drop(self, agent: AgentId) -> None:
        self._scores.pop(agent, None)

    def known_agents(self) -> list[AgentId]:
        return list(self._scores)

    def as_map(self) -> dict[AgentId, Probability]:
        return dict(self._scores)

    def update(self, advisor: AgentId, given: Verdict, beliefs: BeliefTriple) -> Probability:
        """Apply one convergence/divergence update and return the new score.

        The increment on agreement is the larger of the two directional
        beliefs; the divergence branch takes the absolute difference with the
        smaller one, which keeps the result in [0, 1] but can raise a very low
        score when the losing belief exceeds twice of it. That quirk is kept
        as designed rather than floored away.
        """
        score = float(self.get(advisor))
        trust, distrust = beliefs.trust, beliefs.distrust
        said_trust = given is Verdict.TRUSTWORTHY
        if (said_trust and trust > distrust) or (not said_trust and trust < distrust):
            new = min(1.0, score + max(trust, distrust))
        elif (said_trust and trust < distrust) or (not said_trust and trust > distrust):
            new = abs(score - min(trust, distrust))
        else:
            new = score
        result = Probability(new)
        self._scores[advisor] = result
        return result

    def batch_update(self, recommendations: Iterable, beliefs: BeliefTriple) -> None:
        """Update each responding advisor exactly once.

        Advisors absent from ``recommendations`` are untouched. A duplicated
        advisor aborts the whole batch before any score changes: one opinion
        per identity per request.
        """
        recs = list(recommendations)
        seen: set[AgentId] = set()
        subjects = {rec.subject for rec in recs}
        if len(subjects) > 1:
            raise ValueError("one batch must target a single subject")
        for rec in recs:
            if rec.advisor in seen:
                raise DuplicateRecommendation(
                    f"advisor {rec.advisor.value} answered twice in one round"
                )
            seen.add(rec.advisor)
        for rec in recs:
            self.update(rec.advisor, rec.verdict, beliefs)

    def save(self, path: str | Path) -> None:
        """Write a flat two-column snapshot (agent id, score)."""
        lines = ["agent_id\tscore"]
        for agent in sorted(self._scores, key=lambda a: a.value):
            lines.append(f"{agent.value}\t{self._scores[agent]!r}")
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path, initial_score: float = 0.5) -> "CredibilityLedger":
        ledger = cls(initial_score)
        text = Path(path).read_text().splitlines()
        for line in text[1:]:
            if not line.strip():
                continue
            raw_id, raw_score = line.split("\t")
            ledger.set(AgentId(int(raw_id)), float(raw_score))
        return ledger


def update_credibility(
    ledger: CredibilityLedger, advisor: AgentId, given: Verdict, beliefs: BeliefTriple
) -> Probability:
    """Function-style alias for :meth:`CredibilityLedger.update`."""
    return ledger.update(advisor, given, beliefs)


def batch_update(
    ledger: CredibilityLedger, recommendations: Iterable, beliefs: BeliefTriple
) -> None:
    """Function-style alias for :meth:`CredibilityLedger.batch_update`."""
    ledger.batch_update(recommendations, beliefs)
