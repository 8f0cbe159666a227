"""Shared vocabulary for the trust engine: identities, verdicts, recommendations.

Everything here is an immutable value object, safe to share between threads
and to use as dictionary keys. Identity issuance goes through a single
:class:`IdentityIssuer` so that runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Probability(float):
    """A float constrained to [0, 1]; construction outside the range fails."""

    __slots__ = ()

    def __new__(cls, value: float) -> "Probability":
        v = float(value)
        if math.isnan(v) or not 0.0 <= v <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {value!r}")
        return super().__new__(cls, v)


class Verdict(Enum):
    """Binary recommendation outcome.

    There is deliberately no third value: uncertainty is expressed inside
    mass functions, never at the level of an individual recommendation.
    """

    TRUSTWORTHY = "T"
    UNTRUSTWORTHY = "N"

    def inverted(self) -> "Verdict":
        if self is Verdict.TRUSTWORTHY:
            return Verdict.UNTRUSTWORTHY
        return Verdict.TRUSTWORTHY


@dataclass(frozen=True)
class AgentId:
    """Opaque agent identity.

    ``lineage`` links a fabricated or successor identity back to the principal
    that controls it. It exists purely for simulator-side ground-truth
    accounting: it is excluded from equality, hashing and repr, and engine-side
    code never reads it. Attacks work precisely because the defender cannot
    see who controls which identity.
    """

    value: int
    lineage: "AgentId | None" = field(default=None, compare=False, repr=False)


class UnknownLineage(ValueError):
    """A new identity claimed descent from an id that was never issued."""


class IdentityIssuer:
    """Issues unique agent ids from a monotone counter.

    Two runs that issue ids in the same order get the same sequence, which is
    what makes seeded simulations byte-reproducible.
    """

    def __init__(self, start: int = 0) -> None:
        self._next = start
        self._issued: set[int] = set()

    def fresh(self, lineage: AgentId | None = None) -> AgentId:
        if lineage is not None and lineage.value not in self._issued:
            raise UnknownLineage(f"lineage {lineage.value} was never issued")
        agent = AgentId(self._next, lineage)
        self._next += 1
        self._issued.add(agent.value)
        return agent

    def issued_count(self) -> int:
        return len(self._issued)


@dataclass(frozen=True)
class Recommendation:
    """One advisor's verdict on a subject.

    ``credibility_at_issue`` is the credibility the requesting system held for
    the advisor at collection time; aggregation weighs the verdict by it.
    """

    advisor: AgentId
    subject: AgentId
    verdict: Verdict
    credibility_at_issue: Probability

    def __post_init__(self) -> None:
        if self.advisor == self.subject:
            raise ValueError("an agent cannot recommend itself")
        object.__setattr__(
            self, "credibility_at_issue", Probability(self.credibility_at_issue)
        )
