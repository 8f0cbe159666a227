"""trustsim: credibility-weighted trust aggregation with an attack simulator.

The package has two halves. The engine side (identities, mass-function
aggregation, credibility and inquiry ledgers, the round runner) implements a
recommendation-based trust decision procedure that weighs every collected
verdict by its issuer's credibility. The simulator side wraps advisors in
adversarial behavior (sybil expansion, camouflage, whitewashing) and measures
how much damage each attack does to the engine's trust estimates.
"""

from .core import (
    AgentId,
    IdentityIssuer,
    Probability,
    Recommendation,
    UnknownLineage,
    Verdict,
)
from .dst import (
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
from .credibility import CredibilityLedger, DuplicateRecommendation
from .incentives import BudgetExhausted, InquiryLedger
from .tree import SPLIT_BACKEND, DecisionTree, EmptyDataset
from .advisor import (
    AdvisorDataset,
    AdvisorState,
    InteractionRecord,
    SelfAssessment,
    derive_recommendation,
    self_assess,
    train_tree,
)
from .adversary import (
    AttackKind,
    BehaviorProfile,
    camouflage_verdict,
    sybil_expand,
    whitewash_maybe_reset,
)
from .engine import RecommendationRequest, RoundFailure, RoundOutcome, run_round
from .simulate import (
    ConfigError,
    ScenarioConfig,
    ScenarioResult,
    ground_truth_trust,
    mae,
    run_scenario,
    synthesize_population,
)
from .epinions import IngestError, ingest_epinions

__version__ = "0.1.0"

__all__ = [
    "AgentId",
    "AttackKind",
    "AdvisorDataset",
    "AdvisorState",
    "BehaviorProfile",
    "BeliefTriple",
    "BudgetExhausted",
    "ConfigError",
    "CredibilityLedger",
    "DecisionTree",
    "DuplicateRecommendation",
    "EmptyDataset",
    "EmptyEvidence",
    "IdentityIssuer",
    "IngestError",
    "InquiryLedger",
    "InteractionRecord",
    "MassFunction",
    "Probability",
    "Recommendation",
    "RecommendationRequest",
    "RoundFailure",
    "RoundOutcome",
    "ScenarioConfig",
    "ScenarioResult",
    "SelfAssessment",
    "SPLIT_BACKEND",
    "TotalConflict",
    "UnknownLineage",
    "Verdict",
    "camouflage_verdict",
    "combine",
    "combine_all",
    "decide",
    "derive_recommendation",
    "estimated_trust",
    "ground_truth_trust",
    "ingest_epinions",
    "mae",
    "mass_from_recommendation",
    "run_round",
    "run_scenario",
    "self_assess",
    "sybil_expand",
    "synthesize_population",
    "train_tree",
    "whitewash_maybe_reset",
]
