"""Multi-iteration attack scenarios over a synthetic or ingested population.

A scenario builds a population of advisors (a configured fraction of them
attack principals), then runs ``n_iterations`` passes in which the
recommending system asks every live identity about every evaluation item,
aggregates, decides, and settles the ledgers. The per-item error of the
estimated trust against ground truth is recorded both in the per-consulted
form (absolute error divided by the number of responders) and as the plain
absolute error; reports carry the two side by side since they answer
different questions.

Everything is a pure function of the scenario config: one seed drives data
synthesis, attacker placement and fold shuffling, so identical configs yield
byte-identical outputs.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .adversary import (
    AttackKind,
    BehaviorProfile,
    HONEST_PROFILE,
    camouflage_responder,
    inverting_responder,
    mark_attackers,
    sybil_expand,
    whitewash_maybe_reset,
)
from .advisor import (
    AdvisorDataset,
    AdvisorState,
    InteractionRecord,
    build_advisor,
    honest_responder,
)
from .core import AgentId, IdentityIssuer, Probability, Verdict
from .credibility import CredibilityLedger
from .engine import RecommendationRequest, Responder, run_round
from .epinions import EpinionsData, ingest_epinions
from .incentives import InquiryLedger

ATTACK_KINDS = ("none", "sybil", "camouflage", "whitewashing")


class ConfigError(ValueError):
    """A scenario configuration value is unusable; ``key`` names the culprit."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class ScenarioConfig:
    """Everything a scenario run depends on. ``seed`` is mandatory."""

    seed: int
    n_advisors: int = 20
    attacker_fraction: float = 0.3
    attack_kind: str = "none"
    sybil_count: int = 4
    switch_iteration: int = 5
    reset_period: int = 3
    n_items: int = 10
    n_iterations: int = 10
    participation_threshold: float = 0.7
    max_depth: int = 8
    min_leaf: int = 2
    k_folds: int = 10
    initial_credibility: float = 0.5
    # None = ample enough that the system's own polling never starves
    # mid-run; set explicitly to study budget exhaustion.
    initial_budget: int | None = None
    period_length: int = 1
    noise: float = 0.1
    records_per_advisor: int = 60
    n_features: int = 4
    ratings_path: str | None = None
    trust_path: str | None = None

    def validate(self) -> None:
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed", "an integer seed is required")
        if self.attack_kind not in ATTACK_KINDS:
            raise ConfigError(
                "attack", f"must be one of {'|'.join(ATTACK_KINDS)}, got {self.attack_kind!r}"
            )
        if not 0.0 <= self.attacker_fraction <= 1.0:
            raise ConfigError("attacker_fraction", "must lie in [0, 1]")
        for key in (
            "n_advisors",
            "sybil_count",
            "switch_iteration",
            "reset_period",
            "n_items",
            "n_iterations",
            "k_folds",
            "period_length",
            "max_depth",
            "min_leaf",
            "records_per_advisor",
            "n_features",
        ):
            if getattr(self, key) < 1:
                raise ConfigError(key, "must be at least 1")
        if not 0.0 <= self.participation_threshold <= 1.0:
            raise ConfigError("participation_threshold", "must lie in [0, 1]")
        if not 0.0 <= self.initial_credibility <= 1.0:
            raise ConfigError("initial_credibility", "must lie in [0, 1]")
        if not 0.0 <= self.noise < 0.5:
            raise ConfigError("noise", "must lie in [0, 0.5)")
        if self.initial_budget is not None and self.initial_budget < 0:
            raise ConfigError("initial_budget", "must be nonnegative")

    def effective_budget(self) -> int:
        if self.initial_budget is not None:
            return self.initial_budget
        return self.n_items * self.n_iterations

    def as_dict(self) -> dict:
        return asdict(self)


def ground_truth_trust(ratings: Sequence[int]) -> Probability:
    """Actual trust of an item: the fraction of its ratings at 4 or above."""
    if not ratings:
        raise ValueError("an item with no ratings has no ground truth")
    return Probability(sum(1 for r in ratings if r >= 4) / len(ratings))


def mae(actual: float, estimated: float, n_advisors_consulted: int) -> float:
    """Per-consulted error: absolute difference divided by responder count."""
    if n_advisors_consulted < 1:
        raise ValueError("at least one consulted advisor is required")
    return abs(float(actual) - float(estimated)) / n_advisors_consulted


@dataclass(frozen=True)
class ItemSpec:
    """An evaluation subject: its feature vector and ground-truth trust."""

    features: tuple[float, ...]
    ground_truth: float


def synthesize_population(
    seed: int,
    n_advisors: int,
    n_items: int,
    noise: float,
    n_features: int = 4,
    records_per_advisor: int = 60,
    raters_per_item: int = 12,
) -> tuple[list[AdvisorDataset], list[ItemSpec]]:
    """Generate a desk-scale population with a known latent structure.

    Each record/item has a latent good-or-bad class; class-1 feature values
    land in [0.55, 0.95] and class-0 in [0.05, 0.45], so the classes are
    axis-separable at 0.5 on every dimension. Labels flip with probability
    ``noise``, which also drives dissatisfied ratings of good items (and vice
    versa), so at noise 0 every honest advisor can reach perfect accuracy.
    """
    if not 0.0 <= noise < 0.5:
        raise ValueError("noise must lie in [0, 0.5)")
    rng = np.random.default_rng(seed)
    schema = tuple(f"f{i}" for i in range(n_features))

    def feature_vector(good: bool) -> tuple[float, ...]:
        low = 0.55 if good else 0.05
        return tuple(float(v) for v in rng.uniform(low, low + 0.4, n_features))

    datasets = []
    for _ in range(n_advisors):
        records = []
        for _ in range(records_per_advisor):
            good = bool(rng.random() < 0.5)
            observed = good if rng.random() >= noise else not good
            records.append(
                InteractionRecord(
                    feature_vector(good),
                    Verdict.TRUSTWORTHY if observed else Verdict.UNTRUSTWORTHY,
                )
            )
        datasets.append(AdvisorDataset(schema, records))

    items = []
    for _ in range(n_items):
        good = bool(rng.random() < 0.5)
        ratings = []
        for _ in range(raters_per_item):
            satisfied = good if rng.random() >= noise else not good
            ratings.append(int(rng.integers(4, 6)) if satisfied else int(rng.integers(1, 4)))
        items.append(ItemSpec(feature_vector(good), float(ground_truth_trust(ratings))))
    return datasets, items


def population_from_ratings(
    data: EpinionsData, n_advisors: int, n_items: int
) -> tuple[list[AdvisorDataset], list[ItemSpec]]:
    """Pick the best-covered users and items from ingested ratings."""
    users = sorted(data.datasets, key=lambda u: (-len(data.datasets[u]), u))
    usable = [u for u in users if len(data.datasets[u]) >= 2]
    if len(usable) < n_advisors:
        raise ConfigError(
            "advisors", f"ratings file offers {len(usable)} usable users, need {n_advisors}"
        )
    items = sorted(
        data.item_features, key=lambda i: (-data.item_features[i][1], i)
    )
    if len(items) < n_items:
        raise ConfigError(
            "items", f"ratings file offers {len(items)} items, need {n_items}"
        )
    datasets = [data.datasets[u] for u in usable[:n_advisors]]
    specs = [
        ItemSpec(data.item_features[i], data.item_truth[i]) for i in items[:n_items]
    ]
    return datasets, specs


@dataclass
class SimAgent:
    """Simulator-side bundle: the advisor plus its (hidden) behavior."""

    state: AdvisorState
    profile: BehaviorProfile
    principal: AgentId

    @property
    def is_attacker(self) -> bool:
        return self.profile.kind is not AttackKind.HONEST


@dataclass
class ScenarioResult:
    """Everything one scenario run produced."""

    config: ScenarioConfig
    per_iteration_mae: list[tuple[int, float]]
    per_item_mae: np.ndarray
    per_item_error: np.ndarray
    summary: tuple[float, float]
    summary_plain: tuple[float, float]
    credibility_trajectories: dict[AgentId, list[float]]
    attacker_credibility: list[float]
    honest_credibility: list[float]
    skipped_cells: int
    retired_identities: list[AgentId] = field(default_factory=list)
    final_identities: list[AgentId] = field(default_factory=list)
    credibility_ledger: CredibilityLedger | None = None
    inquiry_ledger: InquiryLedger | None = None


def _profile_for(kind: AttackKind, config: ScenarioConfig) -> BehaviorProfile:
    if kind is AttackKind.SYBIL:
        return BehaviorProfile(kind, fake_identity_count=config.sybil_count)
    if kind is AttackKind.CAMOUFLAGE:
        return BehaviorProfile(kind, switch_iteration=config.switch_iteration)
    if kind is AttackKind.WHITEWASHING:
        return BehaviorProfile(kind, reset_period=config.reset_period)
    return HONEST_PROFILE


def _responder_for(agent: SimAgent, iteration: int) -> Responder:
    kind = agent.profile.kind
    if kind is AttackKind.HONEST:
        return honest_responder(agent.state)
    if kind is AttackKind.CAMOUFLAGE:
        return camouflage_responder(
            agent.state, agent.profile.switch_iteration, iteration
        )
    return inverting_responder(agent.state)


def _nanmean(values: list[float]) -> float:
    usable = [v for v in values if not math.isnan(v)]
    if not usable:
        return math.nan
    return sum(usable) / len(usable)


def _annotated_trace(trace: Callable[[dict], None], iteration: int, item: int):
    def emit(record: dict) -> None:
        trace({"iteration": iteration, "item": item, **record})

    return emit


def run_scenario(
    config: ScenarioConfig, trace: Callable[[dict], None] | None = None
) -> ScenarioResult:
    """Run one full scenario; deterministic given the config.

    ``trace`` (if given) receives one record per round, annotated with the
    iteration and item indices.
    """
    config.validate()
    kind = AttackKind(config.attack_kind)
    rng = random.Random(config.seed)
    issuer = IdentityIssuer()
    system = issuer.fresh()

    if config.ratings_path:
        data = ingest_epinions(config.ratings_path, config.trust_path)
        datasets, item_specs = population_from_ratings(
            data, config.n_advisors, config.n_items
        )
    else:
        datasets, item_specs = synthesize_population(
            config.seed,
            config.n_advisors,
            config.n_items,
            config.noise,
            n_features=config.n_features,
            records_per_advisor=config.records_per_advisor,
        )

    item_ids = [issuer.fresh() for _ in item_specs]

    attacker_indices = (
        mark_attackers(config.n_advisors, config.attacker_fraction, rng)
        if kind is not AttackKind.HONEST
        else set()
    )
    agents: list[SimAgent] = []
    for index, dataset in enumerate(datasets):
        identity = issuer.fresh()
        state = build_advisor(
            identity,
            dataset,
            k=config.k_folds,
            threshold=config.participation_threshold,
            seed=rng.randrange(2**32),
            max_depth=config.max_depth,
            min_leaf=config.min_leaf,
        )
        profile = _profile_for(kind, config) if index in attacker_indices else HONEST_PROFILE
        agents.append(SimAgent(state, profile, principal=identity))

    if kind is AttackKind.SYBIL:
        for agent in [a for a in agents if a.is_attacker]:
            for fake in sybil_expand(agent.state, config.sybil_count, issuer):
                agents.append(SimAgent(fake, agent.profile, principal=agent.principal))

    credibility = CredibilityLedger(config.initial_credibility)
    inquiries = InquiryLedger(config.effective_budget(), config.period_length)

    n_items, n_iters = len(item_specs), config.n_iterations
    per_item_mae = np.full((n_items, n_iters), np.nan)
    per_item_error = np.full((n_items, n_iters), np.nan)
    trajectories: dict[AgentId, list[float]] = {}
    attacker_series: list[float] = []
    honest_series: list[float] = []
    retired: list[AgentId] = []
    skipped = 0

    for iteration in range(1, n_iters + 1):
        if kind is AttackKind.WHITEWASHING:
            for agent in agents:
                if not agent.is_attacker:
                    continue
                old = agent.state.identity
                agent.state = whitewash_maybe_reset(
                    agent.state, iteration, config.reset_period, issuer
                )
                if agent.state.identity != old:
                    credibility.drop(old)
                    inquiries.drop_agent(old)
                    retired.append(old)

        population = {
            agent.state.identity: _responder_for(agent, iteration) for agent in agents
        }
        eligible = tuple(agent.state.identity for agent in agents)

        for item_index, (spec, item_id) in enumerate(zip(item_specs, item_ids)):
            item_trace = None
            if trace is not None:
                item_trace = _annotated_trace(trace, iteration, item_index)
            request = RecommendationRequest(system, item_id, spec.features, eligible)
            outcome = run_round(request, population, credibility, inquiries, item_trace)
            if outcome.responders:
                error = abs(spec.ground_truth - float(outcome.estimated_trust))
                per_item_error[item_index, iteration - 1] = error
                per_item_mae[item_index, iteration - 1] = mae(
                    spec.ground_truth, outcome.estimated_trust, len(outcome.responders)
                )
            else:
                skipped += 1

        if iteration % config.period_length == 0:
            inquiries.replenish(
                credibility.as_map(), default_credibility=config.initial_credibility
            )

        live = {agent.state.identity for agent in agents}
        for identity in live:
            if identity not in trajectories:
                trajectories[identity] = [math.nan] * (iteration - 1)
        for identity, series in trajectories.items():
            series.append(float(credibility.get(identity)) if identity in live else math.nan)
        attacker_series.append(
            _nanmean(
                [float(credibility.get(a.state.identity)) for a in agents if a.is_attacker]
            )
        )
        honest_series.append(
            _nanmean(
                [
                    float(credibility.get(a.state.identity))
                    for a in agents
                    if not a.is_attacker
                ]
            )
        )

    per_iteration = [
        (t + 1, float(np.nanmean(per_item_mae[:, t])) if not np.all(np.isnan(per_item_mae[:, t])) else math.nan)
        for t in range(n_iters)
    ]
    cells = per_item_mae[~np.isnan(per_item_mae)]
    plain = per_item_error[~np.isnan(per_item_error)]
    summary = (float(cells.mean()), float(cells.std())) if cells.size else (math.nan, math.nan)
    summary_plain = (
        (float(plain.mean()), float(plain.std())) if plain.size else (math.nan, math.nan)
    )
    return ScenarioResult(
        config=config,
        per_iteration_mae=per_iteration,
        per_item_mae=per_item_mae,
        per_item_error=per_item_error,
        summary=summary,
        summary_plain=summary_plain,
        credibility_trajectories=trajectories,
        attacker_credibility=attacker_series,
        honest_credibility=honest_series,
        skipped_cells=skipped,
        retired_identities=retired,
        final_identities=[agent.state.identity for agent in agents],
        credibility_ledger=credibility,
        inquiry_ledger=inquiries,
    )


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return format(value, ".10g")


def write_outputs(result: ScenarioResult, out_dir: str | Path) -> None:
    """Write the summary table, plotting series, and machine-readable summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = result.config

    header = (
        "# attack  seed  mae_mean  mae_std  mae_plain_mean  mae_plain_std  cells  skipped"
    )
    row = "  ".join(
        [
            config.attack_kind,
            str(config.seed),
            _fmt(result.summary[0]),
            _fmt(result.summary[1]),
            _fmt(result.summary_plain[0]),
            _fmt(result.summary_plain[1]),
            str(int(result.per_item_mae.size - result.skipped_cells)),
            str(result.skipped_cells),
        ]
    )
    (out / "summary.txt").write_text(header + "\n" + row + "\n")

    (out / "summary.json").write_text(
        json.dumps(
            {
                "attack": config.attack_kind,
                "seed": config.seed,
                "mae_mean": result.summary[0],
                "mae_std": result.summary[1],
                "mae_plain_mean": result.summary_plain[0],
                "mae_plain_std": result.summary_plain[1],
                "cells": int(result.per_item_mae.size - result.skipped_cells),
                "skipped": result.skipped_cells,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )

    series_lines = ["iteration,mean_mae,mean_attacker_credibility,mean_honest_credibility"]
    for (iteration, value), attacker, honest in zip(
        result.per_iteration_mae, result.attacker_credibility, result.honest_credibility
    ):
        series_lines.append(
            f"{iteration},{_fmt(value)},{_fmt(attacker)},{_fmt(honest)}"
        )
    (out / "series.csv").write_text("\n".join(series_lines) + "\n")

    matrix_lines = [
        "item," + ",".join(f"iter_{t + 1}" for t in range(result.per_item_mae.shape[1]))
    ]
    for index in range(result.per_item_mae.shape[0]):
        cells = ",".join(_fmt(v) for v in result.per_item_mae[index])
        matrix_lines.append(f"{index},{cells}")
    (out / "per_item_mae.csv").write_text("\n".join(matrix_lines) + "\n")

    (out / "config.json").write_text(
        json.dumps(config.as_dict(), indent=2, sort_keys=True) + "\n"
    )

    if result.credibility_ledger is not None:
        result.credibility_ledger.save(out / "credibility.tsv")
    if result.inquiry_ledger is not None:
        result.inquiry_ledger.save(out / "inquiries.tsv")
