"""Ingestion of ratings files in the classic three-column review format.

Input lines are ``user item rating`` (comma- or whitespace-separated) with
integer ratings from 1 to 5. Each user becomes an advisor dataset: one record
per item the user rated, with features computed from how *other* users rated
that item and a label from the user's own satisfaction (4 or above counts as
trustworthy). Item-level ground truth is the fraction of all ratings at 4 or
above. An optional companion file of ``truster trustee value`` statements is
parsed and reported but not otherwise consumed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .advisor import AdvisorDataset, InteractionRecord
from .core import Verdict

#: Feature schema for ratings-derived records, in order.
RATINGS_SCHEMA = ("mean_rating_others", "rating_count", "rating_variance")

#: A user's own rating at or above this counts as a trustworthy interaction.
SATISFACTION_CUTOFF = 4


class IngestError(ValueError):
    """The ratings file is unusable (unreadable, empty, or mostly malformed)."""


@dataclass
class IngestStats:
    users: int = 0
    items: int = 0
    reviews: int = 0
    skipped: int = 0
    trust_statements: int = 0

    def report(self) -> str:
        line = (
            f"{self.users} users, {self.items} items, "
            f"{self.reviews} reviews, {self.skipped} skipped"
        )
        if self.trust_statements:
            line += f", {self.trust_statements} trust statements"
        return line


@dataclass
class EpinionsData:
    datasets: dict[str, AdvisorDataset]
    item_truth: dict[str, float]
    item_features: dict[str, tuple[float, float, float]]
    stats: IngestStats
    trust: list[tuple[str, str, float]] = field(default_factory=list)


def _split_line(line: str) -> list[str]:
    if "," in line:
        return [part.strip() for part in line.split(",")]
    return line.split()


def _parse_ratings(path: str | Path) -> tuple[list[tuple[str, str, int]], int]:
    rows: list[tuple[str, str, int]] = []
    skipped = 0
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IngestError(f"cannot read ratings file {path}: {exc}") from exc
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = _split_line(line)
        if len(parts) != 3:
            skipped += 1
            continue
        user, item, raw_rating = parts
        try:
            rating = int(raw_rating)
        except ValueError:
            skipped += 1
            continue
        if not 1 <= rating <= 5 or not user or not item:
            skipped += 1
            continue
        rows.append((user, item, rating))
    return rows, skipped


def _parse_trust(path: str | Path) -> list[tuple[str, str, float]]:
    statements: list[tuple[str, str, float]] = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IngestError(f"cannot read trust file {path}: {exc}") from exc
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = _split_line(line)
        if len(parts) != 3:
            continue
        try:
            statements.append((parts[0], parts[1], float(parts[2])))
        except ValueError:
            continue
    return statements


def _mean(values: list[int]) -> float:
    return sum(values) / len(values)


def _variance(values: list[int]) -> float:
    mu = _mean(values)
    return sum((v - mu) ** 2 for v in values) / len(values)


def ingest_epinions(
    ratings_path: str | Path,
    trust_path: str | Path | None = None,
    max_skip_ratio: float = 0.1,
) -> EpinionsData:
    """Parse a ratings file into advisor datasets and item ground truths.

    Malformed lines are counted and skipped; when they exceed
    ``max_skip_ratio`` of the non-blank lines the whole ingestion aborts
    rather than silently building on a broken file.
    """
    rows, skipped = _parse_ratings(ratings_path)
    total = len(rows) + skipped
    if total == 0 or not rows:
        raise IngestError(f"{ratings_path}: no usable ratings")
    if skipped / total > max_skip_ratio:
        raise IngestError(
            f"{ratings_path}: {skipped} of {total} lines malformed, aborting"
        )

    by_item: dict[str, list[tuple[str, int]]] = {}
    for user, item, rating in rows:
        by_item.setdefault(item, []).append((user, rating))
    global_mean = _mean([rating for _, _, rating in rows])

    item_truth: dict[str, float] = {}
    item_features: dict[str, tuple[float, float, float]] = {}
    for item, pairs in by_item.items():
        ratings = [rating for _, rating in pairs]
        item_truth[item] = sum(1 for r in ratings if r >= SATISFACTION_CUTOFF) / len(ratings)
        item_features[item] = (_mean(ratings), float(len(ratings)), _variance(ratings))

    datasets: dict[str, AdvisorDataset] = {}
    per_user: dict[str, list[InteractionRecord]] = {}
    for user, item, rating in rows:
        others = [r for (u, r) in by_item[item] if u != user]
        if others:
            features = (_mean(others), float(len(others)), _variance(others))
        else:
            # Imputation for single-rater items: no peers to describe them.
            features = (global_mean, 0.0, 0.0)
        label = Verdict.TRUSTWORTHY if rating >= SATISFACTION_CUTOFF else Verdict.UNTRUSTWORTHY
        per_user.setdefault(user, []).append(InteractionRecord(features, label))
    for user, records in per_user.items():
        datasets[user] = AdvisorDataset(RATINGS_SCHEMA, records)

    trust = _parse_trust(trust_path) if trust_path is not None else []
    stats = IngestStats(
        users=len(datasets),
        items=len(by_item),
        reviews=len(rows),
        skipped=skipped,
        trust_statements=len(trust),
    )
    return EpinionsData(datasets, item_truth, item_features, stats, trust)
