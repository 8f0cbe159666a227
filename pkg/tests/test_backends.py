"""The compiled split kernel must be a bit-exact twin of the pure one."""

import os
import subprocess
import sys

import numpy as np
import pytest

from trustsim import _splitpy
from trustsim import tree

try:
    from trustsim import _splitc
except ImportError:
    _splitc = None

needs_compiled = pytest.mark.skipif(_splitc is None, reason="compiled kernel not built")


def random_problem(rng, n, d, informative=True):
    X = np.ascontiguousarray(rng.random((n, d)))
    if informative:
        y = (X[:, rng.integers(0, d)] + 0.2 * rng.standard_normal(n) > 0.5)
    else:
        y = rng.random(n) < 0.5
    return X, np.ascontiguousarray(y.astype(np.uint8))


def test_pure_backend_importable():
    assert _splitpy.BACKEND == "python"
    assert tree.SPLIT_BACKEND in ("python", "compiled")


@needs_compiled
def test_kernels_agree_bitwise_on_random_problems():
    rng = np.random.default_rng(77)
    for _ in range(200):
        n = int(rng.integers(2, 80))
        d = int(rng.integers(1, 6))
        X, y = random_problem(rng, n, d, informative=bool(rng.integers(0, 2)))
        min_leaf = int(rng.integers(1, 4))
        assert _splitc.best_split(X, y, min_leaf) == _splitpy.best_split(X, y, min_leaf)


@needs_compiled
def test_kernels_agree_with_duplicated_values():
    rng = np.random.default_rng(3)
    X = np.ascontiguousarray(np.round(rng.random((60, 3)), 1))
    y = np.ascontiguousarray((rng.random(60) < 0.4).astype(np.uint8))
    assert _splitc.best_split(X, y, 2) == _splitpy.best_split(X, y, 2)


@needs_compiled
def test_trees_identical_across_backends():
    rng = np.random.default_rng(11)
    for _ in range(20):
        X, y = random_problem(rng, 50, 4)
        compiled = tree.fit(X, y, backend=_splitc)
        pure = tree.fit(X, y, backend=_splitpy)
        assert compiled == pure


@needs_compiled
def test_scenario_outputs_identical_across_backends(tmp_path):
    # whichever kernel import selects, a scenario must produce the same bytes
    args = [
        sys.executable, "-m", "trustsim", "simulate",
        "--attack", "sybil", "--seed", "19",
        "--advisors", "8", "--items", "4", "--iterations", "4",
        "--records-per-advisor", "30",
    ]
    compiled_dir, pure_dir = tmp_path / "compiled", tmp_path / "pure"
    pure_env = {**os.environ, "TRUSTSIM_PURE_PYTHON": "1"}
    compiled_env = {k: v for k, v in os.environ.items() if k != "TRUSTSIM_PURE_PYTHON"}
    subprocess.run(args + ["--out", str(compiled_dir)], check=True, env=compiled_env)
    subprocess.run(args + ["--out", str(pure_dir)], check=True, env=pure_env)
    for name in ("summary.txt", "series.csv", "per_item_mae.csv", "trace.jsonl"):
        assert (compiled_dir / name).read_bytes() == (pure_dir / name).read_bytes(), name
