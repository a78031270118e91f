"""Existence regions: how far in the coupling d a pattern survives.

Each pattern (word) exists on a parameter set that contains a vertical
segment {a} x [0, d_max(a)) for every threshold a it exists at when
decoupled. d_max() measures that height by continuation from d = 0:
march upward in d, halve the step on failure, and once the step floor is
reached refine the resulting bracket by bisection, always correcting
from the last accepted state. The reported height is the top of the last
accepted step, certified to within the bracket width.

The march drives exactly the step-acceptance rule of gde.solve_type
(Newton correction with the corrector-jump and homogeneous-capture
rejections; see gde._attempt), so membership() and d_max() agree about
whether a pattern exists at a point. The only difference is the goal:
solve_type aims at one requested d and additionally bookkeeps stability,
the march brackets the supremum.

The terminal tag says why the march stopped:

* DMAX_CAP    - reached the requested cap, still alive;
* FOLD        - the Jacobian determinant collapsed while approaching the
                bracket (the branch turns around; certificate = ratio of
                |det J| at the last accepted point to its d = 0 value);
* STEP_FLOOR  - the march died without det collapse (a solver artifact,
                not a certified fold).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from . import gde
from .gde import ContinuationConfig, Params
from .words import Word, permute_values, reflect, rotate

DEFAULT_D_CAP = 0.5
DEFAULT_REFINE_WIDTH = 1e-10


class Terminal(Enum):
    FOLD = "fold"
    DMAX_CAP = "dmax_cap"
    STEP_FLOOR = "step_floor"


@dataclass(frozen=True)
class BoundarySample:
    a: float
    d_max: float
    terminal: Terminal
    det_ratio: float


@dataclass
class RegionBoundary:
    word: Word
    d_cap: float
    samples: list[BoundarySample]


def _trace_ray(
    word: Word,
    a: float,
    cfg: ContinuationConfig,
    d_cap: float,
    refine_width: float,
) -> BoundarySample:
    if not (0.0 < a < 1.0):
        raise ValueError(f"threshold a must lie strictly in (0, 1), got {a}")
    if d_cap <= 0 or not math.isfinite(d_cap):
        raise ValueError(f"d_cap must be finite and positive, got {d_cap}")
    if refine_width <= 0:
        raise ValueError("refine_width must be positive")
    if len(word) < 2:
        raise ValueError("dynamics need words of length at least 2")

    u = gde.decoupled_state(word, a)
    _, logdet0 = gde._det_state(u, Params(a, 0.0))
    heterogeneous = len(set(word.letters)) > 1
    collapse = logdet0 + math.log(cfg.det_guard) if heterogeneous else None

    def attempt(u_from, d_try):
        return gde._attempt(u_from, Params(a, d_try), cfg, collapse)

    d_ok = 0.0
    logdet_ok = logdet0
    d_fail = None
    step = cfg.d_step_init

    while True:
        if d_ok >= d_cap:
            ratio = math.exp(logdet_ok - logdet0)
            return BoundarySample(a, d_ok, Terminal.DMAX_CAP, ratio)
        d_try = min(d_ok + step, d_cap)
        accepted = attempt(u, d_try)
        if accepted is not None:
            u, _, logdet_ok = accepted
            d_ok = d_try
        else:
            d_fail = d_try
            step *= cfg.step_shrink
            if step < cfg.d_step_min:
                break

    while d_fail - d_ok > refine_width:
        mid = 0.5 * (d_ok + d_fail)
        accepted = attempt(u, mid)
        if accepted is not None:
            u, _, logdet_ok = accepted
            d_ok = mid
        else:
            d_fail = mid

    ratio = math.exp(logdet_ok - logdet0)
    terminal = Terminal.FOLD if ratio <= cfg.det_guard else Terminal.STEP_FLOOR
    return BoundarySample(a, d_ok, terminal, ratio)


def d_max(
    word: Word,
    a: float,
    cfg: Optional[ContinuationConfig] = None,
    d_cap: float = DEFAULT_D_CAP,
    refine_width: float = DEFAULT_REFINE_WIDTH,
) -> tuple[float, Terminal]:
    """Height of the existence region of the pattern above threshold a.

    Returns (d_max, terminal); the measured height is exact to within
    refine_width when the terminal is a fold.
    """
    sample = _trace_ray(word, a, cfg or gde.DEFAULT_CONFIG, d_cap, refine_width)
    return sample.d_max, sample.terminal


def membership(word: Word, p: Params, cfg: Optional[ContinuationConfig] = None) -> bool:
    """Whether the pattern exists at p, decided by continuation from d = 0."""
    try:
        gde.solve_type(word, p, cfg)
    except gde.SolveError:
        return False
    return True


def _worker_count(requested: Optional[int], njobs: int) -> int:
    if requested is None:
        env = os.environ.get("NAGUMO_ATLAS_THREADS")
        if env is not None:
            try:
                requested = int(env)
            except ValueError:
                raise ValueError(
                    f"NAGUMO_ATLAS_THREADS must be a positive integer, got {env!r}"
                ) from None
        else:
            requested = os.cpu_count() or 1
    if requested < 1:
        raise ValueError(f"worker count must be positive, got {requested}")
    return min(requested, njobs)


def _ray_task(args) -> BoundarySample:
    word, a, cfg, d_cap, refine_width = args
    return _trace_ray(word, a, cfg, d_cap, refine_width)


def scan_region(
    word: Word,
    a_grid: Sequence[float],
    cfg: Optional[ContinuationConfig] = None,
    d_cap: float = DEFAULT_D_CAP,
    refine_width: float = DEFAULT_REFINE_WIDTH,
    workers: Optional[int] = None,
) -> RegionBoundary:
    """Trace d_max over a strictly increasing grid of thresholds.

    Worker count defaults to NAGUMO_ATLAS_THREADS, else the core count;
    results are ordered by the grid regardless of scheduling.
    """
    cfg = cfg or gde.DEFAULT_CONFIG
    grid = [float(a) for a in a_grid]
    if not grid:
        raise ValueError("the threshold grid is empty")
    if any(not (0.0 < a < 1.0) for a in grid):
        raise ValueError("thresholds must lie strictly in (0, 1)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("the threshold grid must be strictly increasing")
    nworkers = _worker_count(workers, len(grid))
    tasks = [(word, a, cfg, d_cap, refine_width) for a in grid]
    if nworkers == 1:
        samples = [_ray_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            samples = list(pool.map(_ray_task, tasks, chunksize=8))
    return RegionBoundary(word=word, d_cap=d_cap, samples=samples)


@dataclass
class SymmetryReport:
    """Largest |d_max difference| seen for each generator of the symmetries."""

    word: Word
    rotation_dev: float
    reflection_dev: float
    mirror_dev: float

    @property
    def max_dev(self) -> float:
        return max(self.rotation_dev, self.reflection_dev, self.mirror_dev)


def verify_region_symmetries(
    word: Word,
    a_grid: Sequence[float],
    cfg: Optional[ContinuationConfig] = None,
    d_cap: float = DEFAULT_D_CAP,
) -> SymmetryReport:
    """Check that region height is blind to rotation and reflection of the
    word, and maps a -> 1-a under the value swap."""
    cfg = cfg or gde.DEFAULT_CONFIG
    rot_word = rotate(word)
    refl_word = reflect(word)
    swap_word = permute_values(word)
    rot_dev = refl_dev = mir_dev = 0.0
    for a in a_grid:
        base, _ = d_max(word, a, cfg, d_cap)
        rot, _ = d_max(rot_word, a, cfg, d_cap)
        refl, _ = d_max(refl_word, a, cfg, d_cap)
        mir, _ = d_max(swap_word, 1.0 - a, cfg, d_cap)
        rot_dev = max(rot_dev, abs(rot - base))
        refl_dev = max(refl_dev, abs(refl - base))
        mir_dev = max(mir_dev, abs(mir - base))
    return SymmetryReport(
        word=word,
        rotation_dev=rot_dev,
        reflection_dev=refl_dev,
        mirror_dev=mir_dev,
    )
