"""Stationary states of the Nagumo equation on an n-cycle.

The system solved here is

    0 = d * (u[i-1] - 2 u[i] + u[i+1]) + f(u[i]; a),   i mod n,

with the bistable cubic f(s; a) = s (1 - s) (s - a), 0 < a < 1, and
coupling strength d >= 0. Indices wrap, so for n = 2 each vertex sees its
single neighbour twice and the effective coupling is 2d(u[j] - u[i]);
the wraparound arithmetic produces that doubled edge on its own.

At d = 0 the sites decouple and every assignment of the roots {0, a, 1}
is an equilibrium, named by a word over {0, a, 1}. solve_type() follows
the branch rooted at a word from d = 0 to a requested d by natural
continuation: no fancy arclength, just small steps in d, Newton
correction, and step halving on failure. The branch ends at a fold,
where Newton stops converging to anything nearby; solve_type then
raises NotInRegion carrying the depth reached. Two subtleties guard the
march. The Jacobian determinant may cross zero at an interior point of
a perfectly healthy branch (a secondary bifurcation sits on it, which
happens for the two-site pattern 01 at a = 1/2); the march steps across
such crossings, and the det_sign recorded on the returned equilibrium
is the sign at the requested d. And when the branch folds against a
constant pattern, the constant branch survives the fold and Newton
slides onto it; a nearly-constant corrected state with a collapsed
determinant is rejected as capture rather than accepted as survival.

The regions module measures how far in d each pattern survives by
driving the same step-acceptance rule upward until it fails, so
membership there and solve_type here always agree.

Stability is decided twice at every accepted equilibrium: from the
letters (a word is stable iff it avoids the middle root a) and from the
Jacobian spectrum (symmetric, so eigvalsh). Disagreement raises
StabilityMismatch rather than silently trusting either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .words import MID, ONE, ZERO, Word

# iterates leaving [-0.5, 1.5]^n have left every basin of interest
_BOX_LO = -0.5
_BOX_HI = 1.5
# reject a continuation step whose corrected point jumps this far from the
# predictor; catches silent hops onto a sibling branch near a fold
_MAX_CORRECTOR_JUMP = 0.25
# a corrected state whose sites have spread this close to constant, with the
# determinant already collapsed below cfg.det_guard, is the corrector gliding
# onto a homogeneous survivor of a fold; biases a fold-against-constant
# measurement by at most (spread/4)^2 ~ 1e-7 in d
_HOMOG_SPREAD = 1e-3


class SolveError(Exception):
    """Base class for solver failures."""


class MaxIters(SolveError):
    pass


class SingularJacobian(SolveError):
    pass


class DivergedOutOfBox(SolveError):
    pass


class StabilityMismatch(SolveError):
    pass


class NotInRegion(SolveError):
    """The branch of the requested pattern ends before the requested d."""

    def __init__(self, word: Word, params: "Params", d_reached: float):
        super().__init__(
            f"pattern {word} at a={params.a} stops near d={d_reached:.6g}, "
            f"short of requested d={params.d:.6g}"
        )
        self.word = word
        self.params = params
        self.d_reached = d_reached


@dataclass(frozen=True)
class Params:
    """Nonlinearity threshold a and coupling strength d."""

    a: float
    d: float

    def __post_init__(self):
        if not (0.0 < self.a < 1.0) or not math.isfinite(self.a):
            raise ValueError(f"threshold a must lie strictly in (0, 1), got {self.a}")
        if self.d < 0.0 or not math.isfinite(self.d):
            raise ValueError(f"coupling d must be finite and >= 0, got {self.d}")


@dataclass(frozen=True)
class ContinuationConfig:
    """Continuation knobs. det_guard is the |det J| level, relative to the
    d = 0 value, below which a state counts as fold-proximate; it feeds
    the capture rejection in _attempt and the FOLD certificates in the
    regions module (multiple eigenvalues can vanish together at symmetric
    folds, so this is a declaration level, not a rejection floor)."""

    newton_tol: float = 1e-12
    max_newton_iters: int = 25
    d_step_init: float = 1e-3
    d_step_min: float = 1e-10
    step_shrink: float = 0.5
    det_guard: float = 1e-2

    def __post_init__(self):
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be at least 1")
        if not (0 < self.d_step_min <= self.d_step_init):
            raise ValueError("need 0 < d_step_min <= d_step_init")
        if not (0 < self.step_shrink < 1):
            raise ValueError("step_shrink must lie in (0, 1)")
        if not (0 < self.det_guard < 1):
            raise ValueError("det_guard must lie in (0, 1)")


DEFAULT_CONFIG = ContinuationConfig()


@dataclass(eq=False)
class Equilibrium:
    word: Optional[Word]
    u: np.ndarray
    params: Params
    det_sign: int
    stable: bool
    residual_norm: float


def cubic(s, a: float):
    """Bistable nonlinearity s(1-s)(s-a); roots 0 and 1 stable, a unstable."""
    return s * (1.0 - s) * (s - a)


def cubic_deriv(s, a: float):
    """d/ds of cubic(s, a)."""
    return (-3.0 * s + 2.0 * (1.0 + a)) * s - a


def residual(u, p: Params) -> np.ndarray:
    """Right-hand side of the stationary system at state u."""
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("state must be a 1-d array with at least two sites")
    return p.d * (np.roll(u, 1) - 2.0 * u + np.roll(u, -1)) + cubic(u, p.a)


def jacobian(u, p: Params) -> np.ndarray:
    """Derivative of residual(); cyclic tridiagonal and symmetric.

    Built by accumulating d once per incident edge, so the n = 2 cycle
    (a doubled edge) gets off-diagonal entries 2d without special-casing.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("state must be a 1-d array with at least two sites")
    n = u.size
    J = np.zeros((n, n))
    idx = np.arange(n)
    J[idx, idx] = cubic_deriv(u, p.a) - 2.0 * p.d
    np.add.at(J, (idx, (idx + 1) % n), p.d)
    np.add.at(J, (idx, (idx - 1) % n), p.d)
    return J


def decoupled_state(word: Word, a: float) -> np.ndarray:
    """The exact d = 0 equilibrium named by the word: 0 -> 0, a -> a, 1 -> 1."""
    values = {ZERO: 0.0, MID: a, ONE: 1.0}
    return np.array([values[x] for x in word.letters], dtype=float)


def _newton_core(u: np.ndarray, p: Params, cfg: ContinuationConfig):
    """Newton iteration from u; returns (root, residual max-norm) or raises."""
    for it in range(cfg.max_newton_iters + 1):
        r = residual(u, p)
        rmax = float(np.max(np.abs(r)))
        if rmax <= cfg.newton_tol:
            return u, rmax
        if it == cfg.max_newton_iters:
            raise MaxIters(f"no convergence in {cfg.max_newton_iters} iterations")
        J = jacobian(u, p)
        try:
            du = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            raise SingularJacobian("Jacobian is singular at a Newton iterate") from None
        u = u + du
        if float(np.max(np.abs(u - 0.5))) > 1.0:
            raise DivergedOutOfBox(f"iterate left [{_BOX_LO}, {_BOX_HI}]")
    raise AssertionError("unreachable")


def _det_state(u: np.ndarray, p: Params) -> tuple[float, float]:
    """(sign, log|det|) of the Jacobian; sign 0 raises."""
    sign, logdet = np.linalg.slogdet(jacobian(u, p))
    if sign == 0.0 or not math.isfinite(logdet):
        raise SingularJacobian("Jacobian determinant vanished")
    return float(sign), float(logdet)


def _build_equilibrium(
    word: Optional[Word],
    u: np.ndarray,
    p: Params,
    det_flip_seen: bool = False,
) -> Equilibrium:
    """Assemble an Equilibrium at state u, cross-checking stability.

    The stable flag always reports the spectrum. The letters predict it
    too (a word is stable iff it avoids the middle root), but only while
    no Jacobian eigenvalue has crossed zero since d = 0. A continuation
    that watched the determinant change sign between accepted steps has
    witnessed such a crossing and passes det_flip_seen; the spectrum then
    simply wins. Without that witness a disagreement means the state does
    not belong to the claimed pattern, which is an error.
    """
    rmax = float(np.max(np.abs(residual(u, p))))
    sign, _ = _det_state(u, p)
    eigs = np.linalg.eigvalsh(jacobian(u, p))
    eig_stable = bool(eigs[-1] < 0.0)
    if word is not None and not det_flip_seen:
        word_stable = MID not in word.letters
        if word_stable != eig_stable:
            raise StabilityMismatch(
                f"letters of {word} predict stable={word_stable} but the "
                f"spectrum says stable={eig_stable} at a={p.a}, d={p.d}, "
                f"with no determinant sign change to account for it"
            )
    return Equilibrium(
        word=word,
        u=u,
        params=p,
        det_sign=int(sign),
        stable=eig_stable,
        residual_norm=rmax,
    )


def newton_solve(
    u0,
    p: Params,
    cfg: Optional[ContinuationConfig] = None,
    word: Optional[Word] = None,
) -> Equilibrium:
    """Newton's method from the initial guess u0; no continuation involved."""
    cfg = cfg or DEFAULT_CONFIG
    u = np.array(u0, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("initial guess must be a 1-d array with at least two sites")
    if not np.all(np.isfinite(u)):
        raise ValueError("initial guess must be finite")
    u, _ = _newton_core(u, p, cfg)
    return _build_equilibrium(word, u, p)


def _attempt(
    u_from: np.ndarray,
    p_to: Params,
    cfg: ContinuationConfig,
    collapse: Optional[float],
) -> Optional[tuple[np.ndarray, float, float]]:
    """One continuation step: correct u_from at p_to.

    Returns (corrected state, det sign, log|det J|) on acceptance, None
    on rejection.
    Rejections: Newton failure, a corrected point jumping further than
    _MAX_CORRECTOR_JUMP from its predictor (a hop onto a distant sibling
    branch), an exactly singular Jacobian, and homogeneous capture. The
    last one needs explaining: at a fold against a constant pattern the
    constant branch survives the fold, so plain Newton correction slides
    onto it and "converges" forever after. A corrected state that is
    nearly constant while |det J| has collapsed below the caller-supplied
    log-threshold (collapse = log|det at d=0| + log(det_guard)) is that
    slide, not the tracked branch. Callers pass collapse = None for
    constant words, whose branch really is the constant one.
    """
    try:
        u_new, _ = _newton_core(u_from, p_to, cfg)
    except SolveError:
        return None
    if float(np.max(np.abs(u_new - u_from))) > _MAX_CORRECTOR_JUMP:
        return None
    try:
        sign, logdet = _det_state(u_new, p_to)
    except SingularJacobian:
        return None
    if (
        collapse is not None
        and logdet < collapse
        and float(u_new.max() - u_new.min()) < _HOMOG_SPREAD
    ):
        return None
    return u_new, sign, logdet


def solve_type(
    word: Word, p: Params, cfg: Optional[ContinuationConfig] = None
) -> Equilibrium:
    """Equilibrium of the type named by the word, at parameters p.

    Continues the branch rooted at the exact d = 0 state of the word.
    Raises NotInRegion if the branch folds before p.d.
    """
    cfg = cfg or DEFAULT_CONFIG
    if len(word) < 2:
        raise ValueError("dynamics need words of length at least 2")
    u = decoupled_state(word, p.a)
    p0 = Params(p.a, 0.0)
    sign_prev, logdet0 = _det_state(u, p0)
    if p.d == 0.0:
        return _build_equilibrium(word, u, p0)
    heterogeneous = len(set(word.letters)) > 1
    collapse = logdet0 + math.log(cfg.det_guard) if heterogeneous else None
    d_cur = 0.0
    step = cfg.d_step_init
    flip_seen = False
    while d_cur < p.d:
        d_try = min(d_cur + step, p.d)
        accepted = _attempt(u, Params(p.a, d_try), cfg, collapse)
        if accepted is not None:
            u, sign, _ = accepted
            flip_seen = flip_seen or sign != sign_prev
            sign_prev = sign
            d_cur = d_try
        else:
            step *= cfg.step_shrink
            if step < cfg.d_step_min:
                raise NotInRegion(word, p, d_reached=d_cur)
    return _build_equilibrium(word, u, p, det_flip_seen=flip_seen)


def lde_residual_check(eq: Equilibrium, window_periods: int = 3) -> float:
    """Max residual of the infinite periodic extension over a window.

    Repeating the cycle state n-periodically gives a candidate stationary
    state of the doubly infinite chain with the same a and d; by
    periodicity, checking window_periods copies with wraparound neighbours
    is exact. Returns the max-norm residual over the window.
    """
    if window_periods < 1:
        raise ValueError("window must cover at least one period")
    ext = np.tile(eq.u, window_periods)
    p = eq.params
    r = p.d * (np.roll(ext, 1) - 2.0 * ext + np.roll(ext, -1)) + cubic(ext, p.a)
    return float(np.max(np.abs(r)))
