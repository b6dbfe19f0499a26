"""Probabilistic convexity estimation on discretized incomplete domains.

A point x on a geodesic of the completion counts as connectable to p when
x itself carries the open-domain flag and the restricted-to-U graph
distance from p stays within a slack factor of the completion distance.
The slack separates mesh distortion from genuine obstruction: an open set
generally contains no exact minimizer (paths may graze the boundary), so
at discrete resolution "a minimizer survives inside U" means the
restricted length is within slack of optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, ResolutionError, UnreachableError
from .spaces import DiscreteLengthSpace

_Z95 = 1.959963984540054


def _default_slack(space: DiscreteLengthSpace) -> float:
    return 2.0 * space.h_err


@dataclass
class ConvexityReport:
    """Outcome of one convexity estimate along a geodesic or over the domain."""

    probability: float
    samples: int
    connected_measure: float
    total_measure: float
    margin: float
    lambda_hat: float
    epsilon: float
    slack: float
    step: float = 0.0
    series: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise GeometryError("probability must lie in [0, 1]")
        expect = self.probability * self.total_measure
        if abs(self.connected_measure - expect) > 1e-9 * (1.0 + self.total_measure):
            raise GeometryError("connected measure inconsistent with probability")

    def to_dict(self) -> dict:
        out = {
            "probability": self.probability,
            "samples": self.samples,
            "connected_measure": self.connected_measure,
            "total_measure": self.total_measure,
            "margin": self.margin,
            "lambda_hat": self.lambda_hat,
            "epsilon": self.epsilon,
            "slack": self.slack,
            "step": self.step,
            "detail": self.detail,
        }
        if self.series:
            out["series"] = self.series
        return out


def _binomial_margin(p: float, n: int, z: float = _Z95) -> float:
    if n <= 0:
        return 1.0
    return z * math.sqrt(max(p * (1.0 - p), 0.0) / n + 0.25 / (n * n))


def connectable(space: DiscreteLengthSpace, p: int, x: int, slack: float | None = None) -> bool:
    """True when x can be reached from p by a surviving in-domain minimizer.

    Monotone nondecreasing in ``slack``; unreachable (or boundary) targets
    count as False, and p itself as True.
    """
    if slack is None:
        slack = _default_slack(space)
    if not (space.in_U[p] and space.in_U[x]):
        return False
    if p == x:
        return True
    d_rest = float(space.distance_field(p, restrict_to_U=True)[x])
    d_full = float(space.distance_field(p)[x])
    return _connectable_from_fields(d_rest, d_full, slack)


def _connectable_from_fields(d_rest: float, d_full: float, slack: float) -> bool:
    if not math.isfinite(d_rest):
        return False
    return d_rest <= d_full * (1.0 + slack) + 1e-12


def prob_convexity(
    space: DiscreteLengthSpace,
    p: int,
    q: int,
    s: int,
    step: float | None = None,
    slack: float | None = None,
    keep_series: bool = False,
) -> ConvexityReport:
    """Fraction of a fixed completion geodesic [qs] connectable to p.

    Samples the geodesic at arc spacing at most ``step`` (one mesh cell by
    default), counting each sample point by measure.  Deterministic for
    fixed inputs: the geodesic itself is the deterministic shortest-path
    walk.
    """
    if q == s:
        raise GeometryError("probability needs distinct geodesic endpoints")
    if step is None:
        step = space.h if space.h > 0.0 else None
    if step is None or step <= 0.0:
        raise GeometryError("step must be positive (space lacks a mesh size)")
    if slack is None:
        slack = _default_slack(space)
    path = space.shortest_path(q, s, restrict_to_U=False)
    length = path.length
    n_ticks = max(2, int(math.ceil(length / step)) + 1)
    ticks = np.linspace(0.0, length, n_ticks)
    d_rest = space.distance_field(p, restrict_to_U=True)
    d_full = space.distance_field(p)
    flags = []
    arcs = []
    for t in ticks:
        x = path.vertex_at_arc(float(t))
        ok = bool(space.in_U[p]) and bool(space.in_U[x]) and (
            x == p or _connectable_from_fields(float(d_rest[x]), float(d_full[x]), slack)
        )
        flags.append(ok)
        arcs.append(float(t))
    prob = float(np.mean(flags))
    series = {}
    if keep_series:
        series = {"arc_length": arcs, "connectable": [int(b) for b in flags]}
    return ConvexityReport(
        probability=prob,
        samples=n_ticks,
        connected_measure=prob * length,
        total_measure=length,
        margin=_binomial_margin(prob, n_ticks),
        lambda_hat=prob,
        epsilon=0.0,
        slack=slack,
        step=step,
        series=series,
        detail={"p": p, "q": q, "s": s, "geodesic_length": length},
    )


def weak_lambda_search(
    space: DiscreteLengthSpace,
    p: int,
    q: int,
    s: int,
    epsilon: float,
    candidates: int = 64,
    step: float | None = None,
    slack: float | None = None,
    seed: int = 0,
) -> ConvexityReport:
    """Best connectable fraction over perturbed triples within epsilon balls.

    Candidate perturbations are mesh vertices drawn from the epsilon balls
    around p, q and s, stratified by distance ring so near and far
    perturbations are both explored.  The unperturbed triple is always
    candidate zero.  The best probability found is a lower bound for the
    attainable level.
    """
    if epsilon < space.h:
        raise ResolutionError(
            f"epsilon {epsilon!r} below one mesh cell {space.h!r}; nothing to perturb"
        )
    if slack is None:
        slack = _default_slack(space)
    rng = np.random.default_rng(seed)
    balls = []
    for center in (p, q, s):
        d = space.distance_field(center)
        ids = np.flatnonzero((d <= epsilon) & space.in_U)
        if len(ids) == 0:
            raise ResolutionError(f"no open-domain vertices within epsilon of {center}")
        rings = np.minimum((d[ids] / max(space.h, 1e-300)).astype(int), 1_000_000)
        order = np.lexsort((ids, rings))
        balls.append((ids[order], rings[order]))

    def draw(ball, rng):
        ids, rings = ball
        ring_values = np.unique(rings)
        rv = ring_values[int(rng.integers(0, len(ring_values)))]
        members = ids[rings == rv]
        return int(members[int(rng.integers(0, len(members)))])

    best: ConvexityReport | None = None
    best_key = None
    triples = [(p, q, s)]
    for _ in range(max(0, candidates - 1)):
        triples.append((draw(balls[0], rng), draw(balls[1], rng), draw(balls[2], rng)))
    evaluated = 0
    for (pp, qq, ss) in triples:
        if qq == ss:
            continue
        try:
            rep = prob_convexity(space, pp, qq, ss, step=step, slack=slack)
        except (UnreachableError, GeometryError):
            continue
        evaluated += 1
        key = (-rep.probability, pp, qq, ss)
        if best_key is None or key < best_key:
            best_key = key
            best = rep
            best_triple = (pp, qq, ss)
    if best is None:
        raise UnreachableError("no candidate triple admitted a geodesic")
    return ConvexityReport(
        probability=best.probability,
        samples=best.samples,
        connected_measure=best.connected_measure,
        total_measure=best.total_measure,
        margin=best.margin,
        lambda_hat=best.probability,
        epsilon=epsilon,
        slack=best.slack,
        step=best.step,
        detail={
            "origin": {"p": p, "q": q, "s": s},
            "best_triple": {"p": best_triple[0], "q": best_triple[1], "s": best_triple[2]},
            "candidates_requested": candidates,
            "candidates_evaluated": evaluated,
        },
    )


def ae_convexity_estimate(
    space: DiscreteLengthSpace,
    p: int,
    samples: int = 2000,
    slack: float | None = None,
    seed: int = 0,
) -> ConvexityReport:
    """Fraction of the open domain connectable to p (vertex-count measure).

    Samples open-domain vertices uniformly (all of them when few enough).
    Comparable against the perturbed-triple estimate on the same domain:
    almost-everywhere connectability should force the latter toward one.
    """
    if not space.in_U[p]:
        raise GeometryError("base point must lie in the open domain")
    if slack is None:
        slack = _default_slack(space)
    rng = np.random.default_rng(seed)
    ids = np.flatnonzero(space.in_U)
    if len(ids) > samples:
        ids = np.sort(rng.choice(ids, size=samples, replace=False))
    d_rest = space.distance_field(p, restrict_to_U=True)
    d_full = space.distance_field(p)
    flags = [
        x == p or _connectable_from_fields(float(d_rest[x]), float(d_full[x]), slack)
        for x in ids
    ]
    prob = float(np.mean(flags))
    n = len(ids)
    return ConvexityReport(
        probability=prob,
        samples=n,
        connected_measure=prob * n,
        total_measure=float(n),
        margin=_binomial_margin(prob, n),
        lambda_hat=prob,
        epsilon=0.0,
        slack=slack,
        step=0.0,
        detail={"p": p, "mode": "vertex_fraction"},
    )
