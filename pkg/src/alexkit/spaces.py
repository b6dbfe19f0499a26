"""Finite and discretized length spaces with curvature scans.

Three metric carriers: an explicit distance matrix, an exact point set on
the unit sphere, and a weighted graph over embedded vertices whose
shortest-path closure plays the role of the intrinsic metric.  On top of
them: deterministic geodesic extraction, comparison angles between actual
points, quadruple curvature scans with a bisection estimate of the
largest admissible curvature, and a local domain check that measures
angles at a small fixed arc scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .errors import (
    GeometryError,
    ResolutionError,
    UndefinedModelAngleError,
    UnreachableError,
)
from .reporting import worker_count
from .trig import angle_from_sides, batch_angle, check_curvature

_PATH_TOL = 1e-9


# ---------------------------------------------------------------------------
# metric carriers


class FiniteMetricSpace:
    """Symmetric nonnegative distance matrix validated as a metric."""

    def __init__(self, dist: np.ndarray, validate: bool = True):
        d = np.asarray(dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise GeometryError("distance matrix must be square")
        self.dist = d
        if validate:
            self.validate()

    @property
    def n_points(self) -> int:
        return self.dist.shape[0]

    def validate(self, tol: float = 1e-9) -> None:
        d = self.dist
        if not np.all(np.isfinite(d)):
            raise GeometryError("distances must be finite")
        if np.any(d < -tol):
            raise GeometryError("distances must be nonnegative")
        if np.abs(np.diag(d)).max(initial=0.0) > tol:
            raise GeometryError("diagonal must vanish")
        if np.abs(d - d.T).max(initial=0.0) > tol:
            raise GeometryError("matrix must be symmetric")
        # triangle inequality through every intermediate point
        for k in range(d.shape[0]):
            if np.any(d > d[:, k][:, None] + d[k, :][None, :] + tol):
                raise GeometryError(f"triangle inequality fails through point {k}")

    def distance(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def submatrix(self, idx: np.ndarray) -> np.ndarray:
        return self.dist[np.ix_(idx, idx)]

    def to_csv(self, path) -> None:
        np.savetxt(path, self.dist, delimiter=",", fmt="%.17g")

    @classmethod
    def from_csv(cls, path) -> "FiniteMetricSpace":
        return cls(np.loadtxt(path, delimiter=",", ndmin=2))


class SpherePointSet:
    """Points on the unit sphere with exact great-circle distances."""

    def __init__(self, points: np.ndarray):
        p = np.asarray(points, dtype=float)
        if p.ndim != 2 or p.shape[1] != 3:
            raise GeometryError("expected an (n, 3) array of unit vectors")
        norms = np.linalg.norm(p, axis=1)
        if np.abs(norms - 1.0).max(initial=0.0) > 1e-9:
            raise GeometryError("points must lie on the unit sphere")
        self.points = p / norms[:, None]

    @classmethod
    def random(cls, n: int, seed: int = 0) -> "SpherePointSet":
        rng = np.random.default_rng(seed)
        v = rng.normal(size=(n, 3))
        return cls(v / np.linalg.norm(v, axis=1, keepdims=True))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    def distance(self, i: int, j: int) -> float:
        chord = np.linalg.norm(self.points[i] - self.points[j])
        return float(2.0 * math.asin(min(1.0, 0.5 * chord)))

    def submatrix(self, idx: np.ndarray) -> np.ndarray:
        p = self.points[idx]
        chord = np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)
        return 2.0 * np.arcsin(np.clip(0.5 * chord, 0.0, 1.0))


@dataclass
class GeodesicPath:
    """Vertex walk of a shortest path with cumulative arc lengths."""

    vertices: list[int]
    arc_lengths: np.ndarray
    length: float

    def __post_init__(self):
        if len(self.vertices) != len(self.arc_lengths):
            raise GeometryError("vertex and arc-length counts differ")
        if len(self.vertices) > 1 and np.any(np.diff(self.arc_lengths) <= 0.0):
            raise GeometryError("cumulative arc lengths must increase strictly")
        if abs(float(self.arc_lengths[-1]) - self.length) > _PATH_TOL * (1.0 + self.length):
            raise GeometryError("path arc total disagrees with its stated length")

    def vertex_at_arc(self, t: float) -> int:
        """Path vertex whose cumulative arc is nearest to t."""
        i = int(np.searchsorted(self.arc_lengths, t))
        if i <= 0:
            return self.vertices[0]
        if i >= len(self.vertices):
            return self.vertices[-1]
        before = t - self.arc_lengths[i - 1]
        after = self.arc_lengths[i] - t
        return self.vertices[i - 1] if before <= after else self.vertices[i]

    def arc_of_index(self, i: int) -> float:
        return float(self.arc_lengths[i])


class DiscreteLengthSpace:
    """Weighted graph over embedded vertices modeling an incomplete domain.

    The full graph stands for the metric completion; the subgraph induced
    by the ``in_U`` flags stands for the open domain itself.  Edge weights
    must match embedded segment lengths when coordinates are present, so
    graph distances always dominate the ambient metric.
    """

    def __init__(self, coords, in_U, edges, weights, meta=None, validate=True):
        self.coords = None if coords is None else np.asarray(coords, dtype=float)
        self.in_U = np.asarray(in_U, dtype=bool)
        self.edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.weights = np.asarray(weights, dtype=float)
        self.meta = dict(meta or {})
        n = self.in_U.shape[0]
        self._n = n
        rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        vals = np.concatenate([self.weights, self.weights])
        self._graph = csr_matrix((vals, (rows, cols)), shape=(n, n))
        keep = self.in_U[self.edges[:, 0]] & self.in_U[self.edges[:, 1]]
        er = self.edges[keep]
        wr = self.weights[keep]
        rows = np.concatenate([er[:, 0], er[:, 1]])
        cols = np.concatenate([er[:, 1], er[:, 0]])
        vals = np.concatenate([wr, wr])
        self._graph_u = csr_matrix((vals, (rows, cols)), shape=(n, n))
        self._adj: list[list[tuple[int, float]]] | None = None
        if validate:
            self.validate()

    # -- basic facts

    @property
    def n_vertices(self) -> int:
        return self._n

    @property
    def h(self) -> float:
        return float(self.meta.get("h", 0.0))

    @property
    def h_err(self) -> float:
        return float(self.meta.get("h_err", 0.0))

    def validate(self) -> None:
        if self._n == 0:
            raise GeometryError("empty vertex set")
        if np.any(self.weights <= 0.0) or not np.all(np.isfinite(self.weights)):
            raise GeometryError("edge weights must be positive and finite")
        if self.edges.max(initial=-1) >= self._n or self.edges.min(initial=0) < 0:
            raise GeometryError("edge endpoint out of range")
        ncomp, _ = connected_components(self._graph, directed=False)
        if ncomp != 1:
            raise GeometryError(f"completion graph must be connected, got {ncomp} components")
        if self.coords is not None:
            seg = np.linalg.norm(
                self.coords[self.edges[:, 0]] - self.coords[self.edges[:, 1]], axis=1
            )
            chordal = bool(self.meta.get("chord_corrected", False))
            if not chordal:
                err = np.abs(seg - self.weights).max(initial=0.0)
                if err > 1e-9 * (1.0 + self.weights.max(initial=0.0)):
                    raise GeometryError(f"edge weights disagree with embedding by {err!r}")
            else:
                # arc-weighted edges must dominate their chords
                if np.any(self.weights < seg - 1e-9):
                    raise GeometryError("arc weights shorter than chords")

    def _adjacency(self) -> list[list[tuple[int, float]]]:
        if self._adj is None:
            adj: list[list[tuple[int, float]]] = [[] for _ in range(self._n)]
            for (i, j), w in zip(self.edges, self.weights):
                adj[int(i)].append((int(j), float(w)))
                adj[int(j)].append((int(i), float(w)))
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    # -- metric queries

    def distance_field(self, source: int, restrict_to_U: bool = False,
                       limit: float = np.inf) -> np.ndarray:
        g = self._graph_u if restrict_to_U else self._graph
        return dijkstra(g, directed=False, indices=source, limit=limit)

    def distance_fields(self, sources, restrict_to_U: bool = False) -> np.ndarray:
        g = self._graph_u if restrict_to_U else self._graph
        return np.atleast_2d(dijkstra(g, directed=False, indices=sources))

    def shortest_path(self, src: int, dst: int, restrict_to_U: bool = False) -> GeodesicPath:
        """Deterministic minimal path from src to dst.

        Walks the shortest-path DAG from the source, preferring at each
        step the neighbor nearest the straight chord between the endpoint
        embeddings (ties and coordinate-free spaces fall back to the lowest
        vertex index).  Raises :class:`UnreachableError` when the requested
        subgraph separates the endpoints.
        """
        if restrict_to_U and not (self.in_U[src] and self.in_U[dst]):
            raise UnreachableError("endpoints must carry the in_U flag for restricted paths")
        dist_to = self.distance_field(dst, restrict_to_U=restrict_to_U)
        total = float(dist_to[src])
        if not math.isfinite(total):
            raise UnreachableError(f"no path from {src} to {dst} in the requested subgraph")
        adj = self._adjacency()
        allowed = self.in_U if restrict_to_U else None
        chord = None
        if self.coords is not None and src != dst:
            p0 = self.coords[src]
            p1 = self.coords[dst]
            direction = p1 - p0
            nrm = np.linalg.norm(direction)
            if nrm > 0.0:
                chord = (p0, direction / nrm)
        verts = [src]
        arcs = [0.0]
        u = src
        walked = 0.0
        # strict per-step tolerance: edges on a true shortest path satisfy
        # w + D[v] = D[u] up to summation roundoff only; anything looser
        # accumulates into a genuinely longer walk
        tol = 1e-12 * (1.0 + total)
        while u != dst:
            best = None
            best_key = None
            for v, w in adj[u]:
                if allowed is not None and not allowed[v]:
                    continue
                dv = dist_to[v]
                if not math.isfinite(dv):
                    continue
                if abs((w + dv) - dist_to[u]) > tol or dv >= dist_to[u]:
                    continue
                if chord is not None:
                    off = self.coords[v] - chord[0]
                    perp = off - np.dot(off, chord[1]) * chord[1]
                    key = (float(np.dot(perp, perp)), v)
                else:
                    key = (0.0, v)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (v, w)
            if best is None:
                raise UnreachableError(
                    f"shortest-path walk stalled at vertex {u}; inconsistent field"
                )
            v, w = best
            walked += w
            verts.append(v)
            arcs.append(walked)
            u = v
        return GeodesicPath(vertices=verts, arc_lengths=np.asarray(arcs), length=total)

    # -- serialization

    def to_json_dict(self) -> dict:
        verts = []
        for i in range(self._n):
            entry: dict = {"in_U": bool(self.in_U[i])}
            if self.coords is not None:
                key = "xy" if self.coords.shape[1] == 2 else "xyz"
                entry[key] = [float(x) for x in self.coords[i]]
            verts.append(entry)
        return {
            "vertices": verts,
            "edges": [[int(i), int(j), float(w)] for (i, j), w in zip(self.edges, self.weights)],
            "meta": self.meta,
        }

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True, indent=1)
            fh.write("\n")

    @classmethod
    def from_json_dict(cls, data: dict) -> "DiscreteLengthSpace":
        verts = data["vertices"]
        coords = None
        if verts and ("xy" in verts[0] or "xyz" in verts[0]):
            key = "xy" if "xy" in verts[0] else "xyz"
            coords = np.array([v[key] for v in verts], dtype=float)
        in_u = np.array([bool(v["in_U"]) for v in verts])
        edges = np.array([[e[0], e[1]] for e in data["edges"]], dtype=np.int64)
        weights = np.array([e[2] for e in data["edges"]], dtype=float)
        return cls(coords, in_u, edges, weights, meta=data.get("meta", {}))

    @classmethod
    def load(cls, path) -> "DiscreteLengthSpace":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))

    def nearest_vertex(self, point, require_in_U: bool = False) -> int:
        if self.coords is None:
            raise GeometryError("space carries no coordinates")
        d2 = np.sum((self.coords - np.asarray(point, dtype=float)) ** 2, axis=1)
        if require_in_U:
            d2 = np.where(self.in_U, d2, np.inf)
        return int(np.argmin(d2))


# ---------------------------------------------------------------------------
# pointwise comparisons


def comparison_angle(space, q: int, p: int, s: int, kappa: float) -> float:
    """Comparison angle at q between p and s from the space's own distances."""
    k = check_curvature(kappa)
    if len({q, p, s}) != 3:
        raise GeometryError("comparison angle needs three distinct points")
    if isinstance(space, DiscreteLengthSpace):
        dq = space.distance_field(q)
        dp = space.distance_field(p)
        qp, qs, ps = float(dq[p]), float(dq[s]), float(dp[s])
    else:
        qp = space.distance(q, p)
        qs = space.distance(q, s)
        ps = space.distance(p, s)
    return angle_from_sides(k, ps, qp, qs)


def quadruple_defect(space, p: int, x1: int, x2: int, x3: int, kappa: float) -> float | None:
    """2*pi minus the comparison angle sum at p, or None when vacuous.

    Nonnegative values mean the quadruple condition holds at this
    curvature; None means at least one model angle is undefined, in which
    case the condition is vacuously true.
    """
    k = check_curvature(kappa)
    ids = (p, x1, x2, x3)
    if len(set(ids)) != 4:
        raise GeometryError("quadruple needs four distinct points")
    total = 0.0
    for i, j in ((x1, x2), (x2, x3), (x3, x1)):
        try:
            total += comparison_angle(space, p, i, j, k)
        except UndefinedModelAngleError:
            return None
    return 2.0 * math.pi - total


# ---------------------------------------------------------------------------
# quadruple scans


@dataclass
class ScanReport:
    kappa: float
    samples: int
    evaluated: int
    vacuous: int
    min_defect: float
    worst_case: dict
    kappa_max: float
    tol: float
    h_err: float = 0.0
    exact_metric: str | None = None
    subset_size: int = 0

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "samples": self.samples,
            "evaluated": self.evaluated,
            "vacuous": self.vacuous,
            "min_defect": self.min_defect,
            "worst_case": self.worst_case,
            "kappa_max": self.kappa_max,
            "tol": self.tol,
            "h_err": self.h_err,
            "exact_metric": self.exact_metric,
            "subset_size": self.subset_size,
        }


def _scan_distances(space, subset: int, seed: int, samples: int):
    """Dense distance block and quadruple index samples for any carrier.

    Graph spaces with an exact ambient metric recorded by their generator
    (convex domains whose intrinsic metric has a closed form) use it;
    otherwise graph distances are used and the report carries the mesh
    distortion bound.
    """
    rng = np.random.default_rng(seed)
    exact = None
    h_err = 0.0
    if isinstance(space, DiscreteLengthSpace):
        n = space.n_vertices
        idx = np.arange(n) if n <= subset else rng.choice(n, size=subset, replace=False)
        idx = np.sort(idx)
        exact = space.meta.get("exact_metric")
        h_err = space.h_err
        if exact == "sphere":
            pts = space.coords[idx]
            chord = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
            dist = 2.0 * np.arcsin(np.clip(0.5 * chord, 0.0, 1.0))
        elif exact == "euclidean":
            pts = space.coords[idx]
            dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        else:
            fields = space.distance_fields(idx)
            dist = fields[:, idx]
            dist = 0.5 * (dist + dist.T)
    else:
        n = space.n_points
        idx = np.arange(n) if n <= subset else rng.choice(n, size=subset, replace=False)
        idx = np.sort(idx)
        dist = space.submatrix(idx)
        if isinstance(space, SpherePointSet):
            exact = "sphere"
    m = len(idx)
    if m < 4:
        raise GeometryError("quadruple scan needs at least four points")
    quads = rng.integers(0, m, size=(samples, 4))
    ok = (
        (quads[:, 0] != quads[:, 1]) & (quads[:, 0] != quads[:, 2]) & (quads[:, 0] != quads[:, 3])
        & (quads[:, 1] != quads[:, 2]) & (quads[:, 1] != quads[:, 3]) & (quads[:, 2] != quads[:, 3])
    )
    quads = quads[ok]
    return dist, idx, quads, exact, h_err


def _quad_defects_block(dist: np.ndarray, quads: np.ndarray, kappa: float):
    p, x1, x2, x3 = quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3]
    a1, ok1 = batch_angle(kappa, dist[x1, x2], dist[p, x1], dist[p, x2])
    a2, ok2 = batch_angle(kappa, dist[x2, x3], dist[p, x2], dist[p, x3])
    a3, ok3 = batch_angle(kappa, dist[x3, x1], dist[p, x3], dist[p, x1])
    defined = ok1 & ok2 & ok3
    defects = np.where(defined, 2.0 * math.pi - (a1 + a2 + a3), np.nan)
    return defects, defined


def _quad_defects(dist: np.ndarray, quads: np.ndarray, kappa: float):
    # fixed chunk boundaries keep results identical for any worker count
    n = len(quads)
    workers = worker_count()
    if workers <= 1 or n < 20_000:
        return _quad_defects_block(dist, quads, kappa)
    chunk = 10_000
    bounds = [(i, min(i + chunk, n)) for i in range(0, n, chunk)]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda b: _quad_defects_block(dist, quads[b[0]:b[1]], kappa), bounds))
    defects = np.concatenate([p[0] for p in parts])
    defined = np.concatenate([p[1] for p in parts])
    return defects, defined


def scan_quadruples(
    space,
    kappa: float,
    samples: int = 100_000,
    seed: int = 0,
    subset: int = 600,
    tol: float | None = None,
    exhaustive: bool = False,
) -> ScanReport:
    """Minimum quadruple defect over sampled quadruples, plus kappa_max.

    ``kappa_max`` is the largest curvature on a bisection grid for which
    the minimum defect over the same sampled quadruples stays above -tol
    (vacuous quadruples count as satisfied).  Exhaustive enumeration is
    available for small point sets.
    """
    k = check_curvature(kappa)
    dist, idx, quads, exact, h_err = _scan_distances(space, subset, seed, samples)
    m = dist.shape[0]
    if exhaustive:
        if m > 60:
            raise GeometryError("exhaustive scan limited to 60 points")
        from itertools import combinations, permutations
        all_quads = []
        for combo in combinations(range(m), 4):
            for p in combo:
                rest = tuple(x for x in combo if x != p)
                all_quads.append((p, *rest))
        quads = np.array(all_quads, dtype=np.int64)
    if tol is None:
        tol = 1e-9 if exact else max(1e-9, 24.0 * h_err)
    defects, defined = _quad_defects(dist, quads, k)
    vacuous = int((~defined).sum())
    evaluated = int(defined.sum())
    if evaluated:
        finite = np.where(defined, defects, np.inf)
        i = int(np.argmin(finite))
        min_defect = float(finite[i])
        q = quads[i]
        worst = {
            "p": int(idx[q[0]]),
            "x": [int(idx[q[1]]), int(idx[q[2]]), int(idx[q[3]])],
            "distances": {
                "px": [float(dist[q[0], q[j]]) for j in (1, 2, 3)],
                "xx": [float(dist[q[1], q[2]]), float(dist[q[2], q[3]]),
                       float(dist[q[3], q[1]])],
            },
        }
    else:
        min_defect = math.inf
        worst = {}

    def holds(kprobe: float) -> bool:
        d, dd = _quad_defects(dist, quads, kprobe)
        if not dd.any():
            return True
        return bool(np.nanmin(np.where(dd, d, np.nan)) >= -tol)

    lo, hi = k, k
    if holds(k):
        step = 1.0
        while step <= 8.0 and holds(hi + step):
            hi += step
            step *= 2.0
        hi_bad = hi + step
    else:
        step = 1.0
        while step <= 8.0 and not holds(lo - step):
            lo -= step
            step *= 2.0
        hi_bad = lo
        lo = lo - step
        if not holds(lo):
            lo = -math.inf
    if math.isfinite(lo):
        a, b = lo, hi_bad
        for _ in range(40):
            mid = 0.5 * (a + b)
            if holds(mid):
                a = mid
            else:
                b = mid
        kappa_max = a
    else:
        kappa_max = -math.inf
    return ScanReport(
        kappa=k,
        samples=len(quads),
        evaluated=evaluated,
        vacuous=vacuous,
        min_defect=min_defect,
        worst_case=worst,
        kappa_max=kappa_max,
        tol=float(tol),
        h_err=h_err,
        exact_metric=exact,
        subset_size=m,
    )


# ---------------------------------------------------------------------------
# local domain check


@dataclass
class LocalCheckReport:
    kappa: float
    center: int
    radius: float
    trials: int
    evaluated: int
    skipped: int
    vacuous: bool
    angle_tol: float
    split_tol: float
    window: float
    base_violations: int
    base_worst: float
    split_violations: int
    split_worst: float
    worst_case: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.vacuous or (self.base_violations == 0 and self.split_violations == 0)

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "center": self.center,
            "radius": self.radius,
            "trials": self.trials,
            "evaluated": self.evaluated,
            "skipped": self.skipped,
            "vacuous": self.vacuous,
            "angle_tol": self.angle_tol,
            "split_tol": self.split_tol,
            "window": self.window,
            "base_violations": self.base_violations,
            "base_worst": self.base_worst,
            "split_violations": self.split_violations,
            "split_worst": self.split_worst,
            "passed": self.passed,
            "worst_case": self.worst_case,
        }


def _discrete_angle(space, at: int, toward_a: int, toward_b: int,
                    d_at: np.ndarray, kappa: float) -> float:
    """Comparison angle at a vertex from graph distances to two nearby points."""
    da = float(d_at[toward_a])
    db = float(d_at[toward_b])
    dab = float(space.distance_field(toward_a, limit=da + db + 1e-9)[toward_b])
    return angle_from_sides(kappa, dab, da, db)


def local_kappa_domain_check(
    space: DiscreteLengthSpace,
    center: int,
    radius: float,
    kappa: float,
    samples: int = 20,
    h_angle: int = 3,
    seed: int = 0,
    angle_tol: float | None = None,
) -> LocalCheckReport:
    """Check the two local comparison conditions inside a metric ball.

    Geodesics [qs] are sampled in the ball; angles between actual
    geodesics are estimated by comparison angles at arc scale
    ``h_angle * h`` (a fixed-scale stand-in for the vanishing-scale
    definition, so the estimate is biased at order h / window and the
    default tolerance scales accordingly).  Reports violations of the
    base comparison condition and of the angle-sum condition at interior
    points beyond the tolerance; the angle-sum tolerance is doubled since
    two measured angles accumulate independent errors.

    Default tolerance constants were calibrated on flat grids, where the
    exact angles are known: measured deviations stay under half the
    default at every window size tried.
    """
    k = check_curvature(kappa)
    if space.h <= 0.0:
        raise ResolutionError("space does not record its mesh size h")
    w = h_angle * space.h
    if h_angle < 2:
        raise ResolutionError("angle window must span at least two mesh cells")
    if angle_tol is None:
        angle_tol = 0.5 / h_angle + 6.0 * space.h_err + 1e-3
    split_tol = 2.0 * angle_tol
    d_center = space.distance_field(center)
    ball = np.flatnonzero((d_center <= radius) & space.in_U)
    if len(ball) < 4:
        return LocalCheckReport(
            kappa=k, center=center, radius=radius, trials=samples, evaluated=0,
            skipped=samples, vacuous=True, angle_tol=angle_tol, split_tol=split_tol,
            window=w,
            base_violations=0, base_worst=0.0, split_violations=0, split_worst=0.0,
        )
    rng = np.random.default_rng(seed)
    evaluated = 0
    skipped = 0
    base_violations = 0
    split_violations = 0
    base_worst = -math.inf
    split_worst = -math.inf
    worst: dict = {}
    feasible = False
    for _ in range(samples):
        q, s, p = (int(ball[j]) for j in rng.choice(len(ball), size=3, replace=False))
        try:
            path = space.shortest_path(q, s, restrict_to_U=True)
        except UnreachableError:
            skipped += 1
            continue
        if path.length < 4.0 * w:
            skipped += 1
            continue
        d_p = space.distance_field(p)
        d_q = space.distance_field(q)
        if min(d_p[q], d_p[s]) < 3.0 * w:
            skipped += 1
            continue
        feasible = True
        try:
            # base condition: measured angle at q between [qp] and [qs]
            path_qp = space.shortest_path(q, p)
            y_qp = path_qp.vertex_at_arc(w)
            y_qs = path.vertex_at_arc(w)
            lhs = _discrete_angle(space, q, y_qp, y_qs, d_q, k)
            rhs = angle_from_sides(k, float(d_p[s]), float(d_p[q]), path.length)
            base_gap = rhs - lhs
            # split condition at an interior path vertex away from both ends
            arcs = path.arc_lengths
            inner = [
                j for j in range(1, len(path.vertices) - 1)
                if w <= arcs[j] <= path.length - w and d_p[path.vertices[j]] >= 3.0 * w
            ]
            if not inner:
                skipped += 1
                continue
            j = inner[int(rng.integers(0, len(inner)))]
            x = path.vertices[j]
            d_x = space.distance_field(x)
            y_back = path.vertex_at_arc(arcs[j] - w)
            y_fwd = path.vertex_at_arc(arcs[j] + w)
            path_xp = space.shortest_path(x, p)
            y_xp = path_xp.vertex_at_arc(w)
            ang_back = _discrete_angle(space, x, y_back, y_xp, d_x, k)
            ang_fwd = _discrete_angle(space, x, y_fwd, y_xp, d_x, k)
            split_gap = abs(ang_back + ang_fwd - math.pi)
        except UndefinedModelAngleError:
            skipped += 1
            continue
        evaluated += 1
        if base_gap > base_worst:
            base_worst = base_gap
            if base_gap > angle_tol:
                worst = {"kind": "base", "q": q, "p": p, "s": s, "gap": base_gap}
        if split_gap > split_worst:
            split_worst = split_gap
            if split_gap > split_tol and not worst:
                worst = {"kind": "split", "q": q, "p": p, "s": s, "x": x, "gap": split_gap}
        if base_gap > angle_tol:
            base_violations += 1
        if split_gap > split_tol:
            split_violations += 1
    if not feasible and evaluated == 0:
        raise ResolutionError(
            "mesh cannot furnish sample points within the angle window; "
            "reduce h_angle or enlarge the ball"
        )
    return LocalCheckReport(
        kappa=k, center=center, radius=radius, trials=samples, evaluated=evaluated,
        skipped=skipped, vacuous=False, angle_tol=float(angle_tol),
        split_tol=float(split_tol), window=w,
        base_violations=base_violations,
        base_worst=base_worst if evaluated else 0.0,
        split_violations=split_violations,
        split_worst=split_worst if evaluated else 0.0,
        worst_case=worst,
    )
