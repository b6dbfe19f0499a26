"""Generators for benchmark domains and their companion experiments.

Three families of discretized incomplete domains: an open metric ball on
the unit sphere (with the boundary circle sewn in explicitly, since the
completion owns it), the unit square covered by thin neighborhoods of a
countable family of rational-endpoint segments, and square domains with
points or slits removed.  Companion operations estimate the area of the
thin cover by Monte Carlo and compare completion distances against
in-domain distances after rational perturbation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GeometryError, ResolutionError
from .spaces import DiscreteLengthSpace, SpherePointSet

_MIN_U_VERTICES = 100

# tubes thinner than this fraction of a mesh cell cannot carry a connected
# vertex chain and are left out of the discrete open set
TUBE_CUTOFF_CELLS = 0.75


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class DomainSpec:
    """Parameters of a generated domain.

    kind is one of cap, dense_square, punctured, custom.  ``resolution`` is
    the target mesh size h (arc length on the sphere, grid spacing on the
    square).
    """

    kind: str
    resolution: float
    cap_radius: float = 0.0
    delta: float = 0.0
    num_segments: int = 0
    removed_points: tuple = ()
    removed_segments: tuple = ()
    side: float = 1.0
    stencil_radius: int = 2
    custom_path: str = ""

    def __post_init__(self):
        if self.resolution <= 0.0:
            raise GeometryError("resolution must be positive")
        if self.kind == "cap":
            if not 0.0 < self.cap_radius < math.pi:
                raise GeometryError("cap radius must lie in (0, pi)")
        elif self.kind == "dense_square":
            if not 0.0 < self.delta < 1.0:
                raise GeometryError("delta must lie in (0, 1)")
            if self.num_segments < 1:
                raise GeometryError("need at least one segment")
        elif self.kind == "punctured":
            pass
        elif self.kind == "custom":
            if not self.custom_path:
                raise GeometryError("custom kind needs a path")
        else:
            raise GeometryError(f"unknown domain kind {self.kind!r}")
        if self.side <= 0.0:
            raise GeometryError("square side must be positive")
        if self.stencil_radius < 1:
            raise GeometryError("stencil radius must be >= 1")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "resolution": self.resolution,
            "cap_radius": self.cap_radius,
            "delta": self.delta,
            "num_segments": self.num_segments,
            "removed_points": [list(p) for p in self.removed_points],
            "removed_segments": [list(s) for s in self.removed_segments],
            "side": self.side,
            "stencil_radius": self.stencil_radius,
            "custom_path": self.custom_path,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DomainSpec":
        return cls(
            kind=data["kind"],
            resolution=float(data["resolution"]),
            cap_radius=float(data.get("cap_radius", 0.0)),
            delta=float(data.get("delta", 0.0)),
            num_segments=int(data.get("num_segments", 0)),
            removed_points=tuple(tuple(p) for p in data.get("removed_points", [])),
            removed_segments=tuple(tuple(s) for s in data.get("removed_segments", [])),
            side=float(data.get("side", 1.0)),
            stencil_radius=int(data.get("stencil_radius", 2)),
            custom_path=data.get("custom_path", ""),
        )


# ---------------------------------------------------------------------------
# rational segment family


def rational_segments(count: int) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """First ``count`` segments with rational endpoints in the unit square.

    Enumerated by increasing denominator: for D = 1, 2, ... all ordered
    pairs of distinct points on the D-grid that have not appeared for a
    smaller denominator, in lexicographic order.  Deterministic and stable
    under extension of ``count``.
    """
    if count < 1:
        raise GeometryError("need at least one segment")
    segments: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
    seen: set[tuple] = set()
    d = 0
    while len(segments) < count:
        d += 1
        pts = sorted(
            {(Fraction(a, d), Fraction(b, d)) for a in range(d + 1) for b in range(d + 1)}
        )
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                key = (pts[i], pts[j])
                if key in seen:
                    continue
                seen.add(key)
                segments.append((pts[i][0], pts[i][1], pts[j][0], pts[j][1]))
                if len(segments) == count:
                    return segments
    return segments


def segment_radii(delta: float, count: int) -> np.ndarray:
    """Geometric radius schedule summing exactly to delta/4."""
    i = np.arange(1, count + 1, dtype=float)
    w = np.power(2.0, -i)
    return (delta / 4.0) * w / w.sum()


def _point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = float(np.dot(ab, ab))
    if denom == 0.0:
        return np.linalg.norm(points - a, axis=1)
    t = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(points - proj, axis=1)


# ---------------------------------------------------------------------------
# square grids


def _stencil_directions(radius: int) -> list[tuple[int, int]]:
    dirs = []
    for dx in range(-radius, radius + 1):
        for dy in range(-radius, radius + 1):
            if dx == 0 and dy == 0:
                continue
            if math.gcd(abs(dx), abs(dy)) != 1:
                continue
            dirs.append((dx, dy))
    return sorted(dirs)


def stencil_distortion(radius: int) -> float:
    """Worst relative overshoot of lattice paths over straight segments.

    Equals sec(gamma/2) - 1 for the widest angular gap gamma between
    consecutive stencil directions (about 2.75% for radius 2).
    """
    angles = sorted(math.atan2(dy, dx) for dx, dy in _stencil_directions(radius))
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    gaps.append(angles[0] + 2.0 * math.pi - angles[-1])
    return 1.0 / math.cos(max(gaps) / 2.0) - 1.0


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True when the open segments p1p2 and q1q2 properly intersect."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    eps = 1e-12
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True
    return False


@dataclass
class _Grid:
    coords: np.ndarray
    edges: np.ndarray
    weights: np.ndarray
    spacing: float
    nside: int


def _square_grid(side: float, h: float, stencil_radius: int) -> _Grid:
    n = max(2, round(side / h))
    spacing = side / n
    xs = np.arange(n + 1) * spacing
    gx, gy = np.meshgrid(xs, xs, indexing="ij")
    coords = np.column_stack([gx.ravel(), gy.ravel()])
    dirs = [(dx, dy) for dx, dy in _stencil_directions(stencil_radius)
            if (dx, dy) > (-dx, -dy)]  # one representative per undirected pair
    edges = []
    for dx, dy in dirs:
        i = np.arange(n + 1)
        ii, jj = np.meshgrid(i, i, indexing="ij")
        ok = (ii + dx >= 0) & (ii + dx <= n) & (jj + dy >= 0) & (jj + dy <= n)
        src = ii[ok] * (n + 1) + jj[ok]
        dst = (ii[ok] + dx) * (n + 1) + (jj[ok] + dy)
        edges.append(np.column_stack([src, dst]))
    e = np.vstack(edges)
    w = np.linalg.norm(coords[e[:, 0]] - coords[e[:, 1]], axis=1)
    return _Grid(coords=coords, edges=e, weights=w, spacing=spacing, nside=n)


def _demote_isolated(in_u: np.ndarray, edges: np.ndarray) -> int:
    """Drop in_U flags on vertices with no in_U neighbor, to a fixpoint."""
    demoted = 0
    while True:
        deg = np.zeros(len(in_u), dtype=int)
        mask = in_u[edges[:, 0]] & in_u[edges[:, 1]]
        np.add.at(deg, edges[mask, 0], 1)
        np.add.at(deg, edges[mask, 1], 1)
        lonely = in_u & (deg == 0)
        if not lonely.any():
            return demoted
        in_u[lonely] = False
        demoted += int(lonely.sum())


def _finalize_square(grid: _Grid, in_u, keep, spec: DomainSpec, seed: int,
                     extra_meta: dict, exact: bool, crossing_segments=()) -> DiscreteLengthSpace:
    coords = grid.coords
    edges = grid.edges
    weights = grid.weights
    if not keep.all():
        remap = -np.ones(len(keep), dtype=np.int64)
        remap[keep] = np.arange(int(keep.sum()))
        coords = coords[keep]
        in_u = in_u[keep]
        emask = keep[edges[:, 0]] & keep[edges[:, 1]]
        edges = remap[edges[emask]]
        weights = weights[emask]
    if crossing_segments:
        emask = np.ones(len(edges), dtype=bool)
        for k, (x1, y1, x2, y2) in enumerate(crossing_segments):
            q1 = (x1, y1)
            q2 = (x2, y2)
            for idx in np.flatnonzero(emask):
                a = coords[edges[idx, 0]]
                b = coords[edges[idx, 1]]
                if _segments_cross((a[0], a[1]), (b[0], b[1]), q1, q2):
                    emask[idx] = False
        edges = edges[emask]
        weights = weights[emask]
    demoted = _demote_isolated(in_u, edges)
    if int(in_u.sum()) < _MIN_U_VERTICES:
        raise ResolutionError(
            f"resolution too coarse: only {int(in_u.sum())} open-domain vertices"
        )
    meta = {
        "generator": spec.kind,
        "h": grid.spacing,
        "h_err": stencil_distortion(spec.stencil_radius),
        "seed": seed,
        "side": spec.side,
        "stencil_radius": spec.stencil_radius,
        "demoted": demoted,
        "spec": spec.to_dict(),
    }
    if exact:
        meta["exact_metric"] = "euclidean"
    meta.update(extra_meta)
    return DiscreteLengthSpace(coords, in_u, edges, weights, meta=meta)


def _generate_dense_square(spec: DomainSpec, seed: int) -> DiscreteLengthSpace:
    grid = _square_grid(spec.side, spec.resolution, spec.stencil_radius)
    segs = rational_segments(spec.num_segments)
    radii = segment_radii(spec.delta, spec.num_segments)
    seg_arr = np.array([[float(x1), float(y1), float(x2), float(y2)]
                        for x1, y1, x2, y2 in segs])
    cutoff = TUBE_CUTOFF_CELLS * grid.spacing
    in_u = np.zeros(len(grid.coords), dtype=bool)
    materialized = 0
    for k in range(spec.num_segments):
        if radii[k] < cutoff:
            continue
        materialized += 1
        d = _point_segment_distance(grid.coords, seg_arr[k, :2], seg_arr[k, 2:])
        in_u |= d <= radii[k]
    extra = {
        "delta": spec.delta,
        "segments": seg_arr.tolist(),
        "radii": radii.tolist(),
        "materialized_segments": materialized,
        "tube_cutoff": cutoff,
    }
    return _finalize_square(grid, in_u, np.ones(len(grid.coords), bool), spec, seed,
                            extra, exact=True)


def _generate_punctured(spec: DomainSpec, seed: int) -> DiscreteLengthSpace:
    grid = _square_grid(spec.side, spec.resolution, spec.stencil_radius)
    in_u = np.ones(len(grid.coords), dtype=bool)
    keep = np.ones(len(grid.coords), dtype=bool)
    for px, py in spec.removed_points:
        d2 = np.sum((grid.coords - np.array([px, py])) ** 2, axis=1)
        in_u[int(np.argmin(d2))] = False
    slits = []
    for x1, y1, x2, y2 in spec.removed_segments:
        a = np.array([float(x1), float(y1)])
        b = np.array([float(x2), float(y2)])
        slits.append((float(x1), float(y1), float(x2), float(y2)))
        d = _point_segment_distance(grid.coords, a, b)
        on_slit = d <= 1e-9
        d_end = np.minimum(
            np.linalg.norm(grid.coords - a, axis=1), np.linalg.norm(grid.coords - b, axis=1)
        )
        tips = on_slit & (d_end <= 1e-9)
        interior = on_slit & ~tips
        keep &= ~interior
        in_u[tips] = False
        # vertices nearest the physical tips mark the completion boundary
        for tip in (a, b):
            d2 = np.sum((grid.coords - tip) ** 2, axis=1)
            j = int(np.argmin(d2))
            in_u[j] = False
    extra = {
        "removed_points": [list(map(float, p)) for p in spec.removed_points],
        "removed_segments": [list(s) for s in slits],
    }
    return _finalize_square(grid, in_u, keep, spec, seed, extra,
                            exact=not slits, crossing_segments=slits)


# ---------------------------------------------------------------------------
# spherical caps


def _icosahedron() -> tuple[np.ndarray, np.ndarray]:
    verts = [(0.0, 0.0, 1.0)]
    top_z = 1.0 / math.sqrt(5.0)
    rad = 2.0 / math.sqrt(5.0)
    for k in range(5):
        ang = 2.0 * math.pi * k / 5.0
        verts.append((rad * math.cos(ang), rad * math.sin(ang), top_z))
    for k in range(5):
        ang = 2.0 * math.pi * (k + 0.5) / 5.0
        verts.append((rad * math.cos(ang), rad * math.sin(ang), -top_z))
    verts.append((0.0, 0.0, -1.0))
    faces = []
    for k in range(5):
        faces.append((0, 1 + k, 1 + (k + 1) % 5))
        faces.append((11, 6 + (k + 1) % 5, 6 + k))
        faces.append((1 + k, 6 + k, 1 + (k + 1) % 5))
        faces.append((1 + (k + 1) % 5, 6 + k, 6 + (k + 1) % 5))
    return np.array(verts), np.array(faces, dtype=np.int64)


def _subdivide(verts: np.ndarray, faces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vlist = [tuple(v) for v in verts]
    cache: dict[tuple[int, int], int] = {}

    def midpoint(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        if key in cache:
            return cache[key]
        m = 0.5 * (np.asarray(vlist[i]) + np.asarray(vlist[j]))
        m /= np.linalg.norm(m)
        vlist.append(tuple(m))
        cache[key] = len(vlist) - 1
        return cache[key]

    new_faces = []
    for a, b, c in faces:
        ab = midpoint(int(a), int(b))
        bc = midpoint(int(b), int(c))
        ca = midpoint(int(c), int(a))
        new_faces.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return np.array(vlist), np.array(new_faces, dtype=np.int64)


def _arc(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    chord = np.linalg.norm(u - v, axis=-1)
    return 2.0 * np.arcsin(np.clip(0.5 * chord, 0.0, 1.0))


def _generate_cap(spec: DomainSpec, seed: int) -> DiscreteLengthSpace:
    r = spec.cap_radius
    h = spec.resolution
    verts, faces = _icosahedron()
    base_edge = 2.0 * math.asin(np.linalg.norm(verts[0] - verts[1]) / 2.0)
    levels = max(0, math.ceil(math.log2(base_edge / h)))
    for _ in range(levels):
        verts, faces = _subdivide(verts, faces)
    mesh_h = base_edge / 2 ** levels
    colat = np.arccos(np.clip(verts[:, 2], -1.0, 1.0))
    keep = colat < r - 1e-12
    remap = -np.ones(len(verts), dtype=np.int64)
    remap[keep] = np.arange(int(keep.sum()))
    kept = verts[keep]
    edge_set = set()
    for a, b, c in faces:
        for i, j in ((a, b), (b, c), (c, a)):
            if keep[i] and keep[j]:
                edge_set.add((min(int(i), int(j)), max(int(i), int(j))))
    mesh_edges = np.array(sorted(edge_set), dtype=np.int64)
    mesh_edges = remap[mesh_edges]
    n_mesh = len(kept)
    # widen the stencil with two-hop chords: the bare triangulation offers
    # only ~6 directions per vertex (over 15% length distortion); adding the
    # second ring brings the gaps down to ~30 degrees
    adj: list[set[int]] = [set() for _ in range(n_mesh)]
    for i, j in mesh_edges:
        adj[int(i)].add(int(j))
        adj[int(j)].add(int(i))
    hop2 = set(map(tuple, mesh_edges.tolist()))
    for i in range(n_mesh):
        for j in adj[i]:
            for k in adj[j]:
                if k != i:
                    hop2.add((min(i, k), max(i, k)))
    mesh_edges = np.array(sorted(hop2), dtype=np.int64)
    # boundary ring at colatitude exactly r: the completion owns these points
    ring_n = max(12, int(round(2.0 * math.pi * math.sin(r) / (0.8 * mesh_h))))
    ang = 2.0 * math.pi * np.arange(ring_n) / ring_n
    ring = np.column_stack([
        math.sin(r) * np.cos(ang), math.sin(r) * np.sin(ang),
        np.full(ring_n, math.cos(r)),
    ])
    # two smooth guard rings just inside the boundary keep near-boundary
    # traffic on open-domain vertices: without them the evenly spaced rim is
    # a smoother highway than the ragged triangulation and sub-half-sphere
    # geodesics would clip through completion-only vertices
    s_ring = 0.9 * mesh_h
    if r - 2.0 * s_ring <= 0.5 * mesh_h:
        raise ResolutionError(
            f"cap radius {r!r} too small for mesh size {mesh_h!r}; refine the mesh"
        )
    guards = []
    for depth in (1, 2):
        colat_g = r - depth * s_ring
        guards.append(np.column_stack([
            math.sin(colat_g) * np.cos(ang), math.sin(colat_g) * np.sin(ang),
            np.full(ring_n, math.cos(colat_g)),
        ]))
    coords = np.vstack([kept, ring, guards[0], guards[1]])
    in_u = np.zeros(len(coords), dtype=bool)
    in_u[:n_mesh] = True
    in_u[n_mesh + ring_n:] = True
    edges = [mesh_edges]
    ids = [n_mesh + layer * ring_n + np.arange(ring_n) for layer in range(3)]
    for layer_ids in ids:
        edges.append(np.column_stack([layer_ids, layer_ids[(np.arange(ring_n) + 1) % ring_n]]))
    # consecutive layers share the angular grid: straight and diagonal rungs;
    # the rim connects only through the first guard ring
    for a_ids, b_ids in ((ids[0], ids[1]), (ids[1], ids[2])):
        for shift in (0, 1, ring_n - 1):
            edges.append(np.column_stack([a_ids, b_ids[(np.arange(ring_n) + shift) % ring_n]]))
    # sew the guard rings to nearby mesh vertices
    near_rim = np.flatnonzero(colat[keep] > r - 2.0 * s_ring - 2.2 * mesh_h)
    sew = []
    for layer, guard in enumerate(guards):
        for j in range(ring_n):
            if len(near_rim):
                arcs = _arc(kept[near_rim], guard[j])
                close = near_rim[arcs <= 1.6 * mesh_h]
                for i in close:
                    sew.append((int(i), int(ids[1 + layer][j])))
    if sew:
        edges.append(np.array(sorted(set(sew)), dtype=np.int64))
    e = np.vstack(edges)
    w = _arc(coords[e[:, 0]], coords[e[:, 1]])
    in_u_work = in_u.copy()
    demoted = _demote_isolated(in_u_work, e)
    if int(in_u_work.sum()) < _MIN_U_VERTICES:
        raise ResolutionError(
            f"resolution too coarse: only {int(in_u_work.sum())} open-domain vertices"
        )
    meta = {
        "generator": "cap",
        "h": mesh_h,
        "seed": seed,
        "cap_radius": r,
        "ring_vertices": ring_n,
        "guard_rings": 2,
        "chord_corrected": True,
        "demoted": demoted,
        "spec": spec.to_dict(),
    }
    if r <= 0.5 * math.pi + 1e-12:
        meta["exact_metric"] = "sphere"
    space = DiscreteLengthSpace(coords, in_u_work, e, w, meta=meta)
    space.meta["h_err"] = _estimate_cap_distortion(space, r, seed)
    return space


def _estimate_cap_distortion(space: DiscreteLengthSpace, r: float, seed: int) -> float:
    """Empirical relative overshoot of graph distances over great-circle arcs.

    Only pairs whose connecting arc stays inside the cap are compared (for
    caps past the half sphere the ambient arc may leave the domain).  The
    sampled maximum is padded since it underestimates the true supremum.
    """
    rng = np.random.default_rng([seed, 7])
    u_ids = np.flatnonzero(space.in_U)
    sources = rng.choice(u_ids, size=min(24, len(u_ids)), replace=False)
    cos_r = math.cos(r)
    worst = 0.0
    fields = space.distance_fields(sources)
    for row, src in enumerate(sources):
        targets = rng.choice(u_ids, size=min(60, len(u_ids)), replace=False)
        a = space.coords[src]
        for t in targets:
            if t == src:
                continue
            b = space.coords[t]
            arc = float(_arc(a, b))
            if arc < 4.0 * space.meta["h"]:
                continue
            ts = np.linspace(0.0, 1.0, 17)
            pts = np.outer(np.sin((1 - ts) * arc), a) + np.outer(np.sin(ts * arc), b)
            pts /= np.sin(arc)
            if np.any(pts[:, 2] < cos_r - 1e-9):
                continue  # ambient arc exits the cap
            g = float(fields[row, t])
            if math.isfinite(g) and arc > 0.0:
                worst = max(worst, g / arc - 1.0)
    return 1.15 * worst if worst > 0.0 else 0.03


# ---------------------------------------------------------------------------
# public entry points


def generate(spec: DomainSpec, seed: int = 0) -> DiscreteLengthSpace:
    """Build the discretized domain described by ``spec`` deterministically."""
    if spec.kind == "cap":
        return _generate_cap(spec, seed)
    if spec.kind == "dense_square":
        return _generate_dense_square(spec, seed)
    if spec.kind == "punctured":
        return _generate_punctured(spec, seed)
    if spec.kind == "custom":
        return DiscreteLengthSpace.load(spec.custom_path)
    raise GeometryError(f"unknown domain kind {spec.kind!r}")


def unit_sphere_points(n: int, seed: int = 0) -> SpherePointSet:
    """Uniform random points on the unit sphere with exact distances."""
    return SpherePointSet.random(n, seed=seed)


@dataclass
class AreaReport:
    estimate: float
    sigma: float
    samples: int
    union_bound: float
    delta: float

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "sigma": self.sigma,
            "samples": self.samples,
            "union_bound": self.union_bound,
            "delta": self.delta,
        }


def area_estimate(spec: DomainSpec, samples: int = 100_000, seed: int = 0) -> AreaReport:
    """Monte Carlo area of the thin segment cover, with a union-bound cross-check.

    Works on the continuum description (all segments, however thin), not on
    the mesh.
    """
    if spec.kind != "dense_square":
        raise GeometryError("area estimation applies to dense_square specs")
    segs = rational_segments(spec.num_segments)
    radii = segment_radii(spec.delta, spec.num_segments)
    seg_arr = np.array([[float(x1), float(y1), float(x2), float(y2)]
                        for x1, y1, x2, y2 in segs])
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 1.0, size=(samples, 2))
    inside = np.zeros(samples, dtype=bool)
    for k in range(spec.num_segments):
        out = ~inside
        if not out.any():
            break
        d = _point_segment_distance(pts[out], seg_arr[k, :2], seg_arr[k, 2:])
        sub = np.flatnonzero(out)
        inside[sub[d <= radii[k]]] = True
    p = float(inside.mean())
    sigma = math.sqrt(max(p * (1.0 - p), 1.0 / samples) / samples)
    lengths = np.linalg.norm(seg_arr[:, 2:] - seg_arr[:, :2], axis=1)
    union = float(np.sum(2.0 * radii * lengths + math.pi * radii ** 2))
    return AreaReport(estimate=p, sigma=sigma, samples=samples,
                      union_bound=union, delta=spec.delta)


@dataclass
class CompletionReport:
    pairs: int
    matched: int
    misses: int
    uniform_matched: int
    uniform_misses: int
    epsilon: float
    max_violation: float
    max_link_violation: float
    h_err: float
    worst_case: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "matched": self.matched,
            "misses": self.misses,
            "uniform_matched": self.uniform_matched,
            "uniform_misses": self.uniform_misses,
            "epsilon": self.epsilon,
            "max_violation": self.max_violation,
            "max_link_violation": self.max_link_violation,
            "h_err": self.h_err,
            "worst_case": self.worst_case,
        }


def completion_compare(
    space: DiscreteLengthSpace,
    pairs: int = 200,
    epsilon: float = 0.05,
    seed: int = 0,
) -> CompletionReport:
    """Compare completion distances against in-domain distances after perturbation.

    For sampled vertex pairs (p, q), finds a bundled segment whose endpoints
    lie within epsilon of p and q.  The perturbed in-domain distance is the
    segment's own length (the straight chord is its minimizer and lies in
    the open set by construction).  The reported violation for a matched
    pair is graph completion distance minus that length; the chain estimate
    bounds it by 4*epsilon plus mesh distortion.  Pairs with no bundled
    segment within epsilon are truncation misses, counted but not failures.

    Sampling is stratified: half the pairs are uniform over vertices (their
    miss rate measures how sparse the finite bundle is at this epsilon),
    half are anchored near bundled endpoints so the chain is actually
    exercised at every run.
    """
    if space.meta.get("generator") != "dense_square":
        raise GeometryError("completion comparison applies to dense_square domains")
    segs = np.asarray(space.meta["segments"], dtype=float)
    starts = segs[:, :2]
    ends = segs[:, 2:]
    rng = np.random.default_rng(seed)
    n = space.n_vertices
    n_uniform = pairs // 2
    p_ids = np.empty(pairs, dtype=np.int64)
    q_ids = np.empty(pairs, dtype=np.int64)
    p_ids[:n_uniform] = rng.integers(0, n, size=n_uniform)
    q_ids[:n_uniform] = rng.integers(0, n, size=n_uniform)
    for row in range(n_uniform, pairs):
        k = int(rng.integers(0, len(segs)))
        jitter = rng.uniform(-0.5, 0.5, size=4) * epsilon
        a = np.clip(starts[k] + jitter[:2], 0.0, space.meta.get("side", 1.0))
        b = np.clip(ends[k] + jitter[2:], 0.0, space.meta.get("side", 1.0))
        p_ids[row] = space.nearest_vertex(a)
        q_ids[row] = space.nearest_vertex(b)
    matched = 0
    misses = 0
    uniform_matched = 0
    uniform_misses = 0
    max_violation = -math.inf
    max_link = -math.inf
    worst: dict = {}
    fields_cache: dict[int, np.ndarray] = {}
    for row, (p_i, q_i) in enumerate(zip(p_ids, q_ids)):
        is_uniform = row < n_uniform
        p_i, q_i = int(p_i), int(q_i)
        if p_i == q_i:
            misses += 1
            uniform_misses += is_uniform
            continue
        p = space.coords[p_i]
        q = space.coords[q_i]
        d_ps = np.linalg.norm(starts - p, axis=1)
        d_qe = np.linalg.norm(ends - q, axis=1)
        d_pe = np.linalg.norm(ends - p, axis=1)
        d_qs = np.linalg.norm(starts - q, axis=1)
        fwd = np.maximum(d_ps, d_qe)
        rev = np.maximum(d_pe, d_qs)
        best = np.minimum(fwd, rev)
        k = int(np.argmin(best))
        if best[k] > epsilon:
            misses += 1
            uniform_misses += is_uniform
            continue
        matched += 1
        uniform_matched += is_uniform
        seg_len = float(np.linalg.norm(ends[k] - starts[k]))
        d_x = float(np.linalg.norm(p - q))
        if p_i not in fields_cache:
            fields_cache[p_i] = space.distance_field(p_i)
        d_bar = float(fields_cache[p_i][q_i])
        violation = d_bar - seg_len
        link1 = d_x - d_bar                 # completion dominates the ambient metric
        link2 = (seg_len - 2.0 * epsilon) - d_x
        link = max(link1, link2)
        if violation > max_violation:
            max_violation = violation
            worst = {"p": p_i, "q": q_i, "segment": k, "segment_length": seg_len,
                     "d_ambient": d_x, "d_completion": d_bar, "violation": violation}
        max_link = max(max_link, link)
    return CompletionReport(
        pairs=pairs,
        matched=matched,
        misses=misses,
        uniform_matched=int(uniform_matched),
        uniform_misses=int(uniform_misses),
        epsilon=epsilon,
        max_violation=max_violation if matched else 0.0,
        max_link_violation=max_link if matched else 0.0,
        h_err=space.h_err,
        worst_case=worst,
    )
