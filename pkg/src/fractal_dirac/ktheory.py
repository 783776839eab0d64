"""Integer index pairings between the graded module and box projections.

A projection supported on a union of axis-aligned boxes pairs with the module
by summing, over all words, the number of even placed-cube vertices inside
the support minus the number of odd ones.  Cubes guaranteed entirely inside a
single region's interior, or entirely outside the closed union, are balanced
along with all their descendants and are pruned.  Boundary membership is
decided exactly through per-face open/closed flags.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .components import level_one_components
from .cube import vertex_bits
from .errors import BudgetExceededError
from .ifs import IfsSystem, PlacedCube, compose, default_budget

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with per-face open/closed flags."""

    lo: np.ndarray
    hi: np.ndarray
    lo_closed: np.ndarray
    hi_closed: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        lc = np.asarray(self.lo_closed, dtype=bool)
        hc = np.asarray(self.hi_closed, dtype=bool)
        if not (lo.shape == hi.shape == lc.shape == hc.shape) or lo.ndim != 1:
            raise ValueError("box fields must be flat arrays of one common length")
        if np.any(lo > hi):
            raise ValueError("box lower bounds exceed upper bounds")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lc)
        object.__setattr__(self, "hi_closed", hc)

    def contains(self, points: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
        """Vectorized membership of row points, honoring the face flags."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        above = np.where(self.lo_closed, pts >= self.lo - tol, pts > self.lo + tol)
        below = np.where(self.hi_closed, pts <= self.hi + tol, pts < self.hi - tol)
        return np.all(above & below, axis=1)

    def strictly_contains_all(self, points, tol: float = MEMBERSHIP_TOL) -> bool:
        """All points inside the open interior with a safety margin."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return bool(
            np.all(pts > self.lo + tol) and np.all(pts < self.hi - tol)
        )


def closed_box(lo, hi) -> Box:
    lo = np.asarray(lo, dtype=float)
    return Box(lo=lo, hi=np.asarray(hi, dtype=float),
               lo_closed=np.ones(lo.shape, dtype=bool), hi_closed=np.ones(lo.shape, dtype=bool))


@dataclass(frozen=True)
class ProjectionSpec:
    """Indicator of a finite union of boxes."""

    regions: tuple

    def __post_init__(self):
        if len(self.regions) == 0:
            raise ValueError("a projection needs at least one region")
        object.__setattr__(self, "regions", tuple(self.regions))

    @property
    def n(self) -> int:
        return self.regions[0].lo.shape[0]

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        inside = np.zeros(pts.shape[0], dtype=bool)
        for box in self.regions:
            inside |= box.contains(pts)
        return inside

    def to_json_dict(self) -> dict:
        return {
            "regions": [
                {
                    "lo": [float(x) for x in b.lo],
                    "hi": [float(x) for x in b.hi],
                    "lo_closed": [bool(x) for x in b.lo_closed],
                    "hi_closed": [bool(x) for x in b.hi_closed],
                }
                for b in self.regions
            ]
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "ProjectionSpec":
        try:
            regions = tuple(
                Box(
                    lo=np.asarray(r["lo"], dtype=float),
                    hi=np.asarray(r["hi"], dtype=float),
                    lo_closed=np.asarray(r["lo_closed"], dtype=bool),
                    hi_closed=np.asarray(r["hi_closed"], dtype=bool),
                )
                for r in doc["regions"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed projection document: {exc}") from exc
        return ProjectionSpec(regions=regions)


def save_projection(proj: ProjectionSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(proj.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_projection(path) -> ProjectionSpec:
    with open(path) as fh:
        return ProjectionSpec.from_json_dict(json.load(fh))


def interval_projection(k: int) -> ProjectionSpec:
    """Closed box [0, 3^-k] on the line, the standard pairing test projection."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ProjectionSpec(regions=(closed_box([0.0], [3.0**-k]),))


@dataclass(frozen=True)
class IndexReport:
    """Integer pairing value with its stabilization history."""

    value: int
    depth_used: int
    stabilized: bool
    per_depth: tuple  # partial sums by depth


def _cube_outside_union(cube_vertices, regions, tol):
    """Bounding-box separation from every region: sound, not sharp."""
    lo = cube_vertices.min(axis=0)
    hi = cube_vertices.max(axis=0)
    for box in regions:
        separated = np.any(hi < box.lo - tol) or np.any(lo > box.hi + tol)
        if not separated:
            return False
    return True


def index_pairing(
    ifs: IfsSystem,
    proj: ProjectionSpec,
    depth: int,
    window: int = 3,
    budget: int | None = None,
) -> IndexReport:
    """Pairing of the module with a box projection, summed to the cutoff depth.

    Each word contributes (even placed vertices in the support) minus (odd
    ones); balanced cubes that are geometrically guaranteed to stay balanced
    are pruned with their descendants.  stabilized records whether the
    partial sums were constant over the final window depths; a non-stabilized
    result is still returned, never silently truncated.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if proj.n != ifs.n:
        raise ValueError("projection dimension does not match the system")
    if budget is None:
        budget = default_budget()
    parity = np.arange(2**ifs.n) % 2
    even_mask = parity == 0
    increments = [0] * (depth + 1)
    visited = 0
    stack = [compose(ifs, ())]
    while stack:
        cube = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceededError(f"index pairing visited more than {budget} cubes")
        verts = cube.vertices
        inside = proj.contains(verts)
        j = len(cube.word)
        increments[j] += int(np.sum(inside & even_mask)) - int(np.sum(inside & ~even_mask))
        if j == depth:
            continue
        if bool(inside.all()) and any(
            box.strictly_contains_all(verts) for box in proj.regions
        ):
            continue  # interior of one region swallows the whole subtree
        if not inside.any() and _cube_outside_union(verts, proj.regions, MEMBERSHIP_TOL):
            continue
        for s in range(ifs.num_maps, 0, -1):
            m = ifs.maps[s - 1]
            stack.append(
                compose_child(cube, s, m)
            )
    partial = []
    running = 0
    for inc in increments:
        running += inc
        partial.append(running)
    tail = increments[max(0, depth - window + 1): depth + 1]
    stabilized = len(tail) == window and all(t == 0 for t in tail)
    return IndexReport(
        value=partial[-1],
        depth_used=depth,
        stabilized=stabilized,
        per_depth=tuple(partial),
    )


def compose_child(cube, s, similitude):
    """Extend a placed cube by one more (innermost) symbol."""
    return PlacedCube(
        word=cube.word + (s,),
        e_w=cube.e_w * similitude.ratio,
        transform=cube.transform @ similitude.matrix,
        offset=cube.e_w * (cube.transform @ similitude.translation) + cube.offset,
        n=cube.n,
    )


@dataclass(frozen=True)
class NonvanishCertificate:
    """A parity-unbalanced component with its induced projection and pairing."""

    component_index: int
    d0: int
    d1: int
    projection: ProjectionSpec
    pairing: int
    pairing_matches: bool


def nonvanish_certificate(
    ifs: IfsSystem, depth: int = 4, budget: int | None = None
) -> NonvanishCertificate | None:
    """First level-one component with unequal vertex parity counts, if any.

    The induced projection is a padded box neighborhood of the component; the
    pairing on it is computed and compared against d0 - d1.
    """
    report = level_one_components(ifs)
    target = None
    for idx, comp in enumerate(report.components):
        if comp.d0 != comp.d1:
            target = idx
            break
    if target is None:
        return None
    comp = report.components[target]
    proj = component_projection(ifs, report, target)
    pairing = index_pairing(ifs, proj, depth, budget=budget)
    return NonvanishCertificate(
        component_index=target,
        d0=comp.d0,
        d1=comp.d1,
        projection=proj,
        pairing=pairing.value,
        pairing_matches=(pairing.value == comp.d0 - comp.d1),
    )


def component_projection(ifs: IfsSystem, report, index: int) -> ProjectionSpec:
    """Box neighborhood of one component, padded by a margin below the
    point-set separation from every other component."""
    corners = vertex_bits(ifs.n).astype(float)
    cubes = {s: compose(ifs, (s,)) for s in range(1, ifs.num_maps + 1)}

    def points_of(comp):
        pts = [cubes[s].vertices for s in comp.cubes]
        pts += [corners[v][None, :] for v in comp.vertices]
        return np.vstack(pts)

    mine = points_of(report.components[index])
    min_dist = np.inf
    for other_idx, other in enumerate(report.components):
        if other_idx == index:
            continue
        pts = points_of(other)
        dists = np.linalg.norm(mine[:, None, :] - pts[None, :, :], axis=2)
        min_dist = min(min_dist, float(dists.min()))
    margin = 0.01 if not np.isfinite(min_dist) else min_dist / 4.0
    comp = report.components[index]
    boxes = []
    for s in comp.cubes:
        verts = cubes[s].vertices
        boxes.append(closed_box(verts.min(axis=0) - margin, verts.max(axis=0) + margin))
    for v in comp.vertices:
        boxes.append(closed_box(corners[v] - margin, corners[v] + margin))
    return ProjectionSpec(regions=tuple(boxes))


def _middle_third_gaps(depth: int):
    """Removed-interval endpoint pairs of the middle-third construction, levels 1..depth."""
    kept = [(Fraction(0), Fraction(1))]
    gaps = []
    for _ in range(depth):
        next_kept = []
        for a, b in kept:
            third = (b - a) / 3
            gaps.append((a + third, b - third))
            next_kept.append((a, a + third))
            next_kept.append((b - third, b))
        kept = next_kept
    return gaps


def connes_gap_pairing(k: int, depth: int) -> int:
    """Pairing of the gap-interval module with the closed box [0, 3^-k].

    Gap endpoints are exact triadic rationals, so boundary membership is
    decided exactly.  The left endpoint of each gap carries the even grading.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > depth:
        raise ValueError(f"k={k} exceeds the enumeration depth {depth}")
    cutoff = Fraction(1, 3**k)
    total = 0
    for a, b in _middle_third_gaps(depth):
        total += int(0 <= a <= cutoff) - int(0 <= b <= cutoff)
    return total
