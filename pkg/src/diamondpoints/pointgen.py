"""Materialize spherical, antipodal and projective point sets.

A configuration is a stack of regular polygons: parallel j carries
count_j equally spaced points at height z_j, rotated by a phase
theta_j, plus the pole(s).  Parallels are indexed 0 (north pole) to
2M (south pole) on the sphere; 0 (pole) to M (half-equator) on the
projective plane.

Phases come from :func:`draw_phases`, which is deterministic given a
seed: the generator is NumPy's PCG64, fixed here so exported files are
reproducible across platforms.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .heights import projective_heights, spherical_heights
from .profile import Profile, point_count_projective, point_count_sphere

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhaseAssignment:
    """Per-parallel rotation angles in [0, 2*pi), with seed provenance."""

    thetas: tuple[float, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        for th in self.thetas:
            if not 0.0 <= th < TWO_PI:
                raise ValueError(f"phase {th} outside [0, 2*pi)")

    def __len__(self) -> int:
        return len(self.thetas)


def draw_phases(seed: int, count: int) -> PhaseAssignment:
    """Draw ``count`` independent uniform phases on [0, 2*pi).

    Deterministic given ``seed``; the stream is NumPy PCG64, so the same
    seed yields the same phases on any platform.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    thetas = rng.uniform(0.0, TWO_PI, size=count)
    return PhaseAssignment(tuple(float(t) for t in thetas), seed=seed)


@dataclass(frozen=True, eq=False)
class SphericalPointSet:
    """Unit vectors with optional parallel bookkeeping (0 = north pole)."""

    points: np.ndarray
    parallel_index: np.ndarray | None = None

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float, order="C")
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError("points must be an (N, 3) array")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("points must be unit vectors (1e-12 tolerance)")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class ProjectivePointSet:
    """Canonical line representatives: unit vectors with z >= 0."""

    representatives: np.ndarray
    parallel_index: np.ndarray | None = None

    def __post_init__(self) -> None:
        reps = np.array(self.representatives, dtype=float, order="C")
        if reps.ndim != 2 or reps.shape[1] != 3:
            raise ValueError("representatives must be an (N, 3) array")
        norms = np.linalg.norm(reps, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("representatives must be unit vectors (1e-12 tolerance)")
        if np.any(reps[:, 2] < -1e-15):
            raise ValueError("representatives must have nonnegative third coordinate")
        reps.flags.writeable = False
        object.__setattr__(self, "representatives", reps)

    def __len__(self) -> int:
        return self.representatives.shape[0]


def _ring(count: int, z: float, theta: float) -> np.ndarray:
    """count equally spaced points at height z, phase theta.

    Angles are reduced mod 2*pi before sin/cos to limit argument error
    on dense parallels.
    """
    i = np.arange(1, count + 1)
    ang = np.mod(TWO_PI * i / count + theta, TWO_PI)
    rad = math.sqrt(max(0.0, 1.0 - z * z))
    return np.column_stack((rad * np.cos(ang), rad * np.sin(ang), np.full(count, z)))


def generate_sphere(p: Profile, phases: PhaseAssignment) -> SphericalPointSet:
    """All 2M-1 parallels plus both poles; needs one phase per parallel.

    Southern parallels mirror the northern ones: parallel 2M-j reuses
    count_j at height -z_j with its own phase.
    """
    M = p.M
    if len(phases) != 2 * M - 1:
        raise ValueError(f"need {2 * M - 1} phases for M={M}, got {len(phases)}")
    counts = p.parallel_counts()
    z = spherical_heights(p).as_floats()
    rows = [np.array([[0.0, 0.0, 1.0]])]
    par_idx = [np.array([0])]
    for j in range(1, 2 * M):
        r_j = counts[j - 1] if j <= M else counts[2 * M - j - 1]
        z_j = z[j - 1] if j <= M else -z[2 * M - j - 1]
        rows.append(_ring(r_j, z_j, phases.thetas[j - 1]))
        par_idx.append(np.full(r_j, j))
    rows.append(np.array([[0.0, 0.0, -1.0]]))
    par_idx.append(np.array([2 * M]))
    pts = np.vstack(rows)
    assert pts.shape[0] == point_count_sphere(p)
    return SphericalPointSet(pts, np.concatenate(par_idx))


def generate_antipodal(p: Profile, phases: PhaseAssignment) -> SphericalPointSet:
    """Sphere generation with southern phases locked to theta_j + pi.

    Takes M phases (northern parallels and equator).  When the equator
    count is even the resulting set is closed under x -> -x.
    """
    M = p.M
    if len(phases) != M:
        raise ValueError(f"need {M} phases for M={M}, got {len(phases)}")
    south = [math.fmod(phases.thetas[M - 1 - k] + math.pi, TWO_PI) for k in range(1, M)]
    full = PhaseAssignment(phases.thetas + tuple(south), seed=phases.seed)
    return generate_sphere(p, full)


def generate_projective(p: Profile, phases: PhaseAssignment) -> ProjectivePointSet:
    """Projective configuration: pole, phased rings, fixed half-equator.

    Takes M phases for uniformity with the antipodal generator; the last
    entry is ignored because the half-equator points are pinned at
    angles 2*pi*k/count_M, k = 0..count_M/2 - 1.
    """
    M = p.M
    if len(phases) != M:
        raise ValueError(f"need {M} phases for M={M}, got {len(phases)}")
    counts = p.parallel_counts()
    z = projective_heights(p).as_floats()  # validates even equator
    r_M = counts[-1]
    rows = [np.array([[0.0, 0.0, 1.0]])]
    par_idx = [np.array([0])]
    for j in range(1, M):
        rows.append(_ring(counts[j - 1], z[j - 1], phases.thetas[j - 1]))
        par_idx.append(np.full(counts[j - 1], j))
    k = np.arange(r_M // 2)
    ang = TWO_PI * k / r_M
    rows.append(np.column_stack((np.cos(ang), np.sin(ang), np.zeros(r_M // 2))))
    par_idx.append(np.full(r_M // 2, M))
    reps = np.vstack(rows)
    assert reps.shape[0] == point_count_projective(p)
    return ProjectivePointSet(reps, np.concatenate(par_idx))


def antipodal_double(s: ProjectivePointSet) -> SphericalPointSet:
    """The 2N spherical points {x, -x} over all representatives x.

    With matched phases this reproduces :func:`generate_antipodal` of the
    same profile (with equator phase 0) as a multiset.
    """
    reps = s.representatives
    pts = np.vstack([reps, -reps])
    par = None
    if s.parallel_index is not None:
        M = int(s.parallel_index.max())
        par = np.concatenate([s.parallel_index, 2 * M - s.parallel_index])
    return SphericalPointSet(pts, par)


# ---------------------------------------------------------------------------
# file formats


def write_points_csv(points: np.ndarray, fh) -> None:
    """CSV with header x,y,z and 17 significant digits (exact round-trip)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["x", "y", "z"])
    for row in np.asarray(points):
        writer.writerow([f"{v:.17g}" for v in row])


def read_points_csv(fh) -> np.ndarray:
    reader = csv.reader(fh)
    header = next(reader)
    if header != ["x", "y", "z"]:
        raise ValueError(f"unexpected CSV header {header}")
    return np.array([[float(v) for v in row] for row in reader])


def write_points_json(points: np.ndarray, fh, metadata: dict) -> None:
    """JSON export: metadata keys (N, M, params, seed, thetas) plus points."""
    doc = dict(metadata)
    doc["N"] = int(np.asarray(points).shape[0])
    doc["points"] = [[float(v) for v in row] for row in np.asarray(points)]
    json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
    fh.write("\n")


def read_points_json(fh) -> tuple[np.ndarray, dict]:
    doc = json.load(fh)
    pts = np.array(doc.pop("points"))
    return pts, doc
