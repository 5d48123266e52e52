"""Piecewise-linear parallel-count profiles and the quasioptimal solver.

A profile is the blueprint of a diamond-type configuration: an
integer-coefficient, piecewise-linear map giving the number of points
placed on each parallel of the northern hemisphere.  The map is defined
on integer parallel indices 1..M (the equator is parallel M) by segments

    count(x) = alpha + beta * x   for x in (t_lo, t_hi],

where all of ``t_lo``, ``t_hi``, ``alpha``, ``beta`` are nonnegative
integers and the first slope is strictly positive.  Everything in this
module is exact integer/rational arithmetic; no floats.

The quasioptimal family (QGDE) is the specific eight-branch profile
parameterized by ``(m, gamma, delta_m, epsilon)``; :func:`solve_qgde`
inverts the family so that any target cardinality N >= 241 on the sphere
(N >= 121 on the projective plane) is hit exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import isqrt


class ProfileError(ValueError):
    """Invalid profile structure or out-of-domain solver input."""


@dataclass(frozen=True)
class Segment:
    """One linear piece count(x) = alpha + beta*x on integers in (t_lo, t_hi]."""

    t_lo: int
    t_hi: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.t_lo >= self.t_hi:
            raise ProfileError(f"segment needs t_lo < t_hi, got ({self.t_lo}, {self.t_hi}]")
        if self.alpha < 0 or self.beta < 0:
            raise ProfileError("segment coefficients must be nonnegative integers")

    def value(self, x: int) -> int:
        return self.alpha + self.beta * x

    def sum_over_integers(self) -> int:
        """Sum of alpha + beta*j over the integers j in (t_lo, t_hi]."""
        width = self.t_hi - self.t_lo
        return self.alpha * width + self.beta * (self.t_lo + 1 + self.t_hi) * width // 2


@dataclass(frozen=True)
class Profile:
    """A validated parallel-count map on integer parallels 1..M.

    ``M`` is the equator index (half the parallel count plus one for the
    full sphere).  Segments must partition (0, M] with the final segment
    covering (M-1, M] alone, and every integer parallel must carry at
    least one point.
    """

    M: int
    segments: tuple[Segment, ...]

    def __post_init__(self) -> None:
        segs = self.segments
        if len(segs) < 2:
            raise ProfileError("profile needs at least two segments (body plus equator piece)")
        if segs[0].t_lo != 0:
            raise ProfileError("first segment must start at t_lo = 0")
        for a, b in zip(segs, segs[1:]):
            if a.t_hi != b.t_lo:
                raise ProfileError(f"segments must be contiguous: ...{a.t_hi}] vs ({b.t_lo}...")
        if segs[-2].t_hi != self.M - 1 or segs[-1].t_hi != self.M:
            raise ProfileError("last two segments must end at M-1 and M")
        if segs[0].beta <= 0:
            raise ProfileError("first segment must have strictly positive slope")
        for j in range(1, self.M + 1):
            if self.points_on_parallel(j) < 1:
                raise ProfileError(f"parallel {j} would carry {self.points_on_parallel(j)} points")
        # bisect table for O(log n) parallel lookups
        object.__setattr__(self, "_uppers", tuple(s.t_hi for s in segs))

    @property
    def n(self) -> int:
        """Number of segments before the final equator piece."""
        return len(self.segments) - 1

    def points_on_parallel(self, j: int) -> int:
        """Point count on parallel j, 1 <= j <= M."""
        if not 1 <= j <= self.M:
            raise ProfileError(f"parallel index {j} outside [1, {self.M}]")
        uppers = getattr(self, "_uppers", None)
        if uppers is None:
            uppers = tuple(s.t_hi for s in self.segments)
        return self.segments[bisect.bisect_left(uppers, j)].value(j)

    def parallel_counts(self) -> list[int]:
        """Counts on parallels 1..M as a list."""
        out: list[int] = []
        for seg in self.segments:
            out.extend(seg.value(j) for j in range(seg.t_lo + 1, seg.t_hi + 1))
        return out

    def to_dict(self) -> dict:
        return {"M": self.M, "segments": [asdict(s) for s in self.segments]}

    @classmethod
    def from_dict(cls, data: dict) -> "Profile":
        segs = [Segment(**s) for s in data["segments"]]
        return build_profile(segs, data["M"])


def build_profile(segments: list[Segment], M: int) -> Profile:
    """Validate and assemble a profile from its segments."""
    if not segments:
        raise ProfileError("no segments given")
    return Profile(M=M, segments=tuple(segments))


def associated_constant(p: Profile) -> Fraction:
    """Regularity constant of a profile: max of alpha/M, beta, and M/t_1.

    Exact rational; controls the cardinality sandwich
    M^2/(2C^2) <= N <= 5*C*M^2.
    """
    t1 = p.segments[0].t_hi
    best = Fraction(p.M, t1)
    for s in p.segments:
        best = max(best, Fraction(s.alpha, p.M), Fraction(s.beta))
    return best


def point_count_sphere(p: Profile) -> int:
    """Total spherical cardinality: poles + equator + doubled northern parallels."""
    body = sum(s.sum_over_integers() for s in p.segments[:-1])
    return 2 + p.points_on_parallel(p.M) + 2 * body


def point_count_projective(p: Profile) -> int:
    """Projective cardinality: pole + half equator + northern parallels.

    Requires an even equator count so the half-equator is well defined.
    """
    r_M = p.points_on_parallel(p.M)
    if r_M % 2 != 0:
        raise ProfileError(f"projective count needs an even equator count, got {r_M}")
    body = sum(s.sum_over_integers() for s in p.segments[:-1])
    return 1 + r_M // 2 + body


@dataclass(frozen=True)
class QgdeParams:
    """Parameters selecting one quasioptimal profile.

    ``delta_m`` is the integer product delta*m; the rational delta is
    never materialized.  Accepted range is delta_m in [6m, 7m-1], which
    includes the degenerate m = 1 case where both optional branches are
    empty.
    """

    m: int
    gamma: int
    delta_m: int
    epsilon: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ProfileError("m must be a positive integer")
        if not 0 <= self.gamma <= 800:
            raise ProfileError(f"gamma {self.gamma} outside [0, 800]")
        if not 6 * self.m <= self.delta_m <= 7 * self.m - 1:
            raise ProfileError(f"delta_m {self.delta_m} outside [6m, 7m-1] for m={self.m}")
        if self.epsilon not in (-1, 0, 1):
            raise ProfileError(f"epsilon must be -1, 0 or 1, got {self.epsilon}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "QgdeParams":
        return cls(m=data["m"], gamma=data["gamma"], delta_m=data["delta_m"],
                   epsilon=data["epsilon"])


def qgde_profile(params: QgdeParams) -> Profile:
    """Materialize the eight-branch quasioptimal profile for the given params.

    Branch boundaries are 0, 2m, 3m, 4m, 5m, 6m, delta_m, 7m-1, 7m with
    slopes 6, 5, 4, 3, 2, 1, 1, 1.  Empty branches (zero-width intervals)
    are dropped so the partition invariant stays checkable.
    """
    m, g, dm, eps = params.m, params.gamma, params.delta_m, params.epsilon
    bounds = [0, 2 * m, 3 * m, 4 * m, 5 * m, 6 * m, dm, 7 * m - 1, 7 * m]
    alphas = [0, 2 * m, 5 * m, 9 * m, 14 * m, 20 * m + g, 20 * m + g + 1, 20 * m + g + 1 + eps]
    betas = [6, 5, 4, 3, 2, 1, 1, 1]
    segments = [
        Segment(t_lo=lo, t_hi=hi, alpha=a, beta=b)
        for lo, hi, a, b in zip(bounds[:-1], bounds[1:], alphas, betas)
        if lo < hi
    ]
    return build_profile(segments, 7 * m)


def solve_qgde(N: int) -> QgdeParams:
    """Parameters whose quasioptimal profile has exactly N spherical points.

    Exact for every N >= 241: the base family covers N = 239*m^2 + 2 and
    the leftover points are distributed over the central parallels
    (gamma per parallel, plus at most one extra on a band of parallels
    selected by delta_m, plus epsilon on the equator).
    """
    if N < 241:
        raise ProfileError(f"spherical cardinality must be at least 241, got {N}")
    q = (N - 2) // 239
    m = isqrt(q)
    if (N - 2) % 239 == 0 and m * m == q:
        return QgdeParams(m=m, gamma=0, delta_m=7 * m - 1, epsilon=-1)
    gamma, eta = divmod(N - 239 * m * m - 2, 2 * m - 1)
    if eta == 0:
        return QgdeParams(m=m, gamma=gamma, delta_m=7 * m - 1, epsilon=-1)
    if eta % 2 == 1:
        return QgdeParams(m=m, gamma=gamma, delta_m=7 * m - (eta - 1) // 2 - 1, epsilon=0)
    return QgdeParams(m=m, gamma=gamma, delta_m=7 * m - (eta - 2) // 2 - 1, epsilon=1)


def solve_qpgde(N: int) -> tuple[QgdeParams, Profile]:
    """Parameters and profile whose projective cardinality is exactly N.

    Solves the spherical problem for 2N; the equator count is then
    automatically even (the doubled total is even and the off-equator
    parallels contribute an even amount), so the half-equator exists.
    """
    if N < 121:
        raise ProfileError(f"projective cardinality must be at least 121, got {N}")
    params = solve_qgde(2 * N)
    profile = qgde_profile(params)
    got = point_count_projective(profile)
    if got != N:  # pragma: no cover - guarded by solve_qgde exactness
        raise ProfileError(f"internal solver error: projective count {got} != {N}")
    return params, profile
