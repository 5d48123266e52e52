"""Exact parallel heights and the per-segment quadratic height polynomial.

Heights are the third coordinates z_1 > ... > z_M = 0 of the parallels,
chosen so the expected logarithmic energy over random phases is minimal:

    z_j = 1 - (1 + count_j + 2 * sum_{k<j} count_k) / denominator

with denominator N-1 on the sphere and 2N-1 on the projective plane
(the two coincide: a projective configuration of N points doubles to a
spherical one with 2N points).  Everything is kept as exact rationals so
z_M = 0 and the trapezoid identities hold to machine precision once
floats are derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .profile import Profile, ProfileError, point_count_projective, point_count_sphere


@dataclass(frozen=True)
class HeightLadder:
    """Exact heights z_1..z_M with their common denominator.

    ``heights[j-1]`` is z_j.  By convention ``height(0)`` is 1, the
    height of the north pole in the extended height function.
    """

    heights: tuple[Fraction, ...]
    denominator: int

    def __post_init__(self) -> None:
        if not self.heights:
            raise ValueError("empty height ladder")
        if self.heights[-1] != 0:
            raise ValueError("equator height must be exactly 0")
        if self.heights[0] >= 1:
            raise ValueError("top height must be strictly below 1")
        for a, b in zip(self.heights, self.heights[1:]):
            if not a > b:
                raise ValueError("heights must be strictly decreasing")

    def __len__(self) -> int:
        return len(self.heights)

    def height(self, j: int) -> Fraction:
        """z_j for 1 <= j <= M; z_0 = 1 is the pole of the extended map."""
        if j == 0:
            return Fraction(1)
        return self.heights[j - 1]

    def as_floats(self) -> np.ndarray:
        """Heights as float64, in ladder order. Exact at the equator."""
        return np.array([float(z) for z in self.heights])

    def to_json(self) -> list[dict]:
        """Serialize as [{"num": int, "den": int}] over the common denominator."""
        den = self.denominator
        return [{"num": int(z * den), "den": den} for z in self.heights]

    @classmethod
    def from_json(cls, data: list[dict]) -> "HeightLadder":
        den = data[-1]["den"]
        return cls(tuple(Fraction(e["num"], e["den"]) for e in data), den)


def _ladder_from_counts(counts: list[int], denominator: int) -> HeightLadder:
    heights = []
    prefix = 0
    for r_j in counts:
        heights.append(Fraction(denominator - (1 + r_j + 2 * prefix), denominator))
        prefix += r_j
    return HeightLadder(tuple(heights), denominator)


def spherical_heights(p: Profile) -> HeightLadder:
    """Energy-minimizing heights for the spherical configuration of p."""
    N = point_count_sphere(p)
    return _ladder_from_counts(p.parallel_counts(), N - 1)


def projective_heights(p: Profile) -> HeightLadder:
    """Heights for the projective configuration of p (even equator required).

    Numerically identical to the spherical ladder of the same profile:
    the doubled antipodal configuration has 2N points, so the projective
    denominator 2N-1 equals the spherical one.
    """
    N = point_count_projective(p)  # validates even equator count
    return _ladder_from_counts(p.parallel_counts(), 2 * N - 1)


@dataclass(frozen=True)
class HeightPolynomial:
    """Quadratic c0 + c1*x + c2*x^2 interpolating the ladder on one segment.

    Exact rational coefficients; evaluating at every integer j in
    (t_lo, t_hi] reproduces z_j exactly.
    """

    segment: int  # 1-based segment index
    t_lo: int
    t_hi: int
    c0: Fraction
    c1: Fraction
    c2: Fraction

    def value(self, x):
        """Evaluate at x: exact for int/Fraction input, float for float."""
        return self.c0 + x * (self.c1 + x * self.c2)

    def derivative(self, x):
        return self.c1 + 2 * self.c2 * x

    def float_coeffs(self) -> tuple[float, float, float]:
        return float(self.c0), float(self.c1), float(self.c2)


def height_polynomial(p: Profile, ell: int) -> HeightPolynomial:
    """Interpolating quadratic of segment ell (1-based, 1 <= ell <= n+1).

    With t the left endpoint of the segment, prefix the point total on
    parallels 1..t, and (alpha, beta) the segment coefficients, the
    height at x in (t, t_hi] is

        z(x) = 1 - (beta*x^2 + 2*alpha*x + c) / (N - 1),
        c = 1 + 2*prefix - alpha - 2*alpha*t - beta*t*(t + 1).
    """
    if not 1 <= ell <= len(p.segments):
        raise ProfileError(f"segment index {ell} outside [1, {len(p.segments)}]")
    seg = p.segments[ell - 1]
    N = point_count_sphere(p)
    den = N - 1
    t = seg.t_lo
    prefix = sum(s.sum_over_integers() for s in p.segments[: ell - 1])
    c = 1 + 2 * prefix - seg.alpha - 2 * seg.alpha * t - seg.beta * t * (t + 1)
    return HeightPolynomial(
        segment=ell,
        t_lo=seg.t_lo,
        t_hi=seg.t_hi,
        c0=Fraction(den - c, den),
        c1=Fraction(-2 * seg.alpha, den),
        c2=Fraction(-seg.beta, den),
    )
