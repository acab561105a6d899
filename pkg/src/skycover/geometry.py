"""Spherical geometry primitives.

Points on the unit sphere are plain numpy float64 arrays of shape (..., 3);
a single point is a shape-(3,) array. All operations broadcast, so the same
functions serve scalar call sites and bulk (N, 3) computations.

Distances are great-circle angles in radians, computed with the
atan2(|a x b|, a.b) form, which keeps full precision near zero separation
where arccos(a.b) does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
TANGENT_TOL = 1e-9


def unit_point(x: float, y: float, z: float) -> np.ndarray:
    """Build a point from Cartesian components, enforcing unit norm.

    Raises ValueError when x^2 + y^2 + z^2 deviates from 1 by more
    than ``UNIT_TOL``.
    """
    p = np.array([x, y, z], dtype=np.float64)
    if abs(float(p @ p) - 1.0) > UNIT_TOL:
        raise ValueError(f"point ({x}, {y}, {z}) is not on the unit sphere")
    return p


def normalized(v: np.ndarray) -> np.ndarray:
    """Scale vector(s) of shape (..., 3) to unit length."""
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n == 0.0):
        raise ValueError("cannot normalize a zero vector")
    return v / n


def ra_dec_to_point(ra_deg, dec_deg) -> np.ndarray:
    """Convert right ascension / declination (degrees) to unit vector(s).

    Convention: (ra=0, dec=0) -> (1, 0, 0); (ra=90, dec=0) -> (0, 1, 0);
    the north pole (dec=90) -> (0, 0, 1). Accepts scalars or arrays and
    returns shape (3,) or (N, 3) accordingly.
    """
    dec = np.asarray(dec_deg, dtype=np.float64)
    if np.any(dec < -90.0) or np.any(dec > 90.0):
        raise ValueError("declination must lie in [-90, 90] degrees")
    ra = np.radians(np.asarray(ra_deg, dtype=np.float64))
    dec = np.radians(dec)
    cd = np.cos(dec)
    return np.stack([cd * np.cos(ra), cd * np.sin(ra), np.sin(dec)], axis=-1)


def point_to_ra_dec(p: np.ndarray):
    """Inverse of :func:`ra_dec_to_point`; ra is reduced mod 360.

    At the poles ra is conventionally 0 (it is undefined there).
    """
    p = np.asarray(p, dtype=np.float64)
    ra = np.degrees(np.arctan2(p[..., 1], p[..., 0])) % 360.0
    dec = np.degrees(np.arcsin(np.clip(p[..., 2], -1.0, 1.0)))
    return ra, dec


def angular_distance(a: np.ndarray, b: np.ndarray):
    """Great-circle angle between unit vectors, in [0, pi]. Broadcasts."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    cross = np.cross(a, b)
    sin_d = np.linalg.norm(cross, axis=-1)
    cos_d = np.sum(a * b, axis=-1)
    return np.arctan2(sin_d, cos_d)


def tangent_toward(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Unit tangent vector at ``p`` pointing along the great circle to ``q``.

    Undefined (raises) when q is p or its antipode.
    """
    q = np.asarray(q, dtype=np.float64)
    t = q - (q @ p) * p
    n = float(np.linalg.norm(t))
    if n < 1e-15:
        raise ValueError("tangent direction undefined for coincident or antipodal points")
    return t / n


def move_on_sphere(p: np.ndarray, tangent_dir: np.ndarray, step) -> np.ndarray:
    """Walk ``step`` radians from ``p`` along the geodesic with initial
    direction ``tangent_dir``.

    ``tangent_dir`` must be orthogonal to ``p`` within ``TANGENT_TOL``.
    Broadcasts over leading axes; the result is renormalized to unit length.
    """
    p = np.asarray(p, dtype=np.float64)
    t = np.asarray(tangent_dir, dtype=np.float64)
    if np.any(np.abs(np.sum(p * t, axis=-1)) > TANGENT_TOL):
        raise ValueError("tangent_dir is not orthogonal to p")
    t = normalized(t)
    step = np.asarray(step, dtype=np.float64)[..., np.newaxis]
    q = p * np.cos(step) + t * np.sin(step)
    return normalized(q)


def transport_tangent(p: np.ndarray, tangent_dir: np.ndarray, step) -> np.ndarray:
    """Parallel-transport ``tangent_dir`` along its own geodesic by ``step``.

    Together with :func:`move_on_sphere` this lets a caller take repeated
    equal steps along a single great circle.
    """
    p = np.asarray(p, dtype=np.float64)
    t = normalized(np.asarray(tangent_dir, dtype=np.float64))
    step = np.asarray(step, dtype=np.float64)[..., np.newaxis]
    return -p * np.sin(step) + t * np.cos(step)


@dataclass(frozen=True)
class Disc:
    """A closed spherical cap: center (unit 3-vector) + angular radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if not (0.0 < self.radius < math.pi / 2.0):
            raise ValueError(f"disc radius {self.radius} outside (0, pi/2)")
        c = np.asarray(self.center, dtype=np.float64)
        if abs(float(c @ c) - 1.0) > UNIT_TOL:
            raise ValueError("disc center is not a unit vector")
        object.__setattr__(self, "center", c)

    def contains(self, p: np.ndarray):
        return contains(self, p)


def contains(disc: Disc, p: np.ndarray):
    """Closed-cap membership: distance(center, p) <= radius.

    The boundary is inclusive so that a point whose assignment penalty is
    exactly zero is also legally assignable.
    """
    return angular_distance(disc.center, p) <= disc.radius


@dataclass(frozen=True)
class RegionRect:
    """A survey subregion: an ra/dec-aligned rectangle, in degrees.

    No right-ascension wraparound: ra_min < ra_max is required.
    """

    ra_min: float
    ra_max: float
    dec_min: float
    dec_max: float

    def __post_init__(self):
        if not self.ra_min < self.ra_max:
            raise ValueError("require ra_min < ra_max")
        if not (-90.0 <= self.dec_min < self.dec_max <= 90.0):
            raise ValueError("require -90 <= dec_min < dec_max <= 90")

    def contains_radec(self, ra_deg, dec_deg):
        """Closed-rectangle membership test; broadcasts."""
        ra = np.asarray(ra_deg, dtype=np.float64)
        dec = np.asarray(dec_deg, dtype=np.float64)
        return (
            (ra >= self.ra_min)
            & (ra <= self.ra_max)
            & (dec >= self.dec_min)
            & (dec <= self.dec_max)
        )

    def area_sr(self) -> float:
        """Solid angle of the rectangle in steradians."""
        dra = math.radians(self.ra_max - self.ra_min)
        dz = math.sin(math.radians(self.dec_max)) - math.sin(math.radians(self.dec_min))
        return dra * dz

    def spherical_centroid(self) -> np.ndarray:
        """Area centroid of the rectangle, projected back to the sphere.

        The integral of the position vector over the rectangle has a closed
        form: the z component integrates sin(dec)cos(dec), and the x/y
        components integrate cos^2(dec) against cos/sin of ra.
        """
        ra0 = math.radians(self.ra_min)
        ra1 = math.radians(self.ra_max)
        d0 = math.radians(self.dec_min)
        d1 = math.radians(self.dec_max)
        # integral of cos^2 over dec, of cos/sin over ra
        ic2 = 0.5 * (d1 - d0) + 0.25 * (math.sin(2 * d1) - math.sin(2 * d0))
        iz = 0.5 * (math.sin(d1) ** 2 - math.sin(d0) ** 2)
        x = ic2 * (math.sin(ra1) - math.sin(ra0))
        y = ic2 * (math.cos(ra0) - math.cos(ra1))
        z = iz * (ra1 - ra0)
        return normalized(np.array([x, y, z]))

    def distance_to(self, p: np.ndarray):
        """Angular distance from point(s) to the rectangle (0 when inside).

        The nearest rectangle point is taken as the ra/dec-wise clamp of the
        query coordinate, with ra differences wrapped to (-180, 180].
        """
        ra, dec = point_to_ra_dec(np.asarray(p, dtype=np.float64))
        mid = 0.5 * (self.ra_min + self.ra_max)
        half = 0.5 * (self.ra_max - self.ra_min)
        off = (ra - mid + 180.0) % 360.0 - 180.0
        ra_near = mid + np.clip(off, -half, half)
        dec_near = np.clip(dec, self.dec_min, self.dec_max)
        return angular_distance(p, ra_dec_to_point(ra_near, dec_near))
