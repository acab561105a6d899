"""Problem instances: catalog ingestion, subsampling, and a synthetic
galaxy-field generator.

The catalog format is UTF-8 CSV with columns ``ra_deg,dec_deg`` in decimal
degrees. A header row is allowed (detected by a non-numeric first field) and
lines starting with ``#`` are comments. The generator writes the same format
so generated fields are replayable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from .geometry import RegionRect, angular_distance, move_on_sphere, ra_dec_to_point


class CatalogError(ValueError):
    """Malformed or empty catalog input."""


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class Instance:
    """A covering problem: points on the sphere + disc radius + capacity.

    ``galaxies`` is an (n, 3) float64 array of unit vectors, all inside
    ``region``. ``out_of_region`` records how many catalog rows were outside
    the region and therefore excluded (never silently).
    """

    galaxies: np.ndarray
    region: RegionRect
    radius: float
    capacity: int
    out_of_region: int = 0

    def __post_init__(self):
        g = np.asarray(self.galaxies, dtype=np.float64)
        if g.ndim != 2 or g.shape[1] != 3 or g.shape[0] == 0:
            raise ValueError("galaxies must be a non-empty (n, 3) array")
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not 0.0 < self.radius < math.pi / 2.0:
            raise ValueError("radius must lie in (0, pi/2) radians")
        object.__setattr__(self, "galaxies", g)

    @property
    def n(self) -> int:
        return self.galaxies.shape[0]


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of the synthetic field generator.

    ``cluster_sigma`` is the RMS angular offset (radians) of a clustered
    point from its cluster center.
    """

    region: RegionRect
    target_count: int
    cluster_fraction: float = 0.4
    cluster_count: int = 0  # 0 -> max(1, round(target_count / 500))
    cluster_sigma: float = math.radians(1.5)
    seed: int = 0

    def __post_init__(self):
        if self.target_count < 1:
            raise ValueError("target_count must be >= 1")
        if not 0.0 <= self.cluster_fraction <= 1.0:
            raise ValueError("cluster_fraction must lie in [0, 1]")
        if self.cluster_sigma <= 0.0:
            raise ValueError("cluster_sigma must be positive")

    def effective_cluster_count(self) -> int:
        if self.cluster_count > 0:
            return self.cluster_count
        return max(1, _round_half_up(self.target_count / 500.0))


def read_catalog(
    lines: Iterable[str] | IO[str],
    region: RegionRect,
    radius: float,
    capacity: int,
) -> Instance:
    """Parse a catalog and keep the points inside ``region``.

    Out-of-region rows are counted on the returned instance. Raises
    :class:`CatalogError` for malformed rows (with the 1-based line number)
    and for catalogs with no usable points.
    """
    ras: list[float] = []
    decs: list[float] = []
    saw_data = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) < 2:
            raise CatalogError(f"line {lineno}: expected 'ra_deg,dec_deg', got {line!r}")
        try:
            ra = float(fields[0])
            dec = float(fields[1])
        except ValueError:
            if not saw_data:
                # header row: non-numeric first field before any data
                saw_data = True
                continue
            raise CatalogError(f"line {lineno}: non-numeric coordinates in {line!r}") from None
        if not -90.0 <= dec <= 90.0:
            raise CatalogError(f"line {lineno}: declination {dec} outside [-90, 90]")
        saw_data = True
        ras.append(ra % 360.0)
        decs.append(dec)
    if not ras:
        raise CatalogError("catalog contains no data rows")
    ra_arr = np.asarray(ras)
    dec_arr = np.asarray(decs)
    inside = region.contains_radec(ra_arr, dec_arr)
    dropped = int(np.sum(~inside))
    if not np.any(inside):
        raise CatalogError("no catalog points fall inside the region")
    pts = ra_dec_to_point(ra_arr[inside], dec_arr[inside])
    return Instance(pts, region, radius, capacity, out_of_region=dropped)


def write_catalog(stream: IO[str], inst_or_points, header: bool = True) -> None:
    """Write points as ``ra_deg,dec_deg`` CSV (full float precision)."""
    from .geometry import point_to_ra_dec

    pts = inst_or_points.galaxies if isinstance(inst_or_points, Instance) else inst_or_points
    ra, dec = point_to_ra_dec(np.asarray(pts, dtype=np.float64))
    if header:
        stream.write("ra_deg,dec_deg\n")
    for r, d in zip(ra, dec):
        stream.write(f"{r!r},{d!r}\n")


def subsample(inst: Instance, fraction: float, seed: int) -> Instance:
    """Keep round(fraction * n) galaxies, chosen without replacement.

    Capacity is scaled by the same fraction and rounded to the nearest
    integer, mirroring how per-snapshot capacity scales with the sampling
    percentage of the source catalog. Deterministic for a fixed seed.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must lie in (0, 1]")
    k = _round_half_up(fraction * inst.n)
    if k < 1:
        raise ValueError(f"fraction {fraction} keeps no galaxies (n={inst.n})")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(inst.n, size=k, replace=False))
    cap = max(1, _round_half_up(inst.capacity * fraction))
    return Instance(inst.galaxies[idx], inst.region, inst.radius, cap)


def _uniform_in_region(rng: np.random.Generator, region: RegionRect, count: int) -> np.ndarray:
    """Area-uniform sample: uniform in (ra, sin dec)."""
    ra = rng.uniform(region.ra_min, region.ra_max, size=count)
    z0 = math.sin(math.radians(region.dec_min))
    z1 = math.sin(math.radians(region.dec_max))
    dec = np.degrees(np.arcsin(rng.uniform(z0, z1, size=count)))
    return ra_dec_to_point(ra, dec)


def _cluster_points(
    rng: np.random.Generator,
    region: RegionRect,
    center: np.ndarray,
    sigma: float,
    count: int,
) -> np.ndarray:
    """Sample a spherical Gaussian bump, redrawing out-of-region points.

    Offsets are an isotropic tangent-plane Gaussian with per-axis standard
    deviation sigma/sqrt(2), i.e. RMS angular offset sigma, applied through
    the exponential map.
    """
    # local tangent basis at the cluster center
    east = np.cross(np.array([0.0, 0.0, 1.0]), center)
    norm = np.linalg.norm(east)
    if norm < 1e-12:  # cluster centered at a pole
        east = np.array([1.0, 0.0, 0.0])
    else:
        east = east / norm
    north = np.cross(center, east)

    out = np.empty((count, 3))
    have = 0
    guard = 0
    while have < count:
        need = count - have
        uv = rng.normal(0.0, sigma / math.sqrt(2.0), size=(need, 2))
        step = np.hypot(uv[:, 0], uv[:, 1])
        step = np.minimum(step, math.pi * 0.999)
        safe = np.maximum(step, 1e-300)
        tangent = (uv[:, 0, None] * east + uv[:, 1, None] * north) / safe[:, None]
        pts = move_on_sphere(np.broadcast_to(center, (need, 3)), tangent, step)
        from .geometry import point_to_ra_dec

        ra, dec = point_to_ra_dec(pts)
        keep = region.contains_radec(ra, dec)
        kept = pts[keep]
        out[have : have + kept.shape[0]] = kept
        have += kept.shape[0]
        guard += 1
        if guard > 10000:
            raise RuntimeError("cluster sampling failed to land inside the region")
    return out


def generate(config: GeneratorConfig, radius: float, capacity: int) -> Instance:
    """Generate a dense, somewhat uniform field with clustering tendencies.

    A (1 - cluster_fraction) share of the points is area-uniform over the
    region; the rest is split multinomially across ``cluster_count`` Gaussian
    bumps whose centers are themselves area-uniform. Bit-for-bit reproducible
    for a fixed seed.
    """
    if config.region.area_sr() <= 0.0:
        raise ValueError("region has zero area")
    rng = np.random.default_rng(config.seed)
    n = config.target_count
    n_clustered = _round_half_up(config.cluster_fraction * n)
    n_uniform = n - n_clustered

    blocks = []
    if n_uniform > 0:
        blocks.append(_uniform_in_region(rng, config.region, n_uniform))
    if n_clustered > 0:
        k = config.effective_cluster_count()
        centers = _uniform_in_region(rng, config.region, k)
        sizes = rng.multinomial(n_clustered, np.full(k, 1.0 / k))
        for ci in range(k):
            if sizes[ci] == 0:
                continue
            blocks.append(
                _cluster_points(rng, config.region, centers[ci], config.cluster_sigma, int(sizes[ci]))
            )
    pts = np.concatenate(blocks, axis=0)
    return Instance(pts, config.region, radius, capacity)
