"""Voxelised intersection of transmission-range spheres and slice queries.

Regions live on a regular lattice ``origin + resolution * index``. The origin
is the minimum corner of the bounding box of all spheres (z clipped to 0), so
identical inputs always give identical lattices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EmptyRegionError, InvalidParameterError

X_AT_Y_EXTREMES = "maxX_at_yExtremes"
Y_AT_X_EXTREMES = "maxY_at_xExtremes"
THROUGH_CENTROID = "axis_aligned_through"
QUERIES = (X_AT_Y_EXTREMES, Y_AT_X_EXTREMES, THROUGH_CENTROID)


@dataclass(frozen=True, eq=False)
class VoxelRegion:
    resolution: float
    origin: np.ndarray    # (3,)
    indices: np.ndarray   # (n, 3) int lattice indices, sorted lexicographically (z, y, x)

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.resolution * self.indices

    def __len__(self):
        return len(self.indices)

    @property
    def empty(self) -> bool:
        return len(self.indices) == 0


class AltitudeSlice(NamedTuple):
    z: float
    points: np.ndarray  # (k, 2)


def _as_centers(centers, radii):
    c = np.asarray(centers, dtype=float)
    r = np.asarray(radii, dtype=float)
    if c.ndim != 2 or c.shape[1] != 3 or len(c) == 0:
        raise InvalidParameterError("centers must be a non-empty (n, 3) array")
    if r.shape != (len(c),):
        raise InvalidParameterError(f"{len(c)} centers but radii has shape {r.shape}")
    if np.any(~np.isfinite(r)) or np.any(r <= 0):
        raise InvalidParameterError("radii must be > 0")
    return c, r


def intersect_spheres(centers, radii, resolution: float = 0.5) -> VoxelRegion:
    """All lattice points lying inside every sphere (boundary included)."""
    c, r = _as_centers(centers, radii)
    if not (math.isfinite(resolution) and resolution > 0):
        raise InvalidParameterError("resolution must be > 0")

    origin = (c - r[:, None]).min(axis=0)
    origin[2] = max(origin[2], 0.0)
    # only the box shared by all spheres can hold members
    lo = np.maximum((c - r[:, None]).max(axis=0), origin)
    hi = (c + r[:, None]).min(axis=0)
    empty = VoxelRegion(resolution, origin, np.empty((0, 3), dtype=np.int64))
    if np.any(hi < lo):
        return empty
    ilo = np.maximum(np.floor((lo - origin) / resolution).astype(np.int64) - 1, 0)
    ihi = np.ceil((hi - origin) / resolution).astype(np.int64) + 1

    ix = np.arange(ilo[0], ihi[0] + 1)
    iy = np.arange(ilo[1], ihi[1] + 1)
    X, Y = np.meshgrid(origin[0] + resolution * ix, origin[1] + resolution * iy, indexing="xy")
    r2 = r ** 2
    found = []
    for iz in range(ilo[2], ihi[2] + 1):
        z = origin[2] + resolution * iz
        inside = np.ones(X.shape, dtype=bool)
        for k in range(len(c)):
            dz2 = (z - c[k, 2]) ** 2
            if dz2 > r2[k]:
                inside[:] = False
                break
            inside &= (X - c[k, 0]) ** 2 + (Y - c[k, 1]) ** 2 + dz2 <= r2[k]
        jj, ii = np.nonzero(inside)
        if len(ii):
            found.append(np.column_stack([ix[ii], iy[jj], np.full(len(ii), iz)]))
    if not found:
        return empty
    return VoxelRegion(resolution, origin, np.concatenate(found).astype(np.int64))


def inside_all(points, centers, radii, slack: float = 0.0) -> np.ndarray:
    """Boolean mask: which ``points`` lie within ``radius + slack`` of every center."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    c, r = _as_centers(centers, radii)
    d2 = ((p[:, None, :] - c[None, :, :]) ** 2).sum(axis=-1)
    return np.all(d2 <= (r + slack) ** 2, axis=1)


def best_altitude_slice(region: VoxelRegion) -> AltitudeSlice:
    """Horizontal slice with the most points; ties go to the lowest altitude."""
    if region.empty:
        raise EmptyRegionError("region is empty")
    levels, counts = np.unique(region.indices[:, 2], return_counts=True)
    level = levels[int(np.argmax(counts))]
    pts = region.points[region.indices[:, 2] == level]
    return AltitudeSlice(float(region.origin[2] + region.resolution * level), pts[:, :2])


def slice_centroid(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.size == 0:
        raise EmptyRegionError("slice is empty")
    return p.reshape(-1, 2).mean(axis=0)


def _extremes_along(p, a):
    """max/min of coordinate ``a`` on the rows where the other coordinate is extreme."""
    b = 1 - a
    out = []
    for edge in (p[:, b].max(), p[:, b].min()):
        row = p[p[:, b] == edge]
        out.append(row[np.argmax(row[:, a])])
        out.append(row[np.argmin(row[:, a])])
    return out


def _nearest_level(values, target):
    levels = np.unique(values)
    return levels[int(np.argmin(np.abs(levels - target)))]


def extreme_points(points, query: str, center=None) -> np.ndarray:
    """Four extreme slice points, shape (4, 2).

    ``maxX_at_yExtremes``: max-x and min-x on the top row, then on the bottom
    row. ``maxY_at_xExtremes``: the same with the axes swapped (max-y, min-y
    on the rightmost, then leftmost column). ``axis_aligned_through``: max-y
    and min-y on the column nearest ``center``, then max-x and min-x on the
    row nearest it. Degenerate slices repeat points.
    """
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(p) == 0:
        raise EmptyRegionError("slice is empty")
    if query == X_AT_Y_EXTREMES:
        return np.array(_extremes_along(p, 0))
    if query == Y_AT_X_EXTREMES:
        return np.array(_extremes_along(p, 1))
    if query == THROUGH_CENTROID:
        if center is None:
            raise InvalidParameterError("axis_aligned_through needs a center point")
        cx, cy = center
        col = p[p[:, 0] == _nearest_level(p[:, 0], cx)]
        row = p[p[:, 1] == _nearest_level(p[:, 1], cy)]
        return np.array([col[np.argmax(col[:, 1])], col[np.argmin(col[:, 1])],
                         row[np.argmax(row[:, 0])], row[np.argmin(row[:, 0])]])
    raise InvalidParameterError(f"unknown query {query!r}; expected one of {QUERIES}")
