"""Spherical-earth geodesy helpers: great-circle distance and forward azimuth.

All functions work on degrees and return meters / degrees. The earth model is
a sphere of radius EARTH_RADIUS_M; that precision is sufficient for the
statistical pipeline built on top.
"""
from __future__ import annotations

import numpy as np

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(lon1, lat1, lon2, lat2):
    """Great-circle distance in meters between two points (degrees).

    Accepts scalars or numpy arrays (broadcast elementwise). Symmetric,
    non-negative, zero for identical coordinates.
    """
    lon1, lat1, lon2, lat2 = (np.radians(np.asarray(v, dtype=float))
                              for v in (lon1, lat1, lon2, lat2))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    a = np.sin(dlat / 2.0) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin(dlon / 2.0) ** 2
    a = np.clip(a, 0.0, 1.0)
    d = 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(a))
    if np.ndim(d) == 0:
        return float(d)
    return d


def initial_bearing_deg(lon1, lat1, lon2, lat2):
    """Forward azimuth from point 1 to point 2, degrees in [0, 360).

    0 = due north, 90 = due east. Coincident points map to 0 by convention.
    Accepts scalars or numpy arrays.
    """
    lam1, phi1, lam2, phi2 = (np.radians(np.asarray(v, dtype=float))
                              for v in (lon1, lat1, lon2, lat2))
    dlon = lam2 - lam1
    y = np.sin(dlon) * np.cos(phi2)
    x = np.cos(phi1) * np.sin(phi2) - np.sin(phi1) * np.cos(phi2) * np.cos(dlon)
    theta = np.degrees(np.arctan2(y, x)) % 360.0
    coincident = (lam1 == lam2) & (phi1 == phi2)
    theta = np.where(coincident, 0.0, theta)
    if np.ndim(theta) == 0:
        return float(theta)
    return theta


def bearing_change_deg(b1, b2):
    """Turning deviation between two bearings, folded into [0, 180].

    0 = no change of direction, 180 = full reversal. Invariant under adding
    a common rotation to both bearings (mod 360).
    """
    delta = np.abs(np.asarray(b2, dtype=float) - np.asarray(b1, dtype=float)) % 360.0
    folded = np.where(delta > 180.0, 360.0 - delta, delta)
    if np.ndim(folded) == 0:
        return float(folded)
    return folded
