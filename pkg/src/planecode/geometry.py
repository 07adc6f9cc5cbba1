"""Oriented planes and the spherical encoding of their normals.

A plane is a unit normal plus a signed offset: the point set
``{p : omega . p = h}``.  The normal makes it oriented; the closed
half-space behind the normal (``omega . p <= h``) is written e- and the
open half-space ahead of it e+.  Normals serialize as two angles
``(nu, phi)``: the polar angle from +z in ``[0, pi]`` and the azimuth
from +x in ``[0, 2*pi)``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriangle, NotUnitVector

EPS_AREA = 1e-12
EPS_UNIT = 1e-9
TWO_PI = 2.0 * math.pi


class Side(enum.Enum):
    """Half-space classification; the boundary belongs to the negative side."""

    NEGATIVE_CLOSED = "negative_closed"
    POSITIVE = "positive"


@dataclass(frozen=True)
class SphericalDirection:
    """Unit direction as (polar, azimuth) angles in radians.

    ``nu`` is measured from +z and stays in ``[0, pi]``; ``phi`` is the
    azimuth in ``[0, 2*pi)``.  At the poles ``phi`` carries no
    information and is fixed to 0 by the conversion functions, so equal
    directions always compare equal.
    """

    nu: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.nu <= math.pi:
            raise ValueError("nu %r outside [0, pi]" % (self.nu,))
        if not 0.0 <= self.phi < TWO_PI:
            raise ValueError("phi %r outside [0, 2*pi)" % (self.phi,))


@dataclass(frozen=True)
class OrientedPlane:
    """The pair (direction, h): unit normal and signed origin distance."""

    direction: SphericalDirection
    h: float

    def __post_init__(self):
        if not math.isfinite(self.h):
            raise ValueError("h must be finite, got %r" % (self.h,))

    @property
    def normal(self):
        return unit_vector_from_spherical(self.direction)

    def signed_distance(self, points):
        """omega . p - h, vectorized over leading axes of ``points``."""
        p = np.asarray(points, dtype=float)
        return p @ self.normal - self.h

    def negated(self):
        """The same plane with the opposite orientation (omega, h -> -omega, -h)."""
        return OrientedPlane(spherical_from_unit_vector(-self.normal), -self.h)


def spherical_from_unit_vector(w):
    """Recover (nu, phi) from a unit vector.

    nu = arccos(w_z).  phi comes from the two-argument arctangent of
    (w_y, w_x) folded into [0, 2*pi); a single-argument arccos recovery
    would be sign-ambiguous in w_y.  Raises NotUnitVector when the
    input norm is off by more than EPS_UNIT.
    """
    w = np.asarray(w, dtype=float)
    n = math.sqrt(float(w @ w))
    if abs(n - 1.0) > EPS_UNIT:
        raise NotUnitVector("vector norm %.17g, expected 1" % n)
    nu = math.acos(min(1.0, max(-1.0, float(w[2]))))
    if w[0] == 0.0 and w[1] == 0.0:
        return SphericalDirection(nu, 0.0)
    phi = math.atan2(float(w[1]), float(w[0])) % TWO_PI
    if phi >= TWO_PI:
        # a tiny negative atan2 result rounds up to exactly 2*pi
        phi = 0.0
    return SphericalDirection(nu, phi)


def unit_vector_from_spherical(d):
    s = math.sin(d.nu)
    return np.array([s * math.cos(d.phi), s * math.sin(d.phi), math.cos(d.nu)])


def plane_from_triangle(p1, p2, p3, eps_area=EPS_AREA):
    """Oriented plane through three points.

    The normal is the normalized cross product (p2 - p1) x (p3 - p2),
    so a counterclockwise vertex order seen from outside yields an
    outward normal; the offset is omega . p1.  The degeneracy test is
    on the squared cross-product norm, so ``eps_area`` lives at the
    length**4 scale.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    p3 = np.asarray(p3, dtype=float)
    c = np.cross(p2 - p1, p3 - p2)
    nsq = float(c @ c)
    if nsq <= eps_area:
        raise DegenerateTriangle(
            "squared cross norm %.3g <= %.3g" % (nsq, eps_area)
        )
    n = c / math.sqrt(nsq)
    return OrientedPlane(spherical_from_unit_vector(n), float(n @ p1))


def classify_side(plane, p, eps=0.0):
    """NEGATIVE_CLOSED when omega . p - h <= eps, POSITIVE otherwise."""
    d = float(plane.signed_distance(p))
    return Side.NEGATIVE_CLOSED if d <= eps else Side.POSITIVE


def plane_from_normal_offset(normal, h):
    """Plane from a direction vector (any nonzero length) and an offset.

    ``h`` is rescaled together with the normal, so (2n, 2h) and (n, h)
    name the same plane.
    """
    n = np.asarray(normal, dtype=float)
    ln = math.sqrt(float(n @ n))
    if not ln > 0.0 or not math.isfinite(ln):
        raise ValueError("normal must be a finite nonzero vector")
    n = n / ln
    return OrientedPlane(spherical_from_unit_vector(n), float(h) / ln)


def plane_through_point(normal, point):
    """Plane with the given direction passing through ``point``."""
    n = np.asarray(normal, dtype=float)
    ln = math.sqrt(float(n @ n))
    if not ln > 0.0 or not math.isfinite(ln):
        raise ValueError("normal must be a finite nonzero vector")
    n = n / ln
    return OrientedPlane(
        spherical_from_unit_vector(n), float(n @ np.asarray(point, dtype=float))
    )


def angle_between(u, v):
    """Angle between two vectors in radians, stable near 0 and pi."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = np.cross(u, v)
    return math.atan2(math.sqrt(float(c @ c)), float(u @ v))


SNAP_AXIS = 1e-12  # zero-snap for direction components and offsets


def snapped_plane(direction, h, scale=1.0):
    """Plane from an approximate normal and offset, zeroing noise.

    Accumulated rounding leaves axis-aligned normals with stray 1e-17
    components and zero offsets at 1e-24; both survive a float-32
    round-trip because its precision is relative, which breaks
    re-encode byte stability.  Components below SNAP_AXIS (offsets
    below SNAP_AXIS * scale) are therefore forced to exactly zero
    before the angles are taken.
    """
    d = np.asarray(direction, dtype=float).copy()
    d[np.abs(d) < SNAP_AXIS] = 0.0
    d /= math.sqrt(float(d @ d))
    h = float(h)
    if abs(h) < SNAP_AXIS * scale:
        h = 0.0
    return OrientedPlane(spherical_from_unit_vector(d), h)
