"""Convex plane codes: encode, decode, and closed-form rigid transforms.

A convex solid is stored as the ordered list of its face planes; the
solid itself is the intersection of their closed negative half-spaces.
Decoding enumerates all plane triples, solves the 3x3 systems, keeps
the feasible intersection points and reassembles faces as convex rings.
"""

import itertools
import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import EmptyRegion, NotARotation, NotClosed, UnboundedRegion, NotConvex
from .geometry import (
    OrientedPlane,
    SNAP_AXIS,
    plane_from_triangle,
    snapped_plane,
    spherical_from_unit_vector,
)
from .mesh import TriangleMesh

EPS_CONVEX_REL = 1e-7     # convexity slack per unit of bounding-box diagonal
COND_LIMIT = 1e8          # triple solves beyond this condition number are skipped
SNAP_REL = 1e-7           # vertex merge cell per unit of candidate bbox diagonal
FEAS_REL = 1e-9           # feasibility slack per unit of max(1, |h|)
COPLANAR_ANGLE = 1e-6     # radians; triangles closer than this may share a face

_NEIGHBOR_CELLS = [
    (dx, dy, dz)
    for dx in (-1, 0, 1)
    for dy in (-1, 0, 1)
    for dz in (-1, 0, 1)
]


class PlaneSet:
    """Ordered list of oriented planes encoding one convex region."""

    def __init__(self, planes):
        self.planes = list(planes)

    def __len__(self):
        return len(self.planes)

    def __iter__(self):
        return iter(self.planes)

    def __getitem__(self, i):
        return self.planes[i]

    def __repr__(self):
        return "PlaneSet(n=%d)" % len(self.planes)

    def normals(self):
        if not self.planes:
            return np.zeros((0, 3))
        return np.array([p.normal for p in self.planes])

    def offsets(self):
        return np.array([p.h for p in self.planes])

    def triplets(self):
        """(n, 3) array of (nu, phi, h) rows in list order."""
        return np.array(
            [(p.direction.nu, p.direction.phi, p.h) for p in self.planes]
        ).reshape(-1, 3)

    def sorted_canonical(self):
        """Planes reordered by (nu, phi, h) for deterministic output."""
        key = lambda p: (p.direction.nu, p.direction.phi, p.h)
        return PlaneSet(sorted(self.planes, key=key))


class ConvexPolyhedron:
    """Decoded solid: vertex array plus convex face rings.

    ``faces[i]`` is a counterclockwise vertex-index ring (seen from
    outside) lying on plane ``planes[face_planes[i]]``.  Planes that
    carry no face (redundant half-spaces) are listed separately rather
    than treated as an error.
    """

    def __init__(self, vertices, faces, face_planes, planes, redundant_planes):
        self.vertices = vertices
        self.faces = faces
        self.face_planes = face_planes
        self.planes = planes
        self.redundant_planes = redundant_planes

    def to_mesh(self):
        tris = []
        for ring in self.faces:
            for k in range(1, len(ring) - 1):
                tris.append((ring[0], ring[k], ring[k + 1]))
        return TriangleMesh(self.vertices, np.asarray(tris, dtype=np.int64))


def _merge_close(points, cell):
    """Snap points closer than ~cell onto shared representatives.

    Grid buckets with a 27-cell neighborhood check; returns the merged
    point array (cluster means) in first-appearance order.
    """
    buckets = {}
    sums = []
    counts = []
    firsts = []
    for p in points:
        key = tuple(int(v) for v in np.floor(p / cell))
        hit = -1
        for off in _NEIGHBOR_CELLS:
            k2 = (key[0] + off[0], key[1] + off[1], key[2] + off[2])
            j = buckets.get(k2, -1)
            if j >= 0 and np.linalg.norm(p - firsts[j]) <= 2.0 * cell:
                hit = j
                break
        if hit < 0:
            buckets[key] = len(sums)
            sums.append(p.copy())
            counts.append(1)
            firsts.append(p)
        else:
            sums[hit] += p
            counts[hit] += 1
    return np.array(sums) / np.array(counts)[:, None]


def decode_convex(code, eps=None):
    """Intersect the closed negative half-spaces of ``code``.

    Enumerates plane triples in chunks, discards solves with condition
    number beyond COND_LIMIT, keeps intersection points feasible for
    every half-space, merges duplicates and builds one convex ring per
    plane with three or more incident vertices.  Output is canonical:
    vertices sorted lexicographically, faces in plane order, each ring
    starting at its smallest vertex index.
    """
    planes = list(code)
    n = len(planes)
    if n < 4:
        raise UnboundedRegion("%d half-space(s) cannot bound a volume" % n)
    normals = np.array([p.normal for p in planes])
    offsets = np.array([p.h for p in planes])

    try:
        hull = ConvexHull(normals)
    except QhullError:
        raise UnboundedRegion("plane normals are degenerate (coplanar or fewer)")
    if hull.equations[:, 3].max() > -1e-9:
        raise UnboundedRegion("normals do not surround the origin")

    feas = FEAS_REL * max(1.0, float(np.abs(offsets).max())) if eps is None else eps

    triples = np.array(
        list(itertools.combinations(range(n), 3)), dtype=np.int64
    )
    candidates = []
    for lo in range(0, len(triples), 200000):
        chunk = triples[lo : lo + 200000]
        a = normals[chunk]
        b = offsets[chunk]
        cond = np.linalg.cond(a)
        ok = np.isfinite(cond) & (cond < COND_LIMIT)
        if not ok.any():
            continue
        pts = np.linalg.solve(a[ok], b[ok][:, :, None])[:, :, 0]
        good = np.isfinite(pts).all(axis=1)
        dist = pts[good] @ normals.T - offsets
        feasible = (dist <= feas).all(axis=1)
        candidates.append(pts[good][feasible])
    candidates = (
        np.concatenate(candidates) if candidates else np.zeros((0, 3))
    )
    if len(candidates) == 0:
        raise EmptyRegion("no point satisfies all half-spaces")

    span = candidates.max(axis=0) - candidates.min(axis=0)
    diag = float(np.linalg.norm(span))
    cell = SNAP_REL * diag if diag > 0 else 1e-12
    verts = _merge_close(candidates, cell)

    order = np.lexsort((verts[:, 2], verts[:, 1], verts[:, 0]))
    verts = verts[order]

    eps_face = max(feas, 3.0 * cell)
    dist = verts @ normals.T - offsets
    faces = []
    face_planes = []
    redundant = []
    for i in range(n):
        incident = np.where(np.abs(dist[:, i]) <= eps_face)[0]
        if len(incident) < 3:
            redundant.append(i)
            continue
        w = normals[i]
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(w)))] = 1.0
        u = axis - (axis @ w) * w
        u /= np.linalg.norm(u)
        v = np.cross(w, u)
        rel = verts[incident] - verts[incident].mean(axis=0)
        ang = np.arctan2(rel @ v, rel @ u)
        ring = incident[np.argsort(ang)]
        start = int(np.argmin(ring))
        ring = np.roll(ring, -start)
        faces.append([int(x) for x in ring])
        face_planes.append(i)
    return ConvexPolyhedron(verts, faces, face_planes, planes, redundant)


def encode_convex(mesh, eps=None):
    """Face planes of a closed convex mesh, coplanar groups merged.

    Every vertex must sit in the closed negative half-space of every
    triangle's plane (within ``eps``, default scaled by the bounding-box
    diagonal); the first violation is reported in the NotConvex error.
    Adjacent coplanar triangles contribute a single area-weighted plane.
    The result is sorted canonically by (nu, phi, h).
    """
    if not mesh.is_closed:
        raise NotClosed("mesh has boundary or over-shared edges")
    diag = mesh.bbox_diagonal()
    if eps is None:
        eps = EPS_CONVEX_REL * diag

    p1, p2, p3 = mesh.triangle_corners()
    planes = [
        plane_from_triangle(p1[t], p2[t], p3[t])
        for t in range(len(mesh.triangles))
    ]
    normals = np.array([p.normal for p in planes])
    offsets = np.array([p.h for p in planes])

    dist = normals @ mesh.vertices.T - offsets[:, None]
    bad = np.argwhere(dist > eps)
    if len(bad):
        t, v = (int(x) for x in bad[0])
        raise NotConvex(
            "vertex %d lies %.3g outside the plane of triangle %d"
            % (v, float(dist[t, v]), t),
            vertex_index=v,
            triangle_index=t,
        )

    groups = _coplanar_groups(mesh, normals, offsets, eps)
    cross = np.cross(p2 - p1, p3 - p2)
    centers = (p1 + p2 + p3) / 3.0
    areas = 0.5 * np.linalg.norm(cross, axis=1)
    scale = max(1.0, diag)
    out = []
    for group in groups:
        g = np.asarray(group)
        direction = cross[g].sum(axis=0)
        direction /= np.linalg.norm(direction)
        centroid = (centers[g] * areas[g, None]).sum(axis=0) / areas[g].sum()
        out.append(
            snapped_plane(direction, float(direction @ centroid), scale=scale)
        )
    return PlaneSet(out).sorted_canonical()


def _coplanar_groups(mesh, normals, offsets, eps):
    """Partition triangles into edge-connected coplanar patches."""
    nt = len(mesh.triangles)
    seen = np.zeros(nt, dtype=bool)
    groups = []
    for seed in range(nt):
        if seen[seed]:
            continue
        seen[seed] = True
        group = [seed]
        stack = [seed]
        while stack:
            t = stack.pop()
            for nb in mesh.neighbors[t]:
                if seen[nb]:
                    continue
                same = (
                    normals[t] @ normals[nb] >= math.cos(COPLANAR_ANGLE)
                    and abs(offsets[t] - offsets[nb]) <= eps
                )
                if same:
                    seen[nb] = True
                    group.append(nb)
                    stack.append(nb)
        groups.append(group)
    return groups


def translate_planes(code, a):
    """Shift the coded solid by ``a``: directions fixed, h += omega . a."""
    a = np.asarray(a, dtype=float)
    return PlaneSet(
        [OrientedPlane(p.direction, p.h + float(p.normal @ a)) for p in code]
    )


def rotate_planes(code, r):
    """Rotate the coded solid about the origin: omega -> R omega, h kept.

    The rotated direction is zero-snapped before the angles are taken;
    without it an exact quarter turn leaves 1e-16 dust on pole normals
    and the degenerate azimuth jumps away from its canonical 0.
    """
    r = check_rotation(r)
    out = []
    for p in code:
        w = r @ p.normal
        w[np.abs(w) < SNAP_AXIS] = 0.0
        w /= np.linalg.norm(w)
        out.append(OrientedPlane(spherical_from_unit_vector(w), p.h))
    return PlaneSet(out)


def check_rotation(r, tol=1e-9):
    """Validate a proper rotation matrix, returning it as a float array."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise NotARotation("expected a 3x3 matrix, got shape %r" % (r.shape,))
    if not np.isfinite(r).all():
        raise NotARotation("matrix has non-finite entries")
    if np.abs(r.T @ r - np.eye(3)).max() > tol:
        raise NotARotation("matrix is not orthogonal")
    if abs(np.linalg.det(r) - 1.0) > tol:
        raise NotARotation("determinant is not +1")
    return r
