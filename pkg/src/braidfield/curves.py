"""Polyline geometry: Gauss linking numbers, windings, exports.

The linking integral uses the solid-angle formula for a pair of straight
segments, which is exact for closed polygonal curves, so the result is an
integer up to floating-point error.  Open (truncated) curves give the
integral of the partial configuration; callers decide how close to an
integer is acceptable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Polyline:
    """An ordered list of 3d vertices, optionally a closed loop.

    For closed curves the final vertex should not repeat the first; the
    closing segment is implicit.
    """

    points: np.ndarray
    closed: bool = True
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != 3:
            raise ValueError("polyline points must have shape (n, 3)")

    def __len__(self) -> int:
        return len(self.points)

    def segments(self) -> np.ndarray:
        """Array of shape (m, 2, 3): consecutive vertex pairs."""
        pts = self.points
        if self.closed:
            nxt = np.roll(pts, -1, axis=0)
            return np.stack([pts, nxt], axis=1)
        return np.stack([pts[:-1], pts[1:]], axis=1)

    def length(self) -> float:
        seg = self.segments()
        return float(np.linalg.norm(seg[:, 1] - seg[:, 0], axis=1).sum())


def _solid_angle_sum(a, b, c, d):
    """Signed solid-angle contribution of segment pairs (vectorized)."""
    # a,b,c,d: (..., 3) corner vectors from one segment's points to the other's
    cross_bc = np.cross(b, c)
    p = np.einsum("...i,...i", a, cross_bc)
    an = np.linalg.norm(a, axis=-1)
    bn = np.linalg.norm(b, axis=-1)
    cn = np.linalg.norm(c, axis=-1)
    dn = np.linalg.norm(d, axis=-1)
    ab = np.einsum("...i,...i", a, b)
    bc = np.einsum("...i,...i", b, c)
    cd = np.einsum("...i,...i", c, d)
    da = np.einsum("...i,...i", d, a)
    ca = np.einsum("...i,...i", c, a)
    d1 = an * bn * cn + ab * cn + bc * an + ca * bn
    d2 = an * dn * cn + da * cn + cd * an + ca * dn
    return np.arctan2(p, d1) + np.arctan2(p, d2)


def gauss_linking(c1: Polyline, c2: Polyline, block: int = 256) -> float:
    """Gauss linking number of two disjoint polylines.

    Exact (up to rounding) for two closed curves; for open curves returns
    the partial Gauss integral.
    """
    s1 = c1.segments()
    s2 = c2.segments()
    total = 0.0
    for lo in range(0, len(s1), block):
        sub = s1[lo:lo + block]
        # corner vectors for all pairs in the block
        a = sub[:, None, 0] - s2[None, :, 0]
        b = sub[:, None, 0] - s2[None, :, 1]
        c = sub[:, None, 1] - s2[None, :, 1]
        d = sub[:, None, 1] - s2[None, :, 0]
        total += _solid_angle_sum(a, b, c, d).sum()
    return total / (4 * np.pi)


def linking_matrix(curves: list[Polyline]) -> np.ndarray:
    """Pairwise Gauss linking integrals (float); diagonal zero."""
    n = len(curves)
    out = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        out[i, j] = out[j, i] = gauss_linking(curves[i], curves[j])
    return out


def rounded_linking_matrix(curves: list[Polyline], tol: float = 0.2):
    """Integer-rounded linking matrix; raises if any entry is ambiguous."""
    raw = linking_matrix(curves)
    rounded = np.rint(raw).astype(int)
    err = np.abs(raw - rounded)
    if err.max() > tol:
        i, j = np.unravel_index(int(err.argmax()), err.shape)
        raise ValueError(
            f"linking integral {raw[i, j]:.3f} between curves {i},{j} is "
            f"farther than {tol} from an integer; refine the curves")
    return rounded, raw


def canonical_link_profile(count: int, matrix: np.ndarray):
    """Canonical form of (component count, linking matrix) under relabeling.

    Minimizes the flattened matrix lexicographically over simultaneous
    row/column permutations; component counts small enough that brute
    force is fine.
    """
    if count != matrix.shape[0]:
        raise ValueError("component count does not match matrix size")
    best = None
    for perm in itertools.permutations(range(count)):
        arranged = matrix[np.ix_(perm, perm)]
        key = tuple(int(x) for x in arranged.ravel())
        if best is None or key < best:
            best = key
    return count, best


def winding_number(values: np.ndarray, closed: bool = True) -> float:
    """Winding of a complex-valued sequence around 0 (unwrapped phase turns)."""
    vals = np.asarray(values, dtype=complex)
    if closed:
        vals = np.append(vals, vals[:1])
    ang = np.unwrap(np.angle(vals))
    return (ang[-1] - ang[0]) / (2 * np.pi)


def torus_windings(curve: Polyline, axis_winding_only: bool = False):
    """Winding numbers of a closed curve on a torus around the z-axis.

    Returns ``(n_axis, n_merid)``: turns of the azimuth about the z-axis
    and turns of the meridian angle about the circle of centroid radius in
    the z=0 plane.  Useful to identify (p, q) torus knots.
    """
    pts = curve.points
    xy = pts[:, 0] + 1j * pts[:, 1]
    n_axis = winding_number(xy, closed=curve.closed)
    if axis_winding_only:
        return int(round(n_axis)), None
    rho = np.abs(xy)
    r0 = rho.mean()
    merid = (rho - r0) + 1j * pts[:, 2]
    n_merid = winding_number(merid, closed=curve.closed)
    return int(round(n_axis)), int(round(n_merid))


def write_obj(path: str, curves: list[Polyline]):
    """Write polylines as OBJ line elements (1-based vertex indices)."""
    with open(path, "w") as fh:
        offset = 1
        for ci, curve in enumerate(curves):
            fh.write(f"o {curve.name or f'curve{ci}'}\n")
            for p in curve.points:
                fh.write(f"v {p[0]:.12g} {p[1]:.12g} {p[2]:.12g}\n")
            n = len(curve.points)
            idx = list(range(offset, offset + n))
            if curve.closed:
                idx.append(offset)
            fh.write("l " + " ".join(str(i) for i in idx) + "\n")
            offset += n


def write_curves_csv(path: str, curves: list[Polyline], header="x,y,z,component"):
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for ci, curve in enumerate(curves):
            for p in curve.points:
                fh.write(f"{p[0]:.12g},{p[1]:.12g},{p[2]:.12g},{ci}\n")


def read_curve_csv(path: str) -> Polyline:
    """Read the first component's vertices back from a curves CSV."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    comp = data["component"] if "component" in (data.dtype.names or ()) else None
    pts = np.stack([data["x"], data["y"], data["z"]], axis=1)
    if comp is not None:
        pts = pts[comp == comp[0]]
    return Polyline(pts, closed=True)
