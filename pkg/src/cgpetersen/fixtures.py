"""
Hand-built embeddings with known invariants.

Knots and links are returned as embeddings of disjoint cycle graphs
(:func:`cgpetersen.spatial.polygon_embedding`); the two K6 fixtures use
the catalog labels.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

from .catalog import Member, build
from .spatial import SpatialEmbedding, polygon_embedding

__all__ = [
    "sample_curve",
    "trefoil",
    "figure_eight",
    "granny",
    "unknot",
    "split_link",
    "hopf_link",
    "doubled_link",
    "moment_curve_k6",
    "doubled_k6",
    "FIXTURES",
]


def sample_curve(fn, n: int = 72) -> np.ndarray:
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return np.stack(fn(t), axis=1)


def _trefoil_points(n: int = 72) -> np.ndarray:
    return sample_curve(lambda t: (np.sin(t) + 2 * np.sin(2 * t),
                                   np.cos(t) - 2 * np.cos(2 * t),
                                   -np.sin(3 * t)), n)


def trefoil(n: int = 72) -> SpatialEmbedding:
    return polygon_embedding(_trefoil_points(n))


# Small fixed tilt; the symmetric curves below project non-generically
# straight down the z axis.
_TILT = Rotation.from_euler("xz", [0.13, 0.07]).as_matrix()


def figure_eight(n: int = 96) -> SpatialEmbedding:
    return _tilted(sample_curve(
        lambda t: ((2 + np.cos(2 * t)) * np.cos(3 * t),
                   (2 + np.cos(2 * t)) * np.sin(3 * t),
                   np.sin(4 * t)), n))


def _tilted(*polygons) -> SpatialEmbedding:
    return polygon_embedding(*polygons).transformed(_TILT)


def unknot(n: int = 24) -> SpatialEmbedding:
    return polygon_embedding(sample_curve(
        lambda t: (np.cos(t), np.sin(t), 0.1 * np.sin(2 * t)), n))


def granny(n: int = 72) -> SpatialEmbedding:
    """Connected sum of two copies of the same trefoil.

    Both copies are cut at their rightmost/leftmost vertex and joined by
    two bridges, keeping the orientations compatible.
    """
    a = _trefoil_points(n)
    b = _trefoil_points(n) + np.array([10.0, 0.0, 0.0])
    i = int(np.argmax(a[:, 0]))
    j = int(np.argmin(b[:, 0]))
    # a[i] -> b[j+1] ... around b ... b[j] -> a[i+1] ... around a ... a[i]
    path_b = [b[(j + 1 + k) % n] for k in range(n)]
    path_a = [a[(i + 1 + k) % n] for k in range(n)]
    return polygon_embedding(np.array(path_b + path_a))


def _circle(n: int, radius: float = 1.0, z: float = 0.0) -> np.ndarray:
    return sample_curve(lambda t: (radius * np.cos(t), radius * np.sin(t), z + 0 * t), n)


def split_link() -> SpatialEmbedding:
    return polygon_embedding(
        [(0, 0, 0), (1, 0, 0.1), (0.4, 1, 0)],
        [(5, 0, 0), (6, 0.2, 0), (5.5, 1, 0.3)],
    )


def hopf_link() -> SpatialEmbedding:
    """A flat triangle and a tilted triangle threaded once through it."""
    return polygon_embedding(
        [(-1.0, -1.0, 0.0), (1.0, -1.0, 0.0), (0.0, 1.2, 0.0)],
        [(0.2, -0.3, -1.0), (0.3, 0.3, 1.0), (0.1, 3.0, 0.3)],
    )


def _torus_curve(t, turns: int = 2, r: float = 0.35):
    rad = 1 + r * np.cos(turns * t)
    return rad * np.cos(t), rad * np.sin(t), r * np.sin(turns * t)


def doubled_link(n: int = 48) -> SpatialEmbedding:
    """A round circle and a curve winding twice around it (lk = +-2)."""
    return _tilted(_circle(n), sample_curve(_torus_curve, 2 * n))


def moment_curve_k6() -> SpatialEmbedding:
    """Straight-line K6 on the moment curve (t, t^2, t^3), t = 1..6."""
    g = build(Member.K6)
    return SpatialEmbedding(g, {v: (float(t), float(t * t), float(t ** 3))
                                for t, v in enumerate(g.vertices, start=1)})


def _arc(fn, t0: float, t1: float, k: int) -> tuple:
    ts = np.linspace(t0, t1, k + 2)[1:-1]
    return tuple(tuple(map(float, p)) for p in np.stack(fn(ts), axis=1))


def doubled_k6(k: int = 10) -> SpatialEmbedding:
    """K6 in which the pair [u v w] / [u' v' A] has linking number 2.

    ``u v w`` sit on the unit circle in the plane z = 0 and their edges
    follow it; ``u' v' A`` sit on a curve winding twice around that
    circle. The remaining nine edges are straight.
    """
    g = build(Member.K6)
    two_pi = 2 * np.pi
    circle = lambda t: (np.cos(t), np.sin(t), 0 * t)  # noqa: E731
    inner = {"u": 0.0, "v": two_pi / 3, "w": 2 * two_pi / 3}
    outer = {"u'": 0.5, "v'": 0.5 + two_pi / 3, "A": 0.5 + 2 * two_pi / 3}
    positions = {}
    for v, t in inner.items():
        positions[v] = tuple(map(float, np.array(circle(np.array(t))).ravel()))
    for v, t in outer.items():
        positions[v] = tuple(map(float, np.array(_torus_curve(np.array(t))).ravel()))
    waypoints = {
        ("u", "v"): _arc(circle, inner["u"], inner["v"], k),
        ("v", "w"): _arc(circle, inner["v"], inner["w"], k),
        ("w", "u"): _arc(circle, inner["w"], two_pi, k),
        ("u'", "v'"): _arc(_torus_curve, outer["u'"], outer["v'"], 2 * k),
        ("v'", "A"): _arc(_torus_curve, outer["v'"], outer["A"], 2 * k),
        ("A", "u'"): _arc(_torus_curve, outer["A"], outer["u'"] + two_pi, 2 * k),
    }
    return SpatialEmbedding(g, positions, waypoints)


FIXTURES = {
    "unknot": unknot,
    "trefoil": trefoil,
    "figure-eight": figure_eight,
    "granny": granny,
    "split-link": split_link,
    "hopf-link": hopf_link,
    "doubled-link": doubled_link,
    "k6-moment-curve": moment_curve_k6,
    "k6-doubled": doubled_k6,
}
