"""Gauss-Legendre panel quadrature for the numeric contour paths."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuadratureSpec:
    """Half-line / contour quadrature parameters.

    decay_rate: slowest exponential decay rate of the integrand, used to pick
    the truncation point; tol is the target absolute tolerance.
    """

    scheme: str = "gauss-legendre"
    nodes: int = 32
    decay_rate: float = 1.0
    tol: float = 1e-10

    def __post_init__(self):
        if self.nodes < 8:
            raise ValueError("node count must be >= 8")
        if self.tol <= 1e-15:
            raise ValueError("tolerance below machine-epsilon guard")
        if self.decay_rate <= 0:
            raise ValueError("decay rate must be positive")

    def cutoff(self, safety=40.0):
        return safety / self.decay_rate


def panel_nodes(a, b, n):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = (a + b) / 2.0, (b - a) / 2.0
    return mid + half * x, half * w


def integrate_segments(f, breakpoints, nodes=32):
    """Integrate f along straight segments between consecutive breakpoints.

    Complex endpoints give contour integrals with dz = direction * dt.
    """
    total = 0.0 + 0.0j
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        t, w = panel_nodes(0.0, 1.0, nodes)
        z = a + (b - a) * t
        vals = np.array([f(zz) for zz in z])
        total += (b - a) * np.dot(w, vals)
    return total


def integrate_halfline(f, start, direction, spec: QuadratureSpec):
    """Integrate f from `start` to infinity along `direction` (unit complex).

    Panels of geometrically growing length up to the decay cutoff.
    """
    cut = spec.cutoff()
    # geometric panel edges: resolve the oscillatory head finely
    edges = [0.0]
    step = min(1.0, cut / 8)
    while edges[-1] < cut:
        edges.append(min(edges[-1] + step, cut))
        step *= 1.5
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        t, w = panel_nodes(a, b, spec.nodes)
        z = start + direction * t
        vals = np.array([f(zz) for zz in z])
        total += direction * np.dot(w, vals)
    return total


def integrate_real_line(f, height, halfwidth, nodes=48, segments=24):
    """Integrate along Im v = height from -halfwidth to +halfwidth."""
    xs = np.linspace(-halfwidth, halfwidth, segments + 1)
    pts = [x + 1j * height for x in xs]
    return integrate_segments(f, pts, nodes=nodes)
