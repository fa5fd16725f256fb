"""Curvature vector, discrete Laplacian and energies over a whole mesh.

K_i is the total boundary length at component i: the sum of the hexagon
arc lengths at every face corner incident to i.  The discrete Laplacian is
the dense matrix Delta[i][j] = dK_i/du_j, symmetric and negative definite
on the admissible space.  Accumulation order is fixed (face index ascending,
corner slot ascending) so identical inputs give bitwise-identical outputs.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .hexgeom import corner_jacobian, edge_length, hexagon_geometry
from .mesh import ConformalState, IdealTriangulation, validate_state

# Documented contract for the line-integral energy is 1e-9 absolute; the
# quadrature itself is run tighter so finite differences of the energy
# remain accurate.
POTENTIAL_ABS_TOL = 1e-9
_QUAD_TOL = 1e-12


def edge_lengths(m: IdealTriangulation, s: ConformalState) -> dict[int, float]:
    """Length of every edge at the state s, keyed by edge id."""
    r = s.r
    return {e.id: edge_length(r[e.ends[0]], r[e.ends[1]], e.phi) for e in m.edges}


def curvature(m: IdealTriangulation, s: ConformalState) -> np.ndarray:
    """Generalized curvature K (boundary lengths), one entry per component."""
    lengths = edge_lengths(m, s)
    k = np.zeros(m.n_boundary)
    for f in m.faces:
        geo = hexagon_geometry(tuple(lengths[eid] for eid in f.edges))
        for slot in range(3):
            k[f.opposite[slot]] += geo.theta[slot]
    return k


def laplacian(m: IdealTriangulation, s: ConformalState) -> np.ndarray:
    """Dense matrix dK_i/du_j, assembled from per-face corner Jacobians."""
    r = s.r
    n = m.n_boundary
    a = np.zeros((n, n))
    for f in m.faces:
        rr = tuple(r[v] for v in f.opposite)
        pp = tuple(m.edge_by_id[eid].phi for eid in f.edges)
        jac = corner_jacobian(rr, pp)
        for p in range(3):
            for q in range(3):
                a[f.opposite[p], f.opposite[q]] += jac[p, q]
    return a


def calabi_energy(k, kbar) -> float:
    """Half the squared curvature-prescription residual."""
    k = np.asarray(k, dtype=float)
    kbar = np.asarray(kbar, dtype=float)
    if k.shape != kbar.shape:
        raise ValueError(f"length mismatch: {k.shape} vs {kbar.shape}")
    d = k - kbar
    return 0.5 * float(d @ d)


def ricci_potential(m: IdealTriangulation, s: ConformalState, s0: ConformalState,
                    kbar) -> float:
    """Line integral -int (K - kbar) . du from s0.u to s.u.

    Path-independent because the Laplacian is symmetric; evaluated along the
    straight segment, which stays inside the convex admissible space.
    """
    kbar = np.asarray(kbar, dtype=float)
    d = s.u - s0.u
    if not d.any():
        return 0.0

    def integrand(t: float) -> float:
        st = validate_state(m, s0.u + t * d)
        return -float((curvature(m, st) - kbar) @ d)

    val, _err = quad(integrand, 0.0, 1.0, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL,
                     limit=200)
    return val
