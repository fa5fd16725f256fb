import json

import numpy as np
import pytest

import hexflow as hf

# Frozen oracle values, computed with mpmath at 40 significant digits by
# direct evaluation of the defining formulas.
U_OF_R1 = -0.7719368329053047        # log tanh(1/2)
R_OF_U1 = 0.7719368329053047         # 2 artanh(e^-1)
L_112 = 1.6949011625917027           # edge_length(1, 1, 2)
ARC_111 = 1.7049128323580137         # arc_length(1, 1, 1)
ARC_CHAIN = 1.0067141268431947       # arc_length(L_112, L_112, L_112)
Q_111 = 3.6731111454375017           # sinh(1)^2 sinh(ARC_111)
K_PANTS_R1 = 2.0134282536863894      # 2 * ARC_CHAIN
DLDR_112 = 1.9036801308665639        # d edge_length / d r_i at (1, 1, 2)
THETA_AT_15 = 5.871347117527181e-07  # arc at r_i = 15, r_j = r_k = 1, phi = 2

PANTS_DOC = {
    "n_boundary": 3,
    "edges": [
        {"id": 1, "ends": [1, 2], "phi": 2.0},
        {"id": 2, "ends": [2, 3], "phi": 2.0},
        {"id": 3, "ends": [3, 1], "phi": 2.0},
    ],
    "faces": [
        {"edges": [1, 2, 3], "opposite_vertices": [3, 1, 2]},
        {"edges": [1, 2, 3], "opposite_vertices": [3, 1, 2]},
    ],
}

TORUS_DOC = {
    "n_boundary": 1,
    "edges": [
        {"id": 1, "ends": [1, 1], "phi": 2.0},
        {"id": 2, "ends": [1, 1], "phi": 2.0},
        {"id": 3, "ends": [1, 1], "phi": 2.0},
    ],
    "faces": [
        {"edges": [1, 2, 3], "opposite_vertices": [1, 1, 1]},
        {"edges": [1, 2, 3], "opposite_vertices": [1, 1, 1]},
    ],
}


@pytest.fixture
def pants():
    return hf.parse_mesh(json.dumps(PANTS_DOC))


@pytest.fixture
def torus():
    return hf.parse_mesh(json.dumps(TORUS_DOC))


def disjoint_union(doc_a: dict, doc_b: dict) -> dict:
    """File-level disjoint union of two mesh documents."""
    na = doc_a["n_boundary"]
    eid = max(e["id"] for e in doc_a["edges"])
    out = json.loads(json.dumps(doc_a))
    out["n_boundary"] += doc_b["n_boundary"]
    for e in doc_b["edges"]:
        out["edges"].append({"id": e["id"] + eid,
                             "ends": [v + na for v in e["ends"]],
                             "phi": e["phi"]})
    for f in doc_b["faces"]:
        out["faces"].append({"edges": [e + eid for e in f["edges"]],
                             "opposite_vertices": [v + na
                                                   for v in f["opposite_vertices"]]})
    return out


def sample_valid_states(m, count, rng, lo=-0.9, hi=-0.15):
    """Uniform samples from a safe box, rejection-filtered by validate_state."""
    states = []
    while len(states) < count:
        u = rng.uniform(lo, hi, m.n_boundary)
        try:
            states.append(hf.validate_state(m, u))
        except hf.StateError:
            continue
    return states


def fd_curvature_jacobian(m, u, h=1e-6):
    """Central finite differences of K in u; the Laplacian oracle."""
    n = len(u)
    jac = np.zeros((n, n))
    for j in range(n):
        up, um = u.copy(), u.copy()
        up[j] += h
        um[j] -= h
        kp = hf.curvature(m, hf.validate_state(m, up))
        km = hf.curvature(m, hf.validate_state(m, um))
        jac[:, j] = (kp - km) / (2 * h)
    return jac


def face_thetas(u3, phi3):
    """Arc lengths of one face as a function of its corner conformal factors."""
    r = [hf.from_conformal(x) for x in u3]
    lengths = tuple(hf.edge_length(r[(k + 1) % 3], r[(k + 2) % 3], phi3[k])
                    for k in range(3))
    return np.array(hf.hexagon_geometry(lengths).theta)


def fd_corner_jacobian(u3, phi3, h=1e-6):
    """Central finite differences of the face arc lengths in u."""
    jac = np.zeros((3, 3))
    for b in range(3):
        up, um = list(u3), list(u3)
        up[b] += h
        um[b] -= h
        jac[:, b] = (face_thetas(up, phi3) - face_thetas(um, phi3)) / (2 * h)
    return jac
