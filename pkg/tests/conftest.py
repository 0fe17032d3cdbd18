import os

import numpy as np
import pytest

from fsclass import (FDStarAlgebra, AntiAlgebraMap, GroupTable,
                     group_algebra)
from fsclass import io as fio

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

GROUP_FILES = ["z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8",
               "s3", "s4", "d4", "q8"]


def data_path(name):
    return os.path.join(DATA, name)


def load_group(name):
    d = fio.load_group_v1(data_path(name + ".json"))
    return GroupTable.validated(d["order"], d["table"], d["inverse"])


def classical_oracle(G, chi):
    """(1/|G|) sum_h chi(h^2), computed straight from the group table."""
    total = sum(chi[G.table[h, h]] for h in range(G.order))
    return total / G.order


def build_m2():
    """M_2(C) on the basis e11, e12, e21, e22 (index 2i + j)."""
    n = 4
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    if j == k:
                        c[2 * i + j, 2 * k + l, 2 * i + l] = 1.0
    unit = np.array([1, 0, 0, 1], dtype=complex)
    sig = np.zeros((n, n))
    for i in range(2):
        for j in range(2):
            sig[2 * j + i, 2 * i + j] = 1.0
    return FDStarAlgebra(c, unit, sig)


def m2_anti_map(A, mat_map):
    """Anti-algebra map on M_2(C) from its action on 2x2 matrices."""
    S = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[i, j] = 1.0
            S[:, 2 * i + j] = mat_map(E).reshape(-1)
    return AntiAlgebraMap.validated(A, S)


def m2_dual_structures():
    """The two hand-built dual structures on M_2(C): S1 = conjugated
    transpose by the symplectic form (quaternionic), S2 with a non-unitary
    twist (real, canonical g = diag(1/4, 4))."""
    A = build_m2()
    v = np.array([[0, 1], [-1, 0]], dtype=complex)
    u = np.array([[0, 0.5], [2, 0]], dtype=complex)
    S1 = m2_anti_map(A, lambda a: v @ a.T @ np.linalg.inv(v))
    S2 = m2_anti_map(A, lambda a: u @ a.T @ u)
    return A, S1, S2


@pytest.fixture(scope="session")
def groups():
    return {name: load_group(name) for name in GROUP_FILES}


@pytest.fixture(scope="session")
def group_pipelines(groups):
    """(A, dual, E) for every corpus group, built once."""
    return {name: group_algebra(G) for name, G in groups.items()}


@pytest.fixture(scope="session")
def scheme_mats():
    out = {}
    for name in ("c5_scheme", "petersen_scheme"):
        d = fio.load_scheme_v1(data_path(name + ".json"))
        out[name] = d["matrices"]
    return out
