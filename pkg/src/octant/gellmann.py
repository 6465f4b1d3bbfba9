"""
Gell-Mann decomposition of 3x3 Hermitian matrices.

Standard basis lambda_1 .. lambda_8 normalized as Tr(lambda_j lambda_k) = 2 delta_jk,
so that ``rho = a0 * I + sum_j a_j lambda_j`` with ``a_j = Tr(rho lambda_j) / 2``
and ``a0 = Tr(rho) / 3``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DensityMatrix


def _basis():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    lam.setflags(write=False)
    return lam


GELL_MANN = _basis()


@dataclass(frozen=True)
class GellMannCoefficients:
    """Coefficients of a 3x3 Hermitian matrix in the Gell-Mann basis.

    ``a[j-1]`` multiplies lambda_j; ``a0`` multiplies the identity.
    """

    a: tuple
    a0: float

    def __post_init__(self):
        if len(self.a) != 8:
            raise ValueError(f"need 8 Gell-Mann coefficients, got {len(self.a)}")

    def as_array(self):
        return np.array(self.a, dtype=float)


def gellmann_decompose(rho) -> GellMannCoefficients:
    arr = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    # Tr(rho lambda_j) = sum_mn rho_mn lambda_j[n, m]
    a = np.real(np.einsum("mn,jnm->j", arr, GELL_MANN)) / 2.0
    a0 = float(np.real(np.trace(arr))) / 3.0
    return GellMannCoefficients(tuple(float(x) for x in a), a0)


def gellmann_compose(coeffs: GellMannCoefficients):
    """Linear reconstruction; Hermitian by construction but not necessarily PSD."""
    a = coeffs.as_array()
    return coeffs.a0 * np.eye(3, dtype=complex) + np.einsum("j,jmn->mn", a, GELL_MANN)
