"""Oracle de support ℓ² (formes closes)."""

import numpy as np

from ..models.normed_space import NormTag
from .support_oracle import SupportOracle, SupportSolution


class EuclideanSupportOracle(SupportOracle):
    """Support de la boule euclidienne et de ses sections.

    Sur la section par E = span(B) avec B = QR, la contrainte ‖B t‖₂ ≤ 1
    devient ‖R t‖₂ ≤ 1: le maximiseur est t = R⁻¹ h/‖h‖ avec h = R⁻ᵀ g.
    """

    norm_tag = NormTag.L2

    def maximize_full(self, f: np.ndarray) -> SupportSolution:
        f = np.asarray(f, dtype=float)
        if self._is_zero(f):
            return self._degenerate(f.size)
        value = float(np.linalg.norm(f))
        return SupportSolution(f / value, value)

    def maximize_on_section(self, columns: np.ndarray, gradient: np.ndarray) -> SupportSolution:
        columns = np.asarray(columns, dtype=float)
        gradient = np.asarray(gradient, dtype=float)
        if self._is_zero(gradient):
            return self._degenerate(columns.shape[0], columns.shape[1])

        Q, R = np.linalg.qr(columns)
        h = np.linalg.solve(R.T, gradient)
        value = float(np.linalg.norm(h))
        s = h / value
        t = np.linalg.solve(R, s)
        return SupportSolution(Q @ s, value, coordinates=t)
