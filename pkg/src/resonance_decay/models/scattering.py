from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SMatrixSample:
    energy: float
    matrix: np.ndarray  # shape (K, K), complex
    open_channels: list[int] = field(default_factory=list)

    def unitarity_residual(self) -> float:
        """||S^dagger S - I|| restricted to the channels open at this energy."""
        if not self.open_channels:
            return 0.0
        block = self.matrix[np.ix_(self.open_channels, self.open_channels)]
        return float(np.linalg.norm(block.conj().T @ block - np.eye(len(self.open_channels)), 2))

    def symmetry_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T))) if self.matrix.size else 0.0

    def to_rows(self) -> list[dict]:
        residual = self.unitarity_residual()
        k = self.matrix.shape[0]
        return [
            {
                "energy": self.energy,
                "channel_out": c,
                "channel_in": cp,
                "re_s": float(self.matrix[c, cp].real),
                "im_s": float(self.matrix[c, cp].imag),
                "unitarity_residual": residual,
            }
            for c in range(k)
            for cp in range(k)
        ]
