"""Hochschild extensions of truncated quiver algebras."""

from __future__ import annotations

from .algebra import AlgebraElement, DualElement, TruncatedAlgebra
from .linalg import Field, Matrix
from .quiver import Path, Quiver, cyclic_quiver

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "DualElement",
    "Field",
    "Matrix",
    "Path",
    "Quiver",
    "TruncatedAlgebra",
    "cyclic_quiver",
]
