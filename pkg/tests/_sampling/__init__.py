"""Seeded random inputs for the sampling tests."""

from .generators import (
    CaseGenerator,
    RandomBiquadraticGenerator,
    RandomCharacterGenerator,
    RandomDescriptorCaseGenerator,
    RandomFieldElementGenerator,
    RandomIdentityCaseGenerator,
    RandomInvolutionGenerator,
    RandomMatrixGenerator,
    RandomSimilitudeGenerator,
    RandomSupercuspidalGenerator,
    RandomTauGenerator,
)

__all__ = [
    "CaseGenerator",
    "RandomBiquadraticGenerator",
    "RandomCharacterGenerator",
    "RandomDescriptorCaseGenerator",
    "RandomFieldElementGenerator",
    "RandomIdentityCaseGenerator",
    "RandomInvolutionGenerator",
    "RandomMatrixGenerator",
    "RandomSimilitudeGenerator",
    "RandomSupercuspidalGenerator",
    "RandomTauGenerator",
]
