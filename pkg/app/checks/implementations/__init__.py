# This file imports all check implementations to ensure they get registered
# When you add a new check, import it here

from app.checks.implementations.combinatorics import CoextensionIdentityCheck, WhitneyIdentityCheck
from app.checks.implementations.cohomology import (
    ChainSoundnessCheck,
    DiagonalWhitneyCheck,
    FanPoincareDualityCheck,
    OffDiagonalVanishingCheck,
)
from app.checks.implementations.spectral import KoszulAcyclicityCheck, SpectralConsistencyCheck
from app.checks.implementations.structure import (
    FanCompatibilityCheck,
    ProductBehaviourCheck,
    StratificationCensusCheck,
    SupportIdentificationCheck,
    MobiusIsomorphismCheck,
)

__all__ = [
    'WhitneyIdentityCheck', 'CoextensionIdentityCheck',
    'OffDiagonalVanishingCheck', 'DiagonalWhitneyCheck', 'ChainSoundnessCheck', 'FanPoincareDualityCheck',
    'SpectralConsistencyCheck', 'KoszulAcyclicityCheck',
    'MobiusIsomorphismCheck', 'StratificationCensusCheck', 'ProductBehaviourCheck',
    'SupportIdentificationCheck', 'FanCompatibilityCheck',
]
