from .base_check import BaseCheck
from .characteristic_check import CharacteristicPairCheck
from .dual_check import DualConstructionCheck
from .rank_check import RankEquivalenceCheck
from .selection_checks import LocalDualityCheck, BcjrSymmetryCheck, ProfileCheck
from .selection_manager import SelectionManager
from .verdict_critic import VerdictCritic
from .example_checks import WorkedExamplesCheck
from .property_checks import PropertiesCheck

__all__ = [
    'BaseCheck',
    'CharacteristicPairCheck',
    'DualConstructionCheck',
    'RankEquivalenceCheck',
    'LocalDualityCheck',
    'BcjrSymmetryCheck',
    'ProfileCheck',
    'SelectionManager',
    'VerdictCritic',
    'WorkedExamplesCheck',
    'PropertiesCheck'
]
