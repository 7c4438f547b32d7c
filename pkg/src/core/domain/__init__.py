"""领域模型与配置定义。"""

from .errors import MvqnError
from .mvqn_config import MvqnConfig, QuadratureDefaults, TrainingDefaults
from .unity_logic import Sector, ZeroPolicy, csign, make_sector

__all__ = [
    "MvqnConfig",
    "MvqnError",
    "QuadratureDefaults",
    "Sector",
    "TrainingDefaults",
    "ZeroPolicy",
    "csign",
    "make_sector",
]
