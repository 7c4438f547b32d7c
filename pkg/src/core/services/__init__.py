"""核心服务层。"""

from .experiment_service import ExperimentService, TrainSettings

__all__ = [
    "ExperimentService",
    "TrainSettings",
]
