from linescan.models.kernel import Kernel
from .evaluate import evaluate

__all__ = ["Kernel", "evaluate"]
