"""qnil: exact bases and twist maps for quantum nilpotent subalgebras."""

from .rootdata import CartanDatum, Weight, QnilUsageError, QnilInternalError
from .scalars import LaurentPoly, RatFunc, qint, qfactorial, qbinom
from .uqfull import Uq, UqElement
from .uqminus import FElement, DualVector

__version__ = "0.1.0"

__all__ = [
    "CartanDatum", "Weight", "QnilUsageError", "QnilInternalError",
    "LaurentPoly", "RatFunc", "qint", "qfactorial", "qbinom",
    "Uq", "UqElement", "FElement", "DualVector", "__version__",
]
