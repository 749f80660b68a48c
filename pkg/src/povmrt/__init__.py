"""POVMs ordered by classical post-processing.

The order (splitting and confusing outcomes) is decided by linear
programming; information-gain monotones and state-discrimination games
sit alongside it.
"""
from .discrimination import Ensemble, canonical_success, posterior_success, witness_search
from .monotones import banaszek, buscemi, maccone, skrzypczyk
from .order import OrderVerdict, class_equal, equivalent, majorization_condition, precedes
from .povm import Povm, canonicalize, reduce_a, tensor_povm, validate
from .stochastic import apply, decompose
from .tolerances import ToleranceProfile

__version__ = "0.1.0"

__all__ = [
    "Ensemble",
    "OrderVerdict",
    "Povm",
    "ToleranceProfile",
    "apply",
    "banaszek",
    "buscemi",
    "canonical_success",
    "canonicalize",
    "class_equal",
    "decompose",
    "equivalent",
    "maccone",
    "majorization_condition",
    "posterior_success",
    "precedes",
    "reduce_a",
    "skrzypczyk",
    "tensor_povm",
    "validate",
    "witness_search",
]
