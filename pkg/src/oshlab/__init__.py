"""Order shattering toolkit for families of subsets of [n]."""
from .core import SetFamily, from_elements, elements
from .kernels import BACKEND
from .shatter import osh_direct, order_shatters, extract_witness
from .shift import osh_via_shift

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "SetFamily",
    "elements",
    "extract_witness",
    "from_elements",
    "order_shatters",
    "osh_direct",
    "osh_via_shift",
]
