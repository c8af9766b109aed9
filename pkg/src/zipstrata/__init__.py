"""Strata, orders and brute-force classification of G-zips over finite fields."""
from .errors import ConsistencyError, ResourceError, ValidationError
from .zipdatum import CocharacterType, GroupFamily, build_zip_datum
from .strata import build_poset

__version__ = "0.1.0"
