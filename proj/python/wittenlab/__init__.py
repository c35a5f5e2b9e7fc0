"""Exact Donaldson invariants from Seiberg-Witten data."""

from ._wittenlab import *  # noqa: F401,F403
from ._wittenlab import __doc__  # noqa: F401
