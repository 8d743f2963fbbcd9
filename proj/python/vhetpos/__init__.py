"""Urban VHetNet positioning simulator.

Thin wrapper around the compiled _core extension: geodesy, almanac
propagation, LOS models, pseudorange SPP, DOP, RAIM and scenario runs.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
