"""Cost-based arc filtering for the symmetric TSP, with exact and annealing solvers."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
