"""Certified polynomial paths through unions of convex polyhedra."""

from ._smartpath import *  # noqa: F401,F403
from ._smartpath import __doc__  # noqa: F401
