"""Exact engine for group-like uninorms built from partial lexicographic
products of the integers and a rational model of the reals."""

from ._uninorms import *  # noqa: F401,F403
from ._uninorms import __doc__  # noqa: F401
