"""Exact combinatorics and cohomology-ring presentations of hypertoric varieties."""

from .arrangement import Arrangement, Hyperplane, flip_coorientation, parse, serialize, translate, validate

__version__ = "0.1.0"
