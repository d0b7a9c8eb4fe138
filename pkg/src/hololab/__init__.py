"""Exact finite-group toolkit: holomorphs, inner holomorphs, regular
subgroups, normalizer quotients of symmetric groups, and the graded-Lie model
of Cornulier-Sambale groups."""

__version__ = "0.1.0"
