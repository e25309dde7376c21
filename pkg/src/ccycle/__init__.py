"""Exact computations for characteristic cycles of exponentially twisted D-modules.

Submodules: exactla (integer linear algebra), toruscoh (torus complement
cohomology), stalkcalc (stalks and local Euler indices), constructible
(constructible functions and the index theorem), charcycle (characteristic
cycles and their limits), puiseux (Newton polygon branch counts) and cli.
"""
__version__ = "0.1.0"
