"""Exact symbolic toolkit for accessible singularities, geometric Riemann
schemes and Painleve-type differential systems on Hirzebruch surfaces."""

__version__ = "0.1.0"
