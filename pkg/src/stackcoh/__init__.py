"""Exact toolkit for equivariant cohomology of finite groupoid atlases."""

from .exactalg import QQ, GF, Mat

__all__ = ["QQ", "GF", "Mat"]
