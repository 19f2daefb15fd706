"""Census of Morse flows and their typical bifurcations on spheres with holes."""

from __future__ import annotations

__version__ = "0.1.0"
