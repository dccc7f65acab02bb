"""nodal-nesting: nodal-domain topology of stationary Gaussian fields on grids."""

__version__ = "0.1.0"
