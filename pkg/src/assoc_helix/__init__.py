"""Associated timelike helices in Minkowski 3-space: construction and numeric verification."""

__version__ = "0.1.0"
