"""Single source for the library version string embedded in reports."""

__version__ = "0.1.0"
