"""Top-level package for the sl2ext calculator."""

__all__ = ["__version__", "ENGINE_VERSION"]
__version__ = "0.1.0"

# Bumped whenever a formula changes; cache records carrying another tag are ignored.
ENGINE_VERSION = "sl2ext-engine/1"
