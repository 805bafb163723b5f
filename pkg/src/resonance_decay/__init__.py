"""resonance-decay - Resonance spectroscopy and decay of open quantum systems."""

__version__ = "0.1.0"
