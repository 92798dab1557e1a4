"""Universal characters, the two-chain phase model and MacMahon correlators in exact arithmetic."""

__version__ = "0.1.0"
