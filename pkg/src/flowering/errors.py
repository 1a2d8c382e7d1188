"""Shared exception base for the flowering package."""


class FloweringError(Exception):
    """Base class for all errors raised by this package."""


class TooLargeError(FloweringError):
    """A brute-force routine was asked to exceed its configured size cap."""
