"""Conway-type polynomial invariants of virtual links from signed Gauss codes."""

__version__ = "0.1.0"
