"""coldtrace: cold-start tracing runner and scenario verification tools."""

__version__ = "0.1.0"
