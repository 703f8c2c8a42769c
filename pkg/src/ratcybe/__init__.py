"""Exact-arithmetic engine for rational solutions of the classical Yang-Baxter equation."""
__version__ = "0.1.0"
