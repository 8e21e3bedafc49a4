"""
Distributed Task Queue Tests

This package contains tests for the distributed task queue system.
"""
