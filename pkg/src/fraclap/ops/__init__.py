"""Nonlocal operators built on the quadrature engines."""
