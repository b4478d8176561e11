"""Fractional Laplacian toolkit."""
