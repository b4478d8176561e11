"""Fractional Poisson kernel of a ball, the exterior Dirichlet solver, derivative jets and walk-on-spheres."""
