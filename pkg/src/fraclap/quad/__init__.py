"""Quadrature engines: sphere rules, singular radial integrals and pair Monte Carlo."""
