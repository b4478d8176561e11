"""Weighted norms, nonlocal tails, Gagliardo seminorms and Hölder-exponent estimation."""
