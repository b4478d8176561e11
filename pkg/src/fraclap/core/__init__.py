"""Parameters, special functions, cutoffs and field constructors."""
