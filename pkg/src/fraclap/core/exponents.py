"""Exponent bookkeeping for Hölder transfer and the analyticity radii."""


def holder_transfer_exponents(alpha: float, order: float) -> tuple[float, float, float]:
    """Exponents (gamma_is, beta, gamma_eta) for f in C^{0,alpha} and g Lipschitz.

    gamma_is is the Hölder exponent of I_s(f, g); gamma_eta that of
    eta * I_s(eta, f).
    """
    if not 0.0 < order < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {order}")
    if not order < alpha < min(2.0 * order, 1.0):
        raise ValueError(
            f"alpha must lie in (s, min(2s, 1)) = ({order}, {min(2.0 * order, 1.0)}), got {alpha}"
        )

    if order <= 0.5:
        gamma_is = 2.0 * alpha - 2.0 * order
    else:
        gamma_is = alpha - 2.0 * order + 1.0
    beta = alpha / (alpha + 1.0)
    gamma_eta = (alpha - 2.0 * order + 1.0) * beta
    return gamma_is, beta, gamma_eta


def radii_schedule(delta: float) -> tuple[float, float, float]:
    """Nested radii (R, r, r0) = (1 - delta/4, 1 - delta/2, 1 - delta)."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return 1.0 - delta / 4.0, 1.0 - delta / 2.0, 1.0 - delta
