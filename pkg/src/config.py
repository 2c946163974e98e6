"""Centralized configuration for plumbline.

Edit the constants below to change search limits and genericity draws across
the library and the CLI.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction


# =============================================================================
# RANDOMNESS (genericity draws for rank tests)
# =============================================================================

DEFAULT_SEED = 20240601

SEED_ENV_VAR = "PLUMBLINE_SEED"

# Random rationals p/q with |p| <= NUMERATOR_RANGE, 1 <= q <= DENOMINATOR_RANGE
RANDOM_RATIONAL = {
    "numerator_range": 9,
    "denominator_range": 5,
}


# =============================================================================
# SEARCH LIMITS
# =============================================================================

# Largest box volume the plain exhaustive minimizer is allowed to enumerate
MAX_EXHAUSTIVE_VOLUME = 10**6

# Default [n0, n1] for periodic constant extraction
DEFAULT_N_RANGE: tuple[int, int] = (1, 6)

# Fraction of the n-range over which sigma - chi must be constant
STABILIZATION_FRACTION = Fraction(1, 3)


# =============================================================================
# SYMBOLIC MODE
# =============================================================================

# Upper bound on the number of divisor parameters in symbolic computations
SYMBOLIC_VARIABLE_CAP = 3

# Prefix used for divisor parameter symbols c0, c1, ...
PARAMETER_PREFIX = "c"


# =============================================================================
# SUPERISOLATED CURVE MODELS
# =============================================================================

CURVE_MODELS: dict[str, str] = {
    "cusp": "y^(d-1) z = x^d",
    "sheared": "y^(d-1) (z - y) = x^d",
}

DEFAULT_CURVE_MODEL = "cusp"


def get_seed(seed: int | None = None) -> int:
    """Resolve the genericity seed: explicit value, then env var, then default.

    Raises:
        ValueError: env var set to something that is not an integer
    """
    if seed is not None:
        return int(seed)
    raw = os.getenv(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from e


def get_curve_model_name(name: str | None = None) -> str:
    """Validate a curve model name.

    Raises:
        ValueError: unknown model
    """
    name = name or DEFAULT_CURVE_MODEL
    if name not in CURVE_MODELS:
        raise ValueError(
            f"Unknown curve model '{name}'. Available: {sorted(CURVE_MODELS)}"
        )
    return name


def get_n_range(n_range: tuple[int, int] | None = None) -> tuple[int, int]:
    """Validate a periodic-constant range.

    Raises:
        ValueError: empty or non-positive range
    """
    n0, n1 = n_range or DEFAULT_N_RANGE
    if n0 < 1 or n1 < n0:
        raise ValueError(f"n_range must satisfy 1 <= n0 <= n1, got ({n0}, {n1})")
    return int(n0), int(n1)


@dataclass
class RunConfig:
    """Settings resolved once per CLI invocation."""

    seed: int = field(default_factory=get_seed)
    json_output: bool = False
    verbose: bool = False
    curve_model: str = DEFAULT_CURVE_MODEL

    @classmethod
    def from_options(
        cls,
        seed: int | None = None,
        json_output: bool = False,
        verbose: bool = False,
        curve_model: str | None = None,
    ) -> "RunConfig":
        return cls(
            seed=get_seed(seed),
            json_output=json_output,
            verbose=verbose,
            curve_model=get_curve_model_name(curve_model),
        )
