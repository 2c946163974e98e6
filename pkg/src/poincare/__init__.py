from .zeta import counting_sigma, expand_Z, periodic_constant, reduced_counting

__all__ = ["counting_sigma", "expand_Z", "periodic_constant", "reduced_counting"]
