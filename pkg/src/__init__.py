"""plumbline - exact invariants of normal surface singularities."""
