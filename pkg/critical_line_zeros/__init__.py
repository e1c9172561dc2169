"""Zero counting for symmetrized families h(s) ± h(2a−s) on and off their critical line."""
__version__ = "0.1.0"
