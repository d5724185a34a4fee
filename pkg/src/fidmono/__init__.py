"""Fidelity-based entanglement measures and tightened monogamy bounds."""
