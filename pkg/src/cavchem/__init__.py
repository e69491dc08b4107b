"""Coupled-cavity vibrational-polariton device simulator."""

__version__ = "0.1.0"
