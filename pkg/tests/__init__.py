"""Test suite for the mean-payoff game solver."""
