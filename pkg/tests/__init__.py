"""Test suite for the k-sample homogeneity test."""
