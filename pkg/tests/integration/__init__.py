"""Integration tests for the clusterlab."""
