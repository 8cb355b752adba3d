"""Unit tests for the clusterlab."""
