"""Tests for the clusterlab."""
