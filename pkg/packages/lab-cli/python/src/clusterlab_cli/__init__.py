"""Batch front door for the clique-copy laboratory."""
