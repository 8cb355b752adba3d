"""Cluster statistics and closed-form moments for clique hypergraphs."""
