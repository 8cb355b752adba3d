"""Event families, clique hypergraphs and shared plumbing for the clique-copy laboratory."""
