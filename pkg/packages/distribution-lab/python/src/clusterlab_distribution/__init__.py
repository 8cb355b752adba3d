"""Exact and estimated laws of the clique hypergraph, the reweighted-binomial model and typicality predicates."""
