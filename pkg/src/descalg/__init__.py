"""Exact computations in the descent algebra of the symmetric group."""
