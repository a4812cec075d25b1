"""Exact FTC-pairs, Zinbiel algebras and the equivalence between them."""
