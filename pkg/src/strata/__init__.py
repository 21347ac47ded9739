"""Exact computations with bound quiver algebras, split-by-nilpotent
extensions and stratifying systems."""
