"""Homological algebra of bound quiver algebras, with tau-rigidity tools for Auslander algebras."""
