"""Defeasible argumentation with undercutting defeat."""
