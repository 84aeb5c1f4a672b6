"""Exact computations with Coxeter groups, hyperplane arrangements, Salvetti
complexes, Garside normal forms and finite balls of Artin complexes."""

__version__ = "0.1.0"
