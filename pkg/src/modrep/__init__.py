"""Modular representation theory of finite groups over small finite fields."""

__version__ = "0.1.0"
