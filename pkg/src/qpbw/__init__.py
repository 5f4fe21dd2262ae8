"""Exact rewriting engine and catalog for quantum PBW presentations."""
