"""Exact q-analogs of weight multiplicity for affine Kac-Moody algebras."""
