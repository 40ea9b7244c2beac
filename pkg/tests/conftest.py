"""Shared test shorthands."""

from borderqsym import Monomial, SubsetSpec


def spec(n, *members):
    return SubsetSpec(n, frozenset(members))


def mono(text):
    return Monomial.parse(text)
