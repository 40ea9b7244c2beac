"""Subset string forms, shuffles, generalized peak sets, and the degree-1 product rule.

A subset of [n] becomes an n-letter string over an ordered letter pair,
first letter at member positions.  A shuffle of two subsets interleaves
their string forms, written with the pairs (A, B) and (C, D), as
disjoint subsequences; since the pairs share no letters there are
exactly C(n+m, n) shuffles.  Under the order A > B > C > D, the
generalized peak set of a string collects the positions of non-minimal
letters that weakly dominate their existing neighbors.

The peak sets of the shuffles of the one-element empty subset with any
subset give the expansion of the corresponding degree-1 K product as a
sum of K members, with multiplicity.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from .families import SubsetSpec

LETTER_RANK = {"A": 3, "B": 2, "C": 1, "D": 0}


def string_form(spec: SubsetSpec, pair: tuple[str, str] = ("A", "B")) -> str:
    """The n-letter string with the pair's first letter at member positions."""
    x, y = pair
    if x == y or len(x) != 1 or len(y) != 1:
        raise ValueError(f"pair must be two distinct single letters, got {pair!r}")
    return "".join(x if i in spec.members else y for i in range(1, spec.n + 1))


def shuffles(left: SubsetSpec, right: SubsetSpec) -> list[str]:
    """All interleavings of the two string forms, sorted; |result| = C(n+m, n)."""
    a = string_form(left, ("A", "B"))
    b = string_form(right, ("C", "D"))
    total = len(a) + len(b)
    out = []
    for positions in combinations(range(total), len(a)):
        chosen = set(positions)
        letters = []
        ai = iter(a)
        bi = iter(b)
        for i in range(total):
            letters.append(next(ai) if i in chosen else next(bi))
        out.append("".join(letters))
    return sorted(out)


def gp(s: str) -> SubsetSpec:
    """The generalized peak set of a string over A, B, C, D.

    A position belongs iff its letter is not D and is >= each existing
    neighbor under A > B > C > D; the two end positions have one
    neighbor each.
    """
    for ch in s:
        if ch not in LETTER_RANK:
            raise ValueError(f"letter {ch!r} outside ABCD in {s!r}")
    members = set()
    for i, ch in enumerate(s):
        if ch == "D":
            continue
        if i > 0 and LETTER_RANK[ch] < LETTER_RANK[s[i - 1]]:
            continue
        if i < len(s) - 1 and LETTER_RANK[ch] < LETTER_RANK[s[i + 1]]:
            continue
        members.add(i + 1)
    return SubsetSpec(len(s), frozenset(members))


def k1_product(right: SubsetSpec) -> list[SubsetSpec]:
    """Peak sets, with multiplicity, expanding the degree-1 empty-set K product.

    Summing ``k_series`` over the result at any V >= n+1 equals
    ``k_series((1, {})) * k_series(right)``; the same expansion works for
    the left factor (1, {1}), which is the same series.
    """
    return [gp(s) for s in shuffles(SubsetSpec(1), right)]


def multiset_counts(specs: list[SubsetSpec]) -> list[tuple[SubsetSpec, int]]:
    """Collapse a spec list to (spec, multiplicity) pairs in (size, lex) order."""
    counts = Counter(specs)
    return sorted(counts.items(), key=lambda sc: sc[0].size_lex_key())


def multiset_json_obj(specs: list[SubsetSpec]) -> list[dict]:
    return [
        {"set": list(spec.members_sorted()), "multiplicity": k}
        for spec, k in multiset_counts(specs)
    ]
