"""Brute-force composition-series counting and enumeration.

The count recursion is c(trivial) = 1 and c(H) = sum of c(M) over the maximal
normal subgroups M of H, memoized by the member bit mask of H inside the
top-level parent.  Enumeration runs the same recursion as a DFS with children
visited in lexicographic member order, so output order is reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import islice

from . import config, group_core, lattice
from .errors import CapacityError, DomainError
from .group_core import GroupTable, Subgroup


@dataclass(frozen=True)
class SeriesCount:
    value: int
    method: str  # brute-force | formula | cached

    def __post_init__(self):
        if self.value < 1:
            raise DomainError("every group has at least one composition series")


@dataclass(frozen=True)
class CompositionChain:
    """Chain of subgroups from the trivial subgroup up to the full group."""

    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise DomainError("a chain has at least the trivial term")
        parent = terms[0].parent
        if terms[0].order != 1 or terms[-1].order != parent.order:
            raise DomainError("chain must run from the trivial subgroup to the full group")

    @property
    def parent(self):
        return self.terms[0].parent

    def orders(self):
        return [t.order for t in self.terms]

    def to_json_obj(self):
        return {
            "orders": self.orders(),
            "subgroups": [list(t.members) for t in self.terms],
        }


def _check_cap(G):
    cap = config.element_cap()
    if G.order > cap:
        raise CapacityError(f"order {G.order} exceeds the element cap {cap}")


def _mask_of(members):
    m = 0
    for x in members:
        m |= 1 << x
    return m


def count_series(G):
    """Exact number of distinct composition series of G (brute-force oracle)."""
    _check_cap(G)
    if getattr(G, "_series_count", None) is not None:
        return SeriesCount(G._series_count, "cached")
    memo = {}
    full = tuple(range(G.order))

    def c(members, mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        if len(members) == 1:
            memo[mask] = 1
            return 1
        total = 0
        for child, cmask in lattice.maximal_normal_member_sets(
            G, members, with_masks=True
        ):
            total += c(child, cmask)
        memo[mask] = total
        return total

    value = c(full, _mask_of(full))
    G._series_count = value
    return SeriesCount(value, "brute-force")


def _chain_walk(G, members):
    if len(members) == 1:
        yield [members]
        return
    for child in lattice.maximal_normal_member_sets(G, members):
        for prefix in _chain_walk(G, child):
            prefix.append(members)
            yield prefix


def enumerate_series(G, limit=None):
    """All distinct composition series of G, or the first ``limit`` of them."""
    _check_cap(G)
    if limit is not None and limit < 1:
        raise DomainError("limit must be a positive integer")
    full = tuple(range(G.order))
    walk = _chain_walk(G, full)
    if limit is not None:
        walk = islice(walk, limit)
    return [
        CompositionChain(tuple(Subgroup(G, mem) for mem in raw)) for raw in walk
    ]


def composition_factor_orders(chain):
    """Multiset of consecutive index jumps |G_{i+1}| / |G_i| along the chain."""
    orders = chain.orders()
    return Counter(b // a for a, b in zip(orders, orders[1:]))


def validate_chain(chain):
    """Re-check every CompositionChain invariant the hard way.

    Each step must be proper, normal in the next term, and have a simple
    quotient (tested by realizing the quotient table and enumerating its
    normal subgroups).  Raises DomainError on the first violation.
    """
    G = chain.parent
    terms = chain.terms
    prod_of_factors = 1
    for i, (a, b) in enumerate(zip(terms, terms[1:])):
        if a.mask & ~b.mask:
            raise DomainError(f"step {i}: term is not contained in the next")
        if a.order >= b.order:
            raise DomainError(f"step {i}: term is not proper in the next")
        if not group_core._members_normal_in(G, a.members, b.members):
            raise DomainError(f"step {i}: term is not normal in the next")
        q = group_core.quotient(G, a, b)
        if not group_core.is_simple(q):
            raise DomainError(f"step {i}: quotient of order {q.order} is not simple")
        prod_of_factors *= b.order // a.order
    if prod_of_factors != G.order:
        raise DomainError("factor orders do not multiply to the group order")
    return True
