"""Exhaustive subgroup / normal-subgroup enumeration: the brute-force side.

Three distinct algorithms live here:

* ``all_subgroups`` — breadth-first closure of the whole lattice, extending
  each known subgroup by one outside element (Dimino coset filling keeps the
  extension cheap).
* ``normal_subgroups`` — conjugacy-class atoms closed under pairwise join.
  Every normal subgroup is a join of class closures, so this terminates with
  the complete list without touching the full lattice.
* ``maximal_normal_member_sets`` — the routine the series counter leans on.
  For a solvable subgroup every maximal normal subgroup has prime index, so
  they are exactly the kernels of maps onto Z_p; those are enumerated as
  hyperplanes of the elementary abelian quotient H / (H' * p-th powers).
  Non-solvable subgroups fall back to the class-join lattice, which is tiny
  for groups with no abelian bulk.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from . import config, group_core
from .errors import CapacityError, DomainError
from .group_core import (
    GroupTable,
    Subgroup,
    close_members,
    classes_of_members,
    derived_members,
    is_abelian_members,
    is_solvable_members,
    coset_quotient,
    element_power,
    _SMALL_N,
)


@dataclass
class SubgroupSet:
    """Deduplicated collection of subgroups of one parent."""

    parent: GroupTable
    items: list

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def orders(self):
        return sorted(s.order for s in self.items)

    def masks(self):
        return {s.mask for s in self.items}


def _mask_of(members):
    m = 0
    for x in members:
        m |= 1 << x
    return m


def _extend_subgroup(rows, sub_members, sub_mask, gens, g):
    """Dimino step: members and mask of <S, g> given a subgroup S with ``gens``."""
    mask = sub_mask
    members = list(sub_members)
    allgens = list(gens) + [g]
    reps = [0]
    i = 0
    while i < len(reps):
        rr = rows[reps[i]]
        i += 1
        for h in allgens:
            t = rr[h]
            if not (mask >> t) & 1:
                for s in sub_members:
                    e = rows[s][t]
                    mask |= 1 << e
                    members.append(e)
                reps.append(t)
    members.sort()
    return tuple(members), mask


def all_subgroups(G, cap=None):
    """Every subgroup of G exactly once (breadth-first closure from trivial)."""
    if cap is None:
        cap = config.SUBGROUP_ENUM_CAP
    n = G.order
    if n > cap:
        raise CapacityError(
            f"all_subgroups refused: order {n} exceeds the subgroup-enumeration cap {cap}"
        )
    rows = G.rows()
    seen = {1: (0,)}
    queue = [((0,), 1, ())]
    while queue:
        members, mask, gens = queue.pop()
        for g in range(1, n):
            if (mask >> g) & 1:
                continue
            t_members, t_mask = _extend_subgroup(rows, members, mask, gens, g)
            if t_mask not in seen:
                seen[t_mask] = t_members
                queue.append((t_members, t_mask, gens + (g,)))
    ordered = sorted(seen.values(), key=lambda t: (len(t), t))
    return SubgroupSet(G, [Subgroup(G, m) for m in ordered])


def normal_member_sets(G, members):
    """All normal subgroups of the subgroup ``members``, as member tuples."""
    classes = classes_of_members(G, members)
    atoms = {}
    for cls in classes:
        if cls == (0,):
            continue
        mem = close_members(G, cls)
        atoms.setdefault(_mask_of(mem), mem)
    normals = {1: (0,)}
    frontier = [((0,), 1)]
    while frontier:
        nmem, nmask = frontier.pop()
        for amask, amem in atoms.items():
            if amask | nmask == nmask:
                continue
            join = close_members(G, set(nmem) | set(amem))
            jmask = _mask_of(join)
            if jmask not in normals:
                normals[jmask] = join
                frontier.append((join, jmask))
    return sorted(normals.values(), key=lambda t: (len(t), t))


def normal_subgroups(G):
    """All normal subgroups via conjugacy-class atoms closed under join."""
    cap = config.element_cap()
    if G.order > cap:
        raise CapacityError(f"order {G.order} exceeds the element cap {cap}")
    if G._normal_cache is None:
        mem = normal_member_sets(G, tuple(range(G.order)))
        G._normal_cache = mem
    return SubgroupSet(G, [Subgroup(G, m) for m in G._normal_cache])


def _maximal_among(member_sets, full_size):
    proper = [(m, _mask_of(m)) for m in member_sets if len(m) < full_size]
    out = []
    for mem, mask in proper:
        if any(
            mask != omask and mask | omask == omask for _, omask in proper
        ):
            continue
        out.append(mem)
    return sorted(out, key=lambda t: (len(t), t))


def maximal_normal_subgroups(G):
    """Proper normal subgroups maximal under inclusion among proper normals."""
    if G.order < 2:
        raise DomainError("the trivial group has no maximal normal subgroup")
    return SubgroupSet(
        G, [Subgroup(G, m) for m in maximal_normal_member_sets(G, tuple(range(G.order)))]
    )


def maximal_subgroups_count(G, cap=None):
    """Number of maximal elements among all proper subgroups (brute force)."""
    subs = all_subgroups(G, cap=cap)
    sets = [s.members for s in subs.items]
    return len(_maximal_among(sets, G.order))


# ---------------------------------------------------------------------------
# maximal normal subgroups of a subgroup, the series recursion workhorse


def maximal_normal_member_sets(G, members, with_masks=False):
    """Maximal normal subgroups of the subgroup ``members`` as member tuples.

    ``with_masks=True`` returns (members, bit mask) pairs instead, computed in
    the same pass; the series recursion is hot enough for that to matter.
    """
    out = _maximal_normal_member_sets(G, members, with_masks)
    if with_masks:
        return out
    return sorted(out, key=lambda t: (len(t), t))


def _bit_table(G):
    if getattr(G, "_bits", None) is None:
        G._bits = [1 << x for x in range(G.order)]
    return G._bits


def _maximal_normal_member_sets(G, members, with_masks):
    m = len(members)
    if m == 1:
        return []
    if is_abelian_members(G, members):
        return _abelian_maximal_member_sets(G, members, with_masks)
    if is_solvable_members(G, members):
        d = derived_members(G, members)
        qtable, coset_index, _ = coset_quotient(G, d, members, check=False)
        qmax = _abelian_maximal_member_sets(qtable, tuple(range(qtable.order)), False)
        out = []
        for qset in qmax:
            keep = set(qset)
            out.append(tuple(x for x in members if coset_index[x] in keep))
    else:
        normals = normal_member_sets(G, members)
        out = _maximal_among(normals, m)
    if with_masks:
        return [(mem, _mask_of(mem)) for mem in out]
    return out


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def _abelian_maximal_member_sets(G, members, with_masks=False):
    """Index-p subgroups of an abelian subgroup, for each prime p of its order.

    For abelian H every maximal subgroup is the kernel of a surjection onto
    Z_p, i.e. a hyperplane of the elementary abelian quotient H / {x^p}.
    """
    m = len(members)
    out = []
    bits = _bit_table(G) if with_masks else None
    small = G.order <= _SMALL_N
    rows = G.rows() if small else None
    for p in _prime_factors(m):
        # p-th powers form a subgroup of abelian H (image of x -> x^p)
        if p == 2 and small:
            powers = sorted({rows[x][x] for x in members})
        elif small:
            powers = sorted({element_power(G, x, p) for x in members})
        else:
            arr = np.fromiter(members, dtype=G.mult.dtype)
            acc = arr.copy()
            for _ in range(p - 1):
                acc = G.mult[acc, arr]
            powers = sorted(int(v) for v in np.unique(acc))
        k = len(powers)
        if k == 1:
            coset_of = {x: x for x in members}
            reps = list(members)
        else:
            if small:
                parr = powers
                coset_of = {x: min(rows[x][t] for t in parr) for x in members}
            else:
                harr = np.fromiter(members, dtype=G.mult.dtype)
                parr = np.fromiter(powers, dtype=G.mult.dtype)
                mins = G.mult[np.ix_(harr, parr)].min(axis=1)
                coset_of = {int(x): int(v) for x, v in zip(members, mins)}
            reps = sorted(set(coset_of.values()))
        d_rank, coords = _elem_abelian_coords(G, reps, coset_of, p)
        mz = [(x, coords[coset_of[x]]) for x in members]
        if p == 2:
            # parity-of-popcount lookup keeps the inner test to one index op
            par = bytearray((0,))
            for _ in range(d_rank):
                par.extend(b ^ 1 for b in par)
            if with_masks:
                for phi in range(1, 1 << d_rank):
                    msk = 0
                    mem = []
                    app = mem.append
                    for x, c in mz:
                        if not par[c & phi]:
                            app(x)
                            msk |= bits[x]
                    out.append((tuple(mem), msk))
            else:
                for phi in range(1, 1 << d_rank):
                    out.append(tuple(x for x, c in mz if not par[c & phi]))
        else:
            for lead in range(d_rank):
                for rest in iproduct(range(p), repeat=d_rank - lead - 1):
                    phi = (0,) * lead + (1,) + rest
                    sub = tuple(
                        x
                        for x, c in mz
                        if sum(ci * fi for ci, fi in zip(c, phi)) % p == 0
                    )
                    if with_masks:
                        out.append((sub, _mask_of(sub)))
                    else:
                        out.append(sub)
    return out


def _elem_abelian_coords(G, reps, coset_of, p):
    """Coordinates of the elementary abelian quotient spanned by ``reps``.

    Returns (rank, coords) where coords maps each rep to its coordinate vector:
    an int bit mask for p = 2, a tuple of residues otherwise.  Basis vectors
    are picked greedily in rep order, so the assignment is deterministic.
    """
    q = len(reps)
    small = G.order <= _SMALL_N
    rows = G.rows() if small else None
    mult = G.mult

    def qmul(a, b):
        ab = rows[a][b] if small else int(mult[a, b])
        return coset_of[ab]

    if p == 2:
        coords = {0: 0}
        d = 0
        for g in reps:
            if g in coords:
                continue
            bit = 1 << d
            for r, c in list(coords.items()):
                coords[qmul(r, g)] = c | bit
            d += 1
            if len(coords) == q:
                break
        return d, coords

    coords = {0: ()}
    d = 0
    for g in reps:
        if g in coords:
            continue
        for r, c in list(coords.items()):
            c = c + (0,) * (d - len(c))
            cur = r
            for j in range(1, p):
                cur = qmul(cur, g)
                coords[cur] = c + (j,)
        d += 1
        if len(coords) == q:
            break
    coords = {k: v + (0,) * (d - len(v)) for k, v in coords.items()}
    return d, coords
