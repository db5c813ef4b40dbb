"""Exact product-set algebra on bitset subsets.

Everything here is integer/bitmask arithmetic; ratios come out as
`fractions.Fraction`.  The subset-table helpers at the bottom compute
|A*S| for *every* subset A of the group at once with a per-bit dynamic
program, which is what makes the exhaustive sweeps cheap.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySet, GroupMismatch, NotASubgroup, SizeLimitExceeded
from .groups import (
    GroupTable,
    is_subgroup,
    left_translate_mask,
    right_translate_mask,
)
from .subsets import Subset, iter_bits

SUBSET_TABLE_LIMIT = 24  # 2^24 masks is the largest table we will materialize


def _check_member(G: GroupTable, X: Subset, what: str) -> None:
    if X.group_order != G.order:
        raise GroupMismatch(f"{what} has group order {X.group_order}, expected {G.order}")


def product_mask(G: GroupTable, amask: int, bmask: int) -> int:
    """Bitmask of {a*b : a in amask, b in bmask}."""
    mul = G.mul
    out = 0
    b_elems = list(iter_bits(bmask))
    for a in iter_bits(amask):
        row = mul[a]
        for b in b_elems:
            out |= 1 << row[b]
    return out


def product_set(G: GroupTable, A: Subset, B: Subset) -> Subset:
    """A*B = {a*b : a in A, b in B}; empty iff either factor is empty."""
    _check_member(G, A, "A")
    _check_member(G, B, "B")
    return Subset(G.order, product_mask(G, A.mask, B.mask))


def inverse_set(G: GroupTable, A: Subset) -> Subset:
    """{a^-1 : a in A}."""
    _check_member(G, A, "A")
    inv = G.inv
    out = 0
    for a in iter_bits(A.mask):
        out |= 1 << inv[a]
    return Subset(G.order, out)


def left_translate(G: GroupTable, x: int, A: Subset) -> Subset:
    """x*A."""
    _check_member(G, A, "A")
    return Subset(G.order, left_translate_mask(G, x, A.mask))


def right_translate(G: GroupTable, A: Subset, x: int) -> Subset:
    """A*x."""
    _check_member(G, A, "A")
    return Subset(G.order, right_translate_mask(G, A.mask, x))


def right_stabilizer(G: GroupTable, T: Subset) -> Subset:
    """The symmetry group {h : T*h = T}; T is a union of its left cosets."""
    _check_member(G, T, "T")
    if T.is_empty:
        raise EmptySet("stabilizer of the empty set is undefined here")
    out = 0
    for h in range(G.order):
        if right_translate_mask(G, T.mask, h) == T.mask:
            out |= 1 << h
    return Subset(G.order, out)


def left_stabilizer(G: GroupTable, T: Subset) -> Subset:
    """{h : h*T = T}; T is a union of its right cosets."""
    _check_member(G, T, "T")
    if T.is_empty:
        raise EmptySet("stabilizer of the empty set is undefined here")
    out = 0
    for h in range(G.order):
        if left_translate_mask(G, h, T.mask) == T.mask:
            out |= 1 << h
    return Subset(G.order, out)


@dataclass(frozen=True)
class DoublingReport:
    """Exact doubling data for one set: |A*A| / |A| and the best epsilon."""

    A: Subset
    square: Subset
    ratio: Fraction
    epsilon: Fraction  # 2 - ratio; may be <= 0 when doubling is at least 2


def doubling_ratio(G: GroupTable, A: Subset) -> DoublingReport:
    _check_member(G, A, "A")
    if A.is_empty:
        raise EmptySet("doubling ratio of the empty set")
    square = product_set(G, A, A)
    ratio = Fraction(square.cardinality, A.cardinality)
    return DoublingReport(A=A, square=square, ratio=ratio, epsilon=2 - ratio)


@dataclass(frozen=True)
class CoverCertificate:
    """The distinct cosets of `subgroup` that meet `covered`.

    Cosets on one side partition the group, so this count is the minimum
    number of cosets of the subgroup needed to cover the set.  Representatives
    are the smallest element index of each coset, listed increasing.
    """

    subgroup: Subset
    side: str  # "left" for g*H cosets, "right" for H*g
    representatives: tuple[int, ...]
    covered: Subset

    @property
    def count(self) -> int:
        return len(self.representatives)


def coset_cover(G: GroupTable, H: Subset, T: Subset, side: str = "right") -> CoverCertificate:
    _check_member(G, H, "H")
    _check_member(G, T, "T")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if T.is_empty:
        raise EmptySet("cannot cover the empty set")
    if not is_subgroup(G, H):
        raise NotASubgroup(f"{H!r} is not a subgroup of {G.name}")
    reps = set()
    for t in iter_bits(T.mask):
        if side == "right":
            coset = right_translate_mask(G, H.mask, t)
        else:
            coset = left_translate_mask(G, t, H.mask)
        reps.add(coset & -coset)  # lowest set bit identifies the coset canonically
    representatives = tuple(sorted(low.bit_length() - 1 for low in reps))
    return CoverCertificate(subgroup=H, side=side, representatives=representatives, covered=T)


# --- whole-powerset product tables -----------------------------------------


def _require_table_size(n: int) -> None:
    if n > SUBSET_TABLE_LIMIT:
        raise SizeLimitExceeded(
            f"subset tables need 2^{n} entries; supported only up to order "
            f"{SUBSET_TABLE_LIMIT}"
        )


def expansion_rows(G: GroupTable, S: Subset) -> list[int]:
    """Row masks g -> g*S for every g; OR-ing rows over A gives A*S."""
    _check_member(G, S, "S")
    mul = G.mul
    s_elems = list(iter_bits(S.mask))
    rows = []
    for g in range(G.order):
        row = mul[g]
        m = 0
        for s in s_elems:
            m |= 1 << row[s]
        rows.append(m)
    return rows


def mask_table_from_rows(rows: list[int]) -> np.ndarray:
    """prod[m] = OR of rows[g] over set bits g of m, for every mask m.

    Filling masks in decreasing order of their lowest set bit lets each layer
    be one vectorized slice assignment.
    """
    n = len(rows)
    _require_table_size(n)
    prod = np.zeros(1 << n, dtype=np.uint64)
    for k in range(n - 1, -1, -1):
        base = np.arange(0, 1 << n, 1 << (k + 1), dtype=np.int64)
        prod[base + (1 << k)] = prod[base] | np.uint64(rows[k])
    prod.flags.writeable = False
    return prod


@functools.lru_cache(maxsize=32)
def product_mask_table(G: GroupTable, S: Subset) -> np.ndarray:
    """Bitmask of A*S for every subset-mask A of G (index = A's mask)."""
    return mask_table_from_rows(expansion_rows(G, S))


@functools.lru_cache(maxsize=32)
def product_size_table(G: GroupTable, S: Subset) -> np.ndarray:
    """|A*S| for every subset-mask A of G, as int64."""
    sizes = np.bitwise_count(product_mask_table(G, S)).astype(np.int64)
    sizes.flags.writeable = False
    return sizes


@functools.lru_cache(maxsize=8)
def popcount_table(n: int) -> np.ndarray:
    """|A| for every mask of width n."""
    _require_table_size(n)
    cards = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    cards.flags.writeable = False
    return cards
