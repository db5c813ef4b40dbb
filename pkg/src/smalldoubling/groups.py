"""Finite groups as explicit Cayley tables.

Elements are dense indices 0..n-1 and the identity sits at index 0 in every
preset.  Tables are immutable after construction; every operation here is a
pure function, so concurrent readers need no coordination.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidTable, NotASubgroup, SizeLimitExceeded
from .subsets import Subset, iter_bits

DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group presented by its multiplication table.

    `mul[a][b]` is the index of a*b, `inv[a]` the index of a^-1.  `spec` is a
    JSON-serializable description sufficient to rebuild the table, used by
    certificates.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    is_abelian: bool
    name: str
    spec: dict = field(repr=False)

    def elements(self) -> range:
        return range(self.order)

    def label(self, index: int) -> str:
        return self.labels[index]

    def subset(self, elements: Iterable[int]) -> Subset:
        return Subset.from_elements(self.order, elements)

    def singleton(self, element: int) -> Subset:
        return Subset.from_elements(self.order, (element,))

    def identity_subset(self) -> Subset:
        return self.singleton(self.identity)

    def full_subset(self) -> Subset:
        return Subset.full(self.order)

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


@dataclass(frozen=True)
class TableViolation:
    axiom: str
    witness: tuple
    detail: str


@dataclass(frozen=True)
class TableValidation:
    order: int
    ok: bool
    violations: tuple[TableViolation, ...]


def _check_cap(order: int, order_cap: int, what: str) -> None:
    if order > order_cap:
        raise SizeLimitExceeded(
            f"{what} has order {order}, above the configured cap {order_cap}"
        )


def validate_table(mul: Sequence[Sequence[int]]) -> TableValidation:
    """Check the group axioms on a raw table.

    Reports the first witness of each violated axiom rather than raising;
    associativity is checked for all n^3 triples.
    """
    n = len(mul)
    violations: list[TableViolation] = []
    if n == 0:
        return TableValidation(0, False, (TableViolation("nonempty", (), "empty table"),))

    shape_bad = None
    for a, row in enumerate(mul):
        if len(row) != n:
            shape_bad = TableViolation("shape", (a,), f"row {a} has length {len(row)}, expected {n}")
            break
    if shape_bad is not None:
        return TableValidation(n, False, (shape_bad,))

    for a in range(n):
        for b in range(n):
            v = mul[a][b]
            if not isinstance(v, int) or not 0 <= v < n:
                violations.append(
                    TableViolation("closure", (a, b), f"mul({a},{b}) = {v!r} outside [0,{n})")
                )
                break
        else:
            continue
        break
    if violations:
        # Out-of-range entries make the remaining axioms meaningless.
        return TableValidation(n, False, tuple(violations))

    identity = None
    for e in range(n):
        if all(mul[e][a] == a and mul[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        violations.append(TableViolation("identity", (), "no two-sided identity element"))

    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            violations.append(
                TableViolation(
                    "associativity",
                    (a, b, c),
                    f"(a*b)*c = {mul[mul[a][b]][c]} but a*(b*c) = {mul[a][mul[b][c]]}",
                )
            )
            break

    if identity is not None:
        for a in range(n):
            if not any(mul[a][b] == identity and mul[b][a] == identity for b in range(n)):
                violations.append(
                    TableViolation("inverses", (a,), f"element {a} has no two-sided inverse")
                )
                break

    return TableValidation(n, not violations, tuple(violations))


def _finish(
    mul: tuple[tuple[int, ...], ...],
    identity: int,
    labels: tuple[str, ...],
    name: str,
    spec: dict,
) -> GroupTable:
    n = len(mul)
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if mul[a][b] == identity:
                inv[a] = b
                break
    abelian = all(mul[a][b] == mul[b][a] for a in range(n) for b in range(a))
    if len(set(labels)) != n:
        raise InvalidTable("labels are not distinct", witness=("labels", ()))
    return GroupTable(
        order=n,
        mul=mul,
        identity=identity,
        inv=tuple(inv),
        labels=labels,
        is_abelian=abelian,
        name=name,
        spec=spec,
    )


def cyclic(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Integers mod n under addition."""
    if n < 1:
        raise InvalidTable(f"cyclic group needs n >= 1, got {n}")
    _check_cap(n, order_cap, f"cyclic({n})")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    labels = tuple(str(i) for i in range(n))
    return _finish(mul, 0, labels, f"Z{n}", {"preset": "cyclic", "n": n})


def dihedral(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Symmetries of a regular n-gon: n rotations r0..r(n-1), n reflections s0..s(n-1)."""
    if n < 1:
        raise InvalidTable(f"dihedral group needs n >= 1, got {n}")
    _check_cap(2 * n, order_cap, f"dihedral({n})")
    size = 2 * n
    mul = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            mul[i][j] = (i + j) % n            # r_i r_j = r_{i+j}
            mul[i][j + n] = (i + j) % n + n    # r_i s_j = s_{i+j}
            mul[i + n][j] = (i - j) % n + n    # s_i r_j = s_{i-j}
            mul[i + n][j + n] = (i - j) % n    # s_i s_j = r_{i-j}
    labels = tuple(f"r{i}" for i in range(n)) + tuple(f"s{i}" for i in range(n))
    table = tuple(tuple(row) for row in mul)
    return _finish(table, 0, labels, f"D{n}", {"preset": "dihedral", "n": n})


def _cycle_label(perm: tuple[int, ...]) -> str:
    """One-line cycle notation on points 1..n; identity is "e"."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) if parts else "e"


def symmetric(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """All permutations of n points; product pq applies q first, then p."""
    if n < 1:
        raise InvalidTable(f"symmetric group needs n >= 1, got {n}")
    if n > 6:
        raise SizeLimitExceeded(f"symmetric({n}) has order {n}! — preset supports n <= 6")
    order = 1
    for k in range(2, n + 1):
        order *= k
    _check_cap(order, order_cap, f"symmetric({n})")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    labels = tuple(_cycle_label(p) for p in perms)
    return _finish(mul, 0, labels, f"S{n}", {"preset": "symmetric", "n": n})


def quaternion(n: int = 2, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Generalized quaternion group of order 4n (n=2 gives the quaternions Q8).

    Presentation <a, b | a^(2n) = e, b^2 = a^n, b a = a^-1 b>; element i < 2n
    is a^i, element 2n + i is a^i b.
    """
    if n < 2:
        raise InvalidTable(f"quaternion group needs n >= 2, got {n}")
    _check_cap(4 * n, order_cap, f"quaternion({n})")
    m = 2 * n
    size = 4 * n
    mul = [[0] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            mul[i][j] = (i + j) % m                     # a^i a^j
            mul[i][j + m] = (i + j) % m + m             # a^i (a^j b)
            mul[i + m][j] = (i - j) % m + m             # (a^i b) a^j
            mul[i + m][j + m] = (i - j + n) % m         # (a^i b)(a^j b) = a^{i-j+n}
    def power_label(i: int, tail: str) -> str:
        head = "" if i == 0 else ("a" if i == 1 else f"a{i}")
        text = head + tail
        return text if text else "e"
    labels = tuple(power_label(i, "") for i in range(m)) + tuple(
        power_label(i, "b") for i in range(m)
    )
    table = tuple(tuple(row) for row in mul)
    return _finish(table, 0, labels, f"Q{4 * n}", {"preset": "quaternion", "n": n})


def direct_product(
    factors: Sequence[GroupTable], *, order_cap: int = DEFAULT_ORDER_CAP
) -> GroupTable:
    """Componentwise product; element indices are mixed-radix over the factors."""
    if not factors:
        raise InvalidTable("direct product needs at least one factor")
    order = 1
    for g in factors:
        order *= g.order
    _check_cap(order, order_cap, "direct product")

    radices = [g.order for g in factors]

    def decode(x: int) -> tuple[int, ...]:
        out = []
        for r in reversed(radices):
            x, rem = divmod(x, r)
            out.append(rem)
        return tuple(reversed(out))

    def encode(parts: Sequence[int]) -> int:
        x = 0
        for p, r in zip(parts, radices):
            x = x * r + p
        return x

    mul_rows = []
    coords = [decode(x) for x in range(order)]
    for a in range(order):
        ca = coords[a]
        row = []
        for b in range(order):
            cb = coords[b]
            row.append(encode([g.mul[x][y] for g, x, y in zip(factors, ca, cb)]))
        mul_rows.append(tuple(row))
    labels = tuple(
        "(" + ",".join(g.labels[x] for g, x in zip(factors, coords[a])) + ")"
        for a in range(order)
    )
    name = "x".join(g.name for g in factors)
    spec = {"preset": "direct_product", "factors": [g.spec for g in factors]}
    return _finish(tuple(mul_rows), 0, labels, name, spec)


def from_table(
    mul: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    *,
    name: str = "table",
    order_cap: int = DEFAULT_ORDER_CAP,
) -> GroupTable:
    """Build a group from an explicit table, validating every axiom first."""
    n = len(mul)
    _check_cap(n, order_cap, "table group")
    report = validate_table(mul)
    if not report.ok:
        v = report.violations[0]
        raise InvalidTable(f"{v.axiom} violated: {v.detail}", witness=(v.axiom, v.witness))
    table = tuple(tuple(int(x) for x in row) for row in mul)
    identity = next(
        e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))
    )
    if labels is None:
        label_tuple = tuple(str(i) for i in range(n))
    else:
        if len(labels) != n:
            raise InvalidTable(f"got {len(labels)} labels for order {n}")
        label_tuple = tuple(str(x) for x in labels)
    spec = {"table": [list(row) for row in table], "labels": list(label_tuple)}
    return _finish(table, identity, label_tuple, name, spec)


_PRESET_BUILDERS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "quaternion": quaternion,
}


def from_spec(spec: dict, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build a group from its JSON description (preset dict or explicit table)."""
    if not isinstance(spec, dict):
        raise InvalidTable(f"group spec must be an object, got {type(spec).__name__}")
    if "table" in spec:
        return from_table(
            spec["table"], spec.get("labels"), name=spec.get("name", "table"),
            order_cap=order_cap,
        )
    preset = spec.get("preset")
    if preset == "direct_product":
        factors = [from_spec(s, order_cap=order_cap) for s in spec.get("factors", [])]
        return direct_product(factors, order_cap=order_cap)
    if preset in _PRESET_BUILDERS:
        if "n" not in spec:
            raise InvalidTable(f"preset {preset!r} needs parameter 'n'")
        return _PRESET_BUILDERS[preset](int(spec["n"]), order_cap=order_cap)
    raise InvalidTable(f"unknown group spec: {spec!r}")


def build_preset(kind: str, params: dict, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Spec-dict front end: build_preset("cyclic", {"n": 6})."""
    if kind == "from_table":
        return from_spec({"table": params["table"], "labels": params.get("labels")},
                         order_cap=order_cap)
    return from_spec({"preset": kind, **params}, order_cap=order_cap)


# --- set-level navigation -------------------------------------------------


def left_translate_mask(G: GroupTable, x: int, mask: int) -> int:
    """Bitmask of {x*a : a in mask}."""
    row = G.mul[x]
    out = 0
    for a in iter_bits(mask):
        out |= 1 << row[a]
    return out


def right_translate_mask(G: GroupTable, mask: int, x: int) -> int:
    """Bitmask of {a*x : a in mask}."""
    mul = G.mul
    out = 0
    for a in iter_bits(mask):
        out |= 1 << mul[a][x]
    return out


def is_subgroup_mask(G: GroupTable, mask: int) -> bool:
    """A nonempty subset of a finite group closed under products is a subgroup."""
    if mask == 0 or (mask >> G.identity) & 1 == 0:
        return False
    mul = G.mul
    elems = list(iter_bits(mask))
    for a in elems:
        row = mul[a]
        for b in elems:
            if (mask >> row[b]) & 1 == 0:
                return False
    return True


def is_subgroup(G: GroupTable, H: Subset) -> bool:
    return H.group_order == G.order and is_subgroup_mask(G, H.mask)


def closure(G: GroupTable, gens: Subset) -> Subset:
    """Smallest subgroup containing `gens`; the empty set generates {e}."""
    mask = gens.mask | (1 << G.identity)
    mul = G.mul
    while True:
        new = mask
        for a in iter_bits(mask):
            row = mul[a]
            for b in iter_bits(mask):
                new |= 1 << row[b]
        if new == mask:
            return Subset(G.order, mask)
        mask = new


@functools.lru_cache(maxsize=None)
def _subgroup_masks(G: GroupTable) -> tuple[int, ...]:
    # Breadth-first over closures of (subgroup + one extra element),
    # deduplicated by mask; reaches every subgroup through generator chains.
    trivial = closure(G, Subset.empty(G.order)).mask
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for mask in frontier:
            for g in range(G.order):
                if (mask >> g) & 1:
                    continue
                grown = closure(G, Subset(G.order, mask | (1 << g))).mask
                if grown not in seen:
                    seen.add(grown)
                    next_frontier.append(grown)
        frontier = next_frontier
    return tuple(
        sorted(seen, key=lambda m: (m.bit_count(), tuple(iter_bits(m))))
    )


def enumerate_subgroups(G: GroupTable) -> tuple[Subset, ...]:
    """All subgroups of G, sorted by (cardinality, bit-lexicographic order)."""
    return tuple(Subset(G.order, m) for m in _subgroup_masks(G))


def _coset_mask(G: GroupTable, H: Subset, g: int, side: str, check: bool) -> int:
    if check and not is_subgroup(G, H):
        raise NotASubgroup(f"{H!r} is not a subgroup of {G.name}")
    if side == "left":
        return left_translate_mask(G, g, H.mask)
    return right_translate_mask(G, H.mask, g)


def left_coset(G: GroupTable, H: Subset, g: int, *, check: bool = False) -> Subset:
    """g*H."""
    return Subset(G.order, _coset_mask(G, H, g, "left", check))


def right_coset(G: GroupTable, H: Subset, g: int, *, check: bool = False) -> Subset:
    """H*g."""
    return Subset(G.order, _coset_mask(G, H, g, "right", check))


def catalogue(max_order: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> tuple[GroupTable, ...]:
    """The preset sweep catalogue: cyclic groups, two-factor cyclic products,
    dihedral and generalized quaternion groups, and symmetric groups, up to
    `max_order`.  Deterministic order: (group order, name)."""
    out: list[GroupTable] = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n, order_cap=order_cap))
    for a in range(2, max_order + 1):
        for b in range(a, max_order + 1):
            if a * b <= max_order:
                out.append(
                    direct_product(
                        [cyclic(a, order_cap=order_cap), cyclic(b, order_cap=order_cap)],
                        order_cap=order_cap,
                    )
                )
    for n in range(3, max_order // 2 + 1):
        out.append(dihedral(n, order_cap=order_cap))
    for n in range(3, 7):
        order = 1
        for k in range(2, n + 1):
            order *= k
        if order <= max_order:
            out.append(symmetric(n, order_cap=order_cap))
    n = 2
    while 4 * n <= max_order:
        out.append(quaternion(n, order_cap=order_cap))
        n += 1
    return tuple(sorted(out, key=lambda g: (g.order, g.name)))
