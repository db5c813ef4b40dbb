"""Certificate-producing verifiers for the toolkit's named inequalities.

Covered here: Kneser's sumset bound in abelian groups, its covering
corollary, the weak Kneser-type structure theorem for noncommutative sets of
small doubling, the Petridis minimizer inequality, and an exhaustive or
seeded search for Kneser failures in nonabelian groups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .connectivity import CostParams, connectivity_subgroup_solver
from .errors import EmptySet, HypothesisFailed, NotAbelian, SizeLimitExceeded
from .groups import GroupTable, right_coset, right_translate_mask
from .setalg import (
    CoverCertificate,
    _check_member,
    coset_cover,
    mask_table_from_rows,
    popcount_table,
    product_mask,
    product_set,
    product_size_table,
    right_stabilizer,
)
from .subsets import Subset

DEFAULT_SUBSET_SEARCH_CAP = 20


def _check_epsilon(epsilon: Fraction) -> Fraction:
    epsilon = Fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    return epsilon


def _require_nonempty(*sets: Subset) -> None:
    for s in sets:
        if s.is_empty:
            raise EmptySet("this check needs nonempty sets")


# --- Kneser's inequality ----------------------------------------------------


@dataclass(frozen=True)
class KneserReport:
    A: Subset
    B: Subset
    sum: Subset
    H: Subset  # symmetry group (right stabilizer) of the sum
    lhs: int  # |A*B|
    rhs: int  # |A| + |B| - |H|
    holds: bool
    equality: bool


def _kneser_report(G: GroupTable, A: Subset, B: Subset) -> KneserReport:
    total = product_set(G, A, B)
    H = right_stabilizer(G, total)
    lhs = total.cardinality
    rhs = A.cardinality + B.cardinality - H.cardinality
    return KneserReport(
        A=A, B=B, sum=total, H=H, lhs=lhs, rhs=rhs, holds=lhs >= rhs, equality=lhs == rhs
    )


def kneser_check(G: GroupTable, A: Subset, B: Subset) -> KneserReport:
    """|A+B| >= |A| + |B| - |H| with H the symmetry group of A+B.

    Only valid in abelian groups; `holds` is True on every such instance.
    """
    if not G.is_abelian:
        raise NotAbelian(f"Kneser's inequality needs an abelian group, got {G.name}")
    _require_nonempty(A, B)
    return _kneser_report(G, A, B)


# --- covering corollary ------------------------------------------------------


@dataclass(frozen=True)
class CorollaryReport:
    """For |A+A| <= (2-e)|A|: the symmetry group H of A+A has |H| <= (2-e)|A|
    and A+A is covered by at most 2/e - 1 of its cosets."""

    A: Subset
    epsilon: Fraction
    square: Subset
    H: Subset
    H_bound: Fraction  # (2 - epsilon)|A|
    H_bound_ok: bool
    cover: CoverCertificate
    cover_bound: Fraction  # 2/epsilon - 1
    cover_bound_ok: bool
    holds: bool


def kneser_corollary_check(G: GroupTable, A: Subset, epsilon: Fraction) -> CorollaryReport:
    if not G.is_abelian:
        raise NotAbelian(f"the covering corollary needs an abelian group, got {G.name}")
    _require_nonempty(A)
    epsilon = _check_epsilon(epsilon)
    square = product_set(G, A, A)
    hypothesis_bound = (2 - epsilon) * A.cardinality
    if square.cardinality > hypothesis_bound:
        raise HypothesisFailed(
            f"|A+A| = {square.cardinality} > (2 - {epsilon})|A| = {hypothesis_bound}",
            lhs=square.cardinality,
            rhs=hypothesis_bound,
        )
    H = right_stabilizer(G, square)
    H_bound_ok = H.cardinality <= hypothesis_bound
    # A+A is H-invariant, so the distinct cosets of H through it cover it
    # exactly, |A+A| / |H| of them.
    cover = coset_cover(G, H, square, side="left")
    cover_bound = Fraction(2) / epsilon - 1
    cover_bound_ok = cover.count <= cover_bound
    return CorollaryReport(
        A=A,
        epsilon=epsilon,
        square=square,
        H=H,
        H_bound=hypothesis_bound,
        H_bound_ok=H_bound_ok,
        cover=cover,
        cover_bound=cover_bound,
        cover_bound_ok=cover_bound_ok,
        holds=H_bound_ok and cover_bound_ok,
    )


# --- weak Kneser-type structure theorem --------------------------------------


@dataclass(frozen=True)
class WeakKneserReport:
    """For |A| >= |S| and |A*S| <= (2-e)|S|: S lies in one right coset of a
    subgroup H with |H| <= (2/e)|S|, or is covered by at most 2/e - 1 right
    cosets of an H with |H| <= |S|.  H is the identity atom at K = 1 - e/2."""

    A: Subset
    S: Subset
    epsilon: Fraction
    K: Fraction
    hypotheses_ok: bool
    kappa: Fraction
    atom: Subset
    branch: str  # single_right_coset | multi_coset_cover | violation
    bound_H_size: Fraction
    sharp_H_bound: Fraction  # (2/e - 1)|S|, what the argument actually gives
    cover: Optional[CoverCertificate]
    violations: tuple[str, ...]


def weak_kneser_check(
    G: GroupTable, A: Subset, S: Subset, epsilon: Fraction
) -> WeakKneserReport:
    _require_nonempty(A, S)
    _check_member(G, A, "A")
    _check_member(G, S, "S")
    epsilon = _check_epsilon(epsilon)
    if A.cardinality < S.cardinality:
        raise HypothesisFailed(
            f"|A| = {A.cardinality} < |S| = {S.cardinality}",
            lhs=A.cardinality,
            rhs=S.cardinality,
        )
    prod = product_set(G, A, S)
    hyp_bound = (2 - epsilon) * S.cardinality
    if prod.cardinality > hyp_bound:
        raise HypothesisFailed(
            f"|A*S| = {prod.cardinality} > (2 - {epsilon})|S| = {hyp_bound}",
            lhs=prod.cardinality,
            rhs=hyp_bound,
        )

    K = 1 - epsilon / 2
    conn = connectivity_subgroup_solver(G, CostParams(S=S, K=K))
    H = conn.identity_atom
    assert H is not None
    sharp_bound = (Fraction(2) / epsilon - 1) * S.cardinality

    s0 = S.elements()[0]
    single = S.issubset(right_coset(G, H, s0))
    violations: list[str] = []
    cover = None
    if single:
        branch = "single_right_coset"
        bound_H = Fraction(2) / epsilon * S.cardinality
        if H.cardinality > bound_H:
            violations.append(
                f"single-coset branch: |H| = {H.cardinality} > (2/eps)|S| = {bound_H}"
            )
    else:
        branch = "multi_coset_cover"
        bound_H = Fraction(S.cardinality)
        cover = coset_cover(G, H, S, side="right")
        if H.cardinality > S.cardinality:
            violations.append(
                f"multi-coset branch: |H| = {H.cardinality} > |S| = {S.cardinality}"
            )
        cover_bound = Fraction(2) / epsilon - 1
        if cover.count > cover_bound:
            violations.append(
                f"multi-coset branch: cover needs {cover.count} cosets > "
                f"2/eps - 1 = {cover_bound}"
            )
    if violations:
        branch = "violation"
    return WeakKneserReport(
        A=A,
        S=S,
        epsilon=epsilon,
        K=K,
        hypotheses_ok=True,
        kappa=conn.kappa,
        atom=H,
        branch=branch,
        bound_H_size=bound_H,
        sharp_H_bound=sharp_bound,
        cover=cover,
        violations=tuple(violations),
    )


# --- Petridis minimizer -------------------------------------------------------


@dataclass(frozen=True)
class PetridisResult:
    """X minimizes |X*S|/|X| over nonempty subsets of A; then
    |C*X*S| <= K |C*X| for every finite C."""

    A: Subset
    S: Subset
    X: Subset
    K: Fraction  # |X*S| / |X|
    verified_C_count: int = 0
    exhaustive: bool = False


@dataclass(frozen=True)
class PetridisVerification:
    mode: str
    checked: int
    equality_at_identity: bool
    violations: tuple[Subset, ...]
    ok: bool


def petridis_minimizer(
    G: GroupTable,
    A: Subset,
    S: Subset,
    *,
    subset_cap: int = DEFAULT_SUBSET_SEARCH_CAP,
) -> PetridisResult:
    """Exact minimizer of |X*S|/|X| over nonempty X inside A.

    Ties break toward larger |X|, then bit-lexicographically smallest, so the
    result is reproducible; any minimizer satisfies the theorem.
    """
    _require_nonempty(A, S)
    _check_member(G, A, "A")
    _check_member(G, S, "S")
    elems = A.elements()
    k = len(elems)
    if k > subset_cap:
        raise SizeLimitExceeded(f"|A| = {k} exceeds the subset-search cap {subset_cap}")
    mul = G.mul
    s_elems = list(S)
    rows = []
    for a in elems:
        row = mul[a]
        m = 0
        for s in s_elems:
            m |= 1 << row[s]
        rows.append(m)

    def global_elements(local_mask: int) -> tuple[int, ...]:
        return tuple(elems[i] for i in range(k) if (local_mask >> i) & 1)

    prods = [0] * (1 << k)
    best_size = best_card = 0
    best_local = 0
    for m in range(1, 1 << k):
        low = m & -m
        pm = prods[m ^ low] | rows[low.bit_length() - 1]
        prods[m] = pm
        size = pm.bit_count()
        card = m.bit_count()
        if best_local == 0 or size * best_card < best_size * card:
            best_size, best_card, best_local = size, card, m
        elif size * best_card == best_size * card:
            if card > best_card or (
                card == best_card and global_elements(m) < global_elements(best_local)
            ):
                best_size, best_card, best_local = size, card, m
    X = Subset.from_elements(G.order, global_elements(best_local))
    return PetridisResult(A=A, S=S, X=X, K=Fraction(best_size, best_card))


def petridis_verify(
    G: GroupTable,
    result: PetridisResult,
    mode: str = "exhaustive",
    *,
    budget: int = 1 << 20,
    seed: Optional[int] = None,
) -> PetridisVerification:
    """Check |C*X*S| <= K |C*X| over all nonempty C (exhaustive) or over
    `budget` seeded-random C (sampled).  Any violation is fatal counterevidence."""
    X, S, K = result.X, result.S, result.K
    p, q = K.numerator, K.denominator
    XS = product_set(G, X, S)
    n = G.order

    id_mask = 1 << G.identity
    eq_identity = (
        q * product_mask(G, id_mask, XS.mask).bit_count()
        == p * product_mask(G, id_mask, X.mask).bit_count()
    )

    violations: list[Subset] = []
    if mode == "exhaustive":
        if (1 << n) - 1 > budget:
            raise SizeLimitExceeded(
                f"exhaustive verification needs 2^{n} - 1 <= budget, got budget {budget}"
            )
        size_cxs = product_size_table(G, XS)
        size_cx = product_size_table(G, X)
        bad = np.nonzero(q * size_cxs[1:] > p * size_cx[1:])[0]
        for idx in bad[:16]:
            violations.append(Subset(n, int(idx) + 1))
        checked = (1 << n) - 1
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled verification requires a seed")
        rng = random.Random(seed)
        for _ in range(budget):
            cmask = rng.randrange(1, 1 << n)
            lhs = product_mask(G, cmask, XS.mask).bit_count()
            rhs = product_mask(G, cmask, X.mask).bit_count()
            if q * lhs > p * rhs and len(violations) < 16:
                violations.append(Subset(n, cmask))
        checked = budget
    else:
        raise ValueError(f"unknown verification mode {mode!r}")

    return PetridisVerification(
        mode=mode,
        checked=checked,
        equality_at_identity=eq_identity,
        violations=tuple(violations),
        ok=not violations and eq_identity,
    )


# --- search for Kneser failures ------------------------------------------------


@dataclass(frozen=True)
class SearchReport:
    strategy: str
    seed: Optional[int]
    budget: Optional[int]
    pairs_checked: int
    exhausted: bool
    findings: tuple[KneserReport, ...]


def _stabilizer_size(G: GroupTable, tmask: int, memo: dict[int, int]) -> int:
    cached = memo.get(tmask)
    if cached is not None:
        return cached
    count = 0
    for h in range(G.order):
        if right_translate_mask(G, tmask, h) == tmask:
            count += 1
    memo[tmask] = count
    return count


def kneser_violation_scan(
    G: GroupTable,
    strategy: str = "exhaustive",
    *,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
) -> SearchReport:
    """Scan pairs (A, B) for |A*B| < |A| + |B| - |stab(A*B)|.

    Exhaustive strategy walks all nonempty pairs in mask order (optionally
    budget-limited); random strategy draws `budget` seeded pairs.  Every hit
    is re-verified from scratch before it is reported.
    """
    n = G.order
    size = 1 << n
    total_pairs = (size - 1) ** 2
    found: list[tuple[int, int]] = []
    pairs_checked = 0

    if strategy == "exhaustive":
        cards = popcount_table(n)
        memo: dict[int, int] = {}
        for amask in range(1, size):
            if budget is not None and pairs_checked >= budget:
                break
            limit = size - 1
            if budget is not None:
                limit = min(limit, budget - pairs_checked)
            rows = [right_translate_mask(G, amask, g) for g in range(n)]
            prod = mask_table_from_rows(rows)[1 : limit + 1]
            lhs = np.bitwise_count(prod).astype(np.int64)
            uniq, inverse = np.unique(prod, return_inverse=True)
            stab = np.array(
                [_stabilizer_size(G, int(t), memo) for t in uniq], dtype=np.int64
            )
            rhs = int(cards[amask]) + cards[1 : limit + 1] - stab[inverse]
            for idx in np.nonzero(lhs < rhs)[0]:
                found.append((amask, int(idx) + 1))
            pairs_checked += limit
        exhausted = pairs_checked >= total_pairs
    elif strategy == "random":
        if seed is None:
            raise ValueError("random strategy requires a seed")
        if budget is None:
            raise ValueError("random strategy requires a budget")
        rng = random.Random(seed)
        for _ in range(budget):
            amask = rng.randrange(1, size)
            bmask = rng.randrange(1, size)
            report = _kneser_report(G, Subset(n, amask), Subset(n, bmask))
            if not report.holds:
                found.append((amask, bmask))
            pairs_checked += 1
        exhausted = False  # sampling never certifies full coverage
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    reports = []
    for amask, bmask in found:
        # Independent re-verification through the plain (non-tabulated) path.
        report = _kneser_report(G, Subset(n, amask), Subset(n, bmask))
        if report.holds:
            raise AssertionError(
                f"scan flagged ({amask:#x}, {bmask:#x}) but recomputation passes"
            )
        reports.append(report)
    reports.sort(
        key=lambda r: (r.A.cardinality, r.B.cardinality, r.A.sort_key(), r.B.sort_key())
    )
    # Deduplicate (random sampling may repeat pairs).
    unique_reports = []
    seen: set[tuple[int, int]] = set()
    for r in reports:
        key = (r.A.mask, r.B.mask)
        if key not in seen:
            seen.add(key)
            unique_reports.append(r)
    return SearchReport(
        strategy=strategy,
        seed=seed,
        budget=budget,
        pairs_checked=pairs_checked,
        exhausted=exhausted,
        findings=tuple(unique_reports),
    )


def kneser_failure_search(
    G: GroupTable,
    strategy: str = "exhaustive",
    *,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
) -> SearchReport:
    """Search a nonabelian group for failures of Kneser's inequality.

    An empty finding list is a valid outcome: absence at this scale proves
    nothing either way.
    """
    if G.is_abelian:
        raise NotAbelian(
            f"{G.name} is abelian, where the inequality is a theorem; "
            "the failure search only accepts nonabelian groups"
        )
    return kneser_violation_scan(G, strategy, seed=seed, budget=budget)
