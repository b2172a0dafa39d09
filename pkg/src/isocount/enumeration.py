"""Exhaustive enumeration of (maximal isotropic) subgroups.

Subgroups are produced as canonical Hermite bases of lattices
``Lambda <= L <= Z^n``.  The search fixes the diagonal first (one partition per
admissible diagonal tuple) and then fills rows bottom-up.  For row ``i`` with
pivot ``a_i`` the admissible tails ``t`` (column ``j > i`` in ``[0, a_j)``)
are exactly those with

* ``(m_i / a_i) * t`` in the lattice spanned by the rows below
  (this is ``m_i e_i in L``), and
* ``e(row_i, row_j) = 0`` for every row ``j > i`` (isotropic searches only).

Both tests run vectorized over the whole tail box with numpy.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Optional, Sequence

import numpy as np

from .labels import TypeLabel, classify
from .symplectic import (
    IllPosedInput,
    Subgroup,
    SymplecticModule,
    abelian_invariants,
    is_isotropic,
    make_module,
    primary_decompose,
    quotient_with_form,
)

_INT_LIMIT = 2 ** 62


@dataclass(frozen=True)
class EnumerationBudget:
    max_candidates: int = 10 ** 9
    max_seconds: float = 600.0

    def __post_init__(self) -> None:
        if self.max_candidates <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = EnumerationBudget()


@dataclass
class EnumerationStats:
    candidates: int = 0
    found: int = 0
    partitions_done: int = 0
    partitions_total: int = 0
    elapsed: float = 0.0


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, stats: EnumerationStats):
        super().__init__(
            f"{message} (candidates={stats.candidates}, found={stats.found}, "
            f"partitions {stats.partitions_done}/{stats.partitions_total}, "
            f"{stats.elapsed:.1f}s)"
        )
        self.stats = stats


@dataclass
class TypeCensus:
    p: int
    n: int
    counts: dict[TypeLabel, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def by_name(self) -> dict[str, int]:
        return {label.name: c for label, c in self.counts.items()}

    def __getitem__(self, label: TypeLabel) -> int:
        return self.counts.get(label, 0)


def diagonal_tuples(moduli: Sequence[int], det: Optional[int]) -> list[tuple[int, ...]]:
    """Tuples ``a`` with ``a_i | m_i`` and, if given, ``prod(a) == det``."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, acc: tuple[int, ...], left: Optional[int]) -> None:
        if i == len(moduli):
            if left is None or left == 1:
                out.append(acc)
            return
        for a in range(1, moduli[i] + 1):
            if moduli[i] % a:
                continue
            if left is not None and left % a:
                continue
            rec(i + 1, acc + (a,), None if left is None else left // a)

    rec(0, (), det)
    return out


def _check_width(m: SymplecticModule) -> None:
    top = max(m.modulus_vector)
    if m.rank * m.pairing_denominator * top * top >= _INT_LIMIT or top ** 3 >= _INT_LIMIT:
        raise OverflowError(f"{m} is far beyond the enumeration contract")


def _form_columns(rows: list[np.ndarray], g: int, weights: np.ndarray) -> np.ndarray:
    """Matrix whose column r turns a candidate c into the numerator of e(c, rows[r])."""
    cols = []
    for r in rows:
        w = np.empty(2 * g, dtype=np.int64)
        w[:g] = weights * r[g:]
        w[g:] = -weights * r[:g]
        cols.append(w)
    return np.stack(cols, axis=1)


def _search_partition(
    divisors: tuple[int, ...],
    diag: tuple[int, ...],
    isotropic: bool,
    deadline: float,
    max_candidates: int,
    count_only: bool,
) -> tuple[list[tuple[tuple[int, ...], ...]], int, int, bool]:
    """Enumerate all canonical bases with the given diagonal.

    Returns ``(bases, found, candidates, aborted)``; ``bases`` is empty when
    ``count_only``.
    """
    g = len(divisors)
    n = 2 * g
    moduli = divisors * 2
    D = divisors[-1]
    weights = np.array([D // d for d in divisors], dtype=np.int64)
    found: list[tuple[tuple[int, ...], ...]] = []
    n_found = 0
    candidates = 0
    aborted = False
    rows: list[np.ndarray] = [None] * n  # type: ignore[list-item]

    def rec(i: int) -> None:
        nonlocal candidates, n_found, aborted
        if aborted:
            return
        if i < 0:
            n_found += 1
            if not count_only:
                found.append(tuple(tuple(int(x) for x in r) for r in rows))
            return
        dims = diag[i + 1:]
        size = prod(dims)
        candidates += size
        if candidates > max_candidates or time.monotonic() > deadline:
            aborted = True
            return
        if dims:
            tails = np.indices(dims, dtype=np.int64).reshape(len(dims), -1).T
        else:
            tails = np.zeros((1, 0), dtype=np.int64)
        ok = np.ones(size, dtype=bool)
        # containment of m_i e_i
        w = tails * (moduli[i] // diag[i])
        for c in range(i + 1, n):
            col = c - i - 1
            q, r = np.divmod(w[:, col], diag[c])
            ok &= r == 0
            w = w - q[:, None] * rows[c][i + 1:]
            w[:, col + 1:] %= np.array(moduli[c + 1:], dtype=np.int64)
        if isotropic and i < n - 1:
            cand = np.zeros((size, n), dtype=np.int64)
            cand[:, i] = diag[i]
            cand[:, i + 1:] = tails
            form = _form_columns(rows[i + 1:], g, weights)
            ok &= ~((cand @ form) % D).any(axis=1)
        for idx in np.flatnonzero(ok):
            row = np.zeros(n, dtype=np.int64)
            row[i] = diag[i]
            row[i + 1:] = tails[idx]
            rows[i] = row
            rec(i - 1)
            if aborted:
                return

    rec(n - 1)
    return found, n_found, candidates, aborted


def _run_partitions(
    m: SymplecticModule,
    order: Optional[int],
    isotropic: bool,
    budget: EnumerationBudget,
    count_only: bool,
    jobs: int = 1,
) -> tuple[list[tuple[tuple[int, ...], ...]], int, EnumerationStats]:
    _check_width(m)
    start = time.monotonic()
    deadline = start + budget.max_seconds
    total = prod(m.modulus_vector)
    if order is not None and total % order:
        return [], 0, EnumerationStats()
    det = None if order is None else total // order
    parts = diagonal_tuples(m.modulus_vector, det)
    stats = EnumerationStats(partitions_total=len(parts))
    args = [
        (m.ptype.divisors, diag, isotropic, deadline, budget.max_candidates, count_only)
        for diag in parts
    ]
    bases: list[tuple[tuple[int, ...], ...]] = []
    found = 0
    if jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_partition, *zip(*args)))
    else:
        results = []
        for a in args:
            res = _search_partition(*a)
            results.append(res)
            if res[3]:
                break
    for part_bases, part_found, cands, aborted in results:
        stats.candidates += cands
        found += part_found
        bases.extend(part_bases)
        stats.found = found
        stats.elapsed = time.monotonic() - start
        if aborted or stats.candidates > budget.max_candidates:
            raise BudgetExceeded(f"enumeration of {m} exceeded its budget", stats)
        stats.partitions_done += 1
    stats.elapsed = time.monotonic() - start
    bases.sort()
    return bases, found, stats


def iter_subgroups(
    m: SymplecticModule,
    order: Optional[int] = None,
    isotropic: bool = False,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> Iterator[Subgroup]:
    """All subgroups (optionally of fixed order / isotropic), sorted by basis."""
    bases, _, _ = _run_partitions(m, order, isotropic, budget, count_only=False)
    for b in bases:
        yield Subgroup(m, b)


def enumerate_maximal_isotropic(
    m: SymplecticModule,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[Subgroup]:
    bases, _, _ = _run_partitions(m, m.ptype.degree, True, budget, count_only=False, jobs=jobs)
    return [Subgroup(m, b) for b in bases]


def count_by_enumeration(
    m: SymplecticModule,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    jobs: int = 1,
) -> int:
    """Number of maximal isotropic subgroups of ``m`` by direct enumeration."""
    _, found, _ = _run_partitions(m, m.ptype.degree, True, budget, count_only=True, jobs=jobs)
    return found


def count_maximal_isotropic(
    m: SymplecticModule,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    jobs: int = 1,
) -> int:
    """Product over primary components of their enumerated counts."""
    total = 1
    for comp in primary_decompose(m):
        total *= count_by_enumeration(comp.module, budget, jobs)
    return total


def census_by_type(
    p: int, n: int, budget: EnumerationBudget = DEFAULT_BUDGET, jobs: int = 1
) -> TypeCensus:
    if n < 1:
        raise IllPosedInput("census needs n >= 1")
    m = make_module((p ** n, p ** n))
    tally: Counter[TypeLabel] = Counter()
    for H in enumerate_maximal_isotropic(m, budget, jobs):
        tally[classify(p, n, abelian_invariants(H))] += 1
    return TypeCensus(p, n, dict(tally))


def count_containing(
    W: Subgroup, budget: EnumerationBudget = DEFAULT_BUDGET, jobs: int = 1
) -> int:
    """Maximal isotropic subgroups containing ``W``, counted in ``W^perp / W``."""
    if not is_isotropic(W):
        raise IllPosedInput("W must be isotropic")
    return count_maximal_isotropic(quotient_with_form(W).module, budget, jobs)
