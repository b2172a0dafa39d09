"""Shared fixtures: small modules and subgroup samplers."""

from __future__ import annotations

import random
from functools import lru_cache

from isocount.enumeration import BudgetExceeded, EnumerationBudget, iter_subgroups
from isocount.symplectic import make_module


def divisor_chains(max_degree: int, max_g: int = 7) -> list[tuple[int, ...]]:
    """Chains of entries > 1 with product <= max_degree, plus the same with a leading 1."""
    out: list[tuple[int, ...]] = []

    def rec(acc: tuple[int, ...], deg: int) -> None:
        if acc:
            out.append(acc)
        if len(acc) >= max_g:
            return
        last = acc[-1] if acc else 1
        k = max(last, 2)
        while deg * k <= max_degree:
            if k % last == 0:
                rec(acc + (k,), deg * k)
            k += 1

    rec((), 1)
    with_one = [(1,) + c for c in out if len(c) < max_g]
    return sorted(out + with_one, key=lambda c: (len(c), c))


@lru_cache(maxsize=None)
def all_subgroups(t: tuple[int, ...], limit: int = 5000):
    """Every subgroup of K(t), or None if there are more than ``limit`` candidates' worth."""
    try:
        subs = list(iter_subgroups(make_module(t), budget=EnumerationBudget(limit * 10, 3)))
    except BudgetExceeded:
        return None
    return subs if len(subs) <= limit else None


def random_subgroup(m, rng: random.Random, max_gens: int = 3):
    gens = [
        [rng.randrange(q) for q in m.modulus_vector]
        for _ in range(rng.randint(0, max_gens))
    ]
    return m.subgroup(gens)
