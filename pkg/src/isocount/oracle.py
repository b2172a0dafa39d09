"""Naive brute force over explicit element sets.

Nothing here touches the lattice representation: subgroups are frozensets of
coordinate tuples, the pairing is a rational sum, and subgroups are built by
closure.  It is slow on purpose and only meant for small modules, as an
independent check of the enumeration engine.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Sequence

Element = tuple[int, ...]
ElementSet = frozenset


def elements(divisors: Sequence[int]) -> list[Element]:
    return list(itertools.product(*(range(d) for d in tuple(divisors) * 2)))


def pairing(divisors: Sequence[int], x: Sequence[int], y: Sequence[int]) -> Fraction:
    g = len(divisors)
    s = sum(Fraction(x[i] * y[g + i] - x[g + i] * y[i], d) for i, d in enumerate(divisors))
    return s - (s.numerator // s.denominator)


def span(divisors: Sequence[int], gens: Iterable[Sequence[int]]) -> ElementSet:
    mods = tuple(divisors) * 2
    gens = [tuple(x) for x in gens]
    zero = (0,) * len(mods)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for x in gens:
                t = tuple((a + b) % m for a, b, m in zip(s, x, mods))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(seen)


def _sumset(mods: tuple[int, ...], A: ElementSet, B: ElementSet) -> ElementSet:
    return frozenset(
        tuple((x + y) % m for x, y, m in zip(a, b, mods)) for a in A for b in B
    )


def all_subgroups(divisors: Sequence[int], order_divides: int | None = None) -> set[ElementSet]:
    """Every subgroup, optionally only those whose order divides ``order_divides``.

    Built by repeatedly joining with cyclic subgroups (the join of two
    subgroups is their sumset).
    """
    mods = tuple(divisors) * 2
    els = elements(divisors)
    cyclic = {span(divisors, [x]) for x in els}
    if order_divides is not None:
        cyclic = {C for C in cyclic if order_divides % len(C) == 0}
    found = {frozenset([(0,) * len(els[0])])} | cyclic
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                if order_divides is not None and order_divides % (len(H) * len(C) // len(H & C)):
                    continue
                J = _sumset(mods, H, C)
                if order_divides is not None and order_divides % len(J):
                    continue
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return found


def is_isotropic(divisors: Sequence[int], H: ElementSet) -> bool:
    """Pairing vanishes on every pair of elements (no generator shortcut)."""
    g = len(divisors)
    L = lcm(*divisors)
    w = [L // d for d in divisors]
    H = list(H)
    for x in H:
        for y in H:
            if sum(wi * (x[i] * y[g + i] - x[g + i] * y[i]) for i, wi in enumerate(w)) % L:
                return False
    return True


def maximal_isotropic(divisors: Sequence[int]) -> list[ElementSet]:
    """All isotropic subgroups of order d_1...d_g, by filtering all such subgroups."""
    d = prod(divisors)
    subs = all_subgroups(divisors, order_divides=d)
    return sorted(
        (H for H in subs if len(H) == d and is_isotropic(divisors, H)),
        key=lambda H: sorted(H),
    )


def perp(divisors: Sequence[int], H: Iterable[Sequence[int]]) -> ElementSet:
    H = list(H)
    return frozenset(
        x for x in elements(divisors) if all(pairing(divisors, x, h) == 0 for h in H)
    )


def radical(divisors: Sequence[int]) -> ElementSet:
    return perp(divisors, elements(divisors))


def invariants(divisors: Sequence[int], H: ElementSet) -> tuple[int, ...]:
    """Abelian invariants of ``H`` from its counts of elements killed by each k."""
    mods = tuple(divisors) * 2
    n = len(H)
    # |H[k]| for every k dividing |H| determines the group; peel off
    # invariants one prime at a time
    out: dict[int, list[int]] = {}
    m = n
    p = 2
    primes = []
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    for p in primes:
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        counts = []
        for k in range(e + 2):
            q = p ** k
            counts.append(sum(1 for x in H if all((q * c) % md == 0 for c, md in zip(x, mods))))
        # number of cyclic factors of order >= p^k is log_p(counts[k] / counts[k-1])
        ge = []
        for k in range(1, e + 2):
            r, t = counts[k] // counts[k - 1], 0
            while r > 1:
                r //= p
                t += 1
            ge.append(t)
        exps = []
        for k in range(1, e + 1):
            exps += [k] * (ge[k - 1] - ge[k])
        out[p] = exps
    # combine primary parts into a divisor chain
    rank = max((len(v) for v in out.values()), default=0)
    chain = [1] * rank
    for p, exps in out.items():
        exps = sorted(exps)
        for i, e in enumerate(exps):
            chain[rank - len(exps) + i] *= p ** e
    return tuple(c for c in chain if c != 1)
