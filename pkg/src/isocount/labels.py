"""Isomorphism types of maximal isotropic subgroups of K(p^n, p^n).

Every such subgroup is isomorphic to
``Z/p^{n-l} x Z/p^{n-k} x Z/p^k x Z/p^l`` for some ``0 <= l <= k <= n/2``;
the seven kinds split this family by which of the inequalities are strict.

====  ===========================  ======================
kind  invariant exponents          restrictions
====  ===========================  ======================
1     (n, n)
2_k   (n, n-k, k)                  0 < k < n-k
3     (n, k, k)                    2k = n
4_kl  (n-l, n-k, k, l)             0 < l < k < n-k
5_l   (n-l, k, k, l)               2k = n, 0 < l < k
6_k   (n-k, n-k, k, k)             0 < k < n-k
7     (k, k, k, k)                 2k = n
====  ===========================  ======================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


class UnclassifiableSubgroup(ValueError):
    """Abelian invariants match no row of the type table."""


@dataclass(frozen=True)
class TypeLabel:
    kind: int
    k: Optional[int] = None
    l: Optional[int] = None
    p: int = 0
    n: int = 0

    def __post_init__(self) -> None:
        if not is_admissible(self):
            raise ValueError(f"inadmissible type label {self.name} for n={self.n}")

    @property
    def name(self) -> str:
        if self.kind in (2, 6):
            return f"{self.kind}_{self.k}"
        if self.kind == 4:
            return f"4_{self.k},{self.l}"
        if self.kind == 5:
            return f"5_{self.l}"
        return str(self.kind)

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        """Descending exponents of the invariants, padded with zeros to length 4."""
        n = self.n
        k, l = self.params()
        return (n - l, n - k, k, l)

    def params(self) -> tuple[int, int]:
        """The pair ``(k, l)`` placing this kind in the general family."""
        n = self.n
        if self.kind == 1:
            return 0, 0
        if self.kind == 2:
            return self.k, 0
        if self.kind == 3:
            return n // 2, 0
        if self.kind == 4:
            return self.k, self.l
        if self.kind == 5:
            return n // 2, self.l
        if self.kind == 6:
            return self.k, self.k
        return n // 2, n // 2

    def __str__(self) -> str:
        return self.name


def is_admissible(label: TypeLabel) -> bool:
    n, k, l = label.n, label.k, label.l
    if n < 1:
        return False
    kind = label.kind
    if kind == 1:
        return k is None and l is None
    if kind in (2, 6):
        return k is not None and l is None and 0 < k < n - k < n
    if kind in (3, 7):
        return k is None and l is None and n % 2 == 0
    if kind == 4:
        return k is not None and l is not None and 0 < l < k < n - k
    if kind == 5:
        return k is None and l is not None and n % 2 == 0 and 0 < l < n // 2
    return False


def admissible_labels(p: int, n: int) -> list[TypeLabel]:
    """All labels allowed for K(p^n, p^n), in table order."""
    out = [TypeLabel(1, p=p, n=n)]
    out += [TypeLabel(2, k=k, p=p, n=n) for k in range(1, n) if k < n - k]
    if n % 2 == 0:
        out.append(TypeLabel(3, p=p, n=n))
    out += [
        TypeLabel(4, k=k, l=l, p=p, n=n)
        for k in range(1, n) if k < n - k
        for l in range(1, k)
    ]
    if n % 2 == 0:
        out += [TypeLabel(5, l=l, p=p, n=n) for l in range(1, n // 2)]
    out += [TypeLabel(6, k=k, p=p, n=n) for k in range(1, n) if k < n - k]
    if n % 2 == 0:
        out.append(TypeLabel(7, p=p, n=n))
    return out


def classify(p: int, n: int, invariants: Sequence[int]) -> TypeLabel:
    """Map abelian invariants (powers of p) to their table row.

    Rows are tried most specific first (7, 3, 5, 6, 2, 4, 1); ties between
    e.g. 2_k and 3 are settled by the strict inequalities of the table.
    """
    exps = []
    for d in invariants:
        e = 0
        while d % p == 0 and d > 1:
            d //= p
            e += 1
        if d != 1:
            raise UnclassifiableSubgroup(f"invariant {invariants} is not a power of {p}")
        exps.append(e)
    exps = sorted(exps, reverse=True)
    if len(exps) > 4:
        raise UnclassifiableSubgroup(f"invariants {tuple(invariants)} have rank > 4")
    exps = tuple(exps + [0] * (4 - len(exps)))
    for label in sorted(admissible_labels(p, n), key=_specificity):
        if label.exponents == exps:
            return label
    raise UnclassifiableSubgroup(
        f"invariants {tuple(invariants)} of a subgroup of K({p}^{n},{p}^{n}) match no type"
    )


_ORDER = {7: 0, 3: 1, 5: 2, 6: 3, 2: 4, 4: 5, 1: 6}


def _specificity(label: TypeLabel):
    return (_ORDER[label.kind], label.k or 0, label.l or 0)
