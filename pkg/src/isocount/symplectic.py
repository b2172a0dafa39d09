"""Finite symplectic modules K(d_1, ..., d_g) and their subgroups.

An element of ``K = (Z/d_1 x ... x Z/d_g)^2`` is a tuple of ``2g`` integers,
coordinate ``i`` reduced modulo ``modulus_vector[i]``.  The alternating form is
kept additively: a pairing value is an integer numerator over ``D = d_g``.

A subgroup ``H`` is stored through its preimage lattice ``L`` in ``Z^{2g}``
(``Lambda <= L <= Z^{2g}`` with ``Lambda`` the diagonal lattice of the moduli),
in canonical Hermite form, so equal subgroups have identical bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Iterator, Sequence

from . import lattice
from .lattice import Basis

ModuleVector = tuple[int, ...]


class IllPosedInput(ValueError):
    """Mathematically invalid input (bad divisor chain, non-isotropic W, ...)."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs are desk-scale)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


@dataclass(frozen=True)
class PolarizationType:
    """A divisor chain ``d_1 | d_2 | ... | d_g``."""

    divisors: tuple[int, ...]

    def __post_init__(self) -> None:
        divs = tuple(int(d) for d in self.divisors)
        object.__setattr__(self, "divisors", divs)
        if not divs:
            raise IllPosedInput("a polarization type needs at least one entry")
        for i, d in enumerate(divs):
            if d < 1:
                raise IllPosedInput(f"d_{i + 1} = {d} is not a positive integer")
        for i in range(len(divs) - 1):
            if divs[i + 1] % divs[i]:
                raise IllPosedInput(
                    f"not a divisor chain: d_{i + 1} = {divs[i]} does not divide "
                    f"d_{i + 2} = {divs[i + 1]}"
                )

    @classmethod
    def of(cls, *divisors: int) -> "PolarizationType":
        return cls(tuple(divisors))

    @classmethod
    def parse(cls, text: str) -> "PolarizationType":
        """Parse ``"1,2,4"``."""
        try:
            divs = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError as exc:
            raise IllPosedInput(f"cannot parse type {text!r}") from exc
        return cls(divs)

    @property
    def g(self) -> int:
        return len(self.divisors)

    @property
    def degree(self) -> int:
        return prod(self.divisors)

    def stripped(self) -> "PolarizationType":
        """Drop leading 1's (K(1, m, n) and K(m, n) have the same counts)."""
        divs = tuple(d for d in self.divisors if d != 1) or (1,)
        return PolarizationType(divs)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.divisors)) + ")"


@dataclass(frozen=True)
class PairingValue:
    """The value ``numerator / denominator`` in Q/Z."""

    numerator: int
    denominator: int

    def __bool__(self) -> bool:
        return self.numerator != 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def order(self) -> int:
        """Order of the value in Q/Z."""
        return self.denominator // gcd(self.numerator, self.denominator)


@dataclass(frozen=True)
class SymplecticModule:
    ptype: PolarizationType

    @property
    def g(self) -> int:
        return self.ptype.g

    @property
    def rank(self) -> int:
        return 2 * self.ptype.g

    @cached_property
    def modulus_vector(self) -> tuple[int, ...]:
        return self.ptype.divisors * 2

    @property
    def pairing_denominator(self) -> int:
        return self.ptype.divisors[-1]

    @property
    def order(self) -> int:
        return self.ptype.degree ** 2

    @cached_property
    def pairing_weights(self) -> tuple[int, ...]:
        """``D / d_i`` for each of the first ``g`` coordinates."""
        D = self.pairing_denominator
        return tuple(D // d for d in self.ptype.divisors)

    def vector(self, coords: Sequence[int]) -> ModuleVector:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(c % m for c, m in zip(coords, self.modulus_vector))

    def unit(self, i: int) -> ModuleVector:
        """Standard generator ``f_{i+1}`` (0-based index)."""
        return self.vector([int(k == i) for k in range(self.rank)])

    def add(self, x: Sequence[int], y: Sequence[int]) -> ModuleVector:
        return self.vector([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> ModuleVector:
        return self.vector([k * a for a in x])

    def elements(self) -> Iterator[ModuleVector]:
        return itertools.product(*(range(m) for m in self.modulus_vector))

    def element_order(self, x: Sequence[int]) -> int:
        out = 1
        for c, m in zip(x, self.modulus_vector):
            o = m // gcd(c, m)
            out = out * o // gcd(out, o)
        return out

    def pairing_numerator(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.g
        s = 0
        for i, w in enumerate(self.pairing_weights):
            s += w * (x[i] * y[g + i] - x[g + i] * y[i])
        return s % self.pairing_denominator

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> PairingValue:
        return PairingValue(self.pairing_numerator(x, y), self.pairing_denominator)

    # subgroups -----------------------------------------------------------

    def subgroup(self, gens: Sequence[Sequence[int]] = ()) -> "Subgroup":
        return subgroup_from_generators(self, gens)

    def trivial(self) -> "Subgroup":
        return self.subgroup()

    def whole(self) -> "Subgroup":
        return self.subgroup([self.unit(i) for i in range(self.rank)])

    def __str__(self) -> str:
        return f"K{self.ptype}"


def make_module(ptype: PolarizationType | Sequence[int]) -> SymplecticModule:
    if not isinstance(ptype, PolarizationType):
        ptype = PolarizationType(tuple(ptype))
    return SymplecticModule(ptype)


def pairing(m: SymplecticModule, x: Sequence[int], y: Sequence[int]) -> PairingValue:
    return m.pairing(x, y)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``module`` given by a canonical Hermite basis of its preimage lattice."""

    module: SymplecticModule
    basis: Basis
    order: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        det = lattice.determinant(self.basis)
        total = prod(self.module.modulus_vector)
        if total % det:
            raise ValueError("basis does not contain the diagonal lattice")
        object.__setattr__(self, "order", total // det)

    @property
    def generators(self) -> list[ModuleVector]:
        """The basis rows as module elements (zero rows dropped)."""
        out = []
        for row in self.basis:
            v = self.module.vector(row)
            if any(v):
                out.append(v)
        return out

    def __contains__(self, x: Sequence[int]) -> bool:
        return lattice.contains(self.basis, x)

    def issubset(self, other: "Subgroup") -> bool:
        return all(lattice.contains(other.basis, row) for row in self.basis)

    def elements(self) -> Iterator[ModuleVector]:
        """All elements, as canonical module vectors (lexicographic order)."""
        return (x for x in self.module.elements() if x in self)

    def __str__(self) -> str:
        rows = "; ".join(" ".join(map(str, r)) for r in self.basis)
        return f"<{rows}> in {self.module}"


def subgroup_from_generators(m: SymplecticModule, gens: Sequence[Sequence[int]]) -> Subgroup:
    basis = lattice.hermite_form(gens, m.modulus_vector)
    return Subgroup(m, basis)


def is_isotropic(H: Subgroup) -> bool:
    """Pairing vanishes on every pair of basis rows; enough by bilinearity."""
    m = H.module
    rows = H.basis
    return all(
        m.pairing_numerator(rows[i], rows[j]) == 0
        for i in range(len(rows))
        for j in range(i + 1, len(rows))
    )


def is_maximal_isotropic(H: Subgroup) -> bool:
    return H.order == H.module.ptype.degree and is_isotropic(H)


def orthogonal_complement(H: Subgroup) -> Subgroup:
    """``H^perp`` as a solution lattice of the congruences ``e(x, h) = 0``.

    With ``Omega`` the rational matrix of the form and ``B`` the basis of H,
    ``x`` is orthogonal to ``H`` iff ``B Omega x`` is integral, so the
    complement's lattice is spanned by the columns of ``(B Omega)^{-1}``.
    """
    m = H.module
    g, n = m.g, m.rank
    omega = [[Fraction(0)] * n for _ in range(n)]
    for i, d in enumerate(m.ptype.divisors):
        omega[i][g + i] = Fraction(1, d)
        omega[g + i][i] = Fraction(-1, d)
    b_omega = [
        [sum((Fraction(row[k]) * omega[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for row in H.basis
    ]
    inv = lattice.rational_inverse(b_omega)
    rows = []
    for j in range(n):
        col = [inv[i][j] for i in range(n)]
        if any(c.denominator != 1 for c in col):
            raise AssertionError("orthogonal complement lattice is not integral")
        rows.append([int(c) for c in col])
    return Subgroup(m, lattice.hermite_form(rows, m.modulus_vector))


def abelian_invariants(H: Subgroup) -> tuple[int, ...]:
    """Invariant factors of ``H``, ascending divisor chain, 1's dropped."""
    m = H.module
    relations = []
    for i, mod in enumerate(m.modulus_vector):
        e = [0] * m.rank
        e[i] = mod
        relations.append(lattice.coefficients(H.basis, e))
    diag = lattice.smith_diagonal(relations)
    return tuple(sorted(d for d in diag if d != 1))


# primary decomposition -----------------------------------------------------


@dataclass(frozen=True)
class PrimaryComponent:
    """The p-primary part ``K(p^{a_1}, ..., p^{a_g})`` with a symplectic embedding.

    ``embed`` is injective and preserves the pairing; ``project`` is its
    left inverse and kills every other primary part.
    """

    prime: int
    module: SymplecticModule
    ambient: SymplecticModule
    embed_factors: tuple[int, ...]
    project_factors: tuple[int, ...]

    def embed(self, x: Sequence[int]) -> ModuleVector:
        return self.ambient.vector([c * f for c, f in zip(x, self.embed_factors)])

    def project(self, x: Sequence[int]) -> ModuleVector:
        return self.module.vector([c * f for c, f in zip(x, self.project_factors)])

    def part(self, H: Subgroup) -> Subgroup:
        """Image of ``H`` in this component."""
        return self.module.subgroup([self.project(r) for r in H.basis])

    def lift(self, H: Subgroup) -> Subgroup:
        """Image of a component subgroup inside the ambient module."""
        return self.ambient.subgroup([self.embed(r) for r in H.basis])


def primary_decompose(m: SymplecticModule) -> list[PrimaryComponent]:
    out = []
    divs = m.ptype.divisors
    for p in sorted(factorize(divs[-1])):
        powers = tuple(p ** valuation(d, p) for d in divs)
        comp = make_module(powers)
        cofactors = [d // q for d, q in zip(divs, powers)]
        # first half: scale by cofactor * (cofactor^-1 mod q), which is 1 mod q
        first = [c * pow(c, -1, q) if q > 1 else c for c, q in zip(cofactors, powers)]
        embed = tuple(first + cofactors)
        project = tuple([1] * m.g + [pow(c, -1, q) if q > 1 else 0 for c, q in zip(cofactors, powers)])
        out.append(PrimaryComponent(p, comp, m, embed, project))
    return out


# quotients W^perp / W ------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """``W^perp / W`` presented as a standard module via a symplectic basis.

    ``lifts[k]`` is a representative in ``W^perp`` of the k-th standard
    generator of ``module``.
    """

    W: Subgroup
    complement: Subgroup
    module: SymplecticModule
    lifts: tuple[ModuleVector, ...]

    def image(self, x: Sequence[int]) -> ModuleVector:
        """Coordinates in ``module`` of the class of ``x`` (``x`` in ``W^perp``)."""
        amb = self.W.module
        q = self.module
        g = q.g
        coords = [0] * q.rank
        for k, d in enumerate(q.ptype.divisors):
            xk, yk = self.lifts[k], self.lifts[g + k]
            D = amb.pairing_denominator
            # x = sum a_k x_k + b_k y_k  =>  e(x, y_k) = a_k/d_k, e(x_k, x) = b_k/d_k
            coords[k] = amb.pairing_numerator(x, yk) * d // D
            coords[g + k] = amb.pairing_numerator(xk, x) * d // D
        return q.vector(coords)

    def push(self, H: Subgroup) -> Subgroup:
        """Subgroup of ``module`` corresponding to ``W <= H <= W^perp``."""
        if not (self.W.issubset(H) and H.issubset(self.complement)):
            raise IllPosedInput("subgroup does not lie between W and W^perp")
        return self.module.subgroup([self.image(r) for r in H.basis])

    def pull(self, Q: Subgroup) -> Subgroup:
        """Preimage in the ambient module of a subgroup of ``module``."""
        amb = self.W.module
        gens = list(self.W.basis)
        for row in Q.basis:
            v = [0] * amb.rank
            for c, lift in zip(row, self.lifts):
                v = [a + c * b for a, b in zip(v, lift)]
            gens.append(v)
        return amb.subgroup(gens)


def quotient_with_form(W: Subgroup) -> Quotient:
    """Symplectic presentation of ``W^perp / W`` for isotropic ``W``.

    Greedy hyperbolic splitting: take the lexicographically first element of
    maximal order, pair it with the first element whose pairing with it has
    that same order, normalize the pairing to ``1/e``, split off the span and
    repeat inside the orthogonal remainder.
    """
    if not is_isotropic(W):
        raise IllPosedInput("W must be isotropic")
    amb = W.module
    perp = orthogonal_complement(W)
    D = amb.pairing_denominator
    if W.order == 1:
        # the standard basis is already symplectic; keep the identity map
        units = tuple(amb.unit(i) for i in range(amb.rank))
        return Quotient(W, perp, amb, units)

    def rep(x):
        return amb.vector(lattice.reduce_mod(W.basis, x))

    def coset_order(x):
        k, y = 1, x
        while any(rep(y)):
            k += 1
            y = amb.add(y, x)
        return k

    remaining = sorted({rep(x) for x in perp.elements()})
    pairs: list[tuple[ModuleVector, ModuleVector, int]] = []
    while len(remaining) > 1:
        orders = {x: coset_order(x) for x in remaining}
        e = max(orders.values())
        x = next(v for v in remaining if orders[v] == e)
        y = None
        for v in remaining:
            val = amb.pairing(x, v)
            if val.order() == e:
                y = v
                break
        if y is None:
            raise AssertionError("induced form is degenerate")
        # scale y so that e(x, y) = 1/e exactly
        num = amb.pairing_numerator(x, y) * e // D
        y = rep(amb.scale(pow(num, -1, e), y))
        pairs.append((x, y, e))
        remaining = [
            v for v in remaining
            if amb.pairing_numerator(v, x) == 0 and amb.pairing_numerator(v, y) == 0
        ]
    g = amb.g
    pairs.sort(key=lambda t: t[2])  # ascending orders; greedy gave descending
    pad = g - len(pairs)
    if pad < 0:
        raise AssertionError("quotient rank exceeds ambient rank")
    divisors = (1,) * pad + tuple(e for _, _, e in pairs)
    zero = (0,) * amb.rank
    xs = (zero,) * pad + tuple(x for x, _, _ in pairs)
    ys = (zero,) * pad + tuple(y for _, y, _ in pairs)
    return Quotient(W, perp, make_module(divisors), xs + ys)
