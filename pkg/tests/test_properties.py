"""Structural properties over every small module.

For each divisor chain with |K| <= 2^12 the subgroup lattice is checked
exhaustively when it has at most a few thousand members, and on a seeded
random sample of generated subgroups otherwise.
"""

import random

import pytest

from isocount import closed_forms as cf
from isocount.enumeration import census_by_type
from isocount.labels import TypeLabel, admissible_labels
from isocount.symplectic import (
    is_isotropic,
    is_maximal_isotropic,
    make_module,
    orthogonal_complement,
)

from helpers import all_subgroups, divisor_chains, random_subgroup

CHAINS = divisor_chains(64)
SAMPLES = 40


def check_subgroup(m, H):
    P = orthogonal_complement(H)
    assert H.order * P.order == m.order
    assert orthogonal_complement(P) == H
    assert is_maximal_isotropic(H) == (P == H)
    assert is_isotropic(H) == H.issubset(P)
    assert m.subgroup(H.generators) == H


@pytest.mark.parametrize("t", CHAINS, ids=lambda t: ",".join(map(str, t)))
def test_complement_properties(t):
    m = make_module(t)
    subs = all_subgroups(t)
    if subs is None:
        rng = random.Random(hash(t) & 0xFFFF)
        subs = [random_subgroup(m, rng, 4) for _ in range(SAMPLES)]
    for H in subs:
        check_subgroup(m, H)


def census_pairs(bound_log2=20):
    out = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        n = 1
        while p ** (4 * n) <= 2 ** bound_log2:
            out.append((p, n))
            n += 1
    return out


@pytest.mark.parametrize("p,n", census_pairs())
def test_reduction_identities(p, n):
    census = census_by_type(p, n)
    for label in admissible_labels(p, n):
        if label.kind == 4:
            small = TypeLabel(2, k=label.k - label.l, p=p, n=n - 2 * label.l)
        elif label.kind == 5:
            small = TypeLabel(3, p=p, n=n - 2 * label.l)
        elif label.kind == 6:
            small = TypeLabel(1, p=p, n=n - 2 * label.k)
        else:
            continue
        assert census[label] == census_by_type(p, small.n)[small]
        assert cf.nu_pp_by_type(p, n, label) == cf.nu_pp_by_type(p, small.n, small)
    assert census[TypeLabel(1, p=p, n=n)] == p ** (3 * (n - 1)) * cf.nu_elementary(p, 2)
