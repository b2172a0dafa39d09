import random

from hypothesis import given, settings, strategies as st

from isocount import lattice

moduli_st = st.lists(st.sampled_from([1, 2, 3, 4, 6, 8, 9, 12]), min_size=1, max_size=5)


@st.composite
def rows_and_moduli(draw):
    mods = draw(moduli_st)
    rows = draw(st.lists(st.lists(st.integers(-50, 50), min_size=len(mods), max_size=len(mods)), max_size=4))
    return rows, mods


def test_xgcd():
    for a, b in [(12, 18), (0, 5), (7, 0), (-4, 6), (17, 5)]:
        g, u, v = lattice.xgcd(a, b)
        assert g >= 0 and u * a + v * b == g


@settings(max_examples=200, deadline=None)
@given(rows_and_moduli())
def test_hermite_form_is_canonical(data):
    rows, mods = data
    B = lattice.hermite_form(rows, mods)
    # idempotent and upper triangular with reduced entries
    assert lattice.hermite_form(B, mods) == B
    for i, r in enumerate(B):
        assert all(c == 0 for c in r[:i]) and r[i] > 0
        for k in range(i):
            assert 0 <= B[k][i] < r[i]
        assert mods[i] % r[i] == 0
    # contains every generator and the diagonal lattice
    for r in rows:
        assert lattice.contains(B, r)
    for j, m in enumerate(mods):
        assert lattice.contains(B, [m * (k == j) for k in range(len(mods))])
    # a shuffled, rescaled presentation gives the same basis
    rng = random.Random(len(rows))
    other = [list(r) for r in rows] + [[c * 5 for c in r] for r in rows]
    rng.shuffle(other)
    assert lattice.hermite_form(other, mods) == B


def test_coefficients_round_trip():
    B = lattice.hermite_form([[1, 2, 3], [0, 2, 4]], [4, 4, 8])
    v = [3 * a + 2 * b for a, b in zip(B[0], B[1])]
    c = lattice.coefficients(B, v)
    assert [sum(ci * row[j] for ci, row in zip(c, B)) for j in range(3)] == v


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_diagonal_chain_and_determinant(a):
    d = lattice.smith_diagonal(a)
    for x, y in zip(d, d[1:]):
        assert y % x == 0
    det = round(abs(float(__import__("numpy").linalg.det(a))))
    if len(d) == 3:
        prod = d[0] * d[1] * d[2]
        assert prod == det
    else:
        assert det == 0
