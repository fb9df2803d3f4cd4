from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heptax.bands import (
    BAND_NAMES,
    CyclicHeptaBands,
    HeptaBands,
    matvec,
    partition,
    to_dense,
    validate,
)
from heptax.errors import BadBandLength, ModeMismatch, OrderTooSmall, UnsupportedCornerEntry
from heptax.oracle import GenSpec, dense_matvec, generate
from heptax.scalar import Mode

from conftest import WORKED_MATRIX, frac_mat, frac_vec


def hepta_ones(m, **lengths):
    sizes = {"d": m, "a": m - 1, "A": m - 2, "C": m - 3, "b": m - 1, "B": m - 2, "D": m - 3}
    sizes.update(lengths)
    return {name: [Fraction(1)] * sizes[name] for name in BAND_NAMES}


def test_minimum_hepta_order_is_valid():
    h = HeptaBands(**hepta_ones(4))
    validate(h)
    assert h.m == 4


def test_cyclic_order_seven_rejected():
    with pytest.raises(OrderTooSmall):
        CyclicHeptaBands(**{name: [Fraction(0)] * 7 for name in BAND_NAMES})


def test_short_band_rejected():
    with pytest.raises(BadBandLength):
        HeptaBands(**hepta_ones(6, d=5))
    with pytest.raises(BadBandLength):
        CyclicHeptaBands(**{name: [Fraction(0)] * (9 if name == "a" else 10) for name in BAND_NAMES})


def test_mixed_modes_rejected():
    bands = hepta_ones(5)
    bands["a"][2] = 1.0
    with pytest.raises(ModeMismatch):
        HeptaBands(**bands)


@pytest.mark.parametrize("name, k", [("D", 0), ("D", 2), ("C", 7), ("C", 9)])
def test_nonzero_corner_slot_rejected(name, k):
    bands = {b: [Fraction(0)] * 10 for b in BAND_NAMES}
    bands["d"] = [Fraction(1)] * 10
    bands[name][k] = Fraction(5)
    with pytest.raises(UnsupportedCornerEntry):
        CyclicHeptaBands(**bands)


def test_identity_densifies_to_identity():
    for bands in (HeptaBands.identity(6, Mode.RATIONAL), CyclicHeptaBands.identity(9, Mode.RATIONAL)):
        dense = to_dense(bands)
        n = len(dense)
        assert dense == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def test_worked_bands_densify_to_matrix(worked_system):
    h, _ = worked_system
    assert to_dense(h) == frac_mat(WORKED_MATRIX)


def _sentinel_bands(n):
    # band index * 100 + 1-based row, zero in the corner slots
    out = {}
    for b, name in enumerate(BAND_NAMES):
        out[name] = [Fraction(100 * (b + 1) + i + 1) for i in range(n)]
    for name, k in (("D", 0), ("D", 1), ("D", 2), ("C", n - 3), ("C", n - 2), ("C", n - 1)):
        out[name][k] = Fraction(0)
    return CyclicHeptaBands(**out)


def test_sentinels_land_on_wrapped_coordinates():
    n = 8
    dense = to_dense(_sentinel_bands(n))
    code = {name: 100 * (b + 1) for b, name in enumerate(BAND_NAMES)}
    # hand-placed wrap positions, 1-based (row, col)
    expected = {
        (1, 7): code["B"] + 1,
        (1, 8): code["b"] + 1,
        (2, 8): code["B"] + 2,
        (7, 1): code["A"] + 7,
        (8, 1): code["a"] + 8,
        (8, 2): code["A"] + 8,
        (5, 8): code["C"] + 5,
        (8, 5): code["D"] + 8,
        (4, 1): code["D"] + 4,
        (1, 4): code["C"] + 1,
    }
    for (i, j), v in expected.items():
        assert dense[i - 1][j - 1] == v
    # every stored entry sits on the diagonal its band code names
    offsets = {"d": 0, "a": 1, "A": 2, "C": 3, "b": -1, "B": -2, "D": -3}
    for i in range(n):
        for j in range(n):
            v = dense[i][j]
            if v == 0:
                continue
            name = BAND_NAMES[int(v) // 100 - 1]
            assert int(v) % 100 == i + 1
            assert (i + offsets[name]) % n == j


def test_hepta_dense_is_zero_outside_bandwidth():
    h, _ = generate(GenSpec(n=15, seed=3, kind="hepta", profile="uniform"))
    dense = to_dense(h)
    for i in range(15):
        for j in range(15):
            if abs(i - j) > 3:
                assert dense[i][j] == 0


def test_from_dense_round_trip():
    h, _ = generate(GenSpec(n=11, seed=4, kind="hepta"))
    assert HeptaBands.from_dense(to_dense(h)) == h


def test_partition_blocks_of_worked_example(worked_system):
    h, r = worked_system
    part = partition(h, r)
    z = Fraction(0)
    assert part.M2 == ((4, -1), (4, 1))
    assert part.Ut[0].dense(z) == frac_vec([3, 0, 0, 0, 0, 3, 1, 3])
    assert part.Ut[1].dense(z) == frac_vec([2, 4, 0, 0, 0, 0, 2, 3])
    assert part.V[0].dense(z) == frac_vec([2, 0, 0, 0, 0, 1, 1, 3])
    assert part.V[1].dense(z) == frac_vec([-1, 1, 0, 0, 0, 0, -3, 5])
    assert list(part.Rprime) == frac_vec([2, 15, 33, 0, 43, -24, 47, 70])
    assert list(part.Rdoubleprime) == frac_vec([78, 94])
    assert to_dense(part.M1) == [row[:8] for row in frac_mat(WORKED_MATRIX)[:8]]


def test_partition_sparsity_pattern():
    n = 11
    part = partition(_sentinel_bands(n), [Fraction(0)] * n)
    m = n - 2
    assert [i for i, _ in part.V[0].entries] == [0, m - 3, m - 2, m - 1]
    assert [i for i, _ in part.V[1].entries] == [0, 1, m - 2, m - 1]
    assert [i for i, _ in part.Ut[0].entries] == [0, m - 3, m - 2, m - 1]
    assert [i for i, _ in part.Ut[1].entries] == [0, 1, m - 2, m - 1]


def test_partition_rejects_wrong_rhs_length(worked_system):
    h, r = worked_system
    with pytest.raises(BadBandLength):
        partition(h, r[:-1])


@settings(max_examples=25, deadline=None)
@given(st.integers(8, 64), st.integers(0, 2**32))
def test_partition_reassembles_to_dense(n, seed):
    h, r = generate(GenSpec(n=n, seed=seed, profile="diagonally-dominant"))
    part = partition(h, r)
    assert isinstance(part.M1, HeptaBands) and part.M1.m == n - 2
    assert part.to_dense() == to_dense(h)
    assert list(part.Rprime) + list(part.Rdoubleprime) == list(r)


@settings(max_examples=20, deadline=None)
@given(st.integers(8, 30), st.sampled_from(["hepta", "cyclic"]), st.integers(0, 2**32))
def test_matvec_matches_dense_product(n, kind, seed):
    h, r = generate(GenSpec(n=n, seed=seed, kind=kind))
    assert matvec(h, r) == dense_matvec(to_dense(h), r)
