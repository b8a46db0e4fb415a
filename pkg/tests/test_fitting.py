import random
from fractions import Fraction
from itertools import combinations

import pytest

from ribbonlab.exact import RatMatrix
from ribbonlab.fitting import (
    LinFormMatrix,
    minor_for_monomial,
    phi2_symbolic,
    phid_symbolic_blocks,
    symbolic_minor,
    verify_power_ideal,
)


def test_phi2_shapes_and_columns():
    m2 = phi2_symbolic(2)
    assert (m2.nrows, m2.ncols) == (2, 3)
    assert m2.col_labels == ((0, 0), (0, 1), (1, 1))
    # z_0^2 column is z_0 e_0; z_0 z_1 column is z_1 e_0 + z_0 e_1
    assert m2.entries[0][0] == (1, 0) and m2.entries[1][0] == (0, 0)
    assert m2.entries[0][1] == (0, 1) and m2.entries[1][1] == (1, 0)
    assert m2.entries[0][2] == (0, 0) and m2.entries[1][2] == (0, 1)

    m1 = phi2_symbolic(1)
    assert (m1.nrows, m1.ncols) == (1, 1)
    assert m1.entries[0][0] == (1,)

    assert (phi2_symbolic(3).nrows, phi2_symbolic(3).ncols) == (3, 6)


def test_block_matrix_layout():
    b = phid_symbolic_blocks(2, 2)
    assert (b.nrows, b.ncols) == (2, 4)
    assert b.col_labels == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert b.entries[0][0] == (1, 0) and b.entries[1][1] == (1, 0)
    assert b.entries[0][2] == (0, 1) and b.entries[1][3] == (0, 1)
    row = phid_symbolic_blocks(3, 1)
    assert row.nrows == 1 and row.ncols == 3


def test_minor_examples():
    m2 = phi2_symbolic(2)
    labels, det = minor_for_monomial(m2, (1, 1))
    assert labels == [(0, 0), (1, 1)]
    assert det == {(1, 1): Fraction(1)}

    labels, det = minor_for_monomial(m2, (2, 0))
    assert labels == [(0, 0), (0, 1)]
    assert set(det) == {(2, 0)} and abs(det[(2, 0)]) == 1

    b = phid_symbolic_blocks(2, 2)
    labels, det = minor_for_monomial(b, (1, 1))
    assert labels == [(0, 0), (1, 1)]
    assert det == {(1, 1): Fraction(1)}


def test_minor_rejects_bad_degree():
    with pytest.raises(ValueError):
        minor_for_monomial(phi2_symbolic(3), (1, 1, 0))
    with pytest.raises(ValueError):
        minor_for_monomial(phi2_symbolic(2), (1, -1))


def test_all_maximal_minors_homogeneous():
    # the containment of the minor ideal in the r-th power needs exactly this
    mat = phi2_symbolic(3)
    for cols in combinations(range(mat.ncols), 3):
        det = symbolic_minor(mat, list(cols))
        for exps in det:
            assert sum(exps) == 3


def test_symbolic_minor_against_numeric_determinant():
    rng = random.Random(13)
    mat = phi2_symbolic(4)
    for _ in range(10):
        cols = sorted(rng.sample(range(mat.ncols), 4))
        det = symbolic_minor(mat, cols)
        z = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        numeric = RatMatrix(
            [[sum(c * z[var] for var, c in enumerate(mat.entries[row][col]))
              for col in cols] for row in range(4)]).det()
        via_poly = sum(
            (c * _eval_monomial(z, exps) for exps, c in det.items()),
            Fraction(0))
        assert numeric == via_poly


def _eval_monomial(z, exps):
    out = Fraction(1)
    for var, a in enumerate(exps):
        out *= z[var] ** a
    return out


def test_verify_power_ideal_small():
    for m in (1, 2, 3):
        report = verify_power_ideal(m, m, "phi2")
        assert report["all_realized"]
        assert report["monomials_checked"] == len(report["witnesses"])
        for w in report["witnesses"]:
            assert w["sign"] in (1, -1)
    report = verify_power_ideal(2, 3, "blocks")
    assert report["all_realized"]
    assert all(w["sign"] == 1 for w in report["witnesses"])


def test_verify_power_ideal_guards():
    with pytest.raises(ValueError):
        verify_power_ideal(3, 2, "phi2")
    with pytest.raises(ValueError):
        verify_power_ideal(2, 2, "nope")


def test_entries_must_be_linear():
    with pytest.raises(ValueError):
        LinFormMatrix(2, [[(1, 0, 0)]], "phi2", [(0, 0)])
