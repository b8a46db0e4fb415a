from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from ribbonlab.poly import WPoly, quartic_lift, veronese_pullback
from ribbonlab.rnc import (
    IdealSlice,
    QuadForm,
    hankel_generators,
    ideal_slice,
    ideal_square_slice,
    q_to_quadric,
)


def rand_quadform(rng, g, span=5):
    n = g - 2
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = Fraction(rng.randint(-span, span))
            entries[i][j] = x
            entries[j][i] = x
    return QuadForm(g, entries)


def test_quadform_requires_symmetry():
    with pytest.raises(ValueError):
        QuadForm(4, [[1, 2], [3, 4]])


def test_q_to_quadric_diagonal():
    for g in (3, 4, 5):
        for i in range(g - 2):
            expect = WPoly.u_monomial(g, [i, i + 2]) - WPoly.u_monomial(g, [i + 1, i + 1])
            assert q_to_quadric(QuadForm.basis_element(g, i, i)) == expect


def test_q_to_quadric_off_diagonal():
    # e_0 (.) e_1 at g = 4 gives u_0 u_3 - u_1 u_2
    expect = WPoly.u_monomial(4, [0, 3]) - WPoly.u_monomial(4, [1, 2])
    assert q_to_quadric(QuadForm.basis_element(4, 0, 1)) == expect


def test_q_to_quadric_images_vanish_on_curve():
    rng = random.Random(3)
    for g in (3, 4, 5, 6):
        q = rand_quadform(rng, g)
        x = q_to_quadric(q)
        if x:
            assert veronese_pullback(x).is_zero()


def test_hankel_generators_span_example():
    gens = hankel_generators(4)
    assert len(gens) == 3
    classic = [WPoly.u_monomial(4, [0, 2]) - WPoly.u_monomial(4, [1, 1]),
               WPoly.u_monomial(4, [0, 3]) - WPoly.u_monomial(4, [1, 2]),
               WPoly.u_monomial(4, [1, 3]) - WPoly.u_monomial(4, [2, 2])]
    assert IdealSlice.from_polys(4, 2, gens) == IdealSlice.from_polys(4, 2, classic)


def test_ideal_slice_dimension_formula():
    for g in range(3, 8):
        for d in (1, 2, 3):
            s = ideal_slice(g, d)
            assert s.dim == math.comb(g - 1 + d, d) - (d * (g - 1) + 1)


def test_ideal_slice_examples():
    assert ideal_slice(3, 2).dim == 1
    assert ideal_slice(5, 2).dim == 6
    assert ideal_slice(3, 1).dim == 0


def test_ideal_slice_elements_vanish_on_curve():
    for g in (3, 4, 5):
        for d in (2, 3):
            for p in ideal_slice(g, d).basis:
                assert veronese_pullback(p).is_zero()


def test_quadrics_span_degree_two_slice():
    for g in (3, 4, 5):
        assert IdealSlice.from_polys(g, 2, hankel_generators(g)) == ideal_slice(g, 2)


def test_q_to_quadric_injective():
    # dimension of the symmetric space equals the slice dimension
    rng = random.Random(5)
    for g in (3, 4, 5):
        q = rand_quadform(rng, g)
        if not q.is_zero():
            assert bool(q_to_quadric(q))


def test_ideal_square_slice_g3_d4_is_conic_squared():
    s = ideal_square_slice(3, 4)
    conic = WPoly.u_monomial(3, [0, 2]) - WPoly.u_monomial(3, [1, 1])
    assert s.dim == 1
    assert s.contains(conic * conic)


def test_ideal_square_slice_rejects_low_degree():
    with pytest.raises(ValueError):
        ideal_square_slice(4, 3)


def test_ideal_square_inside_ideal():
    for g in (3, 4):
        sq = ideal_square_slice(g, 4)
        full = ideal_slice(g, 4)
        for p in sq.basis:
            assert full.contains(p)
        assert sq.dim <= full.dim


def test_lifts_differ_by_ideal_elements():
    rng = random.Random(7)
    for g in (3, 4):
        exps = [rng.randint(0, g - 1) for _ in range(4)]
        p = WPoly.u_monomial(g, exps, 3) + WPoly.u_monomial(g, [0] * 4, -2)
        f = veronese_pullback(p)
        if f.is_zero():
            continue
        lifted = quartic_lift(f, g)
        assert ideal_slice(g, 4).contains(lifted - p)


def test_quadform_json_round_trip():
    q = QuadForm(4, [[1, Fraction(1, 2)], [Fraction(1, 2), -3]])
    assert QuadForm.from_json(q.to_json()) == q
