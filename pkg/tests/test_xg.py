import random
from fractions import Fraction

import pytest

from ribbonlab.poly import BinaryForm, WPoly, veronese_pullback
from ribbonlab.rnc import IdealSlice, ideal_slice
from ribbonlab.xg import (
    XgIdeal,
    buchberger,
    canonical_ribbon_ideal,
    certify_groebner,
    eliminate_v,
    eliminate_v_degree,
    hilbert_function,
    hyperelliptic_model,
    random_ell,
    random_ribbon_ell,
    ribbon_ell_space,
    split_ribbon_contains,
    split_ribbon_evaluation,
    split_ribbon_ideal,
    syzygies_by_degree,
    uu_keys,
)


def u(g, i):
    return WPoly.u_var(g, i)


def v(g, j):
    return WPoly.v_var(g, j)


def test_generator_group_sizes():
    for g in range(3, 8):
        ideal = split_ribbon_ideal(g)
        assert len(ideal.UU) == (g - 1) * (g - 2) // 2
        assert len(ideal.UV) == (g - 1) * (g - 3)
        assert len(ideal.VV) == (g - 2) * (g - 1) // 2
        for p in ideal.generators():
            assert p.is_homogeneous("weighted")
    with pytest.raises(ValueError):
        split_ribbon_ideal(2)


def test_small_genus_generators_explicit():
    i3 = split_ribbon_ideal(3)
    assert [p for _, p in i3.UU] == [u(3, 0) * u(3, 2) - u(3, 1) * u(3, 1)]
    assert i3.UV == []
    assert [p for _, p in i3.VV] == [v(3, 0) * v(3, 0)]

    i4 = split_ribbon_ideal(4)
    assert [p for _, p in i4.UV] == [
        u(4, 0) * v(4, 1) - u(4, 1) * v(4, 0),
        u(4, 1) * v(4, 1) - u(4, 2) * v(4, 0),
        u(4, 2) * v(4, 1) - u(4, 3) * v(4, 0),
    ]


def test_uu_group_spans_quadric_slice():
    # the degree-2 u-part must be exactly the curve's quadric space
    for g in range(3, 7):
        polys = [p for _, p in split_ribbon_ideal(g).UU]
        assert IdealSlice.from_polys(g, 2, polys) == ideal_slice(g, 2)


def test_membership_oracle_on_generator_multiples():
    rng = random.Random(7)
    for g in (3, 4, 5):
        ideal = split_ribbon_ideal(g)
        for p in ideal.generators():
            assert split_ribbon_contains(p)
            m = WPoly.u_monomial(g, [rng.randrange(g), rng.randrange(g)])
            assert split_ribbon_contains(m * p)
            assert split_ribbon_contains(v(g, rng.randrange(g - 2)) * p)


def test_membership_oracle_rejects():
    g = 4
    assert not split_ribbon_contains(u(g, 0) * u(g, 0))
    assert not split_ribbon_contains(v(g, 0))
    assert not split_ribbon_contains(u(g, 2) * v(g, 1))
    first, second = split_ribbon_evaluation(u(g, 1))
    assert first == BinaryForm.monomial(g - 1, 1)
    assert second.is_zero()


def test_hilbert_function_split():
    for g in range(3, 7):
        ideal = split_ribbon_ideal(g)
        values = hilbert_function(ideal, "weighted", range(7))
        assert values[0] == 1
        assert values[1] == g
        for d in range(2, 7):
            assert values[d] == (2 * d - 1) * (g - 1)


def test_hilbert_function_hyperelliptic_matches_split():
    for g in (3, 4):
        h = BinaryForm.monomial(2 * g + 2, 2 * g + 2) - BinaryForm.monomial(2 * g + 2, 0)
        ideal = hyperelliptic_model(g, h)
        values = hilbert_function(ideal, "weighted", range(2, 6))
        assert values == [(2 * d - 1) * (g - 1) for d in range(2, 6)]


def test_hilbert_function_canonical_matches_split():
    rng = random.Random(21)
    for g in (3, 4, 5):
        ideal = canonical_ribbon_ideal(g, random_ribbon_ell(g, rng))
        values = hilbert_function(ideal, "weighted", range(2, 6))
        assert values == [(2 * d - 1) * (g - 1) for d in range(2, 6)]


def test_admissible_correction_space():
    # one parameter per coordinate of the classifying functional
    for g in (3, 4, 5):
        assert len(ribbon_ell_space(g)) == g - 2


def test_arbitrary_correction_can_shrink_the_scheme():
    # with an inadmissible correction, extra degree-3 elements appear and
    # the quotient drops below the ribbon values
    g = 4
    ell = [v(g, 1), WPoly.zero(g), WPoly.zero(g)]
    ideal = canonical_ribbon_ideal(g, ell)
    assert hilbert_function(ideal, "weighted", [3])[0] < 5 * (g - 1)


def test_koszul_grading_guard():
    rng = random.Random(3)
    ell = random_ell(4, rng)
    while all(not e for e in ell):
        ell = random_ell(4, rng)
    with pytest.raises(ValueError):
        hilbert_function(canonical_ribbon_ideal(4, ell), "koszul", [2])
    h = BinaryForm.monomial(10, 10) - BinaryForm.monomial(10, 0)
    with pytest.raises(ValueError):
        hilbert_function(hyperelliptic_model(4, h), "koszul", [2])
    # the split ribbon is homogeneous in both gradings
    assert hilbert_function(split_ribbon_ideal(4), "koszul", [2]) == [12]


def test_v_rescaling_preserves_hilbert_function():
    rng = random.Random(11)
    g = 4
    ell = random_ell(g, rng)
    t = Fraction(5, 3)
    scaled = [e * t for e in ell]
    a = hilbert_function(canonical_ribbon_ideal(g, ell), "weighted", range(6))
    b = hilbert_function(canonical_ribbon_ideal(g, scaled), "weighted", range(6))
    assert a == b


def test_groebner_certificate_split():
    for g in range(3, 7):
        res = certify_groebner(split_ribbon_ideal(g))
        assert res is not None
        assert res.order == "grlex"
        assert res.input_is_groebner
        assert len(res.basis) == len(split_ribbon_ideal(g).generators())


def test_groebner_principal_ideal():
    res = buchberger([u(3, 0) * u(3, 2) - u(3, 1) * u(3, 1)])
    assert res.input_is_groebner


def test_buchberger_completion_closes():
    # two of the three quadrics at g=4 are not a Groebner basis by themselves
    g = 4
    gens = [u(g, 0) * u(g, 2) - u(g, 1) * u(g, 1),
            u(g, 0) * u(g, 3) - u(g, 1) * u(g, 2)]
    res = buchberger(gens, "grlex", cap=12)
    assert not res.input_is_groebner
    assert res.complete
    assert len(res.basis) > 2
    again = buchberger(res.basis, "grlex", cap=12)
    assert again.input_is_groebner
    capped = buchberger(gens, "grlex", cap=2)
    assert not capped.complete


def test_normal_monomial_counts_match_hilbert():
    for g in (3, 4):
        ideal = split_ribbon_ideal(g)
        res = certify_groebner(ideal)
        for grading, top in (("koszul", 7), ("weighted", 6)):
            hf = hilbert_function(ideal, grading, range(top + 1))
            counts = [res.normal_monomial_count(d, grading) for d in range(top + 1)]
            assert counts == hf


def test_normal_quadratic_monomial_patterns():
    for g in (4, 5):
        res = certify_groebner(split_ribbon_ideal(g))
        normal = set(res.normal_monomials(2, "koszul"))
        for i in range(g - 1):
            e = [0] * (2 * g - 2)
            e[i] += 1
            e[i + 1] += 1
            assert tuple(e) in normal
        for i in range(g):
            e = [0] * (2 * g - 2)
            e[i] += 1
            e[g] += 1
            assert tuple(e) in normal


def _check_records_are_syzygies(ideal, records):
    gens = ideal.generators()
    for rec in records.values():
        for rep in rec.representatives:
            total = WPoly.zero(ideal.g)
            for coeff, gen in zip(rep, gens):
                total = total + coeff * gen
            assert not total


def test_syzygies_split_g3():
    ideal = split_ribbon_ideal(3)
    records = syzygies_by_degree(ideal, 7)
    assert [records[d].minimal_count for d in range(3, 8)] == [0, 0, 0, 1, 0]
    assert records[6].kernel_dim == 1
    # the complete intersection's only syzygy mixes coefficient degrees,
    # so the v(vv)0 schematic shape cannot account for it
    assert records[6].shape_matched is False
    _check_records_are_syzygies(ideal, records)


def test_syzygies_split_g4():
    ideal = split_ribbon_ideal(4)
    records = syzygies_by_degree(ideal, 6)
    assert {d: records[d].minimal_count for d in records} == {3: 2, 4: 6, 5: 6, 6: 2}
    assert all(records[d].shape_matched for d in (3, 4, 5, 6))
    _check_records_are_syzygies(ideal, records)


def test_syzygies_hyperelliptic_g3():
    h = BinaryForm.monomial(8, 8) - BinaryForm.monomial(8, 0)
    ideal = hyperelliptic_model(3, h)
    records = syzygies_by_degree(ideal, 7, shape_table="hyperelliptic")
    # two coprime generators: the Koszul pair in degree 6 is everything
    assert [records[d].minimal_count for d in range(3, 8)] == [0, 0, 0, 1, 0]
    assert records[5].kernel_dim == 0
    assert records[6].shape_matched is False
    _check_records_are_syzygies(ideal, records)


def test_eliminate_v_canonical_g3():
    conic = u(3, 0) * u(3, 2) - u(3, 1) * u(3, 1)
    ideal = canonical_ribbon_ideal(3, [v(3, 0)])
    slices = eliminate_v(ideal, 4)
    assert slices[2].dim == 0
    assert slices[4] == IdealSlice.from_polys(3, 4, [conic * conic])


def test_eliminate_v_split_gives_quadric_slice():
    for g in (3, 4, 5):
        assert eliminate_v_degree(split_ribbon_ideal(g), 2) == ideal_slice(g, 2)


def test_hyperelliptic_g3_example():
    h = BinaryForm.monomial(8, 8) + BinaryForm.monomial(8, 0)
    ideal = hyperelliptic_model(3, h)
    expected = (v(3, 0) * v(3, 0)
                - WPoly.u_monomial(3, [2, 2, 2, 2])
                - WPoly.u_monomial(3, [0, 0, 0, 0]))
    assert [p for _, p in ideal.VV] == [expected]


def _pure_u(p):
    return WPoly(p.g, {e: c for e, c in p.terms.items() if not any(e[p.g:])})


def test_hyperelliptic_lift_round_trip():
    g = 4
    h = (BinaryForm.monomial(10, 10) + 3 * BinaryForm.monomial(10, 4)
         - BinaryForm.monomial(10, 0))
    ideal = hyperelliptic_model(g, h)
    for (i, j), p in ideal.VV:
        p_ij = _pure_u(p).map_coeffs(lambda c: -c)
        shifted = BinaryForm.monomial(2 * g - 6, i + j) * h
        assert veronese_pullback(p_ij) == shifted


def test_hyperelliptic_zero_h_is_split():
    g = 4
    zero_h = BinaryForm(2 * g + 2)
    assert hyperelliptic_model(g, zero_h).generators() == \
        split_ribbon_ideal(g).generators()
    with pytest.raises(ValueError):
        hyperelliptic_model(g, BinaryForm.monomial(4, 0))


def test_xg_ideal_json_round_trip():
    rng = random.Random(5)
    ideal = canonical_ribbon_ideal(4, random_ell(4, rng))
    loaded = XgIdeal.from_json(ideal.to_json())
    assert loaded.g == ideal.g
    assert loaded.UU == ideal.UU
    assert loaded.UV == ideal.UV
    assert loaded.VV == ideal.VV
