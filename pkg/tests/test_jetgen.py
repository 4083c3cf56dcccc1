import pytest

from jetcalc.jetgen import (JetError, coordinate_names, fiber_ideal, generate_jet_equations,
                            scaling_defect, truncation_substitution, zero_section)
from jetcalc.localalgebra import box, fat_point, surjection, truncation
from jetcalc.polyring import IdealPresentation, parse_polynomial


def ideal(v, g):
    return IdealPresentation.from_strings(v, g)


def test_coordinates_are_j_major():
    assert coordinate_names(2, 2) == ("a_1_1", "a_2_1", "a_1_2", "a_2_2")


def test_cusp_first_jets_by_hand():
    J = generate_jet_equations(ideal("xy", ["x^2+y^3"]), truncation(1))
    assert [str(e) for e in J.equations] == ["a_1_2^3 + a_1_1^2", "3*a_1_2^2*a_2_2 + 2*a_1_1*a_2_1"]


def test_xy_over_box_by_hand():
    # (a1 + a2 s + a3 t + a4 st)(b1 + b2 s + b3 t + b4 st)
    J = generate_jet_equations(ideal("xy", ["x*y"]), box(2, 2))
    assert len(J.equations) == 4
    assert str(J.equation(0, 0)) == "a_1_1*a_1_2"
    expected = parse_polynomial("a_1_1*a_4_2 + a_2_1*a_3_2 + a_3_1*a_2_2 + a_4_1*a_1_2", J.coordinates)
    assert J.equation(0, 3) == expected


def test_zero_generators_are_kept():
    J = generate_jet_equations(ideal("xy", ["x", "0"]), truncation(2))
    assert len(J.equations) == 6
    assert all(e.is_zero() for e in J.equations[3:])


def test_scaling_is_quasi_homogeneous():
    J = generate_jet_equations(ideal("xy", ["x^2+y^3-x*y+1"]), fat_point(2, 3))
    assert scaling_defect(J) == []


def test_truncation_restriction_reproduces_smaller_system():
    I = ideal("xy", ["x^2+y^3"])
    big = generate_jet_equations(I, box(2, 3))
    small = generate_jet_equations(I, box(2, 2))
    proj = truncation_substitution(big, surjection(box(2, 3), box(2, 2)))
    assert tuple(proj.restrict(big, small.coordinates)) == small.equations


def test_fiber_ideal_appends_pulled_back_center():
    I = ideal("xy", ["x"])
    J = generate_jet_equations(I, truncation(1))
    F = fiber_ideal(J, ideal("xy", ["x", "y"]))
    assert [str(g) for g in F.generators[2:]] == ["a_1_1", "a_1_2"]
    with pytest.raises(JetError):
        fiber_ideal(J, ideal("xz", ["x"]))


def test_zero_section_checks_membership():
    J = generate_jet_equations(ideal("xy", ["x*y"]), truncation(2))
    assert zero_section(J, (0, 5)) == (0, 0, 0, 5, 0, 0)
    with pytest.raises(JetError, match="not on X"):
        zero_section(J, (1, 1))
