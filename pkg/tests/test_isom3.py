import cmath
import math

import pytest

from cuspkit.context import tolerance_context
from cuspkit.core.domain import INFINITY, H3Point, is_infinity
from cuspkit.core.isom3 import (
    AmbiguousClassification,
    DoesNotStabilizeInfinity,
    Isometry,
    Kind,
    NotLoxodromic,
    SharedFixedPoint,
    act,
    act_boundary,
    classify,
    compose,
    dist_H3,
    eigenvalue,
    euclidean_part,
    geodesic_points,
    horospherical_translation,
    inverse,
    midpoint,
    normal_form_parameters,
    normalize_B0_to_Binf,
    parabolic_negative_fixed_point,
    parabolic_product_report,
    square_trace,
    translation_length,
)
from cuspkit.gieseking.group import generators


def test_from_matrix_normalizes_determinant():
    """Test that from_matrix rescales to determinant one."""
    g = Isometry.from_matrix(2, 0, 0, 2)
    assert abs(g.det - 1) < 1e-15
    assert classify(g).kind == Kind.IDENTITY


def test_invalid_isometries_rejected():
    """Test that singular matrices and bad orientations raise ValueError."""
    with pytest.raises(ValueError):
        Isometry.from_matrix(1, 2, 2, 4)
    with pytest.raises(ValueError):
        Isometry(1, 0, 0, 1, orientation=0)


def test_compose_applies_right_factor_first():
    """Test that compose(g1, g2) acts as g1 after g2."""
    g1 = Isometry.from_matrix(0, -1, 1, 0)
    g2 = Isometry.translation(1)
    z = 0.3 + 0.7j
    assert abs(act_boundary(compose(g1, g2), z) - act_boundary(g1, act_boundary(g2, z))) < 1e-12
    assert abs(act_boundary(compose(g1, g2), z) - (-1 / (z + 1))) < 1e-12


def test_compose_with_negative_element():
    """Test the twisted product (A, -1)(B, e) = (A B̄, -e)."""
    reflection = Isometry.from_matrix(1, 0, 0, 1, orientation=-1)
    g = Isometry.translation(1j)
    product = compose(reflection, g)
    assert product.orientation == -1
    z = 0.5 + 0.25j
    assert abs(act_boundary(product, z) - (z + 1j).conjugate()) < 1e-12


def test_inverse_of_negative_element():
    """Test that g composed with its inverse is the identity for both orientations."""
    f, g = generators()
    for h in (f, g, compose(f, g), Isometry.from_matrix(1 + 1j, 2, 0.5, 3)):
        assert classify(compose(h, inverse(h))).kind == Kind.IDENTITY
        assert classify(compose(inverse(h), h)).kind == Kind.IDENTITY


def test_act_boundary_at_infinity():
    """Test the action on ∞ and on a pole."""
    g = Isometry.from_matrix(2, 1, 1, 1)
    assert abs(act_boundary(g, INFINITY) - 2) < 1e-12
    assert is_infinity(act_boundary(g, -1))
    assert is_infinity(act_boundary(Isometry.translation(3), INFINITY))


def test_act_on_upper_half_space():
    """Test that z -> -1/z sends (0, 2) to (0, 1/2) and that negative elements conjugate first."""
    s = Isometry.from_matrix(0, -1, 1, 0)
    p = act(s, H3Point(0j, 2.0))
    assert abs(p.z) < 1e-12 and abs(p.t - 0.5) < 1e-12

    reflection = Isometry.from_matrix(1, 0, 0, 1, orientation=-1)
    q = act(reflection, H3Point(1 + 1j, 3.0))
    assert abs(q.z - (1 - 1j)) < 1e-12 and abs(q.t - 3.0) < 1e-12


def test_classify_positive_types():
    """Test identity, parabolic, elliptic and loxodromic classification."""
    assert classify(Isometry.identity()).kind == Kind.IDENTITY
    parabolic = classify(Isometry.translation(1))
    assert parabolic.kind == Kind.PARABOLIC
    assert parabolic.fixed_points and is_infinity(parabolic.fixed_points[0])
    rotation = Isometry.from_matrix(cmath.exp(1j * math.pi / 4), 0, 0, cmath.exp(-1j * math.pi / 4))
    assert classify(rotation).kind == Kind.ELLIPTIC
    dilation = classify(Isometry.from_matrix(2, 0, 0, 0.5))
    assert dilation.kind == Kind.LOXODROMIC
    assert dilation.translation_length == pytest.approx(2 * math.log(2), abs=1e-12)
    assert dilation.rotation_angle == pytest.approx(0.0, abs=1e-12)


def test_translation_length_matches_displacement_on_axis():
    """Test that the dilation by 4 moves (0, 1) by its translation length."""
    g = Isometry.from_matrix(2, 0, 0, 0.5)
    length, angle = translation_length(g)
    p = H3Point(0j, 1.0)
    assert dist_H3(p, act(g, p)) == pytest.approx(length, abs=1e-12)
    assert abs(eigenvalue(g) - 2) < 1e-12


def test_loxodromic_with_rotation():
    """Test that λ = 2i gives ℓ = 2 ln 2 and rotation angle π."""
    g = Isometry.from_matrix(2j, 0, 0, -0.5j)
    length, angle = translation_length(g)
    assert length == pytest.approx(2 * math.log(2), abs=1e-12)
    assert abs(angle) == pytest.approx(math.pi, abs=1e-12)


def test_classify_negative_types():
    """Test reflections, glide reflections and negative loxodromics."""
    reflection = Isometry.from_matrix(1, 0, 0, 1, orientation=-1)
    report = classify(reflection)
    assert report.kind == Kind.ELLIPTIC and report.orientation == -1

    glide = Isometry.from_matrix(1, 1, 0, 1, orientation=-1)
    assert square_trace(glide) == pytest.approx(2.0)
    assert classify(glide).kind == Kind.PARABOLIC

    stretch = Isometry.from_matrix(2, 0, 0, 1, orientation=-1)
    report = classify(stretch)
    assert report.kind == Kind.LOXODROMIC
    assert report.translation_length == pytest.approx(math.log(2), abs=1e-12)
    assert report.rotation_angle is None


def test_negative_fixed_points_are_fixed():
    """Test that reported fixed points of z -> 2 z̄ are 0 and ∞."""
    stretch = Isometry.from_matrix(2, 0, 0, 1, orientation=-1)
    fixed = classify(stretch).fixed_points
    assert len(fixed) == 2
    assert any(is_infinity(z) for z in fixed)
    assert any(not is_infinity(z) and abs(z) < 1e-12 for z in fixed)


def test_gieseking_generators_are_negative_parabolics():
    """Test that both generators are orientation-reversing parabolic elements."""
    for g in generators():
        report = classify(g)
        assert report.kind == Kind.PARABOLIC
        assert report.orientation == -1


def test_square_trace_rejects_positive_elements():
    """Test that Tr(γ²) is only offered for negative elements."""
    with pytest.raises(ValueError):
        square_trace(Isometry.translation(1))


def test_translation_length_rejects_parabolic():
    """Test that translation_length raises NotLoxodromic for a parabolic element."""
    with pytest.raises(NotLoxodromic):
        translation_length(Isometry.translation(1))


def test_eigenvalue_rejects_negative_elements():
    """Test that eigenvalues are only defined for positive loxodromics."""
    with pytest.raises(ValueError):
        eigenvalue(Isometry.from_matrix(2, 0, 0, 1, orientation=-1))


def test_strict_mode_inside_tolerance_band():
    """Test that a near-parabolic element snaps or raises depending on strict mode."""
    lam = 1 + 1e-4
    g = Isometry.from_matrix(lam, 1, 0, 1 / lam)
    assert classify(g).kind == Kind.LOXODROMIC
    with tolerance_context(atol=1e-6):
        assert classify(g).kind == Kind.PARABOLIC
    with tolerance_context(atol=1e-6, strict=True):
        with pytest.raises(AmbiguousClassification):
            classify(g)


def test_strict_mode_ignores_rounding_noise():
    """Test that an exact parabolic does not raise in strict mode."""
    with tolerance_context(strict=True):
        assert classify(Isometry.translation(2)).kind == Kind.PARABOLIC


def test_dist_and_midpoint():
    """Test distances and midpoints along the vertical geodesic."""
    p, q = H3Point(0j, 1.0), H3Point(0j, math.e)
    assert dist_H3(p, q) == pytest.approx(1.0, abs=1e-14)
    m = midpoint(H3Point(0j, 1.0), H3Point(0j, 4.0))
    assert abs(m.z) < 1e-12 and m.t == pytest.approx(2.0, abs=1e-12)


def test_midpoint_is_equidistant():
    """Test that the midpoint of two generic points is halfway."""
    p, q = H3Point(0.3 + 0.1j, 0.7), H3Point(-1.2 + 0.4j, 2.5)
    m = midpoint(p, q)
    assert dist_H3(p, m) == pytest.approx(dist_H3(p, q) / 2, abs=1e-12)
    assert dist_H3(q, m) == pytest.approx(dist_H3(p, q) / 2, abs=1e-12)


def test_geodesic_points():
    """Test points on a vertical and on a semicircular geodesic."""
    vertical = geodesic_points(0j, INFINITY, count=3, span=1.0)
    assert [p.t for p in vertical] == pytest.approx([math.exp(-1), 1.0, math.e])
    arc = geodesic_points(-1 + 0j, 1 + 0j, count=5, span=1.0)
    for p in arc:
        assert abs(p.z) ** 2 + p.t ** 2 == pytest.approx(1.0, abs=1e-12)
    assert dist_H3(arc[0], arc[-1]) == pytest.approx(2.0, abs=1e-12)


def test_parabolic_product_trace_law():
    """Test that the product of z+m and the lower-triangular m' has trace 2 + m m'."""
    alpha = Isometry.translation(1)
    report = parabolic_product_report(alpha, Isometry.from_matrix(1, 0, 2, 1))
    assert report.product_kind == Kind.LOXODROMIC
    assert report.trace == pytest.approx(4)
    assert report.common_invariant_line

    skew = parabolic_product_report(alpha, Isometry.from_matrix(1, 0, 2j, 1))
    assert skew.trace == pytest.approx(2 + 2j)
    assert not skew.common_invariant_line

    parabolic = parabolic_product_report(alpha, Isometry.from_matrix(1, 0, -4, 1))
    assert parabolic.product_kind == Kind.PARABOLIC
    assert parabolic.common_invariant_line


def test_parabolic_product_rejects_shared_fixed_point():
    """Test that two translations raise SharedFixedPoint."""
    with pytest.raises(SharedFixedPoint):
        parabolic_product_report(Isometry.translation(1), Isometry.translation(1j))


def test_euclidean_part_and_horospherical_translation():
    """Test the induced motion of a translation and its displacement on horospheres."""
    tau = Isometry.translation(3)
    motion = euclidean_part(tau)
    assert motion.orientation == 1 and abs(motion.w - 3) < 1e-12
    assert horospherical_translation(tau, 1.0) == pytest.approx(3.0)
    assert horospherical_translation(tau, 2.0) == pytest.approx(1.5)
    with pytest.raises(DoesNotStabilizeInfinity):
        euclidean_part(Isometry.from_matrix(0, -1, 1, 0))


def test_glide_reflection_displacement():
    """Test that z -> z̄ + 1 moves its axis by 1."""
    glide = Isometry.from_matrix(1, 1, 0, 1, orientation=-1)
    motion = euclidean_part(glide)
    assert abs(motion.glide_vector - 1) < 1e-12
    assert horospherical_translation(glide, 1.0) == pytest.approx(1.0)


def test_normal_form_round_trip():
    """Test that normal_form_parameters recovers b, h and e^{2iθ}."""
    b, h, theta = 1.5 - 0.5j, 0.8, 0.9
    for orientation in (1, -1):
        g = normalize_B0_to_Binf(b, h, theta, orientation)
        assert is_infinity(act_boundary(g, 0j))
        nf = normal_form_parameters(g)
        assert abs(nf.b - b) < 1e-12
        assert nf.h == pytest.approx(h)
        assert abs(cmath.exp(2j * nf.theta) - cmath.exp(2j * theta)) < 1e-12
        assert nf.orientation == orientation


def test_parabolic_negative_fixed_point():
    """Test that (b/2)e^{iθ}/cos θ is fixed by the negative normal form."""
    theta = math.pi / 3
    g = normalize_B0_to_Binf(1 + 0j, 1.0, theta, orientation=-1)
    fixed = parabolic_negative_fixed_point(1 + 0j, 1.0, theta)
    assert abs(fixed - cmath.exp(1j * math.pi / 3)) < 1e-12
    assert abs(act_boundary(g, fixed) - fixed) < 1e-12
    assert classify(g).kind == Kind.PARABOLIC
    with pytest.raises(ValueError):
        parabolic_negative_fixed_point(3 + 0j, 1.0, theta)
