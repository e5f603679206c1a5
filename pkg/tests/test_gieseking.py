import cmath
import itertools
import math
import pickle

import pytest

from cuspkit.core.densities import nu3
from cuspkit.core.isom3 import Kind, classify
from cuspkit.core.limits import LimitConfig, ResourceLimit
from cuspkit.gieseking.certificates import (
    EDGE_LENGTH,
    INRADIUS,
    S_VERTEX_DISTANCE,
    SIMPLEX_INRADIUS,
    SYSTOLE_RATIO,
    b0_to_binf_elements,
    cusp_horosphere_translation,
    gieseking_volume,
    inradius_certificate,
    normal_form_certificates,
    polyhedron_metrics,
    simplex_inradius,
    systole_certificate,
)
from cuspkit.gieseking.cusp import B0_ORBIT, B_OMEGA2_ORBIT, cusp_group, horoball_orbit, tangent_balls
from cuspkit.gieseking.group import (
    LETTERS,
    OMEGA,
    RELATOR,
    SYSTOLE,
    ConstructionMismatch,
    Word,
    evaluate,
    is_freely_reduced,
    length_spectrum,
)


@pytest.fixture(scope="module")
def orbit():
    # enumeration at depth 8 is the slowest step of this module
    return horoball_orbit(min_diameter=0.2)


# Group and words

def test_relator_is_trivial():
    """Test that g⁻¹f⁻¹g²f² evaluates to the identity."""
    assert classify(evaluate(RELATOR)).kind == Kind.IDENTITY


def test_f_squared_is_translation():
    """Test that f² = τ_{-ω}."""
    g = evaluate("ff")
    assert g.orientation == 1
    assert abs(g.c) < 1e-12
    assert abs(g.b / g.d - (-OMEGA)) < 1e-12


def test_word_must_be_freely_reduced():
    """Test that words containing x x⁻¹ are rejected."""
    with pytest.raises(ValueError):
        Word.from_letters("fFg")
    assert str(Word.from_letters("")) == "1"
    assert len(Word.from_letters("fg")) == 2


def test_shortest_word_realizes_systole():
    """Test that fg has translation length 2 arccosh((1+√13)/4)."""
    report = classify(evaluate("fg"))
    assert report.kind == Kind.LOXODROMIC
    assert report.translation_length == pytest.approx(SYSTOLE, abs=1e-12)
    assert SYSTOLE == pytest.approx(1.0870701449957385, abs=1e-12)
    assert SYSTOLE == pytest.approx(1.087, abs=1e-3)


def test_length_spectrum_short_words():
    """Test that the spectrum up to length 3 starts at the systole with a length-2 witness."""
    spectrum = length_spectrum(3, threads=2)
    assert spectrum[0].length == pytest.approx(SYSTOLE, abs=1e-12)
    assert len(spectrum[0].witness) == 2
    lengths = [e.length for e in spectrum]
    assert lengths == sorted(lengths)


def test_length_spectrum_is_worker_count_independent():
    """Test that one and several workers give the same spectrum."""
    single = length_spectrum(4, threads=1)
    several = length_spectrum(4, threads=3)
    assert [(e.length, e.orientation, str(e.witness)) for e in single] == [
        (e.length, e.orientation, str(e.witness)) for e in several
    ]


def test_length_spectrum_limits():
    """Test that word length and word count caps raise ResourceLimit."""
    with pytest.raises(ResourceLimit):
        length_spectrum(5, limits=LimitConfig(max_word_length=4))
    with pytest.raises(ResourceLimit):
        length_spectrum(6, threads=1, limits=LimitConfig(max_items=50))
    with pytest.raises(ValueError):
        length_spectrum(0)


def test_length_spectrum_limit_raised_in_worker_process():
    """Test that a budget exhausted inside a worker process reaches the caller as ResourceLimit."""
    with pytest.raises(ResourceLimit) as exc:
        length_spectrum(7, threads=2, limits=LimitConfig(max_items=50))
    assert exc.value.what == "words"
    assert exc.value.limit == 50


def test_words_are_unimodular_and_never_elliptic():
    """Test |det - 1| < 1e-10 and no elliptic element for every reduced word up to length 5."""
    count = 0
    for length in range(1, 6):
        for letters in itertools.product(LETTERS, repeat=length):
            if not is_freely_reduced(letters):
                continue
            g = evaluate(letters)
            assert abs(g.det - 1) < 1e-10
            assert classify(g).kind != Kind.ELLIPTIC
            count += 1
    assert count == sum(4 * 3 ** (k - 1) for k in range(1, 6))


def test_construction_mismatch_pickles():
    """Test that ConstructionMismatch keeps its fields across pickling."""
    restored = pickle.loads(pickle.dumps(ConstructionMismatch("word fg", "elliptic", "torsion-free group")))
    assert restored.what == "word fg"
    assert str(restored) == "word fg: computed elliptic, expected torsion-free group"


# Cusp

def test_cusp_group():
    """Test the cusp stabilizer: glide axes, covolumes and index."""
    section = cusp_group()
    assert section.glides[0].axis_intercept == pytest.approx(0.5)
    assert section.glides[1].axis_intercept == pytest.approx(-1.5)
    assert abs(section.glides[0].glide_vector + OMEGA / 2) < 1e-9
    assert section.covol_gamma_inf == pytest.approx(math.sqrt(3))
    assert section.covol_lambda_inf == pytest.approx(2 * math.sqrt(3))
    assert section.index == 2
    assert section.klein.area == pytest.approx(math.sqrt(3))


def test_cusp_horosphere_translation():
    """Test displacements of f and f² on horospheres."""
    assert cusp_horosphere_translation("f") == pytest.approx(0.5)
    assert cusp_horosphere_translation("ff") == pytest.approx(1.0)
    assert cusp_horosphere_translation(Word.from_letters("f"), h=0.5) == pytest.approx(1.0)


def test_horoball_orbit_labels(orbit):
    """Test that the tangent balls split into the orbits of B_0 and B_ω²."""
    labels = {label for _, label in orbit.representatives}
    assert {B0_ORBIT, B_OMEGA2_ORBIT} <= labels
    assert max(ball.size for ball, _ in orbit.representatives) == pytest.approx(1.0)
    assert orbit.label_of(0j, 1.0) == B0_ORBIT
    assert orbit.label_of(OMEGA ** 2, 1.0) == B_OMEGA2_ORBIT


def test_tangent_balls_sit_on_eisenstein_integers(orbit):
    """Test that the diameter-one balls near 0 are centered at 0 and the six units."""
    balls = tangent_balls(orbit, 1.01)
    centers = {(round(ball.center.real, 9), round(ball.center.imag, 9)) for ball, _ in balls}
    expected = {(0.0, 0.0)} | {
        (round(cmath.exp(1j * k * math.pi / 3).real, 9), round(cmath.exp(1j * k * math.pi / 3).imag, 9)) for k in range(6)
    }
    assert centers == {(x + 0.0, y + 0.0) for x, y in expected}


def test_horoball_orbit_rejects_bad_cutoff():
    """Test the min_diameter range."""
    with pytest.raises(ValueError):
        horoball_orbit(min_diameter=1.5)


# Certificates

def test_inradius_certificate(orbit):
    """Test that the tangency point has injectivity radius arccosh(√5/2)."""
    cert = inradius_certificate(orbit)
    assert cert.radius == pytest.approx(INRADIUS, abs=1e-9)
    assert cert.lift_count > 12
    assert cert.simplex_inradius == pytest.approx(SIMPLEX_INRADIUS)
    assert cert.radius > cert.simplex_inradius


def test_simplex_and_polyhedra():
    """Test the inscribed ball of the simplex and the distances in S and T."""
    assert simplex_inradius() == pytest.approx(math.acosh(3 / (2 * math.sqrt(2))), abs=1e-12)
    metrics = polyhedron_metrics()
    assert metrics.s_vertex_distance == pytest.approx(S_VERTEX_DISTANCE, abs=1e-8)
    assert metrics.t_vertex_distance == pytest.approx(INRADIUS, abs=1e-8)
    assert metrics.edge_length == pytest.approx(EDGE_LENGTH, abs=1e-8)
    assert metrics.s_vertices == 12
    assert metrics.t_vertices == 12


def test_normal_form_certificates():
    """Test both elements sending B_0 to B_∞ against the parabolic negative relations."""
    assert len(b0_to_binf_elements()) == 2
    first, second = normal_form_certificates()
    for cert in (first, second):
        assert cert.kind == Kind.PARABOLIC
        assert abs(cert.normal_form.b) == pytest.approx(2 * cert.normal_form.h * abs(cert.cos_theta))
        assert abs(cert.cos_theta) >= 0.5 - 1e-9
    assert abs(first.normal_form.b - OMEGA ** 2) < 1e-9
    assert first.normal_form.h == pytest.approx(1.0)
    assert first.d == pytest.approx(1.0)
    assert abs(first.fixed_point - (-1)) < 1e-9


def test_systole_certificate():
    """Test the systole certificate with a supplied inradius."""
    cert = systole_certificate(depth=3, threads=1, inradius=INRADIUS)
    assert cert.systole == pytest.approx(SYSTOLE, abs=1e-12)
    assert cert.simplicial_volume == pytest.approx(1.0)
    assert cert.ratio == pytest.approx(SYSTOLE_RATIO, abs=1e-12)
    assert cert.half_systole_exceeds_inradius
    assert gieseking_volume() == pytest.approx(nu3())
