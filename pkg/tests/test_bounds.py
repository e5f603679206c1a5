import math
from unittest import mock

import pytest

from cuspkit.bounds.dim3 import (
    CITED_THRESHOLD,
    MULTI_CUSP_SWITCH,
    SQRT5_OVER_2,
    DomainError,
    loxodromic_case_bound,
    multi_cusp_negative_case,
    parabolic_negative_case,
    parabolic_negative_constraints,
    parabolic_positive_case,
    single_cusp_majorant,
)
from cuspkit.bounds.dimn import dim_n_theorem, rogers_bound_in_nu, successive_minima_bound, volume_ratio_bounds
from cuspkit.bounds.inradius import flat_surface_bound, inradius_bound, random_search_bound
from cuspkit.bounds.suite import FULL_SAMPLES, CertificateSuite, certificate_suite
from cuspkit.config.loader import RunConfig
from cuspkit.core.domain import H3Point
from cuspkit.flatopt.objective import THUE_DENSITY, hexagonal_config
from cuspkit.flatopt.search import random_search
from cuspkit.gieseking.certificates import INRADIUS, SIMPLEX_INRADIUS, InradiusCertificate, systole_certificate
from cuspkit.gieseking.group import SYSTOLE


def _all_verified(reports):
    return all(r.verified for r in reports)


# Loxodromic case

def test_loxodromic_case_with_observed_length():
    """Test the majorant √(4h²+|b|²)/(2h) against the Gieseking systole."""
    reports = loxodromic_case_bound(1.0, math.sqrt(3), length=SYSTOLE)
    assert len(reports) == 1
    assert reports[0].rhs == pytest.approx(math.sqrt(7) / 2)
    assert reports[0].lhs == pytest.approx(math.cosh(SYSTOLE / 2))
    assert reports[0].verified


def test_loxodromic_case_ratio_equality():
    """Test that |b| = h and covol √3 put the ratio exactly at √5/2."""
    reports = loxodromic_case_bound(1.0, 1.0, covol=math.sqrt(3), length=SYSTOLE)
    assert len(reports) == 2
    assert reports[1].lhs == pytest.approx(SQRT5_OVER_2)
    assert reports[1].verified


def test_loxodromic_case_grid():
    """Test that the rotation-angle grid never exceeds the majorant."""
    reports = loxodromic_case_bound(1.0, 1.5, theta_steps=36)
    assert reports[0].verified
    assert reports[0].witness["steps"] == 36


def test_loxodromic_case_domain():
    """Test that |b| < h and nonpositive covolumes are refused."""
    with pytest.raises(DomainError):
        loxodromic_case_bound(1.0, 0.5)
    with pytest.raises(DomainError):
        loxodromic_case_bound(1.0, 1.5, covol=0.0, length=1.0)


# Parabolic cases

def test_parabolic_positive_case_values():
    """Test the combined minorant at h = 1, at the cited threshold and at h = 0.3."""
    assert parabolic_positive_case(1.0)[0].lhs == pytest.approx(0.75)
    assert parabolic_positive_case(CITED_THRESHOLD)[0].lhs == pytest.approx(0.9045, abs=1e-4)
    assert parabolic_positive_case(0.3)[0].lhs == pytest.approx(0.7193, abs=1e-4)
    for h in (1.0, CITED_THRESHOLD, 0.3, 0.05):
        assert _all_verified(parabolic_positive_case(h))


def test_parabolic_positive_case_domain():
    """Test that h must lie in (0, 1]."""
    with pytest.raises(DomainError):
        parabolic_positive_case(0.0)
    with pytest.raises(DomainError):
        parabolic_positive_case(1.5)


def test_multi_cusp_negative_case_branches():
    """Test both volume minorants and the boundary value at the switch."""
    high = multi_cusp_negative_case(1.0)[0]
    assert high.lhs == pytest.approx(math.sqrt(6) / 4)
    assert high.witness["branch"] == "vol >= 2"
    low = multi_cusp_negative_case(0.2)[0]
    assert low.witness["branch"] != "vol >= 2"
    assert low.verified
    edge = multi_cusp_negative_case(MULTI_CUSP_SWITCH)[0]
    assert edge.lhs == pytest.approx(SQRT5_OVER_2)
    assert edge.verified


def test_single_cusp_majorant():
    """Test the single-cusp majorant at h = 1 and its domain."""
    assert single_cusp_majorant(1.0) == pytest.approx(1.08205, abs=1e-5)
    with pytest.raises(DomainError):
        single_cusp_majorant(0.4)


def test_parabolic_negative_case_scan():
    """Test that the scan peaks at h = 1 below √5/2 - 0.03."""
    reports = parabolic_negative_case(grid=1001)
    assert len(reports) == 3
    assert _all_verified(reports)
    assert reports[0].witness["argmax"] == pytest.approx(1.0, abs=1e-3)


def test_parabolic_negative_case_at_h():
    """Test that a given h adds the pointwise and multi-cusp reports."""
    reports = parabolic_negative_case(0.7, grid=101)
    assert len(reports) == 5
    assert _all_verified(reports)
    with pytest.raises(DomainError):
        parabolic_negative_case(0.4)
    with pytest.raises(ValueError):
        parabolic_negative_case(grid=1)


def test_parabolic_negative_constraints():
    """Test the constraint chain at d = h = 1, θ = π/3 and a violated variant."""
    reports = parabolic_negative_constraints(1.0, 1.0, math.pi / 3)
    assert len(reports) == 8
    assert _all_verified(reports)
    assert not _all_verified(parabolic_negative_constraints(1.0, 0.6, 0.0))
    with pytest.raises(DomainError):
        parabolic_negative_constraints(0.0, 1.0, 0.0)


# Dimension n

def test_successive_minima_bound_observed():
    """Test both readings of the minima for the Gieseking cusp lattice."""
    reports = successive_minima_bound(1.0, 2 * math.sqrt(3), 1.0, length=SYSTOLE)
    assert [r.witness["reading"] for r in reports] == ["plain", "squared"]
    assert reports[0].rhs == pytest.approx(1 + math.sqrt(3))
    assert reports[1].rhs == pytest.approx(7.0)
    assert _all_verified(reports)


def test_successive_minima_bound_is_sharp_on_grid():
    """Test that the phase grid reaches 1 + m1 m2/(2h²) for unit minima."""
    reports = successive_minima_bound(1.0, 1.0, 1.0, phase_steps=36)
    assert reports[0].lhs == pytest.approx(1.5, abs=1e-9)
    assert _all_verified(reports)
    with pytest.raises(DomainError):
        successive_minima_bound(0.5, 1.0, 1.0)


def test_dim_n_theorem():
    """Test the dimension-3 constant against the Gieseking ratio and √5/2."""
    reports = dim_n_theorem(3, 1)
    assert len(reports) == 2
    assert reports[0].rhs == pytest.approx(2 * math.sqrt(3))
    assert _all_verified(reports)
    higher = dim_n_theorem(5, 2, gamma_mode="asymptotic")
    assert len(higher) == 1 and higher[0].lhs == 0.0
    assert higher[0].inputs["gammaSource"] == "asymptotic"
    with pytest.raises(DomainError):
        dim_n_theorem(2)


def test_volume_ratio_bounds():
    """Test that the ball-packing minorant equals one ν₃ in dimension 3."""
    assert rogers_bound_in_nu(3, THUE_DENSITY) == pytest.approx(1.0, abs=1e-12)
    reports = volume_ratio_bounds(3)
    assert [r.lhs for r in reports] == pytest.approx([2 / 3, 1.0])
    assert _all_verified(reports)
    assert len(volume_ratio_bounds(4, flat_density=0.6)) == 1
    with pytest.raises(DomainError):
        volume_ratio_bounds(4)


# Inradius and flat surfaces

def test_inradius_bound_from_certificate():
    """Test the equality case cosh R = √5/2 and the comparison with sys/2."""
    cert = InradiusCertificate(
        radius=INRADIUS,
        witness=(H3Point(0j, 1.0), H3Point(1 + 0j, 1.0)),
        lift_count=20,
        simplex_inradius=SIMPLEX_INRADIUS,
    )
    reports = inradius_bound(cert)
    assert len(reports) == 4
    assert _all_verified(reports)
    assert reports[-1].inputs["systoleSource"] == "closed form"
    assert reports[-1].rhs == pytest.approx(SYSTOLE / 2)

    systole = systole_certificate(depth=3, threads=1, inradius=INRADIUS)
    with_systole = inradius_bound(cert, systole=systole)
    assert len(with_systole) == 4
    assert _all_verified(with_systole)
    assert with_systole[-1].inputs["systoleSource"] == "word search"


def test_flat_bounds():
    """Test the hexagonal configuration and a small random search."""
    assert _all_verified(flat_surface_bound(hexagonal_config()))
    reports = random_search_bound(random_search("torus", samples=1000, seed=0))
    assert len(reports) == 2
    assert _all_verified(reports)
    assert reports[0].inputs["samples"] == 1000


# Certificate registry

def test_certificate_names_and_order():
    """Test the fixed order of the registry."""
    names = [name for name, _ in CertificateSuite().certificates()]
    assert names == [
        "densities",
        "gieseking.systole",
        "gieseking.cusp",
        "gieseking.inradius",
        "gieseking.polyhedra",
        "gieseking.normal-forms",
        "bounds.dim3",
        "bounds.dimn",
        "flatpack.hexagonal",
        "flatpack.optimize",
        "flatpack.search",
        "flatpack.surgery",
    ]


def test_certificate_suite_sizes():
    """Test quick-mode caps and the full-run sample floor."""
    quick = dict(certificate_suite(RunConfig(samples=500), quick=True))
    suite = quick["flatpack.search"].__self__
    assert suite.depth == 8 and suite.restarts == 16 and suite.samples == 500
    assert suite.surgery_samples == 20 and suite.min_diameter == 0.01

    full = dict(certificate_suite(RunConfig(samples=500)))
    assert full["flatpack.search"].__self__.samples == FULL_SAMPLES


def test_cheap_suite_certificates_verify():
    """Test the certificates that need no word search."""
    suite = CertificateSuite()
    for certificate in (suite.densities, suite.gieseking_polyhedra, suite.normal_forms, suite.dimn, suite.flat_hexagonal):
        assert _all_verified(certificate())
    assert len(suite.normal_forms()) == 16


def test_dim3_certificate_verifies():
    """Test the dimension-3 case analysis with a short word search."""
    suite = CertificateSuite(depth=3, threads=1)
    reports = suite.dim3()
    assert _all_verified(reports)
    assert any(r.claim.startswith("sqrt(4h^2+2)") for r in reports)


def test_inradius_certificate_skips_the_word_search():
    """Test that the inradius certificate reuses a cached systole and never starts a search."""
    cert = InradiusCertificate(
        radius=INRADIUS,
        witness=(H3Point(0j, 1.0), H3Point(1 + 0j, 1.0)),
        lift_count=20,
        simplex_inradius=SIMPLEX_INRADIUS,
    )
    suite = CertificateSuite()
    suite.inradius = cert
    with mock.patch("cuspkit.bounds.suite.systole_certificate") as search:
        reports = suite.gieseking_inradius()
        search.assert_not_called()
    assert reports[-1].inputs["systoleSource"] == "closed form"

    suite.systole = systole_certificate(depth=3, threads=1, inradius=INRADIUS)
    reports = suite.gieseking_inradius()
    assert reports[-1].inputs["systoleSource"] == "word search"
    assert _all_verified(reports)
