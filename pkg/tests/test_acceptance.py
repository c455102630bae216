"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

from pathlib import Path

import pytest

from cotangent_kahler.cli import main
from cotangent_kahler.profile import EinsteinProfileParams
from cotangent_kahler.spaceform import SpaceFormParams
from cotangent_kahler.verify import Context, SampleSpec, suite_almost_kaehler, suite_connection, suite_einstein, suite_holomorphic, suite_integrability, suite_ode, suite_ricci

from .conftest import record_acceptance

GOLDEN = Path(__file__).parent / "golden" / "canonical_report.json"
SPEC = SampleSpec(seed=42, count=100, oracle_count=20)


def context(n, c, A, spec=SPEC):
    return Context(SpaceFormParams(n, c), EinsteinProfileParams(A, c, n), spec)


def by_name(checks):
    return {ch.name: ch for ch in checks}


def summarise(checks, names):
    return ", ".join(f"{n}={checks[n].max_residual:.2e}" for n in names)


def test_criterion_1_almost_kaehler():
    ok, parts = True, []
    for c, A in ((-1.0, 1.0), (0.0, 1.0), (1.0, 2.0)):
        checks = by_name(suite_almost_kaehler(context(3, c, A)))
        herm, jsq = checks["almost_kaehler.hermitian"], checks["almost_kaehler.j_squared"]
        canon, indep = checks["almost_kaehler.symplectic_canonical"], checks["almost_kaehler.profile_independence"]
        ok &= herm.samples >= 100 and herm.max_residual < 1e-10 and jsq.max_residual < 1e-10
        ok &= canon.max_residual < 1e-12 and indep.max_residual < 1e-12 and checks["almost_kaehler.closed"].passed
        parts.append(f"c={c:g}: herm={herm.max_residual:.1e} J2={jsq.max_residual:.1e} phi={canon.max_residual:.1e}")
    record_acceptance(1, "almost-Kahler", ok, "; ".join(parts))
    assert ok


def test_criterion_2_integrability():
    ok, parts = True, []
    for c, A in ((-1.0, 1.0), (0.0, 1.0), (1.0, 2.0)):
        checks = by_name(suite_integrability(context(3, c, A)))
        van = checks["integrability.analytic_vanishes"]
        agree = checks["integrability.oracle_agreement"]
        wit = checks["integrability.nonintegrable_witness"]
        ok &= van.max_residual < 1e-9 and agree.max_residual < 1e-4 and agree.samples >= 20
        ok &= wit.bound == "lower" and wit.max_residual > 1e-2 and wit.samples > 0
        parts.append(f"c={c:g}: N={van.max_residual:.1e} oracle={agree.max_residual:.1e} witness>={wit.max_residual:.3f}")
    record_acceptance(2, "integrability", ok, "; ".join(parts))
    assert ok


def test_criterion_3_connection():
    checks = by_name(suite_connection(context(3, -1.0, 1.0)))
    kos = checks["connection.koszul_agreement"]
    ok = kos.samples == 60 and kos.max_residual < 1e-4
    ok &= checks["connection.expanded_vs_generic"].max_residual < 1e-9
    ok &= checks["connection.torsion"].max_residual < 1e-4
    ok &= checks["connection.metric_compatibility"].max_residual < 1e-4
    ok &= checks["connection.kahler"].max_residual < 1e-4 and checks["connection.kahler"].samples > 0
    names = ["connection.koszul_agreement", "connection.expanded_vs_generic", "connection.torsion", "connection.metric_compatibility", "connection.kahler"]
    record_acceptance(3, "connection", ok, summarise(checks, names))
    assert ok


def test_criterion_4_ricci():
    checks = by_name(suite_ricci(context(3, -1.0, 1.0)))
    cvt = checks["ricci.closed_vs_trace"]
    terms = cvt.details["term_max_relative_error"]
    ok = cvt.max_residual < 1e-6 and checks["ricci.cross_block"].max_residual < 1e-8
    ok &= set(terms) == {"RicQQ.g", "RicQQ.pp", "RicPP.g_inv", "RicPP.g0g0"} and max(terms.values()) < 1e-6
    ok &= all(v > 0 for v in cvt.details["points_per_profile"].values())
    record_acceptance(4, "ricci", ok, summarise(checks, ["ricci.closed_vs_trace", "ricci.cross_block"]) + f", worst term={max(terms.values()):.1e}")
    assert ok


def test_criterion_5_einstein():
    ok, parts = True, []
    for c, A in ((-1.0, 1.0), (1.0, 2.0)):
        for n in (2, 3, 5):
            checks = by_name(suite_einstein(context(n, c, A)))
            prop = checks["einstein.proportional"]
            ok &= prop.samples >= 100 and prop.max_residual < 1e-6
            ok &= checks["einstein.gamma_grid"].max_residual <= 1e-10
            ok &= checks["einstein.gamma_off_solution"].passed
            if c > 0:
                ok &= checks["einstein.tube"].max_residual < 1.0
            parts.append(f"(c={c:g},A={A:g},n={n}) {prop.max_residual:.1e}")
    record_acceptance(5, "einstein", ok, "; ".join(parts))
    assert ok


@pytest.mark.parametrize("c,A,lam,k", [(-1.0, 1.0, -4.0, -2.0), (1.0, 2.0, 2.0, 1.0)])
def test_criterion_6_holomorphic(c, A, lam, k):
    ctx = context(3, c, A)
    checks = by_name(suite_holomorphic(ctx))
    sect = checks["holomorphic.sectional"]
    ok = checks["holomorphic.closed_blocks"].max_residual < 1e-6 and checks["holomorphic.model_tensor"].max_residual < 1e-6
    ok &= sect.samples >= 100 and sect.details["spread"] < 1e-5 and abs(sect.details["mean"] - k) < 1e-5
    ok &= ctx.params.einstein_constant == lam and ctx.params.holomorphic_curvature == k
    record_acceptance(
        6, f"holomorphic (c={c:g}, A={A:g})", ok, f"k={sect.details['mean']:.12f} spread={sect.details['spread']:.1e} lambda={lam:g}"
    )
    assert ok


def test_criterion_7_ode():
    ok, parts = True, []
    for c, A in ((-1.0, 1.0), (0.0, 1.0), (1.0, 2.0)):
        checks = by_name(suite_ode(context(3, c, A)))
        res, sing = checks["ode.einstein_residual"], checks["ode.singular_solutions"]
        ok &= res.max_residual < 1e-10 and sing.max_residual == 0.0 and "note" in sing.details
        parts.append(f"c={c:g}: {res.max_residual:.1e}")
    record_acceptance(7, "ode", ok, "; ".join(parts))
    assert ok


def test_criterion_8_golden(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--n", "3", "--c", "-1", "--A", "1", "--suites", "all", "--samples", "100", "--seed", "42", "--output", str(out)])
    ok = code == 0 and out.read_bytes() == GOLDEN.read_bytes()
    record_acceptance(8, "reproducibility", ok, f"exit={code}, {len(out.read_bytes())} bytes vs golden {len(GOLDEN.read_bytes())}")
    assert ok
