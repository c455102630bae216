"""Verification suites over sampled phase points.

Each suite returns a list of :class:`~cotangent_kahler.report.Check`. Residuals
compared against FD oracles or closed forms are measured with
``max|a - b| / max(1, max|b|)`` unless a check says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fd
from .bundle import canonical_symplectic, j_coordinate, radial_coefficients, lift_blocks, metric_full
from .connection import (
    CurvatureBlocks,
    _blocks_from,
    _generic_coeffs,
    assemble_connection,
    conn_coeffs_expanded,
    curvature_fd_oracle,
    gamma_and_diffs,
    kahler_residual,
    koszul_adapted,
    metric_compatibility_residual,
    point_geometry,
    ricci_closed_forms,
    ricci_coefficients,
    ricci_from_blocks,
    ricci_from_full,
    torsion_residual,
)
from .errors import DomainError, InputError, SingularProfileError
from .frame import PhasePoint
from .nijenhuis import nijenhuis_analytic, nijenhuis_oracle
from .profile import (
    Constant,
    EinsteinProfileParams,
    LiftProfile,
    Polynomial,
    SqrtFamily,
    closed_form_vw,
    einstein_u,
    ode_residual,
)
from .report import Check
from .spaceform import SpaceFormParams, metric_at

SUITES = ("ode", "almost_kaehler", "integrability", "connection", "ricci", "einstein", "holomorphic")

DEFAULT_TOLERANCES = {
    "ode.einstein_residual": 1e-10,
    "ode.singular_solutions": 1e-12,
    "ode.derivative_consistency": 1e-5,
    "ode.closed_form_vw": 1e-10,
    "ode.positivity_identity": 1e-10,
    "ode.integrability_scalar": 1e-10,
    "almost_kaehler.hermitian": 1e-10,
    "almost_kaehler.j_squared": 1e-10,
    "almost_kaehler.symplectic_canonical": 1e-12,
    "almost_kaehler.profile_independence": 1e-12,
    "almost_kaehler.closed": 1e-9,
    "integrability.analytic_vanishes": 1e-9,
    "integrability.oracle_agreement": 1e-4,
    "integrability.nonintegrable_witness": 1e-2,
    "integrability.perturbation_detected": 1e-9,
    "integrability.sasaki_degenerate": 1e-9,
    "connection.koszul_agreement": 1e-4,
    "connection.expanded_vs_generic": 1e-9,
    "connection.torsion": 1e-4,
    "connection.metric_compatibility": 1e-4,
    "connection.kahler": 1e-4,
    "connection.curvature_fd": 1e-3,
    "ricci.closed_vs_trace": 1e-6,
    "ricci.cross_block": 1e-8,
    "ricci.symmetry": 1e-8,
    "ricci.gamma_factored": 1e-6,
    "einstein.proportional": 1e-6,
    "einstein.cross_block": 1e-8,
    "einstein.tube": 1.0,
    "einstein.fd_route": 1e-3,
    "einstein.gamma_grid": 1e-10,
    "einstein.gamma_off_solution": 1e-6,
    "holomorphic.closed_blocks": 1e-6,
    "holomorphic.model_tensor": 1e-6,
    "holomorphic.sectional": 1e-5,
}

PERTURBATION = 0.05


def rel_err(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))


@dataclass(frozen=True)
class SampleSpec:
    seed: int = 42
    count: int = 100
    q_radius: float | None = None
    t_range: tuple = (0.0, 4.0)
    guard: float = 0.2
    oracle_count: int = 20

    def __post_init__(self):
        if self.count < 1 or self.oracle_count < 1:
            raise InputError("sample counts must be positive")
        lo, hi = self.t_range
        if not (0.0 <= lo < hi):
            raise InputError(f"t_range must satisfy 0 <= lo < hi, got {self.t_range}")
        if self.guard < 0:
            raise InputError("guard must be non-negative")


def clipped_t_range(params: EinsteinProfileParams | None, c: float, spec: SampleSpec) -> tuple[float, float, bool]:
    """Sampling interval for t; for c > 0 it stops ``guard`` short of the tube bound A^2/(2c).

    Then |p|^2 = 2t < A^2/c - 2 guard, so the samples also keep ``guard`` away from the tube in |p|^2.
    """
    lo, hi = map(float, spec.t_range)
    clipped = False
    if params is not None and c > 0:
        tube = params.A**2 / (2.0 * c) - spec.guard
        if tube < hi:
            hi, clipped = tube, True
    if hi <= lo:
        raise DomainError(f"empty admissible t-range [{lo:g}, {hi:g})")
    return lo, hi, clipped


def sample_phase_points(base: SpaceFormParams, params: EinsteinProfileParams | None, spec: SampleSpec) -> list[PhasePoint]:
    """Deterministic points: q uniform in a ball, p direction uniform, t uniform, p rescaled to hit t."""
    lo, hi, _ = clipped_t_range(params, base.c, spec)
    radius = base.default_radius() if spec.q_radius is None else spec.q_radius
    if base.c < 0 and radius >= 2.0 / np.sqrt(-base.c):
        raise DomainError(f"q_radius {radius:g} leaves the chart")
    rng = np.random.default_rng(spec.seed)
    points = []
    for _ in range(spec.count):
        d = rng.normal(size=base.n)
        q = d / np.linalg.norm(d) * radius * rng.uniform() ** (1.0 / base.n)
        direction = rng.normal(size=base.n)
        direction /= np.linalg.norm(direction)
        t = rng.uniform(lo, hi)
        _, g_inv = metric_at(q, base)
        p = direction * np.sqrt(2.0 * t / (direction @ g_inv @ direction))
        points.append(PhasePoint(q, p))
    return points


@dataclass
class Context:
    """Shared state for one verification run."""

    base: SpaceFormParams
    params: EinsteinProfileParams
    spec: SampleSpec = field(default_factory=SampleSpec)
    tolerances: dict = field(default_factory=dict)
    profile: LiftProfile | None = None

    def __post_init__(self):
        tol = dict(DEFAULT_TOLERANCES)
        unknown = set(self.tolerances) - set(tol)
        if unknown:
            raise InputError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(self.tolerances)
        if any(v <= 0 for v in tol.values()):
            raise InputError("tolerances must be positive")
        self.tolerances = tol
        if self.profile is None:
            self.profile = LiftProfile.einstein(self.params.A, self.base.c)
        self.points = sample_phase_points(self.base, self.params, self.spec)
        self.t_lo, self.t_hi, self.clipped = clipped_t_range(self.params, self.base.c, self.spec)

    @property
    def oracle_points(self) -> list[PhasePoint]:
        return self.points[: self.spec.oracle_count]

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.spec.seed, stream])

    def check(self, name: str, claim: str, bound: str = "upper") -> Check:
        return Check(name, claim, tolerance=self.tolerances[name], bound=bound)

    def t_grid(self, num: int = 201) -> np.ndarray:
        return np.linspace(self.t_lo, self.t_hi, num)

    @property
    def einstein(self) -> LiftProfile:
        return LiftProfile.einstein(self.params.A, self.base.c)

    def test_profiles(self) -> list[LiftProfile]:
        """Einstein, a non-Einstein integrable and a non-integrable profile, all admissible on the samples."""
        return [
            self.einstein,
            LiftProfile.integrable(Polynomial((2.0, 0.1)), self.base.c, "integrable-2+0.1t"),
            LiftProfile.explicit(Polynomial((1.0, 0.3, 0.1)), Constant(0.2), "explicit-nonintegrable"),
        ]


def _admissible(profile: LiftProfile, pt: PhasePoint, base: SpaceFormParams) -> bool:
    try:
        lift_blocks(pt, base, profile)
    except DomainError:
        return False
    return True


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_ode(ctx: Context) -> list[Check]:
    params, c = ctx.params, ctx.base.c
    grid = ctx.t_grid()
    res = ctx.check("ode.einstein_residual", "u = A + sqrt(A^2 - 2ct) solves u^2u'' - 2tu'^3 + 2uu'^2 = 0")
    for t in grid:
        u, du, d2u, _ = einstein_u(params, t)
        scale = abs(u * u * d2u) + abs(2 * t * du**3) + abs(2 * u * du * du)
        res.add(abs(ode_residual(u, du, d2u, t)) / max(scale, np.finfo(float).tiny))

    sing = ctx.check("ode.singular_solutions", "u = A and u = At solve the same equation")
    sing.details = {"note": "checked only; excluded from downstream suites"}
    for t in grid:
        sing.add(abs(ode_residual(params.A, 0.0, 0.0, t)))
        sing.add(abs(ode_residual(params.A * t, params.A, 0.0, t)))

    der = ctx.check("ode.derivative_consistency", "u', u'', u''' agree with central differences of u")
    # the closed form extends smoothly a little below t = 0, so stencils may cross it
    u_fn = lambda s: params.A + np.sqrt(params.A**2 - 2.0 * c * s)  # noqa: E731
    for t in grid[grid > 0.0]:
        exact = einstein_u(params, t)
        # steps proportional to the length scale s^2 / 2|c| on which u varies
        length = (params.A**2 - 2 * c * t) / (2 * abs(c)) if c else 1.0
        for k, kappa in ((1, 1e-3), (2, 2e-3), (3, 1e-2)):
            approx = fd.derivative(u_fn, t, kappa * length / (1 + t), k)
            der.add(abs(approx - exact[k]) / max(abs(exact[k]), 1e-300) if exact[k] else abs(approx))

    cf = ctx.check("ode.closed_form_vw", "closed-form v, w equal the integrability and inverse-entry relations")
    pos = ctx.check("ode.positivity_identity", "u + 2tv = 2(A^2 - 2ct)/A = (2ct - u^2)/(2tu' - u)")
    fsc = ctx.check("ode.integrability_scalar", "v(2tu' - u) + uu' = c")
    prof = ctx.einstein
    for t in grid:
        vals = prof.values(t)
        v, w = closed_form_vw(params, t)
        cf.add(max(abs(v - vals.v) / max(1.0, abs(vals.v)), abs(w - vals.w) / max(1.0, abs(vals.w))))
        s = vals.u + 2 * t * vals.v
        target = 2 * (params.A**2 - 2 * c * t) / params.A
        alt = (2 * c * t - vals.u**2) / (2 * t * vals.du - vals.u)
        pos.add(max(abs(s - target), abs(s - alt)) / max(1.0, abs(target)))
        fsc.add(abs(prof.integrability_scalar(t) - c) / max(1.0, abs(c)))
    return [res, sing, der, cf, pos, fsc]


def _random_profile(ctx: Context, rng: np.random.Generator) -> LiftProfile:
    if rng.uniform() < 0.5:
        coeffs = (rng.uniform(0.5, 2.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.3))
        return LiftProfile.explicit(Polynomial(coeffs), Constant(rng.uniform(0.0, 0.5)))
    return LiftProfile.einstein(ctx.params.A * rng.uniform(1.0, 2.0), ctx.base.c)


def _phi_coordinate(base, profile):
    def phi(z):
        pt = PhasePoint.from_z(z)
        return metric_full(pt, base, profile).M @ j_coordinate(pt, base, profile)

    return phi


def suite_almost_kaehler(ctx: Context) -> list[Check]:
    base = ctx.base
    rng = ctx.rng(1)
    omega = canonical_symplectic(base.n)
    herm = ctx.check("almost_kaehler.hermitian", "G(JX, JY) = G(X, Y)")
    jsq = ctx.check("almost_kaehler.j_squared", "J^2 = -I")
    canon = ctx.check("almost_kaehler.symplectic_canonical", "G(X, JY) = dp ^ dq (coordinate and adapted frames)")
    indep = ctx.check("almost_kaehler.profile_independence", "fundamental form does not depend on (u, v)")
    closed = ctx.check("almost_kaehler.closed", "d phi = 0")
    for k, pt in enumerate(ctx.points):
        prof, other = _random_profile(ctx, rng), _random_profile(ctx, rng)
        M = metric_full(pt, base, prof).M
        J = j_coordinate(pt, base, prof)
        herm.add(rel_err(J.T @ M @ J, M))
        jsq.add(np.max(np.abs(J @ J + np.eye(2 * base.n))))
        blocks = lift_blocks(pt, base, prof)
        phi = M @ J
        canon.add(max(np.max(np.abs(phi - omega)), np.max(np.abs(blocks.metric() @ blocks.complex_structure() - omega))))
        phi_other = metric_full(pt, base, other).M @ j_coordinate(pt, base, other)
        indep.add(np.max(np.abs(phi - phi_other)))
        if k < ctx.spec.oracle_count:
            dphi = fd.jacobian(_phi_coordinate(base, prof), pt.z)  # dphi[a, b, c] = d_a phi_bc
            ext = dphi + np.einsum("bca->abc", dphi) + np.einsum("cab->abc", dphi)
            closed.add(np.max(np.abs(ext)))
    return [herm, jsq, canon, indep, closed]


def _generic_points(ctx: Context) -> list[PhasePoint]:
    """Oracle-sized subset of samples away from the zero section."""
    cut = ctx.t_lo + 0.25 * (ctx.t_hi - ctx.t_lo)
    pts = [pt for pt in ctx.points if lift_blocks(pt, ctx.base, ctx.einstein).t >= cut]
    return pts[: ctx.spec.oracle_count]


def suite_integrability(ctx: Context) -> list[Check]:
    base, c = ctx.base, ctx.base.c
    integrable = [ctx.einstein, LiftProfile.integrable(Polynomial((2.0, 1.0)), c, "integrable-2+t")]
    van = ctx.check("integrability.analytic_vanishes", "Nijenhuis components vanish for the integrable v")
    for prof in integrable:
        for pt in ctx.points:
            if _admissible(prof, pt, base):
                van.add(nijenhuis_analytic(pt, base, prof).max_abs)
    van.details = {"profiles": [p.label for p in integrable]}

    agree = ctx.check("integrability.oracle_agreement", "closed-form Nijenhuis components equal [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]")
    oracle_profiles = [ctx.einstein, ctx.einstein.perturbed(PERTURBATION), ctx.test_profiles()[2]]
    for prof in oracle_profiles:
        for pt in ctx.oracle_points:
            if not _admissible(prof, pt, base):
                continue
            a, o = nijenhuis_analytic(pt, base, prof), nijenhuis_oracle(pt, base, prof)
            scale = max(1.0, a.max_abs)
            agree.add(max(np.max(np.abs(x - y)) for x, y in ((a.Ndd, o.Ndd), (a.Ndp, o.Ndp), (a.Npp, o.Npp))) / scale)

    generic = _generic_points(ctx)
    witness = ctx.check("integrability.nonintegrable_witness", "v + 0.05 makes J non-integrable (oracle magnitude)", "lower")
    detected = ctx.check("integrability.perturbation_detected", "v -/+ 0.05 breaks the vanishing of N", "lower")
    pert = ctx.einstein.perturbed(PERTURBATION)
    for pt in generic:
        if _admissible(pert, pt, base):
            witness.add(nijenhuis_oracle(pt, base, pert).max_abs)
        for dv in (-PERTURBATION, PERTURBATION):
            prof = ctx.einstein.perturbed(dv)
            if _admissible(prof, pt, base):
                detected.add(nijenhuis_analytic(pt, base, prof).max_abs)

    sasaki = LiftProfile.explicit(Constant(1.0), Constant(0.0), "sasaki-degenerate")
    if c == 0:
        sas = ctx.check("integrability.sasaki_degenerate", "u = 1, v = 0 is integrable on a flat base")
    else:
        sas = ctx.check("integrability.sasaki_degenerate", "u = 1, v = 0 is not integrable when c != 0", "lower")
    for pt in generic:
        sas.add(nijenhuis_analytic(pt, base, sasaki).max_abs)
    return [van, agree, witness, detected, sas]


def suite_connection(ctx: Context) -> list[Check]:
    base = ctx.base
    profiles = ctx.test_profiles()
    kos = ctx.check("connection.koszul_agreement", "generic Q, P, S equal the six-term Koszul oracle")
    exp = ctx.check("connection.expanded_vs_generic", "expanded Q, P, S equal the generic forms")
    tor = ctx.check("connection.torsion", "nabla_X Y - nabla_Y X = [X, Y]")
    met = ctx.check("connection.metric_compatibility", "nabla G = 0")
    kah = ctx.check("connection.kahler", "nabla J = 0 for integrable lifts")
    curv = ctx.check("connection.curvature_fd", "six curvature blocks equal nested-FD curvature")
    skipped = 0
    fd_cross = 0.0
    for prof in profiles:
        for k, pt in enumerate(ctx.points):
            if not _admissible(prof, pt, base):
                continue
            geo = point_geometry(pt, base, prof)
            gen = _generic_coeffs(geo)
            try:
                e = conn_coeffs_expanded(pt, base, prof)
                exp.add(max(rel_err(e.Q, gen.Q), rel_err(e.P, gen.P), rel_err(e.S, gen.S)))
            except SingularProfileError:
                skipped += 1
            if k >= ctx.spec.oracle_count:
                continue
            kos.add(rel_err(assemble_connection(geo, gen), koszul_adapted(pt, base, prof)))
            # FD residuals scale with the size of the lifted metric near singular profiles
            scale = max(1.0, float(np.max(np.abs(geo.G))), float(np.max(np.abs(geo.H))))
            tor.add(torsion_residual(pt, base, prof) / scale)
            met.add(metric_compatibility_residual(pt, base, prof) / scale)
            if prof.is_integrable_form:
                kah.add(kahler_residual(pt, base, prof) / scale)
            if k < max(1, ctx.spec.oracle_count // 4):
                K_fd = curvature_fd_oracle(pt, base, prof)
                K = _blocks_from(geo, gen).full()
                curv.add(rel_err(K, K_fd))
                fd_cross = max(fd_cross, float(np.max(np.abs(ricci_from_full(K_fd)[base.n :, : base.n]))))
    exp.details = {"skipped_removable_singularity": skipped}
    curv.details = {"fd_ricci_cross_block_max": fd_cross}
    return [kos, exp, tor, met, kah, curv]


def _ricci_profiles(ctx: Context) -> list[LiftProfile]:
    c = ctx.base.c
    B = -c if c != 0 else 1.0
    return [
        LiftProfile.integrable(Polynomial((2.0, 1.0)), c, "integrable-2+t"),
        LiftProfile.integrable(Polynomial((1.0, 0.5, 0.1)), c, "integrable-quadratic"),
        LiftProfile.integrable(SqrtFamily(ctx.params.A, B), c, f"integrable-sqrt-B={B:g}"),
    ]


def _term_errors(geo, trace, closed) -> dict:
    """Split both Ricci blocks into their two radial coefficients and compare them one by one."""
    g, gi, p = geo.g, geo.g_inv, geo.p
    qq_t = radial_coefficients(g, gi, p, trace.RicQQ)
    qq_c = radial_coefficients(g, gi, p, closed.RicQQ)
    # RicPP = x g^-1 + y g0 g0: transvect in the dual roles (g <-> g^-1, p <-> g0)
    pp_t = radial_coefficients(gi, g, geo.g0, trace.RicPP)
    pp_c = radial_coefficients(gi, g, geo.g0, closed.RicPP)
    rel = lambda a, b: abs(a - b) / max(1.0, abs(b))  # noqa: E731
    return {
        "RicQQ.g": rel(qq_c[0], qq_t[0]),
        "RicQQ.pp": rel(qq_c[1], qq_t[1]),
        "RicPP.g_inv": rel(pp_c[0], pp_t[0]),
        "RicPP.g0g0": rel(pp_c[1], pp_t[1]),
    }


def suite_ricci(ctx: Context) -> list[Check]:
    base = ctx.base
    cvt = ctx.check("ricci.closed_vs_trace", "a, alpha, beta closed forms equal the curvature traces")
    cross = ctx.check("ricci.cross_block", "Ric(d^j, delta_k) = 0")
    sym = ctx.check("ricci.symmetry", "RicQQ and RicPP are symmetric")
    gam = ctx.check("ricci.gamma_factored", "DiffQQ, DiffPP equal their gamma-factored forms")
    terms = {}
    per_profile = {}
    for prof in _ricci_profiles(ctx):
        used = 0
        for pt in ctx.points:
            if not _admissible(prof, pt, base):
                continue
            try:
                closed = ricci_closed_forms(pt, base, prof)
                diffs = gamma_and_diffs(pt, base, prof)
            except DomainError:
                continue
            geo = point_geometry(pt, base, prof)
            trace = ricci_from_blocks(_blocks_from(geo, _generic_coeffs(geo)))
            cvt.add(max(rel_err(closed.RicQQ, trace.RicQQ), rel_err(closed.RicPP, trace.RicPP)))
            cross.add(np.max(np.abs(trace.cross)))
            sym.add(max(rel_err(trace.RicQQ, trace.RicQQ.T), rel_err(trace.RicPP, trace.RicPP.T)))
            gam.add(max(rel_err(diffs.DiffQQ_factored, diffs.DiffQQ), rel_err(diffs.DiffPP_factored, diffs.DiffPP)))
            if geo.t > 1e-6:
                for key, val in _term_errors(geo, trace, closed).items():
                    terms[key] = max(terms.get(key, 0.0), val)
            used += 1
        per_profile[prof.label] = used
    cvt.details = {"term_max_relative_error": terms, "points_per_profile": per_profile}
    return [cvt, cross, sym, gam]


def _lambda_target(ctx: Context) -> tuple[float, float]:
    """Einstein constant and holomorphic curvature claimed for the configured profile."""
    prof = ctx.profile
    A = ctx.params.A if prof.label == "einstein" else prof.u(0.0) / 2.0
    n, c = ctx.base.n, ctx.base.c
    return (n + 1) * c / A, 2 * c / A


def suite_einstein(ctx: Context) -> list[Check]:
    base, params, prof = ctx.base, ctx.params, ctx.profile
    lam, _ = _lambda_target(ctx)
    prop = ctx.check("einstein.proportional", "RicQQ = ((n+1)c/A) G, RicPP = ((n+1)c/A) H")
    cross = ctx.check("einstein.cross_block", "Ric(d^j, delta_k) = 0")
    fd_route = ctx.check("einstein.fd_route", "Ric = ((n+1)c/A) G from nested-FD curvature")
    checks = [prop, cross]
    for k, pt in enumerate(ctx.points):
        if not _admissible(prof, pt, base):
            continue
        geo = point_geometry(pt, base, prof)
        ric = ricci_from_blocks(_blocks_from(geo, _generic_coeffs(geo)))
        prop.add(
            max(
                np.max(np.abs(ric.RicQQ - lam * geo.G)) / np.max(np.abs(geo.G)),
                np.max(np.abs(ric.RicPP - lam * geo.H)) / np.max(np.abs(geo.H)),
            )
        )
        cross.add(np.max(np.abs(ric.cross)))
        if k < max(1, ctx.spec.oracle_count // 4):
            Gfull = lift_blocks(pt, base, prof).metric()
            ric_fd = ricci_from_full(curvature_fd_oracle(pt, base, prof))
            fd_route.add(np.max(np.abs(ric_fd - lam * Gfull)) / np.max(np.abs(Gfull)))
    checks.append(fd_route)
    if base.c > 0:
        tube = ctx.check("einstein.tube", "samples satisfy |p|^2 < A^2/c (value is c|p|^2/A^2)")
        for pt in ctx.points:
            _, g_inv = metric_at(pt.q, base)
            tube.add(base.c * (pt.p @ g_inv @ pt.p) / params.A**2)
        checks.append(tube)

    gamma = ctx.check("einstein.gamma_grid", "gamma = 0 along the Einstein profile")
    for t in ctx.t_grid():
        try:
            vals = prof.values(t)
        except DomainError:
            continue
        gamma.add(abs(ricci_coefficients(base.n, base.c, t, vals.u, vals.du, vals.d2u, vals.d3u).gamma))
    B_off = -base.c if base.c != 0 else 1.0
    off = ctx.check("einstein.gamma_off_solution", f"gamma != 0 for u = A + sqrt(A^2 + Bt), B = {B_off:g}", "lower")
    wrong = SqrtFamily(params.A, B_off)
    for t in ctx.t_grid()[1:]:
        try:
            d = wrong.derivs(t)
        except DomainError:
            continue
        off.add(abs(ricci_coefficients(base.n, base.c, t, *d).gamma))
    checks += [gamma, off]
    return checks


def holomorphic_blocks(Gb: np.ndarray, Hb: np.ndarray, c: float, A: float) -> CurvatureBlocks:
    """Curvature blocks of the Einstein lift written through G and H only."""
    n = Gb.shape[0]
    e = np.eye(n)
    f = c / (2.0 * A)
    return CurvatureBlocks(
        PPP=f * (np.einsum("ih,jk->ijkh", e, Hb) - np.einsum("jh,ik->ijkh", e, Hb)),
        PPQ=f * (np.einsum("jk,ih->ijhk", e, Hb) - np.einsum("ik,jh->ijhk", e, Hb)),
        QQP=f * (np.einsum("kj,ih->kijh", e, Gb) - np.einsum("ki,jh->kijh", e, Gb)),
        QQQ=f * (np.einsum("hi,jk->ijkh", e, Gb) - np.einsum("hj,ik->ijkh", e, Gb)),
        PQQ=f * (np.einsum("ih,jk->ijkh", e, Gb) + np.einsum("ik,jh->ijkh", e, Gb) + 2 * np.einsum("ij,kh->ijkh", e, Gb)),
        PQP=-f * (np.einsum("hj,ik->jikh", e, Hb) + np.einsum("kj,ih->jikh", e, Hb) + 2 * np.einsum("ij,kh->jikh", e, Hb)),
    )


def holomorphic_model(k: float, metric: np.ndarray, J: np.ndarray, X, Y, Z) -> np.ndarray:
    """Constant-holomorphic-curvature tensor R(X, Y)Z for metric matrix and J (same frame)."""
    X, Y, Z = map(np.asarray, (X, Y, Z))
    g = lambda a, b: a @ metric @ b  # noqa: E731
    return (k / 4.0) * (
        g(Z, Y) * X - g(Z, X) * Y + g(Z, J @ Y) * (J @ X) - g(Z, J @ X) * (J @ Y) + 2.0 * g(X, J @ Y) * (J @ Z)
    )


def holomorphic_model_full(k: float, metric: np.ndarray, J: np.ndarray) -> np.ndarray:
    """All components ``R[A, B, C, D]`` of the model tensor on basis vectors."""
    e = np.eye(metric.shape[0])
    GJ = metric @ J
    return (k / 4.0) * (
        np.einsum("cb,ad->abcd", metric, e)
        - np.einsum("ca,bd->abcd", metric, e)
        + np.einsum("cb,da->abcd", GJ, J)
        - np.einsum("ca,db->abcd", GJ, J)
        + 2.0 * np.einsum("ab,dc->abcd", GJ, J)
    )


def holomorphic_sectional(K: np.ndarray, metric: np.ndarray, J: np.ndarray, X) -> float:
    """``G(K(X, JX)JX, X) / G(X, X)^2`` with K given as a full component array."""
    JX = J @ X
    KX = np.einsum("abcd,a,b,c->d", K, X, JX, JX)
    return float((KX @ metric @ X) / (X @ metric @ X) ** 2)


def suite_holomorphic(ctx: Context) -> list[Check]:
    base, params, prof = ctx.base, ctx.params, ctx.profile
    _, k = _lambda_target(ctx)
    A = 2.0 * base.c / k if k else params.A
    rng = ctx.rng(7)
    blocks_chk = ctx.check("holomorphic.closed_blocks", "six curvature blocks equal (c/2A)-multiples of G and H")
    model_chk = ctx.check("holomorphic.model_tensor", "K equals the model tensor with k = 2c/A")
    sect = ctx.check("holomorphic.sectional", "G(K(X,JX)JX, X)/G(X,X)^2 = 2c/A for unit X")
    values = []
    for pt in ctx.points:
        if not _admissible(prof, pt, base):
            continue
        geo = point_geometry(pt, base, prof)
        kb = _blocks_from(geo, _generic_coeffs(geo))
        ref = holomorphic_blocks(geo.G, geo.H, base.c, A)
        blocks_chk.add(max(rel_err(getattr(ref, name), getattr(kb, name)) for name in ("PPP", "PPQ", "QQP", "QQQ", "PQQ", "PQP")))
        ab = lift_blocks(pt, base, prof)
        metric, J = ab.metric(), ab.complex_structure()
        K = kb.full()
        model_chk.add(rel_err(holomorphic_model_full(k, metric, J), K))
        X = rng.normal(size=2 * base.n)
        X /= np.sqrt(X @ metric @ X)
        h = holomorphic_sectional(K, metric, J, X)
        values.append(h)
        sect.add(abs(h - k) / max(1.0, abs(k)))
    sect.details = {"k": k, "spread": float(np.max(values) - np.min(values)), "mean": float(np.mean(values))}
    return [blocks_chk, model_chk, sect]


SUITE_FUNCS = {
    "ode": suite_ode,
    "almost_kaehler": suite_almost_kaehler,
    "integrability": suite_integrability,
    "connection": suite_connection,
    "ricci": suite_ricci,
    "einstein": suite_einstein,
    "holomorphic": suite_holomorphic,
}


def run_suites(ctx: Context, suites) -> list[Check]:
    order = [s for s in SUITES if s in set(suites)]
    checks = []
    for name in order:
        checks.extend(SUITE_FUNCS[name](ctx))
    return checks


def einstein_check(base: SpaceFormParams, params: EinsteinProfileParams, spec: SampleSpec, profile: LiftProfile | None = None) -> list[Check]:
    return suite_einstein(Context(base, params, spec, profile=profile))


def holomorphic_check(base: SpaceFormParams, params: EinsteinProfileParams, spec: SampleSpec) -> list[Check]:
    return suite_holomorphic(Context(base, params, spec))
