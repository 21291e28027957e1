"""Invariant suites run by ``polybergman verify``.

Each suite returns a list of ``Check`` records. A check compares one
measured quantity against a pinned tolerance; ``value`` is the measured
error (or margin) and ``tolerance`` the bound it must respect.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import algebras, kernels, projections, specfun, spectral, transforms
from .quadrature import PlaneRule, adaptive_halfline
from .symbols import a0_symbol, canonical_family, make_indicator

SUITES = ("specfun", "spectral", "projections", "kernels", "algebras", "transforms")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    value: float
    tolerance: float


def _below(suite, name, value, tol):
    value = float(value)
    return Check(suite, name, bool(value <= tol), value, tol)


def thread_count():
    """Parallelism cap from POLYBERGMAN_THREADS (default 1)."""
    raw = os.environ.get("POLYBERGMAN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _laplace_quadrature(p):
    value, _ = adaptive_halfline(
        lambda t: t * np.exp(-p * t) * np.sqrt(-np.expm1(-2.0 * t)),
        decay=p.real, tol=1e-14)
    return complex(value)


def suite_specfun(n, alpha, scale=1.0):
    s = "specfun"
    out = [
        _below(s, "digamma(1) = -euler", abs(specfun.digamma(1.0) + specfun.EULER_GAMMA), 1e-12),
        _below(s, "beta(1) = ln 2", abs(specfun.nielsen_beta(1.0) - math.log(2.0)), 1e-10),
        _below(s, "beta(1/2) = pi/2", abs(specfun.nielsen_beta(0.5) - 0.5 * math.pi), 1e-10),
        _below(s, "J(1) = pi/4", abs(specfun.laplace_J(1.0) - 0.25 * math.pi), 1e-10),
        _below(s, "J(2) = 1/3", abs(specfun.laplace_J(2.0) - 1.0 / 3.0), 1e-10),
        _below(s, "J(4) = 2/15", abs(specfun.laplace_J(4.0) - 2.0 / 15.0), 1e-10),
    ]
    for p in (1.5, 2.0, 3.0, 7.0, 3.0 + 2.0j):
        p = complex(p)
        exact = specfun.laplace_tJ(p)
        out.append(_below(s, f"laplace_tJ({p:g}) vs quadrature",
                          abs(exact - _laplace_quadrature(p)) / abs(exact), 1e-8))
    z = np.array([0.3 + 0.7j, 2.5 - 1.0j, -3.4 + 0.2j, 12.0 + 5.0j])
    rec = specfun.digamma(z + 1.0) - specfun.digamma(z) - 1.0 / z
    out.append(_below(s, "digamma recurrence", np.max(np.abs(rec)), 1e-12))
    refl = (specfun.digamma(1.0 - z) - specfun.digamma(z)) - np.pi / np.tan(np.pi * z)
    out.append(_below(s, "digamma reflection", np.max(np.abs(refl)), 1e-11))
    zb = 1.3 + 0.8j
    out.append(_below(s, "beta vs alternating series",
                      abs(specfun.nielsen_beta(zb) - specfun.nielsen_beta_series(zb)), 1e-9))
    gram, _ = adaptive_halfline(
        lambda y: (lambda t: t[:, None, :] * t[None, :, :])(specfun.laguerre_table(n - 1, y)),
        decay=1.0, cutoff=spectral._laguerre_cutoff(n - 1), tol=1e-14)
    out.append(_below(s, f"ell_0..ell_{n - 1} orthonormal",
                      np.max(np.abs(np.real(gram) - np.eye(n))), 1e-12))
    return out


def suite_spectral(n, alpha, scale=1.0):
    s = "spectral"
    xs = np.geomspace(0.02, 20.0, 12)
    fam = canonical_family(n)
    worst = 0.0
    for k, a in enumerate(fam, start=1):
        for x in xs:
            closed = spectral.gamma_indicator_closed(k, n, x)
            worst = max(worst, abs(spectral.gamma_true(1, a, x) - closed))
    out = [_below(s, "canonical family closed form vs quadrature", worst, 1e-9)]
    total = sum(spectral.gamma_indicator_closed(k, n, xs) for k in range(1, n + 1))
    out.append(_below(s, "canonical family partition of unity", np.max(np.abs(total - 1.0)), 1e-12))
    a0 = a0_symbol(alpha)
    x = 0.5
    diff = np.max(np.abs(spectral.gamma_matrix(n, a0, x).entries
                         - spectral.gamma_a0_matrix(n, alpha, x).entries))
    out.append(_below(s, "gamma^{n,a0} incomplete-gamma form vs quadrature", diff, 1e-10))
    # near 0 the error is int_0^{alpha x} |N_n|^2 ~ alpha x n
    at_zero, at_inf = spectral.boundary_limits(n, a0)
    small, large = 1e-4, 1e4
    err0 = np.linalg.norm(spectral.gamma_a0_matrix(n, alpha, small).entries - at_zero)
    errinf = np.linalg.norm(spectral.gamma_a0_matrix(n, alpha, large).entries - at_inf)
    out.append(_below(s, "a0 limit at 0 within alpha*x*n", err0, 1.01 * alpha * small * n))
    out.append(_below(s, "a0 limit at infinity", errinf, 1e-12))
    ind = make_indicator(0.5, 1.5)
    at_zero, at_inf = spectral.boundary_limits(n, ind)
    err = np.linalg.norm(spectral.gamma_matrix(n, ind, small).entries - at_zero)
    out.append(_below(s, "indicator [0.5, 1.5) limit at 0", err, 1.01 * 2 * small * n))
    return out


def suite_projections(n, alpha, scale=1.0):
    s = "projections"
    xs = np.geomspace(1e-3, 1e3, 40)
    idem = sym = rank = 0.0
    for x in xs:
        p = projections.p_gamma(n, x)
        idem = max(idem, p.idempotency_defect())
        sym = max(sym, p.symmetry_defect())
        rank = max(rank, abs(np.trace(p.entries) - 1.0))
    e = np.eye(n)
    out = [
        _below(s, "P_gamma idempotent", idem, 1e-12),
        _below(s, "P_gamma symmetric", sym, 1e-12),
        _below(s, "P_gamma trace one", rank, 1e-12),
        _below(s, "P_gamma(0) = E_nn exactly",
               np.max(np.abs(projections.p_gamma(n, 0.0).entries - np.outer(e[-1], e[-1]))), 0.0),
        _below(s, "P_gamma(inf) = E_11 exactly",
               np.max(np.abs(projections.p_gamma(n, math.inf).entries - np.outer(e[0], e[0]))), 0.0),
    ]
    report = projections.generic_position_certificate(
        n, spectral.CompactifiedGrid.log(0.01, 100.0, 200))
    out.append(_below(s, "generic-position certificate |M_n| - 1", report.max_norm_defect, 1e-12))
    return out


def _sample_points():
    return [0.2j, 1.0j, 0.7 + 0.5j, -1.5 + 2.0j, 3.0 + 0.3j]


def suite_kernels(n, alpha, scale=1.0):
    s = "kernels"
    pts = _sample_points()
    rel = herm = 0.0
    for z in pts[:3]:
        for w in pts[2:]:
            a = kernels.kernel_PT(n, z, w).entries
            b = kernels.kernel_PT_oracle(n, z, w).entries
            rel = max(rel, np.max(np.abs(a - b) / np.abs(a)))
            herm = max(herm, np.max(np.abs(a - kernels.kernel_PT(n, w, z).entries.conj().T)))
    out = [_below(s, "closed form vs oracle (relative)", rel, 1e-6),
           _below(s, "Hermitian symmetry", herm, 1e-10)]
    big = np.block([[kernels.kernel_PT(n, zi, zj).entries for zj in pts] for zi in pts])
    big = 0.5 * (big + big.conj().T)
    out.append(_below(s, "Gram matrix min eigenvalue (negated)",
                      -np.min(np.linalg.eigvalsh(big)), 1e-10))
    lap = 0.0
    for j in range(1, n):
        for z in pts[:3]:
            lap = max(lap, abs(kernels.kernel_jn(j, n, z, 1j)
                               - kernels.kernel_jn(j, n, z, 1j, via="laplace")))
    out.append(_below(s, "K_jn beta path vs laplace path", lap, 1e-12))
    dual = 0.0
    for z, w in [(1j, 1 + 2j), (0.5 + 0.4j, -0.3 + 1.1j), (2.0 + 0.6j, 0.3j)]:
        q = kernels.kernel_Kgamma(n, z, w)
        dual = max(dual, abs(q - kernels.kernel_Kgamma(n, z, w, method="phi-representation")))
    out.append(_below(s, "K^gamma phi-representation vs quadrature", dual, 1e-8))
    z, w = 0.4 + 0.9j, -1.0 + 0.3j
    g0 = kernels.g_kernel(0, z, w)
    red = max(abs(kernels.kernel_PT(1, z, w)[1, 1] - g0), abs(kernels.kernel_Kgamma(1, z, w) - g0))
    out.append(_below(s, "n = 1 reduces to the Bergman kernel", red, 1e-10))
    a = transforms.HalfLineProfile(lambda t: t * np.exp(-t), 1.0)
    res = kernels.reproducing_check(max(n, 2), a, 1j, PlaneRule())
    out.append(_below(s, "reproducing property at z = i", res.residual, 1e-3))
    return out


def suite_algebras(n, alpha, scale=1.0):
    s = "algebras"
    n = max(n, 2)
    rng = np.random.default_rng(20240601)
    grid = spectral.CompactifiedGrid.log(0.05, 20.0, 8)
    worst_p = worst_t = 0.0
    for _ in range(40):
        w = algebras.random_word(rng, "projection", n)
        worst_p = max(worst_p, algebras.membership(
            algebras.sample_word(w, n, alpha, grid), "D_n^{1,n}").residual)
        w = algebras.random_word(rng, "toeplitz", n)
        worst_t = max(worst_t, algebras.membership(
            algebras.sample_word(w, n, alpha, grid), "D_n").residual)
    out = [_below(s, "projection words lie in D_n^{1,n}", worst_p, 1e-10),
           _below(s, "Toeplitz words lie in D_n", worst_t, 1e-10)]
    fails = 0
    for alphabet in algebras.ALPHABETS:
        for _ in range(20):
            s1, s2 = algebras.random_distinct_pair(rng, n, alphabet)
            try:
                algebras.separate(s1, s2, alphabet, n, alpha, max_len=5)
            except algebras.NotSeparableError:
                fails += 1
    out.append(_below(s, "separation failures among 40 random pairs", fails, 0))
    e = np.eye(n)
    f0 = algebras.pure_state_apply(algebras.PureState(0.0, e[0]), projections.p_gamma(n, 0.0).entries)
    finf = algebras.pure_state_apply(algebras.PureState(math.inf, e[0]),
                                     projections.p_gamma(n, math.inf).entries)
    out.append(_below(s, "f_{0,e_1}(P_gamma) = 0 and f_{inf,e_1}(P_gamma) = 1",
                      max(abs(f0), abs(finf - 1.0)), 0.0))
    return out


def _roundtrip_case(n):
    comps = [lambda t, c=c: t * t * np.exp(-(1.0 + 0.25 * c) * t) * (1.0 - 0.3 * c * t)
             for c in range(n)]
    return transforms.vector_profile(comps, 1.0)


def suite_transforms(n, alpha, scale=1.0):
    s = "transforms"
    rule = PlaneRule()
    f = _roundtrip_case(n)
    xs = np.array([0.5, 1.0, 2.0])
    exact = np.array([p(xs) for p in f])
    image = transforms.apply_Rn_star_grid(n, f, rule)
    back = transforms.apply_Rn(n, image, xs, rule)
    out = [_below(s, "R_n R_n^* f = f", np.max(np.abs(back - exact)) / np.max(np.abs(exact)),
                  1e-2 * scale)]
    ratio = transforms.plane_norm(image, rule) / transforms.halfline_norm(list(f))
    out.append(_below(s, "|R_n^* f| / |f| - 1", abs(ratio - 1.0), 1e-2 * scale))
    a = transforms.HalfLineProfile(lambda t: t * np.exp(-(t - 1.0) ** 2), 1.0)
    h = transforms.build_image_element_grid(n, a, rule)
    ratio = transforms.plane_norm(h, rule) / transforms.halfline_norm(a)
    out.append(_below(s, "isometry on the image of P_T", abs(ratio - 1.0), 1e-2 * scale))
    # <R_n^* f, phi>_plane against <f, R_n phi>_halfline for phi = R_n^* g
    g = transforms.vector_profile([lambda t, c=c: t * np.exp(-(1.5 + c) * t) for c in range(n)])
    phi = transforms.apply_Rn_star_grid(n, g, rule)
    u, wu, v, wv = rule.nodes()
    lhs = wu @ (image * phi.conj()) @ wv
    rhs, _ = adaptive_halfline(
        lambda t: np.sum(np.array([p(t) for p in f])
                         * np.conj(transforms.apply_Rn(n, phi, t, rule)), axis=0),
        decay=1.0, tol=1e-10, start_panels=8, max_panels=64)
    out.append(_below(s, "adjoint consistency", abs(lhs - rhs) / abs(lhs), 1e-2 * scale))
    fg, _ = adaptive_halfline(
        lambda t: np.sum(np.array([p(t) for p in f]) * np.conj(np.array([q(t) for q in g])), axis=0),
        decay=2.0, tol=1e-14)
    out.append(_below(s, "<R_n^* f, R_n^* g> = <f, g>", abs(lhs - fg) / abs(fg), 1e-2 * scale))
    return out


SUITE_FUNCS = {
    "specfun": suite_specfun,
    "spectral": suite_spectral,
    "projections": suite_projections,
    "kernels": suite_kernels,
    "algebras": suite_algebras,
    "transforms": suite_transforms,
}


def run_suites(names, n, alpha, scale=1.0):
    """Run the named suites (``all`` expands) and return checks in suite order."""
    if "all" in names:
        names = SUITES
    for name in names:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(lambda name: SUITE_FUNCS[name](n, alpha, scale), names))
    return [check for group in results for check in group]
