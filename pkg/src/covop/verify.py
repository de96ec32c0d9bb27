"""Numerical verification of the analytic identities behind the operator
families: covariance under hyperplane-preserving conformal maps, intertwining
of the convolution operators by quadrature, the kernel Fourier pairing, and
the ambient (light-cone) realization.

Every check returns a CheckReport.  Derivatives are taken with jets (exact to
rounding), quadrature-backed checks carry their own truncation/tolerance
budget, and all sampling is seeded, so suite runs are reproducible.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad as _quad

from .algebra import Poly
from .conformal import (ConformalMap, Dilation, GaussianBump, Inversion,
                        PulledBack, SingularPoint, Translation,
                        stereographic, stereographic_factor,
                        tangential_rotation, xi_vars)
from .jets import Jet, coordinate_jets
from .juhl import iterated
from .special import gamma_checked
from . import symbolcalc


class QuadratureBudgetExceeded(Exception):
    """The adaptive quadrature could not reach its requested accuracy."""


@dataclass
class CheckReport:
    """Outcome of one verification: passed iff max_rel_err <= tolerance."""

    name: str
    samples: int
    max_rel_err: float
    tolerance: float
    passed: bool
    diagnostics: str = ""

    @classmethod
    def from_errors(cls, name, errs, tol, diags=None):
        if not errs:
            return cls(name, 0, 0.0, tol, True, "no samples")
        worst = int(np.argmax(errs))
        diag = diags[worst] if diags else f"sample {worst}"
        return cls(name, len(errs), float(errs[worst]), tol,
                   bool(errs[worst] <= tol), diag)

    def to_dict(self):
        return {"name": self.name, "samples": self.samples,
                "max_rel_err": self.max_rel_err, "tolerance": self.tolerance,
                "passed": self.passed, "diagnostics": self.diagnostics}


@dataclass
class AmbientPoint:
    """A point (t, x) of the ambient Lorentzian space R + R^(n+1)."""

    t: float
    x: tuple

    def quadratic_form(self):
        return self.t ** 2 - sum(c * c for c in self.x)

    def on_positive_cone(self, tol=1e-12):
        return self.t > 0 and abs(self.quadratic_form()) <= tol * (1 + self.t ** 2)


def rel_err(a, b):
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


# -- the one-step operator evaluated from a jet ---------------------------------


def one_step_from_jet(n, lam, jet, xi_n):
    """(2*lam - n + 2) d_n u + xi_n * Lap u read off an order-2 jet of u."""
    return (2 * lam - n + 2) * jet.grad[n - 1] + xi_n * jet.laplacian()


def _apply_coeff_table(coeffs, jet):
    total = 0.0
    for alpha, c in coeffs.items():
        if c:
            total = total + c * jet.derivative(alpha)
    return total


# -- seeded sampling -------------------------------------------------------------


def sample_bump(rng, n, near_hyperplane=False):
    center = rng.uniform(-0.8, 0.8, n)
    if near_hyperplane:
        center[n - 1] *= 0.3
    width = float(rng.uniform(0.8, 1.4))
    pre = None
    if rng.uniform() < 0.3:
        i = int(rng.integers(1, n + 1))
        vars_ = xi_vars(n)
        pre = Poly.const(1, vars_) + Poly.variable(f"xi{i}", vars_) * int(rng.integers(-2, 3))
    return GaussianBump(tuple(center), width, pre)


def _generator(rng, n, kind):
    if kind == 0:
        v = rng.uniform(-1.0, 1.0, n)
        v[n - 1] = 0.0
        return Translation(tuple(v))
    if kind == 1:
        return tangential_rotation(n, float(rng.uniform(0.0, 2 * math.pi)))
    if kind == 2:
        return Dilation(float(np.exp(rng.uniform(-0.7, 0.7))))
    return Inversion()


def sample_gprime_word(rng, n, max_len=3, force_kind=None):
    """A random hyperplane-preserving word; force_kind pins a single
    generator so every generator type is guaranteed coverage."""
    if force_kind is not None:
        return ConformalMap(n, [_generator(rng, n, force_kind)])
    length = int(rng.integers(1, max_len + 1))
    return ConformalMap(n, [_generator(rng, n, int(rng.integers(0, 4)))
                            for _ in range(length)])

def sample_point_for(rng, g, f, on_hyperplane=False, tries=100):
    """A point xi where rho_lam(g) f is healthy: xi = g(y) with y inside the
    bump, resampled until no inversion hits its singular guard."""
    n = f.n
    for _ in range(tries):
        y = np.array(f.center) + rng.uniform(-1.0, 1.0, n) * 0.8 * f.width
        if on_hyperplane:
            y[n - 1] = 0.0
        try:
            xi = g.act(tuple(y))
            g.inverse().act_and_factor(xi)
        except SingularPoint:
            continue
        if max(abs(c) for c in xi) > 25.0:
            continue
        xi = tuple(float(c) for c in xi)
        if on_hyperplane:
            xi = xi[:-1] + (0.0,)
        return xi
    raise RuntimeError("could not sample a regular point for this word")


# -- geometric identities ---------------------------------------------------------


def check_cocycle(n, rng, samples=100, tol=1e-12):
    errs, diags = [], []
    made = 0
    while made < samples:
        g1 = sample_gprime_word(rng, n, 2)
        g2 = sample_gprime_word(rng, n, 2)
        xi = tuple(float(c) for c in rng.uniform(-2.0, 2.0, n))
        try:
            lhs = (g1 @ g2).factor(xi)
            rhs = g1.factor(g2.act(xi)) * g2.factor(xi)
        except SingularPoint:
            continue
        errs.append(rel_err(lhs, rhs))
        diags.append(f"xi={xi}")
        made += 1
    return CheckReport.from_errors(f"cocycle_n{n}", errs, tol, diags)


def check_factor_vs_jet(n, rng, samples=100, tol=1e-10):
    """Conformal factor (cocycle product) against the jet-based Jacobian."""
    errs, diags = [], []
    made = 0
    while made < samples:
        g = sample_gprime_word(rng, n, 3)
        xi = tuple(float(c) for c in rng.uniform(-2.0, 2.0, n))
        try:
            k = g.factor(xi)
            comps = [c for c in g.act(coordinate_jets(xi, 1))]
        except SingularPoint:
            continue
        jac = np.array([c.grad if isinstance(c, Jet) else [0.0] * n for c in comps])
        eta = rng.normal(size=n)
        eta /= np.linalg.norm(eta)
        errs.append(rel_err(float(np.linalg.norm(jac @ eta)), k))
        diags.append(f"xi={xi}")
        made += 1
    return CheckReport.from_errors(f"factor_vs_jet_n{n}", errs, tol, diags)


def check_hyperplane_covariance(n, rng, samples=100, tol=1e-12):
    """g(xi)_n = kappa(g, xi) xi_n for hyperplane-preserving g."""
    errs, diags = [], []
    made = 0
    while made < samples:
        g = sample_gprime_word(rng, n, 3)
        xi = rng.uniform(-2.0, 2.0, n)
        if abs(xi[n - 1]) < 0.1:
            xi[n - 1] = 0.3
        xi = tuple(float(c) for c in xi)
        try:
            moved, k = g.act_and_factor(xi)
        except SingularPoint:
            continue
        errs.append(rel_err(moved[n - 1], k * xi[n - 1]))
        diags.append(f"xi={xi}")
        made += 1
    return CheckReport.from_errors(f"hyperplane_covariance_n{n}", errs, tol, diags)


def check_chart_conformality(n, rng, samples=100, tol=1e-10):
    """|Dc(xi) eta| = (2/(1+|xi|^2)) |eta| for the stereographic chart."""
    errs, diags = [], []
    for _ in range(samples):
        xi = tuple(float(c) for c in rng.uniform(-2.0, 2.0, n))
        comps = stereographic(coordinate_jets(xi, 1))
        jac = np.array([c.grad for c in comps])
        eta = rng.normal(size=n)
        eta /= np.linalg.norm(eta)
        errs.append(rel_err(float(np.linalg.norm(jac @ eta)),
                            stereographic_factor(xi)))
        diags.append(f"xi={xi}")
    return CheckReport.from_errors(f"chart_conformality_n{n}", errs, tol, diags)


def check_chord_identity(n, rng, samples=100, tol=1e-12):
    """|c(xi)-c(eta)|^2 = kappa_c(xi) |xi-eta|^2 kappa_c(eta)."""
    errs, diags = [], []
    made = 0
    while made < samples:
        xi = rng.uniform(-2.0, 2.0, n)
        eta = rng.uniform(-2.0, 2.0, n)
        if np.linalg.norm(xi - eta) < 0.3:
            continue
        cx = np.array(stereographic(tuple(xi)))
        ce = np.array(stereographic(tuple(eta)))
        lhs = float(np.sum((cx - ce) ** 2))
        rhs = stereographic_factor(tuple(xi)) * float(np.sum((xi - eta) ** 2)) \
            * stereographic_factor(tuple(eta))
        errs.append(rel_err(lhs, rhs))
        diags.append(f"xi={tuple(float(c) for c in xi)}")
        made += 1
    return CheckReport.from_errors(f"chord_identity_n{n}", errs, tol, diags)


def check_mult_intertwining(n, rng, samples=50, tol=1e-12):
    """xi_n * rho_lam(g) f = rho_(lam-1)(g) (xi_n f), pointwise."""
    errs, diags = [], []
    made = 0
    while made < samples:
        lam = float(rng.uniform(-1.5, 2.5))
        g = sample_gprime_word(rng, n, 3)
        f = sample_bump(rng, n)
        try:
            xi = sample_point_for(rng, g, f)
            lhs = xi[n - 1] * PulledBack(lam, g, f).value(xi)
            rhs = PulledBack(lam - 1, g, f.times_coordinate(n - 1)).value(xi)
        except (SingularPoint, RuntimeError):
            continue
        errs.append(rel_err(lhs, rhs))
        diags.append(f"lam={lam}, xi={xi}")
        made += 1
    return CheckReport.from_errors(f"mult_intertwining_n{n}", errs, tol, diags)


def geometry_suite(n, rng, samples=100, tols=None):
    tols = tols or {}
    return [
        check_cocycle(n, rng, samples, tols.get("cocycle", 1e-12)),
        check_factor_vs_jet(n, rng, samples, tols.get("factor_vs_jet", 1e-10)),
        check_hyperplane_covariance(n, rng, samples,
                                    tols.get("hyperplane_covariance", 1e-12)),
        check_chart_conformality(n, rng, samples,
                                 tols.get("chart_conformality", 1e-10)),
        check_chord_identity(n, rng, samples, tols.get("chord_identity", 1e-12)),
        check_mult_intertwining(n, rng, max(20, samples // 2),
                                tols.get("mult_intertwining", 1e-12)),
    ]


# -- covariance of the operator families ------------------------------------------


def check_covariance_one_step(n, rng, samples=50, tol=1e-9):
    """(one-step at lam) o rho_lam(g) = rho_(lam+1)(g) o (one-step at lam)
    for hyperplane-preserving g, evaluated through jets on both sides."""
    errs, diags = [], []
    made = 0
    while made < samples:
        # the first four samples pin one generator type each
        force = made if made < 4 else None
        lam = float(rng.uniform(-1.5, 2.5))
        g = sample_gprime_word(rng, n, 3, force_kind=force)
        f = sample_bump(rng, n)
        try:
            xi = sample_point_for(rng, g, f)
            uj = PulledBack(lam, g, f).jet(xi, 2)
            lhs = one_step_from_jet(n, lam, uj, xi[n - 1])
            zeta, k = g.inverse().act_and_factor(xi)
            fj = f.jet(zeta, 2)
            rhs = k ** (lam + 1) * one_step_from_jet(n, lam, fj, zeta[n - 1])
        except (SingularPoint, RuntimeError):
            continue
        errs.append(rel_err(lhs, rhs))
        diags.append(f"lam={lam}, word={[type(w).__name__ for w in g.word]}, xi={xi}")
        made += 1
    return CheckReport.from_errors(f"covariance_one_step_n{n}", errs, tol, diags)


def check_covariance_iterated(n, N, rng, samples=20, tol=1e-8):
    """Restricted iterated family: res E(rho_lam(g) f) against the weight
    lam+N action of the induced hyperplane map on res E f."""
    if N > 4:
        raise ValueError("numeric iterated covariance is capped at N = 4")
    restricted = iterated(n, N).restrict()
    order = restricted.order
    errs, diags = [], []
    made = 0
    while made < samples:
        lam = float(rng.uniform(-1.5, 2.5))
        coeffs = restricted.coeffs_at(lam)
        g = sample_gprime_word(rng, n, 3)
        f = sample_bump(rng, n, near_hyperplane=True)
        try:
            xi = sample_point_for(rng, g, f, on_hyperplane=True)
            uj = PulledBack(lam, g, f).jet(xi, order)
            lhs = _apply_coeff_table(coeffs, uj)
            gp = g.restrict_to_hyperplane()
            zeta_p, kp = gp.inverse().act_and_factor(xi[:-1])
            fj = f.jet(zeta_p + (0.0,), order)
            rhs = kp ** (lam + N) * _apply_coeff_table(coeffs, fj)
        except (SingularPoint, RuntimeError):
            continue
        errs.append(rel_err(lhs, rhs))
        diags.append(f"lam={lam}, word={[type(w).__name__ for w in g.word]}, xi={xi}")
        made += 1
    return CheckReport.from_errors(f"covariance_iterated_n{n}_N{N}", errs, tol, diags)


# -- Knapp-Stein intertwining by quadrature ----------------------------------------


def _effective_ball(func):
    """(center, radius) bounding the effective support of a test function or
    of its pullback under an affine map."""
    if isinstance(func, GaussianBump):
        return np.array(func.center), func.effective_radius(1e-18)
    if isinstance(func, PulledBack):
        if not func.g.is_affine():
            raise ValueError("effective support only available for affine words")
        c0, r0 = _effective_ball(func.f)
        center = np.array(func.g.act(tuple(c0)))
        return center, r0 * func.g.factor(tuple(c0))
    raise TypeError(f"unsupported integrand {type(func).__name__}")


def _quad_checked(fn, a, b, quad_tol, scale, points=None):
    out = _quad(fn, a, b, epsabs=quad_tol * scale, epsrel=quad_tol,
                limit=300, points=points, full_output=1)
    if len(out) > 3:
        raise QuadratureBudgetExceeded(str(out[3]))
    return out[0]


def knapp_stein_value(n, lam, func, point, quad_tol=1e-6, radius=None):
    """(1/Gamma(lam - n/2)) * int |point-eta|^(2 lam - 2 n) func(eta) d eta
    over R^n, by adaptive quadrature on a ball that provably contains the
    integrand mass up to the Gaussian tail (n = 1 or 2 only)."""
    if n not in (1, 2):
        raise ValueError("quadrature-backed intertwining checks cover n = 1, 2")
    if not (lam > n / 2):
        raise ValueError("absolute convergence needs lam > n/2")
    point = tuple(point)
    if radius is None:
        center, r0 = _effective_ball(func)
        radius = float(np.linalg.norm(np.array(point) - center)) + r0 + 1.0
    norm = 1.0 / gamma_checked(lam - n / 2.0)
    s = 2.0 * lam - 2.0 * n
    if n == 1:
        x = point[0]

        def integrand(eta):
            d = abs(x - eta)
            if d == 0.0:
                return 0.0
            return d ** s * func.value((eta,))

        val = _quad_checked(integrand, x - radius, x + radius, quad_tol,
                            max(1.0, radius), points=[x])
        return norm * val

    # n == 2: polar coordinates about the singular point
    x1, x2 = point

    def ring_mean(r):
        k = 32
        prev = None
        while True:
            theta = np.linspace(0.0, 2.0 * math.pi, k, endpoint=False)
            vals = func.eval_generic([x1 + r * np.cos(theta), x2 + r * np.sin(theta)])
            cur = float(np.mean(vals)) * 2.0 * math.pi
            if prev is not None and abs(cur - prev) <= quad_tol * 0.1 * max(1.0, abs(cur)):
                return cur
            if k >= 4096:
                raise QuadratureBudgetExceeded("angular average did not settle")
            prev = cur
            k *= 2

    def outer(r):
        if r == 0.0:
            return 0.0
        return r ** (s + 1.0) * ring_mean(r)

    val = _quad_checked(outer, 0.0, radius, quad_tol, max(1.0, radius))
    return norm * val


def check_ks_intertwining(n, lam, g, f, points, quad_tol=1e-6, tol=1e-5):
    """Convolution intertwiner applied to the twisted pullback against the
    weight n-lam pullback of the transformed function."""
    errs, diags = [], []
    pulled = PulledBack(lam, g, f)
    for xi in points:
        lhs = knapp_stein_value(n, lam, pulled, xi, quad_tol)
        zeta, k = g.inverse().act_and_factor(xi)
        rhs = k ** (n - lam) * knapp_stein_value(n, lam, f, zeta, quad_tol)
        errs.append(rel_err(lhs, rhs))
        diags.append(f"lam={lam}, xi={xi}")
    return CheckReport.from_errors(f"ks_intertwining_n{n}_lam{lam:g}", errs, tol, diags)


# -- kernel Fourier pairing ---------------------------------------------------------


def check_kernel_pairing(n, s, quad_tol=1e-10, tol=1e-8):
    """Weak form of hat(h_s) = 2^(n+s) pi^(n/2) h_(-n-s) against a Gaussian:
    <h_s, hat g> = <hat h_s, g> for g = exp(-|xi|^2), both sides reduced to
    radial integrals and cross-checked against their closed Gamma forms."""
    if not (-n < s < 0):
        raise ValueError("need -n < s < 0 for both pairings to converge absolutely")
    omega = 2.0 * math.pi ** (n / 2.0) / gamma_checked(n / 2.0)

    def radial(p, c):
        # int_0^inf r^p exp(-r^2/c) dr
        val = _quad_checked(lambda r: r ** p * math.exp(-r * r / c), 0.0, np.inf,
                            quad_tol, 1.0)
        return val

    i1 = radial(s + n - 1, 4.0)
    i1_closed = 0.5 * 2.0 ** (s + n) * gamma_checked((s + n) / 2.0)
    i2 = radial(-s - 1, 1.0)
    i2_closed = 0.5 * gamma_checked(-s / 2.0)

    lhs = math.pi ** (n / 2.0) / gamma_checked((n + s) / 2.0) * omega * i1
    rhs = 2.0 ** (n + s) * math.pi ** (n / 2.0) / gamma_checked(-s / 2.0) * omega * i2
    errs = [rel_err(lhs, rhs), rel_err(i1, i1_closed), rel_err(i2, i2_closed)]
    diags = ["pairing lhs vs rhs", "radial integral vs closed form (lhs)",
             "radial integral vs closed form (rhs)"]
    return CheckReport.from_errors(f"kernel_pairing_n{n}_s{s:g}", errs, tol, diags)


# -- symbol-level inversion constant --------------------------------------------------


def check_ks_inversion(n, rng=None, samples=20, tol=1e-10, lam_samples=None):
    """Symbols at lam and n-lam compose to pi^n/(Gamma(lam) Gamma(n-lam))."""
    if lam_samples is None:
        lam_samples = []
        while len(lam_samples) < samples:
            lam = complex(rng.uniform(0.2, n - 0.2), rng.uniform(-1.0, 1.0))
            lam_samples.append(lam)
    ok, worst = symbolcalc.check_ks_inversion(n, lam_samples, tol)
    return CheckReport(f"ks_inversion_symbol_n{n}", len(lam_samples), worst,
                       tol, ok, "sampled lam in the strip 0.2 < Re < n-0.2")


# -- ambient-space checks ---------------------------------------------------------------


def dalembertian(jet, n):
    """Box F = F_tt - sum_j F_(x_j x_j) from an order-2 ambient jet
    (variables ordered t, x_0, ..., x_n)."""
    h = jet.hess
    return h[0][0] - sum(h[i][i] for i in range(1, n + 2))


def chart_family(n, lam, f):
    """The degree -lam homogeneous ambient function built from a test
    function on R^n: (t+x_0)^(-lam) f(x_1/(t+x_0), ..., x_n/(t+x_0))."""

    def F(coords):
        u = coords[0] + coords[1]
        args = [c / u for c in coords[2:]]
        return u ** (-lam) * f.eval_generic(args)

    return F


def sphere_extension(n, f_sphere, degree):
    """t-independent extension |x|^degree * f(x/|x|) of a sphere function
    (f_sphere takes the n+1 components of x/|x|)."""

    def F(coords):
        q = _sum_sq(coords[1:])
        r = q ** 0.5
        args = [c / r for c in coords[1:]]
        return q ** (degree / 2.0) * f_sphere(args)

    return F


def _sum_sq(xs):
    total = xs[0] * xs[0]
    for x in xs[1:]:
        total = total + x * x
    return total


def ambient_operator(mu, F, coords, n):
    """B_mu F = x_n Box F - 2 mu dF/dx_n at the base point of the coords."""
    Fj = F(coords)
    xn = coords[n + 1].value
    return xn * dalembertian(Fj, n) - 2.0 * mu * Fj.grad[n + 1]


def check_ambient_noncompact(n, lam, f, points, tol=1e-9):
    """The ambient operator at weight lam - n/2 + 1, pushed through the
    stereographic chart (including the chart weight lam+1), against minus the
    one-step operator on R^n."""
    mu = lam - n / 2.0 + 1.0
    F = chart_family(n, lam, f)
    errs, diags = [], []
    for xi in points:
        x = stereographic(xi)
        coords = coordinate_jets((1.0,) + x, 2)
        bval = ambient_operator(mu, F, coords, n)
        kc = stereographic_factor(xi)
        lhs = kc ** (lam + 1.0) * bval
        fj = f.jet(xi, 2)
        rhs = -one_step_from_jet(n, lam, fj, xi[n - 1])
        errs.append(rel_err(lhs, rhs))
        diags.append(f"lam={lam}, xi={xi}")
    return CheckReport.from_errors(f"ambient_noncompact_n{n}_lam{lam:g}", errs, tol, diags)


def check_weight_conjugation(n, rng, samples=30, tol=1e-9):
    """B_mu F = x_n |x_n|^(-mu) Box(|x_n|^mu F) + mu(mu-1) F / x_n for smooth
    ambient F and x_n != 0 (direct two-route jet evaluation)."""
    errs, diags = [], []
    made = 0
    while made < samples:
        mu = float(rng.uniform(-2.0, 2.0))
        lam = float(rng.uniform(-1.0, 2.0))
        f = sample_bump(rng, n)
        F = chart_family(n, lam, f)
        t = float(rng.uniform(0.6, 1.6))
        x = rng.uniform(-0.8, 0.8, n + 1)
        x[0] = max(x[0], 0.4 - t)  # keep t + x_0 away from the family's singular set
        if abs(x[n]) < 0.15:
            x[n] = 0.4
        coords = coordinate_jets((t,) + tuple(x), 2)
        lhs = ambient_operator(mu, F, coords, n)
        Fj = F(coords)
        xn = coords[n + 1]
        w = (xn * xn) ** (mu / 2.0)
        Gj = w * Fj
        xn_val = xn.value
        rhs = xn_val * abs(xn_val) ** (-mu) * dalembertian(Gj, n) \
            + mu * (mu - 1.0) / xn_val * Fj.value
        errs.append(rel_err(lhs, rhs))
        diags.append(f"mu={mu}, t={t}, x={tuple(float(c) for c in x)}")
        made += 1
    return CheckReport.from_errors(f"weight_conjugation_n{n}", errs, tol, diags)


def check_yamabe_constant(n, rng, samples=20, tol=1e-10):
    """The conformal Laplacian of the constant function: Box of the degree
    -(n/2-1) extension of 1 equals n(n-2)/4 on the sphere."""
    F = sphere_extension(n, lambda args: 1.0, -(n / 2.0 - 1.0))
    expected = n * (n - 2) / 4.0
    errs, diags = [], []
    for _ in range(samples):
        x = rng.normal(size=n + 1)
        x /= np.linalg.norm(x)
        coords = coordinate_jets((1.0,) + tuple(x), 2)
        got = dalembertian(F(coords), n)
        errs.append(abs(got - expected) / max(1.0, abs(expected)))
        diags.append(f"x={tuple(float(c) for c in x)}")
    return CheckReport.from_errors(f"yamabe_constant_n{n}", errs, tol, diags)


def _poly_on_jets(p):
    def f(args):
        return p.evaluate(list(args))
    return f


def check_ambient_compact(n, lam, f_sphere_poly, points, tol=1e-8):
    """Three routes to the same value at x = c(xi) on the sphere:

    A. the ambient operator on the degree -lam extension of the sphere
       function (jets on the light cone section t = 1);
    B. the conjugated-Yamabe formula
       x_n |x_n|^(-mu) Delta_S(|x_n|^mu f) + mu(mu-1) f / x_n,
       with Delta_S realized by Box on the degree -(n/2-1) extension;
    C. minus the one-step operator on the chart transport of f, mapped back
       with the chart weight.
    """
    mu = lam - n / 2.0 + 1.0
    fs = _poly_on_jets(f_sphere_poly)
    FA = sphere_extension(n, fs, -lam)
    errs, diags = [], []
    for xi in points:
        x = stereographic(xi)
        if abs(x[n]) < 0.1 or 1.0 + x[0] < 0.2:
            raise ValueError(f"point {xi} violates the chart/locus guards")
        coords = coordinate_jets((1.0,) + x, 2)
        a_val = ambient_operator(mu, FA, coords, n)

        # conjugated Yamabe route
        def h_sphere(args, _fs=fs, _mu=mu):
            w = (args[n] * args[n]) ** (_mu / 2.0)
            return w * _fs(args)

        FB = sphere_extension(n, h_sphere, -(n / 2.0 - 1.0))
        ds = dalembertian(FB(coords), n)
        xn = x[n]
        f_here = f_sphere_poly.evaluate(list(x))
        b_val = xn * abs(xn) ** (-mu) * ds + mu * (mu - 1.0) / xn * f_here

        # chart transport route
        cj = coordinate_jets(xi, 2)
        q = _sum_sq(cj)
        den = 1.0 + q
        comps = [(1.0 - q) / den] + [2.0 * c / den for c in cj]
        kc_jet = 2.0 / den
        fnc = kc_jet ** lam * f_sphere_poly.evaluate(comps)
        kc = stereographic_factor(xi)
        c_val = -(kc ** (-(lam + 1.0))) * one_step_from_jet(n, lam, fnc, xi[n - 1])

        err = max(rel_err(a_val, b_val), rel_err(a_val, c_val), rel_err(b_val, c_val))
        errs.append(err)
        diags.append(f"lam={lam}, xi={xi}")
    return CheckReport.from_errors(f"ambient_compact_n{n}_lam{lam:g}", errs, tol, diags)


def check_extension_independence(n, rng, samples=20, tol=1e-9, euler_tol=1e-10):
    """Box F restricted to the positive light cone does not depend on the
    choice of degree -(n/2-1) homogeneous extension.

    Compares the t-independent extension, a t-homogeneous one, and one
    shifted by Q * (homogeneous of degree -(n/2)-1); each extension's
    homogeneity is certified through the Euler identity first.
    """
    d = n / 2.0 - 1.0
    vars_ = tuple(f"x{i}" for i in range(n + 1))
    gpoly = Poly.variable(vars_[0], vars_) + Poly.variable(vars_[n], vars_) * 2
    gs = _poly_on_jets(gpoly)

    def fs(args):
        return args[0] * args[0] + 0.5 * args[n] + 1.0

    F1 = sphere_extension(n, fs, -d)

    def F2(coords):
        # t-dependent variant: (t^2/|x|^2) is 0-homogeneous and equals 1 on the cone
        q = _sum_sq(coords[1:])
        return coords[0] * coords[0] / q * F1(coords)

    def F3(coords):
        q = _sum_sq(coords[1:])
        Q = coords[0] * coords[0] - q
        G = sphere_extension(n, gs, -(d + 2.0))(coords)
        return F1(coords) + Q * G

    exts = (F1, F2, F3)
    errs, diags = [], []
    for _ in range(samples):
        x = rng.normal(size=n + 1)
        x *= float(rng.uniform(0.6, 1.8)) / np.linalg.norm(x)
        t = float(np.linalg.norm(x))
        pt = AmbientPoint(t, tuple(x))
        assert pt.on_positive_cone(1e-9)
        coords = coordinate_jets((t,) + tuple(x), 2)
        jets = [F(coords) for F in exts]
        for Fj in jets:
            euler = t * Fj.grad[0] + sum(x[i] * Fj.grad[i + 1] for i in range(n + 1))
            e_err = abs(euler - (-d) * Fj.value) / max(1.0, abs(Fj.value))
            if e_err > euler_tol:
                raise ValueError(f"extension violates the Euler homogeneity identity: {e_err}")
        boxes = [dalembertian(Fj, n) for Fj in jets]
        err = max(rel_err(boxes[0], boxes[1]), rel_err(boxes[0], boxes[2]))
        errs.append(err)
        diags.append(f"t={t}, x={tuple(float(c) for c in x)}")
    return CheckReport.from_errors(f"extension_independence_n{n}", errs, tol, diags)


# -- suites ------------------------------------------------------------------------


def _tol(tols, name, default):
    return tols.get(name, default) if tols else default


def suite_symbolic(n_min=1, n_max=8, tols=None):
    from .diffop import NonTangentialForm, decompose_tangential
    from .juhl import juhl_coeffs, leading_coeff, one_step
    reports = []

    ns = [n for n in range(1, 9) if n_min <= n <= n_max]
    fails = sum(0 if symbolcalc.check_factorization(n) else 1 for n in ns)
    reports.append(CheckReport("symbol_factorization", len(ns),
                               float(fails), 0.0, fails == 0,
                               f"exact identity for n in {ns}"))

    # kernel hat rule applied twice returns (2 pi)^n times the original
    count, bad = 0, 0
    for n in ns:
        for (a, b) in ((Fraction(0), Fraction(2)), (Fraction(-1), Fraction(-2)),
                       (Fraction(3, 2), Fraction(1))):
            c1, s1c, s1l = symbolcalc.hat_kernel(n, a, b)
            c2, s2c, s2l = symbolcalc.hat_kernel(n, s1c, s1l)
            total = c1 * c2
            expect = symbolcalc.SymCoeff(1, two_a=n, pi_half=2 * n)
            bad += 0 if (total == expect and (s2c, s2l) == (a, b)) else 1
            count += 1
    reports.append(CheckReport("kernel_hat_involution", count, float(bad),
                               0.0, bad == 0, "double transform bookkeeping"))

    grid = [(n, N) for n in range(max(2, n_min), min(6, n_max) + 1)
            for N in range(1, 11)]
    bad = 0
    for n, N in grid:
        try:
            tang = juhl_coeffs(n, N)
        except (RuntimeError, NonTangentialForm):
            bad += 1
            continue
        if not tang.coeffs[0] == leading_coeff(n, N):
            bad += 1
    reports.append(CheckReport("juhl_leading_coeff", len(grid), float(bad),
                               0.0, bad == 0, "closed form of a_0, full grid"))

    bad = 0
    for n, N in grid:
        vars_ = ("lam",) + tuple(f"xi{i}" for i in range(1, n + 1))
        xin = Poly.variable(f"xi{n}", vars_)
        got = iterated(n, N).apply(xin ** N)
        want = Poly.const(math.factorial(N), vars_)
        lamP = Poly.variable("lam", vars_)
        for m in range(N + 1, 2 * N + 1):
            want = want * (2 * lamP + (m - n))
        if got != want:
            bad += 1
    reports.append(CheckReport("iterated_power_constant", len(grid), float(bad),
                               0.0, bad == 0, "N-fold drop of xi_n^N, full grid"))

    bad = 0
    for n, N in grid:
        try:
            decompose_tangential(iterated(n, N).restrict(), N)
        except NonTangentialForm:
            bad += 1
    reports.append(CheckReport("tangential_zero_residual", len(grid), float(bad),
                               0.0, bad == 0, "restricted family lies in the tangential span"))

    small = [(n, N) for n in (2, 3) if n_min <= n <= n_max for N in (1, 2, 3)]
    bad = 0
    for n, N in small:
        lhs = iterated(n, N).shift_lambda(1).compose(one_step(n))
        if lhs != iterated(n, N + 1):
            bad += 1
    reports.append(CheckReport("shift_consistency", len(small), float(bad),
                               0.0, bad == 0, "parameter shift composes correctly"))
    return reports


def suite_numeric(seed=0, n_min=1, n_max=4, tols=None):
    rng = np.random.default_rng(seed)
    reports = []
    for n in (2, 3):
        if n_min <= n <= n_max:
            reports.extend(geometry_suite(n, rng, 100, tols))
    for n in (2, 3):
        if n_min <= n <= n_max:
            reports.append(check_covariance_one_step(
                n, rng, 50, _tol(tols, "covariance", 1e-9)))
    for n in (2, 3):
        if not (n_min <= n <= n_max):
            continue
        for N in (1, 2, 3):
            reports.append(check_covariance_iterated(
                n, N, rng, 20, _tol(tols, "covariance_restricted", 1e-8)))
    for n in (1, 2):
        if not (n_min <= n <= n_max):
            continue
        f = GaussianBump((0.3,) * n, 1.1)
        maps = [ConformalMap(n, [Dilation(2.0)]),
                ConformalMap(n, [Translation((0.4,) * n)])]
        if n >= 2:
            from .conformal import full_rotation
            maps.append(ConformalMap(n, [full_rotation(n, 0.7)]))
        else:
            maps.append(ConformalMap.identity(n))
        for lam in (0.8 * n, 1.1 * n):
            for g in maps:
                pts = [tuple(float(c) for c in rng.uniform(-1.0, 1.0, n)) for _ in range(5)]
                reports.append(check_ks_intertwining(
                    n, lam, g, f, pts,
                    quad_tol=_tol(tols, "quad_tol", 1e-6),
                    tol=_tol(tols, "ks", 1e-5)))
    for n, s in ((1, -0.5), (2, -1.0), (3, -1.5)):
        if n_min <= n <= n_max:
            reports.append(check_kernel_pairing(n, s, tol=_tol(tols, "pairing", 1e-8)))
    for n in (1, 2, 3, 4):
        if n_min <= n <= n_max:
            reports.append(check_ks_inversion(
                n, rng, 20, _tol(tols, "inversion", 1e-10)))
    return reports


def suite_ambient(seed=0, n_min=2, n_max=4, tols=None):
    rng = np.random.default_rng(seed)
    reports = []
    for n in (2, 3, 4):
        if not (n_min <= n <= n_max):
            continue
        f = sample_bump(rng, n)
        lam = float(rng.uniform(0.3, 1.5))
        pts = [tuple(float(c) for c in rng.uniform(-1.2, 1.2, n)) for _ in range(30)]
        reports.append(check_ambient_noncompact(
            n, lam, f, pts, _tol(tols, "ambient", 1e-9)))
        reports.append(check_weight_conjugation(
            n, rng, 20, _tol(tols, "ambient", 1e-9)))
        reports.append(check_yamabe_constant(
            n, rng, 20, _tol(tols, "yamabe", 1e-10)))
        reports.append(check_extension_independence(
            n, rng, 20, _tol(tols, "extension", 1e-9)))
    for n in (3, 4):
        if not (n_min <= n <= n_max):
            continue
        vars_ = tuple(f"x{i}" for i in range(n + 1))
        fpoly = (Poly.variable(vars_[0], vars_) * Poly.variable(vars_[n], vars_)
                 + Poly.variable(vars_[1], vars_) ** 2
                 + Poly.const(Fraction(1, 2), vars_))
        pts = _compact_points(rng, n, 20)
        reports.append(check_ambient_compact(
            n, 1.2, fpoly, pts, _tol(tols, "ambient_compact", 1e-8)))
    return reports


def _compact_points(rng, n, count):
    """Chart points whose sphere images respect the |x_n| and chart guards."""
    pts = []
    while len(pts) < count:
        xi = tuple(float(c) for c in rng.uniform(-1.0, 1.0, n))
        x = stereographic(xi)
        if abs(x[n]) >= 0.15 and 1.0 + x[0] >= 0.4:
            pts.append(xi)
    return pts


def run_suites(which="all", seed=0, n_min=None, n_max=None, tols=None):
    reports = []
    if which in ("symbolic", "all"):
        reports.extend(suite_symbolic(n_min or 1, n_max or 8, tols))
    if which in ("numeric", "all"):
        reports.extend(suite_numeric(seed, n_min or 1, n_max or 4, tols))
    if which in ("ambient", "all"):
        reports.extend(suite_ambient(seed, n_min or 2, n_max or 4, tols))
    return reports
