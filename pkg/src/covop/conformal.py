"""Conformal maps of R^n, conformal factors, principal-series actions,
the stereographic chart to the sphere, and Gaussian test functions.

A map is a word in four generators (translation, rotation, dilation, and the
chart-change inversion).  All evaluation code is generic over the scalar
type: plain floats, exact Fractions, numpy arrays (batched points) and jets
all go through the same formulas, so derivative information is exact to
rounding wherever jets are fed in.
"""

import math

import numpy as np

from .algebra import Poly
from .jets import Jet, coordinate_jets

#: points whose inversion input is closer to the origin than this are rejected
#: to keep the conditioning of 1/|xi|^2 powers bounded
GUARD_RADIUS = 0.05


class SingularPoint(Exception):
    """An inversion was evaluated at (numerically near) its singular point."""


def _norm_sq(xs):
    total = xs[0] * xs[0]
    for x in xs[1:]:
        total = total + x * x
    return total


def _too_small(q, guard):
    """Generic singular-set test on |xi|^2 (works for floats, Fractions, jets,
    and batched numpy arrays)."""
    if isinstance(q, Jet):
        q = q.value
    if isinstance(q, np.ndarray):
        return bool(np.min(q) < guard * guard)
    return float(q) < guard * guard


class Translation:
    """xi -> xi + v.  Tangential (v_n = 0) translations preserve the
    hyperplane; general ones are allowed for full-group checks."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = tuple(float(x) for x in v)

    @property
    def dim(self):
        return len(self.v)

    def act(self, xs):
        return [x + c for x, c in zip(xs, self.v)]

    def factor(self, xs):
        return 1.0

    def inverse(self):
        return Translation([-c for c in self.v])

    def preserves_hyperplane(self):
        return self.v[-1] == 0.0

    def __repr__(self):
        return f"Translation({self.v})"


class Rotation:
    """xi -> R xi with R in SO(n); checked orthogonal with det 1 to 1e-12."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("rotation matrix must be square")
        if np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) > 1e-12:
            raise ValueError("matrix is not orthogonal to 1e-12")
        if abs(np.linalg.det(m) - 1.0) > 1e-12:
            raise ValueError("matrix must have determinant 1")
        self.matrix = tuple(tuple(float(x) for x in row) for row in m)

    @property
    def dim(self):
        return len(self.matrix)

    def act(self, xs):
        out = []
        for row in self.matrix:
            acc = row[0] * xs[0]
            for c, x in zip(row[1:], xs[1:]):
                if c:
                    acc = acc + c * x
            out.append(acc)
        return out

    def factor(self, xs):
        return 1.0

    def inverse(self):
        return Rotation(np.asarray(self.matrix).T)

    def preserves_hyperplane(self):
        n = self.dim
        last_row_ok = self.matrix[n - 1][n - 1] == 1.0 and \
            all(self.matrix[n - 1][j] == 0.0 for j in range(n - 1))
        last_col_ok = all(self.matrix[j][n - 1] == 0.0 for j in range(n - 1))
        return last_row_ok and last_col_ok

    def __repr__(self):
        return f"Rotation({np.asarray(self.matrix)!r})"


class Dilation:
    """xi -> r xi, r > 0; conformal factor r everywhere."""

    __slots__ = ("r",)

    def __init__(self, r):
        r = float(r)
        if r <= 0:
            raise ValueError("dilation ratio must be positive")
        self.r = r

    dim = None  # acts in any dimension

    def act(self, xs):
        return [self.r * x for x in xs]

    def factor(self, xs):
        return self.r

    def inverse(self):
        return Dilation(1.0 / self.r)

    def preserves_hyperplane(self):
        return True

    def __repr__(self):
        return f"Dilation({self.r})"


class Inversion:
    """The chart-change map xi -> (-xi_1, xi_2, ..., xi_n)/|xi|^2, an
    involution preserving the hyperplane, with conformal factor 1/|xi|^2."""

    __slots__ = ()

    dim = None

    def act(self, xs, guard=GUARD_RADIUS):
        q = _norm_sq(xs)
        if _too_small(q, guard):
            raise SingularPoint("inversion evaluated too close to the origin")
        return [-xs[0] / q] + [x / q for x in xs[1:]]

    def factor(self, xs, guard=GUARD_RADIUS):
        q = _norm_sq(xs)
        if _too_small(q, guard):
            raise SingularPoint("inversion evaluated too close to the origin")
        return 1 / q

    def inverse(self):
        return self

    def preserves_hyperplane(self):
        return True

    def __repr__(self):
        return "Inversion()"


def tangential_rotation(n, angle, axes=(0, 1)):
    """Rotation in two tangential coordinates (a block of SO(n-1), last
    coordinate fixed).  For n <= 2 there is no room: returns the identity."""
    m = np.eye(n)
    i, j = axes
    if n >= 3 and i < n - 1 and j < n - 1:
        c, s = math.cos(angle), math.sin(angle)
        m[i, i] = c
        m[i, j] = -s
        m[j, i] = s
        m[j, j] = c
    return Rotation(m)


def full_rotation(n, angle, axes=(0, 1)):
    """Rotation in any two coordinates (general conformal map, not
    necessarily hyperplane-preserving)."""
    m = np.eye(n)
    i, j = axes
    if n >= 2:
        c, s = math.cos(angle), math.sin(angle)
        m[i, i] = c
        m[i, j] = -s
        m[j, i] = s
        m[j, j] = c
    return Rotation(m)


class ConformalMap:
    """A word of generators applied left to right: word[0] acts first.

    ``g1 @ g2`` composes as operators (g2 applied first).  The conformal
    factor of a word is the cocycle product of the generator factors along
    the orbit of the point; the jet-based Jacobian is the independent check.
    """

    __slots__ = ("n", "word")

    def __init__(self, n, word=()):
        self.n = n
        word = tuple(word)
        for g in word:
            if g.dim is not None and g.dim != n:
                raise ValueError(f"generator {g!r} has wrong dimension for n={n}")
        self.word = word

    @classmethod
    def identity(cls, n):
        return cls(n, ())

    def __matmul__(self, other):
        """self o other: other applied first."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return ConformalMap(self.n, other.word + self.word)

    def inverse(self):
        return ConformalMap(self.n, tuple(g.inverse() for g in reversed(self.word)))

    def act(self, point, guard=GUARD_RADIUS):
        xs = list(point)
        for g in self.word:
            xs = g.act(xs) if not isinstance(g, Inversion) else g.act(xs, guard)
        return tuple(xs)

    def factor(self, point, guard=GUARD_RADIUS):
        """Conformal factor kappa(self, point) via the cocycle product."""
        xs = list(point)
        total = 1.0
        for g in self.word:
            if isinstance(g, Inversion):
                total = g.factor(xs, guard) * total
                xs = g.act(xs, guard)
            else:
                total = g.factor(xs) * total
                xs = g.act(xs)
        return total

    def act_and_factor(self, point, guard=GUARD_RADIUS):
        xs = list(point)
        total = 1.0
        for g in self.word:
            if isinstance(g, Inversion):
                total = g.factor(xs, guard) * total
                xs = g.act(xs, guard)
            else:
                total = g.factor(xs) * total
                xs = g.act(xs)
        return tuple(xs), total

    def preserves_hyperplane(self):
        return all(g.preserves_hyperplane() for g in self.word)

    def is_affine(self):
        return not any(isinstance(g, Inversion) for g in self.word)

    def restrict_to_hyperplane(self):
        """The induced conformal map of R^(n-1) = {xi_n = 0}; requires a
        hyperplane-preserving word."""
        if not self.preserves_hyperplane():
            raise ValueError("map does not preserve the hyperplane")
        word = []
        for g in self.word:
            if isinstance(g, Translation):
                word.append(Translation(g.v[:-1]))
            elif isinstance(g, Rotation):
                word.append(Rotation(np.asarray(g.matrix)[:-1, :-1]))
            else:
                word.append(g)
        return ConformalMap(self.n - 1, word)

    def __repr__(self):
        return f"ConformalMap(n={self.n}, word={list(self.word)!r})"


# -- test functions --------------------------------------------------------------


def xi_vars(n):
    return tuple(f"xi{i}" for i in range(1, n + 1))


class GaussianBump:
    """P(xi) * exp(-|xi - m|^2 / a^2): Schwartz-class test function with an
    optional polynomial prefactor (variables xi1..xin)."""

    __slots__ = ("n", "center", "width", "prefactor")

    def __init__(self, center, width=1.0, prefactor=None):
        self.center = tuple(float(x) for x in center)
        self.n = len(self.center)
        self.width = float(width)
        if self.width <= 0:
            raise ValueError("width must be positive")
        if prefactor is not None and prefactor.vars != xi_vars(self.n):
            raise ValueError("prefactor must be a Poly in xi1..xin")
        self.prefactor = prefactor

    def eval_generic(self, xs):
        """Evaluate at a coordinate sequence of floats, arrays, or jets."""
        q = _norm_sq([x - c for x, c in zip(xs, self.center)])
        arg = q * (-1.0 / self.width ** 2)
        if isinstance(arg, Jet):
            e = arg.exp()
        elif isinstance(arg, np.ndarray):
            e = np.exp(arg)
        else:
            e = math.exp(arg)
        if self.prefactor is None:
            return e
        return self.prefactor.evaluate(list(xs)) * e

    def value(self, point):
        return self.eval_generic(list(point))

    def jet(self, point, order=2):
        return self.eval_generic(coordinate_jets(point, order))

    def times_coordinate(self, i):
        """The test function xi_i * f (stays in the class)."""
        v = Poly.variable(f"xi{i + 1}", xi_vars(self.n))
        pre = v if self.prefactor is None else self.prefactor * v
        return GaussianBump(self.center, self.width, pre)

    def effective_radius(self, eps=1e-16):
        """Radius around the center outside which |f| < eps * scale."""
        extra = 0
        if self.prefactor is not None and self.prefactor.terms:
            extra = max(sum(e) for e in self.prefactor.terms)
        return self.width * (math.sqrt(math.log(1.0 / eps)) + extra)

    def __repr__(self):
        return f"GaussianBump(center={self.center}, width={self.width})"


class PulledBack:
    """The twisted pullback kappa(g^-1, xi)^lam * f(g^-1 xi): the
    principal-series action of g on f at weight lam."""

    __slots__ = ("lam", "g", "f", "g_inv")

    def __init__(self, lam, g, f):
        self.lam = lam
        self.g = g
        self.f = f
        self.g_inv = g.inverse()

    def eval_generic(self, xs):
        ys = list(xs)
        total = 1.0
        for gen in self.g_inv.word:
            total = gen.factor(ys) * total
            ys = gen.act(ys)
        return total ** self.lam * self.f.eval_generic(ys)

    def value(self, point):
        return self.eval_generic(list(point))

    def jet(self, point, order=2):
        return self.eval_generic(coordinate_jets(point, order))


def rho(lam, g, f, point, order=2):
    """Jet of the principal-series action at a point:
    rho_lam(g) f (xi) = kappa(g^-1, xi)^lam f(g^-1(xi))."""
    return PulledBack(lam, g, f).jet(point, order)


def rho_prime(mu, g, f_prime, point, order=2):
    """Same action one dimension down, for the induced map of the hyperplane."""
    return PulledBack(mu, g.restrict_to_hyperplane(), f_prime).jet(point, order)


# -- the chart to the sphere ------------------------------------------------------


def stereographic(xs):
    """Inverse stereographic chart R^n -> S^n (source at the antipode of 1):
    ((1-|xi|^2)/(1+|xi|^2), 2 xi_1/(1+|xi|^2), ..., 2 xi_n/(1+|xi|^2))."""
    q = _norm_sq(list(xs))
    den = 1.0 + q
    first = (1.0 - q) / den
    return tuple([first] + [2.0 * x / den for x in xs])


def stereographic_factor(xs):
    """Conformal factor of the chart: 2/(1+|xi|^2)."""
    return 2.0 / (1.0 + _norm_sq(list(xs)))


def chart_inverse(x):
    """S^n -> R^n: (x_0, x') -> x'/(1+x_0); requires 1 + x_0 > 0."""
    den = 1.0 + x[0]
    return tuple(c / den for c in x[1:])
