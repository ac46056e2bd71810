"""
Catalog of unconstrained test problems.

Formulas follow the usual test-set collections (Jamil & Yang, Surjanovic & Bingham).
The scalable problems take any n (Powell needs n divisible by 4, Rosenbrock an even n)
and default to n = 1000. Rosenbrock is the extended variant made of independent pairs
    f = sum_{i<=n/2} 100 (x_{2i} - x_{2i-1}^2)^2 + (1 - x_{2i-1})^2;
the chained variant sum_{i<n} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2 is the extra
"chained_rosenbrock".
Every problem starts from 2*ones(n) unless noted.

Problems registered with mandatory=False are extras outside the core suite.
"""

import dataclasses
import difflib
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from .linalg import fd_hessian, symmetrize, DEFAULT_FD_EPS
from .schema import NonFiniteEvaluation, UsageError

logger = logging.getLogger(__name__)

DEFAULT_N = 1000


@dataclass(frozen=True, eq=False)
class Problem:
    name: str
    dim: int
    eval_f: Callable
    eval_g: Callable
    default_x0: np.ndarray
    eval_h: Optional[Callable] = None
    known_f_min: Optional[float] = None
    known_x_min: Optional[np.ndarray] = None
    mandatory: bool = True


@dataclass(frozen=True)
class _Entry:
    builder: Callable
    parametric: bool
    mandatory: bool


_REGISTRY: Dict[str, _Entry] = {}


def register(name, parametric=False, mandatory=True):
    """ Register a problem builder; parametric builders take the dimension n. """
    def inner(builder):
        _REGISTRY[name] = _Entry(builder, parametric, mandatory)
        return builder
    return inner


def problem_names(include_optional=True):
    return sorted(name for name, e in _REGISTRY.items() if include_optional or e.mandatory)


def mandatory_names():
    return problem_names(include_optional=False)


def get_problem(name, n=DEFAULT_N):
    entry = _REGISTRY.get(name)
    if entry is None:
        raise UsageError(f"unknown problem '{name}'", difflib.get_close_matches(name, _REGISTRY.keys()))
    p = entry.builder(n) if entry.parametric else entry.builder()
    if p.mandatory != entry.mandatory:
        p = dataclasses.replace(p, mandatory=entry.mandatory)
    return p


def catalog(n=DEFAULT_N, include_optional=True):
    return [get_problem(name, n) for name in problem_names(include_optional)]


def _start(n):
    return 2.0 * np.ones(n)


class CountingOracle:
    """Wraps a Problem, counting evaluations and rejecting non-finite values."""

    def __init__(self, problem):
        self.problem = problem
        self.name = problem.name
        self.dim = problem.dim
        self.f_evals = 0
        self.g_evals = 0
        self.hessian_evals = 0

    def eval_f(self, x):
        self.f_evals += 1
        val = float(self.problem.eval_f(x))
        if not np.isfinite(val):
            raise NonFiniteEvaluation(f"{self.name}: objective is not finite")
        return val

    def eval_f_or_inf(self, x):
        """Objective at a trial point; overflow counts as an infinitely bad trial."""
        self.f_evals += 1
        with np.errstate(over="ignore", invalid="ignore"):
            val = float(self.problem.eval_f(x))
        return val if np.isfinite(val) else np.inf

    def eval_g(self, x):
        self.g_evals += 1
        g = np.asarray(self.problem.eval_g(x), dtype=float)
        if not np.all(np.isfinite(g)):
            bad = int(np.flatnonzero(~np.isfinite(g))[0])
            raise NonFiniteEvaluation(f"{self.name}: gradient is not finite at coordinate {bad}")
        return g

    def hessian(self, x, eps=DEFAULT_FD_EPS):
        """Analytic Hessian when the problem has one, forward differences otherwise."""
        self.hessian_evals += 1
        if self.problem.eval_h is not None:
            B = symmetrize(self.problem.eval_h(x))
            if not np.all(np.isfinite(B)):
                raise NonFiniteEvaluation(f"{self.name}: Hessian is not finite")
            return B
        return fd_hessian(self, x, eps)


def gradient_selfcheck(p, trials=10, seed=0):
    """Largest relative gap between eval_g and central differences of eval_f.

    Points are drawn uniformly from [-5, 5]^n; the gap at a point is
    ||g - g_fd||_inf / max(1, ||g||_inf).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.uniform(-5.0, 5.0, p.dim)
        g = np.asarray(p.eval_g(x), dtype=float)
        g_fd = np.empty(p.dim)
        for i in range(p.dim):
            h = 6e-6 * max(1.0, abs(x[i]))
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            g_fd[i] = (p.eval_f(xp) - p.eval_f(xm)) / (xp[i] - xm[i])
        gap = np.max(np.abs(g - g_fd)) / max(1.0, np.max(np.abs(g)))
        worst = max(worst, float(gap))
    return worst


############################## large scale ########################################

@register("sphere", parametric=True)
def sphere(n=DEFAULT_N):
    return Problem(
        name="sphere", dim=n,
        eval_f=lambda x: float(x @ x),
        eval_g=lambda x: 2.0 * x,
        eval_h=lambda x: 2.0 * np.eye(x.size),
        default_x0=_start(n), known_f_min=0.0, known_x_min=np.zeros(n),
    )


@register("sum_squares", parametric=True)
def sum_squares(n=DEFAULT_N):
    w = np.arange(1, n + 1, dtype=float)
    return Problem(
        name="sum_squares", dim=n,
        eval_f=lambda x: float(w @ (x * x)),
        eval_g=lambda x: 2.0 * w * x,
        eval_h=lambda x: np.diag(2.0 * w),
        default_x0=_start(n), known_f_min=0.0, known_x_min=np.zeros(n),
    )


@register("rotated_hyper_ellipsoid", parametric=True)
def rotated_hyper_ellipsoid(n=DEFAULT_N):
    # sum_i sum_{j<=i} x_j^2 == sum_j (n - j + 1) x_j^2
    w = np.arange(n, 0, -1, dtype=float)
    return Problem(
        name="rotated_hyper_ellipsoid", dim=n,
        eval_f=lambda x: float(w @ (x * x)),
        eval_g=lambda x: 2.0 * w * x,
        eval_h=lambda x: np.diag(2.0 * w),
        default_x0=_start(n), known_f_min=0.0, known_x_min=np.zeros(n),
    )


@register("trid", parametric=True)
def trid(n=DEFAULT_N):
    def f(x):
        return float(np.sum((x - 1.0) ** 2) - np.sum(x[1:] * x[:-1]))

    def g(x):
        out = 2.0 * (x - 1.0)
        out[1:] -= x[:-1]
        out[:-1] -= x[1:]
        return out

    def h(x):
        return 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)

    i = np.arange(1, n + 1, dtype=float)
    return Problem(
        name="trid", dim=n, eval_f=f, eval_g=g, eval_h=h, default_x0=_start(n),
        known_f_min=-n * (n + 4) * (n - 1) / 6.0, known_x_min=i * (n + 1 - i),
    )


@register("rosenbrock", parametric=True)
def rosenbrock(n=DEFAULT_N):
    if n % 2:
        raise UsageError(f"rosenbrock needs an even n, got {n}")

    def f(x):
        a, b = x[0::2], x[1::2]
        return float(np.sum(100.0 * (b - a ** 2) ** 2 + (1.0 - a) ** 2))

    def g(x):
        a, b = x[0::2], x[1::2]
        r = b - a ** 2
        out = np.empty_like(x)
        out[0::2] = -400.0 * a * r - 2.0 * (1.0 - a)
        out[1::2] = 200.0 * r
        return out

    def h(x):
        # block diagonal, one 2x2 block per pair
        a, b = x[0::2], x[1::2]
        diag = np.empty_like(x)
        diag[0::2] = 1200.0 * a ** 2 - 400.0 * b + 2.0
        diag[1::2] = 200.0
        off = np.zeros(n - 1)
        off[0::2] = -400.0 * a
        return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)

    return Problem(
        name="rosenbrock", dim=n, eval_f=f, eval_g=g, eval_h=h, default_x0=_start(n),
        known_f_min=0.0, known_x_min=np.ones(n),
    )


@register("chained_rosenbrock", parametric=True, mandatory=False)
def chained_rosenbrock(n=DEFAULT_N):
    def f(x):
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    def g(x):
        out = np.zeros_like(x)
        r = x[1:] - x[:-1] ** 2
        out[:-1] = -400.0 * x[:-1] * r - 2.0 * (1.0 - x[:-1])
        out[1:] += 200.0 * r
        return out

    def h(x):
        diag = np.zeros_like(x)
        diag[:-1] = 1200.0 * x[:-1] ** 2 - 400.0 * x[1:] + 2.0
        diag[1:] += 200.0
        off = -400.0 * x[:-1]
        return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)

    return Problem(
        name="chained_rosenbrock", dim=n, eval_f=f, eval_g=g, eval_h=h, default_x0=_start(n),
        known_f_min=0.0, known_x_min=np.ones(n),
    )


@register("dixon_price", parametric=True)
def dixon_price(n=DEFAULT_N):
    i = np.arange(2, n + 1, dtype=float)

    def f(x):
        return float((x[0] - 1.0) ** 2 + np.sum(i * (2.0 * x[1:] ** 2 - x[:-1]) ** 2))

    def g(x):
        r = 2.0 * i * (2.0 * x[1:] ** 2 - x[:-1])
        out = np.zeros_like(x)
        out[0] = 2.0 * (x[0] - 1.0)
        out[1:] += 4.0 * x[1:] * r
        out[:-1] -= r
        return out

    k = np.arange(1, n + 1, dtype=float)
    x_min = 2.0 ** -(1.0 - 2.0 ** (1.0 - k))
    return Problem(
        name="dixon_price", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
        known_f_min=0.0, known_x_min=x_min,
    )


@register("levy", parametric=True)
def levy(n=DEFAULT_N):
    def f(x):
        w = 1.0 + (x - 1.0) / 4.0
        head = np.sin(np.pi * w[0]) ** 2
        mid = np.sum((w[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w[:-1] + 1.0) ** 2))
        tail = (w[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w[-1]) ** 2)
        return float(head + mid + tail)

    def g(x):
        w = 1.0 + (x - 1.0) / 4.0
        dw = np.zeros_like(x)
        dw[0] += np.pi * np.sin(2.0 * np.pi * w[0])
        u = w[:-1] - 1.0
        a = np.pi * w[:-1] + 1.0
        dw[:-1] += 2.0 * u * (1.0 + 10.0 * np.sin(a) ** 2) + u ** 2 * 10.0 * np.pi * np.sin(2.0 * a)
        v = w[-1] - 1.0
        b = 2.0 * np.pi * w[-1]
        dw[-1] += 2.0 * v * (1.0 + np.sin(b) ** 2) + v ** 2 * 2.0 * np.pi * np.sin(2.0 * b)
        return dw / 4.0

    return Problem(
        name="levy", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
        known_f_min=0.0, known_x_min=np.ones(n),
    )


@register("powell", parametric=True)
def powell(n=DEFAULT_N):
    if n % 4:
        raise UsageError(f"powell needs n divisible by 4, got {n}")

    def blocks(x):
        return x[0::4], x[1::4], x[2::4], x[3::4]

    def f(x):
        a, b, c, d = blocks(x)
        return float(np.sum((a + 10.0 * b) ** 2 + 5.0 * (c - d) ** 2 + (b - 2.0 * c) ** 4 + 10.0 * (a - d) ** 4))

    def g(x):
        a, b, c, d = blocks(x)
        out = np.empty_like(x)
        out[0::4] = 2.0 * (a + 10.0 * b) + 40.0 * (a - d) ** 3
        out[1::4] = 20.0 * (a + 10.0 * b) + 4.0 * (b - 2.0 * c) ** 3
        out[2::4] = 10.0 * (c - d) - 8.0 * (b - 2.0 * c) ** 3
        out[3::4] = -10.0 * (c - d) - 40.0 * (a - d) ** 3
        return out

    return Problem(
        name="powell", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
        known_f_min=0.0, known_x_min=np.zeros(n),
    )


@register("rastrigin", parametric=True)
def rastrigin(n=DEFAULT_N):
    return Problem(
        name="rastrigin", dim=n,
        eval_f=lambda x: float(10.0 * x.size + np.sum(x ** 2 - 10.0 * np.cos(2.0 * np.pi * x))),
        eval_g=lambda x: 2.0 * x + 20.0 * np.pi * np.sin(2.0 * np.pi * x),
        eval_h=lambda x: np.diag(2.0 + 40.0 * np.pi ** 2 * np.cos(2.0 * np.pi * x)),
        default_x0=_start(n), known_f_min=0.0, known_x_min=np.zeros(n),
    )


@register("schwefel", parametric=True)
def schwefel(n=DEFAULT_N):
    # global minimum 418.9829 n - n * 420.9687 sin(sqrt(420.9687)) is only known to ~1e-5
    def g(x):
        r = np.sqrt(np.abs(x))
        return -(np.sin(r) + 0.5 * r * np.cos(r))

    return Problem(
        name="schwefel", dim=n,
        eval_f=lambda x: float(418.9829 * x.size - np.sum(x * np.sin(np.sqrt(np.abs(x))))),
        eval_g=g, default_x0=_start(n),
    )


@register("styblinski_tang", parametric=True)
def styblinski_tang(n=DEFAULT_N):
    return Problem(
        name="styblinski_tang", dim=n,
        eval_f=lambda x: float(0.5 * np.sum(x ** 4 - 16.0 * x ** 2 + 5.0 * x)),
        eval_g=lambda x: 2.0 * x ** 3 - 16.0 * x + 2.5,
        eval_h=lambda x: np.diag(6.0 * x ** 2 - 16.0),
        default_x0=_start(n),
    )


@register("ackley", parametric=True, mandatory=False)
def ackley(n=DEFAULT_N):
    def f(x):
        r = np.sqrt(np.mean(x * x))
        return float(-20.0 * np.exp(-0.2 * r) - np.exp(np.mean(np.cos(2.0 * np.pi * x))) + 20.0 + np.e)

    def g(x):
        m = x.size
        r = np.sqrt(np.mean(x * x))
        radial = np.zeros_like(x) if r == 0.0 else 4.0 * np.exp(-0.2 * r) * x / (m * r)
        c = np.exp(np.mean(np.cos(2.0 * np.pi * x)))
        return radial + 2.0 * np.pi * c * np.sin(2.0 * np.pi * x) / m

    return Problem(
        name="ackley", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
        known_f_min=0.0, known_x_min=np.zeros(n),
    )


############################## small scale ########################################

@register("beale")
def beale():
    c = np.array([1.5, 2.25, 2.625])

    def terms(x):
        p = x[1] ** np.arange(1, 4)
        return c - x[0] + x[0] * p, p

    def f(x):
        t, _ = terms(x)
        return float(t @ t)

    def g(x):
        t, p = terms(x)
        dy = x[0] * np.arange(1, 4) * x[1] ** np.arange(0, 3)
        return np.array([2.0 * t @ (p - 1.0), 2.0 * t @ dy])

    return Problem(name="beale", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=0.0, known_x_min=np.array([3.0, 0.5]))


@register("booth")
def booth():
    def f(x):
        return float((x[0] + 2 * x[1] - 7) ** 2 + (2 * x[0] + x[1] - 5) ** 2)

    def g(x):
        a = x[0] + 2 * x[1] - 7
        b = 2 * x[0] + x[1] - 5
        return np.array([2 * a + 4 * b, 4 * a + 2 * b])

    return Problem(name="booth", dim=2, eval_f=f, eval_g=g,
                   eval_h=lambda x: np.array([[10.0, 8.0], [8.0, 10.0]]),
                   default_x0=_start(2), known_f_min=0.0, known_x_min=np.array([1.0, 3.0]))


@register("branin")
def branin():
    a, b, c, r, s, t = 1.0, 5.1 / (4 * np.pi ** 2), 5.0 / np.pi, 6.0, 10.0, 1.0 / (8 * np.pi)

    def f(x):
        u = x[1] - b * x[0] ** 2 + c * x[0] - r
        return float(a * u ** 2 + s * (1 - t) * np.cos(x[0]) + s)

    def g(x):
        u = x[1] - b * x[0] ** 2 + c * x[0] - r
        return np.array([2 * a * u * (c - 2 * b * x[0]) - s * (1 - t) * np.sin(x[0]), 2 * a * u])

    return Problem(name="branin", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=5.0 / (4 * np.pi), known_x_min=np.array([np.pi, 2.275]))


@register("easom")
def easom():
    def f(x):
        e = np.exp(-((x[0] - np.pi) ** 2 + (x[1] - np.pi) ** 2))
        return float(-np.cos(x[0]) * np.cos(x[1]) * e)

    def g(x):
        e = np.exp(-((x[0] - np.pi) ** 2 + (x[1] - np.pi) ** 2))
        return np.array([
            e * np.cos(x[1]) * (np.sin(x[0]) + 2 * (x[0] - np.pi) * np.cos(x[0])),
            e * np.cos(x[0]) * (np.sin(x[1]) + 2 * (x[1] - np.pi) * np.cos(x[1])),
        ])

    return Problem(name="easom", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=-1.0, known_x_min=np.array([np.pi, np.pi]))


@register("griewank")
def griewank(n=10):
    root = np.sqrt(np.arange(1, n + 1, dtype=float))

    def f(x):
        return float(x @ x / 4000.0 - np.prod(np.cos(x / root)) + 1.0)

    def g(x):
        c = np.cos(x / root)
        # product of the other cosines without dividing by a possibly-zero c_i
        before = np.concatenate(([1.0], np.cumprod(c[:-1])))
        after = np.concatenate((np.cumprod(c[::-1][:-1])[::-1], [1.0]))
        return x / 2000.0 + np.sin(x / root) / root * before * after

    return Problem(name="griewank", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
                   known_f_min=0.0, known_x_min=np.zeros(n))


@register("matyas")
def matyas():
    return Problem(
        name="matyas", dim=2,
        eval_f=lambda x: float(0.26 * (x[0] ** 2 + x[1] ** 2) - 0.48 * x[0] * x[1]),
        eval_g=lambda x: np.array([0.52 * x[0] - 0.48 * x[1], 0.52 * x[1] - 0.48 * x[0]]),
        eval_h=lambda x: np.array([[0.52, -0.48], [-0.48, 0.52]]),
        default_x0=_start(2), known_f_min=0.0, known_x_min=np.zeros(2),
    )


@register("mccormick")
def mccormick():
    def g(x):
        c = np.cos(x[0] + x[1])
        return np.array([c + 2 * (x[0] - x[1]) - 1.5, c - 2 * (x[0] - x[1]) + 2.5])

    return Problem(
        name="mccormick", dim=2,
        eval_f=lambda x: float(np.sin(x[0] + x[1]) + (x[0] - x[1]) ** 2 - 1.5 * x[0] + 2.5 * x[1] + 1.0),
        eval_g=g, default_x0=_start(2),
    )


@register("zakharov")
def zakharov(n=10):
    w = 0.5 * np.arange(1, n + 1, dtype=float)

    def f(x):
        s = w @ x
        return float(x @ x + s ** 2 + s ** 4)

    def g(x):
        s = w @ x
        return 2.0 * x + (2.0 * s + 4.0 * s ** 3) * w

    return Problem(name="zakharov", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
                   known_f_min=0.0, known_x_min=np.zeros(n))


@register("bohachevsky")
def bohachevsky():
    return Problem(
        name="bohachevsky", dim=2,
        eval_f=lambda x: float(x[0] ** 2 + 2 * x[1] ** 2 - 0.3 * np.cos(3 * np.pi * x[0])
                               - 0.4 * np.cos(4 * np.pi * x[1]) + 0.7),
        eval_g=lambda x: np.array([2 * x[0] + 0.9 * np.pi * np.sin(3 * np.pi * x[0]),
                                   4 * x[1] + 1.6 * np.pi * np.sin(4 * np.pi * x[1])]),
        default_x0=_start(2), known_f_min=0.0, known_x_min=np.zeros(2),
    )


@register("colville")
def colville():
    def f(x):
        x1, x2, x3, x4 = x
        return float(100 * (x1 ** 2 - x2) ** 2 + (x1 - 1) ** 2 + (x3 - 1) ** 2 + 90 * (x3 ** 2 - x4) ** 2
                     + 10.1 * ((x2 - 1) ** 2 + (x4 - 1) ** 2) + 19.8 * (x2 - 1) * (x4 - 1))

    def g(x):
        x1, x2, x3, x4 = x
        return np.array([
            400 * x1 * (x1 ** 2 - x2) + 2 * (x1 - 1),
            -200 * (x1 ** 2 - x2) + 20.2 * (x2 - 1) + 19.8 * (x4 - 1),
            2 * (x3 - 1) + 360 * x3 * (x3 ** 2 - x4),
            -180 * (x3 ** 2 - x4) + 20.2 * (x4 - 1) + 19.8 * (x2 - 1),
        ])

    return Problem(name="colville", dim=4, eval_f=f, eval_g=g, default_x0=_start(4),
                   known_f_min=0.0, known_x_min=np.ones(4))


@register("three_hump_camel")
def three_hump_camel():
    return Problem(
        name="three_hump_camel", dim=2,
        eval_f=lambda x: float(2 * x[0] ** 2 - 1.05 * x[0] ** 4 + x[0] ** 6 / 6 + x[0] * x[1] + x[1] ** 2),
        eval_g=lambda x: np.array([4 * x[0] - 4.2 * x[0] ** 3 + x[0] ** 5 + x[1], x[0] + 2 * x[1]]),
        default_x0=_start(2), known_f_min=0.0, known_x_min=np.zeros(2),
    )


@register("six_hump_camel")
def six_hump_camel():
    return Problem(
        name="six_hump_camel", dim=2,
        eval_f=lambda x: float((4 - 2.1 * x[0] ** 2 + x[0] ** 4 / 3) * x[0] ** 2 + x[0] * x[1]
                               + (-4 + 4 * x[1] ** 2) * x[1] ** 2),
        eval_g=lambda x: np.array([8 * x[0] - 8.4 * x[0] ** 3 + 2 * x[0] ** 5 + x[1],
                                   x[0] - 8 * x[1] + 16 * x[1] ** 3]),
        default_x0=_start(2),
    )


@register("trecanni")
def trecanni():
    return Problem(
        name="trecanni", dim=2,
        eval_f=lambda x: float(x[0] ** 4 + 4 * x[0] ** 3 + 4 * x[0] ** 2 + x[1] ** 2),
        eval_g=lambda x: np.array([4 * x[0] ** 3 + 12 * x[0] ** 2 + 8 * x[0], 2 * x[1]]),
        default_x0=_start(2), known_f_min=0.0, known_x_min=np.zeros(2),
    )


@register("zettl")
def zettl():
    def g(x):
        u = x[0] ** 2 + x[1] ** 2 - 2 * x[0]
        return np.array([2 * u * (2 * x[0] - 2) + 0.25, 4 * u * x[1]])

    return Problem(
        name="zettl", dim=2,
        eval_f=lambda x: float((x[0] ** 2 + x[1] ** 2 - 2 * x[0]) ** 2 + 0.25 * x[0]),
        eval_g=g, default_x0=_start(2),
    )


@register("levy13", mandatory=False)
def levy13():
    def f(x):
        return float(np.sin(3 * np.pi * x[0]) ** 2
                     + (x[0] - 1) ** 2 * (1 + np.sin(3 * np.pi * x[1]) ** 2)
                     + (x[1] - 1) ** 2 * (1 + np.sin(2 * np.pi * x[1]) ** 2))

    def g(x):
        return np.array([
            3 * np.pi * np.sin(6 * np.pi * x[0]) + 2 * (x[0] - 1) * (1 + np.sin(3 * np.pi * x[1]) ** 2),
            (x[0] - 1) ** 2 * 3 * np.pi * np.sin(6 * np.pi * x[1])
            + 2 * (x[1] - 1) * (1 + np.sin(2 * np.pi * x[1]) ** 2)
            + (x[1] - 1) ** 2 * 2 * np.pi * np.sin(4 * np.pi * x[1]),
        ])

    return Problem(name="levy13", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=0.0, known_x_min=np.ones(2))


@register("hosaki", mandatory=False)
def hosaki():
    def poly(t):
        return 1 - 8 * t + 7 * t ** 2 - 7 * t ** 3 / 3 + t ** 4 / 4

    def f(x):
        return float(poly(x[0]) * x[1] ** 2 * np.exp(-x[1]))

    def g(x):
        dp = -8 + 14 * x[0] - 7 * x[0] ** 2 + x[0] ** 3
        q = x[1] ** 2 * np.exp(-x[1])
        dq = (2 * x[1] - x[1] ** 2) * np.exp(-x[1])
        return np.array([dp * q, poly(x[0]) * dq])

    return Problem(name="hosaki", dim=2, eval_f=f, eval_g=g, default_x0=_start(2))


@register("perm", mandatory=False)
def perm(n=4, beta=10.0):
    j = np.arange(1, n + 1, dtype=float)
    i = j[:, None]

    def residuals(x):
        return ((j + beta) * (x ** i - j ** -i)).sum(axis=1)

    def f(x):
        r = residuals(x)
        return float(r @ r)

    def g(x):
        r = residuals(x)
        # d r_i / d x_k = (k + beta) i x_k^(i-1)
        jac = (j + beta) * i * x ** (i - 1)
        return 2.0 * jac.T @ r

    return Problem(name="perm", dim=n, eval_f=f, eval_g=g, default_x0=_start(n),
                   known_f_min=0.0, known_x_min=1.0 / j)


@register("power_sum", mandatory=False)
def power_sum():
    b = np.array([8.0, 18.0, 44.0, 114.0])
    i = np.arange(1, 5, dtype=float)[:, None]

    def f(x):
        r = (x ** i).sum(axis=1) - b
        return float(r @ r)

    def g(x):
        r = (x ** i).sum(axis=1) - b
        return 2.0 * (i * x ** (i - 1)).T @ r

    return Problem(name="power_sum", dim=4, eval_f=f, eval_g=g, default_x0=_start(4),
                   known_f_min=0.0, known_x_min=np.array([1.0, 2.0, 2.0, 3.0]))


@register("box_betts", mandatory=False)
def box_betts():
    k = 0.1 * np.arange(1, 11, dtype=float)
    c = np.exp(-k) - np.exp(-10.0 * k)

    def residuals(x):
        return np.exp(-k * x[0]) - np.exp(-k * x[1]) - x[2] * c

    def f(x):
        r = residuals(x)
        return float(r @ r)

    def g(x):
        r = residuals(x)
        return 2.0 * np.array([r @ (-k * np.exp(-k * x[0])), r @ (k * np.exp(-k * x[1])), r @ (-c)])

    return Problem(name="box_betts", dim=3, eval_f=f, eval_g=g, default_x0=_start(3),
                   known_f_min=0.0, known_x_min=np.array([1.0, 10.0, 1.0]))


@register("exp2", mandatory=False)
def exp2():
    k = np.arange(10, dtype=float) / 10.0
    c = np.exp(-k) - 5.0 * np.exp(-10.0 * k)

    def residuals(x):
        return np.exp(-k * x[0]) - 5.0 * np.exp(-k * x[1]) - c

    def f(x):
        r = residuals(x)
        return float(r @ r)

    def g(x):
        r = residuals(x)
        return 2.0 * np.array([r @ (-k * np.exp(-k * x[0])), r @ (5.0 * k * np.exp(-k * x[1]))])

    return Problem(name="exp2", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=0.0, known_x_min=np.array([1.0, 10.0]))


@register("drop_wave", mandatory=False)
def drop_wave():
    def f(x):
        r2 = x @ x
        return float(-(1 + np.cos(12 * np.sqrt(r2))) / (0.5 * r2 + 2))

    def g(x):
        r2 = float(x @ x)
        if r2 == 0.0:
            return np.zeros(2)
        r = np.sqrt(r2)
        den = 0.5 * r2 + 2
        dfdr = (12 * np.sin(12 * r) * den + (1 + np.cos(12 * r)) * r) / den ** 2
        return dfdr * x / r

    return Problem(name="drop_wave", dim=2, eval_f=f, eval_g=g, default_x0=_start(2),
                   known_f_min=-1.0, known_x_min=np.zeros(2))
