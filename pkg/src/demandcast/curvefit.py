"""Growth-curve fitting for GDP series.

Nonlinear least squares by damped Gauss-Newton (Levenberg-style damping).
Two model forms: exponential  y = A*exp(B*x) + C  and a Gompertz sigmoid
y = A*exp(-exp(mu*e*(B - x)/A) + 1) + C  whose upper asymptote is A*e + C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveInput, SingularFit

MAX_ITER = 500
REL_SSE_TOL = 1e-10


@dataclass(frozen=True)
class GrowthCurve:
    form: str           # "exponential" | "gompertz"
    A: float
    B: float
    C: float
    mu: float = float("nan")  # gompertz only
    fit_r2: float = float("nan")

    def __call__(self, x):
        if self.form == "exponential":
            return eval_exponential(np.asarray(x, float), self.A, self.B, self.C)
        return eval_gompertz(np.asarray(x, float), self.A, self.B, self.mu, self.C)


def eval_exponential(x, A, B, C):
    return A * np.exp(B * np.asarray(x, float)) + C


def eval_gompertz(x, A, B, mu, C):
    arg = np.clip(mu * math.e * (B - np.asarray(x, float)) / A, -700.0, 700.0)
    return A * np.exp(np.clip(1.0 - np.exp(arg), -700.0, 700.0)) + C


def r_squared(pred, actual) -> float:
    """1 - SSE/SST against the mean of the actuals."""
    pred = np.asarray(pred, float)
    actual = np.asarray(actual, float)
    sst = float(np.sum((actual - actual.mean()) ** 2))
    if sst == 0.0:
        from .errors import ZeroVariance
        raise ZeroVariance("actual series is constant")
    sse = float(np.sum((actual - pred) ** 2))
    return 1.0 - sse / sst


def _gauss_newton(residual, jacobian, p0, lower=None):
    """Minimize ||residual(p)||^2; returns (p, sse). Damping grows on a bad
    step and shrinks on a good one; parameters can be floored at `lower`."""
    p = np.asarray(p0, float).copy()
    lower = None if lower is None else np.asarray(lower, float)
    if lower is not None:
        p = np.maximum(p, lower)
    r = residual(p)
    sse = float(r @ r)
    lam = 1e-3
    for _ in range(MAX_ITER):
        J = jacobian(p)
        g = J.T @ r
        H = J.T @ J
        stepped = False
        for _ in range(40):
            try:
                step = np.linalg.solve(H + lam * np.diag(np.maximum(np.diag(H), 1e-12)), g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            cand = p - step
            if lower is not None:
                cand = np.maximum(cand, lower)
            rc = residual(cand)
            sse_c = float(rc @ rc)
            if np.isfinite(sse_c) and sse_c <= sse:
                improved = sse - sse_c
                p, r, prev = cand, rc, sse
                sse = sse_c
                lam = max(lam / 10.0, 1e-12)
                stepped = True
                if prev > 0 and improved / prev < REL_SSE_TOL:
                    return p, sse
                break
            lam *= 10.0
        if not stepped:
            return p, sse
        if sse == 0.0:
            return p, sse
    return p, sse


def fit_exponential(years, values) -> GrowthCurve:
    """Fit y = A*exp(B*x) + C, C >= 0; internally parametrized as
    (log A, B, C) so A spanning hundreds of orders of magnitude stays
    well conditioned."""
    x = np.asarray(years, float)
    y = np.asarray(values, float)
    if len(x) < 4:
        raise SingularFit("need at least 4 points")
    if np.any(y <= 0):
        raise NonPositiveInput("exponential fit needs positive values")

    # log-linear start (C=0)
    b1, b0 = np.polyfit(x, np.log(y), 1)
    p0 = np.array([b0, b1, 0.0])

    def model(p):
        return np.exp(np.clip(p[0] + p[1] * x, -700.0, 700.0)) + p[2]

    def residual(p):
        return model(p) - y

    def jacobian(p):
        core = np.exp(np.clip(p[0] + p[1] * x, -700.0, 700.0))
        return np.column_stack([core, core * x, np.ones_like(x)])

    lower = np.array([-np.inf, -np.inf, 0.0])
    p, sse = _gauss_newton(residual, jacobian, p0, lower=lower)
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst == 0.0 or p[1] < 1e-6:
        raise SingularFit("no growth signal (B ~ 0)")
    r2 = 1.0 - sse / sst
    return GrowthCurve("exponential", A=float(np.exp(p[0])), B=float(p[1]),
                       C=float(p[2]), fit_r2=r2)


def fit_gompertz(years, values) -> GrowthCurve:
    """Fit the Gompertz growth form; raises SingularFit on a series with a
    nonpositive trend."""
    x = np.asarray(years, float)
    y = np.asarray(values, float)
    if len(x) < 5:
        raise SingularFit("need at least 5 points")
    if np.any(y <= 0):
        raise NonPositiveInput("gompertz fit needs positive values")
    trend = np.polyfit(x, y, 1)[0]
    if trend <= 0:
        raise SingularFit("nonpositive trend: not a growth series")

    # Upper asymptote of the form is A*e, so start A at max(y)*1.05/e.
    a0 = 1.05 * float(y.max()) / math.e
    b0 = float(x[len(x) // 2])
    mu0 = float(max(np.max(np.diff(y) / np.diff(x)), trend))
    p0 = np.array([a0, b0, mu0, 0.0])

    def residual(p):
        return eval_gompertz(x, p[0], p[1], p[2], p[3]) - y

    def jacobian(p, eps=None):
        # forward differences; analytic gradients buy nothing here
        J = np.empty((len(x), 4))
        r0 = residual(p)
        for j in range(4):
            h = max(1e-7 * abs(p[j]), 1e-9)
            pj = p.copy()
            pj[j] += h
            J[:, j] = (residual(pj) - r0) / h
        return J

    lower = np.array([1e-12, -np.inf, 1e-12, 0.0])
    p, sse = _gauss_newton(residual, jacobian, p0, lower=lower)
    sst = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - sse / sst
    if not np.isfinite(sse) or r2 < 0.0:
        raise SingularFit("gompertz fit did not converge")
    return GrowthCurve("gompertz", A=float(p[0]), B=float(p[1]), C=float(p[3]),
                       mu=float(p[2]), fit_r2=r2)
