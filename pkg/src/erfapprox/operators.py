"""The four neural-network operators and their complex wrappers.

* ``op_A``: interval quasi-interpolation, normalized by the window sum.
* ``op_B``: whole-line quasi-interpolation with certified truncation.
* ``op_C``: Kantorovich variant replacing samples f(k/n) by cell averages.
* ``op_D``: quadrature variant replacing samples by convex sub-cell combos.
* ``op_complex``: componentwise application to a complex function.

All operators accept a scalar x or a 1-D array of x values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import (
    DomainViolation,
    InvalidWeights,
    PreconditionViolated,
    UnboundedFunction,
)
from .funcs import ComplexFunctionSpec, FunctionSpec
from .partition import DEFAULT_POLICY, IndexWindow, TruncationPolicy, _window_offsets
from .special_functions import chi

# Window half-width for op_A's shared numerator/denominator pass; the
# envelope tail beyond radius 9 is below 1e-27, negligible against the
# denominator floor chi(1).
_A_RADIUS = 9


@dataclass(frozen=True)
class QuadratureWeights:
    """Convex weights w_0..w_theta over sub-cell nodes k/n + r/(n*theta)."""

    theta: int
    w: Tuple[float, ...]

    def __post_init__(self):
        if self.theta < 1:
            raise InvalidWeights("theta must be a positive integer")
        if len(self.w) != self.theta + 1:
            raise InvalidWeights(f"need theta+1 = {self.theta + 1} weights, got {len(self.w)}")
        if any(wr < 0.0 for wr in self.w):
            raise InvalidWeights("weights must be nonnegative")
        if abs(math.fsum(self.w) - 1.0) > 1e-15:
            raise InvalidWeights(f"weights sum to {math.fsum(self.w)!r}, not 1")

    @staticmethod
    def degenerate(theta: int = 1) -> "QuadratureWeights":
        """w_0 = 1, rest 0: collapses op_D onto op_B."""
        return QuadratureWeights(theta, (1.0,) + (0.0,) * theta)

    @staticmethod
    def uniform(theta: int) -> "QuadratureWeights":
        return QuadratureWeights(theta, (1.0 / (theta + 1),) * (theta + 1))


@dataclass(frozen=True)
class OperatorConfig:
    family: str
    n: int
    interval: Optional[Tuple[float, float]] = None
    truncation: TruncationPolicy = field(default_factory=lambda: DEFAULT_POLICY)
    kantorovich_nodes: int = 8
    weights: Optional[QuadratureWeights] = None

    def __post_init__(self):
        if self.family not in ("A", "B", "C", "D"):
            raise PreconditionViolated(f"unknown operator family {self.family!r}")
        if self.n < 1:
            raise PreconditionViolated("n must be >= 1")
        if self.family == "A":
            if self.interval is None:
                raise PreconditionViolated("family A needs an interval [a, b]")
            a, b = self.interval
            if not a < b:
                raise PreconditionViolated(f"need a < b, got [{a}, {b}]")
            IndexWindow.for_interval(self.n, a, b)
        if self.family == "C" and self.kantorovich_nodes < 2:
            raise PreconditionViolated("kantorovich_nodes must be >= 2")
        if self.family == "D" and self.weights is None:
            raise PreconditionViolated("family D needs quadrature weights")


def _as_points(x):
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    return xs, np.ndim(x) == 0


def op_A(f: FunctionSpec, x, cfg: OperatorConfig):
    """Normalized interval operator: sum f(k/n) chi(nx-k) / sum chi(nx-k)."""
    if cfg.family != "A":
        raise PreconditionViolated("cfg.family must be 'A'")
    a, b = cfg.interval
    n = cfg.n
    xs, scalar = _as_points(x)
    if np.any(xs < a) or np.any(xs > b):
        raise DomainViolation(f"x outside [{a}, {b}]")

    win = IndexWindow.for_interval(n, a, b)
    u = n * xs
    centers = np.round(u).astype(np.int64)
    ks = centers[:, None] + np.arange(-_A_RADIUS, _A_RADIUS + 1)[None, :]
    valid = (ks >= win.lo) & (ks <= win.hi)
    chiv = np.where(valid, chi(u[:, None] - ks), 0.0)
    fk = f.eval(np.clip(ks, win.lo, win.hi) / n)
    num = (fk * chiv).sum(axis=1)
    den = chiv.sum(axis=1)
    out = num / den
    return float(out[0]) if scalar else out


def _line_nodes(n: int, xs: np.ndarray, policy: TruncationPolicy):
    u = n * xs
    offs = _window_offsets(policy.radius())
    ks = np.round(u)[:, None] + offs[None, :]
    chiv = chi(u[:, None] - ks)
    return ks, chiv


def _require_bounded(f: FunctionSpec, what: str):
    if f.sup_norm is None:
        raise UnboundedFunction(
            f"{f.name}: {what} needs a finite sup_norm for its truncation certificate"
        )


def op_B(f: FunctionSpec, x, cfg: OperatorConfig):
    """Whole-line quasi-interpolation: sum f(k/n) chi(nx-k), truncated."""
    if cfg.family not in ("B", "D"):
        raise PreconditionViolated("cfg.family must be 'B'")
    _require_bounded(f, "op_B")
    xs, scalar = _as_points(x)
    ks, chiv = _line_nodes(cfg.n, xs, cfg.truncation)
    out = (f.eval(ks / cfg.n) * chiv).sum(axis=1)
    return float(out[0]) if scalar else out


def op_C(f: FunctionSpec, x, cfg: OperatorConfig):
    """Kantorovich operator: sum (n * integral of f over [k/n,(k+1)/n]) chi(nx-k).

    Cell integrals use fixed-order Gauss-Legendre (cfg.kantorovich_nodes).
    """
    if cfg.family != "C":
        raise PreconditionViolated("cfg.family must be 'C'")
    _require_bounded(f, "op_C")
    xs, scalar = _as_points(x)
    n = cfg.n
    ks, chiv = _line_nodes(n, xs, cfg.truncation)
    glx, glw = leggauss(cfg.kantorovich_nodes)
    # mean of f over [k/n, (k+1)/n]: sum_j (glw_j/2) f(k/n + (glx_j+1)/(2n))
    tt = ks[:, :, None] / n + (glx[None, None, :] + 1.0) / (2.0 * n)
    cell_means = np.tensordot(f.eval(tt), glw / 2.0, axes=([2], [0]))
    out = (cell_means * chiv).sum(axis=1)
    return float(out[0]) if scalar else out


def op_D(f: FunctionSpec, x, cfg: OperatorConfig):
    """Quadrature operator: samples replaced by sum_r w_r f(k/n + r/(n*theta))."""
    if cfg.family != "D":
        raise PreconditionViolated("cfg.family must be 'D'")
    _require_bounded(f, "op_D")
    wts = cfg.weights
    xs, scalar = _as_points(x)
    n = cfg.n
    ks, chiv = _line_nodes(n, xs, cfg.truncation)
    rr = np.arange(wts.theta + 1, dtype=float)
    tt = ks[:, :, None] / n + rr[None, None, :] / (n * wts.theta)
    delta = np.tensordot(f.eval(tt), np.asarray(wts.w), axes=([2], [0]))
    out = (delta * chiv).sum(axis=1)
    return float(out[0]) if scalar else out


_FAMILY_OPS = {"A": op_A, "B": op_B, "C": op_C, "D": op_D}


def apply_operator(f: FunctionSpec, x, cfg: OperatorConfig):
    return _FAMILY_OPS[cfg.family](f, x, cfg)


def op_complex(f: ComplexFunctionSpec, x, cfg: OperatorConfig):
    """Componentwise operator: (Op(re), Op(im)), bit-identical to real calls."""
    op = _FAMILY_OPS[cfg.family]
    return op(f.re, x, cfg), op(f.im, x, cfg)
