"""Generic numerical kernels shared by the physics modules.

Four primitives live here:

* :func:`integrate_semi_infinite` -- adaptive quadrature on (0, inf) via a
  variable transform onto the unit interval,
* :func:`integrate_windowed` -- quadrature of integrands carrying a
  sinc^2-shaped oscillatory window, with panels aligned to the window lobes,
* :func:`solve_fixed_point` -- damped iteration with a bisection fallback,
* :func:`volterra_step` -- trapezoidal product integration of the linear
  Volterra memory equation  x'(t) = -i w x(t) - int_0^t K(t-s) x(s) ds.

All functions are pure and hold no shared mutable state; they are safe to
call concurrently.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NonConvergent, NonFinite, StepTooCoarse

__all__ = [
    "QuadratureSpec",
    "FixedPointSpec",
    "integrate_semi_infinite",
    "integrate_windowed",
    "solve_fixed_point",
    "volterra_step",
]

_GL15_NODES, _GL15_WEIGHTS = np.polynomial.legendre.leggauss(15)
_GL7_NODES, _GL7_WEIGHTS = np.polynomial.legendre.leggauss(7)

# upper-tail extension of integrate_windowed: panel blocks grow geometrically
_FIRST_BLOCK = 32
_MAX_BLOCKS = 48
_MAX_PANELS = 2_500_000
_EVAL_CHUNK = 131072


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy contract for the quadrature routines.

    The returned value I satisfies |I - integral| <= abs_tol +
    rel_tol*|I| + tail_tol, where tail_tol bounds the neglected
    semi-infinite tail.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 200
    tail_tol: float = 1e-10

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0 or self.tail_tol < 0:
            raise DomainError("quadrature tolerances must be nonnegative")
        if self.abs_tol + self.rel_tol <= 0:
            raise DomainError("abs_tol + rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


@dataclass(frozen=True)
class FixedPointSpec:
    """Stopping rules for :func:`solve_fixed_point`."""

    tol: float = 1e-12
    max_iters: int = 200
    damping: float = 1.0

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.max_iters < 1:
            raise DomainError("max_iters must be at least 1")
        if not 0.0 < self.damping <= 1.0:
            raise DomainError("damping must lie in (0, 1]")


def _check_finite(values: np.ndarray, where: str) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFinite(f"{where} returned a non-finite value")


def integrate_semi_infinite(
    f: Callable[[float], float],
    spec: QuadratureSpec,
    transform: str = "rational",
    scale: float = 1.0,
) -> float:
    """Integrate f over (0, inf).

    The half line is mapped onto (0, 1) by a variable transform and the
    result is obtained by adaptive quadrature there, so no tail is ever
    truncated.  Integrands must decay at least as 1/w^3 for the adaptive
    scheme to converge at the upper endpoint.

    Args:
        f: integrand, evaluated pointwise.
        spec: accuracy contract.
        transform: "rational" (w = scale*t/(1-t)) or "tan"
            (w = scale*tan(pi t/2)).  Results agree within the contract;
            the option exists so independence of the transform is testable.
        scale: characteristic frequency of the integrand, used to place the
            transform's turnover point.

    Raises:
        NonFinite: f returned NaN or infinity.
        NonConvergent: the subdivision budget was exhausted first.
    """
    if scale <= 0:
        raise DomainError("scale must be positive")
    if transform == "rational":
        def g(t: float) -> float:
            w = scale * t / (1.0 - t)
            y = f(w)
            if not math.isfinite(y):
                raise NonFinite(f"integrand returned {y!r} at w={w!r}")
            return y * scale / (1.0 - t) ** 2
    elif transform == "tan":
        half_pi = 0.5 * math.pi
        def g(t: float) -> float:
            c = math.cos(half_pi * t)
            w = scale * math.sin(half_pi * t) / c
            y = f(w)
            if not math.isfinite(y):
                raise NonFinite(f"integrand returned {y!r} at w={w!r}")
            return y * scale * half_pi / (c * c)
    else:
        raise DomainError(f"unknown transform {transform!r}")

    try:
        out = integrate.quad(
            g,
            0.0,
            1.0,
            epsabs=spec.abs_tol + spec.tail_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
        )
    except NonFinite:
        raise
    except ValueError as exc:  # tolerances below QUADPACK's resolution
        raise DomainError(str(exc)) from exc
    if len(out) > 3:
        raise NonConvergent(
            f"semi-infinite quadrature failed: {out[3].strip()} "
            f"(estimated error {out[1]:.3e})"
        )
    return out[0]


def _eval_batch(f, x: np.ndarray) -> np.ndarray:
    """Evaluate f on an array, falling back to a scalar loop."""
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        y = np.fromiter((float(f(float(v))) for v in x.ravel()),
                        dtype=float, count=x.size).reshape(x.shape)
    _check_finite(y, "integrand")
    return y


def _gl_panels(f, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre 15 on each panel, with |GL15-GL7| as error estimate."""
    if lo.size > _EVAL_CHUNK:  # bound the transient node arrays
        sums, errs = [], []
        for i in range(0, lo.size, _EVAL_CHUNK):
            s, e = _gl_panels(f, lo[i:i + _EVAL_CHUNK], hi[i:i + _EVAL_CHUNK])
            sums.append(s)
            errs.append(e)
        return np.concatenate(sums), np.concatenate(errs)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes15 = mid[:, None] + half[:, None] * _GL15_NODES[None, :]
    vals15 = _eval_batch(f, nodes15)
    s15 = (vals15 * _GL15_WEIGHTS[None, :]).sum(axis=1) * half
    nodes7 = mid[:, None] + half[:, None] * _GL7_NODES[None, :]
    vals7 = _eval_batch(f, nodes7)
    s7 = (vals7 * _GL7_WEIGHTS[None, :]).sum(axis=1) * half
    return s15, np.abs(s15 - s7)


def _lobe_subedges(lo: float, hi: float, center: float,
                   smooth_scale: float) -> np.ndarray:
    """Edges splitting [lo, hi] so no panel is wider than the local cap.

    The cap is the smooth scale near the window centre and grows like half
    the distance from it, which resolves localized spectral structure while
    keeping the count logarithmic for very wide lobes.
    """
    edges = [lo]
    x = lo
    while hi - x > 1e-12 * (abs(hi) + 1.0):
        x = min(x + max(smooth_scale, 0.5 * abs(x - center)), hi)
        edges.append(x)
    return np.asarray(edges, dtype=float)


def integrate_windowed(
    f: Callable,
    center: float,
    width: float,
    spec: QuadratureSpec,
    smooth_scale: float = 1.0,
) -> float:
    """Integrate f over (0, inf) when f carries a sinc^2-shaped window.

    The window is assumed peaked at `center` with lobes of spacing
    2*pi*width (zeros of sin^2((w-center)/(2*width))), so panel boundaries
    are placed at the lobe zeros and no panel straddles a lobe.  Lobes much
    wider than `smooth_scale` (the frequency scale of f's non-window
    factor) are pre-split so localized structure cannot hide between
    quadrature nodes.  The upper tail is extended in geometrically growing
    blocks; partial block sums are Aitken-accelerated when the integrand
    decays slowly (the bare window decays only like 1/(w-center)^2).
    Panels whose GL15/GL7 discrepancy exceeds the error budget are
    subdivided further.

    Accuracy contract and errors are those of
    :func:`integrate_semi_infinite`.
    """
    if width <= 0:
        raise DomainError("width must be positive")
    if center < 0:
        raise DomainError("center must be nonnegative")
    if smooth_scale <= 0:
        raise DomainError("smooth_scale must be positive")
    h = 2.0 * math.pi * width
    fine = h <= smooth_scale  # narrow lobes never need pre-splitting

    panel_lo: list[np.ndarray] = []
    panel_hi: list[np.ndarray] = []
    panel_sum: list[np.ndarray] = []
    panel_err: list[np.ndarray] = []

    def add_panels(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        s, e = _gl_panels(f, lo, hi)
        panel_lo.append(lo)
        panel_hi.append(hi)
        panel_sum.append(s)
        panel_err.append(e)
        return s

    # below the center: whole lobes down to the last boundary, then the
    # remnant [0, center - n_lo*h]
    if center > 0.0:
        if fine:
            n_lo = int(math.floor(center / h * (1.0 - 1e-14)))
            edges = center - h * np.arange(n_lo + 1, dtype=float)
            if n_lo > 0:
                add_panels(edges[1:], edges[:-1])
            if edges[-1] > 0.0:
                add_panels(np.array([0.0]), np.array([edges[-1]]))
        else:
            hi_edge = center
            while hi_edge > 0.0:
                lo_edge = max(hi_edge - h, 0.0)
                edges = _lobe_subedges(lo_edge, hi_edge, center, smooth_scale)
                add_panels(edges[:-1], edges[1:])
                hi_edge = lo_edge

    # above the center: geometric blocks of lobes until the tail is under
    # control
    tail_budget = max(spec.tail_tol, 0.0)
    k = 0
    nblock = _FIRST_BLOCK if fine else 4
    upper_sum = 0.0
    block_partials: list[float] = []
    prev_extrap: float | None = None
    tail_correction = 0.0
    tail_done = False
    for _ in range(_MAX_BLOCKS):
        lobe_lo = center + h * (k + np.arange(nblock, dtype=float))
        if fine:
            lobe_sums = add_panels(lobe_lo, lobe_lo + h)
        else:
            sub_lo, sub_hi, starts = [], [], []
            pos = 0
            for ll in lobe_lo:
                edges = _lobe_subedges(ll, ll + h, center, smooth_scale)
                sub_lo.append(edges[:-1])
                sub_hi.append(edges[1:])
                starts.append(pos)
                pos += edges.size - 1
            s = add_panels(np.concatenate(sub_lo), np.concatenate(sub_hi))
            lobe_sums = np.add.reduceat(s, starts)
        upper_sum += float(lobe_sums.sum())
        k += nblock
        block_partials.append(upper_sum)

        # raw bound: assumes the lobe envelope decays no slower than 1/d^2
        last = float(np.abs(lobe_sums[-4:]).max())
        dist = float(lobe_lo[-1] + h - center)
        raw_tail = 2.0 * last * dist / h
        if raw_tail <= tail_budget:
            tail_done = True
            break

        # Aitken acceleration of the partial sums (geometric deficit decay)
        if len(block_partials) >= 3:
            s0, s1, s2 = block_partials[-3:]
            d1, d2 = s1 - s0, s2 - s1
            if abs(d1 - d2) > 0.0 and abs(d2) < abs(d1):
                extrap = s2 + d2 * d2 / (d1 - d2)
                if prev_extrap is not None and \
                        2.0 * abs(extrap - prev_extrap) <= tail_budget:
                    tail_correction = extrap - s2
                    tail_done = True
                    break
                prev_extrap = extrap
        nblock = min(nblock * 2, max(_MAX_PANELS - k, 0))
        if nblock == 0:
            break
    if not tail_done:
        raise NonConvergent(
            "windowed quadrature: upper tail did not converge within the "
            f"panel budget (last raw bound {raw_tail:.3e})"
        )

    lo = np.concatenate(panel_lo)
    hi = np.concatenate(panel_hi)
    sums = np.concatenate(panel_sum)
    errs = np.concatenate(panel_err)

    # refine panels whose GL15/GL7 discrepancy dominates the budget
    for _ in range(spec.max_subdivisions):
        total = float(sums.sum()) + tail_correction
        budget = spec.abs_tol + spec.rel_tol * abs(total)
        if float(errs.sum()) <= budget:
            return total
        bad = errs > budget / max(errs.size, 1)
        if not bad.any():
            bad = errs >= 0.5 * errs.max()
        if lo.size + int(bad.sum()) > _MAX_PANELS:
            raise NonConvergent("windowed quadrature: panel budget exhausted")
        mid = 0.5 * (lo[bad] + hi[bad])
        new_lo = np.concatenate([lo[bad], mid])
        new_hi = np.concatenate([mid, hi[bad]])
        new_s, new_e = _gl_panels(f, new_lo, new_hi)
        lo = np.concatenate([lo[~bad], new_lo])
        hi = np.concatenate([hi[~bad], new_hi])
        sums = np.concatenate([sums[~bad], new_s])
        errs = np.concatenate([errs[~bad], new_e])
    raise NonConvergent(
        "windowed quadrature: subdivision budget exhausted with panel error "
        f"{float(errs.sum()):.3e}"
    )


def solve_fixed_point(
    map_fn: Callable[[float], float],
    x0: float,
    spec: FixedPointSpec,
    method: str = "auto",
) -> float:
    """Solve x = map_fn(x) for x in (0, 1].

    Damped iteration x <- (1-d)*x + d*map_fn(x) is tried first; on
    oscillation, escape from (0, 1], or an exhausted iteration budget the
    solver falls back to bisection of g(x) = x - map_fn(x) on [1e-12, 1].
    `method` may force a single path ("damped" or "bisection"); "auto"
    is the fallback behaviour.  The returned x satisfies
    |x - map_fn(x)| <= spec.tol.

    Raises:
        NonConvergent: neither path reached the residual tolerance.
    """
    if method not in ("auto", "damped", "bisection"):
        raise DomainError(f"unknown method {method!r}")
    if not 0.0 < x0 <= 1.0:
        raise DomainError("x0 must lie in (0, 1]")

    if method in ("auto", "damped"):
        x = float(x0)
        prev_step = 0.0
        flips = 0
        fell_through = True
        for _ in range(spec.max_iters):
            fx = map_fn(x)
            if not math.isfinite(fx):
                break
            residual = fx - x
            if abs(residual) <= spec.tol:
                return x
            step = spec.damping * residual
            if prev_step != 0.0 and step * prev_step < 0 and \
                    abs(step) >= 0.95 * abs(prev_step):
                flips += 1
                if flips >= 2:
                    break  # oscillating: hand over to bisection
            else:
                flips = 0
            prev_step = step
            x += step
            if not (0.0 < x <= 1.0 + 1e-12) or not math.isfinite(x):
                break
        else:
            fell_through = False
        if method == "damped":
            raise NonConvergent(
                "damped fixed-point iteration did not reach tolerance"
                + ("" if fell_through else f" in {spec.max_iters} iterations")
            )

    # bisection fallback on g(x) = x - map_fn(x)
    lo, hi = 1e-12, 1.0
    g_lo = lo - map_fn(lo)
    g_hi = hi - map_fn(hi)
    if abs(g_hi) <= spec.tol:
        return hi
    if abs(g_lo) <= spec.tol:
        return lo
    if g_lo * g_hi > 0:  # scan for a bracket inside (0, 1]
        grid = np.linspace(lo, hi, 65)
        vals = np.array([x - map_fn(x) for x in grid])
        sign_change = np.nonzero(vals[:-1] * vals[1:] <= 0)[0]
        if sign_change.size == 0:
            raise NonConvergent("no bisection bracket found in (0, 1]")
        i = int(sign_change[0])
        lo, hi, g_lo = grid[i], grid[i + 1], vals[i]
    for _ in range(max(spec.max_iters, 1)):
        mid = 0.5 * (lo + hi)
        g_mid = mid - map_fn(mid)
        if abs(g_mid) <= spec.tol:
            return mid
        if g_lo * g_mid <= 0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    raise NonConvergent("bisection did not reach the residual tolerance")


def volterra_step(
    kernel: Callable,
    frequency: float,
    grid_step: float,
    n_steps: int,
) -> np.ndarray:
    """March x'(t) = -i*frequency*x(t) - int_0^t K(t-s) x(s) ds, x(0)=1.

    Trapezoidal product integration on the uniform grid t_n = n*grid_step:
    both the time derivative and the memory integral use trapezoidal
    weights, giving a second-order accurate, unconditionally stable
    implicit recursion.  Cost is O(n_steps^2) from the convolution sums.

    `kernel` is called with an ndarray of times when it supports that,
    otherwise pointwise.  Returns the complex amplitudes x(t_0..t_n).

    Raises:
        StepTooCoarse: |frequency|*grid_step > 0.5.
        NonFinite: kernel samples are not finite.
    """
    h = float(grid_step)
    if h <= 0.0:
        raise DomainError("grid_step must be positive")
    n = int(n_steps)
    if n < 0:
        raise DomainError("n_steps must be nonnegative")
    if abs(frequency) * h > 0.5:
        raise StepTooCoarse(
            f"frequency*grid_step = {abs(frequency) * h:.3f} exceeds 0.5; "
            "refine the grid"
        )

    times = h * np.arange(n + 1)
    try:
        kv = np.asarray(kernel(times), dtype=complex)
        if kv.shape != times.shape:
            raise TypeError
    except (TypeError, ValueError):
        kv = np.array([complex(kernel(t)) for t in times])
    if not np.all(np.isfinite(kv.real)) or not np.all(np.isfinite(kv.imag)):
        raise NonFinite("kernel returned a non-finite sample")

    x = np.empty(n + 1, dtype=complex)
    y = np.empty(n + 1, dtype=complex)  # trapezoidal memory integral
    x[0] = 1.0
    y[0] = 0.0
    k0 = kv[0]
    half_rot = 0.5j * frequency * h
    denom = 1.0 + half_rot + 0.25 * h * h * k0
    for m in range(n):
        z = 0.5 * h * kv[m + 1]  # j = 0 endpoint of the new integral
        if m >= 1:
            z += h * np.dot(kv[m:0:-1], x[1:m + 1])
        x[m + 1] = (x[m] * (1.0 - half_rot) - 0.5 * h * (y[m] + z)) / denom
        y[m + 1] = z + 0.5 * h * k0 * x[m + 1]
    return x
