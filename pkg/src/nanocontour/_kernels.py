"""Hot inner loop of the closed-loop simulator.

The control loop is a causal chain (each plant update feeds the next error
computation), so it cannot be vectorized; it runs as a per-sample loop over
preallocated numpy arrays. By default the loop is JIT-compiled with numba,
which makes a 6 s / 10 kHz run take milliseconds. Setting the environment
variable NANOCONTOUR_NO_NUMBA=1 before import selects the pure-Python
fallback of the very same function (slow but dependency-free and
arithmetically identical: no fastmath, no reassociation).

benchmarks/compare_backends.py times the two paths against each other.
"""

from __future__ import annotations

import math
import os

DISABLE_ENV = "NANOCONTOUR_NO_NUMBA"

_disabled = os.environ.get(DISABLE_ENV, "").strip().lower() in ("1", "true", "yes")
if not _disabled:
    try:
        from numba import njit
        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def _closed_loop(x_ref, y_ref, theta, on_circle,
                 cx, cy, radius,
                 ax11, ax12, ax21, ax22, bx1, bx2,
                 ay11, ay12, ay21, ay22, by1, by2,
                 k_px, k_ix, k_py, k_iy, k_dx, k_dy,
                 dt, sat_limit, coupling_on,
                 x0, y0,
                 x_act, y_act, e_x, e_y, eps, v_rx, v_ry):
    """Run the fixed-step loop; fill the output arrays in place.

    Per sample k: axial errors from the current plant positions, contour
    projection, PI + coupling outputs, log the step-k record, then advance
    both plants under the held outputs. The logged eps is the exact signed
    circle distance on circle samples and the signed perpendicular line
    distance otherwise. sat_limit = inf disables saturation; when finite,
    the integrator update is discarded on any sample whose summed output
    saturates. Returns the step index at which the state became non-finite,
    or -1 on success.
    """
    n = x_ref.shape[0]
    px = x0
    vx = 0.0
    py = y0
    vy = 0.0
    acc_x = 0.0
    acc_y = 0.0
    for k in range(n):
        ex = x_ref[k] - px
        ey = y_ref[k] - py
        mx = math.cos(theta[k])
        my = math.sin(theta[k])

        nacc_x = acc_x + ex * dt
        nacc_y = acc_y + ey * dt
        ux = k_px * ex + k_ix * nacc_x
        uy = k_py * ey + k_iy * nacc_y
        if coupling_on:
            eps_x = my * my * ex - mx * my * ey
            eps_y = -mx * my * ex + mx * mx * ey
            ux = ux + k_dx * eps_x
            uy = uy + k_dy * eps_y
        if ux > sat_limit:
            ux = sat_limit
        elif ux < -sat_limit:
            ux = -sat_limit
        else:
            acc_x = nacc_x
        if uy > sat_limit:
            uy = sat_limit
        elif uy < -sat_limit:
            uy = -sat_limit
        else:
            acc_y = nacc_y

        x_act[k] = px
        y_act[k] = py
        e_x[k] = ex
        e_y[k] = ey
        if on_circle[k]:
            dcx = px - cx
            dcy = py - cy
            eps[k] = math.sqrt(dcx * dcx + dcy * dcy) - radius
        else:
            eps[k] = ey * mx - ex * my
        v_rx[k] = ux
        v_ry[k] = uy

        npx = ax11 * px + ax12 * vx + bx1 * ux
        nvx = ax21 * px + ax22 * vx + bx2 * ux
        npy = ay11 * py + ay12 * vy + by1 * uy
        nvy = ay21 * py + ay22 * vy + by2 * uy
        px = npx
        vx = nvx
        py = npy
        vy = nvy
        if not (math.isfinite(px) and math.isfinite(vx)
                and math.isfinite(py) and math.isfinite(vy)):
            return k
    return -1


if NUMBA_ENABLED:
    closed_loop = njit(cache=True, fastmath=False)(_closed_loop)
else:
    closed_loop = _closed_loop
