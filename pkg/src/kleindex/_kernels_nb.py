"""Numba JIT kernels for the hot rendering loops.

The point arithmetic here mirrors Moebius.__call__ and the vectorized
twins in _kernels_np expression by expression.  Canvases are compared
bit-for-bit across backends in the tests, so any change to a formula in one
place must be repeated in the other two.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# splitmix64 constants (Steele, Lea, Flood 2014); the k-th draw for seed s
# is mix64(s + (k+1)*GAMMA) with all arithmetic mod 2^64.
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, nogil=True)
def _apply_step(zr, zi, zinf, mr, mi, nr, ni, pr, pi, qr, qi):
    """One Moebius application in explicit real/imaginary arithmetic.

    The sphere point is (zr, zi) plus an at-infinity flag; flagged points
    carry (0.0, 0.0) so every backend stores identical junk values.
    """
    if zinf:
        dd = pr * pr + pi * pi
        if dd == 0.0:
            return 0.0, 0.0, True
        wr = (mr * pr + mi * pi) / dd
        wi = (mi * pr - mr * pi) / dd
    else:
        dr = pr * zr - pi * zi + qr
        di = pr * zi + pi * zr + qi
        dd = dr * dr + di * di
        if dd == 0.0:
            return 0.0, 0.0, True
        ur = mr * zr - mi * zi + nr
        ui = mr * zi + mi * zr + ni
        wr = (ur * dr + ui * di) / dd
        wi = (ui * dr - ur * di) / dd
    if math.isfinite(wr) and math.isfinite(wi):
        return wr, wi, False
    return 0.0, 0.0, True


@njit(cache=True, nogil=True)
def _plot_point(hits, zr, zi, zinf, x_min, x_max, y_min, y_max, dx, dy):
    """Bin one point into the hit grid; 0 plotted, 1 outside, 2 at infinity.

    Pixel mapping is floor division of the viewport offset with the top row
    at y_max; points exactly on the max edges clamp to the last row/column.
    """
    if zinf:
        return 2
    if x_min <= zr <= x_max and y_min <= zi <= y_max:
        px = int((zr - x_min) / dx)
        py = int((y_max - zi) / dy)
        if px >= hits.shape[1]:
            px = hits.shape[1] - 1
        if py >= hits.shape[0]:
            py = hits.shape[0] - 1
        hits[py, px] += 1
        return 0
    return 1


@njit(cache=True, nogil=True)
def index_scan_chunk(n_lo, n_hi, depth, m, table,
                     gmr, gmi, gnr, gni, gpr, gpi, gqr, gqi,
                     seed_re, seed_im, seed_inf, hits,
                     x_min, x_max, y_min, y_max, dx, dy):
    """Render every accepted depth-`depth` word with index in [n_lo, n_hi).

    Parameters
    ----------
    table : int64[:, :]
        Indexed Cayley table, state 0 = crash.
    gmr..gqi : float64[:]
        Generator coefficients indexed by digit (slot 0 unused).
    seed_re, seed_im, seed_inf :
        Start point of the orbit, with an explicit at-infinity flag.
    hits : int64[:, :]
        Hit grid, accumulated in place.

    Returns
    -------
    (accepted, rejected, plotted, outside, at_infinity) counters.

    Each index is decoded by repeated divmod (buf[0] is the rightmost
    digit, applied first), checked against the acceptor with early exit,
    and only then orbit-evaluated, so the per-word storage is one buffer
    of `depth` digits regardless of how many words the range covers.
    """
    accepted = 0
    rejected = 0
    plotted = 0
    outside = 0
    at_inf = 0
    buf = np.empty(64, dtype=np.int64)
    for n in range(n_lo, n_hi):
        q = n
        for i in range(depth):
            buf[i] = q % m + 1
            q //= m
        state = 0
        ok = True
        for i in range(depth):
            state = table[state, buf[i]]
            if state == 0:
                ok = False
                break
        if not ok:
            rejected += 1
            continue
        accepted += 1
        zr = seed_re
        zi = seed_im
        zinf = seed_inf
        for i in range(depth):
            g = buf[i]
            zr, zi, zinf = _apply_step(zr, zi, zinf,
                                       gmr[g], gmi[g], gnr[g], gni[g],
                                       gpr[g], gpi[g], gqr[g], gqi[g])
        code = _plot_point(hits, zr, zi, zinf, x_min, x_max, y_min, y_max, dx, dy)
        if code == 0:
            plotted += 1
        elif code == 1:
            outside += 1
        else:
            at_inf += 1
    return accepted, rejected, plotted, outside, at_inf


@njit(cache=True, nogil=True)
def walk_digits(steps, m, inverse_of, rng_seed):
    """Draw a digit sequence for the random-walk renderer.

    The k-th digit is picked with splitmix64 draw k, uniformly over the
    digits 1..m minus the inverse of the previous digit (all m digits on
    the first step or when no inverse is declared).
    """
    out = np.empty(steps, dtype=np.int64)
    state = rng_seed
    prev = 0
    for k in range(steps):
        state = state + _GAMMA
        z = state
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
        inv = 0
        if prev != 0:
            inv = inverse_of[prev]
        if inv == 0:
            digit = int(z % np.uint64(m)) + 1
        else:
            r = int(z % np.uint64(m - 1))
            if r + 1 < inv:
                digit = r + 1
            else:
                digit = r + 2
        out[k] = digit
        prev = digit
    return out


@njit(cache=True, nogil=True)
def walk_scan(digits, gmr, gmi, gnr, gni, gpr, gpi, gqr, gqi,
              start_re, start_im, start_inf, burn_in, hits,
              x_min, x_max, y_min, y_max, dx, dy):
    """Run the orbit along a digit sequence, plotting after the burn-in.

    Returns (plotted, outside, at_infinity); the three sum to
    len(digits) - burn_in.
    """
    plotted = 0
    outside = 0
    at_inf = 0
    zr = start_re
    zi = start_im
    zinf = start_inf
    for k in range(digits.shape[0]):
        g = digits[k]
        zr, zi, zinf = _apply_step(zr, zi, zinf,
                                   gmr[g], gmi[g], gnr[g], gni[g],
                                   gpr[g], gpi[g], gqr[g], gqi[g])
        if k < burn_in:
            continue
        code = _plot_point(hits, zr, zi, zinf, x_min, x_max, y_min, y_max, dx, dy)
        if code == 0:
            plotted += 1
        elif code == 1:
            outside += 1
        else:
            at_inf += 1
    return plotted, outside, at_inf
