"""Pure-numpy fallback kernels.

Drop-in replacements for _kernels_nb with the same signatures and
bit-identical results.  The index scan is vectorized over sub-chunks of
indexes; the random-walk orbit is a plain Python loop because each step
feeds the next.  All point arithmetic mirrors Moebius.__call__ and
_kernels_nb expression by expression; keep the three in sync.
"""

from __future__ import annotations

import math

import numpy as np

_SUBCHUNK = 1 << 16

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(x: int) -> int:
    """splitmix64 output mix on a 64-bit integer."""
    x = (x ^ (x >> 30)) * _MIX1 & _MASK64
    x = (x ^ (x >> 27)) * _MIX2 & _MASK64
    return x ^ (x >> 31)


def _apply_scalar(zr, zi, zinf, mr, mi, nr, ni, pr, pi, qr, qi):
    # same expressions as _kernels_nb._apply_step
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


def index_scan_chunk(n_lo, n_hi, depth, m, table,
                     gmr, gmi, gnr, gni, gpr, gpi, gqr, gqi,
                     seed_re, seed_im, seed_inf, hits,
                     x_min, x_max, y_min, y_max, dx, dy):
    """Vectorized twin of _kernels_nb.index_scan_chunk."""
    accepted = 0
    rejected = 0
    plotted = 0
    outside = 0
    at_inf = 0
    width = hits.shape[1]
    height = hits.shape[0]
    for lo in range(n_lo, n_hi, _SUBCHUNK):
        hi = min(lo + _SUBCHUNK, n_hi)
        ns = np.arange(lo, hi, dtype=np.int64)
        digs = np.empty((ns.size, depth), dtype=np.int64)
        q = ns.copy()
        for i in range(depth):
            digs[:, i] = q % m + 1
            q //= m
        state = np.zeros(ns.size, dtype=np.int64)
        alive = np.ones(ns.size, dtype=bool)
        for i in range(depth):
            nxt = table[state, digs[:, i]]
            # crash state 0 must absorb: the identity row would revive it
            state = np.where(alive, nxt, 0)
            alive = state != 0
        n_acc = int(alive.sum())
        accepted += n_acc
        rejected += ns.size - n_acc
        if n_acc == 0:
            continue
        digs_acc = digs[alive]
        zr = np.full(n_acc, seed_re)
        zi = np.full(n_acc, seed_im)
        zinf = np.full(n_acc, bool(seed_inf))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for i in range(depth):
                g = digs_acc[:, i]
                mr = gmr[g]
                mi = gmi[g]
                nr = gnr[g]
                ni = gni[g]
                pr = gpr[g]
                pi = gpi[g]
                qr = gqr[g]
                qi = gqi[g]
                dr = pr * zr - pi * zi + qr
                di = pr * zi + pi * zr + qi
                dd = dr * dr + di * di
                ur = mr * zr - mi * zi + nr
                ui = mr * zi + mi * zr + ni
                wr = (ur * dr + ui * di) / dd
                wi = (ui * dr - ur * di) / dd
                fin_bad = (dd == 0.0) | ~(np.isfinite(wr) & np.isfinite(wi))
                ddp = pr * pr + pi * pi
                vr = (mr * pr + mi * pi) / ddp
                vi = (mi * pr - mr * pi) / ddp
                inf_bad = (ddp == 0.0) | ~(np.isfinite(vr) & np.isfinite(vi))
                out_inf = np.where(zinf, inf_bad, fin_bad)
                out_r = np.where(zinf, vr, wr)
                out_i = np.where(zinf, vi, wi)
                zr = np.where(out_inf, 0.0, out_r)
                zi = np.where(out_inf, 0.0, out_i)
                zinf = out_inf
        n_at_inf = int(zinf.sum())
        at_inf += n_at_inf
        inside = ~zinf & (zr >= x_min) & (zr <= x_max) & (zi >= y_min) & (zi <= y_max)
        n_in = int(inside.sum())
        plotted += n_in
        outside += n_acc - n_at_inf - n_in
        if n_in:
            px = ((zr[inside] - x_min) / dx).astype(np.int64)
            py = ((y_max - zi[inside]) / dy).astype(np.int64)
            np.minimum(px, width - 1, out=px)
            np.minimum(py, height - 1, out=py)
            np.add.at(hits, (py, px), 1)
    return accepted, rejected, plotted, outside, at_inf


def walk_digits(steps, m, inverse_of, rng_seed):
    """Python twin of _kernels_nb.walk_digits (identical digit stream)."""
    out = np.empty(steps, dtype=np.int64)
    state = int(rng_seed) & _MASK64
    m = int(m)
    prev = 0
    for k in range(steps):
        state = (state + _GAMMA) & _MASK64
        z = _mix64(state)
        inv = 0
        if prev != 0:
            inv = int(inverse_of[prev])
        if inv == 0:
            digit = z % m + 1
        else:
            r = z % (m - 1)
            digit = r + 1 if r + 1 < inv else r + 2
        out[k] = digit
        prev = digit
    return out


def walk_scan(digits, gmr, gmi, gnr, gni, gpr, gpi, gqr, gqi,
              start_re, start_im, start_inf, burn_in, hits,
              x_min, x_max, y_min, y_max, dx, dy):
    """Python twin of _kernels_nb.walk_scan."""
    plotted = 0
    outside = 0
    at_inf = 0
    width = hits.shape[1]
    height = hits.shape[0]
    zr = float(start_re)
    zi = float(start_im)
    zinf = bool(start_inf)
    for k in range(digits.shape[0]):
        g = int(digits[k])
        zr, zi, zinf = _apply_scalar(zr, zi, zinf,
                                     gmr[g], gmi[g], gnr[g], gni[g],
                                     gpr[g], gpi[g], gqr[g], gqi[g])
        if k < burn_in:
            continue
        if zinf:
            at_inf += 1
        elif x_min <= zr <= x_max and y_min <= zi <= y_max:
            px = int((zr - x_min) / dx)
            py = int((y_max - zi) / dy)
            if px >= width:
                px = width - 1
            if py >= height:
                py = height - 1
            hits[py, px] += 1
            plotted += 1
        else:
            outside += 1
    return plotted, outside, at_inf
