"""Moebius transformations on the Riemann sphere.

A Moebius transformation is the map z -> (m*z + n) / (p*z + q) with complex
coefficients and m*q - n*p != 0.  Coefficients are normalized to determinant
one on construction, so two maps are equal as transformations exactly when
their coefficient matrices agree up to a global sign.

The point at infinity is represented explicitly by the ``INFINITY`` sentinel
rather than by floating-point inf, so orbit code can branch on it exactly.

Point evaluation is written out in explicit real/imaginary arithmetic rather
than with Python's complex division.  The compiled kernels repeat the same
expressions verbatim, which keeps rendered canvases bit-identical no matter
which code path produced them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


class _Infinity:
    """The point at infinity of the Riemann sphere (a singleton)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

ComplexPoint = complex | _Infinity

# Determinants within this distance of 1 are considered already normalized,
# so re-normalizing a normalized map leaves its coefficients bit-identical.
_DET_TOL = 1e-12
# Below this magnitude the matrix is treated as singular.
_DET_FLOOR = 1e-300


class Moebius:
    """An invertible linear fractional map (m*z + n) / (p*z + q).

    Parameters
    ----------
    m, n, p, q : complex
        Matrix coefficients, row-major [[m, n], [p, q]].  They are divided
        by a square root of the determinant on construction; a singular
        matrix raises ValueError.
    """

    __slots__ = ("m", "n", "p", "q")

    def __init__(self, m: complex, n: complex, p: complex, q: complex):
        m, n, p, q = complex(m), complex(n), complex(p), complex(q)
        det = m * q - n * p
        if abs(det) < _DET_FLOOR:
            raise ValueError(f"matrix [[{m}, {n}], [{p}, {q}]] is not invertible")
        if abs(det.real - 1.0) > _DET_TOL or abs(det.imag) > _DET_TOL:
            s = cmath.sqrt(det)
            m, n, p, q = m / s, n / s, p / s, q / s
        self.m = m
        self.n = n
        self.p = p
        self.q = q

    def __repr__(self) -> str:
        return f"Moebius({self.m!r}, {self.n!r}, {self.p!r}, {self.q!r})"

    @property
    def det(self) -> complex:
        return self.m * self.q - self.n * self.p

    @property
    def trace(self) -> complex:
        return self.m + self.q

    def __call__(self, z: ComplexPoint) -> ComplexPoint:
        """Apply the map to a point of the Riemann sphere.

        The pole -q/p maps to INFINITY, INFINITY maps to m/p (INFINITY
        when p = 0), and any non-finite float result collapses to INFINITY.
        """
        mr, mi = self.m.real, self.m.imag
        nr, ni = self.n.real, self.n.imag
        pr, pi = self.p.real, self.p.imag
        qr, qi = self.q.real, self.q.imag
        if z is INFINITY:
            dd = pr * pr + pi * pi
            if dd == 0.0:
                return INFINITY
            wr = (mr * pr + mi * pi) / dd
            wi = (mi * pr - mr * pi) / dd
            if math.isfinite(wr) and math.isfinite(wi):
                return complex(wr, wi)
            return INFINITY
        z = complex(z)
        zr, zi = z.real, z.imag
        dr = pr * zr - pi * zi + qr
        di = pr * zi + pi * zr + qi
        dd = dr * dr + di * di
        if dd == 0.0:
            return INFINITY
        ur = mr * zr - mi * zi + nr
        ui = mr * zi + mi * zr + ni
        wr = (ur * dr + ui * di) / dd
        wi = (ui * dr - ur * di) / dd
        if math.isfinite(wr) and math.isfinite(wi):
            return complex(wr, wi)
        return INFINITY

    def compose(self, other: "Moebius") -> "Moebius":
        """Return self after other, i.e. the matrix product self @ other."""
        a, b, c, d = self.m, self.n, self.p, self.q
        e, f, g, h = other.m, other.n, other.p, other.q
        return Moebius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Moebius":
        """Return the inverse map; for a det-1 matrix this is the adjugate."""
        return Moebius(self.q, -self.n, -self.p, self.m)

    def fixed_points(self) -> list[ComplexPoint]:
        """Solve M(z) = z on the sphere.

        Returns one or two points.  Loxodromic and elliptic maps have two,
        parabolic maps (trace^2 = 4 det) have one, and the identity raises
        ValueError because every point is fixed.  For p != 0 the quadratic
        p*z^2 + (q - m)*z - n = 0 is solved with the sign of the discriminant
        root matched to q - m, then the second root recovered from the root
        product; this avoids cancellation when the roots differ in size.
        """
        m, n, p, q = self.m, self.n, self.p, self.q
        if p == 0:
            if m == q:
                if n == 0:
                    raise ValueError("the identity map fixes every point")
                return [INFINITY]
            return [n / (q - m), INFINITY]
        if n == 0:
            if m == q:
                return [0j]
            return [0j, (m - q) / p]
        b = q - m
        disc = b * b + 4.0 * p * n
        r = cmath.sqrt(disc)
        if b.real * r.real + b.imag * r.imag >= 0.0:
            t = -(b + r)
        else:
            t = -(b - r)
        if disc == 0:
            return [t / (2.0 * p)]
        return [t / (2.0 * p), (-2.0 * n) / t]


def identity() -> Moebius:
    return Moebius(1.0, 0.0, 0.0, 1.0)


def proj_close(f: Moebius, g: Moebius, tol: float = 1e-12) -> bool:
    """Whether two det-normalized maps agree up to the residual sign freedom."""
    same = max(abs(f.m - g.m), abs(f.n - g.n), abs(f.p - g.p), abs(f.q - g.q))
    flip = max(abs(f.m + g.m), abs(f.n + g.n), abs(f.p + g.p), abs(f.q + g.q))
    return same <= tol or flip <= tol


def is_identity(f: Moebius, tol: float = 1e-12) -> bool:
    return proj_close(f, identity(), tol)


def chordal_distance(z: ComplexPoint, w: ComplexPoint) -> float:
    """Distance on the Riemann sphere; finite for INFINITY arguments."""
    if z is INFINITY and w is INFINITY:
        return 0.0
    if z is INFINITY:
        return 2.0 / math.sqrt(1.0 + abs(complex(w)) ** 2)
    if w is INFINITY:
        return 2.0 / math.sqrt(1.0 + abs(complex(z)) ** 2)
    z, w = complex(z), complex(w)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


@dataclass(frozen=True)
class GeneratorSet:
    """Moebius generators indexed by the digits 1..m of a group alphabet.

    ``maps[k-1]`` is the transformation for digit k.  ``inverse_of`` has
    length m+1 with slot 0 unused; ``inverse_of[k]`` is the digit of the
    inverse generator, or 0 when the alphabet does not contain it.  Declared
    inverse pairs are checked on construction: their composition must be the
    identity within 1e-9.
    """

    maps: tuple[Moebius, ...]
    inverse_of: tuple[int, ...]

    def __post_init__(self):
        m = len(self.maps)
        if m == 0:
            raise ValueError("a generator set needs at least one map")
        if len(self.inverse_of) != m + 1:
            raise ValueError(
                f"inverse_of must have length {m + 1} (slot 0 unused), got {len(self.inverse_of)}"
            )
        if self.inverse_of[0] != 0:
            raise ValueError("inverse_of[0] is unused and must be 0")
        for k in range(1, m + 1):
            j = self.inverse_of[k]
            if not 0 <= j <= m:
                raise ValueError(f"inverse_of[{k}] = {j} is outside 0..{m}")
            if j == 0:
                continue
            if self.inverse_of[j] != k:
                raise ValueError(f"inverse pairing is not symmetric: {k} -> {j} -> {self.inverse_of[j]}")
            if not is_identity(self.maps[k - 1].compose(self.maps[j - 1]), 1e-9):
                raise ValueError(f"generators {k} and {j} are declared inverse but do not compose to the identity")

    def __len__(self) -> int:
        return len(self.maps)

    def __getitem__(self, digit: int) -> Moebius:
        """Return the map for a 1-based digit."""
        if not 1 <= digit <= len(self.maps):
            raise IndexError(f"digit {digit} outside 1..{len(self.maps)}")
        return self.maps[digit - 1]


def maskit_generators(mu: complex) -> GeneratorSet:
    """Two-generator Kleinian group for the punctured-torus family.

    The group is generated by a = [[-i*mu, -i], [-i, 0]] (so a(z) = mu + 1/z)
    and the translation b(z) = z + 2, plus their inverses, under the digit
    order a, b, A, B = 1, 2, 3, 4.
    """
    mu = complex(mu)
    a = Moebius(-1j * mu, -1j, -1j, 0.0)
    b = Moebius(1.0, 2.0, 0.0, 1.0)
    return GeneratorSet(
        maps=(a, b, a.inverse(), b.inverse()),
        inverse_of=(0, 3, 4, 1, 2),
    )
