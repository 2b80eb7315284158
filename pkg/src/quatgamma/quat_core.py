"""Quaternion arithmetic over the basis {1, i, j, k}.

Conventions used throughout the package:

* reduced norm   n(x) = x·conj(x) = x0^2 + x1^2 + x2^2 + x3^2
* module         |x|  = n(x)^2  (the additive-Haar scaling factor)
* character      lambda(x) = exp(-4*pi*1j*x0), i.e. e^{-2 pi i (x + conj(x))}
* polar form     x = r*g0 with r = n(x)^{1/2} and n(g0) = 1

The 2x2 complex matrix representations identify x = a + b*j with
a = x0 + x1*i, b = x2 + x3*i.  ``left_rep`` is a homomorphism,
``right_rep`` composes in reversed order (anti-homomorphism).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "PolarForm",
    "mul",
    "conj",
    "reduced_norm",
    "module",
    "polar",
    "class_angle",
    "character_lambda",
    "matrix_reps",
]


@dataclass(frozen=True)
class Quaternion:
    """A quaternion x0 + x1*i + x2*j + x3*k with real coordinates."""

    x0: float
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.x0 - other.x0, self.x1 - other.x1,
                          self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return self.scale(float(other))

    def __rmul__(self, c) -> "Quaternion":
        return self.scale(float(c))

    def scale(self, c: float) -> "Quaternion":
        return Quaternion(c * self.x0, c * self.x1, c * self.x2, c * self.x3)

    @property
    def coords(self) -> tuple:
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def complex_pair(self) -> tuple:
        """(a, b) with x = a + b*j, a = x0 + x1*i, b = x2 + x3*i."""
        return (complex(self.x0, self.x1), complex(self.x2, self.x3))


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Quaternion product (noncommutative; i*j = k = -j*i)."""
    return Quaternion(
        p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
        p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
        p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
        p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.x0, -q.x1, -q.x2, -q.x3)


def reduced_norm(q: Quaternion) -> float:
    """n(q) = q*conj(q); multiplicative, zero iff q = 0."""
    return q.x0 * q.x0 + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3


def module(q: Quaternion) -> float:
    """|q| = n(q)^2, the factor by which left (or right) translation by q
    scales the additive Haar measure."""
    n = reduced_norm(q)
    return n * n


@dataclass(frozen=True)
class PolarForm:
    """Decomposition q = r * unit with r > 0 and n(unit) = 1."""

    r: float
    unit: Quaternion


def polar(q: Quaternion) -> PolarForm:
    """Polar decomposition; r = n(q)^{1/2} = |q|^{1/4}.

    Raises ValueError for the zero quaternion (no polar form; nothing in
    the analysis evaluates at 0 in the multiplicative picture).
    """
    r = math.sqrt(reduced_norm(q))
    if r == 0.0:
        raise ValueError("polar form of the zero quaternion is undefined")
    return PolarForm(r, q.scale(1.0 / r))


def class_angle(q: Quaternion) -> float:
    """Class angle theta in [0, pi] of the unit part of q: cos(theta) = x0/r.

    Conjugation-invariant; defined for any nonzero quaternion.
    """
    r = math.sqrt(reduced_norm(q))
    if r == 0.0:
        raise ValueError("class angle of the zero quaternion is undefined")
    c = q.x0 / r
    return math.acos(min(1.0, max(-1.0, c)))


def character_lambda(q: Quaternion) -> complex:
    """Additive character lambda(q) = e^{-2 pi i (q + conj(q))} = e^{-4 pi i q0}.

    Unimodular; satisfies lambda(xy) = lambda(yx) because x*y and y*x share
    the same scalar part.
    """
    ph = -4.0 * math.pi * q.x0
    return complex(math.cos(ph), math.sin(ph))


def matrix_reps(q: Quaternion) -> tuple:
    """(L_q, R_q): 2x2 complex matrices with det = n(q).

    L_q = [[a, b], [-conj(b), conj(a)]] satisfies L_{pq} = L_p @ L_q;
    R_q = [[a, -conj(b)], [b, conj(a)]] satisfies R_{pq} = R_q @ R_p.
    """
    a, b = q.complex_pair
    left = np.array([[a, b], [-b.conjugate(), a.conjugate()]], dtype=complex)
    right = np.array([[a, -b.conjugate()], [b, a.conjugate()]], dtype=complex)
    return left, right
