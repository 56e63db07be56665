"""Symmetric pairing on y^2 = x^3 + x over F_p, p = 3 (mod 4).

The curve is supersingular with #E(F_p) = p + 1 and embedding degree 2.
With the distortion map phi(x, y) = (-x, i*y) the modified Tate pairing

    e(P, Q) = f_{q,P}(phi(Q)) ** ((p^2 - 1) / q)

is bilinear, symmetric and non-degenerate on the order-q subgroup.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from sympy import factorint, isprime

from ckde.curve import (
    INFINITY,
    Affine,
    CurvePoint,
    WeierstrassCurve,
    _add,
    is_on_curve,
    scalar_mul,
    serialize_point,
)
from ckde.errors import HashToPointExhausted, PointNotInSubgroup, SearchExhausted
from ckde.field import PrimeField, QuadExtElement

HASH_ATTEMPTS = 256
GENERATOR_LABEL = b"ckde/generator"


@dataclass(frozen=True)
class PairingParams:
    field: PrimeField
    curve: WeierstrassCurve
    q: int
    r: int
    G: CurvePoint

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def h(self) -> int:
        """Cofactor (p + 1) / q."""
        return (self.field.p + 1) // self.q

    def in_subgroup(self, P: CurvePoint) -> bool:
        return is_on_curve(self.curve, P) and scalar_mul(self.curve, self.q, P) is INFINITY

    def check_subgroup(self, *points: CurvePoint):
        for P in points:
            if not self.in_subgroup(P):
                raise PointNotInSubgroup(f"{P!r} is not in the order-{self.q} subgroup")


@dataclass(frozen=True)
class GTElement:
    value: QuadExtElement

    @classmethod
    def one(cls, F: PrimeField) -> GTElement:
        return cls(QuadExtElement(F.one, F.zero))

    def __mul__(self, other: GTElement) -> GTElement:
        return GTElement(self.value * other.value)

    def __truediv__(self, other: GTElement) -> GTElement:
        return GTElement(self.value / other.value)

    def __pow__(self, e: int) -> GTElement:
        return GTElement(self.value ** e)

    def is_one(self) -> bool:
        return self.value.is_one()

    def hex(self) -> str:
        return self.value.hex()

    @classmethod
    def from_hex(cls, F: PrimeField, s: str) -> GTElement:
        re, im = s.removesuffix("i").split("+")
        return cls(QuadExtElement(F.from_hex(re), F.from_hex(im)))


def supersingular_curve(F: PrimeField) -> WeierstrassCurve:
    return WeierstrassCurve.short(F, 1, 0)


def split_order(p: int) -> tuple[int, int]:
    """Write p + 1 = 12*q*r with q the largest prime factor of (p + 1)/12."""
    if (p + 1) % 12:
        raise ValueError(f"p + 1 = {p + 1} is not a multiple of 12")
    m = (p + 1) // 12
    if m == 1:
        raise ValueError(f"p + 1 = 12 leaves no prime q for p = {p}")
    q = max(factorint(m))
    return q, m // q


def hash_to_subgroup(F: PrimeField, E: WeierstrassCurve, h: int, data: bytes,
                     attempts: int = HASH_ATTEMPTS) -> CurvePoint:
    """Try-and-increment: SHA-256(data || counter) -> x, lift, clear the cofactor."""
    for counter in range(attempts):
        digest = hashlib.sha256(data + counter.to_bytes(4, "big")).digest()
        x = F(int.from_bytes(digest, "big"))
        y = (x * x * x + E.a4 * x + E.a6).sqrt()
        if y is None:
            continue
        P = scalar_mul(E, h, Affine(x, y))
        if P is not INFINITY:
            return P
    raise HashToPointExhausted(f"no subgroup point after {attempts} attempts")


def params_from_prime(p: int, q: int | None = None) -> PairingParams:
    """Pairing parameters for a given prime p = 11 (mod 12)."""
    if p % 4 != 3:
        raise ValueError(f"p = {p} is not 3 (mod 4)")
    if q is None:
        q, r = split_order(p)
    else:
        if (p + 1) % (12 * q):
            raise ValueError(f"12*{q} does not divide p + 1 = {p + 1}")
        r = (p + 1) // (12 * q)
    if q < 5 or not isprime(q):
        raise ValueError(f"subgroup order q = {q} must be a prime >= 5")
    F = PrimeField(p)
    E = supersingular_curve(F)
    G = hash_to_subgroup(F, E, (p + 1) // q, GENERATOR_LABEL)
    return PairingParams(F, E, q, r, G)


def generate_params(k: int, seed: int, max_iter: int = 100_000) -> PairingParams:
    """Search for a k-bit prime p with p + 1 = 12*q*r and q prime.

    q gets about k/2 bits (at least 3, so q >= 5). The search is a pure
    function of (k, seed).
    """
    if k < 8:
        raise ValueError(f"bit length must be >= 8, got {k}")
    rng = random.Random(seed)
    qbits = max(3, k // 2)
    lo, hi = 1 << (k - 1), (1 << k) - 1
    for _ in range(max_iter):
        q = rng.randrange(max(5, 1 << (qbits - 1)), 1 << qbits)
        if not isprime(q):
            continue
        rmin = -(-(lo + 1) // (12 * q))
        rmax = (hi + 1) // (12 * q)
        if rmin > rmax:
            continue
        r = rng.randint(rmin, rmax)
        p = 12 * q * r - 1
        if isprime(p):
            return params_from_prime(p, q)
    raise SearchExhausted(f"no {k}-bit parameters in {max_iter} iterations")


def distortion_map(P: CurvePoint) -> CurvePoint:
    """phi(x, y) = (-x, i*y); lands in E(F_p^2)."""
    if P is INFINITY:
        return P
    F = P.x.field
    x = P.x if isinstance(P.x, QuadExtElement) else QuadExtElement(P.x, F.zero)
    y = P.y if isinstance(P.y, QuadExtElement) else QuadExtElement(P.y, F.zero)
    return Affine(-x, y * QuadExtElement(F.zero, F.one))


def _miller(E: WeierstrassCurve, P: Affine, q: int, X, Y) -> QuadExtElement:
    """f_{q,P} evaluated at (X, Y) with numerator and denominator kept apart."""
    F = E.field
    num = QuadExtElement(F.one, F.zero)
    den = F.one
    T = P
    for bit in bin(q)[3:]:
        # tangent at T, then vertical at 2T
        if not T.y:
            line, T2 = X - T.x, INFINITY
        else:
            lam = (3 * T.x * T.x + E.a4) / (2 * T.y)
            line = Y - T.y - lam * (X - T.x)
            T2 = _add(E, T, T)
        num = num * num * line
        den = den * den * (X - T2.x if T2 is not INFINITY else 1)
        T = T2
        if bit == "1":
            if T.x == P.x:
                line, T3 = X - T.x, INFINITY
            else:
                lam = (P.y - T.y) / (P.x - T.x)
                line = Y - T.y - lam * (X - T.x)
                T3 = _add(E, T, P)
            num = num * line
            den = den * (X - T3.x if T3 is not INFINITY else 1)
            T = T3
    return num / den


def tate_pairing(params: PairingParams, P: CurvePoint, Q: CurvePoint) -> GTElement:
    params.check_subgroup(P, Q)
    F = params.field
    if P is INFINITY or Q is INFINITY:
        return GTElement.one(F)
    phiQ = distortion_map(Q)
    f = _miller(params.curve, P, params.q, phiQ.x, phiQ.y)
    return GTElement(f ** ((F.p * F.p - 1) // params.q))


def pairing_params_dict(params: PairingParams) -> dict:
    return {
        "p": format(params.p, "x"),
        "q": format(params.q, "x"),
        "r": format(params.r, "x"),
        "curve": params.curve.serialize(),
        "G": serialize_point(params.G),
    }
