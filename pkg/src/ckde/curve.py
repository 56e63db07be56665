"""Weierstrass curves over prime fields: invariants, normal forms, group law.

The general equation is

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Quantities b2..b8, c4, the discriminant and j follow the classical
formulas. The group law is only implemented for short curves
(a1 = a2 = a3 = 0) over fields of characteristic > 3; bring general
curves there with :func:`classify_normal_form` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ckde.errors import FieldMismatch, FieldTooLarge, PointNotOnCurve, SingularCurve
from ckde.field import FieldElement, PrimeField

ENUMERATION_LIMIT = 10**6
WINDOW = 4


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        ps = {c.field.p for c in self.coefficients}
        if len(ps) != 1:
            raise FieldMismatch(f"curve coefficients live in different fields: {sorted(ps)}")

    @classmethod
    def from_ints(cls, F: PrimeField, a1=0, a2=0, a3=0, a4=0, a6=0) -> WeierstrassCurve:
        return cls(F(a1), F(a2), F(a3), F(a4), F(a6))

    @classmethod
    def short(cls, F: PrimeField, a: int, b: int) -> WeierstrassCurve:
        return cls.from_ints(F, a4=a, a6=b)

    @property
    def field(self) -> PrimeField:
        return self.a1.field

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def __str__(self):
        a1, a2, a3, a4, a6 = (c.value for c in self.coefficients)
        return (f"y^2 + {a1}xy + {a3}y = x^3 + {a2}x^2 + {a4}x + {a6} "
                f"over F_{self.field.p}")

    def serialize(self) -> str:
        return ",".join([c.hex() for c in self.coefficients] + [format(self.field.p, "x")])

    @classmethod
    def deserialize(cls, s: str) -> WeierstrassCurve:
        *coeffs, p = s.split(",")
        F = PrimeField(int(p, 16))
        return cls(*(F.from_hex(c) for c in coeffs))


class _Infinity:
    """The point at infinity O. A singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "O"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True)
class Affine:
    x: object
    y: object

    def __repr__(self):
        return f"({self.x!r}, {self.y!r})"


CurvePoint = Affine | _Infinity


def is_infinity(P) -> bool:
    return P is INFINITY


class NormalFormTag(str, Enum):
    CHAR_GENERAL = "CharGeneral"
    CHAR2_J_NONZERO = "Char2_JNonzero"
    CHAR2_J_ZERO = "Char2_JZero"
    CHAR3 = "Char3"


@dataclass(frozen=True)
class CurveQuantities:
    b2: FieldElement
    b4: FieldElement
    b6: FieldElement
    b8: FieldElement
    c4: FieldElement
    delta: FieldElement
    j: FieldElement | None


@dataclass(frozen=True)
class NormalForm:
    """Classification of a curve by characteristic and j.

    For characteristic > 3, ``curve`` is the short model and ``substitution``
    holds (r, s, t) with x = x' + r, y = y' + s*x' + t mapping the short
    model onto the original one. Otherwise ``curve`` is the input and
    ``substitution`` is None.
    """

    tag: NormalFormTag
    curve: WeierstrassCurve
    substitution: tuple[FieldElement, FieldElement, FieldElement] | None = None


def b_quantities(E: WeierstrassCurve) -> CurveQuantities:
    a1, a2, a3, a4, a6 = E.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    delta = _delta(b2, b4, b6, b8)
    j = c4 ** 3 / delta if delta else None
    return CurveQuantities(b2, b4, b6, b8, c4, delta, j)


def _delta(b2, b4, b6, b8):
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def discriminant(E: WeierstrassCurve) -> FieldElement:
    return b_quantities(E).delta


def j_invariant(E: WeierstrassCurve) -> FieldElement:
    q = b_quantities(E)
    if q.j is None:
        raise SingularCurve(f"discriminant vanishes for {E}")
    return q.j


def _equation(E: WeierstrassCurve, x, y):
    a1, a2, a3, a4, a6 = E.coefficients
    return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)


def is_singular_point(E: WeierstrassCurve, pt: Affine) -> bool:
    """True iff the curve equation and both partial derivatives vanish at pt."""
    a1, a2, a3, a4, _ = E.coefficients
    x, y = pt.x, pt.y
    if _equation(E, x, y) != 0:
        return False
    dx = a1 * y - 3 * x * x - 2 * a2 * x - a4
    dy = 2 * y + a1 * x + a3
    return dx == 0 and dy == 0


def classify_normal_form(E: WeierstrassCurve) -> NormalForm:
    q = b_quantities(E)
    if q.j is None:
        raise SingularCurve(f"cannot classify singular curve {E}")
    p = E.field.char
    if p == 2:
        tag = NormalFormTag.CHAR2_J_NONZERO if q.j else NormalFormTag.CHAR2_J_ZERO
        return NormalForm(tag, E)
    if p == 3:
        return NormalForm(NormalFormTag.CHAR3, E)
    # complete the square in y, then kill the x^2 term
    F = E.field
    c6 = -q.b2 ** 3 + 36 * q.b2 * q.b4 - 216 * q.b6
    short = WeierstrassCurve(F.zero, F.zero, F.zero, -q.c4 / 48, -c6 / 864)
    r = -q.b2 / 12
    s = -E.a1 / 2
    t = -(E.a3 + E.a1 * r) / 2
    return NormalForm(NormalFormTag.CHAR_GENERAL, short, (r, s, t))


def map_from_normal_form(nf: NormalForm, P: CurvePoint) -> CurvePoint:
    """Carry a point of the short model back to the original curve."""
    if P is INFINITY or nf.substitution is None:
        return P
    r, s, t = nf.substitution
    return Affine(P.x + r, P.y + s * P.x + t)


def map_to_normal_form(nf: NormalForm, P: CurvePoint) -> CurvePoint:
    if P is INFINITY or nf.substitution is None:
        return P
    r, s, t = nf.substitution
    x = P.x - r
    return Affine(x, P.y - s * x - t)


def is_on_curve(E: WeierstrassCurve, P) -> bool:
    if P is INFINITY:
        return True
    return _equation(E, P.x, P.y) == 0


def _require_short(E: WeierstrassCurve):
    if not E.is_short or E.field.char <= 3:
        raise ValueError(f"group law needs a short curve over char > 3; normalize {E} first")


def _check(E, *points):
    for P in points:
        if not is_on_curve(E, P):
            raise PointNotOnCurve(f"{P!r} is not on {E}")


def point_neg(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P is INFINITY:
        return P
    return Affine(P.x, -P.y)


def _add(E, P, Q):
    # unchecked chord-tangent addition on a short curve
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    if P.x == Q.x:
        if P.y != Q.y or not P.y:
            return INFINITY
        lam = (3 * P.x * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    return Affine(x3, lam * (P.x - x3) - P.y)


def point_add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    _require_short(E)
    _check(E, P, Q)
    return _add(E, P, Q)


def point_sub(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return point_add(E, P, point_neg(E, Q))


def scalar_mul(E: WeierstrassCurve, n: int, P: CurvePoint) -> CurvePoint:
    """n*P by fixed-window (width 4) double-and-add."""
    _require_short(E)
    _check(E, P)
    if n < 0:
        n, P = -n, point_neg(E, P)
    if n == 0 or P is INFINITY:
        return INFINITY
    table = [INFINITY, P]
    for _ in range(2, 1 << WINDOW):
        table.append(_add(E, table[-1], P))
    digits = []
    while n:
        digits.append(n & ((1 << WINDOW) - 1))
        n >>= WINDOW
    R = INFINITY
    for d in reversed(digits):
        for _ in range(WINDOW):
            R = _add(E, R, R)
        if d:
            R = _add(E, R, table[d])
    return R


def enumerate_points(E: WeierstrassCurve) -> list[CurvePoint]:
    """Every rational point, O first then affine points sorted by (x, y).

    Brute force; independent of the square-root routine.
    """
    F = E.field
    p = F.p
    if p > ENUMERATION_LIMIT:
        raise FieldTooLarge(f"refusing to enumerate over F_{p} (limit {ENUMERATION_LIMIT})")
    if not discriminant(E):
        raise SingularCurve(f"{E} is singular; no group to enumerate")
    a1, a2, a3, a4, a6 = (c.value for c in E.coefficients)
    points = [INFINITY]
    if p == 2:
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    points.append(Affine(F(x), F(y)))
        return points
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    inv2 = pow(2, -1, p)
    for x in range(p):
        # y^2 + b*y = c  <=>  (2y + b)^2 = b^2 + 4c
        b = (a1 * x + a3) % p
        c = (x * x * x + a2 * x * x + a4 * x + a6) % p
        ys = sorted((w - b) * inv2 % p for w in roots.get((b * b + 4 * c) % p, ()))
        points.extend(Affine(F(x), F(y)) for y in ys)
    return points


def serialize_point(P) -> str:
    if P is INFINITY:
        return "O"
    return f"({P.x.hex()},{P.y.hex()})"


def deserialize_point(F: PrimeField, s: str) -> CurvePoint:
    s = s.strip()
    if s == "O":
        return INFINITY
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed point {s!r}")
    x, y = s[1:-1].split(",")
    return Affine(F.from_hex(x), F.from_hex(y))
