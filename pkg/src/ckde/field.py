"""Prime-field arithmetic and the quadratic extension F_p(i), i^2 = -1.

Nothing here is constant time. This is simulation code.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from sympy import isprime

from ckde.errors import FieldMismatch, NotPrime, ZeroInverse


@dataclass(frozen=True, slots=True)
class PrimeField:
    p: int
    k: int = dc_field(init=False, compare=False)

    def __post_init__(self):
        if self.p < 2 or not isprime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        object.__setattr__(self, "k", self.p.bit_length())

    def __call__(self, value: int) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field.p != self.p:
                raise FieldMismatch(f"element of F_{value.field.p} used in F_{self.p}")
            return value
        return FieldElement(value % self.p, self)

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    @property
    def sqrt_friendly(self) -> bool:
        """True when -1 is a non-residue and a^((p+1)/4) is a square root."""
        return self.p % 4 == 3

    def elements(self):
        for v in range(self.p):
            yield FieldElement(v, self)

    def from_hex(self, s: str) -> FieldElement:
        return self(int(s, 16))


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            object.__setattr__(self, "value", self.value % self.field.p)

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise FieldMismatch(f"F_{self.field.p} vs F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement((self.value + v) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement((self.value - v) % self.field.p, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement((v - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value * v % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * FieldElement(v % self.field.p, self.field).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.inverse() * v

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroInverse(f"0 has no inverse mod {self.field.p}")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def is_square(self) -> bool:
        if self.value == 0 or self.field.p == 2:
            return True
        return pow(self.value, (self.field.p - 1) // 2, self.field.p) == 1

    def sqrt(self) -> FieldElement | None:
        """Smaller of the two roots, or None for a non-residue. Needs p = 3 mod 4."""
        p = self.field.p
        if p % 4 != 3:
            raise ValueError(f"sqrt needs p = 3 (mod 4), got p = {p}")
        r = pow(self.value, (p + 1) // 4, p)
        if r * r % p != self.value:
            return None
        return FieldElement(min(r, p - r), self.field)

    def hex(self) -> str:
        return format(self.value, "x")


# Free-function spellings of the core operations.

def fp_arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    if a.field.p != b.field.p:
        raise FieldMismatch(f"F_{a.field.p} vs F_{b.field.p}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def fp_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def fp_sqrt(a: FieldElement) -> FieldElement | None:
    return a.sqrt()


@dataclass(frozen=True, slots=True)
class QuadExtElement:
    """re + im*i in F_p(i) with i^2 = -1 (needs p = 3 mod 4 to be a field)."""

    re: FieldElement
    im: FieldElement

    @classmethod
    def of(cls, F: PrimeField, re: int = 0, im: int = 0) -> QuadExtElement:
        return cls(F(re), F(im))

    @property
    def field(self) -> PrimeField:
        return self.re.field

    def _parts(self, other):
        if isinstance(other, QuadExtElement):
            if other.re.field.p != self.re.field.p:
                raise FieldMismatch(f"F_{self.re.field.p}^2 vs F_{other.re.field.p}^2")
            return other.re, other.im
        if isinstance(other, (FieldElement, int)):
            return self.re.field(other), self.re.field.zero
        return None

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return QuadExtElement(self.re + parts[0], self.im + parts[1])

    __radd__ = __add__

    def __sub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return QuadExtElement(self.re - parts[0], self.im - parts[1])

    def __rsub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return QuadExtElement(parts[0] - self.re, parts[1] - self.im)

    def __neg__(self):
        return QuadExtElement(-self.re, -self.im)

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        a, b = self.re, self.im
        return QuadExtElement(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self * QuadExtElement(*parts).inverse()

    def __rtruediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return QuadExtElement(*parts) * self.inverse()

    def __pow__(self, e: int):
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = QuadExtElement(self.re.field.one, self.re.field.zero)
        for bit in bin(e)[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def __eq__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self.re == parts[0] and self.im == parts[1]

    def __hash__(self):
        return hash((self.re.value, self.im.value, self.re.field.p))

    def __repr__(self):
        return f"({self.re.value} + {self.im.value}i mod {self.re.field.p})"

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.re.value == 0 and self.im.value == 0

    def is_one(self) -> bool:
        return self.re.value == 1 and self.im.value == 0

    def conjugate(self) -> QuadExtElement:
        return QuadExtElement(self.re, -self.im)

    def norm(self) -> FieldElement:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> QuadExtElement:
        if self.is_zero():
            raise ZeroInverse("0 has no inverse in F_p^2")
        n_inv = self.norm().inverse()
        return QuadExtElement(self.re * n_inv, -self.im * n_inv)

    def hex(self) -> str:
        return f"{self.re.hex()}+{self.im.hex()}i"


def fp2_mul(a: QuadExtElement, b: QuadExtElement) -> QuadExtElement:
    return a * b


def fp2_inv(a: QuadExtElement) -> QuadExtElement:
    return a.inverse()


def fp2_pow(a: QuadExtElement, e: int) -> QuadExtElement:
    return a ** e
