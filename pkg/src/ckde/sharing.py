"""Shamir (t, n) sharing over Z_q with pairing-checkable share commitments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from ckde.curve import INFINITY, CurvePoint, _add, deserialize_point, is_on_curve, scalar_mul, serialize_point
from ckde.errors import (
    DuplicateId,
    InsufficientShares,
    PointNotOnCurve,
    PolicyError,
    TooManyShares,
    ZeroId,
)
from ckde.pairing import PairingParams, tate_pairing


@dataclass(frozen=True)
class SharingPolicy:
    q: int
    t: int
    n: int

    def __post_init__(self):
        if self.t < 2:
            raise PolicyError(f"threshold t = {self.t} must be at least 2")
        if self.n < self.t:
            raise PolicyError(f"share count n = {self.n} is below threshold t = {self.t}")
        if self.n >= self.q:
            raise PolicyError(f"n = {self.n} must be below q = {self.q}")


@dataclass(frozen=True)
class SecretPolynomial:
    """f(x) = a0 + a1*x + ... + a_{t-1}*x^(t-1) mod q, with a0 the secret."""

    coefficients: tuple[int, ...]
    q: int

    @classmethod
    def random(cls, secret: int, t: int, q: int, rng: random.Random) -> SecretPolynomial:
        # a_i uniform on Z_q, so a single share is uniform whatever the secret
        return cls((secret % q,) + tuple(rng.randrange(q) for _ in range(t - 1)), q)

    @property
    def secret(self) -> int:
        return self.coefficients[0]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % self.q
        return acc


@dataclass(frozen=True)
class MasterShare:
    holder_id: int
    s: int
    W: CurvePoint


def _check_ids(ids: Sequence[int], q: int):
    seen = set()
    for i in ids:
        if i % q == 0:
            raise ZeroId(f"share holder id {i} is 0 mod {q}")
        if i % q in seen:
            raise DuplicateId(f"share holder id {i} appears twice (mod {q})")
        seen.add(i % q)


def deal_from_polynomial(f: SecretPolynomial, ids: Sequence[int],
                         params: PairingParams) -> list[MasterShare]:
    _check_ids(ids, f.q)
    shares = []
    for i in ids:
        s = f(i)
        shares.append(MasterShare(i % f.q, s, scalar_mul(params.curve, s, params.G)))
    return shares


def deal_shares(secret: int, policy: SharingPolicy, ids: Sequence[int],
                rng: random.Random | int, params: PairingParams) -> list[MasterShare]:
    if len(ids) != policy.n:
        raise PolicyError(f"expected {policy.n} holder ids, got {len(ids)}")
    _check_ids(ids, policy.q)
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    f = SecretPolynomial.random(secret, policy.t, policy.q, rng)
    return deal_from_polynomial(f, ids, params)


def lagrange_at_zero(ids: Sequence[int], q: int) -> list[int]:
    """Coefficients lambda_j with sum(lambda_j * f(id_j)) = f(0) for deg f < len(ids)."""
    _check_ids(ids, q)
    lambdas = []
    for j in ids:
        num = den = 1
        for m in ids:
            if m == j:
                continue
            num = num * m % q
            den = den * (m - j) % q
        assert den, "distinct ids mod a prime always give an invertible product"
        lambdas.append(num * pow(den, -1, q) % q)
    return lambdas


def _check_count(k: int, t: int):
    if k < t:
        raise InsufficientShares(f"{k} shares given, threshold is {t}")
    if k > t:
        raise TooManyShares(f"{k} shares given; pick exactly t = {t}")


def reconstruct_scalar(shares: Sequence[MasterShare], q: int, t: int | None = None) -> int:
    if t is not None:
        _check_count(len(shares), t)
    ids = [sh.holder_id for sh in shares]
    lambdas = lagrange_at_zero(ids, q)
    return sum(lam * sh.s for lam, sh in zip(lambdas, shares)) % q


def reconstruct_point(params: PairingParams, contributions: Iterable[tuple[int, CurvePoint]],
                      t: int) -> CurvePoint:
    """sum(lambda_j * m_j); equals s*Q when every m_j = s_j * Q."""
    contributions = list(contributions)
    _check_count(len(contributions), t)
    ids = [i for i, _ in contributions]
    lambdas = lagrange_at_zero(ids, params.q)
    E = params.curve
    acc = INFINITY
    for lam, (_, m) in zip(lambdas, contributions):
        if not is_on_curve(E, m):
            raise PointNotOnCurve(f"contribution {m!r} is not on the curve")
        acc = _add(E, acc, scalar_mul(E, lam, m))
    return acc


def verify_contribution(params: PairingParams, Q: CurvePoint, m: CurvePoint, W: CurvePoint) -> bool:
    """e(Q, W) == e(m, G): m was formed with the scalar committed in W."""
    return tate_pairing(params, Q, W) == tate_pairing(params, m, params.G)


def dump_shares(shares: Iterable[MasterShare]) -> str:
    return "".join(f"{sh.holder_id:x} {sh.s:x} {serialize_point(sh.W)}\n" for sh in shares)


def load_shares(text: str, params: PairingParams) -> list[MasterShare]:
    shares = []
    for line in text.splitlines():
        if not line.strip():
            continue
        hid, s, pt = line.split(" ", 2)
        shares.append(MasterShare(int(hid, 16), int(s, 16), deserialize_point(params.field, pt)))
    return shares
