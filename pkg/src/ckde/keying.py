"""Certificateless keying with a threshold-shared KGC master key.

Setup deals the master key x across n holders. A node obtains its partial
private key D_A = x*Q_A, Q_A = H1(ID_A/phase), by broadcasting a blinded
update request; each holder answers with an ElGamal-style pair

    U = s_j*Q_A + tau_u*R,   V = tau_u*G        (R = tau*G)

which the node opens as m_j = U - tau*V, checks against the holder's
commitment W_j = s_j*G, and combines t of them by Lagrange interpolation.
"""

from __future__ import annotations

import hashlib
import logging
import random
import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from ckde.curve import INFINITY, CurvePoint, _add, point_sub, scalar_mul, serialize_point
from ckde.errors import (
    DegenerateEphemeral,
    DuplicateId,
    IllegalShare,
    InsufficientShares,
    InvalidRequester,
    NodeRevoked,
    PointNotInSubgroup,
)
from ckde.pairing import (
    PairingParams,
    generate_params,
    hash_to_subgroup,
    pairing_params_dict,
    tate_pairing,
)
from ckde.sharing import MasterShare, SharingPolicy, deal_shares, reconstruct_point, verify_contribution

log = logging.getLogger(__name__)

H1_SPEC = "sha256-try-and-increment/cofactor-cleared"
H2_SPEC = "sha256-mod-(q-1)-plus-1"


@dataclass(frozen=True)
class SystemParams:
    pairing: PairingParams
    P_pub: CurvePoint
    policy: SharingPolicy
    phase: int = 0
    hash_spec: tuple[str, str] = (H1_SPEC, H2_SPEC)

    @property
    def G(self) -> CurvePoint:
        return self.pairing.G

    @property
    def curve(self):
        return self.pairing.curve

    @property
    def q(self) -> int:
        return self.pairing.q

    def advance_phase(self, phase: int) -> SystemParams:
        return replace(self, phase=max(self.phase, phase))

    def to_dict(self) -> dict:
        d = pairing_params_dict(self.pairing)
        d.update(P_pub=serialize_point(self.P_pub), t=self.policy.t, n=self.policy.n,
                 phase=self.phase, H1=self.hash_spec[0], H2=self.hash_spec[1])
        return d


@dataclass(frozen=True)
class MasterKey:
    """Only setup and test oracles hold this."""

    x: int


@dataclass(frozen=True)
class NodeSecrets:
    id: str
    x: int
    phase: int
    Q: CurvePoint
    D: CurvePoint
    SK: CurvePoint
    PK: CurvePoint
    PK_A: CurvePoint


@dataclass(frozen=True)
class UpdateRequest:
    Q_A: CurvePoint
    R: CurvePoint
    PK: CurvePoint
    PK_A: CurvePoint
    ID_A: str

    def to_wire(self) -> dict:
        return {"type": "update_request", "ID_A": self.ID_A, "Q_A": serialize_point(self.Q_A),
                "R": serialize_point(self.R), "PK": serialize_point(self.PK),
                "PK_A": serialize_point(self.PK_A)}


@dataclass(frozen=True)
class ShareResponse:
    holder_id: int
    U: CurvePoint
    V: CurvePoint
    W: CurvePoint

    def to_wire(self) -> dict:
        return {"type": "share_response", "holder_id": format(self.holder_id, "x"),
                "U": serialize_point(self.U), "V": serialize_point(self.V),
                "W": serialize_point(self.W)}


def _rng(rng) -> random.Random:
    return rng if isinstance(rng, random.Random) else random.Random(rng)


def _nonzero_scalar(rng: random.Random, q: int) -> int:
    return rng.randrange(1, q)


def h2_hash_to_scalar(data: bytes | str, q: int) -> int:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return int.from_bytes(hashlib.sha256(data).digest(), "big") % (q - 1) + 1


def h1_hash_to_point(params: SystemParams | PairingParams, id: str, phase: int) -> CurvePoint:
    pp = params.pairing if isinstance(params, SystemParams) else params
    data = id.encode("utf-8") + b"/" + str(phase).encode("ascii")
    return hash_to_subgroup(pp.field, pp.curve, pp.h, data)


def holder_scalar_ids(names: Sequence[str], q: int) -> list[int]:
    """H2 of each holder name; on a collision mod q, rehash name#1, name#2, ..."""
    if len(names) >= q:
        raise ValueError(f"{len(names)} holders cannot get distinct non-zero ids mod {q}")
    taken: set[int] = set()
    out = []
    for name in names:
        hid, counter = h2_hash_to_scalar(name, q), 0
        while hid in taken:
            counter += 1
            hid = h2_hash_to_scalar(f"{name}#{counter}", q)
        taken.add(hid)
        out.append(hid)
    return out


def setup(k: int | None, threshold: int, holder_names: Sequence[str], seed,
          pairing: PairingParams | None = None
          ) -> tuple[SystemParams, MasterKey, list[MasterShare]]:
    """Draw order from ``seed``: params seed (if k given), x, polynomial coefficients."""
    rng = _rng(seed)
    if pairing is None:
        pairing = generate_params(k, rng.getrandbits(64))
    policy = SharingPolicy(pairing.q, threshold, len(holder_names))
    x = _nonzero_scalar(rng, pairing.q)
    P_pub = scalar_mul(pairing.curve, x, pairing.G)
    ids = holder_scalar_ids(holder_names, pairing.q)
    shares = deal_shares(x, policy, ids, rng, pairing)
    return SystemParams(pairing, P_pub, policy), MasterKey(x), shares


def register_node(params: SystemParams, master: MasterKey, id: str, rng) -> NodeSecrets:
    """Initial enrolment by the trusted dealer at the current phase."""
    rng = _rng(rng)
    E, G = params.curve, params.G
    x_v = _nonzero_scalar(rng, params.q)
    Q = h1_hash_to_point(params, id, params.phase)
    D = scalar_mul(E, master.x, Q)
    return NodeSecrets(id=id, x=x_v, phase=params.phase, Q=Q, D=D,
                       SK=scalar_mul(E, x_v, D), PK=scalar_mul(E, x_v, G),
                       PK_A=scalar_mul(E, x_v, params.P_pub))


def make_update_request(params: SystemParams, node: NodeSecrets, phase: int,
                        rng) -> tuple[UpdateRequest, int]:
    rng = _rng(rng)
    tau = _nonzero_scalar(rng, params.q)
    R = scalar_mul(params.curve, tau, params.G)
    Q_A = h1_hash_to_point(params, node.id, phase)
    return UpdateRequest(Q_A=Q_A, R=R, PK=node.PK, PK_A=node.PK_A, ID_A=node.id), tau


def revoke(revocation_list: Iterable[str], id: str) -> frozenset[str]:
    return frozenset(revocation_list) | {id}


def respond_update(params: SystemParams, share: MasterShare, revocation_list: Iterable[str],
                   req: UpdateRequest, rng) -> ShareResponse:
    """Holder side: revocation check, requester key check, blinded share."""
    if req.ID_A in frozenset(revocation_list):
        log.info("holder %x: %s is revoked", share.holder_id, req.ID_A)
        raise NodeRevoked(req.ID_A)
    pp = params.pairing
    try:
        pp.check_subgroup(req.Q_A, req.R, req.PK, req.PK_A)
        valid = tate_pairing(pp, req.PK_A, pp.G) == tate_pairing(pp, req.PK, params.P_pub)
    except PointNotInSubgroup as exc:
        log.info("holder %x: malformed request from %s: %s", share.holder_id, req.ID_A, exc)
        raise InvalidRequester(f"{req.ID_A}: {exc}") from None
    if not valid:
        log.info("holder %x: key check failed for %s", share.holder_id, req.ID_A)
        raise InvalidRequester(f"{req.ID_A}: e(PK_A, G) != e(PK, P_pub)")
    rng = _rng(rng)
    E = params.curve
    tau_u = _nonzero_scalar(rng, params.q)
    m = scalar_mul(E, share.s, req.Q_A)
    U = _add(E, m, scalar_mul(E, tau_u, req.R))
    V = scalar_mul(E, tau_u, params.G)
    return ShareResponse(share.holder_id, U, V, share.W)


def unblind(params: SystemParams, tau: int, resp: ShareResponse) -> CurvePoint:
    E = params.curve
    return point_sub(E, resp.U, scalar_mul(E, tau, resp.V))


def unblind_and_verify(params: SystemParams, tau: int, Q_A: CurvePoint,
                       resp: ShareResponse) -> CurvePoint:
    """m = U - tau*V, accepted iff e(Q_A, W) == e(m, G)."""
    try:
        m = unblind(params, tau, resp)
        ok = verify_contribution(params.pairing, Q_A, m, resp.W)
    except PointNotInSubgroup as exc:
        raise IllegalShare(f"holder {resp.holder_id:x}: {exc}") from None
    if not ok:
        raise IllegalShare(f"holder {resp.holder_id:x}: e(Q_A, W) != e(m, G)")
    return m


def reconstruct_private_key(params: SystemParams, node: NodeSecrets, phase: int,
                            verified: Sequence[tuple[int, CurvePoint]]) -> NodeSecrets:
    ids = [hid for hid, _ in verified]
    if len(set(ids)) != len(ids):
        raise DuplicateId(f"repeated holder in {ids}")
    if len(verified) < params.policy.t:
        raise InsufficientShares(f"{len(verified)} verified shares, need {params.policy.t}")
    D = reconstruct_point(params.pairing, verified, params.policy.t)
    Q = h1_hash_to_point(params, node.id, phase)
    return replace(node, phase=phase, Q=Q, D=D, SK=scalar_mul(params.curve, node.x, D))


def derive_session_key(params: SystemParams, my_sk: CurvePoint, T_B: CurvePoint) -> int:
    """H2 of the serialized pairing value e(SK, T_B)."""
    if T_B is INFINITY:
        warnings.warn("peer ephemeral is the point at infinity", DegenerateEphemeral, stacklevel=2)
    g = tate_pairing(params.pairing, my_sk, T_B)
    return h2_hash_to_scalar(g.hex(), params.q)
