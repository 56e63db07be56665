"""Deterministic in-memory simulation of the key-update protocol.

One ``random.Random(seed)`` drives everything, drawn in this order:

1. setup: parameter seed (only when ``bits`` is given), master key x,
   polynomial coefficients a_1..a_{t-1};
2. node registration: x_V for each node in config order;
3. per ``request`` event: the requester's tau, then tau_u for each holder
   that accepts the request, in holder-id order.

Broadcast is sequential delivery in ascending holder-id order. The first
t verified responses are used for reconstruction.

Transcripts are JSON lines. Every line has ``step``, ``sender``,
``receiver``, ``message``, ``verdict`` and ``reason``; share responses
also carry the unblinded contribution ``m`` so :func:`replay` can redo the
pairing checks offline.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from ckde.curve import (
    INFINITY,
    WeierstrassCurve,
    _add,
    deserialize_point,
    scalar_mul,
    serialize_point,
)
from ckde.errors import ConfigInvalid, PointNotInSubgroup, ProtocolReject, UnknownField
from ckde.keying import (
    ShareResponse,
    SystemParams,
    UpdateRequest,
    h1_hash_to_point,
    make_update_request,
    reconstruct_private_key,
    register_node,
    respond_update,
    revoke,
    setup,
    unblind,
    unblind_and_verify,
)
from ckde.pairing import PairingParams, params_from_prime, tate_pairing
from ckde.sharing import lagrange_at_zero

TAMPER_FIELDS = ("U", "V", "W", "PK_A", "Q_A")
_MESSAGE_FIELDS = {UpdateRequest: ("PK_A", "Q_A"), ShareResponse: ("U", "V", "W")}


@dataclass(frozen=True)
class Event:
    op: str
    id: str | None = None
    phase: int | None = None
    step: int | None = None
    field: str | None = None


@dataclass
class ScenarioConfig:
    seed: int
    threshold: int
    holders: list[str]
    nodes: list[str]
    schedule: list[Event] = field(default_factory=list)
    bits: int | None = None
    p: int | None = None
    q: int | None = None
    r: int | None = None

    @classmethod
    def from_dict(cls, d: dict) -> ScenarioConfig:
        diag = []

        def want_int(key, lo=None, required=True):
            v = d.get(key)
            if v is None:
                if required:
                    diag.append((key, "missing"))
                return None
            if not isinstance(v, int) or isinstance(v, bool):
                diag.append((key, f"expected an integer, got {v!r}"))
                return None
            if lo is not None and v < lo:
                diag.append((key, f"must be >= {lo}"))
                return None
            return v

        def want_names(key):
            v = d.get(key)
            if not isinstance(v, list) or not v or not all(isinstance(s, str) and s for s in v):
                diag.append((key, "expected a non-empty list of non-empty strings"))
                return []
            if len(set(v)) != len(v):
                diag.append((key, "duplicate names"))
            return list(v)

        seed = want_int("seed")
        threshold = want_int("threshold", lo=2)
        holders = want_names("holders")
        nodes = want_names("nodes")
        bits = want_int("bits", lo=8, required=False)
        p, q, r = (want_int(k, lo=2, required=False) for k in ("p", "q", "r"))
        if (bits is None) == (p is None):
            diag.append(("bits/p", "give exactly one of 'bits' or explicit 'p' (with optional q, r)"))
        if p is not None and q is not None and r is not None and p + 1 != 12 * q * r:
            diag.append(("p", f"p + 1 = {p + 1} != 12*q*r = {12 * q * r}"))
        if threshold is not None and holders and threshold > len(holders):
            diag.append(("threshold", f"t = {threshold} exceeds {len(holders)} holders"))

        events = []
        raw = d.get("schedule", [])
        if not isinstance(raw, list):
            diag.append(("schedule", "expected a list"))
            raw = []
        for i, ev in enumerate(raw):
            where = f"schedule[{i}]"
            if not isinstance(ev, dict):
                diag.append((where, "expected an object"))
                continue
            op = ev.get("op")
            if op == "request":
                if ev.get("id") not in nodes:
                    diag.append((f"{where}.id", f"unknown node {ev.get('id')!r}"))
                ph = ev.get("phase")
                if not isinstance(ph, int) or isinstance(ph, bool) or ph < 0:
                    diag.append((f"{where}.phase", "expected a non-negative integer"))
                events.append(Event("request", id=ev.get("id"), phase=ph))
            elif op == "revoke":
                if ev.get("id") not in nodes and ev.get("id") not in holders:
                    diag.append((f"{where}.id", f"unknown identity {ev.get('id')!r}"))
                events.append(Event("revoke", id=ev.get("id")))
            elif op == "tamper":
                st = ev.get("step")
                if not isinstance(st, int) or isinstance(st, bool) or st < 1:
                    diag.append((f"{where}.step", "expected a transcript step >= 1"))
                if ev.get("field") not in TAMPER_FIELDS:
                    diag.append((f"{where}.field", f"expected one of {TAMPER_FIELDS}"))
                events.append(Event("tamper", step=st, field=ev.get("field")))
            else:
                diag.append((f"{where}.op", f"unknown op {op!r}"))
        if diag:
            raise ConfigInvalid(diag)
        return cls(seed=seed, threshold=threshold, holders=holders, nodes=nodes,
                   schedule=events, bits=bits, p=p, q=q, r=r)

    @classmethod
    def from_json(cls, path: str | Path) -> ScenarioConfig:
        try:
            d = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigInvalid([("<file>", f"not valid JSON: {exc}")]) from None
        if not isinstance(d, dict):
            raise ConfigInvalid([("<file>", "top level must be an object")])
        return cls.from_dict(d)


@dataclass
class Transcript:
    records: list[dict]
    outcomes: dict[str, dict]

    def lines(self) -> list[str]:
        return [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in self.records]

    def to_jsonl(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def write(self, path: str | Path):
        Path(path).write_text(self.to_jsonl())


def inject_tamper(params: SystemParams | PairingParams, msg, field: str, delta=None):
    """Replace the named point by point + delta (default G); all else untouched."""
    pp = params.pairing if isinstance(params, SystemParams) else params
    if field not in _MESSAGE_FIELDS.get(type(msg), ()):
        raise UnknownField(f"{type(msg).__name__} has no tamperable field {field!r}")
    delta = pp.G if delta is None else delta
    return replace(msg, **{field: _add(pp.curve, getattr(msg, field), delta)})


def _pairing_for(cfg: ScenarioConfig) -> PairingParams | None:
    if cfg.p is None:
        return None
    try:
        return params_from_prime(cfg.p, cfg.q)
    except ValueError as exc:
        raise ConfigInvalid([("p", str(exc))]) from None


class _Runner:
    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        try:
            self.params, self.master, shares = setup(cfg.bits, cfg.threshold, cfg.holders, self.rng,
                                                     pairing=_pairing_for(cfg))
        except ValueError as exc:
            if isinstance(exc, ConfigInvalid):
                raise
            raise ConfigInvalid([("threshold/holders", str(exc))]) from None
        # delivery order: ascending holder id
        self.holders = sorted(zip(cfg.holders, shares), key=lambda hs: hs[1].holder_id)
        self.by_hid = {sh.holder_id: name for name, sh in self.holders}
        self.nodes = {nid: register_node(self.params, self.master, nid, self.rng) for nid in cfg.nodes}
        self.revoked: frozenset[str] = frozenset()
        self.tampers = {ev.step: ev for ev in cfg.schedule if ev.op == "tamper"}
        self.records: list[dict] = []
        self.outcomes = {nid: {"reconstructed": False, "oracle_match": self._oracle(node)}
                         for nid, node in self.nodes.items()}

    def _oracle(self, node) -> bool:
        return node.D == scalar_mul(self.params.curve, self.master.x, node.Q)

    def _emit(self, sender, receiver, message, verdict, reason=None, **extra) -> dict:
        rec = {"step": len(self.records), "sender": sender, "receiver": receiver,
               "message": message, "verdict": verdict, "reason": reason, **extra}
        self.records.append(rec)
        return rec

    def _maybe_tamper(self, msg):
        ev = self.tampers.pop(len(self.records), None)
        if ev is None:
            return msg
        try:
            return inject_tamper(self.params, msg, ev.field)
        except UnknownField as exc:
            raise ConfigInvalid([(f"tamper@{ev.step}.field", str(exc))]) from None

    def header(self):
        msg = {"type": "params", **self.params.to_dict(),
               "holders": [{"name": name, "id": format(sh.holder_id, "x"),
                            "W": serialize_point(sh.W)} for name, sh in self.holders],
               "nodes": list(self.cfg.nodes)}
        self._emit("kgc", "*", msg, "published")

    def do_revoke(self, ident):
        self.revoked = revoke(self.revoked, ident)
        self._emit("kgc", "*", {"type": "verdict", "event": "revoke", "id": ident}, "applied")

    def do_request(self, nid, phase):
        params = self.params = self.params.advance_phase(phase)
        node = self.nodes[nid]
        req, tau = make_update_request(params, node, phase, self.rng)
        verified, rejections = [], []
        for name, share in self.holders:
            if name in self.revoked:
                continue
            delivered = self._maybe_tamper(req)
            try:
                resp = respond_update(params, share, self.revoked, delivered, self.rng)
            except ProtocolReject as exc:
                self._emit(nid, name, delivered.to_wire(), "rejected", exc.reason, phase=phase)
                rejections.append(exc.reason)
                continue
            self._emit(nid, name, delivered.to_wire(), "accepted", phase=phase)
            resp = self._maybe_tamper(resp)
            try:
                m = unblind_and_verify(params, tau, req.Q_A, resp)
            except ProtocolReject as exc:
                self._emit(name, nid, resp.to_wire(), "rejected", exc.reason, phase=phase,
                           m=serialize_point(unblind(params, tau, resp)))
                continue
            self._emit(name, nid, resp.to_wire(), "accepted", phase=phase, m=serialize_point(m))
            verified.append((share.holder_id, m))

        used = verified[: params.policy.t]
        msg = {"type": "verdict", "event": "reconstruct", "ID_A": nid, "phase": phase,
               "holders": [format(h, "x") for h, _ in used], "D_A": None}
        if len(used) < params.policy.t:
            reason = "NodeRevoked" if rejections and set(rejections) == {"NodeRevoked"} else "InsufficientShares"
            self._emit(nid, nid, msg, "rejected", reason, phase=phase, oracle_match=False)
            self.outcomes[nid] = {"reconstructed": False, "oracle_match": False}
            return
        node = reconstruct_private_key(params, node, phase, used)
        self.nodes[nid] = node
        match = self._oracle(node)
        msg["D_A"] = serialize_point(node.D)
        self._emit(nid, nid, msg, "accepted", phase=phase, oracle_match=match)
        self.outcomes[nid] = {"reconstructed": True, "oracle_match": match}

    def run(self) -> Transcript:
        self.header()
        for ev in self.cfg.schedule:
            if ev.op == "request":
                self.do_request(ev.id, ev.phase)
            elif ev.op == "revoke":
                self.do_revoke(ev.id)
        if self.tampers:
            raise ConfigInvalid([(f"tamper@{s}.step", "no message was sent at this step")
                                 for s in sorted(self.tampers)])
        self._emit("sim", "*", {"type": "verdict", "event": "outcome", "nodes": self.outcomes},
                   "final")
        return Transcript(self.records, self.outcomes)


def run_scenario(config: ScenarioConfig | dict) -> Transcript:
    if isinstance(config, dict):
        config = ScenarioConfig.from_dict(config)
    return _Runner(config).run()


@dataclass
class ReplayReport:
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _params_from_header(msg: dict) -> tuple[PairingParams, object, dict]:
    curve = WeierstrassCurve.deserialize(msg["curve"])
    F = curve.field
    pp = PairingParams(F, curve, int(msg["q"], 16), int(msg["r"], 16),
                       deserialize_point(F, msg["G"]))
    holders = {int(h["id"], 16): deserialize_point(F, h["W"]) for h in msg["holders"]}
    return pp, deserialize_point(F, msg["P_pub"]), holders


def replay(lines) -> ReplayReport:
    """Recompute every pairing check recorded in a transcript.

    Accepted requests must pass e(PK_A, G) = e(PK, P_pub); accepted shares
    must pass e(Q_A, W) = e(m, G) with Q_A rehashed from the requester id
    and phase; accepted reconstructions must interpolate the listed shares
    and satisfy e(D_A, G) = e(Q_A, P_pub). Pairing-based rejections must
    fail the same checks.
    """
    records = [json.loads(l) if isinstance(l, str) else l for l in lines if str(l).strip()]
    failures: list[str] = []
    checked = 0
    if not records or records[0].get("message", {}).get("type") != "params":
        return ReplayReport(0, ["transcript does not start with a params record"])
    hdr = records[0]["message"]
    pp, P_pub, commitments = _params_from_header(hdr)
    F, E, G = pp.field, pp.curve, pp.G
    t = hdr["t"]
    revoked: set[str] = set()
    contributions: dict[tuple[str, int], dict[int, object]] = {}

    def pt(s):
        return deserialize_point(F, s)

    def fail(rec, why):
        failures.append(f"step {rec['step']}: {why}")

    if not (pp.in_subgroup(G) and G is not INFINITY and pp.in_subgroup(P_pub)):
        return ReplayReport(0, ["header: G or P_pub outside the order-q subgroup"])

    for rec in records[1:]:
        msg, verdict, reason = rec["message"], rec["verdict"], rec.get("reason")
        kind = msg.get("type")
        try:
            if kind == "update_request":
                checked += 1
                if verdict == "rejected" and reason == "NodeRevoked":
                    if msg["ID_A"] not in revoked:
                        fail(rec, f"NodeRevoked but {msg['ID_A']} was never revoked")
                    continue
                if msg["ID_A"] in revoked:
                    fail(rec, f"request from revoked {msg['ID_A']} was not refused")
                    continue
                try:
                    ok = tate_pairing(pp, pt(msg["PK_A"]), G) == tate_pairing(pp, pt(msg["PK"]), P_pub)
                except PointNotInSubgroup:
                    ok = False
                if (verdict == "accepted") != ok:
                    fail(rec, f"request key check recomputes to {ok}, recorded {verdict}")
            elif kind == "share_response":
                checked += 1
                hid = int(msg["holder_id"], 16)
                nid, phase = rec["receiver"], rec["phase"]
                Q_A = h1_hash_to_point(pp, nid, phase)
                m = pt(rec["m"])
                try:
                    ok = tate_pairing(pp, Q_A, pt(msg["W"])) == tate_pairing(pp, m, G)
                except PointNotInSubgroup:
                    ok = False
                if (verdict == "accepted") != ok:
                    fail(rec, f"share check recomputes to {ok}, recorded {verdict}")
                if verdict == "accepted":
                    contributions.setdefault((nid, phase), {})[hid] = m
            elif kind == "verdict" and msg.get("event") == "revoke":
                revoked.add(msg["id"])
            elif kind == "verdict" and msg.get("event") == "reconstruct" and verdict == "accepted":
                checked += 1
                nid, phase = msg["ID_A"], msg["phase"]
                hids = [int(h, 16) for h in msg["holders"]]
                pool = contributions.get((nid, phase), {})
                if len(hids) != t or any(h not in pool for h in hids):
                    fail(rec, "reconstruction uses shares that were not verified")
                    continue
                lambdas = lagrange_at_zero(hids, pp.q)
                D = INFINITY
                for lam, h in zip(lambdas, hids):
                    D = _add(E, D, scalar_mul(E, lam, pool[h]))
                if serialize_point(D) != msg["D_A"]:
                    fail(rec, "recorded D_A differs from the interpolated shares")
                Q_A = h1_hash_to_point(pp, nid, phase)
                if tate_pairing(pp, pt(msg["D_A"]), G) != tate_pairing(pp, Q_A, P_pub):
                    fail(rec, "e(D_A, G) != e(Q_A, P_pub)")
        except (KeyError, ValueError, TypeError) as exc:
            fail(rec, f"malformed record: {exc!r}")
    return ReplayReport(checked, failures)


def replay_file(path: str | Path) -> ReplayReport:
    return replay(Path(path).read_text().splitlines())
