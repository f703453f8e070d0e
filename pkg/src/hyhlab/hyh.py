"""The HYH elliptic-curve signcryption scheme, runnable in two flavours.

``paper`` mode reproduces the scheme as published: no key validation, no
check on the ephemeral point, no check that the shared point is not the
identity, and a keystream that is nothing more than the x-coordinate of the
shared point repeated. ``strict`` mode is the same algebra with every
missing check switched on. Both modes exist side by side so each weakness
can be demonstrated against one and shown blocked against the other.

A signcrypted message is the triple (R, C, s):

    r  random in [1, n-1],  R = r*G,  K = r*U_B = (x_K, y_K)
    s  = r^-1 * (H(M) + (x_R mod n) * d_A)  mod n
    C  = (M || tag) XOR keystream(x_K),  tag = H(M || s)  (32 bytes)

and unsigncryption recomputes K = d_B * R, strips the keystream, and accepts
only if the tag matches and the public verification equation

    s*R == H(M)*G + (x_R mod n)*U_A

holds.
"""

import hashlib
import logging
import random
from dataclasses import dataclass

from . import paramcheck
from .curve import (
    CurveParams,
    Point,
    point_add,
    scalar_mul,
    validate_public_key,
)
from .numtheory import mod_inverse

log = logging.getLogger(__name__)

PAPER = "paper"
STRICT = "strict"

TAG_LEN = 32

_RESAMPLE_LIMIT = 256


class InvalidParams(ValueError):
    """Strict-mode refusal: domain parameters failed validation."""


class InvalidRecipientKey(ValueError):
    """Strict-mode refusal: recipient public key failed validation."""


class RngFailure(RuntimeError):
    """Could not sample a usable ephemeral scalar."""


@dataclass(frozen=True)
class SchemeConfig:
    params: CurveParams
    mode: str = PAPER
    hash_name: str = "sha256"

    def __post_init__(self):
        if self.mode not in (PAPER, STRICT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if hashlib.new(self.hash_name).digest_size < TAG_LEN:
            raise ValueError(f"hash {self.hash_name} is narrower than the tag")

    @property
    def scalar_width(self) -> int:
        return (self.params.n.bit_length() + 7) // 8

    @property
    def field_width(self) -> int:
        return (self.params.q.bit_length() + 7) // 8


@dataclass(frozen=True)
class KeyPair:
    d: int
    U: Point


@dataclass(frozen=True)
class SigncryptedText:
    R: Point
    C: bytes
    s: int


def _rng(seed_or_rng: int | random.Random | None) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def x_coord(P: Point) -> int:
    """x-coordinate with the lab convention x(O) = 0.

    The published scheme never guards against the identity, so to execute it
    faithfully the identity needs *some* x value; zero makes the degenerate
    keystream observable instead of crashing.
    """
    return 0 if P is None else P[0]


def hash_bytes(config: SchemeConfig, data: bytes) -> bytes:
    return hashlib.new(config.hash_name, data).digest()


def hash_to_scalar(config: SchemeConfig, message: bytes) -> int:
    """Digest reduced into [0, n-1]."""
    return int.from_bytes(hash_bytes(config, message), "big") % config.params.n


def encode_scalar(config: SchemeConfig, v: int) -> bytes:
    return v.to_bytes(config.scalar_width, "big")


def encode_field(config: SchemeConfig, v: int) -> bytes:
    return v.to_bytes(config.field_width, "big")


def keystream(config: SchemeConfig, x_k: int, length: int) -> bytes:
    """The published cipher's keystream: the fixed-width encoding of x_K
    repeated cyclically. Deliberately linear; do not fix."""
    if length < 1:
        raise ValueError("keystream length must be >= 1")
    block = encode_field(config, x_k)
    reps = -(-length // len(block))
    return (block * reps)[:length]


def _xor(data: bytes, stream: bytes) -> bytes:
    return bytes(a ^ b for a, b in zip(data, stream))


def _tag(config: SchemeConfig, message: bytes, s: int) -> bytes:
    return hash_bytes(config, message + encode_scalar(config, s))[:TAG_LEN]


def _has_order_n(config: SchemeConfig, P: Point) -> bool:
    return P is not None and scalar_mul(config.params, config.params.n, P) is None


def gen(config: SchemeConfig, rng_seed: int | random.Random | None = None) -> KeyPair:
    """Fresh key pair d, U = d*G. Strict mode insists the domain parameters
    validate first; paper mode asks no questions."""
    if config.mode == STRICT:
        report = paramcheck.validate_domain_params(config.params)
        if not report.overall:
            raise InvalidParams(
                "domain parameters failed: " + ", ".join(report.failed_names())
            )
    rng = _rng(rng_seed)
    d = rng.randrange(1, config.params.n)
    return keypair_from_secret(config, d)


def keypair_from_secret(config: SchemeConfig, d: int) -> KeyPair:
    if not 1 <= d < config.params.n:
        raise ValueError("secret scalar out of range")
    return KeyPair(d=d, U=scalar_mul(config.params, d, config.params.G))


def signcrypt(config: SchemeConfig, d_a: int, u_b: Point, message: bytes,
              rng_seed: int | random.Random | None = None,
              forced_r: int | None = None) -> SigncryptedText:
    """Signcrypt message from the holder of d_a to the holder of u_b.

    forced_r pins the ephemeral scalar; it exists so tests and attack
    stagings can reproduce nonce misuse on demand.
    """
    params = config.params
    n = params.n
    if not message:
        raise ValueError("message must be non-empty")
    if not 1 <= d_a < n:
        raise ValueError("sender secret out of range")
    if config.mode == STRICT:
        verdict = validate_public_key(params, u_b)
        if not verdict.ok or not _has_order_n(config, u_b):
            raise InvalidRecipientKey(
                f"recipient key failed validation ({','.join(verdict.failed) or 'order'})"
            )
    rng = _rng(rng_seed)
    for _ in range(_RESAMPLE_LIMIT):
        r = forced_r if forced_r is not None else rng.randrange(1, n)
        if not 1 <= r < n:
            raise ValueError("forced ephemeral scalar out of range")
        R = scalar_mul(params, r, params.G)
        K = scalar_mul(params, r, u_b)
        x_r = x_coord(R) % n
        if x_r == 0 or K is None:
            if forced_r is not None:
                raise ValueError("forced ephemeral scalar hits a degenerate case")
            continue
        s = mod_inverse(r, n) * (hash_to_scalar(config, message) + x_r * d_a) % n
        if s == 0:
            if forced_r is not None:
                raise ValueError("forced ephemeral scalar yields s = 0")
            continue
        tag = _tag(config, message, s)
        stream = keystream(config, x_coord(K), len(message) + TAG_LEN)
        return SigncryptedText(R=R, C=_xor(message + tag, stream), s=s)
    raise RngFailure("no usable ephemeral scalar found; recipient key degenerate?")


@dataclass(frozen=True)
class UnsigncryptTrace:
    """Step-by-step record of one unsigncryption. Lab instrument only: the
    protocol-facing result is collapsed to message-or-nothing by
    ``unsigncrypt`` so rejection reasons never leak to a peer."""

    accepted: bool
    message: bytes | None
    rejected_at: str | None
    decrypt_attempted: bool
    message_region: bytes | None = None
    session_key_x: int | None = None
    tag_ok: bool | None = None
    signature_ok: bool | None = None


def unsigncrypt_trace(config: SchemeConfig, d_b: int, u_a: Point,
                      sct: SigncryptedText) -> UnsigncryptTrace:
    params = config.params
    R, C, s = sct.R, sct.C, sct.s
    if len(C) < TAG_LEN + 1:
        return UnsigncryptTrace(False, None, "length", decrypt_attempted=False)
    if config.mode == STRICT:
        if not validate_public_key(params, R).ok or not _has_order_n(config, R):
            return UnsigncryptTrace(False, None, "ephemeral_point", decrypt_attempted=False)
    K = scalar_mul(params, d_b, R)
    if config.mode == STRICT and K is None:
        return UnsigncryptTrace(False, None, "shared_point_identity",
                                decrypt_attempted=False)
    x_k = x_coord(K)
    plain = _xor(C, keystream(config, x_k, len(C)))
    message, tag = plain[:-TAG_LEN], plain[-TAG_LEN:]
    tag_ok = tag == _tag(config, message, s)
    sig_ok = public_verify(config, u_a, message, R, s)
    accepted = tag_ok and sig_ok
    return UnsigncryptTrace(
        accepted=accepted,
        message=message if accepted else None,
        rejected_at=None if accepted else ("tag" if not tag_ok else "signature"),
        decrypt_attempted=True,
        message_region=message,
        session_key_x=x_k,
        tag_ok=tag_ok,
        signature_ok=sig_ok,
    )


def unsigncrypt(config: SchemeConfig, d_b: int, u_a: Point,
                sct: SigncryptedText) -> bytes | None:
    """Recover the message, or None for any rejection."""
    trace = unsigncrypt_trace(config, d_b, u_a, sct)
    if not trace.accepted:
        log.debug("unsigncryption rejected at %s", trace.rejected_at)
    return trace.message


def public_verify(config: SchemeConfig, u_a: Point, message: bytes, R: Point,
                  s: int) -> bool:
    """Anyone holding the message can check s*R == H(M)*G + (x_R mod n)*U_A."""
    params = config.params
    lhs = scalar_mul(params, s, R)
    rhs = point_add(
        params,
        scalar_mul(params, hash_to_scalar(config, message), params.G),
        scalar_mul(params, x_coord(R) % params.n, u_a),
    )
    return lhs == rhs


# --- wire format -----------------------------------------------------------

def point_to_json(P: Point) -> dict:
    if P is None:
        return {"x": "00", "y": "inf"}
    return {"x": f"{P[0]:x}", "y": f"{P[1]:x}"}


def sct_to_dict(sct: SigncryptedText) -> dict:
    pt = point_to_json(sct.R)
    return {"Rx": pt["x"], "Ry": pt["y"], "C": sct.C.hex(), "s": f"{sct.s:x}"}


def sct_from_dict(obj: dict) -> SigncryptedText:
    if obj["Ry"] == "inf":
        R: Point = None
    else:
        R = (int(obj["Rx"], 16), int(obj["Ry"], 16))
    return SigncryptedText(R=R, C=bytes.fromhex(obj["C"]), s=int(obj["s"], 16))
