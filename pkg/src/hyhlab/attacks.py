"""Executable attacks against the signcryption scheme.

Each attack takes the public artifacts an attacker would actually hold
(intercepted triples, certificates, oracle access) plus whatever leaked or
mis-generated secret the scenario assumes, and returns an AttackReport whose
``success`` flag is only set after the recovered secrets have been checked
against their public counterparts. Nothing here is simulated by peeking at
the victim's state: if the report says a private key was recovered, the key
was recomputed from the attacker's view and verified via d*G == U.
"""

import hmac
import itertools
import random
import time
from dataclasses import dataclass, field

from . import hyh
from .curve import (
    CurveParams,
    InvalidCurveHit,
    Point,
    find_invalid_curves,
    point_add,
    scalar_mul,
    validate_public_key,
)
from .hyh import (
    KeyPair,
    SchemeConfig,
    SigncryptedText,
    TAG_LEN,
    encode_field,
    hash_bytes,
    hash_to_scalar,
    keystream,
    x_coord,
)
from .numtheory import crt_combine, mod_inverse

DEFAULT_NOT_AFTER = 1 << 31
MAX_SIGN_VECTOR_CURVES = 24


class EphemeralMismatch(ValueError):
    """Claimed ephemeral scalar does not reproduce the transmitted point."""


class ConsistencyFailure(ValueError):
    """Recovered value failed its sanity equation (wrong inputs supplied)."""


class QueryBudgetExceeded(RuntimeError):
    """Confirmation oracle refused: query budget spent."""


class OracleRejection(RuntimeError):
    """Confirmation oracle refused the query (strict-mode validation)."""


class ResidueNotFound(RuntimeError):
    """MAC brute force exhausted the coset without a match."""


class CandidateNotFound(RuntimeError):
    """No CRT sign combination reproduced the victim's public key."""


class PossessionProofInvalid(ValueError):
    """CA refused: applicant could not prove control of the private key."""


class InvalidPublicKey(ValueError):
    """CA refused: submitted public key failed validation."""


@dataclass
class AttackReport:
    attack_name: str
    success: bool
    recovered_secrets: dict[str, str] = field(default_factory=dict)
    oracle_queries: int = 0
    transcript: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def log(self, event: str, **details):
        self.transcript.append({"event": event, **details})

    def to_dict(self, include_wall_time: bool = False) -> dict:
        out = {
            "attack_name": self.attack_name,
            "success": self.success,
            "recovered_secrets": dict(self.recovered_secrets),
            "oracle_queries": self.oracle_queries,
            "transcript": list(self.transcript),
        }
        if include_wall_time:
            out["wall_time"] = self.wall_time
        return out


def _hex(v: int) -> str:
    return f"{v:x}"


# --- finding 1: leaked ephemeral scalar ------------------------------------

def recover_sender_key(config: SchemeConfig, u_a: Point, u_b: Point,
                       sct: SigncryptedText, r: int) -> AttackReport:
    """Recover the sender's long-term key from one intercepted triple plus
    its ephemeral scalar: d_A = x_R^-1 * (r*s - H(M)) mod n."""
    t0 = time.monotonic()
    params = config.params
    n = params.n
    report = AttackReport("recover_sender_key", success=False)
    if scalar_mul(params, r, params.G) != sct.R:
        raise EphemeralMismatch("r*G does not match the transmitted R")
    shared = scalar_mul(params, r, u_b)
    x_k = x_coord(shared)
    plain = bytes(a ^ b for a, b in zip(sct.C, keystream(config, x_k, len(sct.C))))
    message, tag = plain[:-TAG_LEN], plain[-TAG_LEN:]
    report.log("decrypted", message=message.hex(), tag_matches=(
        tag == hash_bytes(config, message + hyh.encode_scalar(config, sct.s))[:TAG_LEN]))
    x_r = x_coord(sct.R) % n
    d_a = mod_inverse(x_r, n) * (r * sct.s - hash_to_scalar(config, message)) % n
    report.log("key_formula_applied", d_a=_hex(d_a))
    report.success = scalar_mul(params, d_a, params.G) == u_a
    if report.success:
        report.recovered_secrets = {
            "d_A": _hex(d_a), "M": message.hex(), "x_K": _hex(x_k),
        }
    report.wall_time = time.monotonic() - t0
    return report


# --- finding 2 / Eq-style XOR linearity -------------------------------------

@dataclass(frozen=True)
class NonceReuseResult:
    """Output of the two-ciphertext XOR attack.

    m2 is exact when both messages have the same length; with differing
    ciphertext lengths only the overlapping prefix is recoverable and
    length_mismatch is set. tag_xor is the XOR of the two trailing tags and
    only lines up when the lengths agree.
    """

    m2: bytes
    tag_xor: bytes | None
    length_mismatch: bool


def nonce_reuse_recover(c1: bytes, c2: bytes, m1: bytes) -> NonceReuseResult:
    """Given two ciphertexts produced under the same ephemeral scalar and the
    first plaintext, strip the shared keystream: C1 XOR C2 = (M1 XOR M2) ||
    (tag1 XOR tag2), so M2 falls out with no key material at all."""
    mismatch = len(c1) != len(c2)
    overlap = min(len(m1), len(c2) - TAG_LEN, len(c1) - TAG_LEN)
    if overlap < 0:
        raise ValueError("ciphertext shorter than a tag")
    xored = bytes(a ^ b for a, b in zip(c1, c2))
    m2 = bytes(x ^ m for x, m in zip(xored[:overlap], m1))
    tag_xor = None if mismatch else xored[-TAG_LEN:]
    return NonceReuseResult(m2=m2, tag_xor=tag_xor, length_mismatch=mismatch)


# --- finding 5: invalid-curve key recovery ----------------------------------

def confirmation_mac(config: SchemeConfig, x_k: int, message: bytes) -> bytes:
    """Delivery-confirmation tag: HMAC keyed with the session key's
    x-coordinate in fixed-width encoding."""
    return hmac.new(encode_field(config, x_k), message, config.hash_name).digest()


class ConfirmationOracle:
    """A simulated recipient that acknowledges every delivery with a MAC.

    On each query the recipient computes its shared point from the incoming
    ephemeral point, runs the unsigncryption steps, and regardless of whether
    the tag verified, returns the confirmation message with its MAC under the
    session key. A strict-mode recipient instead validates the incoming point
    first and refuses anything off-curve or of the wrong order.
    """

    def __init__(self, d_b: int, config: SchemeConfig,
                 confirmation_message: bytes, query_budget: int = 64):
        self._d_b = d_b
        self.config = config
        self.confirmation_message = confirmation_message
        self.query_budget = query_budget
        self.queries = 0

    def query(self, W: Point, C: bytes, s: int) -> tuple[bytes, bytes]:
        if self.queries >= self.query_budget:
            raise QueryBudgetExceeded(f"budget of {self.query_budget} queries spent")
        self.queries += 1
        params = self.config.params
        if self.config.mode == hyh.STRICT:
            ok = validate_public_key(params, W).ok and W is not None \
                and scalar_mul(params, params.n, W) is None
            if not ok:
                raise OracleRejection("incoming ephemeral point failed validation")
        shared = scalar_mul(params, self._d_b, W)
        x_k = x_coord(shared)
        if len(C) > 0:  # go through the decryption motions like a real victim
            plain = bytes(a ^ b for a, b in zip(C, keystream(self.config, x_k, len(C))))
            del plain  # tag verification outcome does not gate the reply
        z = confirmation_mac(self.config, x_k, self.confirmation_message)
        return self.confirmation_message, z


def make_confirmation_oracle(d_b: int, config: SchemeConfig,
                             confirmation_message: bytes,
                             query_budget: int = 64) -> ConfirmationOracle:
    return ConfirmationOracle(d_b, config, confirmation_message, query_budget)


@dataclass(frozen=True)
class Residue:
    """The victim's key modulo a small order, known only up to sign: the MAC
    depends on the shared point's x-coordinate alone, and x(j*W) = x(-j*W)."""

    value: int
    modulus: int
    sign_ambiguous: bool = True


def invalid_curve_attack(config: SchemeConfig, u_b: Point,
                         oracle: ConfirmationOracle, rng_seed: int,
                         min_product: int | None = None,
                         small_order_bound: int = 1 << 14) -> AttackReport:
    """Recover the recipient's long-term key via small-order points.

    For each curve sharing a with the real one but with a different b, a
    point W of small prime order g is sent in place of R. The victim's reply
    MAC is keyed by x(d_B * W), which takes at most ceil(g/2)+1 distinct
    values, so a short brute force yields d_B mod g up to sign. Residues from
    curves with pairwise coprime orders are then recombined: every sign
    assignment is pushed through the CRT until one candidate reproduces the
    victim's public key.
    """
    t0 = time.monotonic()
    params = config.params
    report = AttackReport("invalid_curve_attack", success=False)
    hits = find_invalid_curves(params, min_product or params.n, rng_seed,
                               small_order_bound=small_order_bound)
    report.log("invalid_curves_found",
               orders=[h.order for h in hits],
               b_values=[_hex(h.params.b) for h in hits])

    residues: list[Residue] = []
    trials_per_curve: list[int] = []
    junk_c = bytes(TAG_LEN + 1)
    for hit in hits:
        try:
            message, z = oracle.query(hit.point, junk_c, 1)
        except OracleRejection as exc:
            report.oracle_queries = oracle.queries
            report.log("oracle_rejected", order=hit.order, reason=str(exc))
            report.wall_time = time.monotonic() - t0
            return report
        j, trials = _brute_force_coset(config, hit, message, z)
        if j is None:
            raise ResidueNotFound(
                f"no multiple of the order-{hit.order} point matched the MAC"
            )
        residues.append(Residue(value=j, modulus=hit.order))
        trials_per_curve.append(trials)
        report.log("residue_found", order=hit.order, value=j, mac_trials=trials)
    report.oracle_queries = oracle.queries

    d_b = _resolve_signs(params, residues, u_b)
    if d_b is None:
        raise CandidateNotFound("no sign assignment reproduced the public key")
    report.log("crt_recombined", d_b=_hex(d_b),
               sign_vectors_max=2 ** len(residues))
    report.success = scalar_mul(params, d_b, params.G) == u_b
    if report.success:
        report.recovered_secrets = {"d_B": _hex(d_b)}
        report.recovered_secrets["residues"] = ",".join(
            f"{r.value}%{r.modulus}" for r in residues)
        report.log("mac_trials_total", per_curve=trials_per_curve,
                   bounds=[h.order // 2 + 1 + h.order % 2 for h in hits])
    report.wall_time = time.monotonic() - t0
    return report


def _brute_force_coset(config: SchemeConfig, hit: InvalidCurveHit,
                       message: bytes, z: bytes) -> tuple[int | None, int]:
    """Scan j = 0 .. ceil(g/2) computing the MAC keyed by x(j*W)."""
    half = (hit.order + 1) // 2
    K: Point = None
    trials = 0
    for j in range(half + 1):
        trials += 1
        if confirmation_mac(config, x_coord(K), message) == z:
            return j, trials
        K = point_add(hit.params, K, hit.point)
    return None, trials


def _resolve_signs(params: CurveParams, residues: list[Residue],
                   u_b: Point) -> int | None:
    if len(residues) > MAX_SIGN_VECTOR_CURVES:
        raise CandidateNotFound(
            f"{len(residues)} curves exceed the sign-enumeration bound")
    moduli_product = 1
    for r in residues:
        moduli_product *= r.modulus
    seen: set[int] = set()
    for signs in itertools.product((1, -1), repeat=len(residues)):
        pairs = [(r.value * sign % r.modulus, r.modulus)
                 for r, sign in zip(residues, signs)]
        candidate = crt_combine(pairs)
        for d in (candidate, moduli_product - candidate):
            if d in seen:
                continue
            seen.add(d)
            if 1 <= d < moduli_product and scalar_mul(params, d, params.G) == u_b:
                return d
    return None


# --- toy certificate authority ----------------------------------------------

@dataclass(frozen=True)
class Certificate:
    subject_identity: str
    public_key: Point
    not_after: int
    ca_signature: bytes


@dataclass(frozen=True)
class CertVerdict:
    failed: tuple[str, ...] = ()  # from {"signature", "expired", "revoked"}

    @property
    def ok(self) -> bool:
        return not self.failed


class CertRegistry:
    """An in-memory CA: one Schnorr keypair, issued certs, a revocation set."""

    def __init__(self, config: SchemeConfig, rng_seed: int = 0):
        self.config = config
        rng = random.Random(rng_seed)
        self._d = rng.randrange(1, config.params.n)
        self.public_key = scalar_mul(config.params, self._d, config.params.G)
        self.issued: dict[str, Certificate] = {}
        self.revoked: set[bytes] = set()
        self._rng = rng

    def sign(self, message: bytes) -> bytes:
        return schnorr_sign(self.config, self._d, message, self._rng)

    def revoke(self, cert: Certificate):
        self.revoked.add(cert.ca_signature)


def _point_bytes(config: SchemeConfig, P: Point) -> bytes:
    if P is None:
        return b"INF"
    return encode_field(config, P[0]) + encode_field(config, P[1])


def _cert_body(config: SchemeConfig, identity: str, public_key: Point,
               not_after: int) -> bytes:
    return (b"cert\0" + identity.encode() + b"\0"
            + _point_bytes(config, public_key) + not_after.to_bytes(8, "big"))


def schnorr_sign(config: SchemeConfig, d: int, message: bytes,
                 rng: random.Random) -> bytes:
    params = config.params
    n = params.n
    while True:
        k = rng.randrange(1, n)
        R = scalar_mul(params, k, params.G)
        c = int.from_bytes(
            hash_bytes(config, _point_bytes(config, R) + message), "big") % n
        z = (k + c * d) % n
        if z != 0 and R is not None:
            return _point_bytes(config, R) + hyh.encode_scalar(config, z)


def schnorr_verify(config: SchemeConfig, public_key: Point, message: bytes,
                   signature: bytes) -> bool:
    params = config.params
    w = config.field_width
    if len(signature) != 2 * w + config.scalar_width:
        return False
    R: Point = (int.from_bytes(signature[:w], "big"),
                int.from_bytes(signature[w:2 * w], "big"))
    z = int.from_bytes(signature[2 * w:], "big")
    c = int.from_bytes(
        hash_bytes(config, signature[:2 * w] + message), "big") % params.n
    lhs = scalar_mul(params, z, params.G)
    rhs = point_add(params, R, scalar_mul(params, c, public_key))
    return lhs == rhs


def _possession_body(config: SchemeConfig, identity: str, public_key: Point) -> bytes:
    return b"possess\0" + identity.encode() + b"\0" + _point_bytes(config, public_key)


def make_possession_proof(config: SchemeConfig, keypair: KeyPair,
                          identity: str, rng_seed: int = 0) -> bytes:
    """Signature over a fixed-format request, proving control of the key."""
    return schnorr_sign(config, keypair.d,
                        _possession_body(config, identity, keypair.U),
                        random.Random(rng_seed))


def ca_issue(registry: CertRegistry, identity: str, public_key: Point,
             check_possession: bool, possession_proof: bytes | None = None,
             not_after: int = DEFAULT_NOT_AFTER) -> Certificate:
    """Issue a certificate binding identity to public_key.

    With check_possession off -- the scheme's own operating model -- the CA
    signs whatever it is handed: another party's key, an off-curve point,
    anything. With it on, the key must validate and the applicant must
    present a valid signature of possession under that key.
    """
    config = registry.config
    if check_possession:
        verdict = validate_public_key(config.params, public_key)
        if not verdict.ok:
            raise InvalidPublicKey(
                f"public key failed validation ({','.join(verdict.failed)})")
        if possession_proof is None or not schnorr_verify(
                config, public_key,
                _possession_body(config, identity, public_key),
                possession_proof):
            raise PossessionProofInvalid(
                f"no valid proof of possession for {identity!r}")
    cert = Certificate(
        subject_identity=identity,
        public_key=public_key,
        not_after=not_after,
        ca_signature=registry.sign(
            _cert_body(config, identity, public_key, not_after)),
    )
    registry.issued[identity] = cert
    return cert


def cert_validate(registry: CertRegistry, cert: Certificate,
                  now: int) -> CertVerdict:
    failed = []
    body = _cert_body(registry.config, cert.subject_identity, cert.public_key,
                      cert.not_after)
    if not schnorr_verify(registry.config, registry.public_key, body,
                          cert.ca_signature):
        failed.append("signature")
    if now > cert.not_after:
        failed.append("expired")
    if cert.ca_signature in registry.revoked:
        failed.append("revoked")
    return CertVerdict(failed=tuple(failed))


# --- finding 6: unknown key-share -------------------------------------------

def uks_scenario(config: SchemeConfig, alice: KeyPair, bob: KeyPair,
                 mallory_identity: str, message: bytes, rng_seed: int = 0,
                 strict_ca: bool = False,
                 tamper_ciphertext: bool = False) -> AttackReport:
    """Mallory certifies Alice's public key under his own name and replays
    her traffic: Bob accepts the message as coming from Mallory while Alice
    believes she wrote to Bob. Works because certification never asked
    Mallory to prove he holds the private key for the key he registered."""
    t0 = time.monotonic()
    report = AttackReport("uks_scenario", success=False)
    registry = CertRegistry(config, rng_seed=rng_seed)
    now = 1000

    ca_issue(registry, "Alice", alice.U, check_possession=False)
    try:
        mallory_cert = ca_issue(registry, mallory_identity, alice.U,
                                check_possession=strict_ca,
                                possession_proof=None)
    except PossessionProofInvalid as exc:
        report.log("certification_blocked", identity=mallory_identity,
                   reason=str(exc))
        report.wall_time = time.monotonic() - t0
        return report
    report.log("certificate_issued", identity=mallory_identity,
               bound_key="alice_public_key")

    sct = hyh.signcrypt(config, alice.d, bob.U, message,
                        rng_seed=random.Random(rng_seed ^ 0x5C))
    alice_view = {"sender": "Alice", "believed_recipient": "Bob"}
    report.log("alice_sent", **alice_view, ciphertext_len=len(sct.C))

    if tamper_ciphertext:
        tampered = bytes([sct.C[0] ^ 1]) + sct.C[1:]
        sct = SigncryptedText(R=sct.R, C=tampered, s=sct.s)
        report.log("mallory_tampered", note="first ciphertext byte flipped")
    report.log("mallory_forwarded", claimed_sender=mallory_identity)

    cert = registry.issued[mallory_identity]
    if not cert_validate(registry, cert, now).ok:
        report.log("bob_rejected_certificate")
        report.wall_time = time.monotonic() - t0
        return report
    recovered = hyh.unsigncrypt(config, bob.d, cert.public_key, sct)
    bob_view = {
        "believed_sender": mallory_identity,
        "accepted": recovered is not None,
    }
    report.log("bob_unsigncrypted", **bob_view)

    report.success = (
        recovered == message
        and bob_view["believed_sender"] == mallory_identity
        and alice_view["believed_recipient"] == "Bob"
    )
    if report.success:
        report.recovered_secrets = {"M_as_seen_by_bob": recovered.hex()}
        report.log("views_diverged", alice_thinks="Bob",
                   bob_thinks=mallory_identity)
    report.wall_time = time.monotonic() - t0
    return report


# --- finding 9: no forward secrecy ------------------------------------------

def break_forward_secrecy(config: SchemeConfig, d_a: int, u_b: Point,
                          sct: SigncryptedText, message: bytes) -> AttackReport:
    """With the sender's long-term key and a known plaintext, the ephemeral
    scalar of a past session falls out as r = s^-1 (H(M) + x_R d_A) mod n,
    and with it the session key that protected the ciphertext."""
    t0 = time.monotonic()
    params = config.params
    n = params.n
    report = AttackReport("break_forward_secrecy", success=False)
    x_r = x_coord(sct.R) % n
    r = mod_inverse(sct.s, n) * (hash_to_scalar(config, message) + x_r * d_a) % n
    if scalar_mul(params, r, params.G) != sct.R:
        raise ConsistencyFailure(
            "recovered r does not regenerate R; wrong message or sender key")
    report.log("ephemeral_recovered", r=_hex(r))
    x_k = x_coord(scalar_mul(params, r, u_b))
    plain = bytes(a ^ b for a, b in zip(sct.C, keystream(config, x_k, len(sct.C))))
    redecrypted = plain[:-TAG_LEN]
    report.log("session_redecrypted", matches=redecrypted == message)
    report.success = redecrypted == message
    if report.success:
        report.recovered_secrets = {"r": _hex(r), "x_K": _hex(x_k),
                                    "M": redecrypted.hex()}
    report.wall_time = time.monotonic() - t0
    return report


# --- finding 8: identity point as session key -------------------------------

def degenerate_key_demo(config: SchemeConfig, rng_seed: int = 0,
                        forge_acceptance: bool | None = None) -> AttackReport:
    """Send R = O so the recipient's shared point is the identity and the
    keystream collapses to all zero bytes.

    The unvalidated deployment dutifully 'decrypts' the ciphertext with the
    zero keystream; the validated one rejects before touching it. If the
    group order is small enough, a message hashing to 0 mod n is also brute
    forced, at which point the unvalidated deployment fully accepts a triple
    built without any key at all. Success means the two behaviours diverge
    exactly this way.
    """
    t0 = time.monotonic()
    params = config.params
    n = params.n
    paper_cfg = SchemeConfig(params=params, mode=hyh.PAPER,
                             hash_name=config.hash_name)
    strict_cfg = SchemeConfig(params=params, mode=hyh.STRICT,
                              hash_name=config.hash_name)
    report = AttackReport("degenerate_key_demo", success=False)
    rng = random.Random(rng_seed)
    bob = hyh.keypair_from_secret(paper_cfg, rng.randrange(1, n))
    alice = hyh.keypair_from_secret(paper_cfg, rng.randrange(1, n))

    message = b"weak key: the keystream below is all zeros"
    s = rng.randrange(1, n)
    tag = hash_bytes(paper_cfg, message + hyh.encode_scalar(paper_cfg, s))[:TAG_LEN]
    sct = SigncryptedText(R=None, C=message + tag, s=s)

    paper_trace = hyh.unsigncrypt_trace(paper_cfg, bob.d, alice.U, sct)
    strict_trace = hyh.unsigncrypt_trace(strict_cfg, bob.d, alice.U, sct)
    zero_keystream = (paper_trace.decrypt_attempted
                      and paper_trace.session_key_x == 0
                      and paper_trace.message_region == message)
    report.log("paper_mode", decrypt_attempted=paper_trace.decrypt_attempted,
               session_key_x=paper_trace.session_key_x,
               plaintext_read_back_verbatim=zero_keystream,
               tag_passed=paper_trace.tag_ok)
    report.log("strict_mode", decrypt_attempted=strict_trace.decrypt_attempted,
               rejected_at=strict_trace.rejected_at)

    report.success = (zero_keystream and not strict_trace.decrypt_attempted
                      and strict_trace.rejected_at == "ephemeral_point")

    if forge_acceptance is None:
        forge_acceptance = n <= 1 << 21
    if forge_acceptance:
        forged = _forge_zero_hash_triple(paper_cfg, rng_seed)
        accepted = hyh.unsigncrypt(paper_cfg, bob.d, alice.U, forged)
        plaintext = forged.C[:-TAG_LEN]
        report.log("keyless_forgery", message=plaintext.hex(),
                   accepted_by_paper_mode=accepted == plaintext,
                   accepted_by_strict_mode=hyh.unsigncrypt(
                       strict_cfg, bob.d, alice.U, forged) is not None)
        report.success = report.success and accepted == plaintext
        if report.success:
            report.recovered_secrets["forged_M"] = plaintext.hex()

    report.wall_time = time.monotonic() - t0
    return report


def _forge_zero_hash_triple(config: SchemeConfig, rng_seed: int) -> SigncryptedText:
    """Build an accepted triple with no key material: R = O kills both sides
    of the verification equation once H(M) = 0 mod n, and the zero keystream
    makes the ciphertext the plaintext. Needs ~n hash trials."""
    n = config.params.n
    counter = 0
    while True:
        message = b"forged-%d-%d" % (rng_seed, counter)
        if hash_to_scalar(config, message) == 0:
            break
        counter += 1
    s = 1
    tag = hash_bytes(config, message + hyh.encode_scalar(config, s))[:TAG_LEN]
    return SigncryptedText(R=None, C=message + tag, s=s)
