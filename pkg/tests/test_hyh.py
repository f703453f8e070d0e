import hashlib
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyhlab import curve as cv
from hyhlab import fixtures, hyh
from hyhlab.hyh import PAPER, STRICT, SchemeConfig, SigncryptedText
from hyhlab.numtheory import mod_inverse


@pytest.fixture(scope="module")
def keys16(paper16):
    rng = random.Random(99)
    alice = hyh.keypair_from_secret(paper16, rng.randrange(1, paper16.params.n))
    bob = hyh.keypair_from_secret(paper16, rng.randrange(1, paper16.params.n))
    return alice, bob


class TestConfig:
    def test_rejects_unknown_mode(self, toy16):
        with pytest.raises(ValueError):
            SchemeConfig(params=toy16, mode="lenient")

    def test_rejects_narrow_hash(self, toy16):
        with pytest.raises(ValueError):
            SchemeConfig(params=toy16, hash_name="sha1")

    def test_widths(self, paper16):
        assert paper16.scalar_width == 2   # n = 16381 < 2^16
        assert paper16.field_width == 2


class TestGen:
    def test_forced_unit_secret_gives_base_point(self, paper16):
        kp = hyh.keypair_from_secret(paper16, 1)
        assert kp.U == paper16.params.G

    def test_seeds_diverge(self, paper16):
        d1 = hyh.gen(paper16, rng_seed=1).d
        d2 = hyh.gen(paper16, rng_seed=2).d
        assert d1 != d2

    def test_strict_requires_valid_params(self):
        bad = fixtures.load(fixtures.COMPOSITE_N)
        config = SchemeConfig(params=bad, mode=STRICT)
        with pytest.raises(hyh.InvalidParams):
            hyh.gen(config, rng_seed=1)

    def test_secret_must_be_in_range(self, paper16):
        with pytest.raises(ValueError):
            hyh.keypair_from_secret(paper16, 0)
        with pytest.raises(ValueError):
            hyh.keypair_from_secret(paper16, paper16.params.n)


class TestHashToScalar:
    def test_range_and_determinism(self, paper16):
        n = paper16.params.n
        for m in (b"", b"a", b"xyz" * 100):
            v = hyh.hash_to_scalar(paper16, m)
            assert 0 <= v < n
            assert v == hyh.hash_to_scalar(paper16, m)

    def test_empty_message_mod_seven(self, f23_n7):
        config = SchemeConfig(params=f23_n7, mode=PAPER)
        expected = int(hashlib.sha256(b"").hexdigest(), 16) % 7
        assert expected == 1
        assert hyh.hash_to_scalar(config, b"") == 1


class TestKeystream:
    def test_zero_key_is_zero_stream(self, paper16):
        assert hyh.keystream(paper16, 0, 10) == bytes(10)

    def test_exact_width_is_the_encoding(self, paper16):
        x = 0x1234
        assert hyh.keystream(paper16, x, 2) == b"\x12\x34"

    def test_prefix_property(self, paper16):
        x = 40001
        long = hyh.keystream(paper16, x, 100)
        for lng in (1, 2, 3, 50, 99):
            assert hyh.keystream(paper16, x, lng) == long[:lng]

    def test_rejects_empty(self, paper16):
        with pytest.raises(ValueError):
            hyh.keystream(paper16, 1, 0)


class TestSigncrypt:
    def test_round_trip(self, paper16, keys16):
        alice, bob = keys16
        sct = hyh.signcrypt(paper16, alice.d, bob.U, b"hello bob", rng_seed=1)
        assert hyh.unsigncrypt(paper16, bob.d, alice.U, sct) == b"hello bob"

    def test_ciphertext_length(self, paper16, keys16):
        alice, bob = keys16
        for size in (1, 31, 32, 33, 100):
            sct = hyh.signcrypt(paper16, alice.d, bob.U, bytes(size), rng_seed=size)
            assert len(sct.C) == size + 32

    def test_deterministic_given_r(self, paper16, keys16):
        alice, bob = keys16
        a = hyh.signcrypt(paper16, alice.d, bob.U, b"fixed", forced_r=1234)
        b = hyh.signcrypt(paper16, alice.d, bob.U, b"fixed", forced_r=1234)
        assert a == b

    def test_rejects_empty_message(self, paper16, keys16):
        alice, bob = keys16
        with pytest.raises(ValueError):
            hyh.signcrypt(paper16, alice.d, bob.U, b"", rng_seed=1)

    def test_paper_mode_accepts_off_curve_recipient(self, paper16, keys16):
        alice, _ = keys16
        off = (5, 6)
        assert not cv.is_on_curve(paper16.params, off)
        sct = hyh.signcrypt(paper16, alice.d, off, b"routed badly", rng_seed=3)
        assert len(sct.C) == len(b"routed badly") + 32

    def test_strict_mode_rejects_off_curve_recipient(self, strict16, keys16):
        alice, _ = keys16
        with pytest.raises(hyh.InvalidRecipientKey):
            hyh.signcrypt(strict16, alice.d, (5, 6), b"x", rng_seed=3)

    def test_strict_mode_rejects_identity_recipient(self, strict16, keys16):
        alice, _ = keys16
        with pytest.raises(hyh.InvalidRecipientKey):
            hyh.signcrypt(strict16, alice.d, None, b"x", rng_seed=3)

    def test_degenerate_recipient_exhausts_rng(self, paper16, keys16):
        # paper mode computes with U_B = O; every K is O, so sampling never
        # terminates and the resample cap fires
        alice, _ = keys16
        with pytest.raises(hyh.RngFailure):
            hyh.signcrypt(paper16, alice.d, None, b"x", rng_seed=3)

    def test_large_message_round_trip(self, paper16, keys16):
        alice, bob = keys16
        message = bytes(range(256)) * 16  # 4096 bytes
        sct = hyh.signcrypt(paper16, alice.d, bob.U, message, rng_seed=2)
        assert len(sct.C) == 4096 + 32
        assert hyh.unsigncrypt(paper16, bob.d, alice.U, sct) == message

    def test_tiny_group_resampling(self, f23_n7):
        # n = 7 forces frequent x_R = 0 mod n and s = 0 resamples
        config = SchemeConfig(params=f23_n7, mode=PAPER)
        alice = hyh.keypair_from_secret(config, 3)
        bob = hyh.keypair_from_secret(config, 5)
        for seed in range(10):
            sct = hyh.signcrypt(config, alice.d, bob.U, b"tiny", rng_seed=seed)
            assert hyh.unsigncrypt(config, bob.d, alice.U, sct) == b"tiny"


class TestAlgebraicIdentities:
    def test_session_key_agreement(self, paper16, keys16):
        alice, bob = keys16
        params = paper16.params
        for r in (2, 77, 4099):
            sct = hyh.signcrypt(paper16, alice.d, bob.U, b"m", forced_r=r)
            assert cv.scalar_mul(params, r, bob.U) == \
                cv.scalar_mul(params, bob.d, sct.R)

    def test_signature_recovery_identity(self, paper16, keys16):
        alice, bob = keys16
        n = paper16.params.n
        message = b"the recovery formula is the signing formula read backwards"
        for r in (3, 500, 9001):
            sct = hyh.signcrypt(paper16, alice.d, bob.U, message, forced_r=r)
            x_r = sct.R[0] % n
            h = hyh.hash_to_scalar(paper16, message)
            assert (r * sct.s - h) * mod_inverse(x_r, n) % n == alice.d


class TestUnsigncrypt:
    def test_tag_flip_rejected(self, paper16, keys16):
        alice, bob = keys16
        sct = hyh.signcrypt(paper16, alice.d, bob.U, b"payload", rng_seed=8)
        tampered = SigncryptedText(
            R=sct.R, C=sct.C[:-1] + bytes([sct.C[-1] ^ 1]), s=sct.s)
        assert hyh.unsigncrypt(paper16, bob.d, alice.U, tampered) is None

    def test_message_flip_rejected(self, paper16, keys16):
        alice, bob = keys16
        sct = hyh.signcrypt(paper16, alice.d, bob.U, b"payload", rng_seed=8)
        tampered = SigncryptedText(
            R=sct.R, C=bytes([sct.C[0] ^ 1]) + sct.C[1:], s=sct.s)
        assert hyh.unsigncrypt(paper16, bob.d, alice.U, tampered) is None

    def test_short_ciphertext_rejected(self, paper16, keys16):
        alice, bob = keys16
        assert hyh.unsigncrypt(paper16, bob.d, alice.U,
                               SigncryptedText(R=None, C=b"short", s=1)) is None

    def test_strict_rejects_identity_ephemeral_before_decrypting(
            self, strict16, keys16):
        alice, bob = keys16
        sct = SigncryptedText(R=None, C=bytes(40), s=1)
        trace = hyh.unsigncrypt_trace(strict16, bob.d, alice.U, sct)
        assert not trace.accepted and not trace.decrypt_attempted
        assert trace.rejected_at == "ephemeral_point"

    def test_strict_rejects_off_curve_ephemeral(self, strict16, keys16):
        alice, bob = keys16
        sct = SigncryptedText(R=(5, 6), C=bytes(40), s=1)
        trace = hyh.unsigncrypt_trace(strict16, bob.d, alice.U, sct)
        assert trace.rejected_at == "ephemeral_point"

    def test_strict_rejects_small_order_ephemeral(self, strict16, keys16):
        alice, bob = keys16
        params = strict16.params
        group_order = params.h * params.n
        W = cv.find_point_of_order(params, 2, group_order, rng_seed=4)
        assert cv.is_on_curve(params, W)
        sct = SigncryptedText(R=W, C=bytes(40), s=1)
        trace = hyh.unsigncrypt_trace(strict16, bob.d, alice.U, sct)
        assert trace.rejected_at == "ephemeral_point"

    def test_paper_mode_decrypts_identity_ephemeral(self, paper16, keys16):
        alice, bob = keys16
        body = b"visible through the zero keystream"
        sct = SigncryptedText(R=None, C=body + bytes(32), s=1)
        trace = hyh.unsigncrypt_trace(paper16, bob.d, alice.U, sct)
        assert trace.decrypt_attempted
        assert trace.session_key_x == 0
        assert trace.message_region == body


class TestPublicVerify:
    def test_honest_triple_verifies(self, paper16, keys16):
        alice, bob = keys16
        m = b"publicly verifiable"
        sct = hyh.signcrypt(paper16, alice.d, bob.U, m, rng_seed=11)
        assert hyh.public_verify(paper16, alice.U, m, sct.R, sct.s)

    def test_wrong_message_fails(self, paper16, keys16):
        alice, bob = keys16
        sct = hyh.signcrypt(paper16, alice.d, bob.U, b"original", rng_seed=11)
        assert not hyh.public_verify(paper16, alice.U, b"other", sct.R, sct.s)

    def test_shifted_signature_fails(self, paper16, keys16):
        alice, bob = keys16
        m = b"original"
        sct = hyh.signcrypt(paper16, alice.d, bob.U, m, rng_seed=11)
        assert not hyh.public_verify(paper16, alice.U, m, sct.R,
                                     (sct.s + 1) % paper16.params.n)


class TestWireFormat:
    def test_round_trip(self, paper16, keys16):
        alice, bob = keys16
        sct = hyh.signcrypt(paper16, alice.d, bob.U, b"serialize me", rng_seed=13)
        obj = hyh.sct_to_dict(sct)
        assert set(obj) == {"Rx", "Ry", "C", "s"}
        assert hyh.sct_from_dict(obj) == sct

    def test_identity_point_encoding(self):
        sct = SigncryptedText(R=None, C=bytes(33), s=5)
        obj = hyh.sct_to_dict(sct)
        assert obj["Ry"] == "inf"
        assert hyh.sct_from_dict(obj).R is None


@settings(max_examples=50, deadline=None)
@given(data=st.data(), message=st.binary(min_size=1, max_size=512))
def test_round_trip_property(data, message):
    params = fixtures.load(fixtures.TOY16)
    mode = data.draw(st.sampled_from([PAPER, STRICT]))
    config = SchemeConfig(params=params, mode=mode)
    seed = data.draw(st.integers(min_value=0, max_value=2**32))
    rng = random.Random(seed)
    alice = hyh.keypair_from_secret(config, rng.randrange(1, params.n))
    bob = hyh.keypair_from_secret(config, rng.randrange(1, params.n))
    sct = hyh.signcrypt(config, alice.d, bob.U, message, rng_seed=rng)
    assert hyh.unsigncrypt(config, bob.d, alice.U, sct) == message
