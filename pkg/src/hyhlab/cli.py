"""Command-line front end.

Subcommands mirror the protocol (keygen / signcrypt / unsigncrypt / verify),
the validator (params validate), and the attack corpus (attack <name>,
demo all). Every run is reproducible: --seed pins all randomness and JSON
output is byte-identical for identical inputs.

Exit codes: 0 success / accepted, 1 failed check or rejected or attack
unsuccessful, 2 bad input or configuration.
"""

import argparse
import json
import random
import sys

from . import attacks, fixtures, hyh, paramcheck
from .attacks import AttackReport
from .curve import CurveParams
from .hyh import SchemeConfig, SigncryptedText

ATTACK_NAMES = (
    "ephemeral",
    "nonce-reuse",
    "invalid-curve",
    "uks",
    "forward-secrecy",
    "degenerate-key",
)


class CliError(Exception):
    """Input or configuration problem; maps to exit code 2."""


# --- attack staging ----------------------------------------------------------
#
# Each scenario stages its own victims from the seed and then runs the attack
# against them. In paper mode the staging includes the enabling misuse (a
# leaked or reused ephemeral scalar, a permissive recipient, a CA that skips
# proof of possession). In strict mode the same scenario is staged without
# the misuse and with every validation enabled, and the report records where
# the attack dies.

def _keys(config: SchemeConfig, rng: random.Random) -> tuple[hyh.KeyPair, hyh.KeyPair]:
    alice = hyh.keypair_from_secret(config, rng.randrange(1, config.params.n))
    bob = hyh.keypair_from_secret(config, rng.randrange(1, config.params.n))
    return alice, bob


def scenario_ephemeral(config: SchemeConfig, seed: int) -> AttackReport:
    rng = random.Random(seed)
    alice, bob = _keys(config, rng)
    message = b"wire transfer: move the usual amount"
    if config.mode == hyh.PAPER:
        # the victim pre-computed (r, R) pairs and the store leaked
        r = rng.randrange(1, config.params.n)
        sct = hyh.signcrypt(config, alice.d, bob.U, message, forced_r=r)
        report = attacks.recover_sender_key(config, alice.U, bob.U, sct, r)
        report.log("staging", leaked_ephemeral=True)
        return report
    sct = hyh.signcrypt(config, alice.d, bob.U, message, rng_seed=rng)
    report = AttackReport("recover_sender_key", success=False)
    report.log("staging", leaked_ephemeral=False,
               note="no precomputed (r, R) store to steal from")
    wrong_r = rng.randrange(1, config.params.n)
    try:
        attacks.recover_sender_key(config, alice.U, bob.U, sct, wrong_r)
    except attacks.EphemeralMismatch as exc:
        report.log("blocked", reason=str(exc))
    return report


def scenario_nonce_reuse(config: SchemeConfig, seed: int) -> AttackReport:
    rng = random.Random(seed)
    alice, bob = _keys(config, rng)
    m1 = b"first message, padded to equal size."
    m2 = b"second message, same size as first!!!"[: len(m1)]
    report = AttackReport("nonce_reuse_recover", success=False)
    if config.mode == hyh.PAPER:
        r = rng.randrange(1, config.params.n)
        sct1 = hyh.signcrypt(config, alice.d, bob.U, m1, forced_r=r)
        sct2 = hyh.signcrypt(config, alice.d, bob.U, m2, forced_r=r)
        report.log("staging", shared_ephemeral=True, same_R=sct1.R == sct2.R)
    else:
        sct1 = hyh.signcrypt(config, alice.d, bob.U, m1, rng_seed=rng)
        sct2 = hyh.signcrypt(config, alice.d, bob.U, m2, rng_seed=rng)
        report.log("staging", shared_ephemeral=False, same_R=sct1.R == sct2.R)
    result = attacks.nonce_reuse_recover(sct1.C, sct2.C, m1)
    report.success = result.m2 == m2
    report.log("xor_recovery", recovered=result.m2.hex(), exact=report.success)
    if report.success:
        report.recovered_secrets = {"M2": result.m2.hex(),
                                    "tag_xor": result.tag_xor.hex()}
    else:
        report.log("blocked", reason="fresh ephemerals: keystreams differ")
    return report


def scenario_invalid_curve(config: SchemeConfig, seed: int) -> AttackReport:
    rng = random.Random(seed)
    _, bob = _keys(config, rng)
    oracle = attacks.make_confirmation_oracle(
        bob.d, config, b"delivery confirmed", query_budget=64)
    report = attacks.invalid_curve_attack(config, bob.U, oracle, rng_seed=seed)
    if not report.success and config.mode == hyh.STRICT:
        report.log("blocked", reason="recipient validates ephemeral points")
    return report


def scenario_uks(config: SchemeConfig, seed: int) -> AttackReport:
    rng = random.Random(seed)
    alice, bob = _keys(config, rng)
    return attacks.uks_scenario(
        config, alice, bob, "Mallory", b"quarterly figures attached",
        rng_seed=seed, strict_ca=config.mode == hyh.STRICT)


def scenario_forward_secrecy(config: SchemeConfig, seed: int) -> AttackReport:
    rng = random.Random(seed)
    alice, bob = _keys(config, rng)
    message = b"old traffic, recorded long ago"
    sct = hyh.signcrypt(config, alice.d, bob.U, message, rng_seed=rng)
    if config.mode == hyh.PAPER:
        # the long-term key later leaks; recorded traffic falls
        report = attacks.break_forward_secrecy(config, alice.d, bob.U, sct, message)
        report.log("staging", long_term_key_leaked=True)
        return report
    report = AttackReport("break_forward_secrecy", success=False)
    report.log("staging", long_term_key_leaked=False,
               note="long-term key stayed in protected storage")
    guess = rng.randrange(1, config.params.n)
    try:
        attacks.break_forward_secrecy(config, guess, bob.U, sct, message)
    except attacks.ConsistencyFailure as exc:
        report.log("blocked", reason=str(exc))
    return report


def scenario_degenerate_key(config: SchemeConfig, seed: int) -> AttackReport:
    if config.mode == hyh.PAPER:
        return attacks.degenerate_key_demo(config, rng_seed=seed)
    rng = random.Random(seed)
    alice, bob = _keys(config, rng)
    s = rng.randrange(1, config.params.n)
    message = b"weak key probe"
    tag = hyh.hash_bytes(config, message + hyh.encode_scalar(config, s))[:hyh.TAG_LEN]
    trace = hyh.unsigncrypt_trace(config, bob.d, alice.U,
                                  SigncryptedText(R=None, C=message + tag, s=s))
    report = AttackReport("degenerate_key_demo", success=trace.decrypt_attempted)
    report.log("strict_mode", decrypt_attempted=trace.decrypt_attempted,
               rejected_at=trace.rejected_at)
    if not trace.decrypt_attempted:
        report.log("blocked", reason="identity ephemeral point rejected")
    return report


SCENARIOS = {
    "ephemeral": scenario_ephemeral,
    "nonce-reuse": scenario_nonce_reuse,
    "invalid-curve": scenario_invalid_curve,
    "uks": scenario_uks,
    "forward-secrecy": scenario_forward_secrecy,
    "degenerate-key": scenario_degenerate_key,
}


def run_demo_all(params: CurveParams, seed: int, hash_name: str = "sha256") -> dict:
    """Every attack in both modes; the mode-duality summary table."""
    findings = []
    for name in ATTACK_NAMES:
        row = {"attack": name}
        for mode in (hyh.PAPER, hyh.STRICT):
            config = SchemeConfig(params=params, mode=mode, hash_name=hash_name)
            report = SCENARIOS[name](config, seed)
            row[f"{mode}_success"] = report.success
        findings.append(row)
    paper_total = sum(r["paper_success"] for r in findings)
    strict_total = sum(r["strict_success"] for r in findings)
    return {
        "findings": findings,
        "paper_successes": paper_total,
        "strict_successes": strict_total,
        "expected": {"paper_successes": len(ATTACK_NAMES), "strict_successes": 0},
    }


# --- input/output ------------------------------------------------------------

def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    if not isinstance(obj, dict):
        raise CliError(f"{path}: expected a JSON object")
    return obj


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(str(exc)) from None


def load_params(path: str | None) -> CurveParams:
    if path is None:
        return fixtures.load(fixtures.GOOD)
    try:
        return fixtures.params_from_dict(_read_json(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_private(path: str) -> int:
    obj = _read_json(path)
    try:
        return int(obj["d"], 16)
    except (KeyError, ValueError, TypeError):
        raise CliError(f"{path}: expected a private key file {{\"d\": hex}}") from None


def _load_public(path: str):
    obj = _read_json(path)
    try:
        return (int(obj["Ux"], 16), int(obj["Uy"], 16))
    except (KeyError, ValueError, TypeError):
        raise CliError(
            f"{path}: expected a public key file {{\"Ux\": hex, \"Uy\": hex}}"
        ) from None


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        rendered = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        rendered = "\n".join(text_lines) + "\n"
    sys.stdout.write(rendered)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)


# --- commands ----------------------------------------------------------------

def cmd_params_validate(args) -> int:
    params = load_params(args.params)
    report = paramcheck.validate_domain_params(params)
    lines = [f"{'check':24} result  detail"]
    for c in report.checks:
        lines.append(f"{c.name:24} {'pass' if c.passed else 'FAIL':6}  {c.detail}")
    lines.append(f"overall: {'pass' if report.overall else 'FAIL'}")
    _emit(args, report.to_dict(), lines)
    return 0 if report.overall else 1


def cmd_keygen(args) -> int:
    config = _config(args)
    keypair = hyh.gen(config, rng_seed=args.seed)
    pub = {"Ux": f"{keypair.U[0]:x}", "Uy": f"{keypair.U[1]:x}"}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"d": f"{keypair.d:x}"}, fh, indent=2, sort_keys=True)
        pub_path = args.pub_out or args.out + ".pub"
        with open(pub_path, "w") as fh:
            json.dump(pub, fh, indent=2, sort_keys=True)
    payload = {"d": f"{keypair.d:x}", **pub}
    _emit_no_out(args, payload,
                 [f"d  = {keypair.d:x}", f"Ux = {pub['Ux']}", f"Uy = {pub['Uy']}"])
    return 0


def _emit_no_out(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def cmd_signcrypt(args) -> int:
    config = _config(args)
    d_a = _load_private(args.key)
    u_b = _load_public(args.peer)
    message = _read_bytes(args.infile)
    forced_r = int(args.force_r, 16) if args.force_r else None
    sct = hyh.signcrypt(config, d_a, u_b, message,
                        rng_seed=args.seed, forced_r=forced_r)
    payload = hyh.sct_to_dict(sct)
    _emit(args, payload, [f"{k}: {v}" for k, v in payload.items()])
    return 0


def cmd_unsigncrypt(args) -> int:
    config = _config(args)
    d_b = _load_private(args.key)
    u_a = _load_public(args.peer)
    sct = _load_sct(args.infile)
    message = hyh.unsigncrypt(config, d_b, u_a, sct)
    if message is None:
        _emit(args, {"accepted": False}, ["rejected"])
        return 1
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(message)
        sys.stdout.write(json.dumps({"accepted": True, "out": args.out},
                                    sort_keys=True) + "\n")
    else:
        _emit_no_out(args, {"accepted": True, "message": message.hex()},
                     [message.hex()])
    return 0


def _load_sct(path: str) -> SigncryptedText:
    obj = _read_json(path)
    try:
        return hyh.sct_from_dict(obj)
    except (KeyError, ValueError) as exc:
        raise CliError(f"{path}: bad signcrypted text: {exc}") from None


def cmd_verify(args) -> int:
    config = _config(args)
    u_a = _load_public(args.peer)
    sct = _load_sct(args.infile)
    message = _read_bytes(args.message)
    ok = hyh.public_verify(config, u_a, message, sct.R, sct.s)
    _emit(args, {"valid": ok}, ["valid" if ok else "invalid"])
    return 0 if ok else 1


def cmd_attack(args) -> int:
    config = _config(args)
    if args.name == "ephemeral" and not args.self_stage:
        return _attack_ephemeral_from_files(args, config)
    if not args.self_stage:
        raise CliError(f"attack {args.name} requires --self-stage "
                       "(in-process victim staging)")
    report = SCENARIOS[args.name](config, args.seed)
    _emit_report(args, report)
    return 0 if report.success else 1


def _attack_ephemeral_from_files(args, config: SchemeConfig) -> int:
    if not (args.sct and args.r and args.sender_pub and args.recipient_pub):
        raise CliError("attack ephemeral needs --self-stage, or all of "
                       "--sct/--r/--sender-pub/--recipient-pub")
    sct = _load_sct(args.sct)
    try:
        report = attacks.recover_sender_key(
            config, _load_public(args.sender_pub), _load_public(args.recipient_pub),
            sct, int(args.r, 16))
    except attacks.EphemeralMismatch as exc:
        raise CliError(str(exc)) from None
    _emit_report(args, report)
    return 0 if report.success else 1


def _emit_report(args, report: AttackReport):
    lines = [f"attack:  {report.attack_name}",
             f"success: {report.success}",
             f"oracle queries: {report.oracle_queries}",
             f"wall time: {report.wall_time:.3f}s"]
    for k, v in report.recovered_secrets.items():
        lines.append(f"recovered {k} = {v}")
    for event in report.transcript:
        lines.append("  " + json.dumps(event, sort_keys=True))
    _emit(args, report.to_dict(), lines)


def cmd_demo_all(args) -> int:
    params = load_params(args.params)
    summary = run_demo_all(params, args.seed)
    lines = [f"{'attack':<18} paper    strict"]
    for row in summary["findings"]:
        lines.append(f"{row['attack']:<18} "
                     f"{'BROKEN' if row['paper_success'] else 'held':<8} "
                     f"{'BROKEN' if row['strict_success'] else 'held'}")
    lines.append(f"paper-mode attacks landed: {summary['paper_successes']}"
                 f"/{len(ATTACK_NAMES)}")
    lines.append(f"strict-mode attacks landed: {summary['strict_successes']}"
                 f"/{len(ATTACK_NAMES)}")
    _emit(args, summary, lines)
    ok = (summary["paper_successes"] == len(ATTACK_NAMES)
          and summary["strict_successes"] == 0)
    return 0 if ok else 1


def _config(args) -> SchemeConfig:
    return SchemeConfig(params=load_params(args.params), mode=args.mode,
                        hash_name=args.hash)


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyhlab",
        description="HYH signcryption lab: run the scheme, validate "
                    "parameters, and reproduce the attacks.",
    )
    parser.add_argument("--params", metavar="PATH",
                        help="curve parameter file (default: bundled good set)")
    parser.add_argument("--mode", choices=(hyh.PAPER, hyh.STRICT),
                        default=hyh.PAPER)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for all randomness (default 0)")
    parser.add_argument("--out", metavar="PATH", help="also write output here")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--hash", default="sha256", metavar="NAME",
                        help="hash algorithm (default sha256; digest must be "
                             ">= 32 bytes)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_params = sub.add_parser("params", help="parameter tooling")
    params_sub = p_params.add_subparsers(dest="subcommand", required=True)
    params_sub.add_parser("validate", help="run the nine-check validator")

    p_keygen = sub.add_parser("keygen", help="generate a key pair")
    p_keygen.add_argument("--pub-out", metavar="PATH",
                          help="public key file (default: <out>.pub)")

    p_sc = sub.add_parser("signcrypt")
    p_sc.add_argument("--key", required=True, help="sender private key file")
    p_sc.add_argument("--peer", required=True, help="recipient public key file")
    p_sc.add_argument("--in", dest="infile", required=True, help="message file")
    p_sc.add_argument("--force-r", metavar="HEX",
                      help="pin the ephemeral scalar (attack staging)")

    p_usc = sub.add_parser("unsigncrypt")
    p_usc.add_argument("--key", required=True, help="recipient private key file")
    p_usc.add_argument("--peer", required=True, help="sender public key file")
    p_usc.add_argument("--in", dest="infile", required=True,
                       help="signcrypted text file")

    p_ver = sub.add_parser("verify", help="public verification of (M, R, s)")
    p_ver.add_argument("--peer", required=True, help="sender public key file")
    p_ver.add_argument("--in", dest="infile", required=True,
                       help="signcrypted text file")
    p_ver.add_argument("--message", required=True, help="claimed plaintext file")

    p_atk = sub.add_parser("attack", help="run one attack scenario")
    p_atk.add_argument("name", choices=ATTACK_NAMES)
    p_atk.add_argument("--self-stage", action="store_true",
                       help="generate victims and honest traffic in-process")
    p_atk.add_argument("--sct", help="intercepted signcrypted text file")
    p_atk.add_argument("--r", metavar="HEX", help="leaked ephemeral scalar")
    p_atk.add_argument("--sender-pub", help="sender public key file")
    p_atk.add_argument("--recipient-pub", help="recipient public key file")

    p_demo = sub.add_parser("demo", help="run the whole attack corpus")
    demo_sub = p_demo.add_subparsers(dest="subcommand", required=True)
    demo_sub.add_parser("all", help="all attacks, both modes, one table")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "params":
            return cmd_params_validate(args)
        if args.command == "keygen":
            return cmd_keygen(args)
        if args.command == "signcrypt":
            return cmd_signcrypt(args)
        if args.command == "unsigncrypt":
            return cmd_unsigncrypt(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "attack":
            return cmd_attack(args)
        if args.command == "demo":
            return cmd_demo_all(args)
        raise CliError(f"unknown command {args.command}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (hyh.InvalidParams, hyh.InvalidRecipientKey, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
