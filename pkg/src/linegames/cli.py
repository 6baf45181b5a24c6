"""Command line entry points: run | verify | play | serve.

Exit codes: 0 clean, 2 strategy fault, 3 configuration or parse error;
``verify`` uses 1 for an invalid certificate.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import certificates as certs
from .alice_strategies import PerfectCantorAlice, TargetAlice
from .banach_mazur import build_nested_core_certificate
from .config import RunConfig, build_alice, build_bob, build_domain, build_payoff, load_config
from .errors import ConfigError, LineGamesError, StrategyFault
from .game_engine import Transcript, play_truncated, survival_status
from .numeric_order import format_ext
from .service import GameSession, IllegalHumanMove, serve_forever

EXIT_OK = 0
EXIT_INVALID_CERT = 1
EXIT_STRATEGY_FAULT = 2
EXIT_CONFIG = 3


def _collect_certificates(cfg: RunConfig, alice, payoff, tr: Transcript) -> list:
    """Everything the run can honestly certify from its own transcript."""
    out: list = []
    if tr.rounds() > 0:
        a, b = tr.round_bounds(tr.rounds() - 1)
        out.append(certs.BracketCertificate(lo=Fraction(a), hi=Fraction(b), round_index=tr.rounds() - 1))
    if cfg.game == "baker" and payoff.can_enumerate:
        name = payoff.name
        for n in range(min(tr.rounds(), cfg.rounds)):
            w = payoff.enumerate(n)
            if w is None:
                break
            report = survival_status(tr, w)
            if report.eliminated_at is not None and report.eliminated_at <= n:
                out.append(certs.EliminationCertificate(value=w, index=n, enumeration=name))
    if isinstance(alice, TargetAlice):
        report = survival_status(tr, alice.x)
        if report.certificate is not None:
            out.append(report.certificate)
    if isinstance(alice, PerfectCantorAlice) and tr.rounds() > 0:
        out.append(build_nested_core_certificate(alice, tr))
    return out


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.rounds is not None:
            cfg.rounds = args.rounds
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        domain = build_domain(cfg.domain_name)
        payoff = build_payoff(cfg.payoff)
        bob = build_bob(cfg.bob, domain, payoff, cfg.seed)
        alice = build_alice(cfg.alice, domain, payoff, bob, cfg.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    meta = {"alice": cfg.alice, "bob": cfg.bob, "payoff": cfg.payoff}
    try:
        tr = play_truncated(alice, bob, cfg.rounds, domain, seed=cfg.seed, game=cfg.game, meta=meta)
        certificates = _collect_certificates(cfg, alice, payoff, tr)
    except StrategyFault as exc:
        print(f"strategy fault: {exc}", file=sys.stderr)
        return EXIT_STRATEGY_FAULT

    out_dir = Path(cfg.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    transcript_path = out_dir / "transcript.jsonl"
    certificate_path = out_dir / "certificates.json"
    transcript_path.write_text(tr.to_jsonl(), encoding="utf-8")
    certificate_path.write_text(certs.dump_certificates(certificates) + "\n", encoding="utf-8")
    print(f"wrote {transcript_path} and {certificate_path} ({len(certificates)} certificates, status {tr.status})")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        tr = Transcript.from_jsonl(Path(args.transcript).read_text(encoding="utf-8"))
        certificates = certs.load_certificates(Path(args.certificates).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError, LineGamesError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    failures = 0
    for i, cert in enumerate(certificates):
        ok, reason = certs.validate(cert, tr)
        label = type(cert).__name__
        print(f"[{i}] {label}: {'ok' if ok else 'INVALID: ' + reason}")
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_INVALID_CERT


def cmd_play(args) -> int:
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        config = {
            "game": cfg.game,
            "domain": cfg.domain_name,
            "payoff": cfg.payoff,
            "alice": cfg.alice,
            "bob": cfg.bob,
            "rounds": args.rounds if args.rounds is not None else cfg.rounds,
            "seed": args.seed if args.seed is not None else cfg.seed,
            "humanSeat": args.seat,
        }
        session = GameSession(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"you are {args.seat}; moves are rationals like 2/3 (or decimals); 'q' quits")
    while True:
        view = session.view()
        print(f"round {view['round']}/{view['rounds']}  bounds ({view['bounds']['lo']}, {view['bounds']['hi']})  status {view['status']}")
        if view["status"] != "ongoing":
            print("game over")
            return EXIT_OK
        try:
            text = input("your move> ").strip()
        except EOFError:
            return EXIT_OK
        if text.lower() in ("q", "quit", "exit"):
            return EXIT_OK
        try:
            session.submit(text)
        except IllegalHumanMove as exc:
            print(f"illegal: legal interval is ({exc.lo}, {exc.hi})")
        except ConfigError as exc:
            print(f"rejected: {exc}")


def cmd_serve(args) -> int:
    try:
        serve_forever(args.port, ttl_seconds=args.ttl)
    except OSError as exc:
        print(f"cannot serve: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="linegames", description="Truncated infinite games on the rational line")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="play a configured game and write transcript + certificates")
    p_run.add_argument("--config", required=True, help="path to a JSON run config")
    p_run.add_argument("--rounds", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.set_defaults(fn=cmd_run)

    p_verify = sub.add_parser("verify", help="re-check certificates against a transcript's move log only")
    p_verify.add_argument("transcript")
    p_verify.add_argument("certificates")
    p_verify.set_defaults(fn=cmd_verify)

    p_play = sub.add_parser("play", help="interactive terminal game against a machine strategy")
    p_play.add_argument("--config", default=None)
    p_play.add_argument("--seat", choices=("A", "B"), default="A")
    p_play.add_argument("--rounds", type=int, default=None)
    p_play.add_argument("--seed", type=int, default=None)
    p_play.set_defaults(fn=cmd_play)

    p_serve = sub.add_parser("serve", help="host the HTTP/JSON game service")
    p_serve.add_argument("--port", type=int, default=8645)
    p_serve.add_argument("--ttl", type=float, default=3600.0, help="idle session lifetime in seconds")
    p_serve.set_defaults(fn=cmd_serve)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
