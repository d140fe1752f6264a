#!/usr/bin/env python3
"""
Reasoning arena
Main entry point: serve the game service, run evaluation campaigns, analyse results, query the oracles
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import config

# Configure logging
logging.basicConfig(
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
)
logger = logging.getLogger(__name__)


def parse_seed_range(text: str) -> List[int]:
    """'1..50', '7' or '1,3,5'"""
    text = text.strip()
    if ".." in text:
        low, high = text.split("..", 1)
        return list(range(int(low), int(high) + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def parse_params(pairs: Optional[List[str]]) -> Dict[str, Any]:
    """k=v pairs into a difficulty dict; integer values where possible"""
    params: Dict[str, Any] = {}
    for pair in pairs or []:
        key, _, value = pair.partition("=")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            params[key.strip()] = value.strip()
    return params


def split_list(text: Optional[str]) -> List[str]:
    return [part.strip() for part in (text or "").split(",") if part.strip()]


def cmd_serve(args) -> int:
    from service import serve

    serve(host=args.host, port=args.port, max_sessions=args.max_sessions,
          idle_timeout=args.idle_timeout, output_dir=args.out)
    return 0


def cmd_eval(args) -> int:
    from agents import make_agent_factory
    from clients import HttpGameClient, InProcessGameClient, ModelEndpoint
    from games import REGISTRY
    from harness import CampaignConfig, CampaignConfigError, run_campaign

    if args.agent == "chat" and not args.model:
        logger.error("--model is required with the chat agent")
        return 2
    model = args.model or args.agent
    games = split_list(args.games) or list(REGISTRY)
    campaign = CampaignConfig(
        games=games,
        model=model,
        base_url=args.base_url,
        api_key_env=args.api_key_env,
        label=args.label,
        seeds=parse_seed_range(args.seeds),
        max_rounds=args.max_rounds,
        concurrency=args.concurrency,
        output_dir=args.out,
        resume=args.resume,
        paradigm_ban=tuple(split_list(args.ban)),
    )
    try:
        campaign.validate()
        endpoint = ModelEndpoint(args.base_url, model, args.api_key_env)
        factory = make_agent_factory(args.agent, endpoint)
    except (CampaignConfigError, ValueError) as e:
        logger.error(f"Invalid campaign: {e}")
        return 2
    client = HttpGameClient(args.service_url) if args.service_url else InProcessGameClient()
    result = run_campaign(campaign, factory, client)
    print(result.matrix.to_frame().to_string(index=False))
    if result.failures:
        logger.warning(f"{len(result.failures)} episodes errored")
    return 0


def cmd_analyze(args) -> int:
    import analysis
    from harness import load_checkpoint
    from scoring import ScoringError, load_score_matrix

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        if args.analysis == "lengthfit":
            records = [r.to_dict() for r in load_checkpoint(Path(args.input))]
            fits = analysis.run_length_fit(records, out)
            for name, fit in fits.items():
                print(f"{name}: score = {fit.a:.4f} * ln(length) + {fit.b:.4f} (r={fit.pearson_r:.3f}, n={fit.n})")
            return 0
        matrix = load_score_matrix(args.input, args.dims)
        if args.analysis == "leaderboard":
            report = analysis.run_leaderboard(matrix, out)
            print(report.to_frame().to_string(index=False, float_format=lambda v: f"{v:.3f}"))
        elif args.analysis == "stability":
            for model, (mean, std) in analysis.run_stability(matrix, out).items():
                print(f"{model}: mean={mean:.3f} std={std:.3f}")
        elif args.analysis == "pca":
            result = analysis.run_pca(matrix, out, clusters=args.clusters)
            print(f"explained variance: {', '.join(f'{v:.3f}' for v in result.explained_variance)}")
        elif args.analysis == "ablation":
            if not args.banned:
                logger.error("ablation needs --banned <scores.csv>")
                return 2
            delta = analysis.run_ablation(matrix, load_score_matrix(args.banned, args.dims), out)
            print(delta.to_string(index=False, float_format=lambda v: f"{v:+.3f}"))
    except (ScoringError, analysis.DegenerateInputError, analysis.FitError) as e:
        logger.error(f"Analysis failed: {e}")
        return 1
    logger.info(f"Analysis written to {out}")
    return 0


def cmd_oracle(args) -> int:
    import oracles
    from env_core import EnvError

    try:
        if args.action == "solve":
            solution = oracles.solve_instance(args.game, args.seed, parse_params(args.param) or None)
            print(json.dumps({"game": args.game, "seed": args.seed, "moves": len(solution),
                              "optimal": solution.optimal, "answer": solution.payload}, indent=2))
            return 0
        failures = oracles.check_solvable(args.game, parse_seed_range(args.seeds), parse_params(args.param) or None)
    except (oracles.OracleError, EnvError) as e:
        logger.error(f"Oracle failed: {e}")
        return 1
    for seed, reason in sorted(failures.items()):
        print(f"seed {seed}: {reason}")
    print(f"{args.game}: {len(failures)} unsolved seeds")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arena", description="Game environments for evaluating model reasoning")
    commands = parser.add_subparsers(dest="command", required=True)

    serve = commands.add_parser("serve", help="run the HTTP game service")
    serve.add_argument("--host", default=config.SERVICE_HOST)
    serve.add_argument("--port", type=int, default=config.SERVICE_PORT)
    serve.add_argument("--max-sessions", type=int, default=config.MAX_SESSIONS)
    serve.add_argument("--idle-timeout", type=int, default=config.IDLE_TIMEOUT_SECONDS)
    serve.add_argument("--out", default=config.OUTPUT_DIR)
    serve.set_defaults(handler=cmd_serve)

    evaluate = commands.add_parser("eval", help="run an evaluation campaign")
    evaluate.add_argument("--games", default="", help="comma-separated game names (default: all)")
    evaluate.add_argument("--model", default=None, help="model name sent to the chat endpoint (default: the agent name)")
    evaluate.add_argument("--label", default=None, help="row label in the score matrix (default: model)")
    evaluate.add_argument("--base-url", default=config.DEFAULT_BASE_URL)
    evaluate.add_argument("--api-key-env", default=config.DEFAULT_API_KEY_ENV)
    evaluate.add_argument("--seeds", default="1..50")
    evaluate.add_argument("--max-rounds", type=int, default=config.MULTI_EPOCH_ROUND_CAP)
    evaluate.add_argument("--concurrency", type=int, default=config.CONCURRENCY)
    evaluate.add_argument("--out", default=config.OUTPUT_DIR)
    evaluate.add_argument("--resume", action="store_true")
    evaluate.add_argument("--ban", default="", help="paradigms to forbid: code,math,algorithm,natural-language")
    evaluate.add_argument("--agent", default="chat", help="chat, oracle, random or always-stand")
    evaluate.add_argument("--service-url", default=config.SERVICE_URL, help="remote service (default: in-process)")
    evaluate.set_defaults(handler=cmd_eval)

    analyze = commands.add_parser("analyze", help="post-hoc analyses of campaign output")
    analyze.add_argument("analysis", choices=["leaderboard", "stability", "pca", "lengthfit", "ablation"])
    analyze.add_argument("--in", dest="input", required=True, help="scores.csv, or checkpoint.jsonl for lengthfit")
    analyze.add_argument("--dims", default=None, help="game,dimension sidecar CSV")
    analyze.add_argument("--banned", default=None, help="scores.csv of the paradigm-banned run")
    analyze.add_argument("--out", default=config.OUTPUT_DIR)
    analyze.add_argument("--clusters", type=int, default=0)
    analyze.set_defaults(handler=cmd_analyze)

    oracle = commands.add_parser("oracle", help="reference solutions")
    oracle.add_argument("action", choices=["solve", "check"])
    oracle.add_argument("--game", required=True)
    oracle.add_argument("--seed", type=int, default=1)
    oracle.add_argument("--seeds", default="1..50")
    oracle.add_argument("--param", action="append", help="difficulty parameter k=v (repeatable)")
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function to run the arena"""
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
