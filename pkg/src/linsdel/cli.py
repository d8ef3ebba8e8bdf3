#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line front end.

    linsdel build --config cfg.json --out code.json
    linsdel encode --code code.json --message msg.json --out word.json
    linsdel corrupt --code code.json --word word.json --strategy random \\
        --budget 3 --seed 1 --out received.json --log ops.jsonl
    linsdel replay --word word.json --log ops.jsonl --out received.json
    linsdel decode --code code.json --word received.json --out decoded.json
    linsdel certify-inner --inner inner.json --out certificate.json
    linsdel sync-gen --n 32 --epsilon 0.5 --alphabet 8 --out sync.json
    linsdel experiment --config cfg.json --out results.csv

@author: linsdel developers
"""
import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

from tqdm import tqdm  # type: ignore

from linsdel import (
    CSV_COLUMNS, CSV_SCHEMA_VERSION, EXIT_GUARANTEE_VIOLATION, EXIT_OK,
    EXIT_USAGE, __version__
)
from linsdel.binaryinsdel import (
    EXHAUSTIVE, GREEDY, SAMPLED, SEARCH_STRATEGIES, check_property1,
    check_property2, inner_search
)
from linsdel.channel import (
    AdversaryScript, FailureTranscript, STRATEGIES, code_params, corrupt,
    replay, trial
)
from linsdel.config import (
    ExperimentConfig, build_codec, load_config, resolve_script
)
from linsdel.exceptions import DecodingFailure, LinsdelError
from linsdel.loaders import (
    check_family, load_code, load_inner, load_message, load_op_log,
    load_word, read_jsonl, save_code, save_inner, save_message, save_op_log,
    save_sync, save_word, write_json
)
from linsdel.syncstring import generate_sync
from linsdel.utils import Stopwatch, spawn_seeds

logger = logging.getLogger(__name__)


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def cmd_build(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    code = build_codec(config, progress=args.progress)
    save_code(args.out, code)
    if args.inner_out is not None and hasattr(code, 'inner'):
        save_inner(args.inner_out, code.inner)
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    msg = load_message(args.message, code)
    save_word(args.out, code.family, code.encode(msg))
    return EXIT_OK


def cmd_corrupt(args: argparse.Namespace) -> int:
    family, word = load_word(args.word)
    params: Dict[str, Any] = {}
    forge = None
    if args.code is not None:
        code = load_code(args.code)
        check_family(code, family, args.word)
        params.update(code_params(args.strategy, code))
        forge = code.forge_symbol
    if args.params is not None:
        params.update(json.loads(args.params))
    script = AdversaryScript(args.strategy, args.budget, args.seed, params)
    res = corrupt(word, script, forge)
    save_word(args.out, family, res.word)
    if args.log is not None:
        save_op_log(args.log, res.op_log)
    logger.info(
        "%d operations applied%s", res.ops_used,
        " (degraded to random)" if res.degraded else ""
    )
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    code = load_code(args.code) if args.code is not None else None
    if args.transcript is not None:
        if code is None:
            logger.error("--transcript needs the --code it was recorded with")
            return EXIT_USAGE
        items = read_jsonl(args.transcript)
        if not 0 <= args.index < len(items):
            logger.error("%s holds %d transcripts, no index %d",
                         args.transcript, len(items), args.index)
            return EXIT_USAGE
        item = FailureTranscript.from_dict(items[args.index])
        family, word, ops = code.family, code.encode(item.message), item.op_log
    elif args.word is not None and args.log is not None:
        family, word = load_word(args.word)
        if code is not None:
            check_family(code, family, args.word)
        ops = load_op_log(args.log)
    else:
        logger.error("either --transcript or both --word and --log are "
                     "required")
        return EXIT_USAGE
    received = replay(word, ops)
    save_word(args.out, family, received)
    logger.info("%d logged operations replayed", len(ops))
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    family, word = load_word(args.word)
    check_family(code, family, args.word)
    try:
        msg = code.decode(word)
    except DecodingFailure as exc:
        logger.error("decoding failed: %s", exc.reason)
        return EXIT_USAGE
    save_message(args.out, msg, code)
    return EXIT_OK


def cmd_certify_inner(args: argparse.Namespace) -> int:
    if args.inner is not None:
        inner = load_inner(args.inner)
    else:
        if None in (args.m, args.k_in, args.delta_in, args.rho):
            logger.error("either --inner or --m, --k-in, --delta-in and "
                         "--rho are required")
            return EXIT_USAGE
        inner = inner_search(
            args.m, args.k_in, args.delta_in, args.rho, seed=args.seed,
            verify_mode=args.mode, budget=args.search_budget,
            samples=args.samples, workers=args.workers,
            progress=args.progress, strategy=args.strategy
        )
    p2 = check_property2(inner)
    p1 = check_property1(
        inner, args.mode, samples=args.samples, seed=args.seed,
        workers=args.workers, progress=args.progress
    )
    inner.certification = {
        'property1': p1.mode if p1.ok else 'failed',
        'property2': EXHAUSTIVE if p2.ok else 'failed',
    }
    write_json(args.out, {
        'inner': inner.to_dict(),
        'window': inner.window,
        'slack': inner.slack,
        'property1': p1.to_dict(),
        'property2': p2.to_dict(),
    })
    if args.inner_out is not None:
        save_inner(args.inner_out, inner)
    if not (p1.ok and p2.ok):
        logger.error("inner code certification failed")
        return EXIT_GUARANTEE_VIOLATION
    return EXIT_OK


def cmd_sync_gen(args: argparse.Namespace) -> int:
    sync = generate_sync(
        args.n, args.epsilon, args.alphabet, args.seed, args.budget
    )
    save_sync(args.out, sync)
    return EXIT_OK


def run_point(
    data: Dict[str, Any],
    base_dir: str,
    seed: int,
    timing: bool = True,
    show_progress: bool = False
) -> Tuple[Dict[str, str], bool, List[dict]]:
    """
    Build the code of one experiment point and run its trials.

    :return: The CSV row, whether a within-budget failure happened and the
        failure transcripts.
    """
    config = ExperimentConfig.from_dict(data, base_dir)
    code = build_codec(config)
    code_seed, adv_seed = spawn_seeds(seed, 2)
    script = resolve_script(config, code, adv_seed)

    with tqdm(total=config.trials, disable=not show_progress,
              desc=f"{config.family} n={config.n}") as bar:
        with Stopwatch() as watch:
            report = trial(code, script, config.trials, code_seed,
                           progress=bar.update)

    row = {
        'family': config.family,
        'n': str(config.n),
        'delta': str(config.delta),
        'budget': str(script.budget),
        'trials': str(report.trials),
        'success_rate': f"{report.success_rate:.6f}",
        'rate': str(code.rate),
        'wall_ms': f"{watch.elapsed_ms:.3f}" if timing else '',
    }
    return row, report.guarantee_violated, [
        f.to_dict() for f in report.failures
    ]


def write_csv(file_name: str, rows: List[Dict[str, str]]) -> None:
    with open(file_name, 'w', newline='') as f:
        f.write(f"# linsdel experiment schema {CSV_SCHEMA_VERSION}\n")
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS,
                                lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def cmd_experiment(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    workers = args.workers if args.workers is not None else config.workers
    points = config.points()
    seeds = config.point_seeds()
    jobs = [
        (p.to_dict(), p.base_dir, s, not args.no_timing)
        for p, s in zip(points, seeds)
    ]

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_point, {**data, 'workers': 1}, *rest)
                for data, *rest in jobs
            ]
            results = [
                fut.result()
                for fut in tqdm(futures, disable=not args.progress,
                                desc="experiment")
            ]
    else:
        results = [run_point(*job, show_progress=args.progress)
                   for job in jobs]

    write_csv(args.out, [row for row, _, _ in results])
    if args.failures is not None:
        with open(args.failures, 'w') as f:
            for _, _, failures in results:
                for item in failures:
                    f.write(json.dumps(item) + '\n')

    violations = [row for row, bad, _ in results if bad]
    for row in violations:
        logger.error(
            "within-budget decoding failure: family=%s n=%s budget=%s "
            "success_rate=%s", row['family'], row['n'], row['budget'],
            row['success_rate']
        )
    return EXIT_GUARANTEE_VIOLATION if violations else EXIT_OK


class _Parser(argparse.ArgumentParser):
    """Argument parser exiting with the usage status on errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='linsdel',
        description="Linear insertion/deletion codes and an adversarial "
                    "channel harness."
    )
    parser.add_argument(
        '--version', action='version', version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help="Increase the logging verbosity (-v info, -vv debug)."
    )
    parser.add_argument(
        '--progress', action='store_true',
        help="Show progress bars."
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', help="Build and serialize a code instance.")
    p.add_argument('--config', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--inner-out', default=None,
                   help="Also write the inner code (binary family).")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser('encode', help="Encode a message file.")
    p.add_argument('--code', required=True)
    p.add_argument('--message', required=True)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser('corrupt', help="Corrupt a codeword file.")
    p.add_argument('--word', required=True)
    p.add_argument('--code', default=None,
                   help="Code instance used for forged insertions and "
                        "buffer geometry.")
    p.add_argument('--strategy', choices=STRATEGIES, default='random')
    p.add_argument('--budget', type=int, required=True)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--params', default=None,
                   help="Strategy parameters as a JSON object.")
    p.add_argument('--out', required=True)
    p.add_argument('--log', default=None,
                   help="Write the operation log (JSON lines).")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser('replay',
                       help="Re-apply a logged corruption or a failed trial.")
    p.add_argument('--code', default=None)
    p.add_argument('--word', default=None)
    p.add_argument('--log', default=None,
                   help="Operation log written by corrupt --log.")
    p.add_argument('--transcript', default=None,
                   help="Failure transcripts written by experiment --failures.")
    p.add_argument('--index', type=int, default=0,
                   help="Which transcript of the file to replay.")
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser('decode', help="Decode a received word file.")
    p.add_argument('--code', required=True)
    p.add_argument('--word', required=True)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser('certify-inner',
                       help="Check (or search and check) an inner code.")
    p.add_argument('--inner', default=None)
    p.add_argument('--m', type=int, default=None)
    p.add_argument('--k-in', type=int, default=None)
    p.add_argument('--delta-in', default=None)
    p.add_argument('--rho', default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--mode', choices=(EXHAUSTIVE, SAMPLED),
                   default=EXHAUSTIVE)
    p.add_argument('--samples', type=int, default=200)
    p.add_argument('--search-budget', type=int, default=50)
    p.add_argument('--strategy', choices=SEARCH_STRATEGIES, default=GREEDY,
                   help="How candidate generator matrices are drawn.")
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--out', required=True)
    p.add_argument('--inner-out', default=None,
                   help="Also write the certified inner code.")
    p.set_defaults(func=cmd_certify_inner)

    p = sub.add_parser('sync-gen', help="Generate a synchronization string.")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--epsilon', required=True)
    p.add_argument('--alphabet', type=int, required=True)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--budget', type=int, default=2000)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_sync_gen)

    p = sub.add_parser('experiment', help="Run an experiment sweep.")
    p.add_argument('--config', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--failures', default=None,
                   help="Write the failure transcripts (JSON lines).")
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--no-timing', action='store_true',
                   help="Leave wall_ms empty for byte-identical output.")
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (LinsdelError, OSError, json.JSONDecodeError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
