import logging
from collections import Counter

import numpy as np

from toricdeform.commands import EXIT_OK, load_supported
from toricdeform.config import get_settings
from toricdeform.errors import ContractError
from toricdeform.reporting import emit_json, success_envelope
from toricdeform.services.agreement import run_suite
from toricdeform.services.fan_core import require_supported
from toricdeform.services.fan_generator import random_smooth_fan
from toricdeform.validators import first_error, handle_command_exception, validate_positive

# Setup logging
logger = logging.getLogger(__name__)

EXIT_DISAGREEMENT = 1


def summarize(name, rows):
    """Pass/fail counts per check, plus the failing instances"""
    passed = Counter(r.check for r in rows if r.passed)
    failed = Counter(r.check for r in rows if not r.passed)
    checks = sorted(set(passed) | set(failed))
    return {
        "fan": name,
        "checks": {c: {"passed": passed[c], "failed": failed[c]} for c in checks},
        "failures": [r.to_dict() for r in rows if not r.passed],
    }


@handle_command_exception
def run_oracle_check(args):
    settings = get_settings()
    error = first_error(
        validate_positive(args.random, "--random"),
        "--steps must not be negative" if args.steps < 0 else None,
    )
    if error:
        raise ContractError(error)
    if args.fan is None and args.random is None:
        args.random = settings.random_fans
    seed = settings.seed if args.seed is None else args.seed

    matrix = []
    fan_hash = None
    if args.fan is not None:
        fan, fan_hash = load_supported(args.fan)
        matrix.append(summarize(args.fan, run_suite(fan)))
    if args.random:
        rng = np.random.default_rng(seed)
        for i in range(args.random):
            rank = args.rank or int(rng.integers(2, 4))
            fan = require_supported(random_smooth_fan(rng, rank, args.steps))
            matrix.append(summarize(f"random[{i}] rank {rank}", run_suite(fan)))
            logger.info(f"Random fan {i}: {len(fan.rays)} rays checked")

    all_passed = all(not row["failures"] for row in matrix)
    emit_json(success_envelope(
        "oracle-check", fan_hash,
        seed=seed,
        all_passed=all_passed,
        matrix=matrix,
    ))
    return EXIT_OK if all_passed else EXIT_DISAGREEMENT


def register(subparsers):
    """Oracle agreement command"""
    parser = subparsers.add_parser("oracle-check", help="compare combinatorial and Cech routes")
    parser.add_argument("fan", nargs="?", default=None, help="fan JSON file")
    parser.add_argument("--random", type=int, default=None, metavar="N", help="also check N random fans")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--rank", type=int, choices=(2, 3), default=None)
    parser.add_argument("--steps", type=int, default=4, help="star subdivisions per random fan")
    parser.set_defaults(handler=run_oracle_check)
