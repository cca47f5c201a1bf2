import argparse

from toricdeform.config import initialize_logging


def create_cli():
    parser = argparse.ArgumentParser(
        prog="toricdeform",
        description="Graded deformation and obstruction spaces of complete simplicial toric varieties",
    )
    parser.add_argument("--log-level", default=None, help="overrides TORICDEFORM_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Import command groups & register them
    from toricdeform.commands import register as register_commands
    from toricdeform.commands_cup import register as register_cup
    from toricdeform.commands_oracle import register as register_oracle

    register_commands(subparsers)
    register_cup(subparsers)
    register_oracle(subparsers)

    return parser


def run(argv=None):
    """Parse arguments and dispatch; returns the exit code"""
    args = create_cli().parse_args(argv)
    if args.log_level:
        initialize_logging(args.log_level)
    return args.handler(args)
