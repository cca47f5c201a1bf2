import logging

from toricdeform.errors import ContractError
from toricdeform.reporting import emit_json, emit_tsv, format_vector, success_envelope
from toricdeform.services import support_complex
from toricdeform.services.degree_scan import degree_table
from toricdeform.services.fan_core import ray_label, require_supported, validate
from toricdeform.services.fan_io import load_fan
from toricdeform.services.graded_tangent import GradedTable, compute_table
from toricdeform.validators import (
    first_error,
    handle_command_exception,
    parse_degree,
    validate_degree_string,
    validate_positive,
    validate_ray_index,
)

# Setup logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1


def load_supported(path):
    """Load a fan file and require a complete simplicial fan"""
    fan, fan_hash = load_fan(path)
    return require_supported(fan), fan_hash


def add_fan_argument(parser):
    parser.add_argument("fan", help="fan JSON file")


def add_format_argument(parser):
    parser.add_argument("--format", choices=("json", "tsv"), default="json")


def add_box_argument(parser):
    parser.add_argument(
        "--degree-box", type=int, default=None, metavar="B",
        help="scan all degrees with |u_i| <= B instead of the certified face scan",
    )


def check_box(args):
    error = validate_positive(args.degree_box, "--degree-box")
    if error:
        raise ContractError(error)


def read_ray_degree(args, fan, ray_attr="ray", deg_attr="deg"):
    ray, deg = getattr(args, ray_attr), getattr(args, deg_attr)
    error = first_error(
        validate_ray_index(ray, fan, f"--{ray_attr.replace('_', '-')}"),
        validate_degree_string(deg, fan.rank, f"--{deg_attr}"),
    )
    if error:
        raise ContractError(error)
    return ray, parse_degree(deg)


@handle_command_exception
def run_validate(args):
    fan, fan_hash = load_fan(args.fan)
    report = validate(fan)
    emit_json(success_envelope("validate", fan_hash, accepted=report.accepted, **report.to_dict()))
    return EXIT_OK if report.accepted else EXIT_REJECTED


def _emit_table(args, command, attribute, entries_of):
    check_box(args)
    fan, fan_hash = load_supported(args.fan)
    table = compute_table(fan, box=args.degree_box)
    entries = entries_of(table)
    total = sum(getattr(e, attribute) for e in entries)
    if args.format == "tsv":
        emit_tsv(
            ("ray", "u", "dim"),
            [(e.ray, format_vector(e.u), getattr(e, attribute)) for e in entries],
        )
    else:
        emit_json(success_envelope(
            command, fan_hash,
            total=total,
            certified_exhaustive=table.certified_exhaustive,
            entries=[dict(e.to_dict(), dim=getattr(e, attribute)) for e in entries],
        ))
    return EXIT_OK


@handle_command_exception
def run_t1(args):
    return _emit_table(args, "t1", "h1_contrib", GradedTable.h1_entries)


@handle_command_exception
def run_t2(args):
    return _emit_table(args, "t2", "h2_contrib", GradedTable.h2_entries)


@handle_command_exception
def run_degrees(args):
    check_box(args)
    fan, fan_hash = load_supported(args.fan)
    candidates = degree_table(fan, box=args.degree_box)
    if args.format == "tsv":
        emit_tsv(
            ("ray", "u", "face"),
            [(c.ray, format_vector(c.u), c.face_id) for c in candidates],
        )
    else:
        emit_json(success_envelope(
            "degrees", fan_hash,
            certified_exhaustive=args.degree_box is None,
            degrees=[
                {"ray": c.ray, "ray_label": ray_label(c.ray), "u": list(c.u), "face": c.face_id}
                for c in candidates
            ],
        ))
    return EXIT_OK


@handle_command_exception
def run_complex(args):
    fan, fan_hash = load_supported(args.fan)
    ray, u = read_ray_degree(args, fan)
    complex = support_complex.build(fan, ray, u)
    h0, h1 = support_complex.reduced_cohomology_dims(complex)
    emit_json(success_envelope(
        "complex", fan_hash,
        complex=support_complex.dump(complex),
        reduced_h0=h0,
        h1=h1,
    ))
    return EXIT_OK


def register(subparsers):
    """Fan, table and complex commands"""
    parser = subparsers.add_parser("validate", help="check simplicial, smooth and complete flags")
    add_fan_argument(parser)
    parser.set_defaults(handler=run_validate)

    for name, handler, what in (
        ("t1", run_t1, "graded dimensions of H^1(X, T_X)"),
        ("t2", run_t2, "graded dimensions of H^2(X, T_X)"),
    ):
        parser = subparsers.add_parser(name, help=what)
        add_fan_argument(parser)
        add_format_argument(parser)
        add_box_argument(parser)
        parser.set_defaults(handler=handler)

    parser = subparsers.add_parser("degrees", help="candidate degrees per ray")
    add_fan_argument(parser)
    add_format_argument(parser)
    add_box_argument(parser)
    parser.set_defaults(handler=run_degrees)

    parser = subparsers.add_parser("complex", help="dump the complex V for one ray and degree")
    add_fan_argument(parser)
    parser.add_argument("--ray", type=int, required=True)
    parser.add_argument("--deg", required=True, help="degree as a,b,c (use --deg=-1,0,0)")
    parser.set_defaults(handler=run_complex)
