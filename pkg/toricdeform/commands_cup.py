import logging
from itertools import combinations_with_replacement

from toricdeform.commands import (
    EXIT_OK,
    add_box_argument,
    add_fan_argument,
    check_box,
    load_supported,
    read_ray_degree,
)
from toricdeform.errors import ContractError
from toricdeform.reporting import emit_json, success_envelope
from toricdeform.services.cup_product import TARGET, cup_cocycle, cup_degree_rule, obstruction_scan
from toricdeform.services.cycle_certificate import certificates
from toricdeform.services.graded_tangent import component_cochain, compute_table, reduced_basis
from toricdeform.validators import handle_command_exception, validate_component

# Setup logging
logger = logging.getLogger(__name__)

EXIT_OBSTRUCTED = 1


def _first_order_class(fan, ray, u, component_text, flag):
    """f(Z) for an explicit component, else the first reduced basis class"""
    error = validate_component(component_text, flag)
    if error:
        raise ContractError(error)
    if component_text is not None:
        component = tuple(sorted(int(x) for x in component_text.split(",")))
        return component_cochain(fan, ray, u, component)
    basis = reduced_basis(fan, ray, u)
    if not basis:
        raise ContractError(f"no first-order class at ray {ray}, u={list(u)}")
    return basis[0]


@handle_command_exception
def run_cup(args):
    fan, fan_hash = load_supported(args.fan)
    ray, u = read_ray_degree(args, fan)
    ray2, u2 = read_ray_degree(args, fan, "ray2", "deg2")
    first = _first_order_class(fan, ray, u, args.comp, "--comp")
    second = _first_order_class(fan, ray2, u2, args.comp2, "--comp2")
    report = cup_cocycle(fan, first, second)
    emit_json(success_envelope("cup", fan_hash, report=report.to_dict()))
    return EXIT_OK


@handle_command_exception
def run_obstructed(args):
    check_box(args)
    fan, fan_hash = load_supported(args.fan)
    reports = obstruction_scan(fan, box=args.degree_box)
    targets = sorted({(r.selection.target_ray, r.selection.target_u) for r in reports})
    verdict = "obstructed cup product found" if reports else "no obstruction found"
    emit_json(success_envelope(
        "obstructed", fan_hash,
        verdict=verdict,
        obstructed=bool(reports),
        certified_exhaustive=args.degree_box is None,
        targets=[{"ray": t, "u": list(w)} for t, w in targets],
        reports=[r.to_dict() for r in reports],
    ))
    return EXIT_OBSTRUCTED if reports else EXIT_OK


@handle_command_exception
def run_certificate(args):
    fan, fan_hash = load_supported(args.fan)
    table = compute_table(fan)
    found = []
    for e1, e2 in combinations_with_replacement(table.h1_entries(), 2):
        if cup_degree_rule(fan, e1.ray, e1.u, e2.ray, e2.u).kind != TARGET:
            continue
        found.extend(certificates(fan, e1.ray, e1.u, e2.ray, e2.u))
    emit_json(success_envelope(
        "certificate", fan_hash,
        certificates=[c.to_dict(fan) for c in found],
    ))
    return EXIT_OBSTRUCTED if found else EXIT_OK


def register(subparsers):
    """Cup product and obstruction commands"""
    parser = subparsers.add_parser("cup", help="cup product of two first-order classes")
    add_fan_argument(parser)
    parser.add_argument("--ray", type=int, required=True)
    parser.add_argument("--deg", required=True, help="degree as a,b,c (use --deg=-1,0,0)")
    parser.add_argument("--ray2", type=int, required=True)
    parser.add_argument("--deg2", required=True)
    parser.add_argument("--comp", default=None, help="component of Gamma as ray indices")
    parser.add_argument("--comp2", default=None)
    parser.set_defaults(handler=run_cup)

    parser = subparsers.add_parser("obstructed", help="exit 1 iff a non-vanishing cup product exists")
    add_fan_argument(parser)
    add_box_argument(parser)
    parser.set_defaults(handler=run_obstructed)

    parser = subparsers.add_parser("certificate", help="Sigma-reduced cycle certificates")
    add_fan_argument(parser)
    parser.set_defaults(handler=run_certificate)
