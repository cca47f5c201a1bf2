"""Cross-checks between the combinatorial route and the Cech oracle"""

import logging
from dataclasses import dataclass
from itertools import combinations

from toricdeform.services import cech_oracle, support_complex
from toricdeform.services.cup_product import TARGET, cup_cocycle, cup_degree_rule
from toricdeform.services.cycle_certificate import ComponentRef, find_reduced_cycles, pairing
from toricdeform.services.degree_scan import candidate_degrees
from toricdeform.services.fan_core import pairing as pairing_value, require_supported
from toricdeform.services.graded_tangent import component_cochain, compute_table, entry_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgreementRow:
    check: str
    instance: str
    passed: bool

    def to_dict(self):
        return {"check": self.check, "instance": self.instance, "passed": self.passed}


def dimension_rows(fan, degrees):
    """h1/h2 contributions against oracle H^1/H^2 for every (ray, u)"""
    rows = []
    for ray, u in degrees:
        entry = entry_for(fan, ray, u)
        complex = cech_oracle.build_divisor_complex(fan, ray, u, top=3)
        passed = entry.h1_contrib == complex.dim(1) and entry.h2_contrib == complex.dim(2)
        rows.append(AgreementRow(check="dimensions", instance=f"ray {ray} u={list(u)}", passed=passed))
    return rows


def off_slice_rows(fan):
    """H^1 and H^2 of O(D_rho) vanish in degrees with rho(u) != -1"""
    rows = []
    for ray in range(len(fan.rays)):
        samples = [tuple(0 for _ in range(fan.rank))]
        for i in range(fan.rank):
            for s in (1, -1):
                samples.append(tuple(s if j == i else 0 for j in range(fan.rank)))
        for u in samples:
            if pairing_value(fan, ray, u) == -1:
                continue
            complex = cech_oracle.build_divisor_complex(fan, ray, u, top=3)
            passed = complex.dim(1) == 0 and complex.dim(2) == 0
            rows.append(AgreementRow(check="off_slice", instance=f"ray {ray} u={list(u)}", passed=passed))
    return rows


def _off_slice_rows(fan, e1, e2):
    """kappa components off the slice are coboundaries, so such products vanish"""
    rows = []
    for z in e1.components:
        for z2 in e2.components:
            f = component_cochain(fan, e1.ray, e1.u, z)
            f2 = component_cochain(fan, e2.ray, e2.u, z2)
            for target, on_slice, vanishes in cech_oracle.kappa_classes(
                fan, f, f2, e1.ray, e1.u, e2.ray, e2.u,
            ):
                if on_slice:
                    continue
                rows.append(AgreementRow(
                    check="kappa_off_slice",
                    instance=f"rays {e1.ray},{e2.ray} u={list(e1.u)},{list(e2.u)} summand {target}",
                    passed=vanishes,
                ))
    return rows


def route_rows(fan, h1_entries):
    """Cup cocycle, kappa route, theta routes and certificates on every component pair"""
    rows = []
    for e1, e2 in combinations(h1_entries, 2):
        selection = cup_degree_rule(fan, e1.ray, e1.u, e2.ray, e2.u)
        if selection.kind != TARGET:
            if e1.ray != e2.ray:
                rows.extend(_off_slice_rows(fan, e1, e2))
            continue
        target = support_complex.build(fan, selection.target_ray, selection.target_u)
        cycles = find_reduced_cycles(target)
        for z in e1.components:
            for z2 in e2.components:
                f = component_cochain(fan, e1.ray, e1.u, z)
                f2 = component_cochain(fan, e2.ray, e2.u, z2)
                args = (fan, f, f2, e1.ray, e1.u, e2.ray, e2.u)
                cup_vanishes = cup_cocycle(fan, f, f2).vanishes
                kappa_vanishes = cech_oracle.kappa_route_vanishes(*args)
                ref = ComponentRef(e1.ray, e1.u, z)
                ref2 = ComponentRef(e2.ray, e2.u, z2)
                no_certificate = all(not pairing(fan, alpha, ref, ref2).value for alpha in cycles)
                instance = (
                    f"rays {e1.ray},{e2.ray} u={list(e1.u)},{list(e2.u)} "
                    f"Z={list(z)} Z'={list(z2)}"
                )
                rows.append(AgreementRow(
                    check="routes", instance=instance,
                    passed=cup_vanishes == kappa_vanishes == no_certificate,
                ))
                rows.append(AgreementRow(
                    check="connecting_lift", instance=instance,
                    passed=cech_oracle.connecting_lift_matches(*args),
                ))
                rows.append(AgreementRow(
                    check="kappa_theta", instance=instance,
                    passed=cech_oracle.kappa_theta_matches(*args),
                ))
                rows.append(AgreementRow(
                    check="theta_routes", instance=instance,
                    passed=cech_oracle.theta_via_cup(*args) == cech_oracle.theta_cocycle(*args),
                ))
    return rows


def run_suite(fan, box=None):
    """All agreement rows for one fan"""
    try:
        fan = require_supported(fan)
        degrees = [
            (ray, candidate.u)
            for ray in range(len(fan.rays))
            for candidate in candidate_degrees(fan, ray, box=box)
        ]
        rows = dimension_rows(fan, degrees) + off_slice_rows(fan)
        table = compute_table(fan, box=box)
        rows += route_rows(fan, table.h1_entries())
        failed = sum(1 for r in rows if not r.passed)
        logger.info(f"Agreement suite: {len(rows)} checks, {failed} failed")
        return rows
    except Exception as e:
        logger.error(f"Error running agreement suite: {str(e)}")
        raise
