"""Cup product on H^1(X, T_X): g = rho'(u)/2 * (f_sigma f'_tau - f_tau f'_sigma)"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from toricdeform.errors import ContractError
from toricdeform.services import support_complex
from toricdeform.services.fan_core import pairing, ray_label, require_supported
from toricdeform.services.graded_tangent import as_component_class, compute_table, reduced_basis
from toricdeform.services.support_complex import CechCocycle

logger = logging.getLogger(__name__)

ZERO = "zero"
TARGET = "target"
BOTH_ZERO = "both_zero"


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


@dataclass(frozen=True)
class Derivation:
    """Rational combination of symbols d(rho, w), kept sorted without zero terms"""
    terms: tuple = ()  # ((ray, w), Fraction)

    @classmethod
    def of(cls, ray, w, coefficient=1):
        return cls.from_mapping({(ray, tuple(w)): Fraction(coefficient)})

    @classmethod
    def from_mapping(cls, mapping):
        return cls(tuple(sorted((k, Fraction(v)) for k, v in mapping.items() if v)))

    def __add__(self, other):
        mapping = dict(self.terms)
        for k, v in other.terms:
            mapping[k] = mapping.get(k, Fraction(0)) + v
        return Derivation.from_mapping(mapping)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, factor):
        return Derivation.from_mapping({k: Fraction(factor) * v for k, v in self.terms})

    def is_zero(self):
        return not self.terms

    def apply(self, fan, polynomial):
        """Act on a Laurent polynomial {degree: coefficient}: d(rho,w) chi^v = rho(v) chi^(w+v)"""
        result = {}
        for (ray, w), c in self.terms:
            for v, a in polynomial.items():
                value = c * a * pairing(fan, ray, v)
                if value:
                    key = _add(w, v)
                    result[key] = result.get(key, Fraction(0)) + value
        return {k: v for k, v in result.items() if v}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*d({ray_label(r)},{list(w)})" for (r, w), c in self.terms)


def bracket(fan, a, b):
    """Bilinear extension of [d(rho,u), d(rho',u')] = rho(u') d(rho',u+u') - rho'(u) d(rho,u+u')"""
    mapping = {}
    for (r1, w1), c1 in a.terms:
        for (r2, w2), c2 in b.terms:
            total = _add(w1, w2)
            first = c1 * c2 * pairing(fan, r1, w2)
            second = -c1 * c2 * pairing(fan, r2, w1)
            mapping[(r2, total)] = mapping.get((r2, total), Fraction(0)) + first
            mapping[(r1, total)] = mapping.get((r1, total), Fraction(0)) + second
    return Derivation.from_mapping(mapping)


@dataclass(frozen=True)
class CupSelection:
    kind: str
    target_ray: int = None
    target_u: tuple = None

    def to_dict(self):
        data = {"kind": self.kind}
        if self.kind == TARGET:
            data.update(target_ray=self.target_ray, target_ray_label=ray_label(self.target_ray),
                        target_u=list(self.target_u))
        return data


def cup_degree_rule(fan, ray, u, ray2, u2):
    """Which summand of H^2 the product of (rho, u) and (rho', u') can reach"""
    if pairing(fan, ray, u) != -1 or pairing(fan, ray2, u2) != -1:
        raise ContractError("cup product inputs need rho(u) = rho'(u') = -1")
    if ray == ray2:
        return CupSelection(kind=ZERO)
    first = pairing(fan, ray, u2)
    second = pairing(fan, ray2, u)
    total = _add(u, u2)
    if first == 0 and second == 0:
        return CupSelection(kind=BOTH_ZERO)
    if first == 0:
        return CupSelection(kind=TARGET, target_ray=ray, target_u=total)
    if second == 0:
        return CupSelection(kind=TARGET, target_ray=ray2, target_u=total)
    return CupSelection(kind=ZERO)


@dataclass(frozen=True)
class CupClassReport:
    first: object
    second: object
    selection: CupSelection
    g_cocycle: CechCocycle = None
    vanishes: bool = True
    primitive: CechCocycle = None
    target_h2: int = 0

    def to_dict(self):
        data = {
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "selection": self.selection.to_dict(),
            "vanishes": self.vanishes,
            "target_h2": self.target_h2,
        }
        if self.g_cocycle is not None:
            data["g_cocycle"] = self.g_cocycle.to_dict()
        if self.primitive is not None:
            data["primitive"] = self.primitive.to_dict()
        return data


def assemble_g(selection, first_values, second_values, coefficient, cech):
    """c * (a_sigma b_tau - a_tau b_sigma) on every covering pair of the target complex"""
    values = {}
    for sigma, tau in cech.basis1:
        a_s = first_values.get((sigma,), 0)
        a_t = first_values.get((tau,), 0)
        b_s = second_values.get((sigma,), 0)
        b_t = second_values.get((tau,), 0)
        value = coefficient * (a_s * b_t - a_t * b_s)
        if value:
            values[(sigma, tau)] = value
    return CechCocycle(p=1, values=values, ray=selection.target_ray, u=selection.target_u)


def cup_cocycle(fan, f, f2):
    """Cup product of two first-order classes given in component form"""
    try:
        first = as_component_class(fan, f)
        second = as_component_class(fan, f2)
        selection = cup_degree_rule(fan, first.ray, first.u, second.ray, second.u)
        if selection.kind != TARGET:
            return CupClassReport(first=first, second=second, selection=selection)

        target = support_complex.build(fan, selection.target_ray, selection.target_u)
        cech = support_complex.closed_cover_complex(target)
        a = first.cochain(fan).values
        b = second.cochain(fan).values
        if selection.target_ray == first.ray:
            coefficient = Fraction(pairing(fan, second.ray, first.u), 2)
            g = assemble_g(selection, a, b, coefficient, cech)
        else:
            coefficient = Fraction(pairing(fan, first.ray, second.u), 2)
            g = assemble_g(selection, b, a, coefficient, cech)
        vanishes, primitive = support_complex.is_coboundary(cech, g)
        report = CupClassReport(
            first=first, second=second, selection=selection, g_cocycle=g,
            vanishes=vanishes, primitive=primitive,
            target_h2=support_complex.simplicial_h1_dim(target),
        )
        logger.info(
            f"Cup product into {ray_label(selection.target_ray)}, u={selection.target_u}: "
            f"vanishes={vanishes}"
        )
        return report
    except Exception as e:
        logger.error(f"Error computing cup product: {str(e)}")
        raise


def obstruction_scan(fan, table=None, box=None):
    """All non-vanishing cup products between basis classes"""
    fan = require_supported(fan)
    table = table or compute_table(fan, box=box)
    h1 = table.h1_entries()
    found = []
    for e1, e2 in combinations_with_replacement(h1, 2):
        selection = cup_degree_rule(fan, e1.ray, e1.u, e2.ray, e2.u)
        if selection.kind != TARGET:
            continue
        for c1 in reduced_basis(fan, e1.ray, e1.u):
            for c2 in reduced_basis(fan, e2.ray, e2.u):
                report = cup_cocycle(fan, c1, c2)
                if not report.vanishes:
                    found.append(report)
    logger.info(f"Obstruction scan: {len(found)} non-vanishing cup products")
    return found
