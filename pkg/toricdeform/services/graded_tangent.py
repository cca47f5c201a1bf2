"""Multigraded dimensions of H^1(X, T_X) and H^2(X, T_X)"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from toricdeform.errors import ContractError
from toricdeform.services import support_complex
from toricdeform.services.degree_scan import candidate_degrees
from toricdeform.services.fan_core import cones_meeting, ray_label, require_supported
from toricdeform.services.support_complex import CechCocycle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TableEntry:
    ray: int
    u: tuple
    h1_contrib: int
    h2_contrib: int
    components: tuple

    def to_dict(self):
        return {
            "ray": self.ray,
            "ray_label": ray_label(self.ray),
            "u": list(self.u),
            "h1": self.h1_contrib,
            "h2": self.h2_contrib,
            "components": [list(z) for z in self.components],
        }


@dataclass(frozen=True)
class GradedTable:
    entries: tuple = ()
    certified_exhaustive: bool = True

    @property
    def h1_total(self):
        return sum(e.h1_contrib for e in self.entries)

    @property
    def h2_total(self):
        return sum(e.h2_contrib for e in self.entries)

    def entry(self, ray, u):
        for e in self.entries:
            if e.ray == ray and e.u == tuple(u):
                return e
        return None

    def h1_entries(self):
        return [e for e in self.entries if e.h1_contrib]

    def h2_entries(self):
        return [e for e in self.entries if e.h2_contrib]


@dataclass(frozen=True)
class ComponentClass:
    """A combination sum c_Z f(Z) of component cochains of Gamma_{rho,u}"""
    ray: int
    u: tuple
    coefficients: tuple = field(default_factory=tuple)  # (component, Fraction)

    def cochain(self, fan):
        total = CechCocycle(p=0, values={}, ray=self.ray, u=self.u)
        for component, coefficient in self.coefficients:
            total = total + component_cochain(fan, self.ray, self.u, component).scaled(coefficient)
        return total

    def to_dict(self):
        return {
            "ray": self.ray,
            "ray_label": ray_label(self.ray),
            "u": list(self.u),
            "combination": [
                {"component": list(z), "coefficient": str(c)} for z, c in self.coefficients
            ],
        }


def entry_for(fan, ray, u):
    """TableEntry for one (rho, u), zero contributions included"""
    complex = support_complex.build(fan, ray, u)
    labeling = support_complex.components(complex)
    h1, h2 = labeling.reduced_h0, support_complex.simplicial_h1_dim(complex)
    return TableEntry(
        ray=ray, u=tuple(u), h1_contrib=h1, h2_contrib=h2, components=tuple(labeling.components),
    )


def compute_table(fan, box=None):
    """Nonzero (rho, u) contributions, ordered by (rho, u)"""
    try:
        fan = require_supported(fan)
        entries = []
        for ray in range(len(fan.rays)):
            for candidate in candidate_degrees(fan, ray, box=box):
                entry = entry_for(fan, ray, candidate.u)
                if entry.h1_contrib or entry.h2_contrib:
                    entries.append(entry)
        table = GradedTable(entries=tuple(entries), certified_exhaustive=box is None)
        logger.info(f"Graded table: h1={table.h1_total}, h2={table.h2_total}")
        return table
    except Exception as e:
        logger.error(f"Error computing graded table: {str(e)}")
        raise


def component_cochain(fan, ray, u, component):
    """f(Z): 1 on every maximal cone meeting Z, 0 elsewhere"""
    return CechCocycle(
        p=0,
        values={(c,): Fraction(1) for c in sorted(cones_meeting(fan, component))},
        ray=ray, u=tuple(u), component=tuple(sorted(component)),
    )


def first_order_basis(fan, ray, u):
    """f(Z) for every component Z of Gamma_{rho,u}; their classes span reduced H^0"""
    entry = entry_for(fan, ray, u)
    if not entry.h1_contrib:
        logger.warning(f"No first-order classes at ray {ray}, u={tuple(u)}")
        return []
    return [component_cochain(fan, ray, u, z) for z in entry.components]


def reduced_basis(fan, ray, u):
    """Basis f(Z) - f(Z0) of reduced H^0, Z0 the lexicographically least component"""
    entry = entry_for(fan, ray, u)
    if not entry.h1_contrib:
        return []
    anchor, *rest = entry.components
    return [
        ComponentClass(ray=ray, u=tuple(u), coefficients=((z, Fraction(1)), (anchor, Fraction(-1))))
        for z in rest
    ]


def as_component_class(fan, value):
    """Accept a ComponentClass or a tagged f(Z); anything else breaks provenance"""
    if isinstance(value, ComponentClass):
        klass = value
    elif isinstance(value, CechCocycle) and value.component is not None and value.p == 0:
        klass = ComponentClass(
            ray=value.ray, u=tuple(value.u), coefficients=((tuple(value.component), Fraction(1)),)
        )
    else:
        raise ContractError("first-order classes must be given as tagged component cochains")
    components = set(entry_for(fan, klass.ray, klass.u).components)
    for component, _ in klass.coefficients:
        if tuple(component) not in components:
            raise ContractError(
                f"{list(component)} is not a component of Gamma for ray {klass.ray}, u={klass.u}"
            )
    return klass
