import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from math import gcd

import networkx as nx
from sympy import Matrix

from toricdeform.errors import (
    DimensionMismatchError,
    InvalidFanError,
    UnsupportedFanError,
)
from toricdeform.services import linalg
from toricdeform.services.polyhedra import EQ, GT, Constraint, find_point

logger = logging.getLogger(__name__)

# Integer coordinates in N or M
LatticeVector = tuple


def ray_label(index):
    """1-based label used in reports, e.g. rho_1"""
    return f"rho_{index + 1}"


@dataclass(frozen=True, order=True)
class Cone:
    ray_indices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ray_indices", tuple(sorted(self.ray_indices)))

    def __contains__(self, ray):
        return ray in self.ray_indices

    def __iter__(self):
        return iter(self.ray_indices)

    def __len__(self):
        return len(self.ray_indices)


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    is_simplicial: bool = None
    is_smooth: bool = None
    is_complete: bool = None

    @cached_property
    def cones_of_ray(self):
        """ray index -> frozenset of maximal cone indices containing it"""
        incidence = {i: set() for i in range(len(self.rays))}
        for c, cone in enumerate(self.max_cones):
            for ray in cone:
                incidence[ray].add(c)
        return {i: frozenset(s) for i, s in incidence.items()}

    @cached_property
    def cone_sets(self):
        return tuple(frozenset(cone.ray_indices) for cone in self.max_cones)

    @property
    def is_validated(self):
        return self.is_complete is not None

    @property
    def is_supported(self):
        return bool(self.is_simplicial and self.is_complete)


@dataclass(frozen=True)
class ValidationReport:
    fan: Fan
    determinants: tuple = ()
    messages: tuple = field(default_factory=tuple)

    @property
    def accepted(self):
        return self.fan.is_supported

    def to_dict(self):
        return {
            "rank": self.fan.rank,
            "rays": len(self.fan.rays),
            "max_cones": len(self.fan.max_cones),
            "is_simplicial": self.fan.is_simplicial,
            "is_smooth": self.fan.is_smooth,
            "is_complete": self.fan.is_complete,
            "determinants": list(self.determinants),
            "messages": list(self.messages),
        }


def _check_vector(vector, rank, what):
    if len(vector) != rank:
        raise DimensionMismatchError(f"{what} has length {len(vector)}, expected {rank}")


def make_fan(rank, rays, max_cones):
    """Build a Fan after structural checks (indices, primitivity, duplicates)"""
    if not isinstance(rank, int) or isinstance(rank, bool) or rank <= 0:
        raise InvalidFanError(f"rank must be a positive integer, got {rank!r}")
    clean_rays = []
    for i, ray in enumerate(rays):
        if any(not isinstance(x, int) or isinstance(x, bool) for x in ray):
            raise InvalidFanError(f"rays[{i}] must contain integers only")
        if len(ray) != rank:
            raise InvalidFanError(f"rays[{i}] has length {len(ray)}, expected {rank}")
        g = 0
        for x in ray:
            g = gcd(g, x)
        if g == 0:
            raise InvalidFanError(f"rays[{i}] is the zero vector")
        if g != 1:
            raise InvalidFanError(f"rays[{i}] is not primitive (gcd {g})")
        clean_rays.append(tuple(ray))
    duplicates = [r for r, n in Counter(clean_rays).items() if n > 1]
    if duplicates:
        raise InvalidFanError(f"duplicate ray {list(duplicates[0])}")

    cones = []
    for c, indices in enumerate(max_cones):
        if any(not isinstance(x, int) or isinstance(x, bool) for x in indices):
            raise InvalidFanError(f"max_cones[{c}] must contain integers only")
        if len(set(indices)) != len(indices):
            raise InvalidFanError(f"max_cones[{c}] repeats a ray index")
        bad = [x for x in indices if not 0 <= x < len(clean_rays)]
        if bad:
            raise InvalidFanError(f"max_cones[{c}] has out-of-range index {bad[0]}")
        if not indices:
            raise InvalidFanError(f"max_cones[{c}] is empty")
        cones.append(Cone(tuple(indices)))
    if len(set(cones)) != len(cones):
        raise InvalidFanError("duplicate maximal cone")
    used = {ray for cone in cones for ray in cone}
    unused = sorted(set(range(len(clean_rays))) - used)
    if unused:
        raise InvalidFanError(f"rays[{unused[0]}] lies in no maximal cone")
    return Fan(rank=rank, rays=tuple(clean_rays), max_cones=tuple(cones))


def pairing(fan, ray_index, u):
    """rho(u): the primitive generator of the ray evaluated on u"""
    if not 0 <= ray_index < len(fan.rays):
        raise InvalidFanError(f"ray index {ray_index} out of range")
    _check_vector(u, fan.rank, "degree vector")
    return sum(a * b for a, b in zip(fan.rays[ray_index], u))


def generator_determinant(fan, cone):
    matrix = Matrix([list(fan.rays[i]) for i in cone])
    return int(matrix.det(method="bareiss"))


def meets_in_common_face(fan, first, second):
    """True iff the two simplicial cones intersect in the face spanned by their common rays.

    Equivalent to a linear form vanishing on the common rays that is positive
    on the rest of the first cone and negative on the rest of the second.
    """
    common = set(first) & set(second)
    constraints = []
    for ray in common:
        constraints.append(Constraint(fan.rays[ray], 0, EQ))
    for ray in set(first) - common:
        constraints.append(Constraint(fan.rays[ray], 0, GT))
    for ray in set(second) - common:
        constraints.append(Constraint(tuple(-x for x in fan.rays[ray]), 0, GT))
    return find_point(constraints, fan.rank) is not None


def validate(fan):
    """Decide the simplicial, smooth and complete flags; returns a ValidationReport"""
    try:
        n = fan.rank
        messages = []
        for c, cone in enumerate(fan.max_cones):
            generators = [fan.rays[i] for i in cone]
            if linalg.rank(generators) < n:
                raise UnsupportedFanError(f"max_cones[{c}] is not full-dimensional")
        oversized = [c for c, cone in enumerate(fan.max_cones) if len(cone) > n]
        if oversized:
            messages.append(f"max_cones[{oversized[0]}] has more than {n} rays")
            flagged = replace(fan, is_simplicial=False, is_smooth=False, is_complete=False)
            logger.info(f"Fan rejected as non-simplicial: {messages[-1]}")
            return ValidationReport(fan=flagged, messages=tuple(messages))

        determinants = tuple(generator_determinant(fan, cone) for cone in fan.max_cones)
        is_smooth = all(abs(d) == 1 for d in determinants)

        for (a, first), (b, second) in combinations(enumerate(fan.max_cones), 2):
            if not meets_in_common_face(fan, first, second):
                raise InvalidFanError(
                    f"max_cones[{a}] and max_cones[{b}] overlap outside a common face"
                )

        facets = Counter()
        dual_graph = nx.Graph()
        dual_graph.add_nodes_from(range(len(fan.max_cones)))
        owners = {}
        for c, cone in enumerate(fan.max_cones):
            for facet in combinations(cone.ray_indices, n - 1):
                facets[facet] += 1
                owners.setdefault(facet, []).append(c)
        for facet, cones in owners.items():
            for a, b in combinations(cones, 2):
                dual_graph.add_edge(a, b)
        unpaired = sorted(f for f, count in facets.items() if count != 2)
        if unpaired:
            messages.append(
                f"facet {list(unpaired[0])} lies in {facets[unpaired[0]]} maximal cone(s)"
            )
        connected = nx.is_connected(dual_graph)
        if not connected:
            messages.append("dual graph of maximal cones is disconnected")
        is_complete = not unpaired and connected

        flagged = replace(fan, is_simplicial=True, is_smooth=is_smooth, is_complete=is_complete)
        logger.info(
            f"Validated fan: rank {n}, {len(fan.rays)} rays, {len(fan.max_cones)} cones, "
            f"smooth={is_smooth}, complete={is_complete}"
        )
        return ValidationReport(fan=flagged, determinants=determinants, messages=tuple(messages))
    except Exception as e:
        logger.error(f"Error validating fan: {str(e)}")
        raise


def require_supported(fan):
    """Validated fan that is simplicial and complete, or UnsupportedFanError"""
    if not fan.is_validated:
        fan = validate(fan).fan
    if not fan.is_supported:
        raise UnsupportedFanError("operation requires a complete simplicial fan")
    return fan


def section_membership(fan, divisor_ray, u, cone):
    """Whether chi^u is a section of O(D_rho) over the affine piece of the cone"""
    _check_vector(u, fan.rank, "degree vector")
    for ray in cone:
        value = sum(a * b for a, b in zip(fan.rays[ray], u))
        if ray == divisor_ray:
            if value < -1:
                return False
        elif value < 0:
            return False
    return True


def common_cone(fan, ray_set):
    """Smallest face of the fan containing all given rays, or None"""
    rays = frozenset(ray_set)
    if not rays:
        return Cone(())
    if any(rays <= cone for cone in fan.cone_sets):
        return Cone(tuple(rays))
    return None


def cones_meeting(fan, rays):
    """Indices of maximal cones containing at least one of the rays"""
    result = set()
    for ray in rays:
        result |= fan.cones_of_ray[ray]
    return frozenset(result)
