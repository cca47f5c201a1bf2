"""Sigma-reduced cycles and the pairing Z *_alpha Z'"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

from toricdeform.errors import ContractError
from toricdeform.services import linalg, support_complex
from toricdeform.services.cup_product import TARGET, cup_degree_rule
from toricdeform.services.fan_core import cones_meeting, pairing as ray_pairing, ray_label
from toricdeform.services.graded_tangent import entry_for

logger = logging.getLogger(__name__)


def _edges_of(vertices):
    k = len(vertices)
    return tuple((vertices[i], vertices[(i + 1) % k]) for i in range(k))


def _canonical(vertices):
    """Rotation starting at the least vertex, plus +1/-1 for the traversal direction"""
    k = len(vertices)
    start = vertices.index(min(vertices))
    rotated = tuple(vertices[(start + i) % k] for i in range(k))
    if rotated[1] < rotated[-1]:
        return rotated, 1
    backwards = (rotated[0],) + tuple(reversed(rotated[1:]))
    return backwards, -1


@dataclass(frozen=True)
class ReducedCycle:
    vertices: tuple
    sigma_choice: tuple  # maximal cone index per edge, edges in cyclic order

    @property
    def edges(self):
        return _edges_of(self.vertices)

    @property
    def orientation(self):
        return _canonical(self.vertices)[1]

    def reversed(self, fan):
        vertices = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
        return ReducedCycle(vertices=vertices, sigma_choice=choose_sigmas(fan, vertices))

    def to_dict(self, fan):
        return {
            "alpha": list(self.vertices),
            "alpha_labels": [ray_label(v) for v in self.vertices],
            "orientation": self.orientation,
            "sigma_choice": [list(fan.max_cones[c].ray_indices) for c in self.sigma_choice],
        }


@dataclass(frozen=True)
class ComponentRef:
    ray: int
    u: tuple
    component: tuple

    def to_dict(self):
        return {
            "ray": self.ray,
            "ray_label": ray_label(self.ray),
            "u": list(self.u),
            "component": list(self.component),
            "component_labels": [ray_label(v) for v in self.component],
        }


@dataclass(frozen=True)
class PairingResult:
    value: Fraction
    relevant_indices: tuple  # (i, b_i)

    @property
    def b_sum(self):
        return sum(b for _, b in self.relevant_indices)


@dataclass(frozen=True)
class Certificate:
    alpha: ReducedCycle
    first: ComponentRef
    second: ComponentRef
    result: PairingResult
    reversed_value: Fraction

    def to_dict(self, fan):
        data = self.alpha.to_dict(fan)
        data.update(
            Z=self.first.to_dict(),
            Z_prime=self.second.to_dict(),
            relevant=[[i, b] for i, b in self.result.relevant_indices],
            value=str(self.result.value),
            reversed_value=str(self.reversed_value),
        )
        return data


def valid_sigmas(fan, vertices):
    """Per edge: maximal cones meeting the cycle in exactly that edge, in index order"""
    vertex_set = frozenset(vertices)
    choices = []
    for edge in _edges_of(vertices):
        edge_set = frozenset(edge)
        choices.append([
            c for c, cone in enumerate(fan.cone_sets)
            if edge_set <= cone and cone & vertex_set == edge_set
        ])
    return choices


def choose_sigmas(fan, vertices):
    """Lexicographically least valid cone per edge; None entries when the cycle is not reduced"""
    return tuple(
        min(options, key=lambda c: fan.max_cones[c].ray_indices) if options else None
        for options in valid_sigmas(fan, vertices)
    )


def _shares_cone(fan, first, second):
    return any(frozenset(first) | frozenset(second) <= cone for cone in fan.cone_sets)


def is_sigma_reduced_shape(fan, vertices):
    """No two edges of the cycle lie in a common cone"""
    return not any(
        _shares_cone(fan, e1, e2) for e1, e2 in combinations(_edges_of(vertices), 2)
    )


def cycle_chain(complex, vertices):
    """Edge-chain vector of an oriented cycle in the edge basis of the complex"""
    position = {e: i for i, e in enumerate(complex.edges)}
    chain = [0] * len(complex.edges)
    for a, b in _edges_of(vertices):
        if (a, b) in position:
            chain[position[(a, b)]] += 1
        elif (b, a) in position:
            chain[position[(b, a)]] -= 1
        else:
            raise ContractError(f"[{a}, {b}] is not an edge of the complex")
    return chain


def is_null_homologous(complex, vertices):
    """Whether the cycle bounds a chain of triangles"""
    chain = cycle_chain(complex, vertices)
    if not complex.triangles:
        return not any(chain)
    _, d1 = support_complex.simplicial_boundary_matrices(complex)
    boundary = [list(column) for column in zip(*d1)]  # edges x triangles
    return linalg.solve(boundary, chain) is not None


def reduce_cycle(complex, vertices):
    """Sigma-reduced cycles whose classes sum to the class of the given simple cycle"""
    fan = complex.fan
    pending = [tuple(vertices)]
    reduced = []
    while pending:
        cycle = pending.pop()
        if len(cycle) < 3:
            continue
        edges = _edges_of(cycle)
        k = len(cycle)
        clash = next(
            ((i, j) for i, j in combinations(range(k), 2) if _shares_cone(fan, edges[i], edges[j])),
            None,
        )
        if clash is None:
            if not is_null_homologous(complex, cycle):
                reduced.append(ReducedCycle(vertices=cycle, sigma_choice=choose_sigmas(fan, cycle)))
            continue
        i, j = clash
        if j == i + 1 or (i == 0 and j == k - 1):
            # shortcut across the shared vertex
            shared = cycle[j] if j == i + 1 else cycle[0]
            pending.append(tuple(v for v in cycle if v != shared))
            continue
        # edges [a, b] = E_i and [c, d] = E_j are disjoint; split along the chord b-d
        b_pos, d_pos = i + 1, (j + 1) % k
        first = cycle[b_pos:j + 1] + (cycle[d_pos],)
        second = tuple(cycle[(d_pos + t) % k] for t in range((i + 1 - d_pos) % k + 1))
        pending.append(first)
        pending.append(second)
    logger.debug(f"Reduced cycle {list(vertices)} into {len(reduced)} cycle(s)")
    return reduced


def find_reduced_cycles(complex):
    """Sigma-reduced cycles spanning H_1 of the complex, from fundamental cycles"""
    graph = nx.Graph()
    graph.add_nodes_from(complex.vertices)
    graph.add_edges_from(complex.edges)
    tree = nx.minimum_spanning_tree(graph)
    tree_edges = {frozenset(e) for e in tree.edges()}
    chords = [e for e in complex.edges if frozenset(e) not in tree_edges]
    found = {}
    for a, b in chords:
        path = tuple(nx.shortest_path(tree, b, a))
        for cycle in reduce_cycle(complex, path):
            key = _canonical(cycle.vertices)[0]
            found.setdefault(key, cycle)
    cycles = [found[key] for key in sorted(found)]
    logger.info(f"Found {len(cycles)} Sigma-reduced cycle(s) in K for ray {complex.ray}")
    return cycles


def _oriented_roles(fan, first, second):
    """(target side, other side) with the target side carrying the summand's ray"""
    selection = cup_degree_rule(fan, first.ray, first.u, second.ray, second.u)
    if selection.kind != TARGET:
        raise ContractError("pairing needs rho(u') = 0 or rho'(u) = 0 with distinct rays")
    if selection.target_ray == first.ray:
        return first, second, selection
    return second, first, selection


def _check_cycle(fan, alpha, target_complex):
    if None in alpha.sigma_choice or not is_sigma_reduced_shape(fan, alpha.vertices):
        raise ContractError(f"cycle {list(alpha.vertices)} is not Sigma-reduced")
    missing = set(alpha.vertices) - set(target_complex.vertices)
    if missing:
        raise ContractError(f"cycle leaves K at vertex {min(missing)}")


def pairing(fan, alpha, first, second):
    """Z *_alpha Z' for components given as ComponentRefs"""
    z, z2, selection = _oriented_roles(fan, first, second)
    target = support_complex.build(fan, selection.target_ray, selection.target_u)
    _check_cycle(fan, alpha, target)
    k = len(alpha.vertices)
    meets = cones_meeting(fan, z.component)
    meets2 = cones_meeting(fan, z2.component)
    in_z = [alpha.sigma_choice[i] in meets for i in range(k)]
    in_z2 = [alpha.sigma_choice[i] in meets2 for i in range(k)]
    relevant = []
    for i in range(k):
        j = (i + 1) % k
        left = {e for e in (i, j) if in_z[e]}
        right = {e for e in (i, j) if in_z2[e]}
        if left != right and left and right and left | right == {i, j}:
            b = int(in_z[i] and in_z2[j]) - int(in_z2[i] and in_z[j])
            relevant.append((i, b))
    coefficient = Fraction(ray_pairing(fan, z2.ray, z.u), 2)
    value = coefficient * sum(b for _, b in relevant)
    return PairingResult(value=value, relevant_indices=tuple(relevant))


def pullback_check(fan, report, alpha):
    """Sum of g over consecutive sigma_i, sigma_{i+1}: the pullback of the class to alpha"""
    if report.g_cocycle is None:
        return Fraction(0)
    k = len(alpha.sigma_choice)
    return sum(
        (report.g_cocycle.value((alpha.sigma_choice[i], alpha.sigma_choice[(i + 1) % k])) for i in range(k)),
        Fraction(0),
    )


def component_refs(fan, ray, u):
    return [ComponentRef(ray=ray, u=tuple(u), component=z) for z in entry_for(fan, ray, u).components]


def certificates(fan, ray, u, ray2, u2, cycles=None):
    """Every (alpha, Z, Z') with nonzero pairing for the degree pair"""
    selection = cup_degree_rule(fan, ray, u, ray2, u2)
    if selection.kind != TARGET:
        return []
    target = support_complex.build(fan, selection.target_ray, selection.target_u)
    if cycles is None:
        cycles = find_reduced_cycles(target)
    found = []
    for alpha in cycles:
        for z in component_refs(fan, ray, u):
            for z2 in component_refs(fan, ray2, u2):
                result = pairing(fan, alpha, z, z2)
                if result.value:
                    reverse = pairing(fan, alpha.reversed(fan), z, z2).value
                    found.append(Certificate(
                        alpha=alpha, first=z, second=z2, result=result, reversed_value=reverse,
                    ))
    logger.info(f"{len(found)} nonzero certificate(s) for rays {ray}, {ray2}")
    return found
