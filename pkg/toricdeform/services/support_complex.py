"""V_{rho,u}, its skeleta and the closed cover by maximal cones"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from networkx.utils import UnionFind

from toricdeform.errors import ContractError
from toricdeform.services import linalg
from toricdeform.services.fan_core import ray_label

logger = logging.getLogger(__name__)


def permutation_sign(indices):
    """(sorted tuple, sign of the sorting permutation); sign 0 on repeats"""
    items = list(indices)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    if len(set(items)) != len(items):
        return tuple(items), 0
    return tuple(items), sign


@dataclass(frozen=True)
class CechCocycle:
    """Alternating p-cochain on tuples of maximal-cone indices.

    ray, u and component record where the cochain came from; cup products
    only accept cochains that carry them.
    """
    p: int
    values: dict = field(default_factory=dict)
    ray: int = None
    u: tuple = None
    component: tuple = None

    def value(self, indices):
        key, sign = permutation_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * Fraction(self.values.get(key, 0))

    def support(self):
        return sorted(k for k, v in self.values.items() if v)

    def scaled(self, factor):
        return CechCocycle(
            p=self.p,
            values={k: Fraction(factor) * v for k, v in self.values.items()},
            ray=self.ray, u=self.u, component=self.component,
        )

    def __add__(self, other):
        if self.p != other.p:
            raise ContractError("cannot add cochains of different degree")
        values = dict(self.values)
        for k, v in other.values.items():
            values[k] = Fraction(values.get(k, 0)) + v
        same = self.ray == other.ray and self.u == other.u
        return CechCocycle(
            p=self.p, values=values,
            ray=self.ray if same else None, u=self.u if same else None,
        )

    def __sub__(self, other):
        return self + other.scaled(-1)

    def to_dict(self):
        return {
            "p": self.p,
            "values": [
                {"cones": list(k), "value": str(Fraction(v))}
                for k, v in sorted(self.values.items()) if v
            ],
        }


@dataclass(frozen=True)
class SupportComplex:
    fan: object
    ray: int
    u: tuple
    vertices: tuple
    edges: tuple
    triangles: tuple
    cover: tuple  # (maximal cone index, frozenset of vertices) for every maximal cone

    def piece(self, cone_index):
        return self.cover[cone_index][1]

    def intersection(self, cone_indices):
        pieces = [self.piece(c) for c in cone_indices]
        return frozenset.intersection(*pieces) if pieces else frozenset(self.vertices)


@dataclass(frozen=True)
class ComponentLabeling:
    component_of_vertex: dict
    component_count: int

    @property
    def components(self):
        """Components as sorted vertex tuples, lexicographically ordered"""
        groups = {}
        for vertex, label in self.component_of_vertex.items():
            groups.setdefault(label, []).append(vertex)
        return sorted(tuple(sorted(g)) for g in groups.values())

    @property
    def reduced_h0(self):
        return max(self.component_count - 1, 0)


@dataclass(frozen=True)
class ScalarCechComplex:
    complex: SupportComplex
    basis0: tuple
    basis1: tuple
    basis2: tuple
    d0: tuple  # rows indexed by basis1, columns by basis0
    d1: tuple  # rows indexed by basis2, columns by basis1

    def dims(self):
        """(dim H^0, dim H^1) of the cover complex"""
        r0 = linalg.rank(self.d0) if self.basis1 and self.basis0 else 0
        r1 = linalg.rank(self.d1) if self.basis2 and self.basis1 else 0
        return len(self.basis0) - r0, len(self.basis1) - r1 - r0


def build(fan, ray, u):
    """V_{rho,u} up to triangles, plus its cover by maximal cones"""
    vertices = []
    for eps, generator in enumerate(fan.rays):
        value = sum(a * b for a, b in zip(generator, u))
        if (eps == ray and value < -1) or (eps != ray and value < 0):
            vertices.append(eps)
    vertex_set = frozenset(vertices)

    def spanned(subset):
        return bool(frozenset.intersection(*(fan.cones_of_ray[v] for v in subset)))

    edges = tuple(e for e in combinations(vertices, 2) if spanned(e))
    triangles = tuple(t for t in combinations(vertices, 3) if spanned(t))
    cover = tuple((c, cone & vertex_set) for c, cone in enumerate(fan.cone_sets))
    logger.debug(
        f"V for ray {ray}, u={u}: {len(vertices)} vertices, {len(edges)} edges, "
        f"{len(triangles)} triangles"
    )
    return SupportComplex(
        fan=fan, ray=ray, u=tuple(u), vertices=tuple(vertices),
        edges=edges, triangles=triangles, cover=cover,
    )


def components(complex):
    """Connected components of the one-skeleton"""
    union_find = UnionFind(complex.vertices)
    for a, b in complex.edges:
        union_find.union(a, b)
    labels = {}
    component_of_vertex = {}
    for vertex in complex.vertices:
        root = union_find[vertex]
        labels.setdefault(root, len(labels))
        component_of_vertex[vertex] = labels[root]
    return ComponentLabeling(component_of_vertex=component_of_vertex, component_count=len(labels))


def simplicial_boundary_matrices(complex):
    """(d0: edges x vertices, d1: triangles x edges) simplicial coboundaries"""
    vertex_pos = {v: i for i, v in enumerate(complex.vertices)}
    edge_pos = {e: i for i, e in enumerate(complex.edges)}
    d0 = []
    for a, b in complex.edges:
        row = [0] * len(complex.vertices)
        row[vertex_pos[a]] = -1
        row[vertex_pos[b]] = 1
        d0.append(row)
    d1 = []
    for a, b, c in complex.triangles:
        row = [0] * len(complex.edges)
        row[edge_pos[(b, c)]] = 1
        row[edge_pos[(a, c)]] = -1
        row[edge_pos[(a, b)]] = 1
        d1.append(row)
    return d0, d1


def simplicial_h1_dim(complex):
    """dim H^1(K_{rho,u}) over the rationals"""
    if not complex.edges:
        return 0
    d0, d1 = simplicial_boundary_matrices(complex)
    r0 = linalg.rank(d0)
    _, cocycles = linalg.coboundary_rank_profile(d1, len(complex.edges))
    return cocycles - r0


def reduced_cohomology_dims(complex):
    """(dim reduced H^0, dim H^1) of the complex"""
    return components(complex).reduced_h0, simplicial_h1_dim(complex)


def _alternating_coboundary_row(face, column_pos):
    row = [0] * len(column_pos)
    for k in range(len(face)):
        sub = face[:k] + face[k + 1:]
        row[column_pos[sub]] += (-1) ** k
    return row


def closed_cover_complex(complex):
    """Alternating Cech complex of the constant sheaf on the cover {V_sigma}"""
    nonempty = [c for c, piece in complex.cover if piece]
    basis0 = tuple((c,) for c in nonempty)
    basis1 = tuple(t for t in combinations(nonempty, 2) if complex.intersection(t))
    basis2 = tuple(t for t in combinations(nonempty, 3) if complex.intersection(t))
    pos0 = {t: i for i, t in enumerate(basis0)}
    pos1 = {t: i for i, t in enumerate(basis1)}
    d0 = tuple(tuple(_alternating_coboundary_row(t, pos0)) for t in basis1)
    d1 = tuple(tuple(_alternating_coboundary_row(t, pos1)) for t in basis2)
    return ScalarCechComplex(
        complex=complex, basis0=basis0, basis1=basis1, basis2=basis2, d0=d0, d1=d1,
    )


def apply_coboundary(cech, cochain):
    """d applied to a 0- or 1-cochain of the cover complex"""
    if cochain.p == 0:
        basis, target, matrix = cech.basis0, cech.basis1, cech.d0
    elif cochain.p == 1:
        basis, target, matrix = cech.basis1, cech.basis2, cech.d1
    else:
        raise ContractError(f"no coboundary stored for p={cochain.p}")
    vector = [cochain.value(t) for t in basis]
    image = linalg.mat_vec(matrix, vector) if matrix else []
    return CechCocycle(p=cochain.p + 1, values={t: v for t, v in zip(target, image) if v})


def is_coboundary(cech, cocycle):
    """(True, primitive 0-cochain) if the 1-cocycle is d0 of something, else (False, None)"""
    if cocycle.p != 1:
        raise ContractError(f"expected a 1-cochain, got p={cocycle.p}")
    allowed = set(cech.basis1)
    stray = [k for k in cocycle.support() if k not in allowed]
    if stray:
        raise ContractError(f"cochain is nonzero on {list(stray[0])}, which meets no vertex")
    if apply_coboundary(cech, cocycle).support():
        raise ContractError("cochain is not a cocycle")
    rhs = [cocycle.value(t) for t in cech.basis1]
    if not rhs:
        return True, CechCocycle(p=0, values={})
    solution = linalg.solve(list(cech.d0), rhs)
    if solution is None:
        return False, None
    primitive = CechCocycle(p=0, values={t: x for t, x in zip(cech.basis0, solution) if x})
    return True, primitive


def dump(complex):
    """JSON-ready description for external viewers"""
    return {
        "ray": complex.ray,
        "ray_label": ray_label(complex.ray),
        "u": list(complex.u),
        "vertices": list(complex.vertices),
        "edges": [list(e) for e in complex.edges],
        "triangles": [list(t) for t in complex.triangles],
        "cover": [
            {"cone": c, "cone_rays": list(complex.fan.max_cones[c].ray_indices), "piece": sorted(piece)}
            for c, piece in complex.cover if piece
        ],
    }
