"""Seed fans and random smooth complete fans by star subdivision"""

import logging
from itertools import combinations, product

from sympy import Matrix

from toricdeform.errors import InvalidFanError
from toricdeform.services.fan_core import make_fan
from toricdeform.services.linalg import normalize_integer_vector

logger = logging.getLogger(__name__)


def projective_line():
    return make_fan(1, [(1,), (-1,)], [(0,), (1,)])


def projective_plane():
    return make_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


def projective_space_3():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    return make_fan(3, rays, list(combinations(range(4), 3)))


def product_of_lines(rank):
    """(P^1)^rank with rays e_1, -e_1, e_2, -e_2, ..."""
    rays = []
    for i in range(rank):
        for s in (1, -1):
            rays.append(tuple(s if j == i else 0 for j in range(rank)))
    cones = [tuple(2 * i + choice[i] for i in range(rank)) for choice in product((0, 1), repeat=rank)]
    return make_fan(rank, rays, cones)


def hirzebruch(a):
    return make_fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def obstructed_threefold():
    """Smooth complete threefold with an obstructed first-order deformation"""
    rays = [
        (1, 0, 0), (1, 0, -1), (1, 0, 1), (2, -1, 0), (1, -1, 0),
        (1, 1, 0), (0, 1, -1), (0, 1, 1), (-1, 0, 0),
    ]
    cones = [
        (0, 1, 3), (0, 1, 6), (0, 2, 3), (0, 2, 7), (0, 5, 6), (0, 5, 7), (1, 3, 4),
        (1, 4, 8), (1, 6, 8), (2, 3, 4), (2, 4, 8), (2, 7, 8), (5, 6, 8), (5, 7, 8),
    ]
    return make_fan(3, rays, cones)


SEEDS = {
    1: [projective_line],
    2: [projective_plane, lambda: product_of_lines(2), lambda: hirzebruch(1), lambda: hirzebruch(2)],
    3: [projective_space_3, lambda: product_of_lines(3)],
}


def star_subdivide(fan, face):
    """Insert the ray through the sum of the face's generators and re-cone around it"""
    face = tuple(sorted(face))
    if len(face) < 2:
        raise InvalidFanError("star subdivision needs a face of dimension at least 2")
    face_set = frozenset(face)
    if not any(face_set <= cone for cone in fan.cone_sets):
        raise InvalidFanError(f"{list(face)} is not a face of the fan")
    summed = tuple(sum(fan.rays[r][i] for r in face) for i in range(fan.rank))
    new_ray = normalize_integer_vector(summed)
    new_index = len(fan.rays)
    cones = []
    for cone in fan.max_cones:
        if face_set <= frozenset(cone.ray_indices):
            for dropped in face:
                cones.append(tuple(r for r in cone.ray_indices if r != dropped) + (new_index,))
        else:
            cones.append(cone.ray_indices)
    return make_fan(fan.rank, list(fan.rays) + [new_ray], cones)


def random_smooth_fan(rng, rank, steps):
    """Seed fan of the given rank followed by `steps` random star subdivisions"""
    seeds = SEEDS[rank]
    fan = seeds[int(rng.integers(len(seeds)))]()
    if rank < 2:
        return fan
    for _ in range(steps):
        cone = fan.max_cones[int(rng.integers(len(fan.max_cones)))].ray_indices
        size = int(rng.integers(2, rank + 1))
        faces = list(combinations(cone, size))
        face = faces[int(rng.integers(len(faces)))]
        fan = star_subdivide(fan, face)
    logger.debug(f"Random fan: rank {rank}, {len(fan.rays)} rays, {len(fan.max_cones)} cones")
    return fan


def unimodular_transform(fan, matrix):
    """Apply an integer matrix with determinant +-1 to every ray"""
    m = Matrix(matrix)
    if abs(m.det()) != 1:
        raise InvalidFanError("transform is not unimodular")
    rays = [tuple(int(x) for x in m * Matrix(list(ray))) for ray in fan.rays]
    return make_fan(fan.rank, rays, [c.ray_indices for c in fan.max_cones])


def random_unimodular(rng, rank, moves=4):
    """Product of random elementary shears and sign flips"""
    m = Matrix.eye(rank)
    for _ in range(moves):
        if rank > 1:
            i, j = (int(x) for x in rng.choice(rank, size=2, replace=False))
            shear = Matrix.eye(rank)
            shear[i, j] = int(rng.integers(-2, 3))
            m = shear * m
        flip = Matrix.eye(rank)
        k = int(rng.integers(rank))
        flip[k, k] = -1
        m = flip * m
    return [[int(x) for x in m.row(i)] for i in range(rank)]


def relabel(fan, ray_perm, cone_perm):
    """Move ray i to position ray_perm[i] and cone c to position cone_perm[c]"""
    rays = [None] * len(fan.rays)
    for old, new in enumerate(ray_perm):
        rays[new] = fan.rays[old]
    cones = [None] * len(fan.max_cones)
    for old, new in enumerate(cone_perm):
        cones[new] = tuple(ray_perm[r] for r in fan.max_cones[old].ray_indices)
    return make_fan(fan.rank, rays, cones)
