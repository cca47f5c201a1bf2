"""Degrees on the slice rho(u) = -1 that can carry cohomology"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations, product
from math import ceil, comb, floor, lcm

import numpy as np
from sympy import Matrix

from toricdeform.config import get_settings
from toricdeform.errors import DegreeScanError
from toricdeform.services import linalg
from toricdeform.services.fan_core import pairing
from toricdeform.services.polyhedra import EQ, GT, Constraint, find_point

logger = logging.getLogger(__name__)

NEGATIVE = -1
ZERO = 0
POSITIVE = 1

# generator subsets evaluated at once; larger arrangements use the splitting search
POOL_LIMIT = 250_000
INT64_BOUND = 2 ** 62


@dataclass(frozen=True)
class SignFace:
    ray: int
    ray_signs: tuple  # (ray index, sign) for every ray other than `ray`
    bounded: bool
    witness: tuple = None

    def sign_of(self, other):
        return dict(self.ray_signs)[other]


@dataclass(frozen=True, order=True)
class DegreeCandidate:
    ray: int
    u: tuple
    face_id: int = -1


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _slice_constraint(fan, ray):
    return Constraint(fan.rays[ray], 1, EQ)


def _sign_constraint(vector, sign, constant=0):
    if sign == ZERO:
        return Constraint(tuple(vector), constant, EQ)
    if sign == POSITIVE:
        return Constraint(tuple(vector), constant, GT)
    return Constraint(tuple(-x for x in vector), -constant, GT)


def _sign(value):
    return (value > 0) - (value < 0)


def _weakly(value, sign):
    return value == 0 if sign == ZERO else value * sign >= 0


def recession_directions(fan, ray):
    """Lines {rho = 0} meets in rank - 2 further hyperplanes, both orientations.

    The other rays span N, so every recession cone of a face closure is
    pointed and its extreme rays are among these.
    """
    if fan.rank < 2:
        return []
    others = [e for e in range(len(fan.rays)) if e != ray]
    directions = set()
    for chosen in combinations(others, fan.rank - 2):
        kernel = Matrix([list(fan.rays[ray])] + [list(fan.rays[e]) for e in chosen]).nullspace()
        if len(kernel) != 1:
            continue
        scale = lcm(*(Fraction(str(x)).denominator for x in kernel[0]))
        d = linalg.normalize_integer_vector([int(x * scale) for x in kernel[0]])
        directions.add(d)
        directions.add(tuple(-x for x in d))
    return sorted(directions)


def recession_trivial(fan, ray, ray_signs, directions=None):
    """True iff {v : rho(v) = 0, eps(v) has the weak sign of the face} is {0}"""
    if directions is None:
        directions = recession_directions(fan, ray)
    for d in directions:
        if all(_weakly(_dot(fan.rays[other], d), sign) for other, sign in ray_signs):
            return False
    return True


def _split_faces(fan, ray, others):
    """Sign vectors and witnesses by splitting on one hyperplane at a time"""
    slice_eq = [_slice_constraint(fan, ray)]
    found = []

    def split(k, constraints, signs, witness):
        if k == len(others):
            found.append((tuple(signs), witness))
            return
        vector = fan.rays[others[k]]
        witness_sign = _sign(_dot(vector, witness))
        for sign in (NEGATIVE, ZERO, POSITIVE):
            extended = constraints + [_sign_constraint(vector, sign)]
            if sign == witness_sign:
                point = witness
            else:
                point = find_point(extended, fan.rank)
                if point is None:
                    continue
            split(k + 1, extended, signs + [(others[k], sign)], point)

    split(0, slice_eq, [], find_point(slice_eq, fan.rank))
    return found


def _pool_faces(fan, ray, others, vertices, directions):
    """Sign vectors and witnesses from positive combinations of generators.

    Every face closure is conv(its vertices) + cone(its extreme rays); a
    strictly positive combination of at most rank generators spanning its
    affine hull lies in the face. Returns None when the pool is too large.
    """
    generators = [("v", v) for v in vertices] + [("d", d) for d in directions]
    size = len(generators)
    if not vertices or sum(comb(size, k) for k in range(1, fan.rank + 1)) > POOL_LIMIT:
        return None
    rows, weights = [], []
    for kind, point in generators:
        if kind == "v":
            q = lcm(*(Fraction(x).denominator for x in point))
            scaled = [int(Fraction(x) * q) for x in point]
        else:
            q, scaled = 0, list(point)
        rows.append([_dot(fan.rays[e], scaled) for e in others])
        weights.append(q)
    biggest = max((abs(x) for row in rows for x in row), default=0)
    k = fan.rank
    if (k + k * k * max(weights)) * biggest >= INT64_BOUND:
        return None
    values_of = np.array(rows, dtype=np.int64).reshape(size, len(others))
    weight_of = np.array(weights, dtype=np.int64)
    is_vertex = weight_of > 0

    found = {}
    for k in range(1, fan.rank + 1):
        count = comb(size, k)
        subsets = np.fromiter(
            chain.from_iterable(combinations(range(size), k)), dtype=np.int64, count=count * k,
        ).reshape(count, k)
        picked_vertex = is_vertex[subsets][:, :, None]
        picked = values_of[subsets]
        vertex_part = (picked * picked_vertex).sum(axis=1)
        direction_part = (picked * ~picked_vertex).sum(axis=1)
        total_weight = (weight_of[subsets] * is_vertex[subsets]).sum(axis=1)
        keep = total_weight > 0
        signs = np.sign(vertex_part + total_weight[:, None] * direction_part)[keep]
        if not len(signs):
            continue
        unique, first = np.unique(signs, axis=0, return_index=True)
        kept = subsets[keep]
        for sign_row, i in zip(unique, first):
            key = tuple(zip(others, (int(s) for s in sign_row)))
            if key not in found:
                found[key] = tuple(int(g) for g in kept[i])

    faces = []
    for key, subset in found.items():
        total = sum(weights[g] for g in subset)
        witness = [Fraction(0)] * fan.rank
        for g in subset:
            kind, point = generators[g]
            for i in range(fan.rank):
                witness[i] += Fraction(point[i]) * weights[g] / total if kind == "v" else point[i]
        faces.append((key, tuple(witness)))
    return faces


def _bounded_flags(fan, others, sign_rows, directions):
    """recession_trivial for many faces at once"""
    if not directions:
        return [True] * len(sign_rows)
    face_signs = np.array(sign_rows, dtype=np.int64).reshape(len(sign_rows), len(others))
    direction_signs = np.sign(np.array(
        [[_dot(fan.rays[e], d) for e in others] for d in directions], dtype=np.int64,
    ))
    faces = face_signs[:, None, :]
    along = direction_signs[None, :, :]
    inside = np.where(faces == 0, along == 0, along * faces >= 0).all(axis=2)
    return [not flag for flag in inside.any(axis=1)]


def enumerate_faces(fan, ray):
    """All nonempty faces of the arrangement on the slice rho(u) = -1, in sign order"""
    others = [e for e in range(len(fan.rays)) if e != ray]
    directions = recession_directions(fan, ray)
    found = _pool_faces(fan, ray, others, sorted(_arrangement_vertices(fan, ray)), directions)
    if found is None:
        logger.info(f"Ray {ray}: generator pool too large, splitting hyperplanes instead")
        found = _split_faces(fan, ray, others)
    found.sort(key=lambda item: tuple(s for _, s in item[0]))
    flags = _bounded_flags(fan, others, [[s for _, s in signs] for signs, _ in found], directions)
    faces = [
        SignFace(ray=ray, ray_signs=signs, bounded=flag, witness=witness)
        for (signs, witness), flag in zip(found, flags)
    ]
    bounded = sum(1 for f in faces if f.bounded)
    logger.info(f"Ray {ray}: {len(faces)} faces on the slice, {bounded} bounded")
    return faces


def _arrangement_vertices(fan, ray):
    """Points of the slice cut out by rank-1 further hyperplanes"""
    others = [e for e in range(len(fan.rays)) if e != ray]
    vertices = set()
    for chosen in combinations(others, fan.rank - 1):
        matrix = [list(fan.rays[ray])] + [list(fan.rays[e]) for e in chosen]
        if linalg.rank(matrix) < fan.rank:
            continue
        point = linalg.solve(matrix, [-1] + [0] * len(chosen))
        vertices.add(tuple(point))
    return vertices


def _signs_at(fan, ray, point):
    return tuple(
        (e, _sign(_dot(fan.rays[e], point))) for e in range(len(fan.rays)) if e != ray
    )


def _in_closure(face, point_signs):
    return all(_weakly(s, sign) for (_, sign), (_, s) in zip(face.ray_signs, point_signs))


def _face_index(faces):
    return {face.ray_signs: i for i, face in enumerate(faces)}


def _face_of(fan, ray, u, index):
    return index[_signs_at(fan, ray, u)]


def _box_points(box, limit):
    count = 1
    for lo, hi in box:
        count *= max(hi - lo + 1, 0)
    if count > limit:
        raise DegreeScanError(f"bounding box holds {count} lattice points, limit is {limit}")
    return product(*(range(lo, hi + 1) for lo, hi in box))


def candidate_degrees(fan, ray, box=None, limit=None):
    """Degrees u with rho(u) = -1 that may carry H^1 or H^2 contributions.

    With `box` set the certified scan is replaced by all u with |u_i| <= box.
    """
    try:
        limit = limit if limit is not None else get_settings().degree_box_limit
        faces = enumerate_faces(fan, ray)
        index = _face_index(faces)
        found = set()
        if box is not None:
            for u in _box_points([(-box, box)] * fan.rank, limit):
                if pairing(fan, ray, u) == -1:
                    found.add(u)
        else:
            vertex_signs = {v: _signs_at(fan, ray, v) for v in _arrangement_vertices(fan, ray)}
            seen = set()
            for face in faces:
                if not face.bounded:
                    continue
                corners = [v for v, signs in vertex_signs.items() if _in_closure(face, signs)]
                if not corners:
                    # a bounded face always has a vertex in its closure
                    raise DegreeScanError(f"bounded face on ray {ray} without vertices")
                bounds = [
                    (ceil(min(v[i] for v in corners)), floor(max(v[i] for v in corners)))
                    for i in range(fan.rank)
                ]
                for u in _box_points(bounds, limit):
                    if u in seen or pairing(fan, ray, u) != -1:
                        continue
                    seen.add(u)
                    # u lies in a bounded face closure iff its own face is bounded
                    if faces[index[_signs_at(fan, ray, u)]].bounded:
                        found.add(u)
        candidates = sorted(
            DegreeCandidate(ray=ray, u=u, face_id=_face_of(fan, ray, u, index)) for u in found
        )
        logger.info(f"Ray {ray}: {len(candidates)} candidate degrees")
        return candidates
    except Exception as e:
        logger.error(f"Error scanning degrees for ray {ray}: {str(e)}")
        raise


def degree_table(fan, box=None):
    """Candidates for every ray, ordered by (ray, u)"""
    table = []
    for ray in range(len(fan.rays)):
        table.extend(candidate_degrees(fan, ray, box=box))
    return table


def point_face(fan, ray, point, faces):
    """Index of the face containing a rational point of the slice"""
    if sum(Fraction(a) * b for a, b in zip(fan.rays[ray], point)) != -1:
        raise DegreeScanError("point does not lie on the slice")
    return _face_of(fan, ray, point, _face_index(faces))
