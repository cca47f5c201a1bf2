"""Brute-force Cech cohomology of O(D_rho) and the cochain-level cup constructions"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from toricdeform.errors import ContractError
from toricdeform.services.cup_product import TARGET, Derivation, bracket, cup_degree_rule
from toricdeform.services.fan_core import pairing, section_membership

logger = logging.getLogger(__name__)

MAX_ALTERNATING_DEGREE = 2


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _permutation_parity(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _zero_like(value):
    return Derivation() if isinstance(value, Derivation) else Fraction(0)


def _scale(value, factor):
    if isinstance(value, Derivation):
        return value.scaled(factor)
    return Fraction(factor) * value


def _is_zero(value):
    return value.is_zero() if isinstance(value, Derivation) else value == 0


@dataclass(frozen=True)
class DivisorCechComplex:
    ray: int
    u: tuple
    cone_count: int
    bases: tuple  # bases[p]: admissible sorted (p+1)-tuples of maximal cones
    positions: tuple = field(default=(), compare=False)

    def _entries(self, p):
        column_of = self.positions[p]
        entries = {}
        for i, t in enumerate(self.bases[p + 1]):
            row = {}
            for k in range(len(t)):
                j = column_of.get(t[:k] + t[k + 1:])
                if j is not None:
                    row[j] = QQ((-1) ** k)
            if row:
                entries[i] = row
        return entries

    def matrix(self, p):
        """d^p as a sparse DomainMatrix: rows bases[p+1], columns bases[p]"""
        return DomainMatrix(self._entries(p), (len(self.bases[p + 1]), len(self.bases[p])), QQ)

    def rank(self, p):
        if p < 0 or p + 1 >= len(self.bases):
            return 0
        if not self.bases[p] or not self.bases[p + 1]:
            return 0
        return self.matrix(p).rank()

    def dim(self, p):
        return len(self.bases[p]) - self.rank(p) - self.rank(p - 1)

    def is_coboundary(self, p, values):
        """Whether a p-cochain {sorted tuple: coefficient} lies in the image of d^(p-1)"""
        for key, value in values.items():
            if value and key not in self.positions[p]:
                raise ContractError(f"cochain is nonzero on non-admissible tuple {list(key)}")
        if not any(values.values()):
            return True
        if p == 0 or not self.bases[p - 1]:
            return False
        entries = self._entries(p - 1)
        extra = len(self.bases[p - 1])
        for i, t in enumerate(self.bases[p]):
            value = Fraction(values.get(t, 0))
            if value:
                entries.setdefault(i, {})[extra] = QQ(value.numerator, value.denominator)
        shape = (len(self.bases[p]), extra + 1)
        return DomainMatrix(entries, shape, QQ).rank() == self.rank(p - 1)


def build_divisor_complex(fan, ray, u, top=3):
    """Admissible tuples in Cech degrees 0..top for O(D_rho) in degree u"""
    cone_sets = [frozenset(cone.ray_indices) for cone in fan.max_cones]
    bases = []
    for p in range(top + 1):
        admissible = []
        for t in combinations(range(len(cone_sets)), p + 1):
            common = frozenset.intersection(*(cone_sets[c] for c in t))
            if section_membership(fan, ray, u, common):
                admissible.append(t)
        bases.append(tuple(admissible))
    positions = tuple({t: i for i, t in enumerate(b)} for b in bases)
    return DivisorCechComplex(
        ray=ray, u=tuple(u), cone_count=len(cone_sets), bases=tuple(bases), positions=positions,
    )


def divisor_cohomology_dim(fan, ray, u, p):
    """dim H^p(X, O(D_rho))_u for p in 0, 1, 2"""
    if p not in (0, 1, 2):
        raise ContractError(f"cohomological degree {p} is not supported")
    complex = build_divisor_complex(fan, ray, u, top=p + 1)
    return complex.dim(p)


def singular_extension(alternating, p, indices):
    """Alternating cochain {sorted tuple: value} as a singular cochain on all ordered tuples"""
    result = {}
    for t in product(indices, repeat=p + 1):
        if len(set(t)) < len(t):
            continue
        order = sorted(range(p + 1), key=lambda k: t[k])
        key = tuple(t[k] for k in order)
        if key in alternating:
            result[t] = _scale(alternating[key], _permutation_parity(order))
    return result


def phi_antisymmetrize(singular, p, indices):
    """(1/(p+1)!) sum over permutations of sign * f, kept on sorted tuples"""
    if p > MAX_ALTERNATING_DEGREE:
        raise ContractError(f"antisymmetrization is only supported for p <= {MAX_ALTERNATING_DEGREE}")
    sample = next(iter(singular.values()), Fraction(0))
    zero = _zero_like(sample)
    result = {}
    for t in combinations(sorted(indices), p + 1):
        total = zero
        for perm in permutations(range(p + 1)):
            value = singular.get(tuple(t[k] for k in perm))
            if value is not None:
                total = total + _scale(value, _permutation_parity(perm))
        total = _scale(total, Fraction(1, factorial(p + 1)))
        if not _is_zero(total):
            result[t] = total
    return result


def singular_coboundary(singular, p, indices):
    """d f on all ordered (p+2)-tuples: sum_k (-1)^k f(omit k)"""
    sample = next(iter(singular.values()), Fraction(0))
    zero = _zero_like(sample)
    result = {}
    for t in product(indices, repeat=p + 2):
        total = zero
        for k in range(p + 2):
            value = singular.get(t[:k] + t[k + 1:])
            if value is not None:
                total = total + _scale(value, (-1) ** k)
        if not _is_zero(total):
            result[t] = total
    return result


def alternating_coboundary(alternating, p, indices):
    """d f on sorted (p+2)-tuples of an alternating cochain"""
    sample = next(iter(alternating.values()), Fraction(0))
    zero = _zero_like(sample)
    result = {}
    for t in combinations(sorted(indices), p + 2):
        total = zero
        for k in range(p + 2):
            value = alternating.get(t[:k] + t[k + 1:])
            if value is not None:
                total = total + _scale(value, (-1) ** k)
        if not _is_zero(total):
            result[t] = total
    return result


def alternating_cup(fan, first, second, indices):
    """Cup of derivation-valued alternating 1-cochains: phi^2 of [f_ij, f'_jk]"""
    singular_first = singular_extension(first, 1, indices)
    singular_second = singular_extension(second, 1, indices)
    product_cochain = {}
    for i, j, k in product(indices, repeat=3):
        a = singular_first.get((i, j))
        b = singular_second.get((j, k))
        if a is None or b is None:
            continue
        value = bracket(fan, a, b)
        if not value.is_zero():
            product_cochain[(i, j, k)] = value
    if not product_cochain:
        return {}
    return phi_antisymmetrize(product_cochain, 2, indices)


def _values(cochain):
    values = getattr(cochain, "values", cochain)
    return {key[0] if isinstance(key, tuple) else key: Fraction(v) for key, v in values.items()}


def _antisymmetric_factor(f, f2, s, t, g):
    return (
        f.get(s, 0) * f2.get(t, 0) - f.get(t, 0) * f2.get(s, 0)
        + f.get(g, 0) * f2.get(s, 0) - f.get(s, 0) * f2.get(g, 0)
        + f.get(t, 0) * f2.get(g, 0) - f.get(g, 0) * f2.get(t, 0)
    )


def theta_cocycle(fan, f, f2, ray, u, ray2, u2):
    """theta on every triple of maximal cones, from the closed formula"""
    a, b = _values(f), _values(f2)
    derivation = bracket(fan, Derivation.of(ray, u), Derivation.of(ray2, u2))
    theta = {}
    for t in combinations(range(len(fan.max_cones)), 3):
        factor = Fraction(_antisymmetric_factor(a, b, *t), 2)
        if factor and not derivation.is_zero():
            theta[t] = derivation.scaled(factor)
    return theta


def theta_via_cup(fan, f, f2, ray, u, ray2, u2):
    """theta again, through the connecting map and the singular cup formula"""
    a, b = _values(f), _values(f2)
    indices = list(range(len(fan.max_cones)))
    first, second = {}, {}
    for s, t in combinations(indices, 2):
        da = a.get(t, 0) - a.get(s, 0)
        db = b.get(t, 0) - b.get(s, 0)
        if da:
            first[(s, t)] = Derivation.of(ray, u, da)
        if db:
            second[(s, t)] = Derivation.of(ray2, u2, db)
    return alternating_cup(fan, first, second, indices)


@dataclass(frozen=True)
class KappaPair:
    ray: int
    ray2: int
    degree: tuple
    kappa: dict
    kappa2: dict


def kappa_pair(fan, f, f2, ray, u, ray2, u2):
    a, b = _values(f), _values(f2)
    c = Fraction(pairing(fan, ray2, u), 2)
    c2 = Fraction(pairing(fan, ray, u2), 2)
    kappa, kappa2 = {}, {}
    for t in combinations(range(len(fan.max_cones)), 3):
        factor = _antisymmetric_factor(a, b, *t)
        if factor and c:
            kappa[t] = c * factor
        if factor and c2:
            kappa2[t] = c2 * factor
    return KappaPair(ray=ray, ray2=ray2, degree=_add(u, u2), kappa=kappa, kappa2=kappa2)


def eta_image(values, ray, degree):
    """Substitute chi^w in the O(D_rho) summand by d(rho, w)"""
    return {t: Derivation.of(ray, degree, v) for t, v in values.items() if v}


def kappa_theta_matches(fan, f, f2, ray, u, ray2, u2):
    """eta(kappa') - eta(kappa) equals theta entrywise"""
    pair = kappa_pair(fan, f, f2, ray, u, ray2, u2)
    theta = theta_cocycle(fan, f, f2, ray, u, ray2, u2)
    image = eta_image(pair.kappa2, ray2, pair.degree)
    for t, v in eta_image(pair.kappa, ray, pair.degree).items():
        image[t] = image.get(t, Derivation()) - v
    image = {t: v for t, v in image.items() if not v.is_zero()}
    return image == theta


def kappa_regular(fan, pair):
    """Each nonzero kappa entry is a section of O(D_rho) on the triple intersection"""
    cone_sets = [frozenset(cone.ray_indices) for cone in fan.max_cones]
    for values, ray in ((pair.kappa, pair.ray), (pair.kappa2, pair.ray2)):
        for t, v in values.items():
            common = frozenset.intersection(*(cone_sets[c] for c in t))
            if v and not section_membership(fan, ray, pair.degree, common):
                return False
    return True


def kappa_classes(fan, f, f2, ray, u, ray2, u2):
    """(summand ray, on the slice, vanishes in H^2) for each nonzero kappa"""
    if ray == ray2:
        raise ContractError("the kappa route needs distinct rays")
    pair = kappa_pair(fan, f, f2, ray, u, ray2, u2)
    if not kappa_regular(fan, pair):
        raise ContractError("kappa is not regular on some triple intersection")
    classes = []
    for values, target in ((pair.kappa, ray), (pair.kappa2, ray2)):
        if not values:
            continue
        complex = build_divisor_complex(fan, target, pair.degree, top=2)
        on_slice = pairing(fan, target, pair.degree) == -1
        classes.append((target, on_slice, complex.is_coboundary(2, values)))
    return classes


def kappa_route_vanishes(fan, f, f2, ray, u, ray2, u2):
    """Cup class vanishes iff both kappa classes vanish in H^2 of their summands"""
    return all(vanishes for _, _, vanishes in kappa_classes(fan, f, f2, ray, u, ray2, u2))


def connecting_lift_matches(fan, f, f2, ray, u, ray2, u2):
    """d of the lift of g to all pairs of cones equals the negated target component of the cup class.

    The cup class is -kappa in the rho summand and kappa' in the rho' summand,
    so the expected coboundary is kappa or -kappa' respectively.
    """
    selection = cup_degree_rule(fan, ray, u, ray2, u2)
    if selection.kind != TARGET:
        raise ContractError("connecting map check needs a target summand")
    a, b = _values(f), _values(f2)
    pair = kappa_pair(fan, f, f2, ray, u, ray2, u2)
    if selection.target_ray == ray:
        coefficient, kappa = Fraction(pairing(fan, ray2, u), 2), pair.kappa
    else:
        # exchanged roles: c (f'_s f_t - f'_t f_s) equals -c (f_s f'_t - f_t f'_s)
        coefficient, kappa = -Fraction(pairing(fan, ray, u2), 2), {t: -v for t, v in pair.kappa2.items()}
    indices = range(len(fan.max_cones))
    lift = {}
    for s, t in combinations(indices, 2):
        value = coefficient * (a.get(s, 0) * b.get(t, 0) - a.get(t, 0) * b.get(s, 0))
        if value:
            lift[(s, t)] = value
    boundary = alternating_coboundary(lift, 1, indices)
    return boundary == {t: v for t, v in kappa.items() if v}
