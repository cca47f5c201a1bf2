import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

logger = logging.getLogger(__name__)

GE = ">="
GT = ">"
EQ = "=="


@dataclass(frozen=True)
class Constraint:
    """coeffs . x + constant (>= 0 | > 0 | == 0)"""
    coeffs: tuple
    constant: Fraction
    kind: str = GE

    def evaluate(self, point):
        return sum((Fraction(a) * x for a, x in zip(self.coeffs, point)), Fraction(self.constant))

    def holds(self, point):
        value = self.evaluate(point)
        if self.kind == EQ:
            return value == 0
        if self.kind == GT:
            return value > 0
        return value >= 0


def _normalized(coeffs, constant, kind):
    """Scale to coprime integers so duplicates collapse"""
    values = [Fraction(a) for a in coeffs] + [Fraction(constant)]
    scale = lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    if kind == EQ:
        lead = next((x for x in ints if x), 0)
        if lead < 0:
            ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1]), kind


def _constant_ok(constant, kind):
    if kind == EQ:
        return constant == 0
    if kind == GT:
        return constant > 0
    return constant >= 0


def _eliminate_equalities(constraints, dim):
    """Substitute equalities; returns (inequalities, substitutions) or None"""
    substitutions = []
    current = [(list(c.coeffs), Fraction(c.constant), c.kind) for c in constraints]
    while True:
        eq_index = next(
            (i for i, (a, _, k) in enumerate(current) if k == EQ and any(a)), None
        )
        if eq_index is None:
            break
        a, b, _ = current.pop(eq_index)
        var = next(j for j, x in enumerate(a) if x)
        pivot = Fraction(a[var])
        # x_var = -(b + sum_{j != var} a_j x_j) / pivot
        expr = [Fraction(-x) / pivot if j != var else Fraction(0) for j, x in enumerate(a)]
        expr_const = -b / pivot
        substitutions.append((var, expr, expr_const))
        updated = []
        for coeffs, const, kind in current:
            factor = coeffs[var]
            if factor:
                coeffs = [c + factor * e if j != var else Fraction(0) for j, (c, e) in enumerate(zip(coeffs, expr))]
                const = const + factor * expr_const
            updated.append((coeffs, const, kind))
        current = updated
    inequalities = []
    for coeffs, const, kind in current:
        if not any(coeffs):
            if not _constant_ok(const, kind):
                return None
            continue
        inequalities.append(_normalized(coeffs, const, kind))
    return list(dict.fromkeys(inequalities)), substitutions


def _fourier_motzkin(inequalities, variables):
    """Eliminate variables in order; returns stage history or None if infeasible"""
    stages = []
    current = inequalities
    for var in variables:
        positive, negative, rest = [], [], []
        for row in current:
            coeff = row[0][var]
            if coeff > 0:
                positive.append(row)
            elif coeff < 0:
                negative.append(row)
            else:
                rest.append(row)
        stages.append((var, positive, negative))
        joined = list(rest)
        for p_coeffs, p_const, p_kind in positive:
            for n_coeffs, n_const, n_kind in negative:
                ps = p_coeffs[var]
                ns = -n_coeffs[var]
                coeffs = [pc * ns + nc * ps for pc, nc in zip(p_coeffs, n_coeffs)]
                const = p_const * ns + n_const * ps
                kind = GT if GT in (p_kind, n_kind) else GE
                if not any(coeffs):
                    if not _constant_ok(const, kind):
                        return None
                    continue
                joined.append(_normalized(coeffs, const, kind))
        current = list(dict.fromkeys(joined))
    for coeffs, const, kind in current:
        if not _constant_ok(const, kind):
            return None
    return stages


def _pick(lower, upper):
    """A value inside the interval described by (value, strict) bounds"""
    if lower is not None and upper is not None:
        (lo, lo_strict), (hi, hi_strict) = lower, upper
        if lo < hi:
            return (lo + hi) / 2
        if lo == hi and not lo_strict and not hi_strict:
            return lo
        return None
    if lower is not None:
        return lower[0] + 1
    if upper is not None:
        return upper[0] - 1
    return Fraction(0)


def _bound(bounds, candidate, strict, tighter):
    if bounds is None or tighter(candidate, bounds[0]) or (candidate == bounds[0] and strict):
        return (candidate, strict)
    return bounds


def find_point(constraints, dim):
    """Rational point satisfying all constraints, or None when infeasible"""
    reduced = _eliminate_equalities(constraints, dim)
    if reduced is None:
        return None
    inequalities, substitutions = reduced
    substituted = {var for var, _, _ in substitutions}
    free = [j for j in range(dim) if j not in substituted]
    stages = _fourier_motzkin(inequalities, free)
    if stages is None:
        return None
    point = [Fraction(0)] * dim
    assigned = set()
    for var, positive, negative in reversed(stages):
        lower = upper = None
        for coeffs, const, kind in positive:
            # coeffs[var] * x + rest >= 0  ->  x >= -rest / coeffs[var]
            rest = const + sum(coeffs[j] * point[j] for j in assigned)
            lower = _bound(lower, -rest / coeffs[var], kind == GT, lambda a, b: a > b)
        for coeffs, const, kind in negative:
            rest = const + sum(coeffs[j] * point[j] for j in assigned)
            upper = _bound(upper, -rest / coeffs[var], kind == GT, lambda a, b: a < b)
        value = _pick(lower, upper)
        if value is None:
            logger.error(f"Back-substitution failed on variable {var}")
            return None
        point[var] = value
        assigned.add(var)
    for var, expr, expr_const in reversed(substitutions):
        point[var] = expr_const + sum(e * point[j] for j, e in enumerate(expr) if e)
    return tuple(point)


def is_feasible(constraints, dim):
    return find_point(constraints, dim) is not None
