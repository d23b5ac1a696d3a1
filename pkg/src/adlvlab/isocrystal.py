"""
Sigma-conjugacy-class invariants for SL_n.

A class [b] is identified with its Newton point: a dominant rational
vector nu with sum 0 whose partial sums are integral at every slope
change.  Equivalently, the polygon i |-> nu_1 + ... + nu_i is concave
with integer vertices at its breakpoints.  All arithmetic is exact
(``fractions.Fraction``); no floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .weyl import two_rho

NewtonPoint = tuple[Fraction, ...]


class InvalidNewtonPoint(ValueError):
    """Vector is not the Newton point of any sigma-conjugacy class of SL_n."""


def pair_2rho(v) -> Fraction:
    """<v, 2 rho> with 2 rho = (n-1, n-3, ..., 1-n).

    >>> pair_2rho((1, 0, -1))
    Fraction(4, 1)
    """
    n = len(v)
    return sum((Fraction(c) * r for c, r in zip(v, two_rho(n))), Fraction(0))


def as_newton_point(coords) -> NewtonPoint:
    """Coerce to exact rationals and validate."""
    nu = tuple(Fraction(c) for c in coords)
    validate_newton_point(nu)
    return nu


def validate_newton_point(nu: NewtonPoint) -> None:
    if sum(nu) != 0:
        raise InvalidNewtonPoint(f"coordinates must sum to 0: {render_vector(nu)}")
    for a, b in zip(nu, nu[1:]):
        if a < b:
            raise InvalidNewtonPoint(f"not dominant: {render_vector(nu)}")
    partial = Fraction(0)
    for i in range(len(nu) - 1):
        partial += nu[i]
        if nu[i] > nu[i + 1] and partial.denominator != 1:
            raise InvalidNewtonPoint(
                f"non-integral partial sum at slope change {i + 1}: {render_vector(nu)}"
            )


def is_newton_point(coords) -> bool:
    try:
        as_newton_point(coords)
    except InvalidNewtonPoint:
        return False
    return True


def best_integral_approx(nu: NewtonPoint) -> tuple[int, ...]:
    """The integer vector whose partial sums are the floors of nu's partial sums.

    >>> best_integral_approx((Fraction(1, 2), Fraction(1, 2), Fraction(-1)))
    (0, 1, -1)
    """
    out = []
    partial = Fraction(0)
    prev_floor = 0
    for c in nu:
        partial += c
        f = partial.numerator // partial.denominator
        out.append(f - prev_floor)
        prev_floor = f
    return tuple(out)


def defect(nu: NewtonPoint) -> int:
    """def(b) = <nu - floor(nu), 2 rho>, a nonnegative integer."""
    floor = best_integral_approx(nu)
    val = pair_2rho(tuple(c - f for c, f in zip(nu, floor)))
    if val.denominator != 1 or val < 0:
        raise AssertionError(f"defect not a nonnegative integer: {val}")
    return int(val)


def dominance_leq(a, b) -> bool:
    """a <= b in dominance order: every partial sum of b - a is >= 0."""
    partial = Fraction(0)
    for x, y in zip(a, b):
        partial += Fraction(y) - Fraction(x)
        if partial < 0:
            return False
    return partial == 0


def mazur_leq(nu: NewtonPoint, mu) -> bool:
    """Mazur's inequality nu <= mu against a dominant integer vector mu."""
    return dominance_leq(nu, mu)


def enumerate_newton_leq(mu) -> list[NewtonPoint]:
    """All Newton points nu <= mu, in ascending lexicographic order.

    Valid Newton points are concave lattice paths (0,0) -> (n,0) with
    integer breakpoints; nu <= mu is checked at the breakpoints, which
    suffices since mu's polygon is concave.
    """
    mu = tuple(int(c) for c in mu)
    n = len(mu)
    if sum(mu) != 0 or any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError(f"mu must be dominant with sum 0: {list(mu)}")
    bound = [0]
    for c in mu:
        bound.append(bound[-1] + c)

    found: list[NewtonPoint] = []

    def emit(path: list[tuple[int, int]]) -> None:
        coords: list[Fraction] = []
        for (ia, ya), (ib, yb) in zip(path, path[1:]):
            coords += [Fraction(yb - ya, ib - ia)] * (ib - ia)
        found.append(tuple(coords))

    def extend(path: list[tuple[int, int]], prev_slope) -> None:
        i0, y0 = path[-1]
        for i1 in range(i0 + 1, n + 1):
            if i1 == n:
                slope = Fraction(-y0, n - i0)
                if prev_slope is None or slope < prev_slope:
                    emit(path + [(n, 0)])
                continue
            y1 = bound[i1]
            while True:
                slope = Fraction(y1 - y0, i1 - i0)
                if prev_slope is not None and slope >= prev_slope:
                    y1 -= 1  # too steep for a strict slope drop; descend
                    continue
                # the straight shot to (n,0) is the flattest continuation;
                # lowering y1 further only raises it, so stop once it fails
                if Fraction(-y1, n - i1) >= slope:
                    break
                extend(path + [(i1, y1)], slope)
                y1 -= 1

    extend([(0, 0)], None)
    return sorted(found)


# ---------------------------------------------------------------------------
# weight multiplicities

_kostant_cache: dict[tuple[int, int, tuple[int, ...]], int] = {}


def kostant_partition(beta) -> int:
    """Number of ways to write beta as a nonnegative integer combination of
    positive roots e_i - e_j (i < j).  Exact big-integer count.
    """
    beta = tuple(int(c) for c in beta)
    if sum(beta) != 0:
        return 0
    return _kostant_count(len(beta), 0, beta)


def _kostant_count(n: int, k: int, rem: tuple[int, ...]) -> int:
    partial = 0
    for c in rem:
        partial += c
        if partial < 0:
            return 0
    if all(c == 0 for c in rem):
        return 1
    roots = positive_roots_list(n)
    if k == len(roots):
        return 0
    key = (n, k, rem)
    hit = _kostant_cache.get(key)
    if hit is not None:
        return hit
    i, j = roots[k]
    total = 0
    cur = list(rem)
    while True:
        total += _kostant_count(n, k + 1, tuple(cur))
        # subtract alpha_{ij} once more while partial sums stay >= 0
        cur[i] -= 1
        cur[j] += 1
        if any(sum(cur[: m + 1]) < 0 for m in range(i, j)):
            break
    _kostant_cache[key] = total
    return total


def positive_roots_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def weight_multiplicity(mu, lam) -> int:
    """dim of the lam weight space of the highest-weight Verma module V_mu,
    i.e. the Kostant partition value P(mu - lam).

    >>> weight_multiplicity((1, 0, -1), (0, 0, 0))
    2
    """
    diff = tuple(int(m) - int(l) for m, l in zip(mu, lam))
    return kostant_partition(diff)


def irreducible_weight_multiplicity(mu, lam) -> int:
    """Weight multiplicity in the irreducible module of highest weight mu,
    by Kostant's alternating-sum formula over the Weyl group.

    Only used by the irr-count calibration report; the dataset feature is
    the Verma value above.
    """
    from itertools import permutations

    mu = tuple(int(c) for c in mu)
    lam = tuple(int(c) for c in lam)
    n = len(mu)
    rho2 = two_rho(n)
    target = tuple(2 * l + r for l, r in zip(lam, rho2))
    doubled = tuple(2 * m + r for m, r in zip(mu, rho2))
    total = 0
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        moved = tuple(doubled[perm[i]] for i in range(n))
        diff2 = tuple(a - b for a, b in zip(moved, target))
        if any(c % 2 for c in diff2):
            continue
        total += sign * kostant_partition(tuple(c // 2 for c in diff2))
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i, j in combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# rendering and parsing

def render_rational(q) -> str:
    """Lowest terms p/q; integers without the /1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_vector(v) -> str:
    """Newton-point list rendering, e.g. '[1/2, 1/2, -1]'."""
    return "[" + ", ".join(render_rational(c) for c in v) + "]"


def parse_vector(text: str, n: int) -> tuple[Fraction, ...]:
    """Parse '1/2,1/2,-1' or '[1/2, 1/2, -1]' into exact rationals."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")] if body else []
    if len(parts) != n:
        raise InvalidNewtonPoint(f"expected {n} coordinates, got {len(parts)}: {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidNewtonPoint(f"bad rational vector: {text!r}") from exc


def parse_newton_point(text: str, n: int) -> NewtonPoint:
    return as_newton_point(parse_vector(text, n))
