"""
The cyclic-shift reduction algorithm: for an affine Weyl element w, the
finite table

    {nu_b : X_w(b) nonempty}  ->  (dim X_w(b), top-component count)

is computed by traversing the equal-length cyclic-shift class of w until
some member admits a length-drop-2 shift s w' s, then recursing on the
two shorter elements (w's, s w' s) and merging; a class with no drop has
minimal length in its conjugacy class and contributes the singleton
{nu_w -> (l(w) - <nu_w, 2rho>, 1)}.

Tables are memoized by canonical (lam, z) key and shared across every
member of a traversed equal-length class (equal-length shifts have
isomorphic varieties).  Results are independent of traversal order; a
seeded rng randomizes the traversal for exactly that check.

Newton points carry denominators dividing lcm(1..n), so tables are keyed
internally by integer vectors scaled by that factor; the public mappings
are exact-rational keyed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Mapping

from . import isocrystal, weyl
from .isocrystal import InvalidNewtonPoint, NewtonPoint
from .weyl import (
    AffineElement,
    _im_length,
    identity_perm,
    left_length_step,
    left_mult_gen,
    perm_act_vec,
    right_length_step,
    right_mult_gen,
    two_rho,
)

Entry = tuple[int, int]  # (dim, irr)
NuKey = tuple[int, ...]  # Newton point times newton_scale(n)
Table = Mapping[NewtonPoint, Entry]
ScaledTable = Mapping[NuKey, Entry]


class BudgetExceededError(RuntimeError):
    """Node budget exhausted; the computation is aborted, never truncated."""

    def __init__(self, nodes: int):
        super().__init__(f"cyclic-shift node budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class ReductionTrace:
    """One reduction step: pivot w' in the class of the source with
    l(s w' s) = l(w) - 2; children are (w' s, s w' s)."""

    pivot: AffineElement
    gen: int
    upper: AffineElement  # w' s, length l(w) - 1
    lower: AffineElement  # s w' s, length l(w) - 2


def newton_scale(n: int) -> int:
    """All Newton-point denominators divide lcm(1..n)."""
    return lcm(*range(1, n + 1))


def key_to_newton(key: NuKey, n: int) -> NewtonPoint:
    m = newton_scale(n)
    return tuple(Fraction(k, m) for k in key)


def newton_to_key(nu, n: int) -> NuKey:
    m = newton_scale(n)
    out = []
    for c in nu:
        scaled = Fraction(c) * m
        if scaled.denominator != 1:
            raise InvalidNewtonPoint(f"denominator of {c} does not divide lcm(1..{n})")
        out.append(int(scaled))
    return tuple(out)


_global_cache: dict[AffineElement, ScaledTable] = {}

# Newton keys and (dim, irr) entries recur across a huge number of tables;
# interning them keeps the memo's footprint dominated by the element keys
_nu_intern: dict[NuKey, NuKey] = {}
_entry_intern: dict[Entry, Entry] = {}


def _intern_nu(key: NuKey) -> NuKey:
    return _nu_intern.setdefault(key, key)


def _intern_entry(entry: Entry) -> Entry:
    return _entry_intern.setdefault(entry, entry)


class _State:
    __slots__ = ("cache", "remaining", "rng")

    def __init__(self, cache, budget, rng):
        self.cache = cache
        self.remaining = budget
        self.rng = rng

    def spend(self, nodes: int = 1) -> None:
        if self.remaining is None:
            return
        self.remaining -= nodes
        if self.remaining < 0:
            raise BudgetExceededError(nodes)


def _newton_key(w: AffineElement) -> NuKey:
    """Scaled Newton point of w by integer power iteration."""
    lam, z = w
    n = len(lam)
    m = weyl.perm_order(z)
    total = list(lam)
    cur = lam
    for _ in range(m - 1):
        cur = perm_act_vec(z, cur)
        for i in range(n):
            total[i] += cur[i]
    total.sort(reverse=True)
    f = newton_scale(n) // m
    return tuple(t * f for t in total)


def _pair_2rho_key(key: NuKey, n: int) -> int:
    """<nu, 2rho> for a scaled key; always an integer for valid Newton points."""
    dot = sum(k * r for k, r in zip(key, two_rho(n)))
    m = newton_scale(n)
    assert dot % m == 0
    return dot // m


def _floor_key(key: NuKey, n: int) -> tuple[int, ...]:
    """Best integral approximation from a scaled key."""
    m = newton_scale(n)
    out = []
    partial = 0
    prev = 0
    for k in key:
        partial += k
        f = partial // m
        out.append(f - prev)
        prev = f
    return tuple(out)


def _defect_key(key: NuKey, n: int) -> int:
    rho = two_rho(n)
    dot_floor = sum(f * r for f, r in zip(_floor_key(key, n), rho))
    return _pair_2rho_key(key, n) - dot_floor


def _dominance_leq_key(a: NuKey, b: NuKey) -> bool:
    partial = 0
    for x, y in zip(a, b):
        partial += y - x
        if partial < 0:
            return False
    return partial == 0


def _base_case(w: AffineElement) -> dict[NuKey, Entry]:
    key = _intern_nu(_newton_key(w))
    dim = _im_length(w) - _pair_2rho_key(key, len(w[0]))
    return {key: _intern_entry((dim, 1))}


def merge_children(upper: Mapping, lower: Mapping) -> dict:
    """Combine child tables across one length-drop-2 reduction.

    Both maps onto the children have irreducible one-dimensional fibres, so
    each present side contributes its dimension plus one; on a tie the
    component counts add, otherwise the strictly higher side wins.
    """
    out = {}
    for nu in upper.keys() | lower.keys():
        u = upper.get(nu)
        v = lower.get(nu)
        if u is not None and v is not None:
            du, dv = u[0] + 1, v[0] + 1
            if du > dv:
                entry = (du, u[1])
            elif dv > du:
                entry = (dv, v[1])
            else:
                entry = (du, u[1] + v[1])
        elif u is not None:
            entry = (u[0] + 1, u[1])
        else:
            entry = (v[0] + 1, v[1])
        out[nu] = _intern_entry(entry)
    return out


def _scan_class(w: AffineElement, st: _State):
    """Traverse the equal-length cyclic-shift class of w.

    Returns (members, pivot) where pivot is (w', gen index, s w' s) for the
    first drop-2 shift encountered, or None if the class is exhausted.
    """
    n = len(w[0])
    seen = {w}
    queue = [w]
    pos = 0
    gen_order = list(range(n))
    while pos < len(queue):
        if st.rng is None:
            u = queue[pos]
            pos += 1
        else:
            k = st.rng.randrange(pos, len(queue))
            queue[pos], queue[k] = queue[k], queue[pos]
            u = queue[pos]
            pos += 1
            st.rng.shuffle(gen_order)
        for i in gen_order:
            su = left_mult_gen(i, u)
            step = left_length_step(u, i) + right_length_step(su, i)
            if step == -2:
                return seen, (u, i, right_mult_gen(su, i))
            if step == 0:
                v = right_mult_gen(su, i)
                if v not in seen:
                    st.spend()
                    seen.add(v)
                    queue.append(v)
    return seen, None


def _table(w: AffineElement, st: _State) -> ScaledTable:
    hit = st.cache.get(w)
    if hit is not None:
        return hit
    st.spend()
    lam, z = w
    if z == identity_perm(len(lam)):
        # translations: every cyclic shift is again a translation of equal
        # length, so w has minimal length in its conjugacy class
        table: ScaledTable = MappingProxyType(_base_case(w))
        st.cache[w] = table
        return table
    members, pivot = _scan_class(w, st)
    if pivot is None:
        table = MappingProxyType(_base_case(w))
    else:
        u, i, sus = pivot
        upper = _table(right_mult_gen(u, i), st)
        lower = _table(sus, st)
        table = MappingProxyType(merge_children(upper, lower))
    for member in members:
        st.cache[member] = table
    return table


def compute_table_scaled(
    w: AffineElement,
    *,
    cache: dict | None = None,
    budget: int | None = None,
    rng: random.Random | None = None,
) -> ScaledTable:
    """Invariant table keyed by scaled Newton vectors (the fast interface)."""
    if cache is None:
        cache = {} if rng is not None else _global_cache
    return _table(w, _State(cache, budget, rng))


def compute_table(
    w: AffineElement,
    *,
    cache: dict | None = None,
    budget: int | None = None,
    rng: random.Random | None = None,
) -> Table:
    """Full invariant table of w: Newton point -> (dim, irr).

    ``cache`` defaults to a process-wide memo; randomized runs (``rng``)
    use a private cache unless one is passed explicitly, so that the
    traversal-order independence check is not short-circuited by memo hits.
    """
    n = len(w[0])
    scaled = compute_table_scaled(w, cache=cache, budget=budget, rng=rng)
    return MappingProxyType({key_to_newton(k, n): v for k, v in scaled.items()})


def find_reduction(w: AffineElement) -> ReductionTrace | None:
    """Deterministic first reduction step, or None if w has minimal length
    in its conjugacy class."""
    st = _State({}, None, None)
    _, pivot = _scan_class(w, st)
    if pivot is None:
        return None
    u, i, sus = pivot
    return ReductionTrace(pivot=u, gen=i, upper=right_mult_gen(u, i), lower=sus)


def cyclic_shift_class(w: AffineElement, budget: int | None = None) -> set[AffineElement]:
    """The full equal-length cyclic-shift class of w (ignores drops)."""
    n = len(w[0])
    lw = _im_length(w)
    seen = {w}
    queue = [w]
    pos = 0
    while pos < len(queue):
        u = queue[pos]
        pos += 1
        for i in range(n):
            su = left_mult_gen(i, u)
            if left_length_step(u, i) + right_length_step(su, i) == 0:
                v = right_mult_gen(su, i)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
                    if budget is not None and len(seen) > budget:
                        raise BudgetExceededError(len(seen))
    assert all(_im_length(u) == lw for u in seen)
    return seen


# ---------------------------------------------------------------------------
# queries and derived invariants


def query(
    w: AffineElement,
    nu,
    *,
    cache: dict | None = None,
    budget: int | None = None,
) -> tuple[int | None, int]:
    """(dim, irr) at nu; (None, 0) when X_w(b) is empty.  An invalid nu is
    rejected with InvalidNewtonPoint rather than reported empty."""
    nu = isocrystal.as_newton_point(nu)
    if len(nu) != len(w[0]):
        raise InvalidNewtonPoint("rank mismatch between w and nu")
    key = newton_to_key(nu, len(nu))
    entry = compute_table_scaled(w, cache=cache, budget=budget).get(key)
    if entry is None:
        return None, 0
    return entry


def virtual_dimension(w: AffineElement, nu) -> Fraction:
    """d_w(b) = (l(w) + l(eta(w)))/2 - <nu, rho> - def(b)/2."""
    nu = isocrystal.as_newton_point(nu)
    lw = weyl.affine_length(w)
    leta = weyl.perm_length(weyl.eta(w))
    return (
        Fraction(lw + leta, 2)
        - isocrystal.pair_2rho(nu) / 2
        - Fraction(isocrystal.defect(nu), 2)
    )


def _generic_key(scaled: ScaledTable, w: AffineElement) -> NuKey:
    support = list(scaled)
    best = support[0]
    for key in support[1:]:
        if _dominance_leq_key(best, key):
            best = key
    if not all(_dominance_leq_key(key, best) for key in support):
        raise AssertionError(f"no unique dominance maximum in support of {w}")
    return best


def generic_sigma_class(
    w: AffineElement, *, cache: dict | None = None, budget: int | None = None
) -> NewtonPoint:
    """The dominance-maximal Newton point in the support of w's table."""
    scaled = compute_table_scaled(w, cache=cache, budget=budget)
    return key_to_newton(_generic_key(scaled, w), len(w[0]))


def delta_values_scaled(
    w: AffineElement, *, cache: dict | None = None, budget: int | None = None
) -> dict[NuKey, int]:
    """Delta_w(b) = d_w(b) - dim X_w(b) over the support, scaled-key interface."""
    n = len(w[0])
    lw = _im_length(w)
    leta = weyl.perm_length(weyl.eta(w))
    out = {}
    for key, (dim, _) in compute_table_scaled(w, cache=cache, budget=budget).items():
        twice = lw + leta - _pair_2rho_key(key, n) - _defect_key(key, n) - 2 * dim
        if twice % 2 or twice < 0:
            raise AssertionError(f"virtual dimension defect {twice}/2 at {key} for {w}")
        out[key] = twice // 2
    return out


def delta_values(
    w: AffineElement, *, cache: dict | None = None, budget: int | None = None
) -> dict[NewtonPoint, int]:
    """Delta_w(b) over the support; integers >= 0."""
    n = len(w[0])
    scaled = delta_values_scaled(w, cache=cache, budget=budget)
    return {key_to_newton(k, n): v for k, v in scaled.items()}


def cordiality(
    w: AffineElement, *, cache: dict | None = None, budget: int | None = None
) -> tuple[bool, int]:
    """(is_cordial, max of d_w(b) - dim over the support)."""
    max_delta = max(delta_values_scaled(w, cache=cache, budget=budget).values())
    return max_delta == 0, max_delta


def table_lines(table: Table) -> list[str]:
    """Printed listing, one entry per line, generic class first."""
    lines = []
    for nu in sorted(table, reverse=True):
        dim, irr = table[nu]
        lines.append(
            f"Newton point = {isocrystal.render_vector(nu)}, dim = {dim}, irr = {irr}"
        )
    return lines


def clear_cache() -> None:
    _global_cache.clear()
    _nu_intern.clear()
    _entry_intern.clear()


def global_cache_size() -> int:
    return len(_global_cache)
