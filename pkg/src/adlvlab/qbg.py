"""
Quantum Bruhat graph on S_n, shortest-path distances, length-positive
sets, and the numerical verification of the dimension lower bound.

Edges go u -> u s_alpha for positive roots alpha = e_i - e_j: Bruhat
edges raise the length by 1, quantum edges lower it by <alpha^v, 2rho> - 1
(= 2(j - i) - 1 in type A).  Everything here is for split SL_n, where the
Frobenius acts trivially.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import adlv, weyl
from .weyl import (
    AffineElement,
    Perm,
    affine_length,
    all_perms,
    longest_perm,
    perm_length,
    perm_mult,
    positive_roots,
    reflection_length,
    transposition,
    two_rho,
)


@dataclass
class QuantumBruhatGraph:
    n: int
    vertices: list[Perm]
    edges: list[tuple[Perm, Perm, tuple[int, int], str]]
    adjacency: dict[Perm, list[Perm]]
    _dist: dict[Perm, dict[Perm, int]] = field(default_factory=dict, repr=False)


_graphs: dict[int, QuantumBruhatGraph] = {}


def build_graph(n: int) -> QuantumBruhatGraph:
    """Full quantum Bruhat graph of S_n (cached per rank)."""
    if n < 2:
        raise ValueError("rank n must be >= 2")
    if n in _graphs:
        return _graphs[n]
    vertices = all_perms(n)
    lengths = {u: perm_length(u) for u in vertices}
    edges = []
    adjacency: dict[Perm, list[Perm]] = {u: [] for u in vertices}
    for u in vertices:
        for i, j in positive_roots(n):
            v = perm_mult(u, transposition(n, i, j))
            if lengths[v] == lengths[u] + 1:
                kind = "bruhat"
            elif lengths[v] == lengths[u] + 1 - 2 * (j - i):
                kind = "quantum"
            else:
                continue
            edges.append((u, v, (i, j), kind))
            adjacency[u].append(v)
    g = QuantumBruhatGraph(n=n, vertices=vertices, edges=edges, adjacency=adjacency)
    _graphs[n] = g
    return g


def distance(g: QuantumBruhatGraph, u: Perm, v: Perm) -> int:
    """BFS shortest-path length from u to v (all-pairs table built lazily)."""
    dist = g._dist.get(u)
    if dist is None:
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for a in frontier:
                for b in g.adjacency[a]:
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        g._dist[u] = dist
    return dist[v]


@dataclass(frozen=True)
class LengthPositiveSet:
    source: AffineElement
    members: frozenset[Perm]


def lp_set(w: AffineElement) -> LengthPositiveSet:
    """All v with <z^-1 lam, v alpha> + delta(z v alpha) - delta(v alpha) >= 0
    for every positive root alpha."""
    lam, z = w
    n = len(lam)
    v_of = tuple(lam[zi] for zi in z)  # z^-1 lam
    roots = positive_roots(n)
    members = []
    for v in all_perms(n):
        ok = True
        for i, j in roots:
            a, b = v[i], v[j]
            val = v_of[a] - v_of[b]
            if z[a] > z[b]:
                val += 1
            if a > b:
                val -= 1
            if val < 0:
                ok = False
                break
        if ok:
            members.append(v)
    return LengthPositiveSet(source=w, members=frozenset(members))


def generic_floor_pairing(w: AffineElement) -> int:
    """<floor(b_w), 2rho> = l(w) - min over length-positive v of the
    graph distance from v to z v."""
    lam, z = w
    g = build_graph(len(lam))
    best = min(distance(g, v, perm_mult(z, v)) for v in lp_set(w).members)
    return affine_length(w) - best


def theorem_bound(n: int) -> int:
    """(l(w_0) - l_R(w_0)) / 2, which evaluates to k(k-1) for n = 2k and
    k^2 for n = 2k + 1."""
    w0 = longest_perm(n)
    num = perm_length(w0) - reflection_length(w0)
    assert num % 2 == 0
    bound = num // 2
    k = n // 2
    assert bound == (k * (k - 1) if n % 2 == 0 else k * k)
    return bound


def witness_element(n: int) -> AffineElement:
    """t^{2 rho^v} w_0, which attains the bound."""
    return two_rho(n), longest_perm(n)


@dataclass
class BoundReport:
    n: int
    max_len: int
    bound: int
    observed_max: int
    attained_count: int
    attained_at: list[str]
    witness_length: int
    witness_delta: int
    witness_ok: bool
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_len": self.max_len,
            "bound": self.bound,
            "observed_max": self.observed_max,
            "attained_count": self.attained_count,
            "attained_at": self.attained_at,
            "witness_length": self.witness_length,
            "witness_delta": self.witness_delta,
            "witness_ok": self.witness_ok,
            "elapsed": self.elapsed,
        }


def verify_bound(
    n: int,
    max_len: int,
    *,
    budget: int | None = None,
    cache: dict | None = None,
    attained_cap: int = 20,
    check_witness: bool = True,
) -> BoundReport:
    """Scan all w with l(w) < max_len for the maximum of d_w(b) - dim X_w(b)
    and independently check the witness t^{2 rho^v} w_0 attains the bound."""
    start = time.monotonic()
    bound = theorem_bound(n)
    observed = 0
    attained: list[str] = []
    attained_count = 0
    for w in weyl.elements_of_length_below(n, max_len):
        delta = max(adlv.delta_values(w, cache=cache, budget=budget).values())
        if delta > observed:
            observed = delta
            attained = [weyl.print_element(w)]
            attained_count = 1
        elif delta == observed:
            attained_count += 1
            if len(attained) < attained_cap:
                attained.append(weyl.print_element(w))
    witness = witness_element(n)
    wlen = affine_length(witness)
    wdelta = -1
    if check_witness:
        wdelta = max(adlv.delta_values(witness, cache=cache, budget=budget).values())
    return BoundReport(
        n=n,
        max_len=max_len,
        bound=bound,
        observed_max=observed,
        attained_count=attained_count,
        attained_at=attained,
        witness_length=wlen,
        witness_delta=wdelta,
        witness_ok=(wdelta == bound),
        elapsed=time.monotonic() - start,
    )
