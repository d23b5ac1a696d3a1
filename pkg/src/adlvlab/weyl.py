"""
Exact arithmetic in the finite symmetric group S_n and the affine Weyl
group of type A_{n-1} (rank parameter n).

Permutations are tuples in one-line notation over ``range(n)``:
``z[i]`` is the image of ``i``.  Composition is ``(a * b)(i) = a(b(i))``,
so in a product the rightmost factor acts first.  A word
``[i1, ..., ir]`` of generator indices denotes the product
``s_{i1} . s_{i2} ... s_{ir}`` in listed order.

Affine elements t^lam z are ``(lam, z)`` pairs where ``lam`` is an
integer vector summing to zero.  The group law is

    t^lam z . t^mu z' = t^{lam + z mu} (z z'),   (z mu)_i = mu_{z^-1(i)}.

The special affine reflection is s_0 = (1 n) t^(-1,0,...,0,1), i.e. the
pair ``((1,0,...,0,-1), transposition(0, n-1))`` in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
import re

Perm = tuple[int, ...]
IntVec = tuple[int, ...]
AffineElement = tuple[IntVec, Perm]


class ParseError(ValueError):
    """Malformed element notation or out-of-range data."""


# ---------------------------------------------------------------------------
# finite permutations


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def longest_perm(n: int) -> Perm:
    """The longest element w_0, i.e. the order-reversing permutation."""
    return tuple(n - 1 - i for i in range(n))


def perm_mult(a: Perm, b: Perm) -> Perm:
    """(a b)(i) = a(b(i)); b acts first."""
    return tuple(a[bi] for bi in b)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def perm_length(a: Perm) -> int:
    """Coxeter length = number of inversions.

    >>> perm_length((2, 1, 0))
    3
    """
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


def perm_order(a: Perm) -> int:
    return lcm(*(len(c) for c in cycles(a))) if a else 1


def cycles(a: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles (fixed points included), each starting at its least element."""
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = a[j]
        out.append(tuple(c))
    return out


def reflection_length(a: Perm) -> int:
    """Minimal number of (not necessarily simple) transpositions with product a.

    >>> reflection_length((2, 1, 0))
    1
    """
    return len(a) - len(cycles(a))


def all_perms(n: int) -> list[Perm]:
    """All of S_n in lexicographic one-line order."""
    from itertools import permutations

    return [tuple(p) for p in permutations(range(n))]


def perm_act_vec(z: Perm, v: tuple) -> tuple:
    """(z v)_i = v_{z^-1(i)}: coordinate i of the output comes from z^-1(i)."""
    out = [None] * len(z)
    for j, zj in enumerate(z):
        out[zj] = v[j]
    return tuple(out)


def apply_perm_to_root(z: Perm, i: int, j: int) -> tuple[int, int]:
    """Image of the root e_i - e_j: z(e_i - e_j) = e_{z(i)} - e_{z(j)}."""
    return z[i], z[j]


def is_negative_root(i: int, j: int) -> bool:
    """delta(alpha_{ij}) = 1 exactly when the root e_i - e_j is negative."""
    return i > j


def positive_roots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def reduced_word(z: Perm) -> list[int]:
    """A reduced word [i1,...,ir] (1-indexed letters) with z = s_i1 ... s_ir.

    Letters are peeled from the left, smallest descent first, so the word is
    canonical.

    >>> reduced_word((2, 0, 1))
    [1, 2]
    """
    z = tuple(z)
    inv = perm_inverse(z)
    word: list[int] = []
    while True:
        for i in range(len(z) - 1):
            if inv[i] > inv[i + 1]:
                word.append(i + 1)
                # left-multiply by s_i: swap the values i, i+1
                z = tuple(i + 1 if v == i else i if v == i + 1 else v for v in z)
                inv = perm_inverse(z)
                break
        else:
            return word


# ---------------------------------------------------------------------------
# affine elements


def affine_identity(n: int) -> AffineElement:
    return (0,) * n, identity_perm(n)


def translation(lam) -> AffineElement:
    lam = tuple(int(a) for a in lam)
    if sum(lam) != 0:
        raise ParseError(f"translation vector must sum to 0, got {list(lam)}")
    return lam, identity_perm(len(lam))


def simple_reflections(n: int) -> tuple[AffineElement, ...]:
    """The affine generators (s_0, s_1, ..., s_{n-1})."""
    zero = (0,) * n
    s0_lam = (1,) + (0,) * (n - 2) + (-1,)
    gens = [(s0_lam, transposition(n, 0, n - 1))]
    gens += [(zero, transposition(n, i, i + 1)) for i in range(n - 1)]
    return tuple(gens)


def multiply(a: AffineElement, b: AffineElement) -> AffineElement:
    """Group law t^lam z . t^mu z' = t^{lam + z mu} (z z')."""
    lam, z = a
    mu, zp = b
    if len(lam) != len(mu):
        raise ValueError("rank mismatch")
    new_lam = list(lam)
    for j, zj in enumerate(z):
        new_lam[zj] += mu[j]
    return tuple(new_lam), perm_mult(z, zp)


def inverse(w: AffineElement) -> AffineElement:
    lam, z = w
    zi = perm_inverse(z)
    return tuple(-lam[zj] for zj in z), zi


def rank(w: AffineElement) -> int:
    return len(w[0])


def two_rho(n: int) -> IntVec:
    """2*rho = (n-1, n-3, ..., 1-n), the sum of the positive roots."""
    return tuple(n - 1 - 2 * i for i in range(n))


def _stable_sorting_perm(v: IntVec) -> Perm:
    """Minimal-length y with y(v) dominant: stable decreasing sort of v."""
    order = sorted(range(len(v)), key=lambda j: (-v[j], j))
    y = [0] * len(v)
    for pos, j in enumerate(order):
        y[j] = pos
    return tuple(y)


@dataclass(frozen=True)
class Decomposition:
    """w = x t^mu y with mu dominant and y of minimal length sorting z^-1 lam."""

    x: Perm
    mu: IntVec
    y: Perm

    @property
    def eta(self) -> Perm:
        """eta(w) = y x."""
        return perm_mult(self.y, self.x)


def decompose(w: AffineElement) -> Decomposition:
    lam, z = w
    v = tuple(lam[zi] for zi in z)  # z^-1 lam
    y = _stable_sorting_perm(v)
    mu = perm_act_vec(y, v)
    x = perm_mult(z, perm_inverse(y))
    return Decomposition(x=x, mu=mu, y=y)


def affine_length(w: AffineElement) -> int:
    """l(w) from the decomposition formula l(x t^mu y) = <mu,2rho> + l(x) - l(y)."""
    d = decompose(w)
    n = len(w[0])
    pairing = sum(m * r for m, r in zip(d.mu, two_rho(n)))
    return pairing + perm_length(d.x) - perm_length(d.y)


def _im_length(w: AffineElement) -> int:
    """Inversion-counting form of the affine length; equals affine_length."""
    lam, z = w
    n = len(lam)
    zinv = perm_inverse(z)
    total = 0
    for i in range(n):
        li = lam[i]
        zi = zinv[i]
        for j in range(i + 1, n):
            d = li - lam[j]
            if zi > zinv[j]:
                d -= 1
            total += d if d >= 0 else -d
    return total


def newton_point(w: AffineElement) -> tuple[Fraction, ...]:
    """Dominant Newton point: nu_w = (lambda of w^m)/m with m the order of z."""
    lam, z = w
    m = perm_order(z)
    total = list(lam)
    cur = lam
    for _ in range(m - 1):
        cur = perm_act_vec(z, cur)
        for i in range(len(total)):
            total[i] += cur[i]
    total.sort(reverse=True)
    return tuple(Fraction(t, m) for t in total)


def eta(w: AffineElement) -> Perm:
    return decompose(w).eta


# ---------------------------------------------------------------------------
# Demazure products


def _demazure_star(a: Perm, b: Perm) -> Perm:
    """Scan a reduced word of b, appending each letter only when the length
    increases; independent of the word chosen."""
    acc = a
    acc_len = perm_length(acc)
    for letter in reduced_word(b):
        i = letter - 1
        nxt = perm_mult(acc, transposition(len(a), i, i + 1))
        nxt_len = perm_length(nxt)
        if nxt_len > acc_len:
            acc, acc_len = nxt, nxt_len
    return acc


_down_cache: dict[tuple[Perm, Perm], Perm] = {}


def _demazure_down(a: Perm, b: Perm) -> Perm:
    """Bruhat-minimal term of the Hecke-algebra product T_a T_b.

    The product is expanded exactly over Z[q] (T_z T_s = T_{zs} when the
    length goes up, q T_{zs} + (q-1) T_z when it goes down); the support has
    a unique minimal-length element, the downward companion of the Demazure
    product.  It satisfies |l(a) - l(b)| <= l(a <| b) <= l(ab) <= l(a * b).
    """
    hit = _down_cache.get((a, b))
    if hit is not None:
        return hit
    n = len(a)
    state: dict[Perm, dict[int, int]] = {a: {0: 1}}
    for letter in reduced_word(b):
        t = transposition(n, letter - 1, letter)
        new: dict[Perm, dict[int, int]] = {}

        def add(z, poly, shift=0):
            acc = new.setdefault(z, {})
            for k, v in poly.items():
                acc[k + shift] = acc.get(k + shift, 0) + v

        for z, poly in state.items():
            zs = perm_mult(z, t)
            if perm_length(zs) > perm_length(z):
                add(zs, poly)
            else:
                add(zs, poly, shift=1)  # q T_{zs}
                add(z, poly, shift=1)  # (q - 1) T_z
                add(z, {k: -v for k, v in poly.items()})
        state = {z: {k: v for k, v in p.items() if v} for z, p in new.items()}
        state = {z: p for z, p in state.items() if p}
    down = min(state, key=perm_length)
    assert sum(1 for z in state if perm_length(z) == perm_length(down)) == 1
    _down_cache[(a, b)] = down
    return down


def demazure_products(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """The Demazure product a * b and its downward companion a <| b.

    >>> demazure_products((1, 0), (1, 0))
    ((1, 0), (0, 1))
    """
    return _demazure_star(a, b), _demazure_down(a, b)


# ---------------------------------------------------------------------------
# cyclic shifts


def conjugate_by_gen(w: AffineElement, s: AffineElement) -> AffineElement:
    """s w s for an involution s."""
    return multiply(multiply(s, w), s)


def cyclic_shift_neighbors(
    w: AffineElement,
) -> list[tuple[int, AffineElement, str]]:
    """All cyclic shifts s_i w s_i with l(s_i w s_i) <= l(w).

    Each entry is (generator index, shifted element, kind) where kind is
    "equal" or "drop2"; those are the only possibilities.
    """
    n = len(w[0])
    lw = _im_length(w)
    out = []
    for i, s in enumerate(simple_reflections(n)):
        sws = conjugate_by_gen(w, s)
        l2 = _im_length(sws)
        if l2 == lw:
            out.append((i, sws, "equal"))
        elif l2 == lw - 2:
            out.append((i, sws, "drop2"))
    return out


# specialized generator arithmetic for the reduction hot loop: length steps
# come from the sign of the (affine) root sent across, so no length scan or
# generic multiply is needed to classify a cyclic shift


def left_length_step(w: AffineElement, i: int) -> int:
    """l(s_i w) - l(w), always +1 or -1."""
    lam, z = w
    n = len(lam)
    if i == 0:
        t = 1 - (lam[0] - lam[n - 1])
        if t:
            return -1 if t < 0 else 1
        return -1 if z.index(n - 1) > z.index(0) else 1
    p = i - 1
    d = lam[p] - lam[p + 1]
    if d:
        return -1 if d < 0 else 1
    return -1 if z.index(p) > z.index(p + 1) else 1


def right_length_step(w: AffineElement, i: int) -> int:
    """l(w s_i) - l(w), always +1 or -1."""
    lam, z = w
    n = len(lam)
    if i == 0:
        t = 1 + (lam[z[0]] - lam[z[n - 1]])
        if t:
            return -1 if t < 0 else 1
        return -1 if z[n - 1] > z[0] else 1
    p = i - 1
    c = lam[z[p]] - lam[z[p + 1]]
    if c:
        return -1 if c > 0 else 1
    return -1 if z[p] > z[p + 1] else 1


def left_mult_gen(i: int, w: AffineElement) -> AffineElement:
    """s_i . w without generic multiplication."""
    lam, z = w
    n = len(lam)
    if i == 0:
        new_lam = (lam[n - 1] + 1,) + lam[1 : n - 1] + (lam[0] - 1,)
        a, b = 0, n - 1
    else:
        p = i - 1
        new_lam = lam[:p] + (lam[p + 1], lam[p]) + lam[p + 2 :]
        a, b = p, p + 1
    new_z = tuple(b if v == a else a if v == b else v for v in z)
    return new_lam, new_z


def right_mult_gen(w: AffineElement, i: int) -> AffineElement:
    """w . s_i without generic multiplication."""
    lam, z = w
    n = len(lam)
    if i == 0:
        out = list(lam)
        out[z[0]] += 1
        out[z[n - 1]] -= 1
        new_z = (z[n - 1],) + z[1 : n - 1] + (z[0],)
        return tuple(out), new_z
    p = i - 1
    new_z = z[:p] + (z[p + 1], z[p]) + z[p + 2 :]
    return lam, new_z


def elements_of_length_below(n: int, max_len: int):
    """Yield all w with l(w) < max_len, by length then canonical (lam, z) key.

    Breadth-first growth over the generators; the first-visit depth in the
    Cayley graph is the Coxeter length.
    """
    if max_len <= 0:
        return
    gens = simple_reflections(n)
    seen = {affine_identity(n)}
    level = [affine_identity(n)]
    depth = 0
    while level and depth < max_len:
        for w in sorted(level):
            yield w
        depth += 1
        if depth >= max_len:
            return
        nxt = []
        for w in level:
            for s in gens:
                v = multiply(w, s)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        level = nxt


# ---------------------------------------------------------------------------
# element notation

_AFFINE_RE = re.compile(
    r"^affine_Weyl\(\s*\[(?P<lam>[^\]]*)\]\s*,\s*\[(?P<word>[^\]]*)\]\s*\)$"
)
_EXP_RE = re.compile(r"^exp\(\s*\[(?P<word>[^\]]*)\]\s*\)$")
_T_RE = re.compile(r"^t\[(?P<lam>[^\]]*)\](?P<rest>(\s+s\d+)*)\s*$")


def _parse_int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok.strip()) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad {what} list: {text!r}") from exc


def _word_product(n: int, letters: list[int], table: dict[int, AffineElement]) -> AffineElement:
    acc = affine_identity(n)
    for i in letters:
        if i not in table:
            raise ParseError(f"generator index {i} out of range for n={n}")
        acc = multiply(acc, table[i])
    return acc


def parse_element(text: str, n: int) -> AffineElement:
    """Parse element notation into canonical (lam, z) form.

    Three forms are accepted:

    * ``affine_Weyl([a1,...,an],[i1,...,ir])`` with finite letters
      ``i in 1..n-1``, giving t^a . s_i1 ... s_ir;
    * ``exp([i1,...,ir])`` with letters in ``0..n-1``; the exp form uses the
      program's flipped finite labels, letter i standing for s_{n-i} when
      i >= 1 (the startup self test pins this against the affine_Weyl form);
    * ``t[a1,...,an] s<k> s<k> ...`` with plain generator indices in 0..n-1.

    >>> parse_element("exp([])", 3) == affine_identity(3)
    True
    """
    if n < 2:
        raise ParseError("rank n must be >= 2")
    text = text.strip()
    gens = simple_reflections(n)

    m = _AFFINE_RE.match(text)
    if m:
        lam = _parse_int_list(m.group("lam"), "translation")
        if len(lam) != n:
            raise ParseError(f"translation vector has {len(lam)} entries, expected {n}")
        word = _parse_int_list(m.group("word"), "word")
        if any(i < 1 or i > n - 1 for i in word):
            raise ParseError(f"affine_Weyl letters must lie in 1..{n - 1}: {word}")
        table = {i: gens[i] for i in range(1, n)}
        return multiply(translation(lam), _word_product(n, word, table))

    m = _EXP_RE.match(text)
    if m:
        word = _parse_int_list(m.group("word"), "word")
        if any(i < 0 or i > n - 1 for i in word):
            raise ParseError(f"exp letters must lie in 0..{n - 1}: {word}")
        table = {0: gens[0]}
        table.update({i: gens[n - i] for i in range(1, n)})
        return _word_product(n, word, table)

    m = _T_RE.match(text)
    if m:
        lam = _parse_int_list(m.group("lam"), "translation")
        if len(lam) != n:
            raise ParseError(f"translation vector has {len(lam)} entries, expected {n}")
        word = [int(tok[1:]) for tok in m.group("rest").split()]
        if any(i < 0 or i > n - 1 for i in word):
            raise ParseError(f"s-tokens must lie in s0..s{n - 1}: {word}")
        table = dict(enumerate(gens))
        return multiply(translation(lam), _word_product(n, word, table))

    raise ParseError(f"unrecognized element notation: {text!r}")


def print_element(w: AffineElement) -> str:
    """Canonical affine_Weyl form, lambda first; reparses to an equal element.

    >>> print_element(((1, 0, -1), (1, 2, 0)))
    'affine_Weyl([1,0,-1],[1,2])'
    """
    lam, z = w
    word = reduced_word(z)
    return "affine_Weyl([{}],[{}])".format(
        ",".join(str(a) for a in lam), ",".join(str(i) for i in word)
    )


def convention_self_test() -> None:
    """Pin the notation conventions against the two published anchor facts."""
    lhs = parse_element("affine_Weyl([1,0,-1],[1,2])", 3)
    rhs = parse_element("exp([0,2])", 3)
    if lhs != rhs:
        raise AssertionError(
            f"notation pin failed: affine_Weyl([1,0,-1],[1,2]) = {lhs}, exp([0,2]) = {rhs}"
        )
    w = parse_element("affine_Weyl([1,1,-2],[2,1])", 3)
    if affine_length(w) != 4:
        raise AssertionError(f"worked-example pin failed: l(w) = {affine_length(w)} != 4")
