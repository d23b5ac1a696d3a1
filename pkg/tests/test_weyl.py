"""Finite/affine Weyl arithmetic against independent oracles (BFS word
search, brute-force scans); the notation pins from the published session."""

import random
from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlvlab import weyl as W


def random_element(n, rng, steps=10):
    acc = W.affine_identity(n)
    gens = W.simple_reflections(n)
    for _ in range(rng.randint(0, steps)):
        acc = W.multiply(acc, gens[rng.randrange(n)])
    return acc


def bfs_lengths(n, max_depth):
    """First-visit depth over the generator Cayley graph = Coxeter length."""
    gens = W.simple_reflections(n)
    depth = {W.affine_identity(n): 0}
    q = deque([W.affine_identity(n)])
    while q:
        u = q.popleft()
        if depth[u] >= max_depth:
            continue
        for s in gens:
            v = W.multiply(u, s)
            if v not in depth:
                depth[v] = depth[u] + 1
                q.append(v)
    return {w: d for w, d in depth.items() if d <= max_depth}


# --------------------------------------------------------------------------
# notation


def test_notation_pin_affine_weyl_equals_exp():
    assert W.parse_element("affine_Weyl([1,0,-1],[1,2])", 3) == W.parse_element(
        "exp([0,2])", 3
    )
    W.convention_self_test()


def test_parse_empty_exp_is_identity():
    assert W.parse_element("exp([])", 3) == W.affine_identity(3)


def test_parse_affine_weyl_word_order():
    lam, z = W.parse_element("affine_Weyl([1,1,-2],[2,1])", 3)
    assert lam == (1, 1, -2)
    s1 = W.transposition(3, 0, 1)
    s2 = W.transposition(3, 1, 2)
    assert z == W.perm_mult(s2, s1)


def test_parse_t_form():
    w = W.parse_element("t[1,0,-1] s1 s2", 3)
    assert w == W.parse_element("affine_Weyl([1,0,-1],[1,2])", 3)
    assert W.parse_element("t[2,-1,-1]", 3) == W.translation((2, -1, -1))


def test_parse_errors():
    with pytest.raises(W.ParseError):
        W.parse_element("affine_Weyl([1,0],[1])", 3)  # wrong length
    with pytest.raises(W.ParseError):
        W.parse_element("affine_Weyl([1,0,-1,1],[1])", 4)  # sum != 0
    with pytest.raises(W.ParseError):
        W.parse_element("affine_Weyl([1,0,-1],[3])", 3)  # letter out of range
    with pytest.raises(W.ParseError):
        W.parse_element("exp([5])", 3)
    with pytest.raises(W.ParseError):
        W.parse_element("garbage(1)", 3)


def test_print_parse_round_trip():
    rng = random.Random(11)
    for n in (2, 3, 4, 5):
        for _ in range(50):
            w = random_element(n, rng, steps=12)
            assert W.parse_element(W.print_element(w), n) == w


def test_exp_zero_is_involution():
    s0 = W.parse_element("exp([0])", 3)
    assert W.multiply(s0, s0) == W.affine_identity(3)
    assert W.affine_length(s0) == 1


# --------------------------------------------------------------------------
# group law


def test_multiply_examples():
    s1 = ((0, 0, 0), W.transposition(3, 0, 1))
    assert W.multiply(s1, s1) == W.affine_identity(3)
    a = W.translation((1, 0, -1))
    b = W.translation((0, 1, -1))
    assert W.multiply(a, b) == W.translation((1, 1, -2))


def test_multiply_rank_mismatch():
    with pytest.raises(ValueError):
        W.multiply(W.affine_identity(3), W.affine_identity(4))


def test_associativity_and_inverse():
    rng = random.Random(5)
    for n in (2, 3, 5):
        for _ in range(100):
            a, b, c = (random_element(n, rng) for _ in range(3))
            assert W.multiply(W.multiply(a, b), c) == W.multiply(a, W.multiply(b, c))
            assert W.multiply(a, W.inverse(a)) == W.affine_identity(n)


# --------------------------------------------------------------------------
# lengths


def test_length_identity_and_translation():
    assert W.affine_length(W.affine_identity(3)) == 0
    assert W.affine_length(W.translation((1, 0, -1))) == 4


def test_length_matches_bfs_depth_n3():
    for w, d in bfs_lengths(3, 6).items():
        assert W.affine_length(w) == d


def test_length_matches_bfs_depth_n4():
    for w, d in bfs_lengths(4, 5).items():
        assert W.affine_length(w) == d


def test_im_length_equals_decomposition_length():
    rng = random.Random(1)
    for n in (2, 3, 4, 5):
        for _ in range(300):
            w = random_element(n, rng, steps=16)
            assert W._im_length(w) == W.affine_length(w)


def test_length_subadditive_and_inverse_invariant():
    rng = random.Random(2)
    for _ in range(200):
        a, b = random_element(4, rng), random_element(4, rng)
        assert W.affine_length(W.multiply(a, b)) <= W.affine_length(a) + W.affine_length(b)
        assert W.affine_length(W.inverse(a)) == W.affine_length(a)


def test_fast_generator_ops_match_generic():
    rng = random.Random(3)
    for n in (2, 3, 4, 5):
        gens = W.simple_reflections(n)
        for _ in range(150):
            u = random_element(n, rng, steps=14)
            lu = W._im_length(u)
            for i in range(n):
                su = W.multiply(gens[i], u)
                us = W.multiply(u, gens[i])
                assert W.left_mult_gen(i, u) == su
                assert W.right_mult_gen(u, i) == us
                assert W.left_length_step(u, i) == W._im_length(su) - lu
                assert W.right_length_step(u, i) == W._im_length(us) - lu


# --------------------------------------------------------------------------
# decomposition


def test_decompose_dominant_translation():
    d = W.decompose(W.translation((1, 0, -1)))
    assert d.x == W.identity_perm(3)
    assert d.mu == (1, 0, -1)
    assert d.y == W.identity_perm(3)
    assert d.eta == W.identity_perm(3)


def test_decompose_antidominant_translation():
    d = W.decompose(W.translation((0, 1, -1)))
    assert d.mu == (1, 0, -1)
    assert d.eta == W.identity_perm(3)
    # recomposition
    w = W.multiply(
        W.multiply(((0, 0, 0), d.x), W.translation(d.mu)), ((0, 0, 0), d.y)
    )
    assert w == W.translation((0, 1, -1))


def test_decompose_exhaustive_small():
    for w in W.elements_of_length_below(3, 9):
        d = W.decompose(w)
        assert all(a >= b for a, b in zip(d.mu, d.mu[1:]))
        rec = W.multiply(
            W.multiply(((0, 0, 0), d.x), W.translation(d.mu)), ((0, 0, 0), d.y)
        )
        assert rec == w
        rho = W.two_rho(3)
        assert W.affine_length(w) == sum(m * r for m, r in zip(d.mu, rho)) + W.perm_length(
            d.x
        ) - W.perm_length(d.y)


def test_decompose_y_is_minimal_sorter():
    # y must be the shortest permutation making z^-1 lam dominant
    rng = random.Random(9)
    for _ in range(100):
        w = random_element(4, rng, steps=12)
        lam, z = w
        v = tuple(lam[zi] for zi in z)
        d = W.decompose(w)
        best = min(
            (W.perm_length(y), y)
            for y in W.all_perms(4)
            if all(a >= b for a, b in zip(W.perm_act_vec(y, v), W.perm_act_vec(y, v)[1:]))
        )
        assert W.perm_length(d.y) == best[0]


# --------------------------------------------------------------------------
# newton points


def test_newton_point_examples():
    assert W.newton_point(W.translation((1, 0, -1))) == (
        Fraction(1),
        Fraction(0),
        Fraction(-1),
    )
    s1 = ((0, 0, 0), W.transposition(3, 0, 1))
    assert W.newton_point(s1) == (Fraction(0),) * 3
    w = W.parse_element("affine_Weyl([1,1,-2],[2,1])", 3)
    assert W.newton_point(w) == (Fraction(0),) * 3


def test_newton_point_power_scaling():
    rng = random.Random(4)
    for _ in range(60):
        w = random_element(3, rng, steps=10)
        nu = W.newton_point(w)
        wk = w
        for k in (2, 3):
            wk = W.multiply(wk, w)
            assert W.newton_point(wk) == tuple(k * c for c in nu)


def test_newton_point_dominant_sum_zero():
    rng = random.Random(14)
    for n in (3, 4, 5):
        for _ in range(60):
            nu = W.newton_point(random_element(n, rng, steps=14))
            assert sum(nu) == 0
            assert all(a >= b for a, b in zip(nu, nu[1:]))


# --------------------------------------------------------------------------
# reflection length


def reflection_bfs(n):
    """Word length over ALL transpositions, by breadth-first search."""
    refl = [W.transposition(n, i, j) for i in range(n) for j in range(i + 1, n)]
    dist = {W.identity_perm(n): 0}
    q = deque([W.identity_perm(n)])
    while q:
        u = q.popleft()
        for t in refl:
            v = W.perm_mult(u, t)
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reflection_length_vs_bfs(n):
    dist = reflection_bfs(n)
    for u in W.all_perms(n):
        assert W.reflection_length(u) == dist[u] == n - len(W.cycles(u))


def test_reflection_length_examples():
    assert W.reflection_length(W.identity_perm(4)) == 0
    assert W.reflection_length(W.transposition(4, 0, 1)) == 1
    assert W.reflection_length(W.longest_perm(5)) == 2


# --------------------------------------------------------------------------
# demazure products


def test_demazure_identity_cases():
    for x in W.all_perms(3):
        star, down = W.demazure_products(W.identity_perm(3), x)
        assert star == x


def test_demazure_single_letter():
    s1 = W.transposition(3, 0, 1)
    star, down = W.demazure_products(s1, s1)
    assert star == s1
    assert down == W.identity_perm(3)


def all_reduced_words(z, n):
    if z == W.identity_perm(n):
        yield []
        return
    inv = W.perm_inverse(z)
    for i in range(n - 1):
        if inv[i] > inv[i + 1]:
            rest = tuple(i + 1 if v == i else i if v == i + 1 else v for v in z)
            for word in all_reduced_words(rest, n):
                yield [i + 1] + word


def hecke_support_min_with_word(a, word, n):
    state = {a: {0: 1}}
    for letter in word:
        t = W.transposition(n, letter - 1, letter)
        new = {}

        def add(z, poly, shift=0):
            acc = new.setdefault(z, {})
            for k, v in poly.items():
                acc[k + shift] = acc.get(k + shift, 0) + v

        for z, poly in state.items():
            zs = W.perm_mult(z, t)
            if W.perm_length(zs) > W.perm_length(z):
                add(zs, poly)
            else:
                add(zs, poly, shift=1)
                add(z, poly, shift=1)
                add(z, {k: -v for k, v in poly.items()})
        state = {
            z: {k: v for k, v in p.items() if v} for z, p in new.items()
        }
        state = {z: p for z, p in state.items() if p}
    return min(state, key=W.perm_length)


def test_demazure_word_independence():
    # neither product may depend on the reduced word chosen for b
    rng = random.Random(17)

    def star_with_word(a, word):
        acc = a
        for i in word:
            nxt = W.perm_mult(acc, W.transposition(4, i - 1, i))
            if W.perm_length(nxt) > W.perm_length(acc):
                acc = nxt
        return acc

    for _ in range(25):
        a = rng.choice(W.all_perms(4))
        b = rng.choice(W.all_perms(4))
        star, down = W.demazure_products(a, b)
        for word in all_reduced_words(b, 4):
            assert star_with_word(a, word) == star
            assert hecke_support_min_with_word(a, word, 4) == down


def test_demazure_chain_inequality_s4():
    perms = W.all_perms(4)
    for x in perms:
        for y in perms:
            star, down = W.demazure_products(y, x)
            lx, ly = W.perm_length(x), W.perm_length(y)
            assert abs(lx - ly) <= W.perm_length(down)
            assert W.perm_length(down) <= W.perm_length(W.perm_mult(y, x))
            assert W.perm_length(W.perm_mult(y, x)) <= W.perm_length(star)


# --------------------------------------------------------------------------
# cyclic shifts


def test_cyclic_shift_identity():
    nbrs = W.cyclic_shift_neighbors(W.affine_identity(3))
    assert all(kind == "equal" and v == W.affine_identity(3) for _, v, kind in nbrs)


def test_cyclic_shift_s1():
    s1 = ((0, 0, 0), W.transposition(3, 0, 1))
    nbrs = {i: (v, kind) for i, v, kind in W.cyclic_shift_neighbors(s1)}
    assert nbrs[1] == (s1, "equal")


def test_cyclic_shift_s1s2():
    s1 = ((0, 0, 0), W.transposition(3, 0, 1))
    s2 = ((0, 0, 0), W.transposition(3, 1, 2))
    w = W.multiply(s1, s2)
    nbrs = {i: (v, kind) for i, v, kind in W.cyclic_shift_neighbors(w)}
    assert nbrs[1] == (W.multiply(s2, s1), "equal")


def test_cyclic_shift_lengths_only_equal_or_drop2():
    rng = random.Random(23)
    for _ in range(200):
        w = random_element(4, rng, steps=12)
        lw = W.affine_length(w)
        for i, v, kind in W.cyclic_shift_neighbors(w):
            lv = W.affine_length(v)
            assert (kind == "equal" and lv == lw) or (kind == "drop2" and lv == lw - 2)


# --------------------------------------------------------------------------
# enumeration


def test_elements_enumeration_counts_and_order():
    elems = list(W.elements_of_length_below(3, 7))
    # type A2 affine: 3*l alcoves at each length l >= 1
    assert len(elems) == 1 + 3 * sum(range(1, 7))
    lengths = [W.affine_length(w) for w in elems]
    assert lengths == sorted(lengths)
    for a, b in zip(elems, elems[1:]):
        assert (W.affine_length(a), a) < (W.affine_length(b), b)


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=1, max_value=5))
@settings(max_examples=20, deadline=None)
def test_enumeration_complete_hypothesis(n, max_len):
    got = set(W.elements_of_length_below(n, max_len))
    want = {w for w, d in bfs_lengths(n, max_len - 1).items()}
    assert got == want
