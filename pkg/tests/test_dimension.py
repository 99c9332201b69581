import json
from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicirc.circulant import adam_isomorphic, build, cartesian_product, complete, cycle
from multicirc.dimension import (
    analyze,
    commutative_2step_is_circulant,
    dimension_bounds,
    exceptional_case,
    exceptional_pair,
    factorize,
    is_circulant_2step,
    minimal_generating_subset,
    prime_product_dimension,
    prime_product_instance,
)
from multicirc.errors import EvenPrime, FactorNotConnected, NotGenerating, NotPrime, WrongJumpCount
from multicirc.intmat import IntMatrix
from multicirc.oracle import dimension_bruteforce, graphs_isomorphic, has_regular_cyclic_subgroup
from multicirc.quotient import diagonal_group, make_group

from .strategies import square_matrices


def literal_condition(g, v) -> bool:
    """``m == 2 gcd(m, gcd(m M^-1 v))`` written out with the adjugate."""
    w = g.scaled_inverse.apply(v)
    return g.m == 2 * gcd(g.m, *w)


def generating_pairs(g):
    elems = [e for e in g.elements() if e != g.zero]
    return [(a, b) for a, b in combinations(elems, 2) if g.generates([a, b])]


class TestBounds:
    def test_square_free(self):
        g = make_group(IntMatrix([[5, 1], [0, 6]]))
        rep = dimension_bounds(g, [(1, 0), (0, 1)])
        assert rep.prime_factorization == [(2, 1), (3, 1), (5, 1)]
        assert rep.prime_exponent_bound == 1
        assert rep.exact_dimension == 1 and rep.verdicts["is_circulant"]

    def test_worked_example_rank(self):
        g = make_group(IntMatrix.diag(2, 2, 3))
        rep = dimension_bounds(g, [(1, 0, 0), (0, 1, 0), (0, 0, 2)])
        assert rep.snf_rank_bound == 2

    def test_redundant_generator(self):
        g = diagonal_group(2, 4)
        rep = dimension_bounds(g, [(1, 0), (0, 1), (1, 1)])
        assert rep.generator_bound == 2
        assert minimal_generating_subset(g, [(1, 1), (1, 0), (0, 1)]) == [(1, 1), (1, 0)]

    def test_json_roundtrip(self):
        rep = analyze(diagonal_group(2, 4), [(1, 0), (0, 1)])
        data = json.loads(rep.to_json())
        assert data["exact_dimension"] == 2 and data["provenance"] == "closed-form"
        assert data["upper_bound"] == 2

    def test_factorize(self):
        assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
        assert factorize(1) == []

    @given(square_matrices(max_n=3, lo=-3, hi=3, max_det=16), st.data())
    @settings(max_examples=40, deadline=None)
    def test_bruteforce_never_exceeds_bounds(self, M, data):
        g = make_group(M)
        elems = [e for e in g.elements() if e != g.zero]
        if not elems:
            return
        A = data.draw(st.lists(st.sampled_from(elems), min_size=1, max_size=3, unique=True))
        sym = data.draw(st.booleans())
        rep = analyze(g, A, sym)
        k = dimension_bruteforce(build(g, A, sym))
        assert k <= rep.snf_rank_bound or g.r == 0
        assert k <= rep.prime_exponent_bound
        assert k <= rep.generator_bound
        if rep.exact_dimension is not None:
            assert rep.exact_dimension == k


class TestTwoStep:
    def test_cyclic_rule(self):
        assert is_circulant_2step(diagonal_group(12), [1, 5]) == (True, "a")

    def test_exceptional_digraph(self):
        assert is_circulant_2step(diagonal_group(2, 2), [(1, 0), (1, 1)]) == (True, "b")

    def test_non_circulant_checked_by_oracle(self):
        g = diagonal_group(2, 4)
        ok, _ = is_circulant_2step(g, [(1, 1), (0, 1)])
        assert ok == has_regular_cyclic_subgroup(build(g, [(1, 1), (0, 1)]))

    def test_graph_rule_c(self):
        g = diagonal_group(2, 8)
        assert is_circulant_2step(g, [(0, 1), (1, 3)]) == (False, None)
        assert is_circulant_2step(g, [(0, 1), (1, 3)], symmetric=True) == (True, "c")
        assert has_regular_cyclic_subgroup(build(g, [(0, 1), (1, 3)], symmetric=True))
        assert not has_regular_cyclic_subgroup(build(g, [(0, 1), (1, 3)]))

    def test_rule_c_fires_only_in_graph_mode(self):
        # sum and difference can differ in order only when 4 a2 != 0
        g = diagonal_group(2, 8)
        found = False
        for a, b in generating_pairs(g):
            d_ok, d_rule = is_circulant_2step(g, [a, b])
            s_ok, s_rule = is_circulant_2step(g, [a, b], symmetric=True)
            if s_rule == "c":
                found = True
                assert not d_ok
                assert has_regular_cyclic_subgroup(build(g, [a, b], symmetric=True))
        assert found

    def test_wrong_count(self):
        with pytest.raises(WrongJumpCount):
            is_circulant_2step(diagonal_group(2, 2), [(1, 0)])

    def test_not_generating(self):
        with pytest.raises(NotGenerating):
            is_circulant_2step(diagonal_group(2, 4), [(1, 0), (1, 2)])

    @pytest.mark.parametrize("s", [(2, 2), (2, 4), (2, 6), (3, 3), (4, 4), (2, 8), (12,)])
    def test_against_oracle_on_smith_groups(self, s):
        g = diagonal_group(*s)
        for a, b in generating_pairs(g):
            for sym in (False, True):
                ok, _ = is_circulant_2step(g, [a, b], sym)
                assert ok == has_regular_cyclic_subgroup(build(g, [a, b], sym)), (s, a, b, sym)

    @given(square_matrices(max_n=3, lo=-4, hi=4, max_det=24))
    @settings(max_examples=50)
    def test_order_form_equals_literal_gcd_form(self, M):
        g = make_group(M)
        for a, b in generating_pairs(g)[:30]:
            for v, w in ((g.sub(a, b), tuple(x - y for x, y in zip(a, b))), (g.add(a, b), tuple(x + y for x, y in zip(a, b)))):
                assert (g.element_order(v) == 2) == literal_condition(g, w)


class TestCommutative:
    def test_coprime_entries(self):
        assert commutative_2step_is_circulant(IntMatrix([[3, 1], [1, 2]]))

    def test_scalar_two(self):
        assert commutative_2step_is_circulant(IntMatrix.diag(2, 2))

    def test_two_four(self):
        M = IntMatrix.diag(2, 4)
        assert not commutative_2step_is_circulant(M)
        assert not has_regular_cyclic_subgroup(build(M, [(1, 0), (0, 1)]))

    def test_rejects_larger_matrices(self):
        with pytest.raises(WrongJumpCount):
            commutative_2step_is_circulant(IntMatrix.diag(2, 2, 2))

    def test_agrees_with_two_step_rule(self):
        for a, b, c, d in product(range(-4, 5), repeat=4):
            D = a * d - b * c
            if not D or abs(D) > 20:
                continue
            M = IntMatrix([[a, b], [c, d]])
            g = make_group(M)
            e1, e2 = g.canonicalize((1, 0)), g.canonicalize((0, 1))
            if g.zero in (e1, e2) or e1 == e2:
                assert commutative_2step_is_circulant(M)
                continue
            assert commutative_2step_is_circulant(M) == is_circulant_2step(g, [(1, 0), (0, 1)])[0]


class TestExceptional:
    def test_eta_one(self):
        assert exceptional_case(diagonal_group(2, 2), [(1, 0), (1, 1)]) == 1

    def test_eta_two(self):
        assert exceptional_case(make_group(IntMatrix.diag(4, 2)), [(1, 0), (1, 1)]) == 2

    def test_cyclic_excluded(self):
        assert exceptional_case(diagonal_group(8), [1, 3]) is None

    def test_graph_variant(self):
        # the sum (1, 4) has order 2, the difference (1, 6) has order 4
        g = diagonal_group(2, 8)
        assert exceptional_case(g, [(0, 1), (1, 3)]) is None
        assert exceptional_case(g, [(0, 1), (1, 3)], symmetric=True) == 4

    def test_wrong_count(self):
        with pytest.raises(WrongJumpCount):
            exceptional_case(diagonal_group(2, 2), [(1, 0), (0, 1), (1, 1)])

    @pytest.mark.parametrize("eta", [1, 2, 3])
    @pytest.mark.parametrize("sym", [False, True])
    def test_family(self, eta, sym):
        G, C = exceptional_pair(eta, sym)
        assert exceptional_case(G.group, G.jumps.jumps[:2], sym) == eta
        assert is_circulant_2step(G.group, [(1, 0), (1, 1)], sym) == (True, "b")
        assert graphs_isomorphic(G, C)
        assert not adam_isomorphic(G.group, G.jumps, C.group, C.jumps, sym)

    @pytest.mark.parametrize("s", [(2, 2), (2, 4), (2, 6), (2, 8)])
    def test_exceptional_implies_rule_b_or_c(self, s):
        g = diagonal_group(*s)
        for a, b in generating_pairs(g):
            for sym in (False, True):
                eta = exceptional_case(g, [a, b], sym)
                ok, rule = is_circulant_2step(g, [a, b], sym)
                if eta is not None:
                    assert ok and rule in ("b", "c")
                    C = build(diagonal_group(4 * eta), [1, 2 * eta + 1], sym)
                    assert graphs_isomorphic(build(g, [a, b], sym), C)


class TestPrimeProducts:
    def test_triangles(self):
        assert prime_product_dimension(3, [[1, 2], [1, 2]]) == 2

    def test_directed_five_cycles(self):
        assert prime_product_dimension(5, [[1], [1], [1]]) == 3

    def test_cross_check_small(self):
        G = prime_product_instance(3, [[1, 2], [1, 2]], symmetric=True)
        assert graphs_isomorphic(G, cartesian_product(complete(3), complete(3)))
        assert dimension_bruteforce(G) == 2

    def test_no_regular_cyclic_subgroup(self):
        # the counting argument rules out a cyclic regular subgroup here
        G = prime_product_instance(3, [[1], [1]])
        assert not has_regular_cyclic_subgroup(G)
        assert not has_regular_cyclic_subgroup(cartesian_product(complete(3), complete(3)))

    def test_errors(self):
        with pytest.raises(EvenPrime):
            prime_product_dimension(2, [[1], [1]])
        with pytest.raises(NotPrime):
            prime_product_dimension(9, [[1], [1]])
        with pytest.raises(FactorNotConnected):
            prime_product_dimension(5, [[1], [0]])
        with pytest.raises(FactorNotConnected):
            prime_product_dimension(5, [[1], []])

    def test_analyze_recognises_products(self):
        G = prime_product_instance(3, [[1], [1], [1, 2]])
        rep = analyze(G.group, G.jumps.jumps)
        assert rep.exact_dimension == 3 and rep.verdicts["rule"] == "prime-product"


class TestAnalyze:
    def test_disconnected_two_step(self):
        # two copies of the non-circulant G(diag(2,4); e1, e2)
        g = diagonal_group(2, 8)
        rep = analyze(g, [(1, 0), (0, 2)])
        assert rep.components == 2
        assert rep.exact_dimension == 2
        assert dimension_bruteforce(build(g, [(1, 0), (0, 2)])) == 2

    def test_graph_mode_pairs(self):
        g = diagonal_group(3, 3)
        rep = analyze(g, [(1, 0), (2, 0), (0, 1), (0, 2)], symmetric=True)
        assert rep.exact_dimension == 2 and rep.provenance == "closed-form"

    def test_exact_fallback(self):
        g = diagonal_group(3, 3)
        rep = analyze(g, [(1, 0), (0, 1), (1, 1)], symmetric=True, exact=True)
        # complement of three disjoint triangles, a complete tripartite graph
        assert rep.exact_dimension == 1 and rep.provenance == "brute-force"

    def test_cycle_is_circulant(self):
        rep = analyze(cycle(7).group, [1])
        assert rep.exact_dimension == 1 and rep.verdicts["rule"] == "rank-one"
