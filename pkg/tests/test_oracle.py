import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridletters.geometry import geom_member
from gridletters.graphs import family, graph
from gridletters.letters import lettericity
from gridletters.oracle import (
    containment_oracle,
    geom_member_oracle,
    lettericity_oracle,
)
from gridletters.perm import Permutation, contains, identity, parse_permutation

P = parse_permutation


def perms_of(n):
    return (Permutation(v) for v in itertools.permutations(range(1, n + 1)))


class TestContainmentOracle:
    def test_examples(self):
        assert containment_oracle(P("372694185"), P("32514"))
        for pi in (P("1"), P("2413"), P("35142")):
            assert containment_oracle(pi, pi)

    def test_agrees_with_search_exhaustively(self):
        for pi in perms_of(5):
            for k in range(4):
                for sigma in perms_of(k):
                    assert containment_oracle(pi, sigma) == contains(pi, sigma)

    @given(st.permutations(list(range(1, 8))), st.permutations(list(range(1, 5))))
    @settings(max_examples=100, deadline=None)
    def test_agrees_with_search_sampled(self, pvals, svals):
        pi, sigma = Permutation(tuple(pvals)), Permutation(tuple(svals))
        assert containment_oracle(pi, sigma) == contains(pi, sigma)

    def test_cap(self):
        with pytest.raises(ValueError):
            containment_oracle(identity(10), P("1"))


class TestLettericityOracle:
    def test_examples(self):
        assert lettericity_oracle(family("mK2", 2)) == 2
        assert lettericity_oracle(family("path", 4)) == 2
        assert lettericity_oracle(family("complete", 1)) == 1

    def test_agrees_with_solver_on_order_four(self):
        pairs = list(itertools.combinations(range(1, 5), 2))
        for mask in range(1 << 6):
            g = graph(4, [p for b, p in enumerate(pairs) if mask >> b & 1])
            assert lettericity_oracle(g) == lettericity(g)

    @given(st.integers(0, (1 << 10) - 1))
    @settings(max_examples=25, deadline=None)
    def test_agrees_with_solver_on_order_five_sampled(self, mask):
        pairs = list(itertools.combinations(range(1, 6), 2))
        g = graph(5, [p for b, p in enumerate(pairs) if mask >> b & 1])
        assert lettericity_oracle(g) == lettericity(g)

    def test_cap(self):
        with pytest.raises(ValueError):
            lettericity_oracle(family("mK2", 4))


class TestGeomMemberOracle:
    def test_examples(self, x_matrix, one_cell):
        assert not geom_member_oracle(P("3142"), x_matrix)
        for n in range(6):
            assert geom_member_oracle(identity(n), one_cell)

    def test_agrees_with_search(self, x_matrix, v_matrix, non_pmm_matrix, one_cell):
        for m in (x_matrix, v_matrix, non_pmm_matrix, one_cell):
            for n in range(7):
                for pi in perms_of(n):
                    assert geom_member_oracle(pi, m) == geom_member(pi, m), (pi,)

    def test_cap(self, one_cell):
        with pytest.raises(ValueError):
            geom_member_oracle(identity(8), one_cell)
