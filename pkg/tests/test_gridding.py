import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridletters.gridding import (
    GriddedPermutation,
    SignedMatrix,
    all_griddings,
    double,
    find_gridding,
    format_matrix,
    from_display_rows,
    grid_matrix,
    is_skew_merged,
    iter_sign_vectors,
    matching_pattern_witness,
    parse_matrix,
    pmm_signs,
    universal_matrix,
)
from gridletters.perm import Permutation, contains, identity, parse_permutation

P = parse_permutation


def perms_of(n):
    return (Permutation(v) for v in itertools.permutations(range(1, n + 1)))


def brute_griddings(pi, m):
    """Independent enumeration: every division pair, checked pairwise."""
    n = len(pi)

    def interiors(parts):
        return itertools.combinations_with_replacement(range(1, n + 2), parts - 1)

    found = []
    for ci in interiors(m.cols):
        cdivs = (1,) + ci + (n + 1,)
        for ri in interiors(m.rows):
            rdivs = (1,) + ri + (n + 1,)
            ok = True
            for i in range(1, n + 1):
                k = max(a + 1 for a in range(m.cols) if cdivs[a] <= i)
                l = max(b + 1 for b in range(m.rows) if rdivs[b] <= pi.at(i))
                if m.entry(k, l) == 0:
                    ok = False
                    break
                for j in range(i + 1, n + 1):
                    k2 = max(a + 1 for a in range(m.cols) if cdivs[a] <= j)
                    l2 = max(b + 1 for b in range(m.rows) if rdivs[b] <= pi.at(j))
                    if (k, l) == (k2, l2):
                        want = 1 if pi.at(i) < pi.at(j) else -1
                        if m.entry(k, l) != want:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                found.append((cdivs, rdivs))
    return found


class TestMatrix:
    def test_cartesian_indexing(self, x_matrix):
        assert x_matrix.entry(1, 1) == 1
        assert x_matrix.entry(2, 2) == 1
        assert x_matrix.entry(1, 2) == -1
        assert x_matrix.entry(2, 1) == -1

    def test_parse_display_order(self, fan_matrix):
        parsed = parse_matrix("-1 1 1\n0 -1 -1\n")
        assert parsed == fan_matrix
        assert parsed.entry(1, 1) == 0 and parsed.entry(1, 2) == -1

    def test_format_round_trip(self, x_matrix, fan_matrix):
        for m in (x_matrix, fan_matrix, grid_matrix([[0]])):
            assert parse_matrix(format_matrix(m)) == m

    def test_bad_entries(self):
        with pytest.raises(ValueError):
            grid_matrix([[2]])
        with pytest.raises(ValueError):
            parse_matrix("1 x\n")


class TestFindGridding:
    def test_524361_least_gridding_and_alternative_divisions(self, x_matrix):
        pi = P("524361")
        gp = find_gridding(pi, x_matrix)
        assert (gp.col_divs, gp.row_divs) == ((1, 3, 7), (1, 4, 7))
        every = all_griddings(pi, x_matrix)
        assert gp == every[0]
        # The divisions x=(1,4,7), y=(1,5,7) also grid it.
        assert GriddedPermutation(pi, x_matrix, (1, 4, 7), (1, 5, 7)) in every

    def test_21_not_in_single_increasing_cell(self, one_cell):
        assert find_gridding(P("21"), one_cell) is None

    def test_3142_is_x_griddable(self, x_matrix):
        assert find_gridding(P("3142"), x_matrix) is not None

    def test_agrees_with_brute_force(self, x_matrix, v_matrix):
        for m in (x_matrix, v_matrix):
            for pi in perms_of(4):
                got = [(g.col_divs, g.row_divs) for g in all_griddings(pi, m)]
                assert got == brute_griddings(pi, m)

    def test_empty_permutation(self, x_matrix):
        gp = find_gridding(P(""), x_matrix)
        assert gp.col_divs == (1, 1, 1) and gp.row_divs == (1, 1, 1)


class TestAllGriddings:
    def test_single_point(self, one_cell):
        every = all_griddings(P("1"), one_cell)
        assert [(g.col_divs, g.row_divs) for g in every] == [((1, 2), (1, 2))]

    def test_absent(self, one_cell):
        assert all_griddings(P("21"), one_cell) == ()

    def test_12_in_stacked_increasing_cells(self):
        m = from_display_rows([(1,), (1,)])
        count = len(all_griddings(P("12"), m))
        assert count == len(brute_griddings(P("12"), m))


class TestGriddedPermutation:
    def test_cell_accessors(self, fan_matrix):
        gp = GriddedPermutation(P("6437251"), fan_matrix, (1, 3, 5, 8), (1, 4, 8))
        assert gp.cell_of(1) == (1, 2)
        assert gp.cell_of(3) == (2, 1)
        assert gp.cell_of(7) == (3, 1)
        assert gp.entries_in_column(3) == (5, 6, 7)
        assert gp.entries_in_row(1) == (3, 5, 7)
        assert gp.entries_in_cell(3, 2) == (6,)

    def test_invalid_cells_rejected(self, one_cell):
        with pytest.raises(ValueError):
            GriddedPermutation(P("21"), one_cell, (1, 3), (1, 3))

    def test_divisions_must_cover(self, one_cell):
        with pytest.raises(ValueError):
            GriddedPermutation(P("1"), one_cell, (1, 1), (1, 2))


class TestSkewMerged:
    def test_examples(self):
        assert is_skew_merged(P("524361"))
        assert not is_skew_merged(P("2143"))

    def test_matches_x_gridding_up_to_six(self, x_matrix):
        for n in range(7):
            for pi in perms_of(n):
                assert is_skew_merged(pi) == (find_gridding(pi, x_matrix) is not None)


class TestMatchingWitness:
    def test_matching_pattern_marks_induced_matchings(self):
        # Only 2143...(2m)(2m-1) has the matching as its inversion graph, so
        # induced matchings in the graph line up with pattern containment,
        # and dually for the complement patterns.
        from gridletters.graphs import contains_induced, family

        def pattern(m):
            vals = []
            for i in range(1, m + 1):
                vals.extend((2 * i, 2 * i - 1))
            return Permutation(tuple(vals))

        def rpattern(m):
            vals = []
            for i in range(m, 0, -1):
                vals.extend((2 * i - 1, 2 * i))
            return Permutation(tuple(vals))

        from gridletters.perm import inversion_graph

        for n in range(1, 8):
            for pi in perms_of(n):
                g = inversion_graph(pi)
                for m in (1, 2, 3):
                    if 2 * m > n:
                        break
                    assert contains_induced(g, family("mK2", m)) == contains(pi, pattern(m))
                    assert contains_induced(g, family("complement_mK2", m)) == contains(
                        pi, rpattern(m)
                    )

    def test_examples(self):
        assert matching_pattern_witness(P("2143")) == (2, 1)
        assert matching_pattern_witness(P("21")) == (1, 0)
        for n in range(2, 7):
            assert matching_pattern_witness(identity(n)) == (0, 1)
        assert matching_pattern_witness(P("1")) == (0, 0)

    def test_against_direct_containment(self):
        def pattern(m):
            vals = []
            for i in range(1, m + 1):
                vals.extend((2 * i, 2 * i - 1))
            return Permutation(tuple(vals))

        def rev_pattern(m):
            vals = []
            for i in range(m, 0, -1):
                vals.extend((2 * i - 1, 2 * i))
            return Permutation(tuple(vals))

        for pi in perms_of(6):
            fwd, rev = matching_pattern_witness(pi)
            assert fwd == max(
                (m for m in range(1, 4) if contains(pi, pattern(m))), default=0
            )
            assert rev == max(
                (m for m in range(1, 4) if contains(pi, rev_pattern(m))), default=0
            )


class TestPmmSigns:
    def test_x_matrix(self, x_matrix):
        signs = pmm_signs(x_matrix)
        assert signs.col_signs == (1, -1) and signs.row_signs == (1, -1)

    def test_non_pmm(self, non_pmm_matrix):
        assert pmm_signs(non_pmm_matrix) is None

    def test_all_zero(self):
        signs = pmm_signs(grid_matrix([[0, 0], [0, 0]]))
        assert signs.col_signs == (1, 1) and signs.row_signs == (1, 1)

    def test_fan_matrix(self, fan_matrix):
        signs = pmm_signs(fan_matrix)
        assert signs.col_signs == (1, -1, -1) and signs.row_signs == (1, -1)

    def test_signed_matrix_validates(self, x_matrix):
        with pytest.raises(ValueError):
            SignedMatrix(x_matrix, (1, 1), (1, 1))

    def test_sign_vector_enumeration(self, x_matrix):
        vectors = list(iter_sign_vectors(x_matrix))
        assert len(vectors) == 2
        assert {v.col_signs for v in vectors} == {(1, -1), (-1, 1)}


class TestDouble:
    def test_displayed_example(self, non_pmm_matrix):
        assert double(non_pmm_matrix) == parse_matrix(
            "0 1 -1 0\n1 0 0 -1\n0 1 0 1\n1 0 1 0\n"
        )

    def test_zero_block(self):
        assert double(grid_matrix([[0]])) == grid_matrix([[0, 0], [0, 0]])

    def test_always_pmm_with_alternating_signs(self, x_matrix, non_pmm_matrix, fan_matrix):
        for m in (x_matrix, non_pmm_matrix, fan_matrix):
            d = double(m)
            assert pmm_signs(d) is not None
            cs = tuple((-1) ** k for k in range(1, d.cols + 1))
            rs = tuple((-1) ** l for l in range(1, d.rows + 1))
            SignedMatrix(d, cs, rs)  # validates the product rule

    def test_double_double_dimensions(self, x_matrix):
        dd = double(double(x_matrix))
        assert (dd.cols, dd.rows) == (8, 8)


class TestUniversalMatrix:
    def test_smallest(self):
        s = universal_matrix(1, 1)
        assert s.entry(1, 1) == -1
        assert s.entry(2, 1) == 1
        assert s.entry(1, 2) == 1
        assert s.entry(2, 2) == -1

    @given(st.integers(1, 4), st.integers(1, 4))
    @settings(max_examples=16, deadline=None)
    def test_parity_and_signs(self, t, u):
        s = universal_matrix(t, u)
        for k in range(1, 2 * t + 1):
            for l in range(1, 2 * u + 1):
                assert (s.entry(k, l) == 1) == ((k + l) % 2 == 1)
        assert pmm_signs(s) is not None

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            universal_matrix(0, 1)
