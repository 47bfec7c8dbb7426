import itertools
from fractions import Fraction

import pytest

from gridletters.geometry import (
    CellWord,
    base_point,
    check_realization,
    consistency,
    decode_word,
    derive_decoder,
    embed_in_universal,
    encode_gridded,
    format_cell_word,
    geom_member,
    local_orders,
    parse_cell_word,
    read_points,
    realize,
    standard_figure,
    word_index_map,
)
from gridletters.gridding import (
    GriddedPermutation,
    all_griddings,
    grid_matrix,
    iter_sign_vectors,
    pmm_signs,
)
from gridletters.perm import Permutation, contains, inversion_graph, parse_permutation

P = parse_permutation

# Encoding of the worked 6437251 gridding along the distance order
# 4 1 7 6 5 2 3: word position p holds the cell of entry psi_inverse(p).
FIG_WORD = ((2, 2), (1, 2), (3, 1), (3, 2), (3, 1), (1, 2), (2, 1))


@pytest.fixture()
def fan_gridding(fan_matrix):
    return GriddedPermutation(P("6437251"), fan_matrix, (1, 3, 5, 8), (1, 4, 8))


class TestStandardFigure:
    def test_segment_endpoints(self, fan_matrix):
        fig = standard_figure(fan_matrix)
        segments = dict((cell, (a, b)) for cell, a, b in fig.segments)
        assert len(segments) == 5
        assert segments[(2, 2)] == ((1, 1), (2, 2))
        assert segments[(1, 2)] == ((0, 2), (1, 1))

    def test_base_points(self, fan_matrix):
        signs = pmm_signs(fan_matrix)
        assert base_point((1, 2), signs) == (0, 2)
        assert base_point((2, 2), signs) == (2, 2)
        assert base_point((3, 1), signs) == (3, 0)


class TestLocalOrders:
    def test_fan_gridding_chains(self, fan_gridding, fan_matrix):
        lo = local_orders(fan_gridding, pmm_signs(fan_matrix))
        assert lo.column_chains == ((1, 2), (4, 3), (7, 6, 5))
        assert lo.row_chains == ((7, 5, 3), (4, 1, 6, 2))

    def test_identity_single_cell(self, one_cell):
        gp = GriddedPermutation(P("123"), one_cell, (1, 4), (1, 4))
        lo = local_orders(gp, pmm_signs(one_cell))
        assert lo.column_chains == ((1, 2, 3),)
        assert lo.row_chains == ((1, 2, 3),)

    def test_empty_permutation(self, one_cell):
        gp = GriddedPermutation(P(""), one_cell, (1, 1), (1, 1))
        lo = local_orders(gp, pmm_signs(one_cell))
        assert lo.column_chains == ((),) and lo.row_chains == ((),)

    def test_matrix_mismatch(self, one_cell, x_matrix):
        gp = GriddedPermutation(P("1"), one_cell, (1, 2), (1, 2))
        with pytest.raises(ValueError):
            local_orders(gp, pmm_signs(x_matrix))


class TestConsistency:
    def test_fan_gridding_extension_respects_chains(self, fan_gridding, fan_matrix):
        lo = local_orders(fan_gridding, pmm_signs(fan_matrix))
        psi = consistency(lo)
        assert psi is not None
        for chain in lo.chains():
            for a, b in zip(chain, chain[1:]):
                assert psi[a - 1] < psi[b - 1]
        # The distance order 4 1 7 6 5 2 3 used in the worked example is one
        # valid extension; ours may differ but must be a bijection.
        assert sorted(psi) == list(range(1, 8))

    def test_empty(self):
        from gridletters.geometry import LocalOrders

        assert consistency(LocalOrders(0, (), ())) == ()

    def test_3142_inconsistent_everywhere(self, x_matrix):
        pi = P("3142")
        sign_choices = list(iter_sign_vectors(x_matrix))
        assert len(sign_choices) == 2
        griddings = all_griddings(pi, x_matrix)
        assert griddings
        for gp in griddings:
            for signs in sign_choices:
                assert consistency(local_orders(gp, signs)) is None


class TestRealize:
    def test_fan_gridding_reads_back(self, fan_gridding, fan_matrix):
        r = realize(fan_gridding, pmm_signs(fan_matrix))
        assert r is not None
        assert r.gridded == fan_gridding
        check_realization(r)

    def test_single_entry_at_half(self, one_cell):
        gp = GriddedPermutation(P("1"), one_cell, (1, 2), (1, 2))
        r = realize(gp, pmm_signs(one_cell))
        assert r.points == ((Fraction(1, 2), Fraction(1, 2)),)
        assert r.offset(1) == Fraction(1, 2)

    def test_inconsistent_gives_none(self, x_matrix):
        gp = all_griddings(P("3142"), x_matrix)[0]
        assert realize(gp, pmm_signs(x_matrix)) is None

    def test_realize_iff_consistent_small(self, x_matrix, v_matrix):
        for m in (x_matrix, v_matrix):
            signs = pmm_signs(m)
            for vals in itertools.permutations(range(1, 5)):
                for gp in all_griddings(Permutation(vals), m):
                    psi = consistency(local_orders(gp, signs))
                    r = realize(gp, signs)
                    assert (psi is None) == (r is None)
                    if r is not None:
                        assert r.gridded == gp


class TestReadPoints:
    def test_rejects_off_figure(self, one_cell):
        with pytest.raises(ValueError):
            read_points(one_cell, [(Fraction(1, 2), Fraction(1, 3))])

    def test_rejects_boundary_and_nongeneric(self, one_cell, v_matrix):
        with pytest.raises(ValueError):
            read_points(one_cell, [(Fraction(1), Fraction(1))])
        with pytest.raises(ValueError):
            # Equal x offsets in two cells of one column are not generic.
            read_points(
                v_matrix,
                [
                    (Fraction(1, 2), Fraction(1, 2)),
                    (Fraction(1, 2), Fraction(3, 2)),
                ],
            )

    def test_rejects_empty_cell_point(self):
        m = grid_matrix([[1, 0]])
        with pytest.raises(ValueError):
            read_points(m, [(Fraction(1, 2), Fraction(3, 2))])


class TestDecodeWord:
    def test_single_increasing_cell(self, one_cell):
        signs = pmm_signs(one_cell)
        gp = decode_word(CellWord(one_cell, ((1, 1),) * 3), signs)
        assert gp.perm == P("123")
        assert gp.col_divs == (1, 4)

    def test_single_decreasing_cell(self):
        m = grid_matrix([[-1]])
        gp = decode_word(CellWord(m, ((1, 1),) * 3), pmm_signs(m))
        assert gp.perm == P("321")

    def test_fig_word_decodes_to_6437251(self, fan_matrix, fan_gridding):
        signs = pmm_signs(fan_matrix)
        gp = decode_word(CellWord(fan_matrix, FIG_WORD), signs)
        assert gp == fan_gridding
        assert word_index_map(CellWord(fan_matrix, FIG_WORD), signs) == (4, 1, 7, 6, 5, 2, 3)

    def test_distance_invariance(self, fan_matrix):
        # Re-placing the same word with a different increasing offset
        # sequence cannot change the gridded permutation.
        from gridletters.geometry import _point_on_cell

        signs = pmm_signs(fan_matrix)
        w = CellWord(fan_matrix, FIG_WORD)
        offsets = [Fraction(1, 100), Fraction(5, 99), Fraction(31, 50),
                   Fraction(16, 25), Fraction(13, 20), Fraction(33, 50), Fraction(99, 100)]
        pts = [
            _point_on_cell(cell, fan_matrix.entry(*cell), signs, off)
            for cell, off in zip(FIG_WORD, offsets)
        ]
        assert read_points(fan_matrix, pts) == decode_word(w, signs)

    def test_rejects_zero_cell_letter(self, fan_matrix):
        with pytest.raises(ValueError):
            CellWord(fan_matrix, ((1, 1),))

    def test_word_text_round_trip(self, fan_matrix):
        w = CellWord(fan_matrix, FIG_WORD)
        assert parse_cell_word(format_cell_word(w), fan_matrix) == w


class TestEncodeGridded:
    def test_round_trip_on_fan_gridding(self, fan_gridding, fan_matrix):
        signs = pmm_signs(fan_matrix)
        w = encode_gridded(fan_gridding, signs)
        assert decode_word(w, signs) == fan_gridding

    def test_single_cell_identity(self, one_cell):
        signs = pmm_signs(one_cell)
        gp = GriddedPermutation(P("123"), one_cell, (1, 4), (1, 4))
        assert encode_gridded(gp, signs).letters == ((1, 1),) * 3

    def test_inconsistent_raises(self, x_matrix):
        gp = all_griddings(P("3142"), x_matrix)[0]
        with pytest.raises(ValueError):
            encode_gridded(gp, pmm_signs(x_matrix))

    def test_decode_encode_decode_identity(self, x_matrix, v_matrix):
        for m, length in ((x_matrix, 4), (v_matrix, 5)):
            signs = pmm_signs(m)
            cells = m.nonzero_cells()
            for n in range(1, length + 1):
                for letters in itertools.product(cells, repeat=n):
                    gp = decode_word(CellWord(m, letters), signs)
                    again = encode_gridded(gp, signs)
                    assert decode_word(again, signs) == gp


class TestGeomMember:
    def test_gap_between_grid_and_geom(self, x_matrix):
        assert not geom_member(P("3142"), x_matrix)
        assert geom_member(P("524361"), x_matrix)

    def test_fan_permutation(self, fan_matrix):
        assert geom_member(P("6437251"), fan_matrix)

    def test_non_pmm_matrices_are_doubled(self, non_pmm_matrix):
        assert geom_member(P("1"), non_pmm_matrix)
        assert geom_member(P("12"), non_pmm_matrix)

    def test_empty_permutation(self, x_matrix):
        assert geom_member(P(""), x_matrix)

    def test_order_preservation_of_decoding(self, v_matrix, x_matrix):
        # Subwords decode to contained permutations.
        for m, length in ((x_matrix, 4), (v_matrix, 5)):
            signs = pmm_signs(m)
            cells = m.nonzero_cells()
            for letters in itertools.product(cells, repeat=length):
                w_perm = decode_word(CellWord(m, letters), signs).perm
                for r in range(length + 1):
                    for positions in itertools.combinations(range(length), r):
                        sub = tuple(letters[p] for p in positions)
                        u_perm = decode_word(CellWord(m, sub), signs).perm
                        assert contains(w_perm, u_perm)


class TestDoubleDouble:
    def test_geom_membership_stable_under_repeated_doubling(self, x_matrix):
        from gridletters.gridding import double

        dd = double(double(x_matrix))
        assert (dd.cols, dd.rows) == (8, 8)
        for n in range(5):
            for vals in itertools.permutations(range(1, n + 1)):
                pi = Permutation(vals)
                assert geom_member(pi, x_matrix) == geom_member(pi, dd)


class TestDeriveDecoder:
    def test_single_cells(self, one_cell):
        assert derive_decoder(pmm_signs(one_cell)) == frozenset()
        m = grid_matrix([[-1]])
        assert derive_decoder(pmm_signs(m)) == frozenset({(((1, 1)), ((1, 1)))})

    def test_x_matrix_decoder(self, x_matrix):
        d = derive_decoder(pmm_signs(x_matrix))
        a11, a21, a12, a22 = (1, 1), (2, 1), (1, 2), (2, 2)
        assert (a12, a12) in d and (a21, a21) in d  # decreasing cells
        assert (a12, a21) in d and (a21, a12) in d  # independent, inverting
        assert (a11, a22) not in d and (a22, a11) not in d
        assert (a12, a11) in d and (a11, a12) not in d  # shared column, c=+1
        assert (a21, a22) in d and (a22, a21) not in d  # shared column, c=-1
        assert (a21, a11) in d and (a11, a21) not in d  # shared row, r=+1
        assert (a12, a22) in d and (a22, a12) not in d  # shared row, r=-1
        assert len(d) == 8

    def test_letter_graph_matches_inversion_graph(self, v_matrix):
        signs = pmm_signs(v_matrix)
        d = derive_decoder(signs)
        cells = v_matrix.nonzero_cells()
        for n in range(1, 6):
            for letters in itertools.product(cells, repeat=n):
                w = CellWord(v_matrix, letters)
                idx = word_index_map(w, signs)
                g = inversion_graph(decode_word(w, signs).perm)
                for p in range(1, n + 1):
                    for q in range(p + 1, n + 1):
                        assert g.has_edge(idx[p - 1], idx[q - 1]) == (
                            (letters[p - 1], letters[q - 1]) in d
                        )


class TestEmbedInUniversal:
    def test_preserves_consistency_and_permutation(self, x_matrix):
        signs = pmm_signs(x_matrix)
        for gp in all_griddings(P("524361"), x_matrix):
            psi = consistency(local_orders(gp, signs))
            if psi is None:
                continue
            gp_s, signs_s = embed_in_universal(gp, signs)
            assert gp_s.matrix.cols == 4 and gp_s.matrix.rows == 4
            r = realize(gp_s, signs_s)
            assert r is not None and r.gridded.perm == gp.perm

    def test_enlarged_target_leaves_trailing_blocks_empty(self, x_matrix):
        signs = pmm_signs(x_matrix)
        gp = next(
            g
            for g in all_griddings(P("524361"), x_matrix)
            if consistency(local_orders(g, signs)) is not None
        )
        gp_s, signs_s = embed_in_universal(gp, signs, 5, 4)
        assert gp_s.matrix.cols == 10 and gp_s.matrix.rows == 8
        r = realize(gp_s, signs_s)
        assert r is not None and r.gridded.perm == gp.perm
        with pytest.raises(ValueError):
            embed_in_universal(gp, signs, 1, 1)
