"""Geometric grid classes.

The standard figure of a 0/+-1 matrix is a union of open unit diagonals,
one per nonzero cell.  A gridded permutation drawn on the figure induces,
per column and row, a linear order of its entries by distance to a base
corner; the gridding has a drawing exactly when the union of those local
orders is acyclic.  Points are represented with exact Fractions so drawing
read-backs are bit-exact.

Column and row signs orient everything: sign +1 reads a column left to
right (a row bottom to top), sign -1 the reverse, and the base point of a
cell is the corner both orientations point away from.
"""
from __future__ import annotations

import dataclasses
import heapq
from collections import defaultdict
from fractions import Fraction
from typing import Optional, Sequence

from .gridding import (
    GriddedPermutation,
    GridMatrix,
    SignedMatrix,
    double,
    iter_griddings,
    iter_sign_vectors,
    pmm_signs,
    universal_matrix,
)
from .perm import Permutation

Point = tuple[Fraction, Fraction]
Cell = tuple[int, int]


@dataclasses.dataclass(frozen=True)
class StandardFigure:
    """Per nonzero cell, the open diagonal segment it carries."""

    matrix: GridMatrix
    segments: tuple[tuple[Cell, tuple[int, int], tuple[int, int]], ...]


def standard_figure(m: GridMatrix) -> StandardFigure:
    segs = []
    for k, l in m.nonzero_cells():
        if m.entry(k, l) == 1:
            segs.append(((k, l), (k - 1, l - 1), (k, l)))
        else:
            segs.append(((k, l), (k - 1, l), (k, l - 1)))
    return StandardFigure(m, tuple(segs))


def base_point(cell: Cell, signs: SignedMatrix) -> tuple[int, int]:
    """Corner of the cell from which both orientation arrows originate."""
    k, l = cell
    x = k - 1 if signs.col_signs[k - 1] == 1 else k
    y = l - 1 if signs.row_signs[l - 1] == 1 else l
    return x, y


@dataclasses.dataclass(frozen=True)
class LocalOrders:
    """Chains of indices: one per column (ordered by position along the
    column sign) and one per row (ordered by value along the row sign)."""

    n: int
    column_chains: tuple[tuple[int, ...], ...]
    row_chains: tuple[tuple[int, ...], ...]

    def chains(self) -> tuple[tuple[int, ...], ...]:
        return self.column_chains + self.row_chains


def local_orders(gp: GriddedPermutation, signs: SignedMatrix) -> LocalOrders:
    if gp.matrix != signs.matrix:
        raise ValueError("gridding and signs are over different matrices")
    cols = []
    for k in range(1, gp.matrix.cols + 1):
        chain = list(gp.entries_in_column(k))
        if signs.col_signs[k - 1] == -1:
            chain.reverse()
        cols.append(tuple(chain))
    rows = []
    for l in range(1, gp.matrix.rows + 1):
        by_value = sorted(gp.entries_in_row(l), key=lambda i: gp.perm.at(i))
        if signs.row_signs[l - 1] == -1:
            by_value.reverse()
        rows.append(tuple(by_value))
    return LocalOrders(len(gp.perm), tuple(cols), tuple(rows))


def consistency(lo: LocalOrders) -> Optional[tuple[int, ...]]:
    """A linear extension psi of the union of the local orders, or None.

    psi[i-1] is the rank of index i; smallest available index first, so the
    extension is deterministic.
    """
    succ: dict[int, set[int]] = defaultdict(set)
    indeg = [0] * (lo.n + 1)
    for chain in lo.chains():
        for a, b in zip(chain, chain[1:]):
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    heap = [i for i in range(1, lo.n + 1) if indeg[i] == 0]
    heapq.heapify(heap)
    psi = [0] * lo.n
    rank = 0
    while heap:
        i = heapq.heappop(heap)
        rank += 1
        psi[i - 1] = rank
        for b in sorted(succ[i]):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    if rank < lo.n:
        return None
    return tuple(psi)


@dataclasses.dataclass(frozen=True)
class Realization:
    """A drawing of a gridded permutation on the standard figure.

    points[i-1] is the point of entry i; it lies on its cell's diagonal at
    distance offset * sqrt(2) from the cell's base point, where the offset
    is the Fraction |x - base_x|.
    """

    gridded: GriddedPermutation
    signs: SignedMatrix
    points: tuple[Point, ...]

    def offset(self, i: int) -> Fraction:
        k, l = self.gridded.cell_of(i)
        bx, _ = base_point((k, l), self.signs)
        return abs(self.points[i - 1][0] - bx)

    def distance(self, i: int) -> float:
        return float(self.offset(i)) * 2 ** 0.5


def _point_on_cell(cell: Cell, sign: int, signs: SignedMatrix, offset: Fraction) -> Point:
    k, l = cell
    tx = offset if signs.col_signs[k - 1] == 1 else 1 - offset
    x = (k - 1) + tx
    y = (l - 1) + tx if sign == 1 else l - tx
    return x, y


def realize(gp: GriddedPermutation, signs: SignedMatrix) -> Optional[Realization]:
    """A concrete drawing of gp, or None iff its local orders are inconsistent.

    Offsets are psi(i)/(n+1), i.e. distances d_i = i * sqrt(2)/(n+1); any
    increasing sequence in (0, sqrt(2)) would produce the same gridded
    permutation.
    """
    psi = consistency(local_orders(gp, signs))
    if psi is None:
        return None
    n = len(gp.perm)
    points = []
    for i in range(1, n + 1):
        cell = gp.cell_of(i)
        sign = gp.matrix.entry(*cell)
        points.append(_point_on_cell(cell, sign, signs, Fraction(psi[i - 1], n + 1)))
    r = Realization(gp, signs, tuple(points))
    check_realization(r)
    return r


def read_points(m: GridMatrix, points: Sequence[Point]) -> GriddedPermutation:
    """Read an arbitrary generic point set on the standard figure of m back
    into a gridded permutation.  Raises ValueError if a point is off the
    figure or the set is not generic."""
    n = len(points)
    cells = []
    for x, y in points:
        k = int(x) + 1
        l = int(y) + 1
        if x == int(x) or y == int(y):
            raise ValueError(f"point ({x}, {y}) on a cell boundary")
        if not (1 <= k <= m.cols and 1 <= l <= m.rows):
            raise ValueError(f"point ({x}, {y}) outside the grid")
        e = m.entry(k, l)
        tx = x - (k - 1)
        if e == 1 and y - (l - 1) != tx:
            raise ValueError(f"point ({x}, {y}) off the increasing diagonal")
        if e == -1 and l - y != tx:
            raise ValueError(f"point ({x}, {y}) off the decreasing diagonal")
        if e == 0:
            raise ValueError(f"point ({x}, {y}) in an empty cell")
        cells.append((k, l))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if len(set(xs)) != n or len(set(ys)) != n:
        raise ValueError("point set is not generic")
    by_x = sorted(range(n), key=lambda idx: xs[idx])
    yrank = {y: r + 1 for r, y in enumerate(sorted(ys))}
    values = tuple(yrank[ys[idx]] for idx in by_x)
    perm = Permutation(values)
    col_counts = [0] * m.cols
    row_counts = [0] * m.rows
    for k, l in cells:
        col_counts[k - 1] += 1
        row_counts[l - 1] += 1
    col_divs = [1]
    for c in col_counts:
        col_divs.append(col_divs[-1] + c)
    row_divs = [1]
    for c in row_counts:
        row_divs.append(row_divs[-1] + c)
    return GriddedPermutation(perm, m, tuple(col_divs), tuple(row_divs))


def check_realization(r: Realization) -> None:
    """Raise unless the points are a drawing reading back to the gridding."""
    got = read_points(r.gridded.matrix, r.points)
    if got != r.gridded:
        raise ValueError("realization does not read back to its gridding")
    # Points are listed by entry: x must increase with position.
    xs = [p[0] for p in r.points]
    if xs != sorted(xs):
        raise ValueError("points are not listed in position order")


@dataclasses.dataclass(frozen=True)
class CellWord:
    """A word over the cell alphabet of a matrix: letters name nonzero cells."""

    matrix: GridMatrix
    letters: tuple[Cell, ...]

    def __post_init__(self):
        for k, l in self.letters:
            if self.matrix.entry(k, l) == 0:
                raise ValueError(f"letter names the empty cell ({k}, {l})")


def parse_cell_word(text: str, m: GridMatrix) -> CellWord:
    """Whitespace-separated "k.l" tokens naming cells."""
    letters = []
    for tok in text.split():
        try:
            k, l = tok.split(".")
            letters.append((int(k), int(l)))
        except ValueError:
            raise ValueError(f"bad cell token {tok!r}") from None
    return CellWord(m, tuple(letters))


def format_cell_word(w: CellWord) -> str:
    return " ".join(f"{k}.{l}" for k, l in w.letters)


def _word_points(w: CellWord, signs: SignedMatrix) -> tuple[Point, ...]:
    n = len(w.letters)
    pts = []
    for p, cell in enumerate(w.letters, start=1):
        sign = w.matrix.entry(*cell)
        pts.append(_point_on_cell(cell, sign, signs, Fraction(p, n + 1)))
    return tuple(pts)


def decode_word(w: CellWord, signs: SignedMatrix) -> GriddedPermutation:
    """The gridded permutation drawn by placing word position i at distance
    d_i in its letter's cell; independent of the choice of distances.

    >>> from .gridding import grid_matrix, pmm_signs
    >>> m = grid_matrix([[-1]])
    >>> decode_word(CellWord(m, ((1, 1),) * 3), pmm_signs(m)).perm.values
    (3, 2, 1)
    """
    if w.matrix != signs.matrix:
        raise ValueError("word and signs are over different matrices")
    return read_points(w.matrix, _word_points(w, signs))


def word_index_map(w: CellWord, signs: SignedMatrix) -> tuple[int, ...]:
    """Permutation index corresponding to each word position (by x rank)."""
    pts = _word_points(w, signs)
    xs = sorted(p[0] for p in pts)
    rank = {x: i + 1 for i, x in enumerate(xs)}
    return tuple(rank[p[0]] for p in pts)


def encode_gridded(gp: GriddedPermutation, signs: SignedMatrix) -> CellWord:
    """A word decoding back to gp, built from a linear extension psi of the
    local orders via word(psi(i)) = cell letter of entry i."""
    psi = consistency(local_orders(gp, signs))
    if psi is None:
        raise ValueError("gridding has inconsistent local orders")
    letters: list[Cell] = [None] * len(gp.perm)  # type: ignore[list-item]
    for i in range(1, len(gp.perm) + 1):
        letters[psi[i - 1] - 1] = gp.cell_of(i)
    return CellWord(gp.matrix, tuple(letters))


def geom_member(pi: Permutation, m: GridMatrix) -> bool:
    """Membership in Geom(m): some gridding by the partial multiplication
    form of m (doubling when m admits no signs) has consistent local orders.

    >>> from .gridding import from_display_rows
    >>> from .perm import parse_permutation
    >>> geom_member(parse_permutation("3142"), from_display_rows([(-1, 1), (1, -1)]))
    False
    """
    work = m if pmm_signs(m) is not None else double(m)
    sign_choices = tuple(iter_sign_vectors(work))
    for gp in iter_griddings(pi, work):
        for signs in sign_choices:
            if consistency(local_orders(gp, signs)) is not None:
                return True
    return False


def derive_decoder(signs: SignedMatrix) -> frozenset[tuple[Cell, Cell]]:
    """The decoder over the cell alphabet for which every cell word w has
    letter graph isomorphic to the inversion graph of the decoded permutation.

    A cell pairs with itself iff it is decreasing.  Independent cells are
    fully joined iff their relative position makes every cross pair an
    inversion.  Cells sharing a column contribute the pair that puts the
    upper cell's letter first when the column reads left to right, and the
    reverse otherwise; rows are symmetric.
    """
    m = signs.matrix
    cells = m.nonzero_cells()
    decoder: set[tuple[Cell, Cell]] = set()
    for a in cells:
        if m.entry(*a) == -1:
            decoder.add((a, a))
    for a in cells:
        for b in cells:
            if a >= b:
                continue
            (k1, l1), (k2, l2) = a, b
            if k1 != k2 and l1 != l2:
                if (k1 - k2) * (l1 - l2) < 0:
                    decoder.add((a, b))
                    decoder.add((b, a))
            elif k1 == k2:
                lo, hi = (a, b) if l1 < l2 else (b, a)
                if signs.col_signs[k1 - 1] == 1:
                    decoder.add((hi, lo))
                else:
                    decoder.add((lo, hi))
            else:
                left, right = (a, b) if k1 < k2 else (b, a)
                if signs.row_signs[l1 - 1] == 1:
                    decoder.add((right, left))
                else:
                    decoder.add((left, right))
    return frozenset(decoder)


def embed_in_universal(
    gp: GriddedPermutation,
    signs: SignedMatrix,
    t: Optional[int] = None,
    u: Optional[int] = None,
) -> tuple[GriddedPermutation, SignedMatrix]:
    """Re-grid gp over the universal matrix of t x u blocks (defaulting to
    gp's own dimensions; larger targets leave trailing blocks empty).

    Column k goes to whichever column of its 2x2 block column shares its
    sign, and likewise for rows, so all local orders carry over unchanged;
    the result is a valid gridding with the same consistency status.
    """
    a = gp.matrix.cols if t is None else t
    b = gp.matrix.rows if u is None else u
    if a < gp.matrix.cols or b < gp.matrix.rows:
        raise ValueError("universal target smaller than the gridding matrix")
    s = universal_matrix(a, b)
    col_signs = tuple((-1) ** k for k in range(1, 2 * a + 1))
    row_signs = tuple((-1) ** (l - 1) for l in range(1, 2 * b + 1))
    s_signed = SignedMatrix(s, col_signs, row_signs)

    def col_target(k: int) -> int:
        return 2 * k if signs.col_signs[k - 1] == 1 else 2 * k - 1

    def row_target(l: int) -> int:
        return 2 * l - 1 if signs.row_signs[l - 1] == 1 else 2 * l

    col_counts = [0] * (2 * a)
    for k in range(1, gp.matrix.cols + 1):
        col_counts[col_target(k) - 1] = len(gp.entries_in_column(k))
    row_counts = [0] * (2 * b)
    for l in range(1, gp.matrix.rows + 1):
        row_counts[row_target(l) - 1] = len(gp.entries_in_row(l))
    col_divs = [1]
    for c in col_counts:
        col_divs.append(col_divs[-1] + c)
    row_divs = [1]
    for c in row_counts:
        row_divs.append(row_divs[-1] + c)
    return (
        GriddedPermutation(gp.perm, s, tuple(col_divs), tuple(row_divs)),
        s_signed,
    )
