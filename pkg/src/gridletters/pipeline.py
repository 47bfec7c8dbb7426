"""From a monotone gridding plus a lettering to a geometric gridding.

The construction, per permutation: grid it monotonically, contract monotone
runs that sit inside single cells of that gridding until none remain (this
keeps every contracted run's direction equal to its cell's sign, which is
what makes the final re-inflation possible), letter the inversion graph of
the contracted permutation, refine the alphabet so each letter occupies one
cell, slice the gridding just outside each letter's rectangular hull,
orient the resulting columns and rows by the letters' reading orders, and
realize.  The output matrix is a partial multiplication matrix of size at
most t(1+2ur) x u(1+2tr) for a t x u input gridding and at most r letters.
"""
from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Optional

from . import geometry, letters, oracle
from .geometry import Cell, Point, Realization
from .gridding import GriddedPermutation, GridMatrix, SignedMatrix, find_gridding
from .letters import Letterization
from .perm import Permutation, inversion_graph

RefinedLetter = tuple[str, int, int]


class PipelineError(ValueError):
    pass


class NotGriddableError(PipelineError):
    pass


class LetteringNotFoundError(PipelineError):
    pass


class ReadingOrderConflictError(PipelineError):
    pass


@dataclasses.dataclass(frozen=True)
class RefinedLetterization:
    """A lettering whose letters carry cell coordinates.

    The decoder ignores the cell components, so the decoded graph is the
    same as before refinement; each refined letter encodes entries of a
    single cell.
    """

    alphabet: tuple[RefinedLetter, ...]
    decoder: frozenset[tuple[RefinedLetter, RefinedLetter]]
    word: tuple[RefinedLetter, ...]
    iso: tuple[int, ...]

    def letter_of(self, i: int) -> RefinedLetter:
        return self.word[self.iso[i - 1] - 1]


@dataclasses.dataclass(frozen=True)
class ReadingOrders:
    """Per refined letter: horizontal (+1 left-to-right) and vertical
    (+1 bottom-to-top) direction in which its entries appear in the word."""

    orders: tuple[tuple[RefinedLetter, int, int], ...]

    def horizontal(self, letter: RefinedLetter) -> int:
        for lt, h, _ in self.orders:
            if lt == letter:
                return h
        raise KeyError(letter)

    def vertical(self, letter: RefinedLetter) -> int:
        for lt, _, v in self.orders:
            if lt == letter:
                return v
        raise KeyError(letter)


@dataclasses.dataclass(frozen=True)
class HullRectangle:
    """Minimal axis-parallel rectangle of the entries encoded by one letter."""

    letter: RefinedLetter
    positions: tuple[int, int]  # closed index range
    values: tuple[int, int]  # closed value range


def reletter(lz: Letterization, gp: GriddedPermutation) -> RefinedLetterization:
    """Attach cell coordinates to every letter of a verified lettering."""
    g = inversion_graph(gp.perm)
    if not letters.verify_letterization(g, lz):
        raise PipelineError("iso is not an isomorphism onto the letter graph")
    n = len(gp.perm)
    word: list[RefinedLetter] = [None] * n  # type: ignore[list-item]
    for i in range(1, n + 1):
        k, l = gp.cell_of(i)
        word[lz.iso[i - 1] - 1] = (lz.word[lz.iso[i - 1] - 1], k, l)
    alphabet = tuple(sorted(set(word)))
    decoder = frozenset(
        (p, q)
        for p in alphabet
        for q in alphabet
        if (p[0], q[0]) in lz.decoder
    )
    return RefinedLetterization(alphabet, decoder, tuple(word), lz.iso)


def _letter_entries(rlz: RefinedLetterization, n: int) -> dict[RefinedLetter, list[int]]:
    out: dict[RefinedLetter, list[int]] = {a: [] for a in rlz.alphabet}
    for i in range(1, n + 1):
        out[rlz.letter_of(i)].append(i)
    return out


def _check_one_cell_per_letter(rlz: RefinedLetterization, gp: GriddedPermutation) -> None:
    for i in range(1, len(gp.perm) + 1):
        letter = rlz.letter_of(i)
        if gp.cell_of(i) != (letter[1], letter[2]):
            raise PipelineError(f"letter {letter} used outside its cell")


def _check_no_cell_intervals(gp: GriddedPermutation) -> None:
    # Adjacent positions with adjacent values inside one cell have no
    # separating entry, which breaks the reading orders downstream.
    for i in range(1, len(gp.perm)):
        if (
            abs(gp.perm.at(i + 1) - gp.perm.at(i)) == 1
            and gp.cell_of(i) == gp.cell_of(i + 1)
        ):
            raise PipelineError(f"nontrivial monotone interval at positions {i}, {i + 1}")


def reading_orders(rlz: RefinedLetterization, gp: GriddedPermutation) -> ReadingOrders:
    """Reading orders per refined letter, forced through the word order.

    A letter with a single entry defaults to horizontal left-to-right; the
    vertical order always follows from the horizontal one and the sign of
    the letter's cell.
    """
    _check_one_cell_per_letter(rlz, gp)
    _check_no_cell_intervals(gp)
    orders = []
    for letter in rlz.alphabet:
        entries = [i for i in range(1, len(gp.perm) + 1) if rlz.letter_of(i) == letter]
        cell_sign = gp.matrix.entry(letter[1], letter[2])
        if len(entries) == 1:
            h = 1
        else:
            ranks = [rlz.iso[i - 1] for i in entries]
            if ranks == sorted(ranks):
                h = 1
            elif ranks == sorted(ranks, reverse=True):
                h = -1
            else:
                raise PipelineError(
                    f"iso not monotone on the entries of letter {letter}"
                )
        orders.append((letter, h, h * cell_sign))
    return ReadingOrders(tuple(orders))


def hull_rectangles(
    rlz: RefinedLetterization, gp: GriddedPermutation
) -> tuple[HullRectangle, ...]:
    hulls = []
    for letter, entries in _letter_entries(rlz, len(gp.perm)).items():
        values = [gp.perm.at(i) for i in entries]
        hulls.append(
            HullRectangle(letter, (min(entries), max(entries)), (min(values), max(values)))
        )
    return tuple(sorted(hulls, key=lambda hull: hull.letter))


def regrid(gp: GriddedPermutation, rlz: RefinedLetterization) -> GriddedPermutation:
    """Slice the gridding just outside every letter's hull rectangle.

    Cuts land at integer divisions (a cut just left of index i is the
    division i; just right is i+1), duplicates collapse, and since every
    integer in 1..n is an occupied position, no empty column or row remains.
    """
    _check_one_cell_per_letter(rlz, gp)
    col_cuts = set(gp.col_divs)
    row_cuts = set(gp.row_divs)
    for hull in hull_rectangles(rlz, gp):
        col_cuts.update((hull.positions[0], hull.positions[1] + 1))
        row_cuts.update((hull.values[0], hull.values[1] + 1))
    col_divs = tuple(sorted(col_cuts))
    row_divs = tuple(sorted(row_cuts))
    entries = []
    for a in range(len(col_divs) - 1):
        parent_k = gp.column_of(col_divs[a])
        column = []
        for b in range(len(row_divs) - 1):
            parent_l = gp.row_of_value(row_divs[b])
            occupied = any(
                col_divs[a] <= i < col_divs[a + 1]
                and row_divs[b] <= gp.perm.at(i) < row_divs[b + 1]
                for i in range(1, len(gp.perm) + 1)
            )
            column.append(gp.matrix.entry(parent_k, parent_l) if occupied else 0)
        entries.append(tuple(column))
    matrix = GridMatrix(len(col_divs) - 1, len(row_divs) - 1, tuple(entries))
    return GriddedPermutation(gp.perm, matrix, col_divs, row_divs)


def assign_signs(
    regridded: GriddedPermutation,
    rlz: RefinedLetterization,
    ro: ReadingOrders,
) -> SignedMatrix:
    """Column and row signs from the reading orders of the occupying letters.

    Every nonempty column's letters share one horizontal reading order (and
    rows one vertical order); a conflict means the preconditions upstream
    were violated.  The output matrix is col sign times row sign everywhere,
    a partial multiplication matrix by construction.
    """
    n = len(regridded.perm)
    col_signs = []
    for k in range(1, regridded.matrix.cols + 1):
        entries = regridded.entries_in_column(k)
        if not entries:
            raise PipelineError(f"column {k} of the regridded permutation is empty")
        hs = {ro.horizontal(rlz.letter_of(i)) for i in entries}
        if len(hs) != 1:
            raise ReadingOrderConflictError(
                f"conflicting horizontal reading orders in column {k}"
            )
        col_signs.append(hs.pop())
    row_signs = []
    for l in range(1, regridded.matrix.rows + 1):
        entries = regridded.entries_in_row(l)
        if not entries:
            raise PipelineError(f"row {l} of the regridded permutation is empty")
        vs = {ro.vertical(rlz.letter_of(i)) for i in entries}
        if len(vs) != 1:
            raise ReadingOrderConflictError(
                f"conflicting vertical reading orders in row {l}"
            )
        row_signs.append(vs.pop())
    matrix = GridMatrix(
        regridded.matrix.cols,
        regridded.matrix.rows,
        tuple(
            tuple(col_signs[k] * row_signs[l] for l in range(regridded.matrix.rows))
            for k in range(regridded.matrix.cols)
        ),
    )
    return SignedMatrix(matrix, tuple(col_signs), tuple(row_signs))


def contract_gridded(
    gp: GriddedPermutation,
) -> tuple[GriddedPermutation, tuple[tuple[tuple[int, int], ...], ...]]:
    """Contract monotone runs lying inside single cells, to a fixed point.

    Returns the contracted gridded permutation (over the same matrix) and
    the contraction passes: each pass maps its result positions to closed
    position ranges of the previous permutation.  Runs never straddle cells,
    so each run's direction equals its cell's sign.
    """
    current = gp
    passes: list[tuple[tuple[int, int], ...]] = []
    while True:
        pi = current.perm
        n = len(pi)
        groups: list[tuple[int, int]] = []
        i = 1
        while i <= n:
            j = i
            while (
                j < n
                and abs(pi.at(j + 1) - pi.at(j)) == 1
                and current.cell_of(j) == current.cell_of(j + 1)
            ):
                j += 1
            groups.append((i, j))
            i = j + 1
        if len(groups) == n:
            return current, tuple(passes)
        mins = [min(pi.values[a - 1 : b]) for a, b in groups]
        ranks = {m: r + 1 for r, m in enumerate(sorted(mins))}
        new_perm = Permutation(tuple(ranks[m] for m in mins))
        starts = [a for a, _ in groups]
        col_divs = tuple(
            1 + sum(1 for a in starts if a < x) for x in current.col_divs
        )
        value_mins = sorted(mins)
        row_divs = tuple(
            1 + sum(1 for m in value_mins if m < y) for y in current.row_divs
        )
        current = GriddedPermutation(new_perm, current.matrix, col_divs, row_divs)
        passes.append(tuple(groups))


def _inflate_points(
    contracted: Realization,
    passes: tuple[tuple[tuple[int, int], ...], ...],
) -> tuple[tuple[Cell, ...], tuple[Point, ...]]:
    """Undo the contraction passes inside a realization.

    Each contracted entry's point becomes a short monotone run along its
    cell's diagonal, inside a radius below half the smallest coordinate gap,
    so all reading orders outside the run are untouched.
    """
    cells = [contracted.gridded.cell_of(i) for i in range(1, len(contracted.points) + 1)]
    points = list(contracted.points)

    def safe_gap() -> Fraction:
        margins = []
        for (x, y), (k, l) in zip(points, cells):
            margins.extend((x - (k - 1), k - x, y - (l - 1), l - y))
        for (x1, y1), (x2, y2) in itertools.combinations(points, 2):
            if x1 != x2:
                margins.append(abs(x1 - x2))
            if y1 != y2:
                margins.append(abs(y1 - y2))
        return min(margins)

    for groups in reversed(passes):
        gap = safe_gap()
        new_cells: list[Cell] = []
        new_points: list[Point] = []
        for (x, y), cell, (a, b) in zip(points, cells, groups):
            length = b - a + 1
            if length == 1:
                new_cells.append(cell)
                new_points.append((x, y))
                continue
            sign = contracted.gridded.matrix.entry(*cell)
            for q in range(1, length + 1):
                dx = Fraction(2 * q - length - 1, 4 * length) * gap
                new_cells.append(cell)
                new_points.append((x + dx, y + dx if sign == 1 else y - dx))
        cells = new_cells
        points = new_points
    return tuple(cells), tuple(points)


@dataclasses.dataclass(frozen=True)
class GeometrizeResult:
    signed: SignedMatrix
    gridded: GriddedPermutation
    realization: Realization
    contracted: Permutation
    contracted_gridded: GriddedPermutation
    lettering: Letterization
    refined: RefinedLetterization
    reading: ReadingOrders
    initial_gridding: GriddedPermutation


def geometrize(pi: Permutation, m: GridMatrix, k_max: int) -> GeometrizeResult:
    """Produce a geometric gridding of pi by a bounded partial multiplication
    matrix, given a monotone gridding matrix and a letter budget.

    Raises NotGriddableError when pi has no m-gridding and
    LetteringNotFoundError when the contracted inversion graph admits no
    lettering within k_max letters.
    """
    gp0 = find_gridding(pi, m)
    if gp0 is None:
        raise NotGriddableError(f"{pi} has no gridding by the given matrix")
    sigma_gp, passes = contract_gridded(gp0)
    sigma = sigma_gp.perm
    lz = letters.find_lettering(inversion_graph(sigma), k_max)
    if lz is None:
        raise LetteringNotFoundError(
            f"inversion graph of {sigma} has no lettering with {k_max} letters"
        )
    rlz = reletter(lz, sigma_gp)
    ro = reading_orders(rlz, sigma_gp)
    regridded = regrid(sigma_gp, rlz)
    signed = assign_signs(regridded, rlz, ro)
    sigma_final = GriddedPermutation(
        sigma, signed.matrix, regridded.col_divs, regridded.row_divs
    )
    sigma_real = geometry.realize(sigma_final, signed)
    if sigma_real is None:
        raise PipelineError("local orders of the regridded permutation are inconsistent")

    cells, points = _inflate_points(sigma_real, passes)
    col_counts = [0] * signed.matrix.cols
    row_counts = [0] * signed.matrix.rows
    for k, l in cells:
        col_counts[k - 1] += 1
        row_counts[l - 1] += 1
    col_divs = [1]
    for c in col_counts:
        col_divs.append(col_divs[-1] + c)
    row_divs = [1]
    for c in row_counts:
        row_divs.append(row_divs[-1] + c)
    final_gp = GriddedPermutation(pi, signed.matrix, tuple(col_divs), tuple(row_divs))
    realization = Realization(final_gp, signed, points)
    geometry.check_realization(realization)
    return GeometrizeResult(
        signed=signed,
        gridded=final_gp,
        realization=realization,
        contracted=sigma,
        contracted_gridded=sigma_final,
        lettering=lz,
        refined=rlz,
        reading=ro,
        initial_gridding=gp0,
    )


@dataclasses.dataclass(frozen=True)
class ExperimentRow:
    perm: Permutation
    lettericity: int
    cols: int
    rows: int
    bound_ok: bool
    member_ok: bool
    universal_ok: bool
    oracle_ok: Optional[bool]
    note: str = ""

    @property
    def ok(self) -> bool:
        return (
            self.bound_ok
            and self.member_ok
            and self.universal_ok
            and self.oracle_ok in (None, True)
            and not self.note
        )


@dataclasses.dataclass(frozen=True)
class ExperimentReport:
    n_max: int
    matrix: GridMatrix
    letter_cap: int
    rows: tuple[ExperimentRow, ...]
    scanned: int
    skipped_ungriddable: int
    skipped_lettericity: int

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def bound(self) -> tuple[int, int]:
        t, u = self.matrix.cols, self.matrix.rows
        r = self.letter_cap
        return t * (1 + 2 * u * r), u * (1 + 2 * t * r)

    def to_tsv(self) -> str:
        lines = ["perm\tlettericity\tcols\trows\tbound_ok\tmember_ok\tuniversal_ok\toracle_ok\tnote"]
        for row in self.rows:
            oracle = "-" if row.oracle_ok is None else str(row.oracle_ok)
            lines.append(
                f"{row.perm}\t{row.lettericity}\t{row.cols}\t{row.rows}"
                f"\t{row.bound_ok}\t{row.member_ok}\t{row.universal_ok}\t{oracle}\t{row.note}"
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        t, u = self.bound()
        status = "all verified" if self.ok else "VIOLATIONS FOUND"
        return (
            f"processed {len(self.rows)} permutations up to length {self.n_max} "
            f"(scanned {self.scanned}, {self.skipped_ungriddable} not griddable, "
            f"{self.skipped_lettericity} above letter cap); "
            f"size bound {t}x{u}; {status}"
        )


class _LettericityCache:
    """Lettericity keyed by isomorphism class, via invariant buckets."""

    def __init__(self):
        self.buckets: dict[tuple, list[tuple[object, int]]] = {}

    def get(self, g) -> int:
        from . import graphs

        key = (g.order, len(g.edges), tuple(sorted(g.degree(v) for v in range(1, g.order + 1))))
        bucket = self.buckets.setdefault(key, [])
        for rep, value in bucket:
            if graphs.find_isomorphism(g, rep) is not None:
                return value
        value = letters.lettericity(g)
        bucket.append((g, value))
        return value


def class_experiment(
    n_max: int,
    m: GridMatrix,
    r: int,
    verify_with_oracle: bool = False,
) -> ExperimentReport:
    """Geometrize every permutation of length <= n_max in Grid(m) whose
    inversion graph has lettericity at most r, verifying the size bound,
    membership in the output matrix, and membership in the universal matrix
    of the bound dimensions.  Failures become report rows, never crashes.
    """
    t, u = m.cols, m.rows
    bound_cols, bound_rows = t * (1 + 2 * u * r), u * (1 + 2 * t * r)
    cache = _LettericityCache()
    rows: list[ExperimentRow] = []
    scanned = 0
    skipped_ungriddable = 0
    skipped_lettericity = 0
    for n in range(1, n_max + 1):
        for values in itertools.permutations(range(1, n + 1)):
            pi = Permutation(values)
            scanned += 1
            if find_gridding(pi, m) is None:
                skipped_ungriddable += 1
                continue
            lett = cache.get(inversion_graph(pi))
            if lett > r:
                skipped_lettericity += 1
                continue
            try:
                result = geometrize(pi, m, r)
            except PipelineError as exc:
                rows.append(
                    ExperimentRow(pi, lett, 0, 0, False, False, False, None, str(exc))
                )
                continue
            cols = result.signed.matrix.cols
            nrows = result.signed.matrix.rows
            bound_ok = cols <= bound_cols and nrows <= bound_rows
            member_ok = _witness_ok(result)
            universal_ok = bound_ok and _universal_ok(result, bound_cols, bound_rows)
            oracle_ok = (
                oracle.geom_member_oracle(pi, result.signed.matrix)
                if verify_with_oracle
                else None
            )
            rows.append(
                ExperimentRow(pi, lett, cols, nrows, bound_ok, member_ok, universal_ok, oracle_ok)
            )
    return ExperimentReport(
        n_max=n_max,
        matrix=m,
        letter_cap=r,
        rows=tuple(rows),
        scanned=scanned,
        skipped_ungriddable=skipped_ungriddable,
        skipped_lettericity=skipped_lettericity,
    )


def _witness_ok(result: GeometrizeResult) -> bool:
    try:
        geometry.check_realization(result.realization)
    except ValueError:
        return False
    return result.gridded.perm == result.realization.gridded.perm


def _universal_ok(result: GeometrizeResult, t: int, u: int) -> bool:
    # A drawing on the full-bound universal figure is a complete membership
    # witness; realize validates it by coordinate read-back.
    gp_s, signs_s = geometry.embed_in_universal(result.gridded, result.signed, t, u)
    real = geometry.realize(gp_s, signs_s)
    if real is None:
        return False
    return real.gridded.perm == result.gridded.perm
