"""0/+-1 matrices and monotone griddings of permutations.

Matrices are indexed in cartesian coordinates: entry (k, l) sits in column
k (left to right) and row l (bottom to top), so the matrix aligns with the
plot of a permutation.  The text format stores matrices in display order
(top row first); the parser converts.

A gridding of a permutation of length n is a pair of nondecreasing division
tuples x_1 = 1 <= ... <= x_{t+1} = n+1 and y_1 = 1 <= ... <= y_{u+1} = n+1;
the entries with positions in [x_k, x_{k+1}) and values in [y_l, y_{l+1})
must be increasing, decreasing, or absent as the matrix entry dictates.
"""
from __future__ import annotations

import bisect
import dataclasses
import itertools
from typing import Iterator, Optional, Sequence

from .perm import Permutation, contains, parse_permutation


@dataclasses.dataclass(frozen=True)
class GridMatrix:
    cols: int
    rows: int
    entries: tuple[tuple[int, ...], ...]  # entries[k-1][l-1], bottom to top

    def __post_init__(self):
        if self.cols < 0 or self.rows < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.cols or any(
            len(col) != self.rows for col in self.entries
        ):
            raise ValueError("entry table does not match dimensions")
        for col in self.entries:
            for e in col:
                if e not in (-1, 0, 1):
                    raise ValueError(f"matrix entries must be 0 or +-1, got {e}")

    def entry(self, k: int, l: int) -> int:
        if not (1 <= k <= self.cols and 1 <= l <= self.rows):
            raise ValueError(f"cell ({k}, {l}) out of range")
        return self.entries[k - 1][l - 1]

    def nonzero_cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (k, l)
            for k in range(1, self.cols + 1)
            for l in range(1, self.rows + 1)
            if self.entries[k - 1][l - 1] != 0
        )

    def __str__(self) -> str:
        return format_matrix(self)


def grid_matrix(columns: Sequence[Sequence[int]]) -> GridMatrix:
    """Build from columns, each listed bottom to top."""
    cols = tuple(tuple(c) for c in columns)
    rows = len(cols[0]) if cols else 0
    return GridMatrix(len(cols), rows, cols)


def from_display_rows(rows: Sequence[Sequence[int]]) -> GridMatrix:
    """Build from display-order rows (top row first), as in the text format.

    >>> m = from_display_rows([(-1, 1), (1, -1)])   # the X shape
    >>> m.entry(1, 1), m.entry(1, 2), m.entry(2, 1), m.entry(2, 2)
    (1, -1, -1, 1)
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return GridMatrix(0, 0, ())
    t = len(rows[0])
    if any(len(r) != t for r in rows):
        raise ValueError("ragged matrix rows")
    u = len(rows)
    entries = tuple(
        tuple(rows[u - 1 - (l - 1)][k - 1] for l in range(1, u + 1))
        for k in range(1, t + 1)
    )
    return GridMatrix(t, u, entries)


def parse_matrix(text: str) -> GridMatrix:
    """Parse display-order text: one row per line, entries from {-1, 0, 1}."""
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        try:
            rows.append(tuple(int(tok) for tok in ln.replace(",", " ").split()))
        except ValueError:
            raise ValueError(f"bad matrix line {ln!r}") from None
    if not rows:
        raise ValueError("empty matrix text")
    return from_display_rows(rows)


def format_matrix(m: GridMatrix) -> str:
    lines = []
    for l in range(m.rows, 0, -1):
        lines.append(" ".join(f"{m.entries[k - 1][l - 1]:2d}" for k in range(1, m.cols + 1)))
    return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True)
class GriddedPermutation:
    perm: Permutation
    matrix: GridMatrix
    col_divs: tuple[int, ...]
    row_divs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        t, u = self.matrix.cols, self.matrix.rows
        if len(self.col_divs) != t + 1 or len(self.row_divs) != u + 1:
            raise ValueError("division tuple lengths must be t+1 and u+1")
        for divs in (self.col_divs, self.row_divs):
            if divs[0] != 1 or divs[-1] != n + 1:
                raise ValueError("divisions must start at 1 and end at n+1")
            if any(a > b for a, b in zip(divs, divs[1:])):
                raise ValueError("divisions must be nondecreasing")
        if not _cells_ok(self.perm, self.matrix, self.col_divs, self.row_divs):
            raise ValueError("cell contents violate the matrix")

    def column_of(self, i: int) -> int:
        """Column whose half-open position range [x_k, x_{k+1}) contains i."""
        if not (1 <= i <= len(self.perm)):
            raise ValueError(f"index {i} out of range")
        return bisect.bisect_right(self.col_divs, i)

    def row_of_value(self, v: int) -> int:
        if not (1 <= v <= len(self.perm)):
            raise ValueError(f"value {v} out of range")
        return bisect.bisect_right(self.row_divs, v)

    def cell_of(self, i: int) -> tuple[int, int]:
        """Cell (column, row) of the entry at position i."""
        return self.column_of(i), self.row_of_value(self.perm.at(i))

    def entries_in_column(self, k: int) -> tuple[int, ...]:
        lo, hi = self.col_divs[k - 1], self.col_divs[k]
        return tuple(range(lo, hi))

    def entries_in_row(self, l: int) -> tuple[int, ...]:
        lo, hi = self.row_divs[l - 1], self.row_divs[l]
        return tuple(
            sorted(self.perm.position_of(v) for v in range(lo, hi))
        )

    def entries_in_cell(self, k: int, l: int) -> tuple[int, ...]:
        lo, hi = self.row_divs[l - 1], self.row_divs[l]
        return tuple(
            i for i in self.entries_in_column(k) if lo <= self.perm.at(i) < hi
        )


def _cells_ok(
    pi: Permutation,
    matrix: GridMatrix,
    col_divs: Sequence[int],
    row_divs: Sequence[int],
) -> bool:
    last: dict[tuple[int, int], int] = {}
    for i in range(1, len(pi) + 1):
        v = pi.at(i)
        k = bisect.bisect_right(col_divs, i)
        l = bisect.bisect_right(row_divs, v)
        if k < 1 or k > matrix.cols or l < 1 or l > matrix.rows:
            return False
        sign = matrix.entries[k - 1][l - 1]
        if sign == 0:
            return False
        prev = last.get((k, l))
        if prev is not None:
            if sign == 1 and v < prev:
                return False
            if sign == -1 and v > prev:
                return False
        last[(k, l)] = v
    return True


def _division_tuples(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples (1, d_2, ..., d_parts, n+1), lexicographically."""
    if parts == 0:
        if n == 0:
            yield (1,)
        return
    for interior in itertools.combinations_with_replacement(range(1, n + 2), parts - 1):
        yield (1,) + interior + (n + 1,)


def iter_griddings(pi: Permutation, m: GridMatrix) -> Iterator[GriddedPermutation]:
    """All valid griddings in lexicographic division order."""
    n = len(pi)
    for cdivs in _division_tuples(n, m.cols):
        for rdivs in _division_tuples(n, m.rows):
            if _cells_ok(pi, m, cdivs, rdivs):
                yield GriddedPermutation(pi, m, cdivs, rdivs)


def find_gridding(pi: Permutation, m: GridMatrix) -> Optional[GriddedPermutation]:
    """The lexicographically least valid gridding, or None if pi is not in Grid(m)."""
    return next(iter_griddings(pi, m), None)


def all_griddings(pi: Permutation, m: GridMatrix) -> tuple[GriddedPermutation, ...]:
    return tuple(iter_griddings(pi, m))


_SKEW_MERGED_OBSTRUCTIONS = (parse_permutation("2143"), parse_permutation("3412"))


def is_skew_merged(pi: Permutation) -> bool:
    """True iff pi avoids both 2143 and 3412."""
    return not any(contains(pi, patt) for patt in _SKEW_MERGED_OBSTRUCTIONS)


def _matching_pattern(m: int) -> Permutation:
    values = []
    for i in range(1, m + 1):
        values.extend((2 * i, 2 * i - 1))
    return Permutation(tuple(values))


def _reverse_matching_pattern(m: int) -> Permutation:
    values = []
    for i in range(m, 0, -1):
        values.extend((2 * i - 1, 2 * i))
    return Permutation(tuple(values))


def matching_pattern_witness(pi: Permutation) -> tuple[int, int]:
    """Largest m with 2143...(2m)(2m-1) contained in pi, and likewise for
    the reversed pattern (2m-1)(2m)...3412."""
    best_fwd = 0
    m = 1
    while 2 * m <= len(pi) and contains(pi, _matching_pattern(m)):
        best_fwd = m
        m += 1
    best_rev = 0
    m = 1
    while 2 * m <= len(pi) and contains(pi, _reverse_matching_pattern(m)):
        best_rev = m
        m += 1
    return best_fwd, best_rev


@dataclasses.dataclass(frozen=True)
class SignedMatrix:
    """A partial multiplication matrix with explicit column and row signs."""

    matrix: GridMatrix
    col_signs: tuple[int, ...]
    row_signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.col_signs) != self.matrix.cols or len(self.row_signs) != self.matrix.rows:
            raise ValueError("sign vector lengths must match the matrix")
        if any(s not in (1, -1) for s in self.col_signs + self.row_signs):
            raise ValueError("signs must be +1 or -1")
        for k, l in self.matrix.nonzero_cells():
            if self.matrix.entry(k, l) != self.col_signs[k - 1] * self.row_signs[l - 1]:
                raise ValueError(f"entry ({k}, {l}) is not col sign times row sign")


def pmm_signs(m: GridMatrix) -> Optional[SignedMatrix]:
    """Column and row signs factoring every nonzero entry, or None.

    Signs propagate from the least unassigned column (then row) of each
    connected component, seeded +1, so the answer is deterministic; free
    rows and columns get +1.
    """
    t, u = m.cols, m.rows
    signs: list[Optional[int]] = [None] * (t + u)  # columns then rows

    def neighbors(node: int):
        if node < t:
            k = node + 1
            for l in range(1, u + 1):
                e = m.entry(k, l)
                if e != 0:
                    yield t + l - 1, e
        else:
            l = node - t + 1
            for k in range(1, t + 1):
                e = m.entry(k, l)
                if e != 0:
                    yield k - 1, e

    for seed in range(t + u):
        if signs[seed] is not None:
            continue
        signs[seed] = 1
        queue = [seed]
        while queue:
            node = queue.pop(0)
            for other, e in neighbors(node):
                want = e * signs[node]
                if signs[other] is None:
                    signs[other] = want
                    queue.append(other)
                elif signs[other] != want:
                    return None
    col_signs = tuple(signs[:t])
    row_signs = tuple(signs[t:])
    return SignedMatrix(m, col_signs, row_signs)


def iter_sign_vectors(m: GridMatrix) -> Iterator[SignedMatrix]:
    """All sign vectors consistent with the nonzero entries of m.

    Each connected component of the nonzero pattern contributes one free
    global flip; untouched rows and columns are fully free.  Yields nothing
    when m is not a partial multiplication matrix.
    """
    base = pmm_signs(m)
    if base is None:
        return
    t, u = m.cols, m.rows
    component = [-1] * (t + u)
    comp_count = 0
    for seed in range(t + u):
        if component[seed] != -1:
            continue
        component[seed] = comp_count
        queue = [seed]
        while queue:
            node = queue.pop(0)
            if node < t:
                k = node + 1
                links = [
                    t + l - 1 for l in range(1, u + 1) if m.entry(k, l) != 0
                ]
            else:
                l = node - t + 1
                links = [k - 1 for k in range(1, t + 1) if m.entry(k, l) != 0]
            for other in links:
                if component[other] == -1:
                    component[other] = comp_count
                    queue.append(other)
        comp_count += 1
    base_signs = list(base.col_signs + base.row_signs)
    for flips in itertools.product((1, -1), repeat=comp_count):
        signs = [base_signs[i] * flips[component[i]] for i in range(t + u)]
        yield SignedMatrix(m, tuple(signs[:t]), tuple(signs[t:]))


def double(m: GridMatrix) -> GridMatrix:
    """The 2t x 2u block substitution: each +1 becomes the increasing pair of
    subcells, each -1 the decreasing pair, each 0 a zero block.  Always a
    partial multiplication matrix, with the same geometric class as m.

    >>> d = double(grid_matrix([[1]]))
    >>> d.entry(1, 1), d.entry(2, 2), d.entry(1, 2), d.entry(2, 1)
    (1, 1, 0, 0)
    """
    t, u = m.cols, m.rows
    entries = [[0] * (2 * u) for _ in range(2 * t)]
    for k in range(1, t + 1):
        for l in range(1, u + 1):
            e = m.entry(k, l)
            if e == 1:
                entries[2 * k - 2][2 * l - 2] = 1
                entries[2 * k - 1][2 * l - 1] = 1
            elif e == -1:
                entries[2 * k - 2][2 * l - 1] = -1
                entries[2 * k - 1][2 * l - 2] = -1
    return GridMatrix(2 * t, 2 * u, tuple(tuple(col) for col in entries))


def universal_matrix(t: int, u: int) -> GridMatrix:
    """The 2t x 2u matrix S with S(k, l) = (-1)^(k+l-1).

    Every t x u matrix's geometric class embeds into Geom(S): each original
    cell corresponds to a 2 x 2 block holding both an increasing and a
    decreasing subcell.
    """
    if t < 1 or u < 1:
        raise ValueError("need t, u >= 1")
    entries = tuple(
        tuple((-1) ** (k + l - 1) for l in range(1, 2 * u + 1))
        for k in range(1, 2 * t + 1)
    )
    return GridMatrix(2 * t, 2 * u, entries)
