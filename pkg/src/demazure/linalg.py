"""Exact linear algebra over the rationals.

Everything here works with ``Fraction`` entries and is deliberately
simple: dense Gaussian elimination, a reusable solver for systems that
must be solved against many right-hand sides, and nullspace bases.
Matrices at desk scale stay in the hundreds of rows/columns.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Sequence


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    mat = [list(map(Fraction, r)) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        if pv != 1:
            mat[r] = [v / pv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of the matrix (list of column vectors)."""
    if not rows:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(vec)
    return basis


def primitive_integer_vector(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers (first nonzero > 0)."""
    from math import gcd, lcm

    denom = 1
    for v in vec:
        denom = lcm(denom, Fraction(v).denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints


class ExactSolver:
    """Solve ``A u = rhs`` exactly for many right-hand sides.

    Columns are given sparsely as dicts mapping an arbitrary hashable row
    key to a Fraction.  ``prepare`` performs one elimination to find a row
    subset of full rank; ``solve`` then handles each right-hand side with
    a small back-substitution plus a full residual check against every
    row, so a returned solution is always exact and verified.
    """

    def __init__(self, columns: list[dict[Hashable, Fraction]]):
        self.columns = columns
        self.ncols = len(columns)
        keys: set = set()
        for col in columns:
            keys.update(col)
        self.row_keys = sorted(keys, key=repr)
        self._prepare()

    def _prepare(self):
        ncols = self.ncols
        # Eliminate rows one at a time, keeping those that increase rank.
        basis: list[list[Fraction]] = []  # rows in echelon form
        basis_pivot: list[int] = []
        selected: list[Hashable] = []  # row keys backing the rank rows
        raw_rows: list[list[Fraction]] = []
        for key in self.row_keys:
            row = [Fraction(col.get(key, 0)) for col in self.columns]
            work = row[:]
            for brow, bp in zip(basis, basis_pivot):
                if work[bp] != 0:
                    f = work[bp]
                    work = [a - f * b for a, b in zip(work, brow)]
            pivot = next((c for c in range(ncols) if work[c] != 0), None)
            if pivot is None:
                continue
            pv = work[pivot]
            if pv != 1:
                work = [v / pv for v in work]
            basis.append(work)
            basis_pivot.append(pivot)
            selected.append(key)
            raw_rows.append(row)
            if len(basis) == ncols:
                break
        self.rank = len(basis)
        self.selected_keys = selected
        # RREF of the selected square-ish subsystem, with transform T such
        # that R = T * S where S is the selected raw submatrix.
        nsel = len(selected)
        aug = [raw_rows[i][:] + [Fraction(int(i == j)) for j in range(nsel)] for i in range(nsel)]
        red, pivots = rref(aug) if aug else ([], [])
        self._pivot_cols = [p for p in pivots if p < ncols]
        self._reduced = [r[:ncols] for r in red]
        self._transform = [r[ncols:] for r in red]
        self.kernel_dim = ncols - self.rank

    def kernel_basis(self) -> list[list[Fraction]]:
        rows = [[Fraction(col.get(key, 0)) for col in self.columns] for key in self.selected_keys]
        return nullspace(rows, self.ncols)

    def solve(self, rhs: dict[Hashable, Fraction]) -> list[Fraction] | None:
        """A verified exact solution (free variables set to 0), or None."""
        nsel = len(self.selected_keys)
        sub = [Fraction(rhs.get(k, 0)) for k in self.selected_keys]
        y = [sum((t * v for t, v in zip(trow, sub) if v != 0), Fraction(0))
             for trow in self._transform]
        u = [Fraction(0)] * self.ncols
        for r, pc in enumerate(self._pivot_cols):
            u[pc] = y[r]
        # rows of the reduced system beyond the pivot rows must be consistent
        for r in range(len(self._pivot_cols), nsel):
            if y[r] != 0:
                return None
        # full residual check against every row of the original system
        residual: dict[Hashable, Fraction] = dict()
        for c, val in enumerate(u):
            if val == 0:
                continue
            for key, a in self.columns[c].items():
                residual[key] = residual.get(key, Fraction(0)) + val * a
        for key, want in rhs.items():
            if residual.get(key, Fraction(0)) != want:
                return None
            residual.pop(key, None)
        if any(v != 0 for v in residual.values()):
            return None
        return u
