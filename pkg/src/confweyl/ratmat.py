"""Sparse exact rational matrices: rank, nullspace, matrix-vector products.

Rows and columns are indexed 0..n-1 with caller-owned label lists.  All
arithmetic is over ``fractions.Fraction``; elimination is plain Gaussian
with sparsest-pivot-row selection, which is plenty at the few-hundred-row
sizes the cohomology windows produce.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class RationalMatrix:
    """Sparse matrix stored column-major (list of dicts row -> value)."""

    def __init__(self, nrows, ncols, columns=None, row_labels=None, col_labels=None):
        self.nrows = nrows
        self.ncols = ncols
        self.columns = [dict(c) for c in columns] if columns is not None \
            else [{} for _ in range(ncols)]
        self.row_labels = row_labels
        self.col_labels = col_labels

    def set(self, i, j, value):
        value = Fraction(value)
        if value:
            self.columns[j][i] = value
        else:
            self.columns[j].pop(i, None)

    def get(self, i, j):
        return self.columns[j].get(i, _F0)

    def rows(self, row_filter=None):
        """Row-major copy (list of dicts col -> value), optionally filtered."""
        rows = {}
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                if row_filter is not None and not row_filter(i):
                    continue
                rows.setdefault(i, {})[j] = v
        return list(rows.values())

    def matvec(self, vec):
        """A·x for a sparse vector {col: value}; returns {row: value}."""
        out = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, v in self.columns[j].items():
                s = out.get(i, _F0) + v * x
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def rank(self, row_filter=None):
        return _row_rank(self.rows(row_filter))

    def nullspace(self):
        """Basis of ker(A) as sparse vectors {col: value} over columns.

        The basis is in reduced echelon form over columns taken in index
        order, so results are deterministic.
        """
        rows = [dict(r) for r in self.rows()]
        pivots = {}  # col -> eliminated row (normalized)
        for row in rows:
            row = _reduce_row(row, pivots)
            if row:
                lead = min(row)
                inv = _F1 / row[lead]
                pivots[lead] = {j: v * inv for j, v in row.items()}
        # back-substitute so each pivot row has zeros at other pivot columns
        for lead in sorted(pivots, reverse=True):
            pivots[lead] = _reduce_row_except(pivots[lead], pivots, lead)
        free_cols = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free_cols:
            vec = {f: _F1}
            for lead, row in pivots.items():
                v = row.get(f)
                if v:
                    vec[lead] = -v
            basis.append(vec)
        return basis


def _reduce_row(row, pivots):
    row = dict(row)
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            return row
        factor = row[lead]
        for j, v in piv.items():
            s = row.get(j, _F0) - factor * v
            if s:
                row[j] = s
            else:
                row.pop(j, None)
    return row


def _reduce_row_except(row, pivots, own):
    row = dict(row)
    changed = True
    while changed:
        changed = False
        for j in sorted(row):
            if j == own:
                continue
            piv = pivots.get(j)
            if piv is None:
                continue
            factor = row[j]
            for jj, v in piv.items():
                s = row.get(jj, _F0) - factor * v
                if s:
                    row[jj] = s
                else:
                    row.pop(jj, None)
            changed = True
            break
    return row


def _row_rank(rows):
    pivots = {}
    rank = 0
    # sparser rows first keeps fill-in low
    for row in sorted(rows, key=len):
        row = _reduce_row(row, pivots)
        if row:
            lead = min(row)
            inv = _F1 / row[lead]
            pivots[lead] = {j: v * inv for j, v in row.items()}
            rank += 1
    return rank


def rank_of_vectors(vectors, coord_filter=None):
    """Rank of a family of sparse vectors, optionally restricted to coords."""
    rows = []
    for vec in vectors:
        if coord_filter is None:
            rows.append(dict(vec))
        else:
            rows.append({j: v for j, v in vec.items() if coord_filter(j)})
    return _row_rank(rows)
