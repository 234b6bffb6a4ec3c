"""Sparse binary relation core: the vertex/toplex incidence matrix.

A relation between row labels (vertices) and column labels (toplexes) is the
single source of truth for a simplicial complex: the simplices of the complex
are exactly the row sets that share a column.  Incidence is stored as bitmasks
in both orientations, so row-side domination scans and column-side clean-up
each run on their natural axis without transposing the whole matrix.

Relation values are immutable once constructed; every operation returns a new
value, which makes sharing across threads safe without locking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


def _iter_bits(mask):
    """Yield the set bit positions of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _drop_bit(mask, pos):
    """Delete bit position `pos`, shifting higher bits down by one."""
    low = mask & ((1 << pos) - 1)
    return ((mask >> (pos + 1)) << pos) | low


def _drop_bits(mask, positions_desc):
    for pos in positions_desc:
        mask = _drop_bit(mask, pos)
    return mask


def _keep_irreducible(masks, candidates):
    """Candidate indices that survive containment clean-up.

    A candidate goes away when its mask is strictly contained in another
    candidate's, or equals the mask of a lower-indexed candidate (duplicates
    keep the lowest index).  Pairs with a member outside `candidates` are
    never compared.
    """
    kept = []
    for y1 in candidates:
        m1 = masks[y1]
        dominated = False
        for y2 in candidates:
            if y1 == y2:
                continue
            m2 = masks[y2]
            if m1 & m2 == m1 and (m1 != m2 or y2 < y1):
                dominated = True
                break
        if not dominated:
            kept.append(y1)
    return kept


class Relation:
    """Immutable binary incidence between vertices (rows) and toplexes (columns).

    Invariants: labels are unique per axis, the two mask orientations are exact
    transposes, and no row or column is all-zero (the 0x0 relation is the only
    degenerate value allowed).
    """

    __slots__ = ("row_labels", "col_labels", "row_masks", "col_masks")

    def __init__(self, row_labels, col_labels, rows):
        """Build from per-row column index collections.

        `rows[i]` lists the column indices incident to row i.  Duplicate
        labels, empty rows, uncovered columns and out-of-range indices are
        rejected with ValueError.
        """
        row_labels = tuple(row_labels)
        col_labels = tuple(col_labels)
        if len(set(row_labels)) != len(row_labels):
            raise ValueError("duplicate row labels")
        if len(set(col_labels)) != len(col_labels):
            raise ValueError("duplicate column labels")
        rows = list(rows)
        if len(rows) != len(row_labels):
            raise ValueError("row count does not match row label count")
        ncols = len(col_labels)
        row_masks = []
        for label, cols in zip(row_labels, rows):
            m = 0
            for c in cols:
                if not 0 <= c < ncols:
                    raise ValueError(f"column index {c} out of range in row {label!r}")
                m |= 1 << c
            if m == 0:
                raise ValueError(f"row {label!r} has no incident column")
            row_masks.append(m)
        col_masks = [0] * ncols
        for i, m in enumerate(row_masks):
            for c in _iter_bits(m):
                col_masks[c] |= 1 << i
        for j, m in enumerate(col_masks):
            if m == 0:
                raise ValueError(f"column {col_labels[j]!r} has no incident row")
        self.row_labels = row_labels
        self.col_labels = col_labels
        self.row_masks = tuple(row_masks)
        self.col_masks = tuple(col_masks)

    @classmethod
    def _build(cls, row_labels, col_labels, row_masks):
        """Trusted constructor from row masks; re-derives the column masks."""
        self = object.__new__(cls)
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.row_masks = tuple(row_masks)
        col_masks = [0] * len(self.col_labels)
        for i, m in enumerate(self.row_masks):
            if m == 0:
                raise ValueError(f"row {self.row_labels[i]!r} has no incident column")
            for c in _iter_bits(m):
                col_masks[c] |= 1 << i
        if any(m == 0 for m in col_masks):
            raise ValueError("all-zero column")
        self.col_masks = tuple(col_masks)
        return self

    # ------------------------------------------------------------------
    # basic access

    @property
    def nrows(self):
        return len(self.row_labels)

    @property
    def ncols(self):
        return len(self.col_labels)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        """Ascending column indices incident to row i."""
        return tuple(_iter_bits(self.row_masks[i]))

    def col(self, j):
        """Ascending row indices incident to column j."""
        return tuple(_iter_bits(self.col_masks[j]))

    def row_index(self, label):
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise ValueError(f"unknown row label {label!r}") from None

    def to_dense(self):
        return [[(m >> j) & 1 for j in range(self.ncols)] for m in self.row_masks]

    def toplexes(self):
        """Per-column vertex label tuples (ascending row index).

        On a column-irreducible relation these are exactly the toplexes of
        the complex, one per column.
        """
        return [tuple(self.row_labels[i] for i in _iter_bits(m)) for m in self.col_masks]

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return (self.row_labels == other.row_labels
                and self.col_labels == other.col_labels
                and self.row_masks == other.row_masks)

    def __hash__(self):
        return hash((self.row_labels, self.col_labels, self.row_masks))

    def __repr__(self):
        return f"Relation({self.nrows}x{self.ncols})"

    # ------------------------------------------------------------------
    # construction from complexes

    @classmethod
    def from_toplexes(cls, toplexes):
        """Relation whose complex equals the complex generated by `toplexes`.

        Accepts a ToplexList or any iterable of vertex-name collections.
        Rows are the vertices (input vertex order when the argument carries
        one, first-appearance order otherwise); columns are the maximal input
        toplexes.  Duplicate and set-contained toplexes are dropped, keeping
        the earliest occurrence, so the result is column irreducible.
        """
        order, tops = _toplex_name_sets(toplexes)
        index = {v: i for i, v in enumerate(order)}
        col_masks = [_mask_of(index[v] for v in t) for t in tops]
        keep = _keep_irreducible(col_masks, range(len(col_masks)))
        col_masks = [col_masks[k] for k in keep]
        row_masks = [0] * len(order)
        for j, m in enumerate(col_masks):
            for i in _iter_bits(m):
                row_masks[i] |= 1 << j
        for i, m in enumerate(row_masks):
            if m == 0:
                raise ValueError(f"vertex {order[i]!r} belongs to no toplex")
        col_labels = [f"t{j}" for j in range(len(col_masks))]
        return cls._build(order, col_labels, row_masks)

    # ------------------------------------------------------------------
    # operations

    def restrict_to_columns(self, cols):
        """Sub-relation on the given columns, with now-empty rows dropped.

        When `cols` is the union of the column sets of a vertex set A, the
        complex of the result is exactly the union of the closed stars of A.
        """
        cols = sorted(set(cols))
        if not cols:
            raise ValueError("empty column selection")
        if cols[0] < 0 or cols[-1] >= self.ncols:
            raise ValueError("column index out of range")
        colmask = _mask_of(cols)
        keep_rows = [i for i, m in enumerate(self.row_masks) if m & colmask]
        local = {c: k for k, c in enumerate(cols)}
        rows = [[local[c] for c in _iter_bits(self.row_masks[i] & colmask)]
                for i in keep_rows]
        rel = Relation([self.row_labels[i] for i in keep_rows],
                       [self.col_labels[c] for c in cols], rows)
        return SubRelation(tuple(keep_rows), tuple(cols), rel)

    def add_row(self, label, cols):
        """New relation with a row appended at the end (highest index)."""
        if label in self.row_labels:
            raise ValueError(f"duplicate row label {label!r}")
        mask = 0
        for c in cols:
            if not 0 <= c < self.ncols:
                raise ValueError(f"column index {c} out of range")
            mask |= 1 << c
        if mask == 0:
            raise ValueError("new row needs at least one column")
        return Relation._build(self.row_labels + (label,), self.col_labels,
                               self.row_masks + (mask,))

    def remove_rows(self, labels):
        """New relation without the given rows.

        Columns left with no incident row are removed together with their
        labels; the remaining indexing is compacted preserving order.
        """
        drop = sorted({self.row_index(l) for l in labels})
        if not drop:
            return self
        keep_rows = [i for i in range(self.nrows) if i not in set(drop)]
        drop_desc = drop[::-1]
        col_masks = [_drop_bits(m, drop_desc) for m in self.col_masks]
        dead_cols = [j for j, m in enumerate(col_masks) if m == 0]
        row_masks = [self.row_masks[i] for i in keep_rows]
        if dead_cols:
            dead_desc = dead_cols[::-1]
            row_masks = [_drop_bits(m, dead_desc) for m in row_masks]
        keep_cols = [j for j in range(self.ncols) if j not in set(dead_cols)]
        row_labels = [self.row_labels[i] for i in keep_rows]
        col_labels = [self.col_labels[j] for j in keep_cols]
        return Relation._build(row_labels, col_labels, row_masks)

    def transpose(self):
        """Rows and columns swapped; an involution."""
        if self.nrows == 0:
            return self
        return Relation._build(self.col_labels, self.row_labels, self.col_masks)

    def make_column_irreducible(self, restrict_to=None):
        """Remove columns whose row set is contained in another's.

        With `restrict_to` given, only pairs with both members inside that
        column set are compared (enough to restore irreducibility after a
        pair merge); without it the result is fully column irreducible.
        Exact duplicates keep the lowest column index.
        """
        cleaned, _ = self._clean_columns(restrict_to)
        return cleaned

    def _clean_columns(self, restrict_to=None):
        """make_column_irreducible plus a removal log of (index, kind).

        kind is "duplicate" when the removed column's row set equals a kept
        candidate's, "face" when it is strictly contained in one.
        """
        if restrict_to is None:
            candidates = list(range(self.ncols))
        else:
            candidates = sorted(set(restrict_to))
            if candidates and (candidates[0] < 0 or candidates[-1] >= self.ncols):
                raise ValueError("column index out of range")
        kept = set(_keep_irreducible(self.col_masks, candidates))
        removed = [y for y in candidates if y not in kept]
        if not removed:
            return self, []
        info = []
        for y in removed:
            kind = ("duplicate"
                    if any(self.col_masks[k] == self.col_masks[y] for k in kept)
                    else "face")
            info.append((y, kind))
        removed_desc = removed[::-1]
        row_masks = [_drop_bits(m, removed_desc) for m in self.row_masks]
        removed_set = set(removed)
        col_labels = [l for j, l in enumerate(self.col_labels) if j not in removed_set]
        return Relation._build(self.row_labels, col_labels, row_masks), info

    def is_column_irreducible(self):
        for j1 in range(self.ncols):
            m1 = self.col_masks[j1]
            for j2 in range(self.ncols):
                if j1 != j2 and m1 & self.col_masks[j2] == m1:
                    return False
        return True

    # ------------------------------------------------------------------
    # text format

    def to_text(self):
        """Serialize to the relation text format (bit-exact round trip).

        Line 1: `<rows> <cols>`; line 2: row labels; line 3: column labels;
        then one line per row with the ascending column indices of its ones.
        """
        tokens = [str(l) for l in self.row_labels + self.col_labels]
        for t in tokens:
            if not t or t.split() != [t] or t.startswith("#"):
                raise ValueError(f"label {t!r} cannot be written as a text token")
        out = [f"{self.nrows} {self.ncols}",
               " ".join(str(l) for l in self.row_labels),
               " ".join(str(l) for l in self.col_labels)]
        for m in self.row_masks:
            out.append(" ".join(str(c) for c in _iter_bits(m)))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse the relation text format; `#` lines are comments.

        An empty body line would be an empty row and is rejected.
        """
        lines = [(n, raw) for n, raw in enumerate(text.splitlines(), 1)
                 if not raw.lstrip().startswith("#")]
        if len(lines) < 3:
            raise ParseError("expected a size line and two label lines")
        n_size, size_line = lines[0]
        parts = size_line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("size line must be '<rows> <cols>'", line=n_size)
        nrows, ncols = int(parts[0]), int(parts[1])
        n_row, row_line = lines[1]
        n_col, col_line = lines[2]
        row_labels = row_line.split()
        col_labels = col_line.split()
        if len(row_labels) != nrows:
            raise ParseError(f"expected {nrows} row labels, got {len(row_labels)}",
                             line=n_row)
        if len(col_labels) != ncols:
            raise ParseError(f"expected {ncols} column labels, got {len(col_labels)}",
                             line=n_col)
        body = lines[3:]
        if len(body) != nrows:
            raise ParseError(f"expected {nrows} row lines, got {len(body)}")
        rows = []
        for n, raw in body:
            if not raw.strip():
                raise ParseError("empty row", line=n)
            try:
                idx = [int(t) for t in raw.split()]
            except ValueError:
                raise ParseError("row line must list column indices", line=n) from None
            if any(not 0 <= c < ncols for c in idx):
                raise ParseError("column index out of range", line=n)
            if idx != sorted(set(idx)):
                raise ParseError("column indices must be strictly ascending", line=n)
            rows.append(idx)
        try:
            return cls(row_labels, col_labels, rows)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class SubRelation:
    """A relation restricted to a column subset, with empty rows dropped.

    `relation` holds the local incidence (parent labels preserved);
    `parent_rows` / `parent_cols` map local indices back to the parent.
    """

    parent_rows: tuple
    parent_cols: tuple
    relation: Relation


def _toplex_name_sets(toplexes):
    """Vertex order and per-toplex name tuples from a ToplexList or iterable."""
    members = getattr(toplexes, "toplexes", None)
    order = getattr(toplexes, "vertex_names", None)
    if members is None:
        members = list(toplexes)
    tops = [tuple(t) for t in members]
    for t in tops:
        if not t:
            raise ValueError("empty toplex")
        if len(set(t)) != len(t):
            raise ValueError(f"toplex {t!r} repeats a vertex")
    if order is None:
        seen = {}
        for t in tops:
            for v in t:
                seen.setdefault(v, None)
        order = tuple(seen)
    else:
        order = tuple(order)
        if len(set(order)) != len(order):
            raise ValueError("duplicate vertex names")
        missing = {v for t in tops for v in t} - set(order)
        if missing:
            raise ValueError(f"toplex vertices missing from vertex order: {missing}")
    return order, tops


def from_toplexes(toplexes) -> Relation:
    """Module-level alias for Relation.from_toplexes."""
    return Relation.from_toplexes(toplexes)
