"""Single-pass pair-merge reduction of a relation.

The driver walks the rows once with a cursor.  For the cursor row it orders
candidate partners (rows sharing a column first, then rows two column-hops
away, ascending index within each class), tests whether the union of the two
closed stars collapses to a point, and on the first success replaces the pair
by one fresh cone vertex whose row is the union of the two rows.  Columns
that became duplicated or absorbed by the merge are cleaned up immediately;
only pairs inside the new row's columns can be affected, so the clean-up is
scoped there.  Each step removes two rows and adds one, preserving the mod-2
Betti numbers whenever the tested subcomplex really was contractible.

Rows the cursor has passed are never reconsidered: a pair that failed the
contractibility test cannot become contractible through later merges.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .collapse import is_strong_collapsible
from .relation import Relation, _iter_bits

_Z_LABEL = re.compile(r"^z(\d+)$")


@dataclass(frozen=True)
class StepReport:
    """Bookkeeping for one pair merge.

    `delta_z` is the vertex count of the union-of-stars subcomplex that was
    tested (the row count of its submatrix); `epsilon_z` is the toplex count
    of the new vertex's star after clean-up.  `faces_absorbed` counts columns
    removed because the merge turned them into a face of another toplex,
    `duplicates_merged` columns removed because two toplexes became the same
    one; together they account exactly for the column count drop.
    """

    pair: tuple
    z_label: str
    faces_absorbed: int
    duplicates_merged: int
    delta_z: int
    epsilon_z: int
    cols_before: int
    cols_after: int


@dataclass
class ReductionStats:
    """Per-run counters and size tracking.

    `comparison_budget` is the pair-test bound computed on the input;
    `delta_max_history` / `epsilon_max_history` sample the largest star
    vertex/toplex count over live vertices, once before any step and once
    after each step.
    """

    rows_before: int = 0
    cols_before: int = 0
    rows_after: int = 0
    cols_after: int = 0
    steps_applied: int = 0
    contractibility_tests: int = 0
    comparison_budget: int = 0
    delta_max_seen: int = 0
    epsilon_max_seen: int = 0
    faces_absorbed_total: int = 0
    duplicates_merged_total: int = 0
    delta_max_history: list = field(default_factory=list)
    epsilon_max_history: list = field(default_factory=list)
    tested_pairs: list = field(default_factory=list)


def _star_vertex_mask(r, i):
    """Rows sharing at least one column with row i (includes i)."""
    m = 0
    for c in _iter_bits(r.row_masks[i]):
        m |= r.col_masks[c]
    return m


def _two_hop_mask(r, i):
    """Rows reachable from row i within two column hops (includes i)."""
    one = _star_vertex_mask(r, i)
    cols = 0
    for v in _iter_bits(one):
        cols |= r.row_masks[v]
    two = 0
    for c in _iter_bits(cols):
        two |= r.col_masks[c]
    return two


def candidate_vertices(r: Relation, x: int):
    """Merge partners for row x, in test order.

    All rows with index greater than x whose closed star meets the closed
    star of x, rows sharing a column with x first, then the remaining
    two-hop rows; ascending index within each class.
    """
    if not 0 <= x < r.nrows:
        raise ValueError("row index out of range")
    one = _star_vertex_mask(r, x)
    two = _two_hop_mask(r, x)
    first = [i for i in _iter_bits(one) if i > x]
    second = [i for i in _iter_bits(two & ~one) if i > x]
    return first + second


def comparison_budget(r: Relation) -> int:
    """Bound on pair tests: half the sum over vertices of their two-hop
    neighbor counts."""
    total = 0
    for i in range(r.nrows):
        total += _two_hop_mask(r, i).bit_count() - 1
    return total // 2


def _fresh_z_label(labels):
    nxt = 0
    for l in labels:
        m = _Z_LABEL.match(str(l))
        if m:
            nxt = max(nxt, int(m.group(1)) + 1)
    return f"z{nxt}"


def reduction_step(r: Relation, xi: int, xj: int):
    """Merge rows xi and xj into a fresh cone row appended at the end.

    The caller must already have verified that the union of the two closed
    stars is strong collapsible; this function does not re-test it, and
    applying it to a non-contractible union silently breaks the homotopy
    guarantee.  Requires a column-irreducible input for the scoped clean-up
    to restore full irreducibility.
    """
    if xi == xj:
        raise ValueError("need two distinct rows")
    union = r.row_masks[xi] | r.row_masks[xj]
    delta_z = (_star_vertex_mask(r, xi) | _star_vertex_mask(r, xj)).bit_count()
    li, lj = r.row_labels[xi], r.row_labels[xj]
    z = _fresh_z_label(r.row_labels)
    merged = r.add_row(z, _iter_bits(union)).remove_rows([li, lj])
    if merged.ncols != r.ncols:
        raise AssertionError("pair merge cannot orphan a column")
    cleaned, removed = merged._clean_columns(restrict_to=_iter_bits(union))
    faces = sum(1 for _, kind in removed if kind == "face")
    dups = len(removed) - faces
    report = StepReport(pair=(li, lj), z_label=z,
                        faces_absorbed=faces, duplicates_merged=dups,
                        delta_z=delta_z,
                        epsilon_z=cleaned.row_masks[-1].bit_count(),
                        cols_before=r.ncols, cols_after=cleaned.ncols)
    return cleaned, report


def _delta_max(r):
    return max((_star_vertex_mask(r, i).bit_count() for i in range(r.nrows)),
               default=0)


def _epsilon_max(r):
    return max((m.bit_count() for m in r.row_masks), default=0)


def reduce(r: Relation, *, on_step=None, debug_check_betti=False):
    """Run the single-pass reduction to exhaustion.

    Returns (reduced relation, ReductionStats, list of StepReport).  The
    input must be column irreducible.  After a successful merge the cursor
    stays on the same position (now occupied by the next row) and candidates
    are re-derived; fresh cone rows land at the tail and are processed when
    the cursor reaches them.  `on_step(before, after, report)` is called
    after every merge; `debug_check_betti` re-runs the homology oracle around
    each step on inputs with at most 500 columns.
    """
    stats = ReductionStats(rows_before=r.nrows, cols_before=r.ncols,
                           comparison_budget=comparison_budget(r))
    stats.delta_max_history.append(_delta_max(r))
    stats.epsilon_max_history.append(_epsilon_max(r))
    log = []
    cur = r
    cursor = 0
    while cursor < cur.nrows:
        fired = False
        for j in candidate_vertices(cur, cursor):
            union = cur.row_masks[cursor] | cur.row_masks[j]
            sub = cur.restrict_to_columns(_iter_bits(union)).relation
            ok = is_strong_collapsible(sub)
            stats.contractibility_tests += 1
            stats.tested_pairs.append((cur.row_labels[cursor], cur.row_labels[j], ok))
            if not ok:
                continue
            before = cur
            cur, rep = reduction_step(cur, cursor, j)
            log.append(rep)
            stats.steps_applied += 1
            stats.faces_absorbed_total += rep.faces_absorbed
            stats.duplicates_merged_total += rep.duplicates_merged
            stats.delta_max_history.append(_delta_max(cur))
            stats.epsilon_max_history.append(_epsilon_max(cur))
            if debug_check_betti and before.ncols <= 500:
                from .homology import betti_gf2
                b0 = betti_gf2(before.toplexes(), 2)
                b1 = betti_gf2(cur.toplexes(), 2)
                if b0 != b1:
                    raise AssertionError(
                        f"step {stats.steps_applied} changed Betti numbers "
                        f"{b0} -> {b1} (pair {rep.pair})")
            if on_step is not None:
                on_step(before, cur, rep)
            fired = True
            break
        if not fired:
            cursor += 1
    stats.rows_after = cur.nrows
    stats.cols_after = cur.ncols
    stats.delta_max_seen = max(stats.delta_max_history, default=0)
    stats.epsilon_max_seen = max(stats.epsilon_max_history, default=0)
    return cur, stats, log


def verify_step_equations(before: Relation, after: Relation, report: StepReport) -> bool:
    """Audit one merge step against the size-update rules, from scratch.

    Re-derives every surviving vertex's star vertex/toplex counts on both
    sides and checks them against the four-case update rules: the merged
    rows disappear, the cone row's counts come from the two stars and the
    clean-up removals, a vertex whose star contained both merged rows loses
    exactly one star vertex and its star's removed columns, and any other
    vertex is untouched.  Also re-classifies the removed columns by
    replaying the merge substitution.  Returns True iff everything matches.
    """
    li, lj = report.pair
    z = report.z_label
    try:
        xi = before.row_labels.index(li)
        xj = before.row_labels.index(lj)
    except ValueError:
        return False
    if after.row_labels != tuple(l for l in before.row_labels if l not in (li, lj)) + (z,):
        return False
    after_cols = set(after.col_labels)
    if [c for c in before.col_labels if c in after_cols] != list(after.col_labels):
        return False
    removed = [c for c in before.col_labels if c not in after_cols]
    if before.ncols != report.cols_before or after.ncols != report.cols_after:
        return False
    if report.faces_absorbed + report.duplicates_merged != len(removed):
        return False

    union_mask = before.row_masks[xi] | before.row_masks[xj]
    union_cols = {before.col_labels[c] for c in _iter_bits(union_mask)}
    if any(c not in union_cols for c in removed):
        return False

    # replay the substitution on every column of `before`
    subst = {}
    before_rows = {}
    for c in range(before.ncols):
        label = before.col_labels[c]
        rows = frozenset(before.row_labels[i] for i in _iter_bits(before.col_masks[c]))
        before_rows[label] = rows
        if label in union_cols:
            rows = (rows - {li, lj}) | {z}
        subst[label] = rows
    for j, label in enumerate(after.col_labels):
        got = frozenset(after.row_labels[i] for i in _iter_bits(after.col_masks[j]))
        if got != subst[label]:
            return False
    faces = dups = 0
    for c in removed:
        if any(subst[k] == subst[c] for k in after.col_labels):
            dups += 1
        elif any(subst[c] < subst[k] for k in after.col_labels):
            faces += 1
        else:
            return False
    if faces != report.faces_absorbed or dups != report.duplicates_merged:
        return False

    def star_labels(rel, i):
        return frozenset(rel.row_labels[v] for v in _iter_bits(_star_vertex_mask(rel, i)))

    sv_i, sv_j = star_labels(before, xi), star_labels(before, xj)
    if report.delta_z != len(sv_i | sv_j):
        return False
    shared_cols = (before.row_masks[xi] & before.row_masks[xj]).bit_count()
    eps_i = before.row_masks[xi].bit_count()
    eps_j = before.row_masks[xj].bit_count()
    if report.epsilon_z != (eps_i + eps_j - shared_cols
                            - report.faces_absorbed - report.duplicates_merged):
        return False
    z_idx = after.nrows - 1
    if len(star_labels(after, z_idx)) != report.delta_z - 1:
        return False
    if after.row_masks[z_idx].bit_count() != report.epsilon_z:
        return False

    removed_by_vertex = {}
    for c in removed:
        for v in before_rows[c]:
            removed_by_vertex[v] = removed_by_vertex.get(v, 0) + 1
    after_pos = {l: i for i, l in enumerate(after.row_labels)}
    for kb, label in enumerate(before.row_labels):
        if label in (li, lj):
            continue
        ka = after_pos[label]
        sv_b = star_labels(before, kb)
        d_b = len(sv_b)
        d_a = len(star_labels(after, ka))
        e_b = before.row_masks[kb].bit_count()
        e_a = after.row_masks[ka].bit_count()
        in_star = removed_by_vertex.get(label, 0)
        if li in sv_b and lj in sv_b:
            if d_a != d_b - 1 or e_a != e_b - in_star:
                return False
        else:
            if in_star != 0 or d_a != d_b or e_a != e_b:
                return False
    return True


def format_step_log(reports) -> str:
    """Line-oriented step log, one line per merge."""
    lines = [f"STEP {n}: merge {rep.pair[0]} {rep.pair[1]} -> {rep.z_label} "
             f"cols {rep.cols_before}->{rep.cols_after} "
             f"dup {rep.duplicates_merged} face {rep.faces_absorbed}"
             for n, rep in enumerate(reports, 1)]
    return "".join(line + "\n" for line in lines)
