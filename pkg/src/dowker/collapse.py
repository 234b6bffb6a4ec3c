"""Row/column domination and the strong-collapse core.

A row is dominated when its column set is contained in another row's; deleting
it does not change the homotopy type of the complex.  Exhausting row removals,
then column removals (the same scan on the transpose), until neither applies
yields the core.  A relation whose core is 1x1 is strong collapsible, hence
contractible; a larger core is inconclusive.
"""

from .relation import Relation, _iter_bits


def find_dominated_row(r: Relation):
    """First (dominated, dominating) row index pair under the ascending scan.

    Equal rows report the higher index as dominated.  None when every row is
    maximal.
    """
    masks = r.row_masks
    n = len(masks)
    for i in range(n):
        mi = masks[i]
        for j in range(n):
            if j == i:
                continue
            mj = masks[j]
            if mi & mj == mi and (mi != mj or i > j):
                return (i, j)
    return None


def _exhaust(live_a, masks_a, masks_b):
    """Remove dominated members of axis a until none remain.

    Scan ascending over live positions, restarting after each removal; the
    removed member's bit is cleared on axis b so subset tests stay exact
    without compacting indices.  Returns True when anything was removed.
    """
    removed_any = False
    restart = True
    while restart:
        restart = False
        for ai in range(len(live_a)):
            i = live_a[ai]
            mi = masks_a[i]
            for aj in range(len(live_a)):
                if aj == ai:
                    continue
                mj = masks_a[live_a[aj]]
                if mi & mj == mi and (mi != mj or ai > aj):
                    del live_a[ai]
                    bit = ~(1 << i)
                    for b in _iter_bits(mi):
                        masks_b[b] &= bit
                    masks_a[i] = 0
                    removed_any = True
                    restart = True
                    break
            if restart:
                break
    return removed_any


def collapse_core(r: Relation) -> Relation:
    """Alternate row and column domination removal to the fixpoint.

    The core has no dominated row and no dominated column, and the same mod-2
    Betti numbers as the input.
    """
    row_masks = list(r.row_masks)
    col_masks = list(r.col_masks)
    live_rows = list(range(r.nrows))
    live_cols = list(range(r.ncols))
    while True:
        changed = _exhaust(live_rows, row_masks, col_masks)
        changed |= _exhaust(live_cols, col_masks, row_masks)
        if not changed:
            break
    col_pos = {c: k for k, c in enumerate(live_cols)}
    rows = [[col_pos[c] for c in _iter_bits(row_masks[i])] for i in live_rows]
    return Relation([r.row_labels[i] for i in live_rows],
                    [r.col_labels[j] for j in live_cols], rows)


def is_strong_collapsible(r: Relation) -> bool:
    """True when the core is a single vertex in a single toplex.

    True implies the complex is contractible; False is inconclusive.
    """
    if r.nrows == 0:
        raise ValueError("empty relation")
    return collapse_core(r).shape == (1, 1)
