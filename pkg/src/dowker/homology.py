"""GF(2) simplicial homology oracle.

Independent of the reduction path: it expands toplexes into explicit simplex
lists, builds boundary matrices over GF(2), and computes Betti numbers by
rank.  Used to certify that reductions preserve the mod-2 Betti numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import SizeCapError
from .relation import _toplex_name_sets

DEFAULT_SIZE_CAP = 5_000_000


@dataclass
class ChainComplexGF2:
    """Simplices by dimension plus the boundary matrices between them.

    `simplices_by_dim[k]` is the sorted list of k-simplices as ascending
    vertex-index tuples.  `boundary[k]` is the GF(2) matrix of the boundary
    map from k-chains to (k-1)-chains (rows indexed by (k-1)-simplices,
    columns by k-simplices); `boundary[0]` is the zero map.
    """

    simplices_by_dim: list = field(default_factory=list)
    boundary: list = field(default_factory=list)

    def counts(self):
        return tuple(len(s) for s in self.simplices_by_dim)


def enumerate_simplices(toplexes, max_dim, size_cap=DEFAULT_SIZE_CAP) -> ChainComplexGF2:
    """All simplices of the complex generated by `toplexes`, up to max_dim+1.

    Going one dimension above max_dim makes the Betti number at max_dim
    exact.  Raises SizeCapError when the deduplicated simplex count would
    exceed `size_cap`.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    order, tops = _toplex_name_sets(toplexes)
    index = {v: i for i, v in enumerate(order)}
    top_k = max_dim + 1
    levels = [set() for _ in range(top_k + 1)]
    total = 0
    for t in tops:
        vs = sorted(index[v] for v in t)
        for k in range(min(len(vs), top_k + 1)):
            if math.comb(len(vs), k + 1) > size_cap:
                raise SizeCapError(f"simplex count exceeds cap {size_cap}")
            level = levels[k]
            before = len(level)
            level.update(combinations(vs, k + 1))
            total += len(level) - before
            if total > size_cap:
                raise SizeCapError(f"simplex count exceeds cap {size_cap}")
    simplices = [sorted(level) for level in levels]
    while simplices and not simplices[-1]:
        simplices.pop()
    boundary = []
    for k, level in enumerate(simplices):
        if k == 0:
            boundary.append(np.zeros((0, len(level)), dtype=np.uint8))
            continue
        pos = {s: i for i, s in enumerate(simplices[k - 1])}
        mat = np.zeros((len(simplices[k - 1]), len(level)), dtype=np.uint8)
        for c, s in enumerate(level):
            for omit in range(len(s)):
                face = s[:omit] + s[omit + 1:]
                mat[pos[face], c] = 1
        boundary.append(mat)
    return ChainComplexGF2(simplices_by_dim=simplices, boundary=boundary)


def rank_gf2(matrix) -> int:
    """Rank over GF(2) by bitset row elimination; the input is not modified."""
    a = np.asarray(matrix, dtype=np.uint8) & 1
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    packed = np.packbits(a, axis=1, bitorder="little")
    lead = {}
    rank = 0
    for row in packed:
        v = int.from_bytes(row.tobytes(), "little")
        while v:
            h = v.bit_length() - 1
            w = lead.get(h)
            if w is None:
                lead[h] = v
                rank += 1
                break
            v ^= w
    return rank


def betti_gf2(toplexes, max_dim=None, size_cap=DEFAULT_SIZE_CAP):
    """Mod-2 Betti numbers (beta_0, ..., beta_max_dim).

    beta_k = dim ker boundary_k - rank boundary_{k+1}.  `max_dim` defaults
    to the dimension of the largest toplex.
    """
    order, tops = _toplex_name_sets(toplexes)
    if max_dim is None:
        max_dim = max((len(t) for t in tops), default=1) - 1
        max_dim = max(max_dim, 0)
    cc = enumerate_simplices(tops, max_dim, size_cap=size_cap)
    ranks = [rank_gf2(b) for b in cc.boundary]
    betti = []
    for k in range(max_dim + 1):
        n_k = len(cc.simplices_by_dim[k]) if k < len(cc.simplices_by_dim) else 0
        r_k = ranks[k] if k < len(ranks) else 0
        r_k1 = ranks[k + 1] if k + 1 < len(ranks) else 0
        betti.append(n_k - r_k - r_k1)
    return tuple(betti)
