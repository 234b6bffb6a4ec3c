"""Complex ingestion and fixture generation.

Covers the three ways a relation enters the pipeline: toplex files (one
maximal simplex per line), ASCII OFF meshes (faces become toplexes, geometry
is discarded), and covers of a space (the nerve restricted to intersections
witnessed by elements).  Also provides the sphere/torus/simplex-boundary
generators used as regression fixtures.
"""

from __future__ import annotations

from .errors import ParseError
from .relation import Relation, _keep_irreducible


class ToplexList:
    """Ordered list of toplexes with a stable vertex order.

    Normalization drops duplicate toplexes and toplexes set-contained in
    another, keeping the earliest occurrence.  `vertex_names` is the union of
    all input toplexes in first-appearance order (or the explicit order given).
    """

    def __init__(self, toplexes, vertex_names=None):
        tops = [tuple(t) for t in toplexes]
        for t in tops:
            if not t:
                raise ValueError("empty toplex")
            if len(set(t)) != len(t):
                raise ValueError(f"toplex {t!r} repeats a vertex")
        if vertex_names is None:
            seen = {}
            for t in tops:
                for v in t:
                    seen.setdefault(v, None)
            vertex_names = tuple(seen)
        else:
            vertex_names = tuple(vertex_names)
            if len(set(vertex_names)) != len(vertex_names):
                raise ValueError("duplicate vertex names")
            union = {v for t in tops for v in t}
            if union - set(vertex_names):
                raise ValueError("vertex_names does not cover all toplexes")
        sets = [frozenset(t) for t in tops]
        kept = []
        for i, s in enumerate(sets):
            drop = False
            for j, u in enumerate(sets):
                if i != j and s <= u and (s != u or j < i):
                    drop = True
                    break
            if not drop:
                kept.append(i)
        self.toplexes = tuple(tops[i] for i in kept)
        self.vertex_names = vertex_names
        self.index = {v: i for i, v in enumerate(vertex_names)}

    def __len__(self):
        return len(self.toplexes)

    def __iter__(self):
        return iter(self.toplexes)

    def __eq__(self, other):
        if not isinstance(other, ToplexList):
            return NotImplemented
        return (self.toplexes == other.toplexes
                and self.vertex_names == other.vertex_names)

    def __repr__(self):
        return f"ToplexList({len(self.toplexes)} toplexes, {len(self.vertex_names)} vertices)"

    @property
    def max_dimension(self):
        return max((len(t) for t in self.toplexes), default=1) - 1

    def to_text(self):
        """One toplex per line, vertex names whitespace-separated."""
        return "".join(" ".join(str(v) for v in t) + "\n" for t in self.toplexes)


def parse_toplex_file(text) -> ToplexList:
    """Parse the toplex file format.

    Each non-comment line is one toplex as whitespace-separated vertex names;
    `#` lines are comments.  Blank lines and repeated vertices within a line
    are rejected with the offending line number.
    """
    tops = []
    for n, raw in enumerate(text.splitlines(), 1):
        if raw.lstrip().startswith("#"):
            continue
        names = raw.split()
        if not names:
            raise ParseError("blank line in toplex file", line=n)
        if len(set(names)) != len(names):
            raise ParseError("vertex repeated within a toplex", line=n)
        tops.append(tuple(names))
    return ToplexList(tops)


def parse_off(text) -> ToplexList:
    """Parse an ASCII OFF mesh into its face toplexes.

    Coordinates are discarded: only which vertices span each face matters to
    the reduction.  Polygon faces are kept whole as toplexes.  Vertex names
    are the decimal indices from the file.
    """
    lines = [(n, raw.strip()) for n, raw in enumerate(text.splitlines(), 1)
             if raw.strip() and not raw.lstrip().startswith("#")]
    pos = 0

    def next_line(what):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"truncated OFF file: missing {what}")
        n, raw = lines[pos]
        pos += 1
        return n, raw

    n, header = next_line("header")
    if header != "OFF":
        raise ParseError("not a valid OFF header", line=n)
    n, counts = next_line("counts line")
    parts = counts.split()
    if len(parts) < 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise ParseError("counts line must be '<vertices> <faces> [<edges>]'", line=n)
    n_verts, n_faces = int(parts[0]), int(parts[1])
    if n_verts < 0 or n_faces < 0:
        raise ParseError("negative count", line=n)
    for _ in range(n_verts):
        next_line("vertex line")
    tops = []
    for _ in range(n_faces):
        n, raw = next_line("face line")
        try:
            nums = [int(t) for t in raw.split()]
        except ValueError:
            raise ParseError("face line must be integers", line=n) from None
        if not nums or nums[0] < 1 or len(nums) < nums[0] + 1:
            raise ParseError("face line must be 'k i1 ... ik'", line=n)
        face = nums[1:nums[0] + 1]
        for i in face:
            if not 0 <= i < n_verts:
                raise ParseError(f"face index {i} out of range", line=n)
        if len(set(face)) != len(face):
            raise ParseError("face repeats a vertex", line=n)
        tops.append(tuple(str(i) for i in face))
    return ToplexList(tops)


def witness_relation(cover) -> Relation:
    """Relation of a cover: rows are cover set names, columns the distinct
    membership fingerprints of the underlying elements.

    Two elements contained in exactly the same cover sets give one column,
    and fingerprint columns contained in another are dropped, so the complex
    of the result is the nerve of the cover restricted to intersections
    actually witnessed by elements.
    """
    items = list(cover.items()) if hasattr(cover, "items") else [tuple(p) for p in cover]
    names = [name for name, _ in items]
    if len(set(names)) != len(names):
        raise ValueError("duplicate cover set names")
    sets = []
    for name, elements in items:
        elements = list(elements)
        if not elements:
            raise ValueError(f"cover set {name!r} is empty")
        sets.append(elements)
    membership = {}
    element_order = []
    for i, elements in enumerate(sets):
        for e in elements:
            if e not in membership:
                membership[e] = 0
                element_order.append(e)
            membership[e] |= 1 << i
    col_masks = []
    col_labels = []
    seen = set()
    for e in element_order:
        fp = membership[e]
        if fp in seen:
            continue
        seen.add(fp)
        col_masks.append(fp)
        label = str(e)
        while label in col_labels:
            label += "'"
        col_labels.append(label)
    keep = _keep_irreducible(col_masks, range(len(col_masks)))
    col_masks = [col_masks[k] for k in keep]
    col_labels = [col_labels[k] for k in keep]
    rows = [[j for j, m in enumerate(col_masks) if (m >> i) & 1]
            for i in range(len(names))]
    return Relation(names, col_labels, rows)


# ----------------------------------------------------------------------
# fixture generators

def gen_sphere_cube() -> ToplexList:
    """Cube surface, each square face split into two triangles.

    8 vertices, 12 triangles; a 2-sphere.
    """
    quads = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1),
             (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)]
    tris = []
    for a, b, c, d in quads:
        tris.append((a, b, c))
        tris.append((a, c, d))
    return ToplexList([tuple(f"v{i}" for i in t) for t in tris])


def gen_sphere_uv(slices, stacks) -> ToplexList:
    """Latitude/longitude sphere triangulation with two pole fans.

    slices*(stacks-1)+2 vertices and 2*slices*(stacks-1) triangles.
    """
    if slices < 3 or stacks < 3:
        raise ValueError("slices and stacks must be >= 3")
    rings = stacks - 1

    def v(ring, j):
        return f"r{ring}c{j % slices}"

    tris = []
    for j in range(slices):
        tris.append(("pn", v(0, j), v(0, j + 1)))
    for ring in range(rings - 1):
        for j in range(slices):
            a, b = v(ring, j), v(ring, j + 1)
            c, d = v(ring + 1, j + 1), v(ring + 1, j)
            tris.append((a, b, c))
            tris.append((a, c, d))
    for j in range(slices):
        tris.append(("ps", v(rings - 1, j + 1), v(rings - 1, j)))
    return ToplexList(tris)


def gen_torus_grid(m, n) -> ToplexList:
    """m x n vertex grid with wraparound, each cell split into two triangles.

    m*n vertices and 2*m*n triangles; a torus for all m, n >= 3.
    """
    if m < 3 or n < 3:
        raise ValueError("m and n must be >= 3")

    def v(i, j):
        return f"g{i % m}_{j % n}"

    tris = []
    for i in range(m):
        for j in range(n):
            a, b = v(i, j), v(i + 1, j)
            c, d = v(i + 1, j + 1), v(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return ToplexList(tris)


def gen_simplex_boundary(n) -> ToplexList:
    """Facets of the boundary of an (n+1)-simplex: n+2 vertices, n+2 toplexes.

    The worst case for the reducer: every pair's union of stars is the whole
    complex, which is not contractible.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = [f"v{i}" for i in range(n + 2)]
    tops = [tuple(v for k, v in enumerate(verts) if k != omit)
            for omit in range(n + 2)]
    return ToplexList(tops)
