"""Quivers, path enumeration, and the quiver of an algebra.

Vertices of the quiver of an algebra are the simple components of A/rad;
arrows i -> j are counted by the bimodule rank of the (i, j)-piece of
rad/rad^2.  Left-to-right path composition matches that arrow direction.
"""

from __future__ import annotations

from .errors import QuivalgError, SplittingInvalid
from .fdalgebra import bimodule_min_generators, radical_layer_bimodules, verify_splitting


class Quiver:
    """A finite directed multigraph with labelled vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        self.arrows = []
        seen = set()
        for arrow_id, src, tgt, label in arrows:
            if arrow_id in seen:
                raise QuivalgError(f"duplicate arrow id {arrow_id}")
            seen.add(arrow_id)
            if not (0 <= src < len(self.vertices)):
                raise QuivalgError(f"arrow {arrow_id} source out of range")
            if not (0 <= tgt < len(self.vertices)):
                raise QuivalgError(f"arrow {arrow_id} target out of range")
            self.arrows.append((arrow_id, src, tgt, label))
        self._by_id = {a[0]: a for a in self.arrows}

    @property
    def num_vertices(self):
        return len(self.vertices)

    def source(self, arrow_id):
        return self._by_id[arrow_id][1]

    def target(self, arrow_id):
        return self._by_id[arrow_id][2]

    def arrow_label(self, arrow_id):
        return self._by_id[arrow_id][3]

    def arrows_from(self, v):
        return [a for a in self.arrows if a[1] == v]

    def adjacency(self):
        n = self.num_vertices
        mat = [[0] * n for _ in range(n)]
        for _, src, tgt, _ in self.arrows:
            mat[src][tgt] += 1
        return mat

    def __eq__(self, other):
        return (isinstance(other, Quiver)
                and other.vertices == self.vertices
                and other.arrows == self.arrows)

    def __repr__(self):
        return (f"Quiver({len(self.vertices)} vertices, "
                f"{len(self.arrows)} arrows)")

    def to_json(self):
        return {"vertices": list(self.vertices),
                "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data):
        return cls(data["vertices"],
                   [tuple(a) for a in data["arrows"]])


class QuiverPath:
    """A composable arrow sequence; length 0 paths sit at a vertex."""

    def __init__(self, quiver, start, arrow_ids):
        self.start = start
        self.arrow_ids = tuple(arrow_ids)
        cur = start
        for aid in self.arrow_ids:
            if quiver.source(aid) != cur:
                raise QuivalgError("arrows do not compose")
            cur = quiver.target(aid)
        self.end = cur

    @property
    def length(self):
        return len(self.arrow_ids)

    def __eq__(self, other):
        return (isinstance(other, QuiverPath)
                and other.start == self.start
                and other.arrow_ids == self.arrow_ids)

    def __hash__(self):
        return hash((self.start, self.arrow_ids))

    def __repr__(self):
        return f"Path(v{self.start}, {list(self.arrow_ids)})"


def enumerate_paths(quiver, max_len):
    """All paths of length 0..max_len, ordered by (length, start, arrows)."""
    if max_len < 0:
        raise QuivalgError("max_len must be >= 0")
    out = [QuiverPath(quiver, v, ()) for v in range(quiver.num_vertices)]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for path in frontier:
            for aid, src, tgt, _ in sorted(quiver.arrows):
                if src == path.end:
                    nxt.append(QuiverPath(quiver, path.start,
                                          path.arrow_ids + (aid,)))
        nxt.sort(key=lambda p: (p.start, p.arrow_ids))
        out.extend(nxt)
        frontier = nxt
    return out


def quiver_of_algebra(alg, split, seed=0):
    """The quiver of an algebra from a verified splitting.

    Returns (quiver, rank_table, witnesses): rank_table[(i, j)] counts the
    arrows i -> j (the bimodule rank of the (i, j) piece of rad/rad^2) and
    witnesses[arrow_id] is the chosen bimodule generator in layer
    coordinates, later reused to evaluate paths in the algebra.
    """
    rep = verify_splitting(split)
    if not rep.ok:
        raise SplittingInvalid("; ".join(rep.failures()))
    layer, pieces = radical_layer_bimodules(alg, split, 1)
    s = split.num_components
    vertices = [str(i + 1) for i in range(s)]
    arrows = []
    rank_table = {}
    witnesses = {}
    arrow_id = 0
    for i in range(s):
        for j in range(s):
            data, rows = pieces[(i, j)]
            if data.dim == 0:
                rank_table[(i, j)] = 0
                continue
            rank, gens = bimodule_min_generators(data, seed=seed)
            rank_table[(i, j)] = rank
            for u, g in enumerate(gens):
                label = f"a{i + 1}_{j + 1}_{u + 1}"
                arrows.append((arrow_id, i, j, label))
                # generator in layer coordinates of rad/rad^2
                layer_vec = [layer.field.zero] * layer.dim
                for c, row in zip(g, rows):
                    if c:
                        for idx, val in enumerate(row):
                            layer_vec[idx] = layer_vec[idx] + c * val
                witnesses[arrow_id] = layer_vec
                arrow_id += 1
    return Quiver(vertices, arrows), rank_table, witnesses


def _dot_quote(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def to_dot(quiver):
    """Graphviz digraph text; deterministic ordering."""
    lines = ["digraph {"]
    for idx, label in enumerate(quiver.vertices):
        lines.append(f"  v{label} [label={_dot_quote(label)}];")
    for arrow_id, src, tgt, label in quiver.arrows:
        sv = quiver.vertices[src]
        tv = quiver.vertices[tgt]
        lines.append(f"  v{sv} -> v{tv} [label={_dot_quote(label)}];")
    lines.append("}")
    if len(lines) == 2:
        return "digraph { }"
    return "\n".join(lines)
