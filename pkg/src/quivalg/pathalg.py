"""Truncated pseudo and generalized path algebras over vertex algebras.

Words are the basis.  A pseudo word is an alternating sequence of slots

    [coeff]? (left, arrow, right) [coeff]? (left, arrow, right) ... [coeff]?

where every slot holds a basis index of the algebra at the matching vertex.
Coefficient slots adjacent to arrows never hold the identity: each vertex
algebra is required to carry an identity-first basis (index 0 is the unit),
and the unit component of an optional slot merges away during
multiplication.  That normal form makes the span of words closed under the
defining relations (coefficient linearity, mixed associativity, unit
absorption) while keeping products of coefficients that sit on opposite
sides of an arrow junction in separate slots.  A generalized word instead
carries one full coefficient per visited vertex and junction products merge
into a single slot.

Products that would reach ``s`` or more arrows truncate to zero; the
truncated algebra is an honest FDAlgebra with the words as labelled basis.
"""

from __future__ import annotations

import itertools
import os

from .errors import (FamilyMismatch, MixedFields, PreconditionFailed,
                     QuivalgError, TruncationTooLargeForMemory)
from .fdalgebra import (FDAlgebra, is_nilpotent_ideal, is_two_sided_ideal,
                        quotient_algebra)
from .linalg import (IncrementalSpan, Matrix, SubspaceBasis, vec_add,
                     vec_scale, vec_zero)
from .quiver import enumerate_paths
from .report import Report

_BASIS_CAP_ENV = "QUIVALG_MAX_BASIS"
_DEFAULT_BASIS_CAP = 20000


class VertexAlgebraFamily:
    """One algebra per quiver vertex, all sharing a field.

    Every vertex algebra must have an identity-first basis (its unit is the
    0-th basis vector); ``simplicity`` records per-vertex verification
    status ("verified", "heuristic", "asserted", or "unknown").
    """

    def __init__(self, quiver, algebras, simplicity=None):
        if len(algebras) != quiver.num_vertices:
            raise FamilyMismatch("one algebra per vertex required")
        fields = {a.field for a in algebras}
        if len(fields) > 1:
            raise MixedFields("vertex algebras over different fields")
        for a in algebras:
            unit = [a.field.one] + [a.field.zero] * (a.dim - 1)
            if a.one != unit:
                raise FamilyMismatch(
                    "vertex algebras need an identity-first basis")
        self.quiver = quiver
        self.algebras = list(algebras)
        self.field = algebras[0].field if algebras else None
        self.simplicity = list(simplicity) if simplicity is not None else \
            ["unknown"] * len(algebras)

    def all_simple(self):
        return all(s in ("verified", "heuristic", "asserted")
                   for s in self.simplicity)

    def __eq__(self, other):
        return (isinstance(other, VertexAlgebraFamily)
                and other.quiver == self.quiver
                and [a.labels for a in other.algebras] ==
                    [a.labels for a in self.algebras]
                and [a.table for a in other.algebras] ==
                    [a.table for a in self.algebras])


# -- word encodings ---------------------------------------------------------
# pseudo word:      tuple of slots, slot = ("c", vertex, idx)
#                                     or  ("a", arrow_id, left_idx, right_idx)
# generalized word: ("g", start_vertex, arrow_ids, coeff_idxs)


def pseudo_word_arrows(word):
    return sum(1 for slot in word if slot[0] == "a")


def pseudo_word_slots(word):
    return len(word)


def pseudo_start_vertex(quiver, word):
    slot = word[0]
    return slot[1] if slot[0] == "c" else quiver.source(slot[1])

def pseudo_end_vertex(quiver, word):
    slot = word[-1]
    return slot[1] if slot[0] == "c" else quiver.target(slot[1])


def generalized_start_vertex(quiver, word):
    return word[1]


def generalized_end_vertex(quiver, word):
    _, start, arrows, _ = word
    return quiver.target(arrows[-1]) if arrows else start


def render_word(family, word):
    labels = [a.labels for a in family.algebras]
    quiver = family.quiver
    if word[0] == "g":
        _, start, arrows, coeffs = word
        if not arrows:
            return f"{labels[start][coeffs[0]]}@{start + 1}"
        verts = [start]
        for aid in arrows:
            verts.append(quiver.target(aid))
        parts = []
        for pos, aid in enumerate(arrows):
            parts.append(labels[verts[pos]][coeffs[pos]])
            parts.append(f"|{quiver.arrow_label(aid)}|")
        parts.append(labels[verts[-1]][coeffs[-1]])
        return " ".join(parts)
    parts = []
    for slot in word:
        if slot[0] == "c":
            parts.append(f"{labels[slot[1]][slot[2]]}@{slot[1] + 1}")
        else:
            _, aid, li, ri = slot
            src, tgt = quiver.source(aid), quiver.target(aid)
            parts.append(f"{labels[src][li]}"
                         f"|{quiver.arrow_label(aid)}|"
                         f"{labels[tgt][ri]}")
    return " . ".join(parts)


def _word_sort_key(flavor, quiver, word):
    if flavor == "generalized":
        _, start, arrows, coeffs = word
        return (len(arrows), 2 * len(arrows) + 1, start, arrows, coeffs)
    return (pseudo_word_arrows(word), pseudo_word_slots(word), word)


def _enumerate_pseudo_words(family, s):
    quiver = family.quiver
    dims = [a.dim for a in family.algebras]
    words = []
    for v in range(quiver.num_vertices):
        for k in range(dims[v]):
            words.append((("c", v, k),))
    if s <= 1:
        return words
    for path in enumerate_paths(quiver, s - 1):
        if path.length == 0:
            continue
        verts = [path.start]
        for aid in path.arrow_ids:
            verts.append(quiver.target(aid))
        # per-gap coefficient choices: None or a non-unit basis index
        gap_choices = []
        gap_choices.append([None] + list(range(1, dims[verts[0]])))
        for mid in verts[1:-1]:
            gap_choices.append([None] + list(range(1, dims[mid])))
        gap_choices.append([None] + list(range(1, dims[verts[-1]])))
        pair_choices = []
        for pos, aid in enumerate(path.arrow_ids):
            pair_choices.append(list(itertools.product(
                range(dims[verts[pos]]), range(dims[verts[pos + 1]]))))
        for gaps in itertools.product(*gap_choices):
            for pairs in itertools.product(*pair_choices):
                slots = []
                if gaps[0] is not None:
                    slots.append(("c", verts[0], gaps[0]))
                for pos, aid in enumerate(path.arrow_ids):
                    li, ri = pairs[pos]
                    slots.append(("a", aid, li, ri))
                    g = gaps[pos + 1]
                    if g is not None:
                        slots.append(("c", verts[pos + 1], g))
                words.append(tuple(slots))
    return words


def _enumerate_generalized_words(family, s):
    quiver = family.quiver
    dims = [a.dim for a in family.algebras]
    words = []
    for path in enumerate_paths(quiver, s - 1):
        verts = [path.start]
        for aid in path.arrow_ids:
            verts.append(quiver.target(aid))
        for coeffs in itertools.product(*(range(dims[v]) for v in verts)):
            words.append(("g", path.start, path.arrow_ids, coeffs))
    return words


class TruncatedPathAlgebra:
    """PSE_k(quiver, family)/J^s or k(quiver, family)/J~^s on a word basis."""

    def __init__(self, flavor, family, s, words, fd, quiver):
        self.flavor = flavor
        self.family = family
        self.s = s
        self.quiver = quiver
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.fd = fd
        if flavor == "generalized":
            self.grading = [(2 * len(w[2]) + 1, len(w[2])) for w in words]
        else:
            self.grading = [(pseudo_word_slots(w), pseudo_word_arrows(w))
                            for w in words]

    @property
    def dim(self):
        return self.fd.dim

    def word_vector(self, word):
        v = vec_zero(self.fd.field, self.dim)
        v[self.index[word]] = self.fd.field.one
        return v

    def vertex_unit_vector(self, v):
        if self.flavor == "generalized":
            return self.word_vector(("g", v, (), (0,)))
        return self.word_vector((("c", v, 0),))

    def arrow_count(self, word):
        return self.grading[self.index[word]][1]

    def arrow_ideal_power(self, t):
        """J^t inside the truncation: the span of words with >= t arrows."""
        rows = []
        for i, w in enumerate(self.words):
            if self.grading[i][1] >= t:
                rows.append(self.fd.basis_vector(i))
        return SubspaceBasis(self.fd.field, self.dim, rows)

    def graded_piece_dims(self):
        """{(slots, arrows): dim} of the word basis."""
        out = {}
        for g in self.grading:
            out[g] = out.get(g, 0) + 1
        return out

    def start_vertex(self, word):
        if self.flavor == "generalized":
            return generalized_start_vertex(self.quiver, word)
        return pseudo_start_vertex(self.quiver, word)

    def end_vertex(self, word):
        if self.flavor == "generalized":
            return generalized_end_vertex(self.quiver, word)
        return pseudo_end_vertex(self.quiver, word)


def _pseudo_word_product(family, s, w1, w2):
    quiver = family.quiver
    if pseudo_end_vertex(quiver, w1) != pseudo_start_vertex(quiver, w2):
        return {}
    if pseudo_word_arrows(w1) + pseudo_word_arrows(w2) >= s:
        return {}
    field = family.field
    last, first = w1[-1], w2[0]
    if last[0] == "c" and first[0] == "c":
        v = last[1]
        alg = family.algebras[v]
        rest1, rest2 = w1[:-1], w2[1:]
        out = {}
        for k, coeff in alg.basis_product(last[2], first[2]).items():
            if rest1 or rest2:
                if k == 0:
                    word = rest1 + rest2
                else:
                    word = rest1 + (("c", v, k),) + rest2
            else:
                word = (("c", v, k),)
            out[word] = out.get(word, field.zero) + coeff
        return {w: c for w, c in out.items() if c}
    if last[0] == "a" and first[0] == "c" and len(w2) == 1 and first[2] == 0:
        return {w1: field.one}
    if last[0] == "c" and first[0] == "a" and len(w1) == 1 and last[2] == 0:
        return {w2: field.one}
    return {w1 + w2: field.one}


def _generalized_word_product(family, s, w1, w2):
    quiver = family.quiver
    if generalized_end_vertex(quiver, w1) != generalized_start_vertex(quiver, w2):
        return {}
    _, start1, arrows1, coeffs1 = w1
    _, start2, arrows2, coeffs2 = w2
    if len(arrows1) + len(arrows2) >= s:
        return {}
    field = family.field
    v = generalized_end_vertex(quiver, w1)
    alg = family.algebras[v]
    out = {}
    for k, coeff in alg.basis_product(coeffs1[-1], coeffs2[0]).items():
        word = ("g", start1, arrows1 + arrows2,
                coeffs1[:-1] + (k,) + coeffs2[1:])
        out[word] = out.get(word, field.zero) + coeff
    return {w: c for w, c in out.items() if c}


def multiply_words(trunc, w1, w2):
    """Product of two basis words as a sparse {word: coefficient} map."""
    if w1 not in trunc.index or w2 not in trunc.index:
        raise QuivalgError("words do not belong to this algebra")
    if trunc.flavor == "generalized":
        return _generalized_word_product(trunc.family, trunc.s, w1, w2)
    return _pseudo_word_product(trunc.family, trunc.s, w1, w2)


def build_truncated(flavor, family, s):
    """Construct the truncated path algebra of the requested flavor.

    The identity is the sum of the vertex units; the structure tensor comes
    from the word product, truncating at arrow count ``s``.
    """
    if flavor not in ("pseudo", "generalized"):
        raise QuivalgError(f"unknown flavor {flavor!r}")
    if s < 1:
        raise QuivalgError("truncation must be >= 1")
    if flavor == "generalized":
        words = _enumerate_generalized_words(family, s)
    else:
        words = _enumerate_pseudo_words(family, s)
    cap = int(os.environ.get(_BASIS_CAP_ENV, _DEFAULT_BASIS_CAP))
    if len(words) > cap:
        raise TruncationTooLargeForMemory(
            f"{len(words)} basis words exceed the cap {cap} "
            f"(set {_BASIS_CAP_ENV} to raise it)")
    quiver = family.quiver
    words.sort(key=lambda w: _word_sort_key(flavor, quiver, w))
    index = {w: i for i, w in enumerate(words)}
    field = family.field
    product = _generalized_word_product if flavor == "generalized" \
        else _pseudo_word_product
    table = {}
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            sparse = product(family, s, wi, wj)
            if sparse:
                table[(i, j)] = {index[w]: c for w, c in sparse.items()}
    one = vec_zero(field, len(words))
    for v in range(quiver.num_vertices):
        if flavor == "generalized":
            one[index[("g", v, (), (0,))]] = field.one
        else:
            one[index[(("c", v, 0),)]] = field.one
    labels = [render_word(family, w) for w in words]
    fd = FDAlgebra(field, labels, table, one)
    return TruncatedPathAlgebra(flavor, family, s, words, fd, quiver)


def collapse_to_generalized(pseudo, generalized, vec=None):
    """The coefficient-merging surjection from the pseudo onto the
    generalized truncated algebra (both over the same family and s).

    With ``vec`` None, returns the full matrix (generalized dim x pseudo
    dim); otherwise maps the given pseudo coordinate vector.
    """
    if pseudo.family is not generalized.family and \
            pseudo.family != generalized.family:
        raise FamilyMismatch("the two algebras use different families")
    if pseudo.s != generalized.s:
        raise FamilyMismatch("the two algebras use different truncations")
    field = pseudo.fd.field
    cols = []
    for word in pseudo.words:
        cols.append(_collapse_word(pseudo, generalized, word))
    mat = Matrix(field, [[cols[j][i] for j in range(pseudo.dim)]
                         for i in range(generalized.dim)])
    if vec is None:
        return mat
    return mat.times_vector(vec)


def _collapse_word(pseudo, generalized, word):
    field = pseudo.fd.field
    family = pseudo.family
    out = vec_zero(field, generalized.dim)
    if word[0][0] == "c" and len(word) == 1:
        _, v, k = word[0]
        out[generalized.index[("g", v, (), (k,))]] = field.one
        return out
    quiver = family.quiver
    arrows = tuple(slot[1] for slot in word if slot[0] == "a")
    verts = [quiver.source(arrows[0])]
    for aid in arrows:
        verts.append(quiver.target(aid))
    # per-position contributions: products of (right coeff, gap coeff, left
    # coeff) inside the vertex algebra, expanded over its basis
    position_vectors = []
    lead = None
    slots = list(word)
    if slots[0][0] == "c":
        lead = slots[0][2]
        slots = slots[1:]
    # walk arrow slots and optional gaps
    arrow_slots = []
    gaps = []
    cur_gap = None
    for slot in slots:
        if slot[0] == "a":
            arrow_slots.append(slot)
            gaps.append(None)
        else:
            gaps[-1] = slot[2]
    # gaps[i] follows arrow i; the final entry acts as the trailing slot
    n = len(arrow_slots)
    for i in range(n + 1):
        alg = family.algebras[verts[i]]
        factors = []
        if i == 0:
            if lead is not None:
                factors.append(lead)
            factors.append(arrow_slots[0][2])
        elif i == n:
            factors.append(arrow_slots[n - 1][3])
            if gaps[n - 1] is not None:
                factors.append(gaps[n - 1])
        else:
            factors.append(arrow_slots[i - 1][3])
            if gaps[i - 1] is not None:
                factors.append(gaps[i - 1])
            factors.append(arrow_slots[i][2])
        vecv = alg.basis_vector(factors[0])
        for f in factors[1:]:
            vecv = alg.product(vecv, alg.basis_vector(f))
        position_vectors.append(vecv)
    # expand the tensor product of the position vectors
    supports = []
    for vecv in position_vectors:
        supports.append([(k, c) for k, c in enumerate(vecv) if c])
    for combo in itertools.product(*supports):
        coeff = field.one
        idxs = []
        for k, c in combo:
            coeff = coeff * c
            idxs.append(k)
        gword = ("g", verts[0], arrows, tuple(idxs))
        gi = generalized.index[gword]
        out[gi] = out[gi] + coeff
    return out


def ideal_generated(trunc, gens):
    """Two-sided ideal generated by the given coordinate vectors: closure
    of their span under left/right multiplication by all basis words.
    Seminaive: only vectors that grow the span get multiplied again."""
    field = trunc.fd.field
    span = IncrementalSpan(field, trunc.dim)
    queue = []
    for g in gens:
        if span.add(g):
            queue.append(list(g))
    basis_vectors = [trunc.fd.basis_vector(i) for i in range(trunc.dim)]
    while queue:
        g = queue.pop()
        for e in basis_vectors:
            for prod in (trunc.fd.product(e, g), trunc.fd.product(g, e)):
                if span.add(prod):
                    queue.append(prod)
    return span.to_subspace()


class Relation:
    """A kernel element concentrated between one start and one end vertex."""

    def __init__(self, trunc, vector, start, end):
        self.trunc = trunc
        self.vector = list(vector)
        self.start = start
        self.end = end
        for i, c in enumerate(vector):
            if c:
                word = trunc.words[i]
                if trunc.start_vertex(word) != start or \
                        trunc.end_vertex(word) != end:
                    raise QuivalgError(
                        "relation mixes start or end vertices")

    def render(self):
        parts = []
        for i, c in enumerate(self.vector):
            if c:
                parts.append(f"({c}) {self.trunc.fd.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Relation({self.start + 1}->{self.end + 1}: {self.render()})"


def split_into_relations(trunc, x):
    """Nonzero components e_i * x * e_j; they sum back to x."""
    out = []
    nverts = trunc.quiver.num_vertices
    for i in range(nverts):
        ei = trunc.vertex_unit_vector(i)
        left = trunc.fd.product(ei, list(x))
        for j in range(nverts):
            ej = trunc.vertex_unit_vector(j)
            comp = trunc.fd.product(left, ej)
            if not all(not c for c in comp):
                out.append(Relation(trunc, comp, i, j))
    return out


def radical_of_quotient_check(trunc, relations):
    """Prop-style check: in the quotient by the relation ideal, the image
    of the arrow ideal is exactly the radical.

    Requires all vertex algebras flagged simple; J^s is inside the ideal by
    construction of the truncation.  Soundness of the radical identity uses
    the semisimplicity certificate quotient/J-image = (+) vertex algebras.
    """
    if not trunc.family.all_simple():
        raise PreconditionFailed(
            "vertex algebras must be flagged simple "
            f"(statuses: {trunc.family.simplicity})")
    rep = Report("radical-of-quotient")
    field = trunc.fd.field
    ideal = ideal_generated(trunc, [r.vector for r in relations]) \
        if relations else SubspaceBasis.zero(field, trunc.dim)
    rep.add("relation-ideal-two-sided",
            is_two_sided_ideal(trunc.fd, ideal))
    quot, proj = quotient_algebra(trunc.fd, ideal)
    jbar_rows = [proj.times_vector(r)
                 for r in trunc.arrow_ideal_power(1).rows]
    jbar = SubspaceBasis(field, quot.dim, jbar_rows)
    rep.add("j-image-two-sided-ideal", is_two_sided_ideal(quot, jbar))
    rep.add("j-image-nilpotent", is_nilpotent_ideal(quot, jbar))
    # quotient/J-image is the direct sum of the vertex algebras: build the
    # degree-zero map and check bijectivity and multiplicativity
    qq, qproj = quotient_algebra(quot, jbar)
    images = {}
    ok_mult = True
    for v, alg in enumerate(trunc.family.algebras):
        for k in range(alg.dim):
            if trunc.flavor == "generalized":
                w = ("g", v, (), (k,))
            else:
                w = (("c", v, k),)
            vec = qproj.times_vector(proj.times_vector(trunc.word_vector(w)))
            images[(v, k)] = vec
    span = SubspaceBasis(field, qq.dim, list(images.values()))
    rep.add("semisimple-quotient-matches-vertex-sum",
            span.dim == qq.dim == sum(a.dim for a in trunc.family.algebras))
    for v, alg in enumerate(trunc.family.algebras):
        for a in range(alg.dim):
            for b in range(alg.dim):
                prod = qq.product(images[(v, a)], images[(v, b)])
                expect = vec_zero(field, qq.dim)
                for k, c in alg.basis_product(a, b).items():
                    expect = vec_add(expect, vec_scale(images[(v, k)], c))
                if prod != expect:
                    ok_mult = False
    rep.add("vertex-sum-map-multiplicative", ok_mult)
    rep.add("radical-equals-j-image",
            rep.entries[1][1] and rep.entries[2][1] and rep.entries[3][1]
            and ok_mult)
    return rep, quot, jbar
