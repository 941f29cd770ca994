"""Presentation pipelines: evaluate truncated path algebras onto a target
algebra, extract the kernel as a relation set, and machine-verify the
resulting presentation.

The evaluation of a word multiplies its slot images inside the target:
coefficient slots embed through the lifted component subalgebras, and the
arrow slots map to chosen radical elements whose classes generate the
arrow's bimodule piece.  Orthogonality of the lifted components makes the
word-product rules hold on the nose, so the induced linear map is an
algebra homomorphism (this is checked on every basis pair, not sampled).
"""

from __future__ import annotations

from .errors import (IncompleteAssignment, NotSurjective, PreconditionFailed,
                     QuivalgError, RadicalNotSquareZero, SplittingInvalid)
from .fdalgebra import (build_splitting, loewy_length, quotient_algebra,
                        radical_layer_bimodules, radical_powers,
                        verify_splitting)
from .linalg import Matrix, SubspaceBasis, vec_add, vec_is_zero, vec_scale, vec_zero
from .pathalg import (Relation, TruncatedPathAlgebra, VertexAlgebraFamily,
                      build_truncated, collapse_to_generalized,
                      ideal_generated, split_into_relations)
from .quiver import Quiver, quiver_of_algebra
from .report import Report


class GeneratorAssignment:
    """Per arrow u: i -> j, an element of B_i * rad * B_j whose class in
    rad/rad^2 is the arrow's bimodule generator witness."""

    def __init__(self, split, vectors):
        self.split = split
        self.vectors = dict(vectors)

    def vector(self, arrow_id):
        if arrow_id not in self.vectors:
            raise IncompleteAssignment(f"no generator for arrow {arrow_id}")
        return self.vectors[arrow_id]

    def to_json(self):
        return {str(aid): [str(c) for c in vec]
                for aid, vec in sorted(self.vectors.items())}


def lift_witnesses(alg, split, quiver, witnesses):
    """Solve the membership systems producing a GeneratorAssignment.

    ``witnesses[arrow_id]`` is a generator of the (i, j) bimodule piece in
    rad/rad^2 layer coordinates; the lift lands in B_i * rad * B_j and
    projects back onto the witness.
    """
    field = alg.field
    layer, _ = radical_layer_bimodules(alg, split, 1)
    vectors = {}
    for arrow_id, src, tgt, _ in quiver.arrows:
        ci = split.components[src]
        cj = split.components[tgt]
        span_rows = []
        for a in ci.rows_in_algebra:
            for m in split.radical.rows:
                for b in cj.rows_in_algebra:
                    span_rows.append(alg.product(alg.product(a, m), b))
        target = witnesses[arrow_id]
        cols = [layer.project(r) for r in span_rows]
        system = Matrix(field, [[cols[c][r] for c in range(len(cols))]
                                for r in range(layer.dim)])
        sol = system.solve(target)
        if sol is None:
            raise QuivalgError(
                "witness cannot be lifted into the component corner")
        y = vec_zero(field, alg.dim)
        for c, row in zip(sol, span_rows):
            if c:
                y = vec_add(y, vec_scale(row, c))
        vectors[arrow_id] = y
    return GeneratorAssignment(split, vectors)


class EvaluationMap:
    """The linear extension of slot-wise evaluation on a word basis."""

    def __init__(self, source, target, split, gens):
        self.source = source
        self.target = target
        self.split = split
        self.gens = gens
        cols = [self.evaluate_word(w) for w in source.words]
        self.matrix = Matrix(target.field,
                             [[cols[j][i] for j in range(len(cols))]
                              for i in range(target.dim)])

    def evaluate_word(self, word):
        return evaluate_word(self.split, self.gens, self.source, word,
                             target=self.target)

    def evaluate(self, vec):
        return self.matrix.times_vector(vec)

    def rank(self):
        return self.matrix.rank()

    def kernel(self):
        return self.matrix.kernel()

    def is_unital(self):
        one_img = self.evaluate(self.source.fd.one)
        return one_img == list(self.target.one)

    def multiplicativity_failures(self, limit=1):
        """Basis pairs where evaluation fails to be multiplicative."""
        src = self.source
        bad = []
        for i in range(src.dim):
            ei = src.fd.basis_vector(i)
            img_i = [self.matrix.rows[r][i] for r in range(self.target.dim)]
            for j in range(src.dim):
                prod = src.fd.product(ei, src.fd.basis_vector(j))
                lhs = self.evaluate(prod)
                img_j = [self.matrix.rows[r][j]
                         for r in range(self.target.dim)]
                rhs = self.target.product(img_i, img_j)
                if lhs != rhs:
                    bad.append((src.fd.labels[i], src.fd.labels[j]))
                    if len(bad) >= limit:
                        return bad
        return bad


def _embed_coeff(split, vertex, idx):
    comp = split.components[vertex]
    coords = [comp.algebra.field.one if m == idx else comp.algebra.field.zero
              for m in range(comp.dim)]
    return comp.embed(coords)


def evaluate_word(split, gens, trunc, word, target=None):
    """Word evaluation: coefficient slots embed through the lifted
    components, arrow slots through their assigned radical elements, and
    the slot images multiply in the target in word order."""
    alg = split.algebra if target is None else target
    factors = []
    if word[0] == "g":
        _, start, arrows, coeffs = word
        verts = [start]
        for aid in arrows:
            verts.append(trunc.quiver.target(aid))
        factors.append(_embed_coeff(split, verts[0], coeffs[0]))
        for pos, aid in enumerate(arrows):
            factors.append(gens.vector(aid))
            factors.append(_embed_coeff(split, verts[pos + 1],
                                        coeffs[pos + 1]))
    else:
        for slot in word:
            if slot[0] == "c":
                factors.append(_embed_coeff(split, slot[1], slot[2]))
            else:
                _, aid, li, ri = slot
                src = trunc.quiver.source(aid)
                tgt = trunc.quiver.target(aid)
                factors.append(_embed_coeff(split, src, li))
                factors.append(gens.vector(aid))
                factors.append(_embed_coeff(split, tgt, ri))
    value = factors[0]
    for f in factors[1:]:
        value = alg.product(value, f)
    return value


class Presentation:
    """A quiver, vertex family, truncation and relation set presenting an
    algebra, together with the machinery needed to re-verify it."""

    def __init__(self, flavor, quiver, family, truncation, relations,
                 kernel, trunc, emap, split, gens, extras=None):
        self.flavor = flavor
        self.quiver = quiver
        self.family = family
        self.truncation = truncation
        self.relations = relations
        self.kernel = kernel
        self.trunc = trunc
        self.emap = emap
        self.split = split
        self.gens = gens
        self.extras = extras or {}
        self.report = None
        self.admissible = None  # rho inside J^2, recorded per instance


def _minimize_relations(trunc, pool, kernel):
    """Greedy single-pass pruning: drop a candidate when the others still
    generate the kernel as an ideal.  No global minimality claim."""
    kept = list(pool)
    idx = 0
    while idx < len(kept):
        trial = kept[:idx] + kept[idx + 1:]
        ideal = ideal_generated(trunc, [r.vector for r in trial]) \
            if trial else SubspaceBasis.zero(trunc.fd.field, trunc.dim)
        if ideal.dim == kernel.dim and \
                all(ideal.contains_vector(row) for row in kernel.rows):
            kept = trial
        else:
            idx += 1
    return kept


def _relations_from_kernel(trunc, kernel):
    pool = []
    seen = set()
    for row in kernel.rows:
        for rel in split_into_relations(trunc, row):
            key = tuple(rel.vector)
            if key not in seen:
                seen.add(key)
                pool.append(rel)
    pool.sort(key=lambda r: (r.start, r.end))
    return _minimize_relations(trunc, pool, kernel)


def pseudo_presentation(alg, split, seed=0):
    """Present ``alg`` as a truncated pseudo path algebra modulo relations.

    The truncation is the Loewy length, so the arrow-ideal power J^s is a
    declared generator family of the relation ideal and the in-truncation
    kernel carries the rest.
    """
    rep = verify_splitting(split)
    if not rep.ok:
        raise SplittingInvalid("; ".join(rep.failures()))
    quiver, ranks, witnesses = quiver_of_algebra(alg, split, seed=seed)
    s = loewy_length(alg, split.radical)
    family = VertexAlgebraFamily(
        quiver, [c.algebra for c in split.components],
        [c.simplicity for c in split.components])
    trunc = build_truncated("pseudo", family, s)
    gens = lift_witnesses(alg, split, quiver, witnesses)
    emap = EvaluationMap(trunc, alg, split, gens)
    if emap.rank() != alg.dim:
        raise NotSurjective(
            f"evaluation rank {emap.rank()} < dim {alg.dim}; "
            "splitting data is corrupt")
    kernel = emap.kernel()
    relations = _relations_from_kernel(trunc, kernel)
    pres = Presentation("pseudo", quiver, family, s, relations, kernel,
                        trunc, emap, split, gens)
    pres.report = verify_presentation(pres, alg)
    return pres


def two_nilpotent_presentation(alg, split, seed=0):
    """Present an algebra with square-zero radical as a truncated
    generalized path algebra modulo relations (truncation 2)."""
    rep = verify_splitting(split)
    if not rep.ok:
        raise SplittingInvalid("; ".join(rep.failures()))
    powers = radical_powers(alg, split.radical)
    if len(powers) > 2:
        raise RadicalNotSquareZero(
            f"radical has nilpotency index {len(powers)}")
    quiver, ranks, witnesses = quiver_of_algebra(alg, split, seed=seed)
    s = 2
    family = VertexAlgebraFamily(
        quiver, [c.algebra for c in split.components],
        [c.simplicity for c in split.components])
    trunc = build_truncated("generalized", family, s)
    gens = lift_witnesses(alg, split, quiver, witnesses)
    emap = EvaluationMap(trunc, alg, split, gens)
    if emap.rank() != alg.dim:
        raise NotSurjective(
            f"evaluation rank {emap.rank()} < dim {alg.dim}; "
            "splitting data is corrupt")
    kernel = emap.kernel()
    relations = _relations_from_kernel(trunc, kernel)
    # J~ ∩ ker(phi~): kernel of the degree-1 bimodule map onto the radical
    arrow_kernel = _degree_one_kernel(trunc, emap)
    pres = Presentation("generalized", quiver, family, s, relations, kernel,
                        trunc, emap, split, gens,
                        extras={"arrow_kernel": arrow_kernel})
    pres.report = verify_presentation(pres, alg)
    return pres


def _degree_one_kernel(trunc, emap):
    """Kernel of the evaluation restricted to the span of 1-arrow words,
    i.e. of the map (free bimodule on the arrows) -> radical."""
    field = trunc.fd.field
    idxs = [i for i in range(trunc.dim) if trunc.grading[i][1] == 1]
    cols = [[emap.matrix.rows[r][i] for r in range(emap.target.dim)]
            for i in idxs]
    sub = Matrix(field, [[cols[c][r] for c in range(len(idxs))]
                         for r in range(emap.target.dim)])
    small_kernel = sub.kernel()
    rows = []
    for kv in small_kernel.rows:
        v = vec_zero(field, trunc.dim)
        for c, i in zip(kv, idxs):
            v[i] = c
        rows.append(v)
    return SubspaceBasis(field, trunc.dim, rows)


def verify_presentation(pres, alg):
    """The six-check verification contract for a presentation."""
    rep = Report(f"presentation-{pres.flavor}")
    trunc = pres.trunc
    emap = pres.emap
    field = trunc.fd.field

    # (1) evaluation map is an algebra homomorphism onto the target
    bad = emap.multiplicativity_failures(limit=1)
    rep.add("evaluation-multiplicative", not bad,
            None if not bad else f"first failure at {bad[0]}")
    rep.add("evaluation-unital", emap.is_unital())
    rep.add("evaluation-surjective", emap.rank() == alg.dim,
            f"rank {emap.rank()} of {alg.dim}")

    # (2) kernel is a two-sided ideal matching the declared generators
    kernel_ideal = ideal_generated(trunc, [r.vector for r in pres.relations]) \
        if pres.relations else SubspaceBasis.zero(field, trunc.dim)
    rep.add("kernel-is-ideal",
            all(kernel_ideal.contains_vector(row)
                for row in pres.kernel.rows)
            and kernel_ideal.dim == pres.kernel.dim,
            f"<rho> dim {kernel_ideal.dim}, kernel dim {pres.kernel.dim}")

    # (3) flavor containment
    if pres.flavor == "pseudo":
        powers = radical_powers(alg, pres.split.radical)
        grading_ok = len(powers) <= pres.truncation
        for t in range(1, pres.truncation):
            rt = powers[t - 1] if t - 1 < len(powers) else None
            for i in range(trunc.dim):
                if trunc.grading[i][1] >= t:
                    img = [emap.matrix.rows[r][i]
                           for r in range(alg.dim)]
                    if rt is None:
                        if not vec_is_zero(img):
                            grading_ok = False
                    elif not rt.contains_vector(img):
                        grading_ok = False
        js = trunc.arrow_ideal_power(pres.truncation)
        rep.add("containment-Js-in-rho",
                js.dim == 0 and grading_ok,
                "arrow-count-s words are declared generators; images of "
                "J^t land in rad^t")
        degree0_ok = True
        for row in pres.kernel.rows:
            for i, c in enumerate(row):
                if c and trunc.grading[i][1] == 0:
                    degree0_ok = False
        rep.add("containment-rho-in-J", degree0_ok)
    else:
        arrow_kernel = pres.extras["arrow_kernel"]
        j2 = trunc.arrow_ideal_power(2)
        sandwich = j2.dim == 0 and all(
            arrow_kernel.contains_vector(row) for row in pres.kernel.rows)
        rep.add("containment-J2-in-rho", j2.dim == 0,
                "2-arrow words are declared generators in truncation 2")
        rep.add("containment-rho-in-J2-plus-arrow-kernel", sandwich)

    # admissibility is recorded, not asserted
    j2 = trunc.arrow_ideal_power(2)
    pres.admissible = all(
        j2.sum_with(SubspaceBasis(field, trunc.dim, [row])).dim == j2.dim
        for row in pres.kernel.rows) if pres.kernel.rows else True

    # (4) the induced map on the quotient is an isomorphism
    quot, proj = quotient_algebra(trunc.fd, kernel_ideal)
    dim_ok = quot.dim == alg.dim
    iso_ok = dim_ok
    if dim_ok:
        # induced map: quotient basis -> target, from the evaluation
        section = []
        keep = [j for j in range(trunc.dim)
                if j not in kernel_ideal.pivots]
        images = []
        for j in keep:
            images.append([emap.matrix.rows[r][j] for r in range(alg.dim)])
        imat = Matrix(field, [[images[c][r] for c in range(len(keep))]
                              for r in range(alg.dim)])
        if imat.rank() != alg.dim:
            iso_ok = False
        else:
            for a in range(quot.dim):
                for b in range(quot.dim):
                    lhs = alg.product(images[a], images[b])
                    coords = quot.element_from_dict(quot.basis_product(a, b))
                    rhs = vec_zero(field, alg.dim)
                    for kk, c in enumerate(coords):
                        if c:
                            rhs = vec_add(rhs, vec_scale(images[kk], c))
                    if lhs != rhs:
                        iso_ok = False
    rep.add("quotient-isomorphic", iso_ok,
            f"quotient dim {quot.dim}, target dim {alg.dim}")

    # (5) radical of the quotient equals the image of the arrow ideal
    from .pathalg import radical_of_quotient_check
    rad_rep, _, _ = radical_of_quotient_check(trunc, pres.relations)
    rep.add("radical-is-arrow-ideal-image", rad_rep.ok,
            None if rad_rep.ok else "; ".join(rad_rep.failures()))

    # (6) uniqueness instance: the quiver recomputed from the quotient
    # (with its inherited splitting) reproduces the quiver and components
    try:
        uniq_ok, detail = _uniqueness_instance(pres, alg, quot, proj)
    except QuivalgError as exc:
        uniq_ok, detail = False, str(exc)
    rep.add("uniqueness-quiver-reproduced", uniq_ok, detail)
    return rep


def _uniqueness_instance(pres, alg, quot, proj):
    trunc = pres.trunc
    field = trunc.fd.field
    images = {}
    for v, valg in enumerate(pres.family.algebras):
        for k in range(valg.dim):
            if trunc.flavor == "generalized":
                w = ("g", v, (), (k,))
            else:
                w = (("c", v, k),)
            images[(v, k)] = proj.times_vector(trunc.word_vector(w))
    b_rows = list(images.values())
    rad_rows = [proj.times_vector(r)
                for r in trunc.arrow_ideal_power(1).rows]
    split_q = build_splitting(quot, b_rows, radical_rows=rad_rows)
    quiver2, ranks2, _ = quiver_of_algebra(quot, split_q)
    if quiver2.num_vertices != pres.quiver.num_vertices:
        return False, "component count differs"
    # match each vertex algebra image onto a component of the quotient
    sigma = {}
    for v, valg in enumerate(pres.family.algebras):
        span_v = SubspaceBasis(field, quot.dim,
                               [images[(v, k)] for k in range(valg.dim)])
        for c_idx, comp in enumerate(split_q.components):
            span_c = SubspaceBasis(field, quot.dim, comp.rows_in_algebra)
            if span_v == span_c:
                sigma[v] = c_idx
                break
        if v not in sigma:
            return False, f"no component matches vertex {v + 1}"
    if sorted(sigma.values()) != list(range(quiver2.num_vertices)):
        return False, "component matching is not a bijection"
    ranks1 = {}
    for arrow_id, src, tgt, _ in pres.quiver.arrows:
        ranks1[(src, tgt)] = ranks1.get((src, tgt), 0) + 1
    for (i, j), r in ranks2.items():
        back = ranks1.get((_inv(sigma, i), _inv(sigma, j)), 0)
        if back != r:
            return False, (f"arrow counts differ at ({i + 1},{j + 1}): "
                           f"{back} vs {r}")
    # recorded isomorphism: vertex algebra -> image component, checked
    # multiplicative on all basis pairs
    for v, valg in enumerate(pres.family.algebras):
        for a in range(valg.dim):
            for b in range(valg.dim):
                lhs = quot.product(images[(v, a)], images[(v, b)])
                rhs = vec_zero(field, quot.dim)
                for k, c in valg.basis_product(a, b).items():
                    rhs = vec_add(rhs, vec_scale(images[(v, k)], c))
                if lhs != rhs:
                    return False, "component isomorphism not multiplicative"
    return True, None


def _inv(sigma, value):
    for k, v in sigma.items():
        if v == value:
            return k
    return None
