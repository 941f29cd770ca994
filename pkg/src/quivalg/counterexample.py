"""The bundled char-2 counterexample: an 8-dimensional algebra that splits
over its radical yet admits no surjection from the length-graded tensor
model built on A/rad and rad/rad^2.

Over k = F2(t) and F = k[sqrt(t)], the algebra is A = F + F + E where E is
F + F with the right action twisted by the derivation d(p + q*sqrt(t)) = q,
multiplied by

    (u, v, e)(u', v', e') = (uu', uv' + vu', u.e' + theta(vv') + e.u')

with theta(w) = (w, 0).  The suite machine-checks the eight facts that
together certify the obstruction: the centre of the tensor model is a
2-dimensional field, while every field inside Z(A) embeds into the kernel
of the derivation, which is 1-dimensional.
"""

from __future__ import annotations

from . import polys
from .errors import QuivalgError
from .fdalgebra import (FDAlgebra, is_nilpotent_ideal, is_two_sided_ideal,
                        quotient_algebra, radical, radical_layer_bimodules,
                        radical_powers, build_splitting, verify_splitting)
from .fields import PrimeField, RationalFunctionField, SimpleExtension
from .linalg import Matrix, SubspaceBasis, vec_is_zero, vec_zero
from .report import Report


def base_fields():
    """(k, F) with k = F2(t) and F = k[x]/(x^2 - t)."""
    k = RationalFunctionField(PrimeField(2), "t")
    t = k.gen
    F = SimpleExtension(k, polys.normalize([-t, k.zero, k.one]), "x")
    return k, F


def _f_coords(F, scalar):
    """An element of F as a pair of k-scalars (1 and sqrt(t) coordinates)."""
    return list(scalar.payload)


def _f_from_coords(F, c0, c1):
    return F.element([c0, c1])


def derivation(F, scalar):
    """d(p + q*sqrt(t)) = q as a k-scalar."""
    return scalar.payload[1]


def build_counterexample_algebra():
    """The 8-dimensional algebra A = F + F + E over k = F2(t).

    Coordinates: (u0, u1, v0, v1, e10, e11, e20, e21) for the triple
    (u, v, (e1, e2)) written over the F-basis {1, sqrt(t)}.
    """
    k, F = base_fields()

    def triple_mul(a, b):
        u, v, (e1, e2) = a
        up, vp, (ep1, ep2) = b
        d = derivation(F, up)
        dlift = F.lift_base(d)
        # u.e' + theta(v v') + e.u'
        new_e1 = u * ep1 + v * vp + e1 * up + e2 * dlift
        new_e2 = u * ep2 + e2 * up
        return (u * up, u * vp + v * up, (new_e1, new_e2))

    zero_f = F.zero
    xgen = F.gen
    basis_triples = []
    units = [F.one, xgen]
    for slot in range(2):
        for val in units:
            tpl = [zero_f, zero_f, (zero_f, zero_f)]
            tpl[slot] = val
            basis_triples.append((tpl[0], tpl[1], tpl[2]))
    for pos in range(2):
        for val in units:
            e = [zero_f, zero_f]
            e[pos] = val
            basis_triples.append((zero_f, zero_f, (e[0], e[1])))

    def coords_of(triple):
        u, v, (e1, e2) = triple
        out = []
        for s in (u, v, e1, e2):
            out.extend(_f_coords(F, s))
        return out

    table = {}
    for i, a in enumerate(basis_triples):
        for j, b in enumerate(basis_triples):
            prod = coords_of(triple_mul(a, b))
            row = {kk: c for kk, c in enumerate(prod) if c}
            if row:
                table[(i, j)] = row
    labels = ["u.1", "u.rt", "v.1", "v.rt", "e1.1", "e1.rt", "e2.1", "e2.rt"]
    one = coords_of((F.one, zero_f, (zero_f, zero_f)))
    return FDAlgebra(k, labels, table, one), k, F


def _f_algebra(k, F):
    """F as a 2-dimensional k-algebra with basis {1, sqrt(t)}."""
    t = k.gen
    table = {(0, 0): {0: k.one}, (0, 1): {1: k.one},
             (1, 0): {1: k.one}, (1, 1): {0: t}}
    return FDAlgebra(k, ["1", "rt"], table, [k.one, k.zero])


def counterexample_suite():
    """Run the eight checks; returns the report."""
    rep = Report("counterexample")
    alg, k, F = build_counterexample_algebra()
    t = k.gen

    # (1) well-formed algebra of k-dimension 8 with identity (1,0,0)
    ok1 = alg.dim == 8
    try:
        alg.check_associative()
    except QuivalgError as exc:
        rep.add("algebra-wellformed", False, str(exc))
    else:
        rep.add("algebra-wellformed", ok1, f"dim {alg.dim}, identity checked")

    # (2) S = F x 0 x 0 is a subalgebra isomorphic to F
    falg = _f_algebra(k, F)
    s_rows = [alg.basis_vector(0), alg.basis_vector(1)]
    s_closed = True
    s_iso = True
    sspan = SubspaceBasis(k, alg.dim, s_rows)
    for a in range(2):
        for b in range(2):
            prod = alg.product(s_rows[a], s_rows[b])
            if not sspan.contains_vector(prod):
                s_closed = False
                continue
            coords = sspan.coords_of(prod)
            expect = falg.element_from_dict(falg.basis_product(a, b))
            if coords != expect:
                s_iso = False
    rep.add("subalgebra-S-isomorphic-to-F", s_closed and s_iso)

    # (3) r = 0 x F x E is the radical: ideal, r^2 = theta(F), r^3 = 0,
    #     and A = S (+) r
    r_rows = [alg.basis_vector(i) for i in range(2, 8)]
    rsub = SubspaceBasis(k, alg.dim, r_rows)
    ok3 = is_two_sided_ideal(alg, rsub)
    powers = radical_powers(alg, rsub)
    r2 = powers[1] if len(powers) > 1 else SubspaceBasis.zero(k, alg.dim)
    theta_rows = SubspaceBasis(k, alg.dim,
                               [alg.basis_vector(4), alg.basis_vector(5)])
    ok3 = ok3 and r2 == theta_rows
    ok3 = ok3 and len(powers) == 3 and powers[2].dim == 0
    ok3 = ok3 and rsub.sum_with(sspan).dim == alg.dim \
        and rsub.intersect(sspan).dim == 0
    try:
        radical(alg, claimed=r_rows)
    except QuivalgError as exc:
        ok3 = False
        rep.add("radical-r2-r3-splitting", False, str(exc))
    else:
        rep.add("radical-r2-r3-splitting", ok3,
                "r^2 = theta(F), r^3 = 0, A = S (+) r")

    # (4) rad/rad^2 is isomorphic to F (+) F as an F-F-bimodule via
    #     pi(0, y, e) = (y, e2)
    split = build_splitting(alg, s_rows, radical_rows=r_rows)
    layer, pieces = radical_layer_bimodules(alg, split, 1)
    data, rows = pieces[(0, 0)]
    ok4 = layer.dim == 4 and data.dim == 4
    # pi in layer coordinates: lift, read off (y, e2) coordinates
    pimat_rows = []
    for r in range(4):
        coords = [k.zero] * 4
        pimat_rows.append(coords)
    for idx in range(layer.dim):
        unit = [k.one if m == idx else k.zero for m in range(layer.dim)]
        amb = layer.lift(unit)
        # target coordinates (y0, y1, e20, e21)
        tgt = [amb[2], amb[3], amb[6], amb[7]]
        for r in range(4):
            pimat_rows[r][idx] = tgt[r]
    pimat = Matrix(k, pimat_rows)
    ok4 = ok4 and pimat.rank() == 4
    # bimodule map: pi(a.m.b) == a.pi(m).b with the plain diagonal actions
    falg_unit = _f_algebra(k, F)
    for p in range(2):
        for idx in range(layer.dim):
            unit = [k.one if m == idx else k.zero for m in range(layer.dim)]
            # left action through the splitting component
            amb = layer.lift(unit)
            rep_p = split.components[0].embed(
                [k.one if m == p else k.zero for m in range(2)])
            left_amb = layer.project(alg.product(rep_p, amb))
            lhs = pimat.times_vector(left_amb)
            mid = pimat.times_vector(unit)
            y = _f_from_coords(F, mid[0], mid[1])
            e2 = _f_from_coords(F, mid[2], mid[3])
            f = F.one if p == 0 else F.gen
            fy, fe2 = f * y, f * e2
            rhs = list(fy.payload) + list(fe2.payload)
            if lhs != rhs:
                ok4 = False
            right_amb = layer.project(alg.product(amb, rep_p))
            lhs_r = pimat.times_vector(right_amb)
            yf, e2f = y * f, e2 * f
            rhs_r = list(yf.payload) + list(e2f.payload)
            if lhs_r != rhs_r:
                ok4 = False
    rep.add("layer-isomorphic-to-F-plus-F", ok4,
            f"layer dim {layer.dim}")

    # (5) the bimodule extension 0 -> F -> E -> F -> 0 admits no splitting
    #     psi with psi . theta = id (exact linear system is infeasible)
    ok5 = _no_bimodule_splitting(k, F)
    rep.add("extension-admits-no-splitting", ok5,
            "linear system psi.theta = id, psi a bimodule map: empty "
            "solution set")

    # (6) Z(A) is contained in { (u, v, e) : d(u) = 0 }
    from .fdalgebra import center
    z = center(alg)
    ok6 = all(not row[1] for row in z.rows)
    rep.add("center-kills-derivation", ok6,
            f"center dim {z.dim}")

    # (7) dim_k ker d = 1 < 2 = dim_k F
    dmat = Matrix(k, [[k.zero, k.one]])
    kerd = dmat.kernel()
    ok7 = kerd.dim == 1 and 1 < 2
    rep.add("derivation-kernel-small", ok7,
            "dim ker d = 1 < 2 = dim F")

    # (8) conclusion: a unital surjection from the tensor model would embed
    #     its centre, the 2-dimensional field F, into Z(A); any field inside
    #     Z(A) embeds into ker d, of dimension 1.  The obstruction holds.
    ok8 = ok5 and ok6 and ok7
    rep.add("surjection-obstruction-certified", ok8,
            "field of dim 2 cannot embed into a line")
    return rep


def _no_bimodule_splitting(k, F):
    """Solve for psi: E -> F k-linear with psi(f.e) = f.psi(e),
    psi(e.f) = psi(e).f and psi(theta(w)) = w; returns True when the
    system is infeasible."""
    # unknowns: psi as a 2x4 matrix over k (E coords (e10,e11,e20,e21) ->
    # F coords); build rows of an inhomogeneous system M * vec(psi) = rhs
    x = F.gen

    def e_coords(e1, e2):
        return list(e1.payload) + list(e2.payload)

    def left_act(f, e1, e2):
        return (f * e1, f * e2)

    def right_act(e1, e2, f):
        d = F.lift_base(derivation(F, f))
        return (e1 * f + e2 * d, e2 * f)

    def f_coords(s):
        return list(s.payload)

    rows = []
    rhs = []
    basis_e = [(F.one, F.zero), (x, F.zero), (F.zero, F.one), (F.zero, x)]

    def psi_row(e_vec, f_out_coord):
        # coefficient of unknown psi[r][c] in the expression
        # (psi applied to e_vec)[f_out_coord]
        row = [k.zero] * 8
        for c in range(4):
            if e_vec[c]:
                row[f_out_coord * 4 + c] = e_vec[c]
        return row

    for e1, e2 in basis_e:
        base = e_coords(e1, e2)
        # psi(x.e) = x.psi(e):  psi(x.e) - L_x psi(e) = 0
        lx = left_act(x, e1, e2)
        lx_vec = e_coords(*lx)
        for out in range(2):
            lhs_row = psi_row(lx_vec, out)
            # x * psi(e): (x * (p + q x)) coords = (t q, p)
            # out 0: t * psi_1(e); out 1: psi_0(e)
            t = k.gen
            if out == 0:
                sub = [c * t for c in psi_row(base, 1)]
            else:
                sub = psi_row(base, 0)
            rows.append([a - b for a, b in zip(lhs_row, sub)])
            rhs.append(k.zero)
        # psi(e.x) = psi(e).x
        rx = right_act(e1, e2, x)
        rx_vec = e_coords(*rx)
        for out in range(2):
            lhs_row = psi_row(rx_vec, out)
            t = k.gen
            if out == 0:
                sub = [c * t for c in psi_row(base, 1)]
            else:
                sub = psi_row(base, 0)
            rows.append([a - b for a, b in zip(lhs_row, sub)])
            rhs.append(k.zero)
    # psi(theta(w)) = w for w in {1, x}
    for w, target in ((F.one, [k.one, k.zero]), (x, [k.zero, k.one])):
        th = e_coords(w, F.zero)
        for out in range(2):
            rows.append(psi_row(th, out))
            rhs.append(target[out])
    system = Matrix(k, rows)
    return system.solve(rhs) is None
