"""Bundled example algebras with their splittings.

Each entry returns (algebra, splitting_kwargs, facts); the facts record
what the test-suite and the aggregate runner assert (dimension, square-zero
radical, expected quiver shape).
"""

from __future__ import annotations

from .fdalgebra import FDAlgebra, build_splitting
from .fields import PrimeField, Rationals


def _upper_triangular(field, n):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: a for a, p in enumerate(pairs)}
    one_ = field.one
    table = {}
    for a, (i, j) in enumerate(pairs):
        for b, (kk, ll) in enumerate(pairs):
            if j == kk:
                table[(a, b)] = {index[(i, ll)]: one_}
    labels = [f"E{i + 1}{j + 1}" for (i, j) in pairs]
    one = [field.zero] * len(pairs)
    for i in range(n):
        one[index[(i, i)]] = one_
    alg = FDAlgebra(field, labels, table, one)
    diag = [alg.basis_vector(index[(i, i)]) for i in range(n)]
    strict = [alg.basis_vector(index[(i, j)])
              for (i, j) in pairs if i != j]
    return alg, diag, strict


def _truncated_polynomials(field, n):
    """field[x]/(x^n) on the basis 1, x, ..., x^(n-1)."""
    table = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                table[(i, j)] = {i + j: field.one}
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    one = [field.one] + [field.zero] * (n - 1)
    alg = FDAlgebra(field, labels, table, one)
    sub = [alg.basis_vector(0)]
    rad = [alg.basis_vector(i) for i in range(1, n)]
    return alg, sub, rad


def _matrix_units(field, n):
    """Structure table of M_n(field) with basis E_ij in row-major order."""
    one_ = field.one
    table = {}
    for i in range(n):
        for j in range(n):
            for kk in range(n):
                for ll in range(n):
                    if j == kk:
                        table[(n * i + j, n * kk + ll)] = {n * i + ll: one_}
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    one = [field.zero] * (n * n)
    for i in range(n):
        one[n * i + i] = one_
    return FDAlgebra(field, labels, table, one)


def _m2_plus_scalars(field):
    """M_2(field) (+) field, dimension 5, semisimple."""
    m2 = _matrix_units(field, 2)
    dim = 5
    table = {}
    for (a, b), row in m2.table.items():
        table[(a, b)] = dict(row)
    table[(4, 4)] = {4: field.one}
    labels = m2.labels + ["c"]
    one = list(m2.one) + [field.one]
    alg = FDAlgebra(field, labels, table, one)
    sub = [alg.basis_vector(i) for i in range(5)]
    return alg, sub, []


def _block_matrix_algebra(field):
    """{[[a, m], [0, b]] : a, b, m in M_2(field)}, dimension 12.

    Coordinates: a-part (0..3), m-part (4..7), b-part (8..11), each in
    E11, E12, E21, E22 order; (a, m, b)(a', m', b') = (aa', am' + mb', bb').
    """
    m2 = _matrix_units(field, 2)

    def mul_block(i, j):
        return m2.table.get((i, j), {})

    table = {}
    for i in range(4):
        for j in range(4):
            prod = mul_block(i, j)
            if prod:
                table[(i, j)] = dict(prod)                      # a a'
                table[(8 + i, 8 + j)] = {8 + kk: c
                                         for kk, c in prod.items()}  # b b'
                table[(i, 4 + j)] = {4 + kk: c
                                     for kk, c in prod.items()}      # a m'
                table[(4 + i, 8 + j)] = {4 + kk: c
                                         for kk, c in prod.items()}  # m b'
    labels = [f"a{l}" for l in m2.labels] + \
             [f"m{l}" for l in m2.labels] + \
             [f"b{l}" for l in m2.labels]
    one = [field.zero] * 12
    one[0] = one[3] = one[8] = one[11] = field.one
    alg = FDAlgebra(field, labels, table, one)
    sub = [alg.basis_vector(i) for i in list(range(4)) + list(range(8, 12))]
    rad = [alg.basis_vector(i) for i in range(4, 8)]
    return alg, sub, rad


def entries():
    """Ordered {name: builder}; builders return (algebra, kwargs, facts)."""
    Q = Rationals()
    F5 = PrimeField(5)

    def ut2_q():
        alg, diag, strict = _upper_triangular(Q, 2)
        return alg, {"subalgebra_rows": diag}, \
            {"dim": 3, "square_zero_radical": True, "vertices": 2,
             "arrows": 1, "loewy": 2}

    def ut3_q():
        alg, diag, strict = _upper_triangular(Q, 3)
        return alg, {"subalgebra_rows": diag}, \
            {"dim": 6, "square_zero_radical": False, "vertices": 3,
             "arrows": 2, "loewy": 3}

    def ut2_f5():
        alg, diag, strict = _upper_triangular(F5, 2)
        return alg, {"subalgebra_rows": diag}, \
            {"dim": 3, "square_zero_radical": True, "vertices": 2,
             "arrows": 1, "loewy": 2}

    def ut3_f5():
        alg, diag, strict = _upper_triangular(F5, 3)
        # characteristic 5 <= dim 6: the radical ships with the entry
        return alg, {"subalgebra_rows": diag, "radical_rows": strict}, \
            {"dim": 6, "square_zero_radical": False, "vertices": 3,
             "arrows": 2, "loewy": 3}

    def dual_numbers():
        alg, sub, rad = _truncated_polynomials(Q, 2)
        return alg, {"subalgebra_rows": sub}, \
            {"dim": 2, "square_zero_radical": True, "vertices": 1,
             "arrows": 1, "loewy": 2}

    def jets3():
        alg, sub, rad = _truncated_polynomials(Q, 3)
        return alg, {"subalgebra_rows": sub}, \
            {"dim": 3, "square_zero_radical": False, "vertices": 1,
             "arrows": 1, "loewy": 3}

    def m2_plus_q():
        alg, sub, _ = _m2_plus_scalars(Q)
        return alg, {"subalgebra_rows": sub}, \
            {"dim": 5, "square_zero_radical": True, "vertices": 2,
             "arrows": 0, "loewy": 1}

    def block_m2():
        alg, sub, rad = _block_matrix_algebra(Q)
        return alg, {"subalgebra_rows": sub}, \
            {"dim": 12, "square_zero_radical": True, "vertices": 2,
             "arrows": 1, "loewy": 2}

    return {
        "ut2_q": ut2_q,
        "ut3_q": ut3_q,
        "ut2_f5": ut2_f5,
        "ut3_f5": ut3_f5,
        "dual_numbers_q": dual_numbers,
        "jets3_q": jets3,
        "m2_plus_q": m2_plus_q,
        "block_m2_q": block_m2,
    }


def load(name):
    """(algebra, splitting, facts) for a bundled entry."""
    builder = entries()[name]
    alg, kwargs, facts = builder()
    split = build_splitting(alg, **kwargs)
    return alg, split, facts
