"""Dense univariate polynomial helpers over an exact field.

Polynomials are tuples of Scalars, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.  All routines are pure and
take the owning field as first argument so the empty tuple stays usable.
"""

from __future__ import annotations

from .errors import DivisionByZero


def normalize(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(p):
    return len(p) - 1


def is_zero(p):
    return len(p) == 0


def constant(field, c):
    return normalize((c,))


def add(field, a, b):
    n = max(len(a), len(b))
    zero = field.zero
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x + y)
    return normalize(out)


def neg(field, a):
    return tuple(-x for x in a)


def sub(field, a, b):
    return add(field, a, neg(field, b))


def scale(field, a, c):
    if not c:
        return ()
    return normalize(x * c for x in a)


def mul(field, a, b):
    if not a or not b:
        return ()
    zero = field.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return normalize(out)


def div_mod(field, num, den):
    """Exact division with remainder; den must be nonzero."""
    if is_zero(den):
        raise DivisionByZero("polynomial division by zero")
    num = list(num)
    q = [field.zero] * max(0, len(num) - len(den) + 1)
    lead_inv = den[-1].inverse()
    dd = degree(den)
    while len(num) - 1 >= dd and normalize(num):
        num = list(normalize(num))
        if len(num) - 1 < dd:
            break
        k = len(num) - 1 - dd
        c = num[-1] * lead_inv
        q[k] = c
        for i, d in enumerate(den):
            num[k + i] = num[k + i] - c * d
    return normalize(q), normalize(num)


def monic(field, p):
    if is_zero(p):
        return p
    inv = p[-1].inverse()
    return tuple(x * inv for x in p)


def gcd_monic(field, a, b):
    """Monic gcd via monic remainder sequences (keeps forms canonical)."""
    a, b = monic(field, a), monic(field, b)
    while not is_zero(b):
        _, r = div_mod(field, a, b)
        a, b = b, monic(field, r)
    return a


def xgcd(field, a, b):
    """Returns (g, u, v) with u*a + v*b = g and g monic (or zero)."""
    one = field.one
    r0, r1 = a, b
    u0, u1 = (one,), ()
    v0, v1 = (), (one,)
    while not is_zero(r1):
        q, r = div_mod(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(field, u0, mul(field, q, u1))
        v0, v1 = v1, sub(field, v0, mul(field, q, v1))
    if is_zero(r0):
        return (), u0, v0
    c = r0[-1].inverse()
    return (monic(field, r0),
            scale(field, u0, c),
            scale(field, v0, c))


def derivative(field, p):
    out = []
    for k in range(1, len(p)):
        out.append(p[k] * field.from_int(k))
    return normalize(out)


def evaluate(field, p, x):
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def power(field, p, n):
    out = (field.one,)
    base = p
    while n:
        if n & 1:
            out = mul(field, out, base)
        base = mul(field, base, base)
        n >>= 1
    return out


def dth_root(field, p, d):
    """Exact d-th root of a polynomial, or None.

    Handles the two cases the tower needs: d coprime to the characteristic
    (coefficient recursion from the top) and d == characteristic (support
    must sit in d*Z and coefficients must admit d-th roots).
    """
    if is_zero(p):
        return ()
    n = degree(p)
    if n % d != 0:
        return None
    char = field.characteristic
    if char and d % char == 0 and d == char:
        # freshman's dream: sum(c_i x^i)^p = sum(c_i^p x^(p i))
        coeffs = []
        for k in range(0, n + 1):
            if k % d != 0 and p[k]:
                return None
        for k in range(0, n + 1, d):
            r = field.nth_root(p[k], d)
            if r is None:
                return None
            coeffs.append(r)
        root = normalize(coeffs)
        return root if power(field, root, d) == p else None
    if char and d % char == 0:
        inner = dth_root(field, p, char)
        if inner is None:
            return None
        return dth_root(field, inner, d // char)
    m = n // d
    lead = field.nth_root(p[-1], d)
    if lead is None:
        return None
    g = [field.zero] * (m + 1)
    g[m] = lead
    # match coefficients of x^(n-1) down to x^(n-m); d*lead^(d-1) is a unit
    # because d is coprime to the characteristic here
    denom = (field.from_int(d) * power(field, (lead,), d - 1)[0]).inverse()
    for i in range(m - 1, -1, -1):
        cur = power(field, normalize(g), d)
        k = n - (m - i)
        have = cur[k] if k < len(cur) else field.zero
        want = p[k] if k < len(p) else field.zero
        g[i] = (want - have) * denom
    root = normalize(g)
    return root if power(field, root, d) == p else None
