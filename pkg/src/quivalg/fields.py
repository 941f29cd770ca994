"""Exact coefficient fields: Q, F_p, F_p(t) and simple extensions.

Every scalar carries a reference to its owning field descriptor and a
canonical payload, so equality of scalars is plain representation equality:

* rationals        -- a reduced ``fractions.Fraction``
* prime fields     -- a residue in ``[0, p)``
* function fields  -- a reduced fraction of dense polynomials with monic
                      denominator
* extensions       -- a coefficient vector over the base of length
                      ``deg(minpoly)``

Descriptors are immutable and hashable; all arithmetic is pure.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import polys
from .errors import (DivisionByZero, MixedFields, NotIrreducible,
                     QuivalgError, WrongField)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _int_nth_root(n, d):
    """Floor of the integer d-th root."""
    if n in (0, 1):
        return n
    lo, hi = 0, 1
    while hi ** d <= n:
        hi *= 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid ** d <= n:
            lo = mid
        else:
            hi = mid
    return lo


def is_prime(n):
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Scalar:
    """An element of a specific field, in canonical form."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.payload, other.payload))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.field, self.field._inv(self.payload))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return not self.field._is_zero(self.payload)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.payload == other.payload

    def __hash__(self):
        return hash((self.field, self.payload))

    def __str__(self):
        return self.field.format(self.payload)

    def __repr__(self):
        return f"<{self} in {self.field}>"


class FieldDescriptor:
    """Abstract base; see module docstring for the concrete variants."""

    characteristic = 0
    is_finite = False

    def scalar(self, payload):
        return Scalar(self, payload)

    @property
    def zero(self):
        return Scalar(self, self._zero)

    @property
    def one(self):
        return Scalar(self, self._one)

    def from_int(self, n):
        raise NotImplementedError

    def format(self, payload):
        raise NotImplementedError

    def parse(self, text):
        return parse_scalar(self, text)

    def symbols(self):
        """Named generators usable in parsed expressions."""
        return {}

    def canonical(self, payload):
        """Re-canonicalise a payload (idempotent on valid payloads)."""
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def elements(self):
        raise QuivalgError(f"{self} is not finite")

    def size(self):
        raise QuivalgError(f"{self} is not finite")

    def nth_root(self, scalar, d):
        """Exact d-th root as a Scalar, or None when no root exists."""
        raise QuivalgError(f"no d-th root procedure for {self}")

    def frobenius_basis(self):
        """p-basis monomials for c = sum a_j^p * theta_j, or None."""
        return None

    def frobenius_decompose(self, scalar):
        """Coordinates a_j (as Scalars) w.r.t. frobenius_basis, or None."""
        return None

    @property
    def assumptions(self):
        """Unproven facts this descriptor relies on (e.g. irreducibility)."""
        return ()

    def is_perfect_guarantee(self):
        return False

    def to_json(self):
        raise NotImplementedError


class Rationals(FieldDescriptor):
    characteristic = 0
    _zero = Fraction(0)
    _one = Fraction(1)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Scalar(self, Fraction(n))

    def format(self, payload):
        return str(payload)

    def canonical(self, payload):
        return Fraction(payload.numerator, payload.denominator)

    def random(self, rng):
        return Scalar(self, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def nth_root(self, scalar, d):
        f = scalar.payload
        if f < 0 and d % 2 == 0:
            return None
        sign = -1 if f < 0 else 1
        num, den = abs(f.numerator), f.denominator
        rn = _int_nth_root(num, d)
        rd = _int_nth_root(den, d)
        if rn ** d == num and rd ** d == den:
            return Scalar(self, Fraction(sign * rn, rd))
        return None

    def is_perfect_guarantee(self):
        return True

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"

    def to_json(self):
        return {"kind": "Q"}


class PrimeField(FieldDescriptor):
    is_finite = True

    def __init__(self, p):
        if not is_prime(p):
            raise QuivalgError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero = 0
        self._one = 1 % p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Scalar(self, n % self.p)

    def format(self, payload):
        return str(payload)

    def canonical(self, payload):
        return payload % self.p

    def random(self, rng):
        return Scalar(self, rng.randrange(self.p))

    def elements(self):
        return (Scalar(self, r) for r in range(self.p))

    def size(self):
        return self.p

    def nth_root(self, scalar, d):
        if self.p > 50000:
            raise QuivalgError("root search capped for large primes")
        for r in range(self.p):
            if pow(r, d, self.p) == scalar.payload:
                return Scalar(self, r)
        return None

    def frobenius_basis(self):
        return [self.one]

    def frobenius_decompose(self, scalar):
        # c^p = c, so c = c^p * 1
        return [scalar]

    def is_perfect_guarantee(self):
        return True

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __str__(self):
        return f"F{self.p}"

    def to_json(self):
        return {"kind": "Fp", "p": self.p}


class RationalFunctionField(FieldDescriptor):
    """Fractions of polynomials over a base field, denominator monic."""

    def __init__(self, base, var="t"):
        if var in base.symbols():
            raise QuivalgError(f"variable {var!r} shadows a base symbol")
        if _tower_depth(base) >= 3:
            raise QuivalgError("field tower depth capped at 3")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self._zero = ((), (base.one,))
        self._one = ((base.one,), (base.one,))

    def _canon(self, num, den):
        if polys.is_zero(den):
            raise DivisionByZero("zero denominator")
        if polys.is_zero(num):
            return ((), (self.base.one,))
        g = polys.gcd_monic(self.base, num, den)
        if polys.degree(g) > 0:
            num, _ = polys.div_mod(self.base, num, g)
            den, _ = polys.div_mod(self.base, den, g)
        c = den[-1].inverse()
        num = polys.scale(self.base, num, c)
        den = polys.scale(self.base, den, c)
        return (num, den)

    def fraction(self, num, den):
        return Scalar(self, self._canon(tuple(num), tuple(den)))

    @property
    def gen(self):
        return Scalar(self, ((self.base.zero, self.base.one), (self.base.one,)))

    def _add(self, a, b):
        n = polys.add(self.base,
                      polys.mul(self.base, a[0], b[1]),
                      polys.mul(self.base, b[0], a[1]))
        return self._canon(n, polys.mul(self.base, a[1], b[1]))

    def _neg(self, a):
        return (polys.neg(self.base, a[0]), a[1])

    def _mul(self, a, b):
        return self._canon(polys.mul(self.base, a[0], b[0]),
                           polys.mul(self.base, a[1], b[1]))

    def _inv(self, a):
        return self._canon(a[1], a[0])

    def _is_zero(self, a):
        return polys.is_zero(a[0])

    def from_int(self, n):
        c = self.base.from_int(n)
        if not c:
            return self.zero
        return Scalar(self, ((c,), (self.base.one,)))

    def lift_base(self, scalar):
        if scalar.field != self.base:
            raise WrongField("expected an element of the base field")
        if not scalar:
            return self.zero
        return Scalar(self, ((scalar,), (self.base.one,)))

    def format(self, payload):
        num, den = payload
        ns = poly_to_string(self.base, num, self.var)
        if den == (self.base.one,):
            return ns
        ds = poly_to_string(self.base, den, self.var)
        return f"{_wrap(ns)}/{_wrap(ds)}"

    def canonical(self, payload):
        return self._canon(payload[0], payload[1])

    def symbols(self):
        syms = {self.var: self.gen}
        for name, val in self.base.symbols().items():
            syms[name] = self.lift_base(val)
        return syms

    def random(self, rng):
        num = tuple(self.base.random(rng) for _ in range(rng.randint(1, 3)))
        den = tuple(self.base.random(rng) for _ in range(rng.randint(0, 2)))
        den = den + (self.base.one,)
        return Scalar(self, self._canon(polys.normalize(num),
                                        polys.normalize(den)))

    def nth_root(self, scalar, d):
        num, den = scalar.payload
        if polys.is_zero(num):
            return self.zero
        # a/b = (a b^(d-1)) / b^d
        shifted = polys.mul(self.base, num,
                            polys.power(self.base, den, d - 1))
        root = polys.dth_root(self.base, shifted, d)
        if root is None:
            return None
        return Scalar(self, self._canon(root, den))

    def frobenius_basis(self):
        p = self.characteristic
        if p == 0 or not isinstance(self.base, PrimeField):
            return None
        t = self.gen
        out, cur = [], self.one
        for _ in range(p):
            out.append(cur)
            cur = cur * t
        return out

    def frobenius_decompose(self, scalar):
        p = self.characteristic
        if p == 0 or not isinstance(self.base, PrimeField):
            return None
        num, den = scalar.payload
        # c = num * den^(p-1) / den^p and (f/den)^p has denominator den^p
        shifted = polys.mul(self.base, num,
                            polys.power(self.base, den, p - 1))
        parts = []
        for j in range(p):
            # over F_p the coefficient p-th roots are the coefficients
            coeffs = [shifted[k] for k in range(j, len(shifted), p)]
            rj = polys.normalize(coeffs)
            parts.append(Scalar(self, self._canon(rj, den)))
        return parts

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and other.base == self.base and other.var == self.var)

    def __hash__(self):
        return hash(("RatFunc", self.base, self.var))

    def __str__(self):
        return f"{self.base}({self.var})"

    def to_json(self):
        return {"kind": "RatFunc", "base": self.base.to_json(), "var": self.var}


class SimpleExtension(FieldDescriptor):
    """base[x]/(minpoly) for a monic polynomial of degree >= 2.

    Irreducibility is certified for degree 2 and 3 (root search over finite
    bases, d-th power criterion for binomials over function fields) and
    caller-asserted otherwise; assertions are recorded and surfaced in
    reports.
    """

    def __init__(self, base, minpoly, gen="x", assert_irreducible=False):
        if gen in base.symbols():
            raise QuivalgError(f"generator {gen!r} shadows a base symbol")
        minpoly = polys.normalize(minpoly)
        deg = polys.degree(minpoly)
        if deg < 2:
            raise QuivalgError("minimal polynomial must have degree >= 2")
        if minpoly[-1] != base.one:
            raise QuivalgError("minimal polynomial must be monic")
        if _tower_depth(base) >= 3:
            raise QuivalgError("field tower depth capped at 3")
        self.base = base
        self.minpoly = minpoly
        self.gen_name = gen
        self.degree = deg
        self.characteristic = base.characteristic
        self.is_finite = base.is_finite
        self._assumptions = ()
        self._check_irreducible(assert_irreducible)
        self._zero = tuple([base.zero] * deg)
        one = [base.zero] * deg
        one[0] = base.one
        self._one = tuple(one)

    def _check_irreducible(self, asserted):
        deg = self.degree
        base = self.base
        if deg <= 3 and base.is_finite:
            if base.size() > 50000:
                raise QuivalgError("root search capped for large fields")
            for c in base.elements():
                if not polys.evaluate(base, self.minpoly, c):
                    raise NotIrreducible(
                        f"minpoly has root {c} in the base field")
            return
        if deg <= 3:
            # binomial x^d - c over an infinite base: d-th power criterion
            mid = all(not self.minpoly[k] for k in range(1, deg))
            if mid:
                c = -self.minpoly[0]
                try:
                    root = base.nth_root(c, deg)
                except QuivalgError:
                    root = "unavailable"
                if root is None:
                    return
                if root != "unavailable":
                    raise NotIrreducible(
                        f"{c} is a {deg}-th power in the base field")
        if not asserted:
            raise QuivalgError(
                "irreducibility not verifiable here; pass "
                "assert_irreducible=True to record it as an assumption")
        self._assumptions = (
            f"minpoly of degree {deg} over {base} asserted irreducible",)

    @property
    def assumptions(self):
        return self._assumptions + self.base.assumptions

    def _reduce(self, coeffs):
        _, r = polys.div_mod(self.base, polys.normalize(coeffs), self.minpoly)
        out = list(r) + [self.base.zero] * (self.degree - len(r))
        return tuple(out)

    def element(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise WrongField("coordinate vector too long")
        coeffs += [self.base.zero] * (self.degree - len(coeffs))
        return Scalar(self, tuple(coeffs))

    @property
    def gen(self):
        c = [self.base.zero] * self.degree
        c[1] = self.base.one
        return Scalar(self, tuple(c))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        prod = polys.mul(self.base, polys.normalize(a), polys.normalize(b))
        return self._reduce(prod)

    def _inv(self, a):
        g, u, _ = polys.xgcd(self.base, polys.normalize(a), self.minpoly)
        if polys.degree(g) != 0:
            raise DivisionByZero(
                "element is a zero divisor (minpoly not irreducible?)")
        inv = polys.scale(self.base, u, g[0].inverse())
        return self._reduce(inv)

    def _is_zero(self, a):
        return all(not x for x in a)

    def from_int(self, n):
        c = [self.base.zero] * self.degree
        c[0] = self.base.from_int(n)
        return Scalar(self, tuple(c))

    def lift_base(self, scalar):
        if scalar.field != self.base:
            raise WrongField("expected an element of the base field")
        c = [self.base.zero] * self.degree
        c[0] = scalar
        return Scalar(self, tuple(c))

    def format(self, payload):
        return "[" + ",".join(self.base.format(c.payload) for c in payload) + "]"

    def canonical(self, payload):
        return self._reduce(payload)

    def symbols(self):
        syms = {self.gen_name: self.gen}
        for name, val in self.base.symbols().items():
            syms[name] = self.lift_base(val)
        return syms

    def random(self, rng):
        return Scalar(self, tuple(self.base.random(rng)
                                  for _ in range(self.degree)))

    def elements(self):
        if not self.is_finite:
            raise QuivalgError(f"{self} is not finite")
        pools = [list(self.base.elements()) for _ in range(self.degree)]
        return (Scalar(self, tuple(c)) for c in itertools.product(*pools))

    def size(self):
        return self.base.size() ** self.degree

    def _frobenius_pattern(self):
        """True when minpoly is x^p - theta for the base p-basis element."""
        p = self.characteristic
        if p == 0 or self.degree != p:
            return False
        basis = self.base.frobenius_basis()
        if basis is None or len(basis) != p:
            return False
        theta = basis[1] if p > 1 else basis[0]
        target = [-theta] + [self.base.zero] * (p - 1) + [self.base.one]
        return polys.normalize(target) == self.minpoly

    def frobenius_basis(self):
        if not self._frobenius_pattern():
            return None
        out, cur = [], self.one
        for _ in range(self.degree):
            out.append(cur)
            cur = cur * self.gen
        return out

    def frobenius_decompose(self, scalar):
        if not self._frobenius_pattern():
            return None
        # c = sum c_i x^i with c_i in the base; the p-th root of a base
        # element u = sum u_j^p theta_j is sum u_j x^j since x^p = theta.
        parts = []
        for c in scalar.payload:
            sub = self.base.frobenius_decompose(c)
            if sub is None:
                return None
            parts.append(Scalar(self, tuple(sub)))
        return parts

    def nth_root(self, scalar, d):
        if self.is_finite:
            if self.size() > 50000:
                raise QuivalgError("root search capped for large fields")
            for c in self.elements():
                acc = self.one
                for _ in range(d):
                    acc = acc * c
                if acc == scalar:
                    return c
            return None
        if d == self.characteristic and self._frobenius_pattern():
            parts = self.frobenius_decompose(scalar)
            if parts is None:
                return None
            acc = self.zero
            for j, a in enumerate(parts):
                term = a
                for _ in range(j):
                    term = term * self.gen
                acc = acc + term
            # acc^p = sum a_j^p x^(p j) = sum a_j^p theta^j = scalar
            check = acc
            for _ in range(d - 1):
                check = check * acc
            return acc if check == scalar else None
        raise QuivalgError(f"no d-th root procedure for {self}")

    def __eq__(self, other):
        return (isinstance(other, SimpleExtension)
                and other.base == self.base
                and other.minpoly == self.minpoly
                and other.gen_name == self.gen_name)

    def __hash__(self):
        return hash(("Ext", self.base, self.minpoly, self.gen_name))

    def __str__(self):
        mp = poly_to_string(self.base, self.minpoly, self.gen_name)
        return f"{self.base}[{self.gen_name}]/({mp})"

    def to_json(self):
        return {"kind": "Ext",
                "base": self.base.to_json(),
                "minpoly": [self.base.format(c.payload) for c in self.minpoly],
                "gen": self.gen_name}


def _tower_depth(field):
    depth = 0
    while isinstance(field, (RationalFunctionField, SimpleExtension)):
        depth += 1
        field = field.base
    return depth


def field_from_json(data):
    kind = data["kind"]
    if kind == "Q":
        return Rationals()
    if kind == "Fp":
        return PrimeField(data["p"])
    if kind == "RatFunc":
        return RationalFunctionField(field_from_json(data["base"]),
                                     data.get("var", "t"))
    if kind == "Ext":
        base = field_from_json(data["base"])
        minpoly = polys.normalize(parse_scalar(base, c)
                                  for c in data["minpoly"])
        return SimpleExtension(base, minpoly, data.get("gen", "x"),
                               assert_irreducible=True)
    raise QuivalgError(f"unknown field kind {kind!r}")


def is_perfect_guarantee(field):
    """True exactly when perfectness is guaranteed (Q and prime fields)."""
    return field.is_perfect_guarantee()


def canonical_derivation(scalar):
    """The derivation of k(t)[x]/(x^2 - t) over k(t) sending p + q*x to q.

    Only defined on quadratic extensions of a rational function field by a
    square root of the variable; Leibniz holds because the characteristic
    is 2 there.
    """
    field = scalar.field
    if not isinstance(field, SimpleExtension) or field.degree != 2:
        raise WrongField("expected a quadratic extension element")
    base = field.base
    if not isinstance(base, RationalFunctionField):
        raise WrongField("expected an extension of a function field")
    target = polys.normalize([-base.gen, base.zero, base.one])
    if field.minpoly != target:
        raise WrongField("expected minimal polynomial x^2 - t")
    return scalar.payload[1]


# ---------------------------------------------------------------------------
# formatting / parsing


def _wrap(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and (ch in "+*/" or (ch == "-" and i > 0)):
            return f"({s})"
    return s


def poly_to_string(base, coeffs, var):
    if polys.is_zero(coeffs):
        return "0"
    terms = []
    for k in range(polys.degree(coeffs), -1, -1):
        c = coeffs[k]
        if not c:
            continue
        cs = base.format(c.payload)
        if k == 0:
            terms.append(cs if cs == _wrap(cs) else f"({cs})")
            continue
        mon = var if k == 1 else f"{var}^{k}"
        if cs == "1":
            terms.append(mon)
        elif cs == "-1":
            terms.append(f"-{mon}")
        elif cs == _wrap(cs):
            terms.append(f"{cs}*{mon}")
        else:
            terms.append(f"({cs})*{mon}")
    out = "+".join(terms)
    return out.replace("+-", "-")


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_CHARS:
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise QuivalgError(f"bad character {ch!r} in scalar {text!r}")
    return tokens


class _Parser:
    def __init__(self, field, tokens):
        self.field = field
        self.tokens = tokens
        self.pos = 0
        self.syms = field.symbols()

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivisionByZero("division by zero in scalar text")
                value = value / rhs
        return value

    def factor(self):
        sign = 1
        while self.peek() == "-":
            self.take()
            sign = -sign
        value = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not isinstance(exp, int):
                raise QuivalgError("exponent must be a literal integer")
            acc = self.field.one
            for _ in range(exp):
                acc = acc * value
            value = acc
        return value if sign == 1 else -value

    def atom(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise QuivalgError("unbalanced parentheses in scalar text")
            return value
        if isinstance(tok, int):
            return self.field.from_int(tok)
        if isinstance(tok, str) and tok in self.syms:
            return self.syms[tok]
        raise QuivalgError(f"unknown token {tok!r} in scalar text")


def _split_top(text, sep=","):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_scalar(field, text):
    """Parse the canonical string form of a scalar of ``field``.

    Extension elements accept both the '[p,q]' coordinate form and plain
    expressions in the tower generators.
    """
    text = text.strip()
    if text.startswith("["):
        if not isinstance(field, SimpleExtension):
            raise WrongField(
                "coordinate form only parses into an extension field")
        if not text.endswith("]"):
            raise QuivalgError(f"unbalanced brackets in {text!r}")
        parts = _split_top(text[1:-1])
        if len(parts) != field.degree:
            raise WrongField(
                f"expected {field.degree} coordinates, got {len(parts)}")
        return field.element([parse_scalar(field.base, p) for p in parts])
    parser = _Parser(field, _tokenize(text))
    value = parser.expr()
    if parser.pos != len(parser.tokens):
        raise QuivalgError(f"trailing tokens in scalar {text!r}")
    return value
