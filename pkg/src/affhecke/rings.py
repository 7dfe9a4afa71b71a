"""Exact arithmetic for the two coefficient rings used everywhere else.

``LaurentPoly`` is Z[v, v^-1] with integer coefficients.  ``RingElement`` is
the polynomial ring Q[x_1, ..., x_n, d] of the standard affine realization,
where ``d`` denotes the invariant element delta = sum of the simple roots.
Exponent vectors are stored sparsely; x_i and d each have (doubled) degree 2.

All values are immutable after construction and every operation is a pure
function, so elements can be shared freely between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction


class LaurentPoly:
    """Laurent polynomial in v with integer coefficients.

    coeffs maps exponent -> nonzero integer coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = clean.get(int(e), 0) + int(c)
        self.coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def v(cls, power=1, coeff=1):
        return cls({power: coeff})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def bar(self):
        """v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def coefficient(self, power):
        return self.coeffs.get(power, 0)

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else 0

    def in_positive_v(self):
        """True when the support lies in v Z[v] (strictly positive powers)."""
        return all(e > 0 for e in self.coeffs)

    def symmetric_part(self):
        """The unique bar-invariant p with p = self mod vZ[v].

        Used by the Kazhdan-Lusztig correction step.
        """
        out = {}
        c0 = self.coeffs.get(0, 0)
        if c0:
            out[0] = c0
        for e, c in self.coeffs.items():
            if e < 0:
                out[e] = out.get(e, 0) + c
                out[-e] = out.get(-e, 0) + c
        return LaurentPoly(out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                vp = "v" if e == 1 else f"v^{e}"
                term = vp if abs(c) == 1 else f"{abs(c)}*{vp}"
            parts.append(("-" if c < 0 else "+", term))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    __repr__ = __str__


def gauss(k):
    """The balanced quantum integer [k] = v^{k-1} + v^{k-3} + ... + v^{1-k}."""
    return LaurentPoly({k - 1 - 2 * j: 1 for j in range(k)})


class RingElement:
    """Element of R = Q[x_1..x_n, d] with sparse rational terms.

    Exponent vectors are tuples of length n+1 ordered (x_1, ..., x_n, d).
    No zero coefficients are stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {(0,) * (n + 1): Fraction(1)})

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * (n + 1): Fraction(c)})

    @classmethod
    def x(cls, n, i):
        """The variable x_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ValueError(f"x_{i} undefined for n={n}")
        mono = [0] * (n + 1)
        mono[i - 1] = 1
        return cls(n, {tuple(mono): Fraction(1)})

    @classmethod
    def delta(cls, n):
        mono = [0] * (n + 1)
        mono[n] = 1
        return cls(n, {tuple(mono): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return RingElement(self.n, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return RingElement(self.n, out)

    def __neg__(self):
        return RingElement(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement(self.n, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return RingElement(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def degree(self):
        """Doubled degree of a homogeneous element; raises otherwise."""
        if not self.terms:
            return None
        degs = {2 * sum(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous element {self}")
        return degs.pop()

    def constant_coefficient(self):
        return self.terms.get((0,) * (self.n + 1), Fraction(0))

    def is_unit(self):
        """Nonzero constant (the units of the polynomial ring over Q)."""
        return len(self.terms) == 1 and (0,) * (self.n + 1) in self.terms

    def subs_delta_zero(self):
        """The image in R/(d), exact quotient-set arithmetic."""
        return RingElement(
            self.n, {m: c for m, c in self.terms.items() if m[self.n] == 0}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(1, self.n + 1)] + ["d"]
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            facs = []
            for name, e in zip(names, m):
                if e == 1:
                    facs.append(name)
                elif e > 1:
                    facs.append(f"{name}^{e}")
            coeff = abs(c)
            if not facs:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(facs)
            else:
                body = "*".join([str(coeff)] + facs)
            parts.append(("-" if c < 0 else "+", body))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    __repr__ = __str__


_TOKEN = re.compile(r"\s*([+-]|\*|\^|x\d+|d|\d+/\d+|\d+)")


def parse_ring_element(n, text):
    """Parse the serialization produced by RingElement.__str__."""
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad polynomial syntax at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    out = RingElement.zero(n)
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            if sign != 1 or not out.terms and not tokens:
                raise ValueError("dangling sign")
            break
        coeff = sign
        mono = [0] * (n + 1)
        expect_factor = True
        while i < len(tokens) and tokens[i] not in "+-":
            tok = tokens[i]
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"unexpected token {tok!r}")
            if tok == "d" or tok.startswith("x"):
                idx = n if tok == "d" else int(tok[1:]) - 1
                if not 0 <= idx <= n:
                    raise ValueError(f"variable {tok} out of range for n={n}")
                exp = 1
                if i + 2 < len(tokens) and tokens[i + 1] == "^":
                    exp = int(tokens[i + 2])
                    i += 2
                mono[idx] += exp
            else:
                coeff *= Fraction(tok)
            expect_factor = False
            i += 1
        out = out + RingElement(n, {tuple(mono): coeff})
    return out


def simple_root(n, i):
    """alpha_i = x_i - x_{i+1} for 1 <= i <= n-1, alpha_0 = x_n - x_1 + d."""
    if not 0 <= i < n:
        raise ValueError(f"index {i} out of range for n={n}")
    if i == 0:
        return RingElement.x(n, n) - RingElement.x(n, 1) + RingElement.delta(n)
    return RingElement.x(n, i) - RingElement.x(n, i + 1)


def _apply_variable_map(f, images):
    """Ring homomorphism determined by images of (x_1..x_n, d)."""
    n = f.n
    out = RingElement.zero(n)
    power_cache = [{0: RingElement.one(n)} for _ in range(n + 1)]
    for mono, c in f.terms.items():
        term = RingElement.constant(n, c)
        for v, e in enumerate(mono):
            if e:
                cache = power_cache[v]
                if e not in cache:
                    p = max(cache)
                    acc = cache[p]
                    while p < e:
                        acc = acc * images[v]
                        p += 1
                        cache[p] = acc
                term = term * cache[e]
        out = out + term
    return out


def act_simple(i, f):
    """Apply the simple reflection s_i to f."""
    n = f.n
    if not 0 <= i < n:
        raise ValueError(f"index {i} out of range for n={n}")
    if i != 0:
        # fast path: swap the exponents of x_i and x_{i+1}
        out = {}
        for mono, c in f.terms.items():
            m = list(mono)
            m[i - 1], m[i] = m[i], m[i - 1]
            m = tuple(m)
            out[m] = out.get(m, Fraction(0)) + c
        return RingElement(n, out)
    images = [RingElement.x(n, j) for j in range(1, n + 1)] + [RingElement.delta(n)]
    images[0] = RingElement.x(n, n) + RingElement.delta(n)  # s_0(x_1) = x_n + d
    images[n - 1] = RingElement.x(n, 1) - RingElement.delta(n)  # s_0(x_n) = x_1 - d
    if n == 1:
        raise ValueError("n must be at least 2")
    return _apply_variable_map(f, images)


def act_tau(f):
    """tau(x_i) = x_{i+1} for i < n, tau(x_n) = x_1 - d, tau(d) = d."""
    n = f.n
    images = (
        [RingElement.x(n, j + 1) for j in range(1, n)]
        + [RingElement.x(n, 1) - RingElement.delta(n)]
        + [RingElement.delta(n)]
    )
    return _apply_variable_map(f, images)


def act_tau_inverse(f):
    n = f.n
    images = (
        [RingElement.x(n, n) + RingElement.delta(n)]
        + [RingElement.x(n, j - 1) for j in range(2, n + 1)]
        + [RingElement.delta(n)]
    )
    return _apply_variable_map(f, images)


def act_sigma(f):
    """sigma(x_i) = -x_{n+1-i}, sigma(d) = d."""
    n = f.n
    out = {}
    for mono, c in f.terms.items():
        xs = mono[:n]
        sign = (-1) ** sum(xs)
        m = tuple(reversed(xs)) + (mono[n],)
        out[m] = out.get(m, Fraction(0)) + sign * c
    return RingElement(n, out)


def exact_div(f, g):
    """Exact division f / g; raises ArithmeticError when not divisible."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    n = f.n
    g_lead = max(g.terms)
    g_c = g.terms[g_lead]
    quo = {}
    rem = dict(f.terms)
    while rem:
        lead = max(rem)
        q_mono = tuple(a - b for a, b in zip(lead, g_lead))
        if any(e < 0 for e in q_mono):
            raise ArithmeticError(f"non-divisible remainder {RingElement(n, rem)}")
        q_c = rem[lead] / g_c
        quo[q_mono] = quo.get(q_mono, Fraction(0)) + q_c
        for m, c in g.terms.items():
            m2 = tuple(a + b for a, b in zip(q_mono, m))
            new = rem.get(m2, Fraction(0)) - q_c * c
            if new:
                rem[m2] = new
            else:
                rem.pop(m2, None)
    return RingElement(n, quo)


def divide_by_delta(f):
    """Exact division by d, cheap path (every monomial must carry d)."""
    n = f.n
    out = {}
    for mono, c in f.terms.items():
        if mono[n] == 0:
            raise ArithmeticError(f"{f} is not divisible by d")
        out[mono[:n] + (mono[n] - 1,)] = c
    return RingElement(n, out)


def demazure(i, f):
    """Demazure operator: (f - s_i f) / alpha_i.  Exact by construction."""
    num = f - act_simple(i, f)
    if num.is_zero():
        return RingElement.zero(f.n)
    return exact_div(num, simple_root(f.n, i))
