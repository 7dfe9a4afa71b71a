"""The extended affine Weyl group of type A~_{n-1} in window notation.

W_ext = Z x| W_aff; an element is an integer power of omega together with an
affine permutation f of Z satisfying f(i+n) = f(i)+n and the winding-zero
normalization sum f(i) = sum i on the window 1..n.  omega acts as the shift
i -> i+1, so that omega s_k omega^{-1} = s_{k+1}.

Everything here is immutable and pure.
"""

from __future__ import annotations

from functools import lru_cache


def window_apply(window, i):
    """Value at any integer of the periodic extension of the window."""
    n = len(window)
    j = (i - 1) % n
    return window[j] + ((i - 1) // n) * n


def window_compose(u, v):
    """Window of the composite u o v."""
    return tuple(window_apply(u, x) for x in v)


def window_inverse(u):
    n = len(u)
    out = [0] * n
    for j, val in enumerate(u, start=1):
        r = (val - 1) % n
        out[r] = j - (val - 1 - r)
    return tuple(out)


def window_tau(u, k=1):
    """Conjugation by omega^k: tau^k(u)(i) = u(i-k) + k."""
    n = len(u)
    return tuple(window_apply(u, i - k) + k for i in range(1, n + 1))


def window_length(u):
    n = len(u)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += abs((u[j] - u[i]) // n)
    return total


class ExtendedWeylElement:
    """omega^k times an affine permutation in window notation."""

    __slots__ = ("omega", "window")

    def __init__(self, omega, window):
        self.omega = int(omega)
        self.window = tuple(window)
        n = len(self.window)
        if sorted(v % n for v in self.window) != list(range(n)):
            raise ValueError(f"window {window} entries not distinct mod {n}")
        if sum(self.window) != n * (n + 1) // 2:
            raise ValueError(f"window {window} is not winding-normalized")

    @property
    def n(self):
        return len(self.window)

    @classmethod
    def identity(cls, n):
        return cls(0, range(1, n + 1))

    @classmethod
    def simple(cls, n, k):
        """The simple reflection s_k, k in Z/n."""
        k = k % n
        if k == 0:
            w = [0] + list(range(2, n)) + [n + 1]
            if n == 2:
                w = [0, 3]
            return cls(0, w)
        w = list(range(1, n + 1))
        w[k - 1], w[k] = w[k], w[k - 1]
        return cls(0, w)

    @classmethod
    def rotation(cls, n, power=1):
        """omega^power."""
        return cls(power, range(1, n + 1))

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("mismatched n")
        u = window_tau(self.window, -other.omega)
        return ExtendedWeylElement(
            self.omega + other.omega, window_compose(u, other.window)
        )

    def inverse(self):
        inv = window_inverse(self.window)
        return ExtendedWeylElement(-self.omega, window_tau(inv, self.omega))

    def __pow__(self, k):
        out = ExtendedWeylElement.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ExtendedWeylElement)
            and self.omega == other.omega
            and self.window == other.window
        )

    def __hash__(self):
        return hash((self.omega, self.window))

    def is_identity(self):
        return self.omega == 0 and self.window == tuple(range(1, self.n + 1))

    def length(self):
        """Coxeter length of the affine part; omega contributes 0."""
        return window_length(self.window)

    def has_right_descent(self, k):
        u = self.window
        return window_apply(u, k) > window_apply(u, k + 1)

    def has_left_descent(self, k):
        inv = window_inverse(self.window)
        j = (k - self.omega) % self.n
        return window_apply(inv, j) > window_apply(inv, j + 1)

    def right_descents(self):
        return frozenset(k for k in range(self.n) if self.has_right_descent(k))

    def left_descents(self):
        return frozenset(k for k in range(self.n) if self.has_left_descent(k))

    def times_simple(self, k):
        """Right multiplication by s_k, fast path."""
        n = self.n
        k = k % n
        s = ExtendedWeylElement.simple(n, k)
        return ExtendedWeylElement(
            self.omega, window_compose(self.window, s.window)
        )

    def reduced_word(self):
        """A reduced word for the affine part via leftmost descents.

        Returns a tuple of indices (i_1, ..., i_m) with the affine part equal
        to s_{i_1} ... s_{i_m}; the omega power is carried separately.
        """
        w = ExtendedWeylElement(0, self.window)
        word = []
        while True:
            length = w.length()
            if length == 0:
                break
            for k in range(w.n):
                if w.has_left_descent(k):
                    word.append(k)
                    w = ExtendedWeylElement.simple(w.n, k) * w
                    break
        return tuple(word)

    def finite_projection(self):
        """Image in S_n: the tuple (f(1) mod n, ...) shifted by omega, 1-based."""
        n = self.n
        return tuple((v + self.omega - 1) % n + 1 for v in self.window)

    def is_finite(self):
        return self.omega == 0 and all(1 <= v <= self.n for v in self.window)

    def reduce_omega_mod_n(self):
        """The representative in W_exts (omega^n = 1): omega power mod n."""
        return ExtendedWeylElement(self.omega % self.n, self.window)

    def __str__(self):
        return f"w^{self.omega} | " + " ".join(str(v) for v in self.window)

    __repr__ = __str__

    @classmethod
    def parse(cls, n, text):
        head, _, tail = text.partition("|")
        omega = int(head.strip().removeprefix("w^"))
        window = tuple(int(t) for t in tail.split())
        if len(window) != n:
            raise ValueError(f"expected window of length {n}")
        return cls(omega, window)


def from_word(n, word):
    """Evaluate a word in tokens: integers are s_i, 'w'/'w-' are omega^{+-1}."""
    out = ExtendedWeylElement.identity(n)
    for tok in word:
        if tok == "w":
            out = out * ExtendedWeylElement.rotation(n, 1)
        elif tok == "w-":
            out = out * ExtendedWeylElement.rotation(n, -1)
        else:
            out = out * ExtendedWeylElement.simple(n, int(tok))
    return out


def descents(w, side):
    if side == "right":
        return w.right_descents()
    if side == "left":
        return w.left_descents()
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def anticyclic_word(n, X, aleph):
    """Letters of h_X: members of X in decreasing aleph-induced order."""
    X = frozenset(X)
    if aleph % n in X:
        raise ValueError(f"aleph={aleph} lies in X")
    return tuple(sorted(X, key=lambda v: (v - aleph) % n, reverse=True))


def h_of(n, X, aleph=None):
    """The anticyclic Coxeter element h_X of the parabolic W_X.

    Independent of the choice of aleph not in X.
    """
    X = frozenset(x % n for x in X)
    if len(X) >= n:
        raise ValueError("X must be a proper subset")
    if aleph is None:
        aleph = min(set(range(n)) - X)
    word = anticyclic_word(n, X, aleph)
    out = ExtendedWeylElement.identity(n)
    for k in word:
        out = out.times_simple(k)
    return out


def cyclic_runs(n, members):
    """Maximal cyclically-consecutive runs of a proper subset of Z/n.

    Each run is a tuple (a, a+1, ..., b) mod n, sorted by starting point.
    """
    members = set(m % n for m in members)
    if len(members) >= n:
        raise ValueError("subset must be proper")
    runs = []
    seen = set()
    for a in sorted(members):
        if a in seen or (a - 1) % n in members:
            continue
        run = [a]
        seen.add(a)
        while (run[-1] + 1) % n in members:
            run.append((run[-1] + 1) % n)
            seen.add(run[-1])
        runs.append(tuple(run))
    return runs


def longest_element(n, I):
    """The longest element w_I of the parabolic W_I, I a proper subset."""
    out = ExtendedWeylElement.identity(n)
    for run in cyclic_runs(n, I):
        for t in range(len(run)):
            for k in reversed(run[: t + 1]):
                out = out.times_simple(k)
    return out


def tau_components(n, I):
    """The tau-components of S for the subset I, with each block ordered.

    A block containing j also contains j+1 iff j is in I; leftover indices
    are singletons.  When |I| = n-1 the single block is all of S, ordered
    i+1 < i+2 < ... < i where i is the unique index outside I.
    """
    I = frozenset(i % n for i in I)
    if len(I) >= n:
        raise ValueError("I must be a proper subset")
    if len(I) == n - 1:
        (i,) = set(range(n)) - I
        return [tuple((i + t) % n for t in range(1, n + 1))]
    blocks = []
    used = set()
    for run in cyclic_runs(n, I):
        block = run + (((run[-1] + 1) % n),)
        blocks.append(block)
        used.update(block)
    for j in sorted(set(range(n)) - used):
        blocks.append((j,))
    return sorted(blocks, key=lambda b: b[0])


def rewrite_wIhX(n, I, X, aleph):
    """The commutation-only factorization of w_I h_X from the rewriting lemma.

    Returns a list of words (tuples of simple-reflection indices) whose
    concatenated product is w_I h_X, ordered
    (w_{I&A0} h_{X&A<}), (w_{I&Ad} h_{X&Ad}), ..., (w_{I&A1} h_{X&A1}), h_{X&A>}.
    """
    I = frozenset(i % n for i in I)
    X = frozenset(x % n for x in X)
    aleph = aleph % n
    if aleph in X:
        raise ValueError("aleph must avoid X")
    if len(I) >= n or len(X) >= n:
        raise ValueError("I and X must be proper")
    comps = tau_components(n, I)
    a0 = next(c for c in comps if aleph in c)
    rest = sorted(
        (c for c in comps if c is not a0), key=lambda c: min((v - aleph) % n for v in c)
    )
    pos = {v: t for t, v in enumerate(a0)}
    below = [v for v in a0 if pos[v] < pos[aleph]]
    above = [v for v in a0 if pos[v] > pos[aleph]]

    def w_word(members):
        word = []
        for run in cyclic_runs(n, members) if members else []:
            for t in range(len(run)):
                word.extend(reversed(run[: t + 1]))
        return tuple(word)

    def h_word(members):
        return tuple(
            sorted((v for v in members), key=lambda v: (v - aleph) % n, reverse=True)
        )

    factors = [w_word(I & set(a0)) + h_word(X & set(below))]
    for comp in reversed(rest):
        factors.append(w_word(I & set(comp)) + h_word(X & set(comp)))
    factors.append(h_word(X & set(above)))
    return [f for f in factors if f] or [()]


def correspondent_Y(n, I, X):
    """The unique Y with w_I h_X = h_Y w_{tau(I)}, per tau-component.

    Requires tau(I) contained in X.
    """
    I = frozenset(i % n for i in I)
    X = frozenset(x % n for x in X)
    J = frozenset((i + 1) % n for i in I)
    if not J <= X:
        raise ValueError("tau(I) must be contained in X")
    if len(X) >= n:
        raise ValueError("X must be proper")
    Y = set()
    for comp in tau_components(n, I):
        cs = set(comp)
        inter = X & cs
        if inter == cs:
            Y |= cs
        elif inter == J & cs:
            Y |= I & cs
        else:
            raise AssertionError("tau(I) <= X rules this case out")
    return frozenset(Y)


def bruhat_leq(x, y):
    """Standard Bruhat order via the subword property.

    Both elements must carry the same omega power.
    """
    if x.n != y.n:
        raise ValueError("mismatched n")
    if x.omega != y.omega:
        raise ValueError("Bruhat order needs equal omega powers")
    x = ExtendedWeylElement(0, x.window)
    y = ExtendedWeylElement(0, y.window)
    while True:
        ly = y.length()
        if x.length() > ly:
            return False
        if ly == 0:
            return x.is_identity()
        k = next(k for k in range(y.n) if y.has_right_descent(k))
        y = y.times_simple(k)
        if x.has_right_descent(k):
            x = x.times_simple(k)


def bruhat_interval_below(w, length_cap=14):
    """All y <= w, via the subword dynamic program on a reduced word."""
    if w.length() > length_cap:
        raise ValueError(f"length {w.length()} exceeds cap {length_cap}")
    n = w.n
    current = {ExtendedWeylElement.identity(n)}
    for k in w.reduced_word():
        new = set(current)
        for u in current:
            us = u.times_simple(k)
            if us.length() > u.length():
                new.add(us)
        current = new
    if w.omega == 0:
        return current
    om = ExtendedWeylElement.rotation(n, w.omega)
    return {om * u for u in current}
