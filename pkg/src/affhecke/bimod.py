"""Explicit Bott-Samelson bimodules over the standard affine realization.

BS(i_1, ..., i_d) is free as a right R-module on the basis indexed by bit
masks: in the slot for letter i the factor basis is {1 (x), xi_i (x)} with
xi_i = x_i for i != 0 and xi_0 = x_n, so that d_i(xi_i) = 1.  The left
action is forced rightward across each letter via the polynomial forcing
relation f.(-) = (-).s_i(f) + broken.d_i(f).

Morphisms are matrices of ring elements in these right-module bases; the
left action commuting with every generator is a checked property, not a
structural one.  Generators: start/end dots, merge/split trivalent vertices,
distant 4-valent crossings, and on top of those the signed rex moves theta
and the signed dots between cyclical bimodules B_X.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import polymat
from .rings import (
    RingElement,
    act_sigma,
    act_simple,
    demazure,
    simple_root,
)
from .weyl import anticyclic_word


def xi(n, i):
    """The chosen degree-2 element with d_i(xi_i) = 1."""
    i = i % n
    return RingElement.x(n, n if i == 0 else i)


def basis_degree(word, mask):
    """Degree of a basis vector: +1 per set bit, -1 per clear bit."""
    pop = bin(mask).count("1")
    return 2 * pop - len(word)


def rank(word):
    return 1 << len(word)


def basis(n, word):
    """The ordered right-module basis of BS(word).

    Entry k is (bits, degree): per letter i the factor basis is {1, xi_i},
    bit 1 selecting xi_i; bit positions read the word left to right from the
    high end.  The graded rank is the product of (v + v^-1) over the letters.
    """
    word = tuple(k % n for k in word)
    out = []
    for mask in range(rank(word)):
        bits = tuple(
            (mask >> (len(word) - 1 - slot)) & 1 for slot in range(len(word))
        )
        out.append((bits, basis_degree(word, mask)))
    return out


class Morphism:
    """A right-R-linear map BS(src) -> BS(tgt) with a homogeneous degree.

    matrix[r][c] is the coefficient of target basis vector r on the image of
    source basis vector c.
    """

    __slots__ = ("n", "src", "tgt", "matrix", "degree")

    def __init__(self, n, src, tgt, matrix, degree=None, check=True):
        self.n = n
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.matrix = tuple(tuple(row) for row in matrix)
        if check:
            degs = set()
            for r, row in enumerate(self.matrix):
                for c, entry in enumerate(row):
                    if entry.is_zero():
                        continue
                    degs.add(
                        entry.degree()
                        + basis_degree(self.tgt, r)
                        - basis_degree(self.src, c)
                    )
            if len(degs) > 1:
                raise ValueError(f"inhomogeneous morphism, degrees {degs}")
            found = degs.pop() if degs else None
            if degree is not None and found is not None and degree != found:
                raise ValueError(f"stated degree {degree} != computed {found}")
            degree = degree if found is None else found
        self.degree = degree

    @classmethod
    def zero(cls, n, src, tgt, degree=None):
        return cls(n, src, tgt, polymat.mat_zero(n, rank(tgt), rank(src)), degree, check=False)

    @classmethod
    def identity(cls, n, word):
        return cls(n, word, word, polymat.mat_identity(n, rank(word)), 0, check=False)

    def is_zero(self):
        return polymat.mat_is_zero(self.matrix)

    def __add__(self, other):
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValueError("cannot add morphisms with mismatched endpoints")
        deg = self.degree if self.degree is not None else other.degree
        if (
            self.degree is not None
            and other.degree is not None
            and self.degree != other.degree
            and not (self.is_zero() or other.is_zero())
        ):
            raise ValueError("cannot add morphisms of different degrees")
        return Morphism(
            self.n, self.src, self.tgt, polymat.mat_add(self.matrix, other.matrix),
            deg, check=False,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Morphism(
            self.n, self.src, self.tgt, polymat.mat_neg(self.matrix), self.degree,
            check=False,
        )

    def scale(self, f):
        """Right multiplication by f in R (or a rational scalar)."""
        extra = 0
        if not isinstance(f, (int, Fraction)):
            try:
                extra = f.degree() or 0
            except ValueError:
                extra = None
        deg = None if self.degree is None or extra is None else self.degree + extra
        return Morphism(
            self.n, self.src, self.tgt, polymat.mat_scale(self.matrix, f), deg,
            check=False,
        )

    def compose(self, other):
        """self after other."""
        if other.tgt != self.src:
            raise ValueError(
                f"composition mismatch: {other.tgt} then {self.src}"
            )
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        return Morphism(
            self.n, other.src, self.tgt,
            polymat.mat_mul(self.matrix, other.matrix), deg, check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and (self.n, self.src, self.tgt) == (other.n, other.src, other.tgt)
            and polymat.mat_eq(self.matrix, other.matrix)
        )

    def __str__(self):
        rows = [
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.matrix
        ]
        return (
            f"Morphism {self.src} -> {self.tgt} (degree {self.degree})\n"
            + "\n".join(rows)
        )

    __repr__ = __str__


def left_mult_matrix(n, word, f):
    """Matrix of left multiplication by f on BS(word), by forcing rightward."""
    if not word:
        return ((f,),)
    i = word[0] % n
    rest = word[1:]
    x = xi(n, i)
    blocks = {}
    for eps, g in ((0, f), (1, f * x)):
        q = demazure(i, g)
        p = g - x * q
        blocks[(0, eps)] = left_mult_matrix(n, rest, p)
        blocks[(1, eps)] = left_mult_matrix(n, rest, q)
    half = rank(rest)
    out = [[None] * (2 * half) for _ in range(2 * half)]
    for (row_bit, col_bit), block in blocks.items():
        for r in range(half):
            for c in range(half):
                out[row_bit * half + r][col_bit * half + c] = block[r][c]
    return tuple(tuple(row) for row in out)


def left_mult(n, word, f):
    try:
        deg = f.degree() or 0
    except ValueError:
        deg = None
    return Morphism(n, word, word, left_mult_matrix(n, word, f), deg, check=False)


def right_mult(n, word, f):
    return Morphism.identity(n, word).scale(f)


def tensor(a, b):
    """Tensor product of morphisms over R.

    Coefficients of the left factor are forced across the right target word
    by left multiplication.
    """
    n = a.n
    src = a.src + b.src
    tgt = a.tgt + b.tgt
    rb_s, rb_t = rank(b.src), rank(b.tgt)
    out = [
        [RingElement.zero(n) for _ in range(rank(src))] for _ in range(rank(tgt))
    ]
    for ra, rowa in enumerate(a.matrix):
        for ca, f in enumerate(rowa):
            if f.is_zero():
                continue
            lf = left_mult_matrix(n, b.tgt, f)
            for rbready in range(rb_t):
                for mid in range(rb_t):
                    coeff = lf[rbready][mid]
                    if coeff.is_zero():
                        continue
                    for cb in range(rb_s):
                        entry = b.matrix[mid][cb]
                        if entry.is_zero():
                            continue
                        out[ra * rb_t + rbready][ca * rb_s + cb] = (
                            out[ra * rb_t + rbready][ca * rb_s + cb]
                            + coeff * entry
                        )
    deg = None
    if a.degree is not None and b.degree is not None:
        deg = a.degree + b.degree
    return Morphism(n, src, tgt, out, deg, check=False)


def tensor_many(mors):
    out = mors[0]
    for m in mors[1:]:
        out = tensor(out, m)
    return out


def startdot_core(n, i):
    """R -> B_i, 1 |-> (1/2)(alpha (x) 1 + 1 (x) alpha): barbell square root."""
    i = i % n
    alpha = simple_root(n, i)
    return Morphism(n, (), (i,), ((alpha - xi(n, i),), (RingElement.one(n),)), 1)


def enddot_core(n, i):
    """B_i -> R, f (x) g |-> fg."""
    i = i % n
    return Morphism(n, (i,), (), ((RingElement.one(n), xi(n, i)),), 1)


def merge_core(n, i):
    """B_i B_i -> B_i, f (x) g (x) h |-> f d_i(g) (x) h."""
    i = i % n
    z = RingElement.zero(n)
    one = RingElement.one(n)
    # columns in mask order 00, 01, 10, 11 (bit 0 = second letter)
    return Morphism(
        n, (i, i), (i,),
        ((z, one, z, z), (z, z, z, one)),
        -1,
    )


def split_core(n, i):
    """B_i -> B_i B_i, f (x) g |-> f (x) 1 (x) g."""
    i = i % n
    z = RingElement.zero(n)
    one = RingElement.one(n)
    return Morphism(
        n, (i,), (i, i),
        ((one, z), (z, z), (z, one), (z, z)),
        -1,
    )


def crossing_core(n, i, j):
    """The distant 4-valent vertex B_i B_j -> B_j B_i (coordinate swap)."""
    i, j = i % n, j % n
    if (j - i) % n in (1, n - 1) or i == j:
        raise ValueError(f"colors {i},{j} are not distant")
    z = RingElement.zero(n)
    one = RingElement.one(n)
    rows = []
    for r in range(4):
        row = [z] * 4
        swapped = ((r & 1) << 1) | (r >> 1)
        row[swapped] = one
        rows.append(tuple(row))
    return Morphism(n, (i, j), (j, i), rows, 0)


def identity_word(n, word):
    return Morphism.identity(n, tuple(k % n for k in word))


def startdot(n, word, p, i):
    """Insert an i-colored startdot at slot p of word (0-indexed)."""
    word = tuple(k % n for k in word)
    return tensor_many(
        [
            identity_word(n, word[:p]),
            startdot_core(n, i),
            identity_word(n, word[p:]),
        ]
    )


def enddot(n, word, p):
    """Remove the letter at slot p of word by an enddot."""
    word = tuple(k % n for k in word)
    return tensor_many(
        [
            identity_word(n, word[:p]),
            enddot_core(n, word[p]),
            identity_word(n, word[p + 1:]),
        ]
    )


def merge(n, word, p):
    """Merge equal adjacent letters at slots p, p+1."""
    word = tuple(k % n for k in word)
    if word[p] != word[p + 1]:
        raise ValueError("merge needs equal adjacent letters")
    return tensor_many(
        [
            identity_word(n, word[:p]),
            merge_core(n, word[p]),
            identity_word(n, word[p + 2:]),
        ]
    )


def split(n, word, p):
    """Split the letter at slot p into a doubled letter."""
    word = tuple(k % n for k in word)
    return tensor_many(
        [
            identity_word(n, word[:p]),
            split_core(n, word[p]),
            identity_word(n, word[p + 1:]),
        ]
    )


def crossing(n, word, p):
    """Swap the distant letters at slots p, p+1."""
    word = tuple(k % n for k in word)
    return tensor_many(
        [
            identity_word(n, word[:p]),
            crossing_core(n, word[p], word[p + 1]),
            identity_word(n, word[p + 2:]),
        ]
    )


def distant(n, i, j):
    return i % n != j % n and (i - j) % n not in (1, n - 1)


def rex_move(n, word_from, word_to):
    """(sign, morphism) for the crossing-only rex move between two words.

    Both words must consist of the same distinct letters, reorderable by
    distant swaps; the sign is (-1)^(number of 4-valent vertices).
    """
    word_from = tuple(k % n for k in word_from)
    word_to = tuple(k % n for k in word_to)
    if sorted(word_from) != sorted(word_to) or len(set(word_from)) != len(word_from):
        raise ValueError(f"words {word_from} and {word_to} are not reorderings")
    current = list(word_from)
    total = identity_word(n, word_from)
    sign = 1
    for pos in range(len(word_to)):
        j = current.index(word_to[pos], pos)
        for k in range(j, pos, -1):
            if not distant(n, current[k], current[k - 1]):
                raise ValueError(
                    f"cannot commute adjacent colors {current[k-1]},{current[k]}"
                )
            total = crossing(n, current, k - 1).compose(total)
            current[k - 1], current[k] = current[k], current[k - 1]
            sign = -sign
    return sign, total


def theta(n, word_from, word_to):
    """The signed rex move: (-1)^(#crossings) times the crossing product."""
    sign, mor = rex_move(n, word_from, word_to)
    return mor if sign == 1 else -mor


def preferred_word(n, X):
    """The globally fixed reduced expression of h_X.

    The anticyclic word for aleph = min(S \\ X) in the natural order
    0 < 1 < ... < n-1.
    """
    X = frozenset(x % n for x in X)
    if len(X) >= n:
        raise ValueError("X must be a proper subset")
    if not X:
        return ()
    aleph = min(set(range(n)) - X)
    return anticyclic_word(n, X, aleph)


@lru_cache(maxsize=None)
def _eps_cached(n, X, Y):
    wy = preferred_word(n, Y)
    (i,) = set(Y) - set(X)
    k = wy.index(i)
    reduced = wy[:k] + wy[k + 1:]
    sign = (-1) ** k
    # signed rex move from the preferred word of X to wy-minus-i
    wx = preferred_word(n, X)
    perm = [wx.index(v) for v in reduced]
    inversions = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return sign * (-1) ** inversions


def eps_sign(n, X, Y):
    """The total sign of the signed dot between B_X and B_Y (|Y| = |X|+1)."""
    X = frozenset(x % n for x in X)
    Y = frozenset(y % n for y in Y)
    if not (X < Y and len(Y) == len(X) + 1):
        raise ValueError("subsets must differ by one added index")
    return _eps_cached(n, X, Y)


def signed_dot(n, A, B):
    """The signed dot from B_A to B_B, where A and B differ by one index.

    Adding an index gives the degree-1 map called an upward dot; removing
    gives the downward dot.  Both carry the sign epsilon = (-1)^(k-1) for the
    slot of the changed letter, transported through signed rex moves.
    """
    A = frozenset(a % n for a in A)
    B = frozenset(b % n for b in B)
    if len(A ^ B) != 1:
        raise ValueError("subsets must differ by exactly one index")
    up = len(B) == len(A) + 1
    small, big = (A, B) if up else (B, A)
    wy = preferred_word(n, big)
    (i,) = big - small
    k = wy.index(i)
    reduced = wy[:k] + wy[k + 1:]
    sign = (-1) ** k
    if up:
        mor = startdot(n, reduced, k, i).compose(theta(n, preferred_word(n, small), reduced))
    else:
        mor = theta(n, reduced, preferred_word(n, small)).compose(enddot(n, wy, k))
    return mor if sign == 1 else -mor


def is_bimodule_map(mor, generators=None):
    """Check that the left action commutes with the morphism."""
    n = mor.n
    if generators is None:
        generators = [RingElement.x(n, i) for i in range(1, n + 1)]
        generators.append(RingElement.delta(n))
    for f in generators:
        lhs = left_mult(n, mor.tgt, f).compose(mor)
        rhs = mor.compose(left_mult(n, mor.src, f))
        if not (lhs - rhs).is_zero():
            return False
    return True


@lru_cache(maxsize=None)
def gram_matrix(n, word):
    """The intersection form on BS(word) in the mask basis.

    G[r][c] = counit(e_r e_c), applying the per-letter counit
    f (x) rest |-> d_i(f) . rest from the outside in.
    """
    word = tuple(k % n for k in word)
    size = rank(word)
    rows = []
    for r in range(size):
        row = []
        for c in range(size):
            acc = RingElement.one(n)
            for slot, i in enumerate(word):
                bit = len(word) - 1 - slot
                e = ((r >> bit) & 1) + ((c >> bit) & 1)
                g = RingElement.one(n)
                for _ in range(e):
                    g = g * xi(n, i)
                acc = demazure(i, acc * g)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def gram_inverse(n, word):
    return polymat.mat_invert(gram_matrix(n, word))


def adjoint(mor):
    """The dual morphism under the intersection form: flips diagrams.

    Sends the startdot to the enddot, the merge to the split, and fixes the
    distant crossing (up to relabeling of endpoints).
    """
    n = mor.n
    m = polymat.mat_mul(
        gram_inverse(n, mor.src),
        polymat.mat_mul(polymat.mat_transpose(mor.matrix), gram_matrix(n, mor.tgt)),
    )
    return Morphism(n, mor.tgt, mor.src, m, mor.degree, check=False)


def sigma_word(n, word):
    return tuple((-k) % n for k in word)


@lru_cache(maxsize=None)
def _sigma_basis_change(n, word):
    """Matrix expressing the sigma image of the mask basis of BS(word) in the
    canonical mask basis of BS(sigma(word)).

    sigma(xi_i) = xi_{sigma(i)} - c_i with c_i invariant for s_{sigma(i)};
    the correction is forced rightward across the remaining letters.
    """
    word = tuple(k % n for k in word)
    if not word:
        return ((RingElement.one(n),),)
    i = word[0]
    si = (-i) % n
    corr = xi(n, si) - act_sigma(xi(n, i))
    rest = word[1:]
    crest = _sigma_basis_change(n, rest)
    lcorr = left_mult_matrix(n, sigma_word(n, rest), corr)
    half = rank(rest)
    zero = RingElement.zero(n)
    out = [[zero] * (2 * half) for _ in range(2 * half)]
    for r in range(half):
        for c in range(half):
            out[r][c] = crest[r][c]
            out[half + r][half + c] = crest[r][c]
    correction = polymat.mat_mul(lcorr, crest)
    for r in range(half):
        for c in range(half):
            out[r][half + c] = out[r][half + c] - correction[r][c]
    return tuple(tuple(row) for row in out)


def sigma_morphism(mor):
    """The image of a morphism under the Dynkin flip sigma.

    Entry-wise sigma conjugated back into the canonical mask bases of the
    flipped words.
    """
    n = mor.n
    src2, tgt2 = sigma_word(n, mor.src), sigma_word(n, mor.tgt)
    raw = tuple(
        tuple(act_sigma(x) for x in row) for row in mor.matrix
    )
    m = polymat.mat_mul(
        _sigma_basis_change(n, mor.tgt),
        polymat.mat_mul(raw, polymat.mat_invert(_sigma_basis_change(n, mor.src))),
    )
    return Morphism(n, src2, tgt2, m, mor.degree, check=False)


def subs_delta_zero(mor):
    return Morphism(
        mor.n, mor.src, mor.tgt,
        tuple(tuple(x.subs_delta_zero() for x in row) for row in mor.matrix),
        mor.degree, check=False,
    )
