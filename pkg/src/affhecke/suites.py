"""Exhaustive and randomized verification suites shared by CLI and tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import homalg
from .homalg import MatrixArithmetic, Pseudocomplex, Summand
from .polymat import mat_add, mat_identity, mat_mul, mat_scale, mat_zero
from .rings import RingElement
from .weyl import (
    ExtendedWeylElement,
    correspondent_Y,
    h_of,
    longest_element,
    rewrite_wIhX,
    tau_components,
)


def proper_subsets(n):
    for size in range(n):
        for members in itertools.combinations(range(n), size):
            yield frozenset(members)


def descent_lemma_cases(n):
    """Exhaustive descent-set lemma over all proper I, X at this n.

    Checks the equivalence tau(I) <= X iff tau(I) <= right descents of
    w_I h_X; and, when it holds, length additivity, the right and left
    descent formulas, the correspondent equation w_I h_X = h_Y w_J, and (for
    n <= 5) injectivity of (I, X) -> w_I h_X on such pairs.
    """
    equivalence = True
    additivity = True
    right_formula = True
    left_formula = True
    correspondence = True
    seen = {}
    no_overlap = True
    for I in proper_subsets(n):
        J = frozenset((i + 1) % n for i in I)
        wI = longest_element(n, I)
        for X in proper_subsets(n):
            hX = h_of(n, X)
            w = wI * hX
            rd = w.right_descents()
            if (J <= X) != (J <= rd):
                equivalence = False
            if not J <= X:
                continue
            if w.length() != wI.length() + hX.length():
                additivity = False
            if rd != J | {x for x in X if (x - 1) % n not in X}:
                right_formula = False
            Y = correspondent_Y(n, I, X)
            wJ = longest_element(n, J)
            hY = h_of(n, Y)
            other = hY * wJ
            if w != other:
                correspondence = False
            if other.left_descents() != I | {
                y for y in Y if (y + 1) % n not in Y
            }:
                left_formula = False
            if n <= 5:
                if w in seen and seen[w] != (I, X):
                    no_overlap = False
                seen[w] = (I, X)
    cases = [
        ("equivalence J<=X iff J<=R(w_I h_X)", equivalence),
        ("length additivity", additivity),
        ("right descent formula", right_formula),
        ("left descent formula", left_formula),
        ("correspondent w_I h_X = h_Y w_J", correspondence),
    ]
    if n <= 5:
        cases.append(("(I,X) -> w_I h_X injective", no_overlap))
    return cases


def _distant(n, a, b):
    return a != b and (a - b) % n not in (1, n - 1)


def commutation_reachable(n, word_from, word_to):
    """Whether two words are related by distant-swap moves only.

    Greedy leftmost matching: correct for trace monoids, since equal letters
    never commute past each other.
    """
    if sorted(word_from) != sorted(word_to):
        return False
    remaining = list(word_from)
    for t in word_to:
        i = remaining.index(t)
        if any(not _distant(n, remaining[j], t) for j in range(i)):
            return False
        remaining.pop(i)
    return not remaining


def _compatible_wI_word(n, I):
    """The reduced word of w_I concatenating per-run triangle words."""
    from .weyl import cyclic_runs

    word = []
    for run in cyclic_runs(n, I) if I else []:
        for t in range(len(run)):
            word.extend(reversed(run[: t + 1]))
    return word


def rewrite_cases(n, alephs=None):
    """The rewriting factorization multiplies back, keeps the letters of the
    compatible concatenation w_I . h_X, and is reachable from it using only
    commutation (distant-swap) moves."""
    ok_product = True
    ok_letters = True
    ok_commutation = True
    for I in proper_subsets(n):
        base_wI = _compatible_wI_word(n, I)
        for X in proper_subsets(n):
            for aleph in range(n) if alephs is None else alephs:
                if aleph in X:
                    continue
                factors = rewrite_wIhX(n, I, X, aleph)
                letters = [k for f in factors for k in f]
                prod = ExtendedWeylElement.identity(n)
                for k in letters:
                    prod = prod.times_simple(k)
                expected = longest_element(n, I) * h_of(n, X, aleph)
                if prod != expected:
                    ok_product = False
                base = base_wI + [
                    v
                    for v in sorted(X, key=lambda v: (v - aleph) % n, reverse=True)
                ]
                if sorted(letters) != sorted(base):
                    ok_letters = False
                if not commutation_reachable(n, base, letters):
                    ok_commutation = False
    return [
        ("rewrite factors multiply to w_I h_X", ok_product),
        ("rewrite uses the letters of the concatenation", ok_letters),
        ("rewrite reachable by commutation moves only", ok_commutation),
    ]


# ---------------------------------------------------------------------------
# randomized pseudocomplex properties over Q[d]


def _random_matrix(rng, rows, cols, arithmetic, scale=3, delta_part=False):
    n = arithmetic.n
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            c0 = Fraction(rng.randint(-scale, scale))
            terms = {(0,) * (n + 1): c0}
            if delta_part and rng.random() < 0.5:
                mono = [0] * (n + 1)
                mono[n] = 1
                terms[tuple(mono)] = Fraction(rng.randint(-scale, scale))
            row.append(RingElement(n, terms))
        out.append(tuple(row))
    return tuple(out)


def random_pseudocomplex(rng, max_rank=3, degrees=(0, 1, 2), delta_deform=True):
    """A random pseudocomplex over Q[d].

    Built as a sum of contractible two-term pieces conjugated by random
    invertible changes of basis (an honest complex), then deformed by
    d -> d + delta . e for a random degree-one map e; d^2 stays a multiple
    of delta.
    """
    ar = MatrixArithmetic(0)
    # direct sum of elementary pieces: either a lone summand in one degree
    # or a contractible pair connected by a scalar isomorphism, so that the
    # undeformed differential squares to zero on the nose
    slots = {k: 0 for k in degrees}
    pieces = []
    for _ in range(rng.randint(2, 2 * max_rank)):
        k = rng.choice(degrees)
        if k + 1 in slots and rng.random() < 0.6:
            pieces.append((k, slots[k], slots[k + 1], Fraction(rng.choice([1, -1, 2]))))
            slots[k] += 1
            slots[k + 1] += 1
        else:
            slots[k] += 1
    ranks = {k: max(1, r) for k, r in slots.items()}
    base = {}
    for k in degrees:
        if k + 1 not in ranks:
            continue
        rows, cols = ranks[k + 1], ranks[k]
        mat = [[Fraction(0)] * cols for _ in range(rows)]
        for (deg, col, row, scalar) in pieces:
            if deg == k:
                mat[row][col] = scalar
        base[k] = mat
    # random invertible change of basis per degree (unitriangular times perm)
    changes = {}
    for k, r in ranks.items():
        mat = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                mat[i][j] = Fraction(rng.randint(-2, 2))
        perm = list(range(r))
        rng.shuffle(perm)
        changes[k] = [[mat[i][perm[j]] for j in range(r)] for i in range(r)]
    summands = [Summand(k, ranks[k], 0, k) for k in degrees]
    diff = {}
    for k, mat in base.items():
        u_next = changes[k + 1]
        u_inv = _fraction_inverse(changes[k])
        prod = _fraction_mul(_fraction_mul(u_next, mat), u_inv)
        entry = tuple(
            tuple(RingElement(0, {(0,): c}) for c in row) for row in prod
        )
        diff[(k, k + 1)] = entry
    if delta_deform:
        for k in degrees:
            if k + 1 not in ranks or rng.random() < 0.4:
                continue
            e = _random_matrix(rng, ranks[k + 1], ranks[k], ar, scale=2)
            key = (k, k + 1)
            deform = ar.scale_delta(e)
            diff[key] = (
                mat_add(diff[key], deform) if key in diff else deform
            )
    diff = {k: v for k, v in diff.items() if not ar.is_zero(v)}
    return Pseudocomplex(ar, summands, diff, validate=True)


def _fraction_mul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    return [
        [sum((a[r][k] * b[k][c] for k in range(mid)), Fraction(0)) for c in range(cols)]
        for r in range(rows)
    ]


def _fraction_inverse(a):
    size = len(a)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(size)]
        for r, row in enumerate(a)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def chainmap_entries_equal(ar, left, right):
    keys = set(left) | set(right)
    for key in keys:
        a = left.get(key)
        b = right.get(key)
        if a is None:
            if not ar.is_zero(b):
                return False
        elif b is None:
            if not ar.is_zero(a):
                return False
        elif not ar.is_zero(mat_add(a, mat_scale(b, Fraction(-1)))):
            return False
    return True


def ge_round_trip_case(rng):
    """One random GE: alpha beta = id and beta alpha - id = dq + qd exactly."""
    p = random_pseudocomplex(rng)
    iso = None
    for (a, b), mor in sorted(p.diff.items()):
        if p.arithmetic.is_isomorphism(mor, p.by_sid[a].label, p.by_sid[b].label):
            iso = (a, b)
            break
    if iso is None:
        return True  # nothing to eliminate; vacuous case
    q, alpha, beta, homotopy = p.gaussian_eliminate(iso)
    if not alpha.compose(beta).is_identity():
        return False
    ar = p.arithmetic
    left = beta.compose(alpha).entries
    ident = homalg.identity_chain_map(p).entries
    diffpart = homotopy.nulhomotopic_map().entries
    # beta alpha + (dq + qd) = id, exactly, pseudocomplex or not
    combined = dict(ident)
    for key, m in diffpart.items():
        m = mat_scale(m, Fraction(-1))
        combined[key] = mat_add(combined[key], m) if key in combined else m
    if not chainmap_entries_equal(ar, left, combined):
        return False
    if not alpha.is_pseudo_chain_map() or not beta.is_pseudo_chain_map():
        return False
    return True


def monodromy_naturality_case(rng):
    """mu_Q f - f mu_P = d nu_f + nu_f d, exactly, for the GE witness f."""
    p = random_pseudocomplex(rng)
    iso = None
    for (a, b), mor in sorted(p.diff.items()):
        if p.arithmetic.is_isomorphism(mor, p.by_sid[a].label, p.by_sid[b].label):
            iso = (a, b)
            break
    if iso is None:
        return True
    q, alpha, beta, _h = p.gaussian_eliminate(iso)
    ar = p.arithmetic
    mu_p = p.monodromy()
    mu_q = q.monodromy()
    nu = alpha.nu()
    lhs = mu_q.compose(alpha).add(alpha.compose(mu_p).negate()).entries
    rhs = {}
    for (a, b), m in nu.entries.items():
        for (b2, c), d in q.diff.items():
            if b2 == b:
                key = (a, c)
                term = mat_mul(d, m)
                rhs[key] = mat_add(rhs[key], term) if key in rhs else term
    for (a, b), d in p.diff.items():
        for (b2, c), m in nu.entries.items():
            if b2 == b:
                key = (a, c)
                term = mat_mul(m, d)
                rhs[key] = mat_add(rhs[key], term) if key in rhs else term
    return chainmap_entries_equal(ar, lhs, rhs)


def simultaneous_vs_iterated_case(rng):
    """Block-diagonal independent family: simultaneous equals iterated."""
    ar = MatrixArithmetic(0)
    m = rng.randint(2, 3)
    summands = [Summand(0, 2, 0, 0)]
    sid = 1
    f_ids, fp_ids = [], []
    for _ in range(m):
        summands.append(Summand(sid, 1, 0, 0))
        f_ids.append(sid)
        sid += 1
    summands.append(Summand(sid, 2, 0, 1))
    c_id = sid
    sid += 1
    for _ in range(m):
        summands.append(Summand(sid, 1, 0, 1))
        fp_ids.append(sid)
        sid += 1
    one = RingElement.one(0)

    def rand1(rows, cols):
        return tuple(
            tuple(
                RingElement(0, {(0,): Fraction(rng.randint(-2, 2))})
                for _ in range(cols)
            )
            for _ in range(rows)
        )

    diff = {(0, c_id): rand1(2, 2)}
    for j in range(m):
        diff[(f_ids[j], fp_ids[j])] = ((one,),)
        diff[(0, fp_ids[j])] = rand1(1, 2)
        diff[(f_ids[j], c_id)] = rand1(2, 1)
    diff = {k: v for k, v in diff.items() if not ar.is_zero(v)}
    p = Pseudocomplex(ar, summands, diff, validate=True)
    pairs = list(zip(f_ids, fp_ids))
    simul, _trace = p.simultaneous_eliminate(pairs)
    iterated = p
    for pair in pairs:
        iterated = iterated.gaussian_eliminate(pair)[0]
    if {s.sid for s in simul.summands} != {s.sid for s in iterated.summands}:
        return False
    keys = set(simul.diff) | set(iterated.diff)
    for key in keys:
        a = simul.diff.get(key)
        b = iterated.diff.get(key)
        if a is None or b is None:
            if not ar.is_zero(a if a is not None else b):
                return False
        elif not ar.is_zero(mat_add(a, mat_scale(b, Fraction(-1)))):
            return False
    return True


def pitfall_case():
    """The classic invalid iterated elimination must be refused."""
    ar = MatrixArithmetic(0)
    one = RingElement.one(0)
    summands = [
        Summand(0, 1, 0, 0),
        Summand(1, 1, 0, 0),
        Summand(2, 1, 0, 1),
        Summand(3, 1, 0, 1),
    ]
    diff = {
        (0, 2): ((one,),),
        (0, 3): ((one,),),
        (1, 2): ((one,),),
        (1, 3): ((one,),),
    }
    p = Pseudocomplex(ar, summands, diff, validate=True)
    try:
        p.simultaneous_eliminate([(0, 2), (1, 3)])
    except ValueError:
        pass
    else:
        return False
    q = p.gaussian_eliminate((0, 2))[0]
    return ar.is_zero(q.entry(1, 3)) and len(q.summands) == 2


def tensor_monodromy_case(rng):
    """mu_{P (x) Q} = mu_P (x) 1 + 1 (x) mu_Q, exactly."""
    p = random_pseudocomplex(rng, max_rank=2, degrees=(0, 1))
    q = random_pseudocomplex(rng, max_rank=2, degrees=(0, 1))
    ar = p.arithmetic
    t = homalg.tensor(p, q)
    mu_t = t.monodromy().entries
    mu_p = p.monodromy().entries
    mu_q = q.monodromy().entries
    pairs = [(a, b) for a in p.summands for b in q.summands]
    index = {(a.sid, b.sid): i for i, (a, b) in enumerate(pairs)}
    expected = {}
    for (a1, a2), m in mu_p.items():
        for b in q.summands:
            key = (index[(a1, b.sid)], index[(a2, b.sid)])
            term = ar.tensor(m, ar.identity(b.label))
            expected[key] = (
                mat_add(expected[key], term) if key in expected else term
            )
    for (b1, b2), m in mu_q.items():
        for a in p.summands:
            key = (index[(a.sid, b1)], index[(a.sid, b2)])
            term = ar.tensor(ar.identity(a.label), m)
            expected[key] = (
                mat_add(expected[key], term) if key in expected else term
            )
    return chainmap_entries_equal(ar, mu_t, expected)


def ge_property_cases(seed=0, count=100):
    """The randomized pseudocomplex-engine battery."""
    rng = random.Random(seed)
    results = []
    ok = all(ge_round_trip_case(rng) for _ in range(count))
    results.append((f"GE witnesses ({count} cases)", ok))
    ok = all(monodromy_naturality_case(rng) for _ in range(count // 2))
    results.append((f"monodromy naturality ({count // 2} cases)", ok))
    ok = all(simultaneous_vs_iterated_case(rng) for _ in range(count))
    results.append((f"simultaneous = iterated ({count} cases)", ok))
    results.append(("iterated-elimination pitfall refused", pitfall_case()))
    ok = all(tensor_monodromy_case(rng) for _ in range(count // 2))
    results.append((f"tensor monodromy ({count // 2} cases)", ok))
    return results
