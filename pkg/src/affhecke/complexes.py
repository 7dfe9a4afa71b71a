"""The twisted standard complex and the theorem verifications built on it.

Constructions: the degree sets P_k / Q_k, the twisted standard complex F
(sign or bimodule backend), the inner complex I with the monodromy map mu,
the flip F* = sigma(F), the Wakimoto filtration, the complexes N_I and M_J,
crossover signs, the object-level Gaussian-elimination certificate for
tensoring with a longest element, the nulhomotopy H for left multiplication
by x_1, and the n=2 commutation squares for the twisting map phi_s.

Sign-level checks run at any small n; exact bimodule-matrix checks are kept
to n <= 4 where ranks stay within 2^3.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import bimod, homalg
from .bimod import eps_sign, preferred_word, signed_dot
from .hecke import (
    DEFAULT_LENGTH_CAP,
    HeckeElement,
    braid_hecke_image,
    c_element,
    kl_basis,
    symbol_of_complex,
)
from .homalg import (
    BimoduleArithmetic,
    ChainMap,
    Pseudocomplex,
    SignArithmetic,
    Summand,
)
from .rings import LaurentPoly, RingElement
from .weyl import (
    ExtendedWeylElement,
    h_of,
    longest_element,
    tau_components,
)


def build_P(n):
    """P_k: proper subsets X with |X| <= n-1-|k| and n-1-k-|X| even."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = {}
    for k in range(-(n - 1), n):
        sets = []
        for m in range(0, n - abs(k)):
            if (n - 1 - k - m) % 2:
                continue
            sets.extend(
                frozenset(c) for c in itertools.combinations(range(n), m)
            )
        if sets:
            out[k] = sorted(sets, key=sorted)
    return out


def build_Q(n):
    """Q_k = P_{k+1} for k >= 0 and P_{k-1} for k <= 0 (consistent at 0)."""
    p = build_P(n)
    out = {}
    for k in range(-(n - 2), n - 1):
        out[k] = p[k + 1] if k >= 0 else p[k - 1]
    return out


def summand_subset(label):
    """The index subset of a summand label (word tuple or frozenset)."""
    if isinstance(label, frozenset):
        return label
    return frozenset(label)


def _dot_entries(n, grading, backend):
    """Differential entries between adjacent layers of a grading dict.

    grading maps k -> list of subsets; an entry appears whenever subsets in
    degrees k, k+1 differ by one index.  Returns dict keyed by (sid, sid).
    """
    sids = {}
    summands = []
    for k in sorted(grading):
        for X in grading[k]:
            sid = len(summands)
            sids[(X, k)] = sid
            label = X if backend == "sign" else preferred_word(n, X)
            summands.append(Summand(sid, label, k, k))
    diff = {}
    for k in sorted(grading):
        if k + 1 not in grading:
            continue
        for X in grading[k]:
            for Y in grading[k + 1]:
                if len(X ^ Y) != 1:
                    continue
                a, b = sids[(X, k)], sids[(Y, k + 1)]
                small, big = (X, Y) if len(Y) > len(X) else (Y, X)
                if backend == "sign":
                    diff[(a, b)] = eps_sign(n, small, big)
                else:
                    diff[(a, b)] = signed_dot(n, X, Y)
    return summands, diff, sids


def build_F(n, backend="sign"):
    """The twisted standard complex: summands B_X(k) for X in P_k, signed dots."""
    if backend == "hecke":
        backend = "sign"
    if backend not in ("sign", "bimodule"):
        raise ValueError(f"unknown backend {backend!r}")
    summands, diff, _ = _dot_entries(n, build_P(n), backend)
    arithmetic = SignArithmetic() if backend == "sign" else BimoduleArithmetic(n)
    return Pseudocomplex(arithmetic, summands, diff, validate=False)


def build_I(n, backend="sign"):
    """The inner complex with summands over Q_k; differential is minus dots."""
    if backend == "hecke":
        backend = "sign"
    summands, diff, _ = _dot_entries(n, build_Q(n), backend)
    arithmetic = SignArithmetic() if backend == "sign" else BimoduleArithmetic(n)
    diff = {k: arithmetic.negate(m) for k, m in diff.items()}
    return Pseudocomplex(arithmetic, summands, diff, validate=False)


def _find_summand(p, X, degree):
    for s in p.summands:
        if s.degree == degree and summand_subset(s.label) == X:
            return s
    return None


def inner_inclusion(n, F=None, I=None):
    """The inclusion I(1)[-1] -> F (identity on the selected summands)."""
    F = F if F is not None else build_F(n)
    I = I if I is not None else build_I(n)
    shifted = I.shift(grading=1, homological=-1)
    ar = F.arithmetic
    entries = {}
    for s in shifted.summands:
        tgt = _find_summand(F, summand_subset(s.label), s.degree)
        if tgt is None:
            raise ValueError("inner complex summand missing from F")
        entries[(s.sid, tgt.sid)] = ar.identity(tgt.label)
    return ChainMap(shifted, F, entries), shifted


def inner_projection(n, F=None, I=None):
    """The quotient map F -> I(-1)[1]."""
    F = F if F is not None else build_F(n)
    I = I if I is not None else build_I(n)
    shifted = I.shift(grading=-1, homological=1)
    ar = F.arithmetic
    entries = {}
    for s in shifted.summands:
        src = _find_summand(F, summand_subset(s.label), s.degree)
        if src is None:
            raise ValueError("inner complex summand missing from F")
        entries[(src.sid, s.sid)] = ar.identity(src.label)
    return ChainMap(F, shifted, entries), shifted


def monodromy_map(n, F=None):
    """mu: F -> F(-2)[2], the identity on each summand of P_k cap P_{k+2}."""
    F = F if F is not None else build_F(n)
    ar = F.arithmetic
    p = build_P(n)
    entries = {}
    for s in F.summands:
        X = summand_subset(s.label)
        if s.degree + 2 in p and X in p[s.degree + 2]:
            tgt = _find_summand(F, X, s.degree + 2)
            entries[(s.sid, tgt.sid)] = ar.identity(s.label)
    return ChainMap(F, F, entries, degree_shift=2, grading_shift=-2)


def build_Fstar(n, backend="sign"):
    """F* = sigma(F): sigma applied summand-wise and to all differentials."""
    F = build_F(n, backend)
    if backend in ("sign", "hecke"):
        summands = [
            Summand(s.sid, frozenset((-x) % n for x in s.label), s.shift, s.degree)
            for s in F.summands
        ]
        return Pseudocomplex(F.arithmetic, summands, dict(F.diff), validate=False)
    summands = [
        Summand(s.sid, bimod.sigma_word(n, s.label), s.shift, s.degree)
        for s in F.summands
    ]
    diff = {k: bimod.sigma_morphism(m) for k, m in F.diff.items()}
    return Pseudocomplex(F.arithmetic, summands, diff, validate=False)


def check_d2_signs(n):
    """Sign-level d^2 check on F.

    Off-diagonal entries must cancel in pairs; each diagonal entry
    B_X(k) -> B_X(k+2) must be a sum of n positively-signed double dots (the
    barbell sum equal to delta times the identity).
    """
    p = build_P(n)
    for k in sorted(p):
        if k + 2 not in p:
            continue
        for X in p[k]:
            mids = [
                M
                for M in p.get(k + 1, [])
                if len(M ^ X) == 1
            ]
            for Y in p[k + 2]:
                paths = []
                for M in mids:
                    if len(M ^ Y) != 1:
                        continue
                    s1 = eps_sign(n, *(sorted((X, M), key=len)))
                    s2 = eps_sign(n, *(sorted((M, Y), key=len)))
                    paths.append(s1 * s2)
                if Y == X:
                    if not (len(paths) == n and all(s == 1 for s in paths)):
                        return False
                elif paths and sum(paths) != 0:
                    return False
    return True


def wakimoto_assignment(n):
    """(X, k) -> cube index i in 1..n, per the filtration theorem.

    X sits in U_m with m = (n-1-|X|-k)/2 and belongs to cube i when
    i-1 is not in X and |X cap {0..i-2}| = i-1-m.
    """
    out = {}
    p = build_P(n)
    for k, sets in p.items():
        for X in sets:
            m = (n - 1 - len(X) - k) // 2
            matches = [
                i
                for i in range(1, n + 1)
                if (i - 1) % n not in X
                and len(X & set(range(i - 1))) == i - 1 - m
            ]
            if len(matches) != 1:
                raise AssertionError(
                    f"cube assignment not unique for X={sorted(X)}, k={k}: {matches}"
                )
            out[(X, k)] = matches[0]
    return out


def verify_wakimoto(n, length_cap=DEFAULT_LENGTH_CAP):
    """Partition, cube sizes, filtration closure and cube Hecke symbols.

    Each cube must have 2^{n-1} members, differentials must never increase
    the cube index, and omega times the cube symbol must equal the Hecke
    image of the translation braid word y_i.  Failures raise AssertionError
    (they would falsify the theorem).
    """
    from .braid import y_braid

    assign = wakimoto_assignment(n)
    sizes = {}
    for (X, k), i in assign.items():
        sizes[i] = sizes.get(i, 0) + 1
    if sizes != {i: 2 ** (n - 1) for i in range(1, n + 1)}:
        raise AssertionError(f"cube sizes {sizes} are not all 2^(n-1)")
    F = build_F(n)
    for (a, b) in F.diff:
        sa, sb = F.by_sid[a], F.by_sid[b]
        ca = assign[(summand_subset(sa.label), sa.degree)]
        cb = assign[(summand_subset(sb.label), sb.degree)]
        if cb > ca:
            raise AssertionError(
                f"differential increases cube index: {ca} -> {cb}"
            )
    om = HeckeElement.std(ExtendedWeylElement.rotation(n, 1))
    for i in range(1, n + 1):
        total = HeckeElement.zero(n)
        for (X, k), cube in assign.items():
            if cube != i:
                continue
            term = kl_basis(h_of(n, X), length_cap).scale(LaurentPoly.v(k))
            total = total + (term if k % 2 == 0 else -term)
        expected = braid_hecke_image(y_braid(n, i))
        if om * total != expected:
            raise AssertionError(f"cube {i} symbol does not match y_{i}")
    return True


def f_symbol(n, F=None, length_cap=DEFAULT_LENGTH_CAP):
    F = F if F is not None else build_F(n)
    return symbol_of_complex(
        n, F, lambda label: h_of(n, summand_subset(label)), length_cap
    )


def n_sets(n, I):
    """N^I_k: the X in P_k containing tau(I)."""
    J = frozenset((i + 1) % n for i in I)
    return {
        k: [X for X in sets if J <= X]
        for k, sets in build_P(n).items()
        if any(J <= X for X in sets)
    }


def m_sets(n, J):
    """M^J_k: the Y in P_k containing I = tau^{-1}(J)."""
    I = frozenset((j - 1) % n for j in J)
    return {
        k: [Y for Y in sets if I <= Y]
        for k, sets in build_P(n).items()
        if any(I <= Y for Y in sets)
    }


def build_N(n, I):
    """The complex with summands B_{w_I h_X}(k), X in N^I_k, signed dots."""
    I = frozenset(i % n for i in I)
    summands, diff, _ = _dot_entries(n, n_sets(n, I), "sign")
    return Pseudocomplex(SignArithmetic(), summands, diff, validate=False)


def build_M(n, J):
    """The complex with summands B_{h_Y w_J}(k), Y in M^J_k, signed dots."""
    J = frozenset(j % n for j in J)
    summands, diff, _ = _dot_entries(n, m_sets(n, J), "sign")
    return Pseudocomplex(SignArithmetic(), summands, diff, validate=False)


def n_symbol(n, I, length_cap=DEFAULT_LENGTH_CAP):
    wI = longest_element(n, I)
    return symbol_of_complex(
        n,
        build_N(n, I),
        lambda label: wI * h_of(n, summand_subset(label)),
        length_cap,
    )


def crossover_sign(n, I, X):
    """(-1)^{a(X)} with a(X) = sum of |A|-1 over tau-components inside X."""
    I = frozenset(i % n for i in I)
    X = frozenset(x % n for x in X)
    J = frozenset((i + 1) % n for i in I)
    if not J <= X:
        raise ValueError("tau(I) must be contained in X")
    a = sum(len(c) - 1 for c in tau_components(n, I) if set(c) <= X)
    return (-1) ** a


def _slot_parity(n, Z, x, aleph):
    """(-1)^(letters to the left of x in the anticyclic word of h_Z)."""
    key = (x - aleph) % n
    before = sum(1 for z in Z if (z - aleph) % n > key)
    return (-1) ** before


def verify_N_equals_M(n, I):
    """The signed crossover makes N_I and M_{tau(I)} isomorphic.

    Three layers, per the left-versus-right proposition:
    (a) a diagonal +-1 assignment intertwining the differentials of N_I and
        M_J exists (solved by propagation over the summand graph);
    (b) on every edge admitting a common anticyclic base point outside both
        X and Y, the slot-count discrepancy between the x-dot and the y-dot
        is (-1)^{|A_i|-1} when x = min(A_i) is removed from a full component
        and +1 otherwise (the dot-crossover discrepancy);
    (c) the bookkeeping sign (-1)^{a(X)}, a(X) = sum of |A|-1 over full
        components inside X, solves exactly that discrepancy pattern.
    """
    from .weyl import correspondent_Y

    I = frozenset(i % n for i in I)
    J = frozenset((i + 1) % n for i in I)
    comps = tau_components(n, I)
    sets = n_sets(n, I)
    edges = {}
    for k in sorted(sets):
        if k + 1 not in sets:
            continue
        for X in sets[k]:
            for X2 in sets[k + 1]:
                if len(X ^ X2) != 1:
                    continue
                (x,) = X ^ X2
                Y = correspondent_Y(n, I, X)
                Y2 = correspondent_Y(n, I, X2)
                if len(Y ^ Y2) != 1:
                    raise AssertionError("correspondents are not adjacent")
                eps_n = eps_sign(n, *(sorted((X, X2), key=len)))
                eps_m = eps_sign(n, *(sorted((Y, Y2), key=len)))
                edges[((X, k), (X2, k + 1))] = (eps_n, eps_m, x, Y, Y2)
    # (a) solve the diagonal sign by propagation (the graph is connected
    # for every I since N_I is indecomposable)
    signs = {}
    adjacency = {}
    for (a, b) in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    nodes = sorted(adjacency, key=lambda nk: (nk[1], sorted(nk[0])))
    for start in nodes:
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            node = stack.pop()
            for nb in adjacency[node]:
                key = (node, nb) if (node, nb) in edges else (nb, node)
                eps_n, eps_m, *_ = edges[key]
                ratio = eps_n * eps_m
                if nb in signs:
                    if signs[nb] != ratio * signs[node]:
                        raise AssertionError(
                            f"no diagonal sign isomorphism N_I = M_J for "
                            f"I={sorted(I)}"
                        )
                else:
                    signs[nb] = ratio * signs[node]
                    stack.append(nb)
    # (b) + (c): the discrepancy mechanism and the a(X) bookkeeping
    for ((X, k), (X2, k2)), (eps_n, eps_m, x, Y, Y2) in edges.items():
        comp = next(c for c in comps if x in c)
        big_x = X if x in X else X2
        full_min_move = len(comp) > 1 and set(comp) <= big_x and x == comp[0]
        predicted = (-1) ** (len(comp) - 1) if full_min_move else 1
        a_ratio = crossover_sign(n, I, X) * crossover_sign(n, I, X2)
        if a_ratio != predicted:
            raise AssertionError(
                f"(-1)^a(X) does not solve the discrepancy at x={x}"
            )
        common = sorted(set(range(n)) - (X | X2 | Y | Y2))
        if not common:
            continue
        aleph = common[0]
        big_y = Y if len(Y) > len(Y2) else Y2
        (y,) = Y ^ Y2
        slot_ratio = _slot_parity(n, big_x, x, aleph) * _slot_parity(
            n, big_y, y, aleph
        )
        if slot_ratio != predicted:
            raise AssertionError(
                f"adapted dot discrepancy is not (-1)^(|A|-1) at x={x}"
            )
    return True


def tensorBI_object_GE(n, I, length_cap=DEFAULT_LENGTH_CAP, check_each_stage=True):
    """Object-level Gaussian elimination certificate for B_I (x) F.

    Simulates the block-by-block elimination on summand symbols: at the
    stage for an index j of tau(I) (processed from the top of each
    tau-component downward), summands lacking j split by the plethysm rules
    (godown for j-1 present, grow for both) and the split pieces cancel in
    adjacent homological degrees.  Survivors must be exactly the summands of
    N_I with symbols c_{I,X,X} = b_{w_I h_X}, and the running Hecke symbol
    sum must stay equal to b_{w_I} [F] = [N_I] throughout.

    Returns a certificate dict with the per-stage trace.
    """
    I = frozenset(i % n for i in I)
    J = frozenset((i + 1) % n for i in I)
    memo = {}
    comps = tau_components(n, I)

    def csym(Z, Y):
        return c_element(n, I, Z, Y, length_cap, memo)

    def total_symbol(items):
        total = HeckeElement.zero(n)
        for (Z, Y, s, k) in items:
            term = csym(Z, Y).scale(LaurentPoly.v(s))
            total = total + (term if k % 2 == 0 else -term)
        return total

    items = []
    for k, sets in build_P(n).items():
        for X in sets:
            items.append((X, frozenset(), k, k))
    target = kl_basis(longest_element(n, I), length_cap) * f_symbol(n, length_cap=length_cap)
    if total_symbol(items) != target:
        raise AssertionError("initial symbol does not match b_{w_I} [F]")
    steps = []
    for comp in comps:
        if len(comp) < 2:
            continue
        for idx in range(len(comp) - 1, 0, -1):
            j, prev = comp[idx], comp[idx - 1]
            new_items, pool = [], []
            for (Z, Y, s, k) in items:
                if j in Z and prev in Z:
                    Y2 = Y | {j}
                    new_items.append((Z, Y2 | {prev}, s, k))
                    pool.append((Z - {prev, j}, Y2 - {j}, s, k))
                elif j in Z:
                    new_items.append((Z, Y | {j}, s, k))
                elif prev in Z:
                    pool.append((Z - {prev}, Y, s - 1, k))
                    pool.append((Z - {prev}, Y, s + 1, k))
                else:
                    pool.append((Z, Y, s, k))
            groups = {}
            for (Z, Y, s, k) in pool:
                groups.setdefault((Z, Y, s), []).append(k)
            cancelled = []
            for (Z, Y, s), degrees in sorted(
                groups.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][2])
            ):
                counts = {}
                for k in degrees:
                    counts[k] = counts.get(k, 0) + 1
                carry, prev_deg = 0, None
                for k in sorted(counts):
                    if carry and k != prev_deg + 1:
                        raise AssertionError(
                            f"stage {j}: gap while pairing block {sorted(Z)}"
                        )
                    carry = counts[k] - carry
                    prev_deg = k
                    if carry < 0:
                        raise AssertionError(
                            f"stage {j}: cannot pair pieces for {sorted(Z)}"
                        )
                if carry:
                    raise AssertionError(
                        f"stage {j}: unmatched pieces for block {sorted(Z)}"
                    )
                cancelled.append(
                    {"block": sorted(Z), "shift": s, "degrees": sorted(degrees)}
                )
            items = new_items
            steps.append({"index": j, "cancelled": cancelled})
            if check_each_stage and total_symbol(items) != target:
                raise AssertionError(f"symbol changed at stage {j}")
    expected = {}
    for k, sets in n_sets(n, I).items():
        for X in sets:
            expected[(X, k)] = expected.get((X, k), 0) + 1
    got = {}
    for (Z, Y, s, k) in items:
        if not J <= Z:
            raise AssertionError("survivor does not contain tau(I)")
        if s != k:
            raise AssertionError("survivor has mismatched shift")
        got[(Z, k)] = got.get((Z, k), 0) + 1
        if csym(Z, Y) != kl_basis(longest_element(n, I) * h_of(n, Z), length_cap):
            raise AssertionError(
                f"survivor symbol for X={sorted(Z)} is not b_(w_I h_X)"
            )
    if got != expected:
        raise AssertionError("survivors do not match the summands of N_I")
    if total_symbol(items) != n_symbol(n, I, length_cap):
        raise AssertionError("final symbol does not equal [N_I]")
    return {
        "theorem": "tensor-with-longest-element",
        "n": n,
        "parameters": {"I": sorted(I)},
        "steps": steps,
        "survivors": sorted(
            (sorted(Z), k) for (Z, Y, s, k) in items
        ),
        "verdict": "pass",
    }


def underlying_vector_space(p):
    """Graded dimensions: count of R-labeled summands per homological degree."""
    dims = {}
    for s in p.summands:
        if not summand_subset(s.label):
            dims[s.degree] = dims.get(s.degree, 0) + 1
    return dims


def verify_gamma_nilpotent(n):
    """mu acts on the underlying vector space of F as a regular nilpotent."""
    F = build_F(n)
    mu = monodromy_map(n, F)
    r_sids = {
        s.sid: s.degree for s in F.summands if not summand_subset(s.label)
    }
    degrees = sorted(r_sids.values())
    if degrees != list(range(-(n - 1), n, 2)):
        raise AssertionError(f"R summands in unexpected degrees {degrees}")
    hits = 0
    for (a, b), m in mu.entries.items():
        if a in r_sids and b in r_sids:
            if m != 1:
                raise AssertionError("Gamma(mu) entry is not the identity")
            hits += 1
    if hits != n - 1:
        raise AssertionError(f"Gamma(mu) has {hits} shifts, expected {n - 1}")
    return True


def tau_equivariance_signs(n):
    """Solve for the diagonal +-1 making tau(F) isomorphic to F.

    Summand X at degree k maps to tau(X) at degree k; returns the sign
    assignment (propagated over the summand graph) or raises when no
    consistent assignment exists.
    """
    p = build_P(n)
    entries = {}
    adjacency = {}
    for k in sorted(p):
        if k + 1 not in p:
            continue
        for X in p[k]:
            for Y in p[k + 1]:
                if len(X ^ Y) == 1:
                    entries[(X, k, Y)] = eps_sign(n, *(sorted((X, Y), key=len)))
                    adjacency.setdefault((X, k), []).append((Y, k + 1))
                    adjacency.setdefault((Y, k + 1), []).append((X, k))
    nodes = sorted(
        {(X, k) for k in p for X in p[k]}, key=lambda nk: (nk[1], sorted(nk[0]))
    )

    def edge_ratio(a, b):
        # ratio s_b / s_a forced by matching tau-rotated differentials
        (X, kx), (Y, ky) = (a, b) if a[1] < b[1] else (b, a)
        e = entries[(X, kx, Y)]
        tX = frozenset((x + 1) % n for x in X)
        tY = frozenset((y + 1) % n for y in Y)
        return entries[(tX, kx, tY)] * e

    signs = {}
    for start in nodes:
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            node = stack.pop()
            for nb in adjacency.get(node, []):
                r = edge_ratio(node, nb)
                if nb in signs:
                    if signs[nb] != r * signs[node]:
                        raise AssertionError(
                            "no diagonal sign isomorphism tau(F) = F"
                        )
                else:
                    signs[nb] = r * signs[node]
                    stack.append(nb)
    return signs


def rouquier_complex(n, i, inverse=False, arithmetic=None):
    """The elementary Rouquier complex F_i (or its inverse) over bimodules.

    F_i is B_i in degree 0 mapping to R(1) by the enddot; the inverse is
    R(-1) mapping to B_i by the startdot.
    """
    ar = arithmetic if arithmetic is not None else BimoduleArithmetic(n)
    i = i % n
    if inverse:
        summands = [Summand(0, (), -1, -1), Summand(1, (i,), 0, 0)]
        diff = {(0, 1): bimod.startdot(n, (), 0, i)}
    else:
        summands = [Summand(0, (i,), 0, 0), Summand(1, (), 1, 1)]
        diff = {(0, 1): bimod.enddot(n, (i,), 0)}
    return Pseudocomplex(ar, summands, diff, validate=False)


def rouquier_tensor_dotted(n, letters):
    """The product of elementary Rouquier complexes using the dotted
    representatives, whose dot signs follow the strand-counting rule.

    The alternate sign convention is used exactly when the left factor is an
    odd BS complex, i.e. after an odd number of elementary factors.
    """
    out = None
    count = 0
    for tok in letters:
        i, inverse = (tok, False) if isinstance(tok, int) else (tok[0], tok[1] < 0)
        factor = rouquier_complex(n, i, inverse)
        if out is None:
            out = factor
        else:
            convention = "dotted" if count % 2 == 1 else "standard"
            out = homalg.tensor(out, factor, convention, validate=False)
        count += 1
    return out


def build_H_homotopy(n, F=None):
    """The homotopy H: F -> F(2)[-1] for left multiplication by x_1.

    H is the downward dot removing the index 1 on summands containing it,
    and minus the sum of upward dots avoiding 1 on the ultimate cube (each
    subset of S \\ {1} in its maximal homological degree).
    """
    F = F if F is not None else build_F(n, "bimodule")
    entries = {}
    for s in F.summands:
        X = summand_subset(s.label)
        if 1 in X:
            tgt = _find_summand(F, X - {1}, s.degree - 1)
            entries[(s.sid, tgt.sid)] = signed_dot(n, X, X - {1})
        elif s.degree == n - 1 - len(X):
            for i in range(n):
                if i == 1 or i in X:
                    continue
                Y = X | {i}
                if len(Y) >= n:
                    continue
                tgt = _find_summand(F, Y, s.degree - 1)
                mor = signed_dot(n, X, Y)
                key = (s.sid, tgt.sid)
                entries[key] = -mor if key not in entries else entries[key] - mor
    return homalg.Homotopy(F, F, entries, grading_shift=2)


def verify_x1_commutation(n):
    """dH + Hd = x_1 . (left) - x_2 . (right) on every summand, mod delta."""
    F = build_F(n, "bimodule")
    H = build_H_homotopy(n, F)
    null = H.nulhomotopic_map()
    x1 = RingElement.x(n, 1)
    x2 = RingElement.x(n, 2)
    for s in F.summands:
        word = s.label
        expected = bimod.left_mult(n, word, x1) - bimod.right_mult(n, word, x2)
        got = null.entry(s.sid, s.sid)
        if not bimod.subs_delta_zero(got - expected).is_zero():
            raise AssertionError(f"diagonal fails on {word}")
    for (a, b), m in null.entries.items():
        if a != b and not bimod.subs_delta_zero(m).is_zero():
            raise AssertionError(
                f"off-diagonal residue {F.by_sid[a].label} -> {F.by_sid[b].label}"
            )
    return True
