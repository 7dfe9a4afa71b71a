import itertools

import pytest

from affhecke import bimod, homalg
from affhecke.bimod import eps_sign
from affhecke.complexes import (
    build_F,
    build_Fstar,
    build_I,
    build_M,
    build_N,
    build_P,
    build_Q,
    check_d2_signs,
    crossover_sign,
    f_symbol,
    inner_inclusion,
    inner_projection,
    monodromy_map,
    n_sets,
    n_symbol,
    summand_subset,
    tau_equivariance_signs,
    tensorBI_object_GE,
    underlying_vector_space,
    verify_N_equals_M,
    verify_gamma_nilpotent,
    verify_wakimoto,
    verify_x1_commutation,
    wakimoto_assignment,
)
from affhecke.hecke import HeckeElement, b_simple, kl_basis
from affhecke.rings import LaurentPoly
from affhecke.suites import proper_subsets
from affhecke.weyl import ExtendedWeylElement, h_of, longest_element


def fr(*xs):
    return frozenset(xs)


def test_build_P():
    p = build_P(2)
    assert p[0] == [fr(0), fr(1)]
    assert p[1] == [fr()] and p[-1] == [fr()]
    p3 = build_P(3)
    assert p3[0] == [fr(), fr(0, 1), fr(0, 2), fr(1, 2)]
    for n in (2, 3, 4, 5):
        pn = build_P(n)
        assert pn[n - 1] == [fr()] and pn[1 - n] == [fr()]
        assert all(k in pn for k in range(1 - n, n))
        for k in pn:
            assert pn[k] == pn[-k]
    with pytest.raises(ValueError):
        build_P(1)


def test_build_Q():
    q = build_Q(3)
    p = build_P(3)
    assert q[0] == p[1]
    assert q[1] == p[2]
    assert q[-1] == p[-2]


def test_summand_counts():
    assert len(build_F(2).summands) == 4
    assert len(build_F(3).summands) == 12
    assert len(build_F(4).summands) == 32


def test_golden_figure_n2():
    f = build_F(2, "bimodule")
    table = {(summand_subset(s.label), s.degree): s for s in f.summands}
    assert set(table) == {(fr(), -1), (fr(0), 0), (fr(1), 0), (fr(), 1)}
    for s in f.summands:
        assert s.shift == s.degree
    for (a, b), mor in f.diff.items():
        sa, sb = f.by_sid[a], f.by_sid[b]
        small, big = sorted(
            (summand_subset(sa.label), summand_subset(sb.label)), key=len
        )
        assert eps_sign(2, small, big) == 1
        (i,) = big
        if sa.degree == -1:
            assert mor == bimod.startdot(2, (), 0, i)
        else:
            assert mor == bimod.enddot(2, (i,), 0)


def test_golden_figure_n3():
    # the twelve differential signs of the displayed n=3 complex
    expected = {
        (fr(2), fr(1, 2)): -1,
        (fr(1), fr(1, 2)): 1,
        (fr(1), fr(0, 1)): -1,
        (fr(0), fr(0, 1)): 1,
        (fr(0), fr(0, 2)): -1,
        (fr(2), fr(0, 2)): 1,
    }
    for (small, big), sign in expected.items():
        assert eps_sign(3, small, big) == sign, (sorted(small), sorted(big))
    for i in range(3):
        assert eps_sign(3, fr(), fr(i)) == 1
    f = build_F(3)
    assert all(s.shift == s.degree for s in f.summands)
    degrees = sorted(s.degree for s in f.summands)
    assert degrees == [-2, -1, -1, -1, 0, 0, 0, 0, 1, 1, 1, 2]


def test_golden_figure_n4():
    # the crossing-sign conventions from the n=4 discussion
    assert eps_sign(4, fr(1), fr(1, 3)) == 1       # startdot_3 (x) id_1
    assert eps_sign(4, fr(3), fr(1, 3)) == -1      # -(id_3 (x) startdot_1)
    assert eps_sign(4, fr(1, 3), fr(1, 2, 3)) == -1
    assert eps_sign(4, fr(1, 3), fr(0, 1, 3)) == 1  # via the signed crossing
    # words: 2 before 1, 1 before 0, 0 before 3, 3 before 2 in each label
    f = build_F(4, "bimodule")
    reverse_cyclic = {(2, 1), (1, 0), (0, 3), (3, 2)}
    for s in f.summands:
        word = tuple(s.label)
        for a, b in zip(word, word[1:]):
            if (a - b) % 4 == 1:
                assert (a, b) in reverse_cyclic
    mor = f.diff[
        next(
            (a, b)
            for (a, b) in f.diff
            if summand_subset(f.by_sid[a].label) == fr(1, 3)
            and summand_subset(f.by_sid[b].label) == fr(0, 1, 3)
            and f.by_sid[b].degree == f.by_sid[a].degree + 1
        )
    ]
    direct = bimod.signed_dot(4, fr(1, 3), fr(0, 1, 3))
    assert mor == direct
    # the displayed factorization: (-1) x 0-dot after the (-1)-signed crossing
    composite = (-bimod.startdot(4, (1, 3), 1, 0)).compose(
        bimod.theta(4, (3, 1), (1, 3))
    )
    assert (mor - composite).is_zero()


@pytest.mark.parametrize("n", (2, 3, 4))
def test_d2_is_mu_delta_bimodule(n):
    f = build_F(n, "bimodule")
    mu = f.monodromy()
    expected = monodromy_map(n, f)
    assert set(mu.entries) == set(expected.entries)
    for key in mu.entries:
        assert (mu.entries[key] - expected.entries[key]).is_zero()
    for value in f.d_squared().values():
        assert bimod.subs_delta_zero(value).is_zero()


@pytest.mark.parametrize("n", (2, 3, 4, 5, 6))
def test_d2_sign_level(n):
    assert check_d2_signs(n)


@pytest.mark.parametrize("n", (2, 3, 4, 5, 6))
def test_wakimoto(n):
    assert verify_wakimoto(n)
    assign = wakimoto_assignment(n)
    sizes = {}
    for (_X, _k), i in assign.items():
        sizes[i] = sizes.get(i, 0) + 1
    assert sizes == {i: 2 ** (n - 1) for i in range(1, n + 1)}


def test_wakimoto_n2_cubes():
    assign = wakimoto_assignment(2)
    assert assign[(fr(1), 0)] == 1 and assign[(fr(), 1)] == 1
    assert assign[(fr(), -1)] == 2 and assign[(fr(0), 0)] == 2


def test_inner_complex_and_monodromy():
    for n in (2, 3):
        f = build_F(n, "bimodule")
        i = build_I(n, "bimodule")
        incl, _ = inner_inclusion(n, f, i)
        proj, _ = inner_projection(n, f, i)
        assert incl.is_pseudo_chain_map()
        assert proj.is_pseudo_chain_map()
        mu = monodromy_map(n, f)
        comp = incl.compose(proj)
        assert set(comp.entries) == set(mu.entries)
        for key in comp.entries:
            assert (comp.entries[key] - mu.entries[key]).is_zero()
        assert mu.is_chain_map()
    # mu^2 = 0 exactly when n = 2
    f2 = build_F(2, "bimodule")
    mu2 = monodromy_map(2, f2)
    assert mu2.compose(mu2).is_zero()
    f3 = build_F(3, "bimodule")
    mu3 = monodromy_map(3, f3)
    assert not mu3.compose(mu3).is_zero()


def test_i_summand_range():
    for n in (2, 3, 4):
        i = build_I(n)
        degrees = {s.degree for s in i.summands}
        assert min(degrees) == -(n - 2) and max(degrees) == n - 2


def test_f_symbol_n2():
    # [F] = -v^-1 + b_0 + b_1 - v
    sym = f_symbol(2)
    v = LaurentPoly.v(1)
    vi = LaurentPoly.v(-1)
    expected = (
        b_simple(2, 0)
        + b_simple(2, 1)
        - HeckeElement.unit(2).scale(v)
        - HeckeElement.unit(2).scale(vi)
    )
    assert sym == expected
    # empty complex symbol is zero; unlabeled summands are an error
    empty = homalg.Pseudocomplex(homalg.SignArithmetic(), [], {}, validate=False)
    from affhecke.hecke import symbol_of_complex

    assert symbol_of_complex(2, empty, lambda label: None).is_zero()
    one = homalg.one_term_complex(homalg.SignArithmetic(), frozenset())
    with pytest.raises(ValueError):
        symbol_of_complex(2, one, lambda label: None)


def test_build_N_examples():
    # n=2, I={1}: single summand b_{s_1 s_0} in degree 0
    N = build_N(2, {1})
    assert len(N.summands) == 1
    s = N.summands[0]
    assert s.degree == 0 and summand_subset(s.label) == fr(0)
    assert n_symbol(2, {1}) == kl_basis(
        longest_element(2, {1}) * h_of(2, {0})
    )
    # n=4, I={0}: the worked example (12 summands)
    N = build_N(4, {0})
    assert len(N.summands) == 12
    # n=4, I={0,1}: 4 summands
    N = build_N(4, {0, 1})
    assert len(N.summands) == 4
    assert sorted(s.degree for s in N.summands) == [-1, 0, 0, 1]
    for n in (2, 3, 4):
        for I in proper_subsets(n):
            NI = build_N(n, I)
            assert NI.is_multiplicity_free_perverse()
            assert NI.indecomposability_certificate()
            J = frozenset((i + 1) % n for i in I)
            M = build_M(n, J)
            assert len(M.summands) == len(NI.summands)


@pytest.mark.parametrize("n", (2, 3, 4))
def test_tensorBI(n):
    fsym = f_symbol(n)
    for I in proper_subsets(n):
        cert = tensorBI_object_GE(n, I)
        assert cert["verdict"] == "pass"
        lhs = kl_basis(longest_element(n, I)) * fsym
        assert lhs == n_symbol(n, I)


def test_tensorBI_examples():
    cert = tensorBI_object_GE(2, fr(1))
    assert cert["survivors"] == [([0], 0)]
    cert = tensorBI_object_GE(3, fr(0))
    assert sorted(k for _, k in cert["survivors"]) == [-1, 0, 0, 1]
    cert = tensorBI_object_GE(4, fr(0, 1))
    assert len(cert["survivors"]) == 4


@pytest.mark.parametrize("n", (2, 3, 4))
def test_crossover(n):
    for I in proper_subsets(n):
        assert verify_N_equals_M(n, I)


def test_crossover_sign_values():
    # all components singletons: +1
    assert crossover_sign(3, fr(), fr(0, 2)) == 1
    # n=4, I={0}, X={0,1}: the component {0,1} is inside X
    assert crossover_sign(4, fr(0), fr(0, 1)) == -1
    with pytest.raises(ValueError):
        crossover_sign(4, fr(0), fr(0, 2))


def test_underlying_vector_space():
    assert underlying_vector_space(build_F(3)) == {-2: 1, 0: 1, 2: 1}
    f2 = build_F(2)
    t = homalg.tensor(f2, f2, validate=False)
    dims = {}
    for s in t.summands:
        a, b = s.label
        if not a and not b:
            dims[s.degree] = dims.get(s.degree, 0) + 1
    assert dims == {-2: 1, 0: 2, 2: 1}
    empty = homalg.Pseudocomplex(homalg.SignArithmetic(), [], {}, validate=False)
    assert underlying_vector_space(empty) == {}


@pytest.mark.parametrize("n", (2, 3, 4, 5, 6))
def test_gamma_nilpotent(n):
    assert verify_gamma_nilpotent(n)


@pytest.mark.parametrize("n", (2, 3, 4, 5, 6))
def test_tau_equivariance(n):
    signs = tau_equivariance_signs(n)
    assert signs
    # the assignment is a genuine isomorphism: every edge consistent was
    # already enforced; additionally the orbit structure covers all summands
    p = build_P(n)
    assert len(signs) == sum(len(v) for v in p.values())


def test_fstar():
    fs = build_Fstar(3)
    deg0 = sorted(sorted(summand_subset(s.label)) for s in fs.summands if s.degree == 0)
    assert deg0 == [[], [0, 1], [0, 2], [1, 2]]
    # sigma is an involution on the bimodule complex
    f = build_F(3, "bimodule")
    fstar = build_Fstar(3, "bimodule")
    back = {k: bimod.sigma_morphism(m) for k, m in fstar.diff.items()}
    assert set(back) == set(f.diff)
    for key in back:
        assert (back[key] - f.diff[key]).is_zero()
    # F* is itself a pseudocomplex with monodromy mu' = sigma(mu)
    mu = f.monodromy()
    mu_star = fstar.monodromy()
    expected = {k: bimod.sigma_morphism(m) for k, m in mu.entries.items()}
    assert set(mu_star.entries) == set(expected)
    for key in expected:
        assert (mu_star.entries[key] - expected[key]).is_zero()
    # n=2: F* is isomorphic to F via an explicit diagonal sign search
    f2 = build_F(2, "bimodule")
    fs2 = build_Fstar(2, "bimodule")
    by_key_f = {
        (summand_subset(s.label), s.degree): s.sid for s in f2.summands
    }
    by_key_fs = {
        (summand_subset(s.label), s.degree): s.sid for s in fs2.summands
    }
    for signs in itertools.product((1, -1), repeat=4):
        assign = dict(zip(sorted(by_key_f), signs))
        ok = True
        for (a, b), mor in f2.diff.items():
            ka = (summand_subset(f2.by_sid[a].label), f2.by_sid[a].degree)
            kb = (summand_subset(f2.by_sid[b].label), f2.by_sid[b].degree)
            target = fs2.diff.get((by_key_fs[ka], by_key_fs[kb]))
            if target is None:
                ok = False
                break
            expected = mor.scale(assign[ka] * assign[kb])
            if not (target - expected).is_zero():
                ok = False
                break
        if ok:
            break
    assert ok


def test_dual_of_F_is_F():
    for n in (2, 3):
        f = build_F(n, "bimodule")
        d = f.dualize()
        for (a, b), m in d.diff.items():
            X = summand_subset(d.by_sid[a].label)
            Y = summand_subset(d.by_sid[b].label)
            assert (m - bimod.signed_dot(n, X, Y)).is_zero()
        dd = f.dualize().dualize()
        assert set(dd.diff) == set(f.diff)
        for key in f.diff:
            assert (dd.diff[key] - f.diff[key]).is_zero()


def test_d21_d22_lemma_levels():
    # off-diagonal cancellation at sign level happens inside check_d2_signs;
    # here the matrix-level diagonal: d^2 entries are delta times identity
    for n in (2, 3, 4):
        f = build_F(n, "bimodule")
        from affhecke.rings import RingElement

        delta = RingElement.delta(n)
        for (a, c), entry in f.d_squared().items():
            sa, sc = f.by_sid[a], f.by_sid[c]
            assert summand_subset(sa.label) == summand_subset(sc.label)
            ident = bimod.Morphism.identity(n, tuple(sa.label)).scale(delta)
            assert (entry - ident).is_zero()


@pytest.mark.parametrize("n", (2, 3))
def test_x1_commutation(n):
    assert verify_x1_commutation(n)


def test_rouquier_strand_counting_rule():
    # the dotted product F_s F_t F_s for distant-enough finite letters: every
    # dot carries the sign (-1)^(number of strands to its left), and the
    # result is an honest complex
    for n, letters in ((4, [1, 2, 1]), (4, [3, 1]), (3, [1, 2])):
        p = __import__("affhecke.complexes", fromlist=["rouquier_tensor_dotted"]).rouquier_tensor_dotted(n, letters)
        assert not p.d_squared()
        for (a, b), mor in p.diff.items():
            wa, wb = tuple(p.by_sid[a].label), tuple(p.by_sid[b].label)
            matched = False
            for slot in range(len(wa)):
                if wa[:slot] + wa[slot + 1:] == wb:
                    dot = bimod.enddot(n, wa, slot).scale((-1) ** slot)
                    if (mor - dot).is_zero():
                        matched = True
                        break
            assert matched, (wa, wb)


def test_rouquier_inverse_and_wakimoto_cube():
    from affhecke.complexes import rouquier_complex, rouquier_tensor_dotted

    f = rouquier_complex(3, 1, inverse=True)
    assert [(tuple(s.label), s.shift, s.degree) for s in f.summands] == [
        ((), -1, -1), ((1,), 0, 0)
    ]
    # the y_1 cube at n=3 (without the omega) is F_2 F_1: its summands and
    # signed-dot differentials agree with the top Wakimoto cube of F
    cube = rouquier_tensor_dotted(3, [2, 1])
    f3 = build_F(3, "bimodule")
    assign = wakimoto_assignment(3)
    for s in cube.summands:
        X = frozenset(s.label)
        assert assign[(X, s.degree)] == 1
    for (a, b), mor in cube.diff.items():
        X = frozenset(cube.by_sid[a].label)
        Y = frozenset(cube.by_sid[b].label)
        assert (mor - bimod.signed_dot(3, X, Y)).is_zero()


def test_independent_pair_zigzag_formula():
    # two independent isomorphisms with theta != 0 but tau = 0: the survivor
    # differential keeps c, subtracts both length-one zigzags and adds the
    # length-two zigzag through theta
    from affhecke.homalg import MatrixArithmetic, Pseudocomplex, Summand
    from affhecke.rings import RingElement

    ar = MatrixArithmetic(0)

    def c(x):
        return ((RingElement.constant(0, x),),)

    summands = [
        Summand(0, 1, 0, 0),  # B
        Summand(1, 1, 0, 0),  # F_1
        Summand(2, 1, 0, 0),  # F_2
        Summand(3, 1, 0, 1),  # C
        Summand(4, 1, 0, 1),  # F'_1
        Summand(5, 1, 0, 1),  # F'_2
    ]
    diff = {
        (0, 3): c(7),   # c
        (0, 4): c(2),   # d_1
        (0, 5): c(3),   # d_2
        (1, 3): c(5),   # e_1
        (2, 3): c(11),  # e_2
        (1, 4): c(1),   # phi
        (2, 5): c(1),   # psi
        (2, 4): c(13),  # theta: F_2 -> F'_1
        # tau: F_1 -> F'_2 is zero
    }
    p = Pseudocomplex(ar, summands, diff, validate=True)
    q, _trace = p.simultaneous_eliminate([(1, 4), (2, 5)])
    # c - e1 phi^-1 d1 - e2 psi^-1 d2 + e1 phi^-1 theta psi^-1 d2
    expected = 7 - 5 * 2 - 11 * 3 + 5 * 13 * 3
    assert q.entry(0, 3)[0][0] == RingElement.constant(0, expected)


@pytest.mark.parametrize("n", (2, 3, 4))
def test_wakimoto_cubes_are_rouquier_complexes(n):
    # the Rouquier complex of the y_i tail (omega stripped) is a cube whose
    # summands are the cube-i summands of F and whose differentials are the
    # signed dots, transported along the canonical signed rex moves
    from affhecke.complexes import rouquier_tensor_dotted
    from affhecke.bimod import preferred_word, theta

    f = build_F(n, "bimodule")
    assign = wakimoto_assignment(n)
    for i in range(1, n + 1):
        letters = [(k % n, -1) for k in range(i - 2, -1, -1)]
        letters += [(k, 1) for k in range(n - 1, i - 1, -1)]
        cube = rouquier_tensor_dotted(n, letters)
        members = {}
        for s in cube.summands:
            X = frozenset(s.label)
            assert assign[(X, s.degree)] == i, (i, sorted(X), s.degree)
            assert s.shift == s.degree
            members[s.sid] = tuple(s.label)
        assert len(members) == 2 ** (n - 1)
        for (a, b), mor in cube.diff.items():
            wa, wb = members[a], members[b]
            X, Y = frozenset(wa), frozenset(wb)
            transported = theta(n, preferred_word(n, Y), wb).compose(
                bimod.signed_dot(n, X, Y)
            ).compose(theta(n, wa, preferred_word(n, X)))
            assert (mor - transported).is_zero(), (wa, wb)


def test_BsF_minimal_complex_n2():
    # B_0 F = B_0 B_1 in degree zero, matching F B_1
    from affhecke.bimod import Morphism, enddot_core, merge_core, split_core, startdot_core
    from affhecke.bimod import tensor as btensor
    from affhecke.homalg import BimoduleArithmetic, one_term_complex

    n, s = 2, 0
    ar = BimoduleArithmetic(n)
    f = build_F(n, "bimodule")
    bs = one_term_complex(ar, (s,))
    bsf = homalg.tensor(bs, f)
    target = next(x for x in bsf.summands if tuple(x.label) == (s, s))
    sd, ed = startdot_core(n, s), enddot_core(n, s)
    m, sp = merge_core(n, s), split_core(n, s)
    id1 = Morphism.identity(n, (s,))
    e_plus_p = btensor(id1, ed)
    iota_minus = (Morphism.identity(n, (s, s)) - sp.compose(e_plus_p)).compose(
        btensor(id1, sd)
    )
    split_complex = bsf.split_summand(
        target.sid, [((s,), -1, iota_minus, m), ((s,), +1, sp, e_plus_p)]
    )
    minimal = split_complex.minimal_complex()
    assert [(tuple(x.label), x.shift, x.degree) for x in minimal.summands] == [
        ((0, 1), 0, 0)
    ]


def test_n_sets_match_P():
    for n in (2, 3, 4):
        p = build_P(n)
        for I in proper_subsets(n):
            J = frozenset((i + 1) % n for i in I)
            for k, sets in n_sets(n, I).items():
                assert sets == [X for X in p[k] if J <= X]
