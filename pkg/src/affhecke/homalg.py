"""Generic pseudocomplexes over a pluggable morphism arithmetic.

A pseudocomplex is a graded collection of labeled summands with a
differential satisfying d^2 = mu . delta for the designated central
parameter delta (a nonzero divisor).  The engine provides d^2 and monodromy
extraction, chain maps with their nu-defect, single and simultaneous
Gaussian elimination with explicit homotopy-equivalence witnesses, tensor
products under the standard and the strand-counting sign conventions,
minimal complexes, perversity certificates, and duality.

Three arithmetics ship: matrices over Q[d] (property tests), sign
bookkeeping (object-level checks, morphisms are integers +-1 composed
multiplicatively), and exact Bott-Samelson bimodule morphisms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import bimod, polymat
from .rings import RingElement, divide_by_delta, parse_ring_element


@dataclass(frozen=True)
class Summand:
    sid: int
    label: object
    shift: int
    degree: int


class MatrixArithmetic:
    """Morphisms are matrices over Q[x_1..x_n, d]; default n = 0 gives Q[d].

    Summand labels are ranks (free modules), ungraded: degree checks are
    skipped.
    """

    name = "matrix"

    def __init__(self, n=0):
        self.n = n

    def rank(self, label):
        return int(label)

    def zero(self, src_label, tgt_label):
        return polymat.mat_zero(self.n, self.rank(tgt_label), self.rank(src_label))

    def identity(self, label):
        return polymat.mat_identity(self.n, self.rank(label))

    def compose(self, f, g):
        return polymat.mat_mul(f, g)

    def add(self, f, g):
        return polymat.mat_add(f, g)

    def negate(self, f):
        return polymat.mat_neg(f)

    def is_zero(self, f):
        return polymat.mat_is_zero(f)

    def equal(self, f, g):
        return polymat.mat_eq(f, g)

    def scale_delta(self, f):
        d = RingElement.delta(self.n)
        return polymat.mat_scale(f, d)

    def divide_delta(self, f):
        return tuple(tuple(divide_by_delta(x) for x in row) for row in f)

    def is_isomorphism(self, f, src, tgt):
        rows, cols = polymat.mat_shape(f)
        if rows != cols:
            return False
        det = polymat.det_bareiss(f)
        return det.is_unit()

    def invert(self, f):
        return polymat.mat_invert(f)

    def dual(self, f):
        return polymat.mat_transpose(f)

    def dual_label(self, label):
        return label

    def degree_of(self, f, src, tgt):
        return None

    def tensor(self, f, g):
        rows_f, cols_f = polymat.mat_shape(f)
        rows_g, cols_g = polymat.mat_shape(g)
        out = []
        for rf in range(rows_f):
            for rg in range(rows_g):
                out.append(
                    tuple(
                        f[rf][cf] * g[rg][cg]
                        for cf in range(cols_f)
                        for cg in range(cols_g)
                    )
                )
        return tuple(out)

    def tensor_label(self, a, b):
        return self.rank(a) * self.rank(b)

    def encode(self, f):
        return [[str(x) for x in row] for row in f]

    def decode(self, data):
        return tuple(
            tuple(parse_ring_element(self.n, x) for x in row) for row in data
        )

    def encode_label(self, label):
        return int(label)

    def decode_label(self, data):
        return int(data)


class SignArithmetic:
    """Opaque sign bookkeeping: a morphism is a nonzero integer.

    Composition multiplies, addition adds (paths with the same endpoints are
    the same diagram up to sign, which is the regime where this backend is
    used); only the markers +-1 count as isomorphisms.
    """

    name = "sign"

    def zero(self, src_label, tgt_label):
        return 0

    def identity(self, label):
        return 1

    def compose(self, f, g):
        return f * g

    def add(self, f, g):
        return f + g

    def negate(self, f):
        return -f

    def is_zero(self, f):
        return f == 0

    def equal(self, f, g):
        return f == g

    def is_isomorphism(self, f, src, tgt):
        return f in (1, -1)

    def invert(self, f):
        return f

    def dual(self, f):
        return f

    def dual_label(self, label):
        return label

    def degree_of(self, f, src, tgt):
        return None

    def tensor(self, f, g):
        return f * g

    def tensor_label(self, a, b):
        return (a, b)

    def encode(self, f):
        return int(f)

    def decode(self, data):
        return int(data)

    def encode_label(self, label):
        if isinstance(label, frozenset):
            return sorted(label)
        return label

    def decode_label(self, data):
        if isinstance(data, list):
            return frozenset(data)
        return data


class BimoduleArithmetic:
    """Exact Bott-Samelson bimodule morphisms; labels are BS words."""

    name = "bimodule"

    def __init__(self, n):
        self.n = n

    def word(self, label):
        return tuple(label)

    def zero(self, src_label, tgt_label):
        return bimod.Morphism.zero(self.n, self.word(src_label), self.word(tgt_label))

    def identity(self, label):
        return bimod.Morphism.identity(self.n, self.word(label))

    def compose(self, f, g):
        return f.compose(g)

    def add(self, f, g):
        return f + g

    def negate(self, f):
        return -f

    def is_zero(self, f):
        return f.is_zero()

    def equal(self, f, g):
        return f == g

    def scale_delta(self, f):
        return f.scale(RingElement.delta(self.n))

    def divide_delta(self, f):
        matrix = tuple(
            tuple(divide_by_delta(x) for x in row) for row in f.matrix
        )
        deg = None if f.degree is None else f.degree - 2
        return bimod.Morphism(f.n, f.src, f.tgt, matrix, deg, check=False)

    def is_isomorphism(self, f, src, tgt):
        if len(f.src) != len(f.tgt):
            return False
        det = polymat.det_bareiss(f.matrix)
        return det.is_unit()

    def invert(self, f):
        return bimod.Morphism(
            f.n, f.tgt, f.src, polymat.mat_invert(f.matrix),
            None if f.degree is None else -f.degree, check=False,
        )

    def dual(self, f):
        return bimod.adjoint(f)

    def dual_label(self, label):
        return label

    def degree_of(self, f, src, tgt):
        return f.degree

    def tensor(self, f, g):
        return bimod.tensor(f, g)

    def tensor_label(self, a, b):
        return tuple(a) + tuple(b)

    def encode(self, f):
        return {
            "src": list(f.src),
            "tgt": list(f.tgt),
            "matrix": [[str(x) for x in row] for row in f.matrix],
        }

    def decode(self, data):
        matrix = tuple(
            tuple(parse_ring_element(self.n, x) for x in row)
            for row in data["matrix"]
        )
        return bimod.Morphism(
            self.n, tuple(data["src"]), tuple(data["tgt"]), matrix
        )

    def encode_label(self, label):
        return list(label)

    def decode_label(self, data):
        return tuple(data)


class Pseudocomplex:
    """Summands plus a sparse differential; d^2 must be a multiple of delta."""

    def __init__(self, arithmetic, summands, diff, validate=True):
        self.arithmetic = arithmetic
        self.summands = sorted(summands, key=lambda s: (s.degree, s.sid))
        self.by_sid = {s.sid: s for s in self.summands}
        if len(self.by_sid) != len(self.summands):
            raise ValueError("duplicate summand ids")
        self.diff = {}
        for (a, b), mor in diff.items():
            if arithmetic.is_zero(mor):
                continue
            sa, sb = self.by_sid[a], self.by_sid[b]
            if sb.degree != sa.degree + 1:
                raise ValueError(
                    f"differential entry {a}->{b} does not raise degree by 1"
                )
            deg = arithmetic.degree_of(mor, sa.label, sb.label)
            if deg is not None and deg != sb.shift - sa.shift:
                raise ValueError(
                    f"entry {a}->{b} has degree {deg}, expected "
                    f"{sb.shift - sa.shift} from the grading shifts"
                )
            self.diff[(a, b)] = mor
        if validate:
            self.monodromy()

    def degrees(self):
        return sorted({s.degree for s in self.summands})

    def in_degree(self, k):
        return [s for s in self.summands if s.degree == k]

    def entry(self, a, b):
        got = self.diff.get((a, b))
        if got is None:
            return self.arithmetic.zero(self.by_sid[a].label, self.by_sid[b].label)
        return got

    def d_squared(self):
        """Sparse matrix of d^2 as a dict (a, c) -> morphism."""
        ar = self.arithmetic
        out = {}
        by_src = {}
        for (a, b), mor in self.diff.items():
            by_src.setdefault(a, []).append((b, mor))
        for (a, b), first in self.diff.items():
            for c, second in by_src.get(b, []):
                term = ar.compose(second, first)
                if ar.is_zero(term):
                    continue
                if (a, c) in out:
                    out[(a, c)] = ar.add(out[(a, c)], term)
                else:
                    out[(a, c)] = term
        return {k: v for k, v in out.items() if not ar.is_zero(v)}

    def monodromy(self):
        """The unique mu with d^2 = mu . delta, as a ChainMap P -> P(-2)[2].

        Raises on a non-divisible entry, naming it.
        """
        ar = self.arithmetic
        entries = {}
        for (a, c), mor in self.d_squared().items():
            try:
                entries[(a, c)] = ar.divide_delta(mor)
            except (ArithmeticError, AttributeError) as exc:
                raise ValueError(
                    f"d^2 entry {a}->{c} is not divisible by delta: {exc}"
                ) from exc
        return ChainMap(self, self, entries, degree_shift=2, grading_shift=-2)

    def dualize(self):
        """Transpose all differentials, negate degrees and shifts; DD = id."""
        ar = self.arithmetic
        summands = [
            Summand(s.sid, ar.dual_label(s.label), -s.shift, -s.degree)
            for s in self.summands
        ]
        diff = {(b, a): ar.dual(m) for (a, b), m in self.diff.items()}
        return Pseudocomplex(ar, summands, diff, validate=False)

    def shift(self, grading=0, homological=0):
        """P(grading)[homological]: degrees drop by `homological`.

        An odd homological shift negates the differential.
        """
        summands = [
            Summand(s.sid, s.label, s.shift + grading, s.degree - homological)
            for s in self.summands
        ]
        diff = dict(self.diff)
        if homological % 2:
            diff = {k: self.arithmetic.negate(m) for k, m in diff.items()}
        return Pseudocomplex(self.arithmetic, summands, diff, validate=False)

    def is_perverse(self):
        return all(s.shift == s.degree for s in self.summands)

    def is_multiplicity_free_perverse(self):
        if not self.is_perverse():
            return False
        seen = set()
        for s in self.summands:
            key = (repr(s.label), s.degree)
            if key in seen:
                return False
            seen.add(key)
        return True

    def summand_graph_components(self):
        """Connected components of the summand graph (edges at nonzero d)."""
        parent = {s.sid: s.sid for s in self.summands}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.diff:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for s in self.summands:
            groups.setdefault(find(s.sid), []).append(s.sid)
        return sorted(sorted(g) for g in groups.values())

    def indecomposability_certificate(self):
        """True when the summand graph is connected (and nonempty)."""
        return len(self.summand_graph_components()) == 1

    def gaussian_eliminate(self, pair):
        """Eliminate an invertible differential entry F -> F'.

        Returns (Q, alpha, beta, q) with alpha: P -> Q and beta: Q -> P
        satisfying alpha beta = id and beta alpha - id = dq + qd, where q is
        the homotopy phi^{-1} supported on F' -> F.
        """
        ar = self.arithmetic
        f_id, fp_id = pair
        phi = self.diff.get((f_id, fp_id))
        sf, sfp = self.by_sid[f_id], self.by_sid[fp_id]
        if phi is None or not ar.is_isomorphism(phi, sf.label, sfp.label):
            raise ValueError(f"entry {f_id}->{fp_id} is not an isomorphism")
        phi_inv = ar.invert(phi)
        survivors = [s for s in self.summands if s.sid not in (f_id, fp_id)]
        new_diff = {}
        for (a, b), mor in self.diff.items():
            if f_id in (a, b) or fp_id in (a, b):
                continue
            new_diff[(a, b)] = mor
        for b in self.in_degree(sf.degree):
            if b.sid == f_id or (b.sid, fp_id) not in self.diff:
                continue
            d_entry = self.diff[(b.sid, fp_id)]
            for c in self.in_degree(sfp.degree):
                if c.sid == fp_id or (f_id, c.sid) not in self.diff:
                    continue
                e_entry = self.diff[(f_id, c.sid)]
                zig = ar.compose(e_entry, ar.compose(phi_inv, d_entry))
                key = (b.sid, c.sid)
                cur = new_diff.get(key)
                term = ar.negate(zig)
                new_diff[key] = term if cur is None else ar.add(cur, term)
        q = Pseudocomplex(ar, survivors, new_diff, validate=False)
        alpha_entries = {}
        beta_entries = {}
        for s in survivors:
            alpha_entries[(s.sid, s.sid)] = ar.identity(s.label)
            beta_entries[(s.sid, s.sid)] = ar.identity(s.label)
        for c in self.in_degree(sfp.degree):
            if c.sid != fp_id and (f_id, c.sid) in self.diff:
                alpha_entries[(fp_id, c.sid)] = ar.negate(
                    ar.compose(self.diff[(f_id, c.sid)], phi_inv)
                )
        for b in self.in_degree(sf.degree):
            if b.sid != f_id and (b.sid, fp_id) in self.diff:
                beta_entries[(b.sid, f_id)] = ar.negate(
                    ar.compose(phi_inv, self.diff[(b.sid, fp_id)])
                )
        alpha = ChainMap(self, q, alpha_entries)
        beta = ChainMap(q, self, beta_entries)
        homotopy = Homotopy(self, self, {(fp_id, f_id): phi_inv})
        return q, alpha, beta, homotopy

    def zigzags(self, pairs):
        """All nonrepeating zigzag morphisms for a same-degree family.

        Returns a dict mapping (source sid, target sid, tuple of pair
        indices) -> morphism, where source/target run over the non-eliminated
        summands as well as the F_j / F'_j themselves.
        """
        ar = self.arithmetic
        m = len(pairs)
        phis = []
        for f_id, fp_id in pairs:
            phi = self.diff.get((f_id, fp_id))
            if phi is None or not ar.is_isomorphism(
                phi, self.by_sid[f_id].label, self.by_sid[fp_id].label
            ):
                raise ValueError(f"entry {f_id}->{fp_id} is not an isomorphism")
            phis.append(ar.invert(phi))
        out = {}
        f_ids = [p[0] for p in pairs]
        fp_ids = [p[1] for p in pairs]
        deg = self.by_sid[f_ids[0]].degree
        sources = [s.sid for s in self.in_degree(deg) if s.sid not in f_ids]
        targets = [s.sid for s in self.in_degree(deg + 1) if s.sid not in fp_ids]
        for r in range(1, m + 1):
            for seq in itertools.permutations(range(m), r):
                core = phis[seq[0]]
                ok = True
                for t in range(1, r):
                    theta = self.diff.get((f_ids[seq[t - 1]], fp_ids[seq[t]]))
                    if theta is None:
                        ok = False
                        break
                    core = ar.compose(phis[seq[t]], ar.compose(theta, core))
                if not ok:
                    continue
                for src in sources + [f_ids[j] for j in range(m) if j not in seq]:
                    start = self.diff.get((src, fp_ids[seq[0]]))
                    if start is None:
                        continue
                    half = ar.compose(core, start)
                    for tgt in targets + [
                        fp_ids[j] for j in range(m) if j not in seq
                    ]:
                        end = self.diff.get((f_ids[seq[-1]], tgt))
                        if end is None:
                            continue
                        z = ar.compose(end, half)
                        if not ar.is_zero(z):
                            out[(src, tgt, seq)] = z
        return out

    def simultaneous_eliminate(self, pairs):
        """Simultaneous Gaussian elimination of an independent family.

        The family must pass the independence certificate: every nonrepeating
        zigzag F_j -> F'_j vanishes.  On failure the offending zigzag is
        reported.  The surviving differential picks up
        sum over r of (-1)^r (zigzags of length r).
        """
        ar = self.arithmetic
        if not pairs:
            return self, []
        by_deg = {}
        for pair in pairs:
            by_deg.setdefault(self.by_sid[pair[0]].degree, []).append(pair)
        current = self
        trace = []
        for deg in sorted(by_deg):
            group = by_deg[deg]
            zz = current.zigzags(group)
            f_ids = [p[0] for p in group]
            fp_ids = [p[1] for p in group]
            for (src, tgt, seq), z in zz.items():
                for j in range(len(group)):
                    if src == f_ids[j] and tgt == fp_ids[j]:
                        raise ValueError(
                            f"family is not independent: nonzero zigzag "
                            f"{src}->{tgt} through {seq}"
                        )
            removed = set(f_ids) | set(fp_ids)
            survivors = [s for s in current.summands if s.sid not in removed]
            new_diff = {
                (a, b): mor
                for (a, b), mor in current.diff.items()
                if a not in removed and b not in removed
            }
            for (src, tgt, seq), z in zz.items():
                if src in removed or tgt in removed:
                    continue
                term = z if len(seq) % 2 == 0 else ar.negate(z)
                cur = new_diff.get((src, tgt))
                new_diff[(src, tgt)] = term if cur is None else ar.add(cur, term)
            new_diff = {k: v for k, v in new_diff.items() if not ar.is_zero(v)}
            current = Pseudocomplex(ar, survivors, new_diff, validate=False)
            trace.append((deg, list(group)))
        return current, trace

    def minimal_complex(self):
        """Iterated single Gaussian elimination, deterministic order."""
        current = self
        while True:
            candidate = None
            for (a, b), mor in sorted(current.diff.items()):
                sa, sb = current.by_sid[a], current.by_sid[b]
                if current.arithmetic.is_isomorphism(mor, sa.label, sb.label):
                    key = (sa.degree, a, b)
                    if candidate is None or key < candidate[0]:
                        candidate = (key, (a, b))
            if candidate is None:
                return current
            current = current.gaussian_eliminate(candidate[1])[0]

    def split_summand(self, sid, pieces):
        """Replace a summand by direct-sum pieces.

        pieces is a list of (label, shift_offset, iota, pi) with
        pi_a iota_b = delta_ab id and sum iota_a pi_a = id; the differential
        is conjugated by the injections and projections.
        """
        ar = self.arithmetic
        old = self.by_sid[sid]
        total = None
        for _, _, iota, pi in pieces:
            term = ar.compose(iota, pi)
            total = term if total is None else ar.add(total, term)
        if not ar.equal(total, ar.identity(old.label)):
            raise ValueError("splitting data does not sum to the identity")
        next_sid = max(self.by_sid) + 1
        new_summands = [s for s in self.summands if s.sid != sid]
        piece_ids = []
        for label, offset, iota, pi in pieces:
            new_summands.append(
                Summand(next_sid, label, old.shift + offset, old.degree)
            )
            piece_ids.append((next_sid, iota, pi))
            next_sid += 1
        new_diff = {}
        for (a, b), mor in self.diff.items():
            if a != sid and b != sid:
                new_diff[(a, b)] = mor
        for (a, b), mor in self.diff.items():
            if a == sid and b == sid:
                raise ValueError("self-loop differential")
            if a == sid:
                for pid, iota, pi in piece_ids:
                    entry = ar.compose(mor, iota)
                    if not ar.is_zero(entry):
                        new_diff[(pid, b)] = entry
            elif b == sid:
                for pid, iota, pi in piece_ids:
                    entry = ar.compose(pi, mor)
                    if not ar.is_zero(entry):
                        new_diff[(a, pid)] = entry
        return Pseudocomplex(ar, new_summands, new_diff, validate=False)

    def to_json(self, n=None):
        ar = self.arithmetic
        return {
            "n": n,
            "backend": ar.name,
            "summands": [
                {
                    "id": s.sid,
                    "label": ar.encode_label(s.label),
                    "shift": s.shift,
                    "degree": s.degree,
                }
                for s in self.summands
            ],
            "diff": [
                {"from": a, "to": b, "morphism": ar.encode(m)}
                for (a, b), m in sorted(self.diff.items())
            ],
        }

    @classmethod
    def from_json(cls, data, arithmetic=None):
        if arithmetic is None:
            backend = data.get("backend", "sign")
            n = data.get("n") or 0
            if backend == "sign":
                arithmetic = SignArithmetic()
            elif backend == "matrix":
                arithmetic = MatrixArithmetic(n)
            elif backend == "bimodule":
                arithmetic = BimoduleArithmetic(n)
            else:
                raise ValueError(f"unknown backend {backend!r}")
        summands = [
            Summand(
                s["id"], arithmetic.decode_label(s["label"]), s["shift"], s["degree"]
            )
            for s in data["summands"]
        ]
        diff = {
            (e["from"], e["to"]): arithmetic.decode(e["morphism"])
            for e in data["diff"]
        }
        return cls(arithmetic, summands, diff, validate=False)


class ChainMap:
    """A collection of per-degree entries (src sid, tgt sid) -> morphism.

    degree_shift k means entries go from degree d summands of src to degree
    d + k summands of tgt (as in maps P -> Q[ -k ]-style bookkeeping kept
    external); for plain chain maps it is 0.
    """

    def __init__(self, src, tgt, entries, degree_shift=0, grading_shift=0):
        self.src = src
        self.tgt = tgt
        self.degree_shift = degree_shift
        self.grading_shift = grading_shift
        ar = src.arithmetic
        self.entries = {
            k: m for k, m in entries.items() if not ar.is_zero(m)
        }

    def entry(self, a, b):
        got = self.entries.get((a, b))
        if got is None:
            return self.src.arithmetic.zero(
                self.src.by_sid[a].label, self.tgt.by_sid[b].label
            )
        return got

    def compose(self, other):
        """self after other."""
        ar = self.src.arithmetic
        out = {}
        for (a, b), first in other.entries.items():
            for (b2, c), second in self.entries.items():
                if b2 != b:
                    continue
                term = ar.compose(second, first)
                if ar.is_zero(term):
                    continue
                key = (a, c)
                out[key] = term if key not in out else ar.add(out[key], term)
        return ChainMap(
            other.src, self.tgt, out,
            self.degree_shift + other.degree_shift,
            self.grading_shift + other.grading_shift,
        )

    def add(self, other):
        ar = self.src.arithmetic
        out = dict(self.entries)
        for k, m in other.entries.items():
            out[k] = m if k not in out else ar.add(out[k], m)
        return ChainMap(self.src, self.tgt, out, self.degree_shift, self.grading_shift)

    def negate(self):
        ar = self.src.arithmetic
        return ChainMap(
            self.src, self.tgt,
            {k: ar.negate(m) for k, m in self.entries.items()},
            self.degree_shift, self.grading_shift,
        )

    def is_zero(self):
        return not self.entries

    def is_identity(self):
        ar = self.src.arithmetic
        if {s.sid for s in self.src.summands} != {s.sid for s in self.tgt.summands}:
            return False
        for s in self.src.summands:
            if not ar.equal(self.entry(s.sid, s.sid), ar.identity(s.label)):
                return False
        return all(a == b for (a, b) in self.entries)

    def defect(self):
        """d_tgt f - (-1)^degree_shift f d_src, as raw entries."""
        ar = self.src.arithmetic
        out = {}

        def bump(key, mor, negate=False):
            mor = ar.negate(mor) if negate else mor
            if key in out:
                out[key] = ar.add(out[key], mor)
            else:
                out[key] = mor

        for (a, b), f in self.entries.items():
            for (b2, c), d in self.tgt.diff.items():
                if b2 == b:
                    bump((a, c), ar.compose(d, f))
        sign = self.degree_shift % 2 == 1
        for (a, b), d in self.src.diff.items():
            for (b2, c), f in self.entries.items():
                if b2 == b:
                    bump((a, c), ar.compose(f, d), negate=not sign)
        return {k: v for k, v in out.items() if not ar.is_zero(v)}

    def nu(self):
        """The exact quotient of the defect by delta (pseudochain property)."""
        ar = self.src.arithmetic
        out = {}
        for key, mor in self.defect().items():
            out[key] = ar.divide_delta(mor)
        return ChainMap(
            self.src, self.tgt, out, self.degree_shift + 1, self.grading_shift - 2
        )

    def is_pseudo_chain_map(self):
        try:
            self.nu()
            return True
        except (ArithmeticError, ValueError):
            return False

    def is_chain_map(self):
        return not self.defect()


class Homotopy(ChainMap):
    """Entries drop homological degree by one."""

    def __init__(self, src, tgt, entries, grading_shift=0):
        super().__init__(src, tgt, entries, degree_shift=-1, grading_shift=grading_shift)

    def nulhomotopic_map(self):
        """dh + hd as a ChainMap src -> tgt."""
        ar = self.src.arithmetic
        out = {}

        def bump(key, mor):
            if key in out:
                out[key] = ar.add(out[key], mor)
            else:
                out[key] = mor

        for (a, b), h in self.entries.items():
            for (b2, c), d in self.tgt.diff.items():
                if b2 == b:
                    bump((a, c), ar.compose(d, h))
        for (a, b), d in self.src.diff.items():
            for (b2, c), h in self.entries.items():
                if b2 == b:
                    bump((a, c), ar.compose(h, d))
        return ChainMap(self.src, self.tgt, out, 0, self.grading_shift)


def identity_chain_map(p):
    ar = p.arithmetic
    return ChainMap(
        p, p, {(s.sid, s.sid): ar.identity(s.label) for s in p.summands}
    )


def tensor(p, q, convention="standard", validate=True):
    """Tensor product with d = d_P (x) 1 + (-1)^i 1 (x) d_Q.

    The dotted convention uses (-1)^(i+1) on the second term; the complexes
    are isomorphic via (-1)^(j+1) on P^i (x) Q^j.  Summand ids are pairs'
    positions in the product ordering; labels combine by the arithmetic.
    """
    if convention not in ("standard", "dotted"):
        raise ValueError(f"unknown convention {convention!r}")
    ar = p.arithmetic
    pairs = [(a, b) for a in p.summands for b in q.summands]
    index = {(a.sid, b.sid): i for i, (a, b) in enumerate(pairs)}
    summands = [
        Summand(i, ar.tensor_label(a.label, b.label), a.shift + b.shift,
                a.degree + b.degree)
        for i, (a, b) in enumerate(pairs)
    ]
    diff = {}
    for (a1, a2), mor in p.diff.items():
        for b in q.summands:
            key = (index[(a1, b.sid)], index[(a2, b.sid)])
            diff[key] = ar.tensor(mor, ar.identity(b.label))
    for (b1, b2), mor in q.diff.items():
        for a in p.summands:
            exponent = a.degree + (1 if convention == "dotted" else 0)
            term = ar.tensor(ar.identity(a.label), mor)
            if exponent % 2:
                term = ar.negate(term)
            diff[(index[(a.sid, b1)], index[(a.sid, b2)])] = term
    return Pseudocomplex(ar, summands, diff, validate=validate)


def one_term_complex(arithmetic, label, shift=0, degree=0):
    return Pseudocomplex(
        arithmetic, [Summand(0, label, shift, degree)], {}, validate=False
    )


def complex_to_json_str(p, n=None):
    return json.dumps(p.to_json(n), indent=1, sort_keys=True)
