"""The built-in associative and Lie operads with their Koszul-dual
cooperads and twisting morphisms.

The associative operad keeps its regular-representation basis of
permutation words; the Lie operad lives inside it through left-normed
bracket expansions, so every table below is computed, not transcribed.
The Maurer-Cartan check evaluates the convolution square on formal leaf
markers, a faithful model for both built-ins.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InputError, StructureError
from .linalg import Matrix
from .schur import (ASSOC, LIE, Alphabet, block_map_prefix_sign, split_one)
from .signs import perm_sign
from . import words as W


def _word_label(prefix, w):
    return prefix + "(" + "".join(str(x) for x in w) + ")"


class SModuleBasis:
    """Per-arity labels, a uniform degree per arity, and the right action
    of adjacent transpositions as matrices."""

    def __init__(self, components, degrees, transposition_fn):
        self.components = dict(components)   # arity -> tuple of labels
        self.degrees = dict(degrees)         # arity -> degree
        self._transposition_fn = transposition_fn

    def arities(self):
        return sorted(self.components)

    def labels(self, r: int):
        return self.components.get(r, ())

    def dim(self, r: int) -> int:
        return len(self.labels(r))

    def degree(self, r: int) -> int:
        return self.degrees[r]

    def transposition_matrix(self, r: int, i: int) -> Matrix:
        """Right action of the transposition (i, i+1), 0-based."""
        if not 0 <= i < r - 1:
            raise InputError(f"transposition index {i} out of range for arity {r}")
        return self._transposition_fn(r, i)

    def check_coxeter(self, arity_bound: int):
        """Exact Coxeter relations on the transposition matrices."""
        failures = []
        for r in self.arities():
            if r > arity_bound or r < 2:
                continue
            n = self.dim(r)
            ident = Matrix.identity(n)
            s = [self.transposition_matrix(r, i) for i in range(r - 1)]
            for i in range(r - 1):
                if (s[i] @ s[i]).data != ident.data:
                    failures.append((r, f"s{i}^2 != id"))
            for i in range(r - 1):
                for j in range(i + 2, r - 1):
                    if (s[i] @ s[j]).data != (s[j] @ s[i]).data:
                        failures.append((r, f"s{i} s{j} not commuting"))
            for i in range(r - 2):
                if (s[i] @ s[i + 1] @ s[i]).data != (s[i + 1] @ s[i] @ s[i + 1]).data:
                    failures.append((r, f"braid fails at s{i}"))
        return failures


class OperadDatum:
    """Basis data with partial-composition and symmetric-action tables."""

    def __init__(self, kind: str, arity_bound: int):
        if arity_bound < 2:
            raise InputError("arity bound must be at least 2")
        self.kind = kind
        self.arity_bound = arity_bound
        if kind == ASSOC:
            comps = {r: tuple(_word_label("m", w) for w in W.words(r))
                     for r in range(1, arity_bound + 1)}
        elif kind == LIE:
            comps = {r: tuple(_word_label("l", c) for c in W.leftnormed_words(r))
                     for r in range(1, arity_bound + 1)}
        else:
            raise InputError(f"unknown operad kind {kind!r}")
        self.basis = SModuleBasis(comps, {r: 0 for r in comps}, self._transposition)
        self.unit_label = comps[1][0]

    def elements(self, r: int):
        """Combinatorial keys of the arity-r basis (words)."""
        return W.words(r) if self.kind == ASSOC else W.leftnormed_words(r)

    def labels(self, r: int):
        return self.basis.labels(r)

    @lru_cache(maxsize=None)
    def _act_table(self, r: int, tau):
        out = []
        if self.kind == ASSOC:
            idx = W.word_index(r)
            for w in W.words(r):
                out.append({idx[W.word_act(w, tau)]: Fraction(1)})
        else:
            for c in W.leftnormed_words(r):
                moved = {W.word_act(w, tau): v for w, v in W.expand_leftnormed(c).items()}
                coeffs = W.lie_express_dict(r, moved)
                out.append({k: v for k, v in enumerate(coeffs) if v})
        return tuple(out)

    def act(self, r: int, k: int, tau) -> dict:
        """Right action of a permutation on the k-th basis element."""
        return dict(self._act_table(r, tuple(tau))[k])

    def _transposition(self, r: int, i: int) -> Matrix:
        tau = W.transposition(r, i)
        n = self.basis.dim(r)
        cols = []
        for k in range(n):
            col = [Fraction(0)] * n
            for k2, v in self.act(r, k, tau).items():
                col[k2] = v
            cols.append(col)
        return Matrix.from_cols(cols, rows=n)

    @lru_cache(maxsize=None)
    def compose(self, r1: int, k1: int, i: int, r2: int, k2: int):
        """Partial composition: slot i (0-based) of element k1 takes element k2.

        Returns a dict index -> Fraction at arity r1 + r2 - 1.
        """
        if not 0 <= i < r1:
            raise InputError(f"slot {i} out of range for arity {r1}")
        r = r1 + r2 - 1
        if r > self.arity_bound:
            raise InputError(f"composition exceeds arity bound {self.arity_bound}")
        if self.kind == ASSOC:
            w = W.word_subst(W.words(r1)[k1], i, W.words(r2)[k2])
            return {W.word_index(r)[w]: Fraction(1)}
        e1 = W.expand_leftnormed(W.leftnormed_words(r1)[k1])
        e2 = W.expand_leftnormed(W.leftnormed_words(r2)[k2])
        terms = {}
        for w1, v1 in e1.items():
            for w2, v2 in e2.items():
                w = W.word_subst(w1, i, w2)
                terms[w] = terms.get(w, 0) + v1 * v2
        coeffs = W.lie_express_dict(r, terms)
        return {k: v for k, v in enumerate(coeffs) if v}

    # -- validation -------------------------------------------------------

    def validate(self, arity_bound: int | None = None):
        """Unit, sequential/parallel associativity, and equivariance sweeps."""
        bound = min(arity_bound or self.arity_bound, self.arity_bound)
        failures = []
        failures += [("coxeter",) + f for f in self.basis.check_coxeter(bound)]
        unit = (1, 0)
        for r in range(1, bound + 1):
            for k in range(self.basis.dim(r)):
                for i in range(r):
                    if self.compose(r, k, i, *unit) != {k: Fraction(1)}:
                        failures.append(("unit", r, k, i))
                if self.compose(1, 0, 0, r, k) != {k: Fraction(1)}:
                    failures.append(("unit-left", r, k))
        for p, q, s in _arity_triples(bound):
            for k1 in range(self.basis.dim(p)):
                for k2 in range(self.basis.dim(q)):
                    for k3 in range(self.basis.dim(s)):
                        failures += self._assoc_checks(p, k1, q, k2, s, k3)
        for p in range(2, bound + 1):
            for q in range(2, bound + 1):
                if p + q - 1 > self.arity_bound:
                    continue
                for k1 in range(self.basis.dim(p)):
                    for k2 in range(self.basis.dim(q)):
                        failures += self._equivariance_checks(p, k1, q, k2)
        return failures

    def _compose_dicts(self, r1: int, d1: dict, i: int, r2: int, d2: dict) -> dict:
        out = {}
        for k1, v1 in d1.items():
            for k2, v2 in d2.items():
                for k, v in self.compose(r1, k1, i, r2, k2).items():
                    out[k] = out.get(k, Fraction(0)) + v1 * v2 * v
        return {k: v for k, v in out.items() if v}

    def _assoc_checks(self, p, k1, q, k2, s, k3):
        failures = []
        one1, one2, one3 = {k1: Fraction(1)}, {k2: Fraction(1)}, {k3: Fraction(1)}
        # nested: (x o_i y) o_{i+j} z == x o_i (y o_j z)
        for i in range(p):
            for j in range(q):
                lhs = self._compose_dicts(p + q - 1, self._compose_dicts(p, one1, i, q, one2),
                                          i + j, s, one3)
                rhs = self._compose_dicts(p, one1, i, q + s - 1,
                                          self._compose_dicts(q, one2, j, s, one3))
                if lhs != rhs:
                    failures.append(("nested-assoc", p, k1, i, q, k2, j, s, k3))
        # parallel: (x o_i y) o_{m+q-1} z == (x o_m z) o_i y for i < m
        for i in range(p):
            for m in range(i + 1, p):
                lhs = self._compose_dicts(p + q - 1, self._compose_dicts(p, one1, i, q, one2),
                                          m + q - 1, s, one3)
                rhs = self._compose_dicts(p + s - 1, self._compose_dicts(p, one1, m, s, one3),
                                          i, q, one2)
                if lhs != rhs:
                    failures.append(("parallel-assoc", p, k1, i, q, k2, m, s, k3))
        return failures

    def _equivariance_checks(self, p, k1, q, k2):
        failures = []
        one1, one2 = {k1: Fraction(1)}, {k2: Fraction(1)}
        for t in range(p - 1):
            sigma = W.transposition(p, t)
            for i in range(p):
                lhs = self._compose_1(p, self._act_dict(p, one1, sigma), i, q, one2)
                sp = _perm_block_subst(sigma, i, q)
                rhs = self._act_dict(p + q - 1,
                                     self._compose_1(p, one1, sigma[i], q, one2), sp)
                if lhs != rhs:
                    failures.append(("equivariance-outer", p, k1, t, i, q, k2))
        for t in range(q - 1):
            tau = W.transposition(q, t)
            for i in range(p):
                lhs = self._compose_1(p, one1, i, q, self._act_dict(q, one2, tau))
                tb = _perm_block_embed(tau, i, p + q - 1)
                rhs = self._act_dict(p + q - 1, self._compose_1(p, one1, i, q, one2), tb)
                if lhs != rhs:
                    failures.append(("equivariance-inner", p, k1, i, q, k2, t))
        return failures

    def _compose_1(self, r1, d1, i, r2, d2):
        return self._compose_dicts(r1, d1, i, r2, d2)

    def _act_dict(self, r, d, tau):
        out = {}
        for k, v in d.items():
            for k2, v2 in self.act(r, k, tau).items():
                out[k2] = out.get(k2, Fraction(0)) + v * v2
        return {k: v for k, v in out.items() if v}


def _arity_triples(bound):
    out = []
    for p in range(2, bound + 1):
        for q in range(2, bound + 1):
            for s in range(2, bound + 1):
                if p + q + s - 2 <= bound:
                    out.append((p, q, s))
    return out


def _perm_block_subst(sigma, i, q):
    """Permutation induced by sigma when slot i of its domain blows up to q slots."""
    p = len(sigma)
    si = sigma[i]
    out = []
    for t in range(p + q - 1):
        if t < i:
            s = sigma[t]
            out.append(s if s < si else s + q - 1)
        elif t <= i + q - 1:
            out.append(si + (t - i))
        else:
            s = sigma[t - q + 1]
            out.append(s if s < si else s + q - 1)
    return tuple(out)


def _perm_block_embed(tau, i, n):
    """tau acting inside the block [i, i+len(tau)-1] of n slots."""
    out = list(range(n))
    for t, x in enumerate(tau):
        out[i + t] = i + x
    return tuple(out)


class CooperadDatum:
    """Koszul-dual cooperad data; one component per arity, degree r-1.

    Decomposition tables are produced lazily by the class machinery in
    schur.py; this object carries the basis, actions, and the (zero)
    internal differential.
    """

    def __init__(self, kind: str, arity_bound: int):
        if arity_bound < 2:
            raise InputError("arity bound must be at least 2")
        self.kind = kind
        self.arity_bound = arity_bound
        if kind == ASSOC:
            comps = {r: tuple(_word_label("c", w) for w in W.words(r))
                     for r in range(1, arity_bound + 1)}
        elif kind == LIE:
            comps = {r: ("lam%d" % r,) for r in range(1, arity_bound + 1)}
        else:
            raise InputError(f"unknown cooperad kind {kind!r}")
        self.basis = SModuleBasis(comps, {r: r - 1 for r in comps}, self._transposition)

    def labels(self, r: int):
        return self.basis.labels(r)

    def differential(self, r: int):
        """Internal differential; identically zero for the built-in duals."""
        return None

    def _transposition(self, r: int, i: int) -> Matrix:
        n = self.basis.dim(r)
        if self.kind == LIE:
            return Matrix.from_rows([[Fraction(-1)]])
        tau = W.transposition(r, i)
        idx = W.word_index(r)
        cols = []
        for w in W.words(r):
            col = [Fraction(0)] * n
            col[idx[W.word_act(w, tau)]] = Fraction(perm_sign(tau))
            cols.append(col)
        return Matrix.from_cols(cols, rows=n)


class TwistingMorphism:
    """The canonical degree -1 map from the Koszul dual onto the operad.

    Supported on the arity-2 component; the arity-2 class of letters
    (x, y) goes to their product (or bracket) with no extra sign, which is
    the class-level normal form used by every evaluator in the package.
    """

    def __init__(self, kind: str, operad: OperadDatum, cooperad: CooperadDatum):
        self.kind = kind
        self.operad = operad
        self.cooperad = cooperad

    def table(self, r: int, k: int) -> dict:
        """Operad coefficients of alpha on the k-th cooperad basis element."""
        if r != 2:
            return {}
        if self.kind == ASSOC:
            w = W.words(2)[k]
            return {W.word_index(2)[w]: Fraction(perm_sign(w))}
        return {0: Fraction(1)}


def builtin_assoc(arity_bound: int):
    """Associative operad, its Koszul dual, and the twisting morphism."""
    op = OperadDatum(ASSOC, arity_bound)
    co = CooperadDatum(ASSOC, arity_bound)
    return op, co, TwistingMorphism(ASSOC, op, co)


def builtin_lie(arity_bound: int):
    """Lie operad, its Koszul dual, and the twisting morphism."""
    op = OperadDatum(LIE, arity_bound)
    co = CooperadDatum(LIE, arity_bound)
    return op, co, TwistingMorphism(LIE, op, co)


def _free_pair_value(kind, u_terms, v_terms, u_degree):
    """alpha-and-compose on a pair of free-algebra values over markers.

    Values are dicts word-tuple -> Fraction; the binary vertex multiplies
    (associative) or brackets (Lie), with the in-place evaluation sign
    (-1)^(degree of the first entry). Marker degree is zero throughout.
    """
    sign = Fraction(-1 if u_degree & 1 else 1)
    out = {}
    for wu, cu in u_terms.items():
        for wv, cv in v_terms.items():
            c = sign * cu * cv
            out[wu + wv] = out.get(wu + wv, Fraction(0)) + c
            if kind == LIE:
                out[wv + wu] = out.get(wv + wu, Fraction(0)) - c
    return {w: c for w, c in out.items() if c}


def check_twisting(op: OperadDatum, co: CooperadDatum, alpha: TwistingMorphism,
                   arity_bound: int):
    """Residues of the Maurer-Cartan identity on every cooperad basis element.

    The convolution square is evaluated on formal leaf markers; the
    internal-differential term uses the cooperad differential (zero for
    the built-ins). Returns the list of nonzero residues, expected empty.
    """
    kind = co.kind
    residues = []
    for r in range(2, arity_bound + 1):
        markers = Alphabet([f"e{t}" for t in range(r)], [0] * r)
        if kind == ASSOC:
            reps = [(lab, w) for lab, w in zip(co.labels(r), W.words(r))]
        else:
            reps = [(co.labels(r)[0], tuple(range(r)))]
        for label, tup in reps:
            total = {}
            for coeff, pre, inner, post in split_one(kind, tup, markers):
                if len(inner) != 2:
                    continue
                if len(pre) + 1 + len(post) != 2:
                    continue
                c = Fraction(coeff) * block_map_prefix_sign(-1, pre, markers)
                inner_val = _free_pair_value(kind, {(inner[0],): Fraction(1)},
                                             {(inner[1],): Fraction(1)}, 0)
                # alpha lands in degree 0, so the first entry of the outer
                # pair has degree 0 whichever side carries the block value
                if pre:
                    left = {(pre[0],): Fraction(1)}
                    pair = _free_pair_value(kind, left, inner_val, 0)
                else:
                    if not post:
                        continue
                    right = {(post[0],): Fraction(1)}
                    pair = _free_pair_value(kind, inner_val, right, 0)
                for w, v in pair.items():
                    total[w] = total.get(w, Fraction(0)) + c * v
            total = {w: v for w, v in total.items() if v}
            if total:
                residues.append((kind, r, label, sorted(total.items())))
    return residues
