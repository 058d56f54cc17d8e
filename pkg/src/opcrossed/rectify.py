"""Rectification: from a degree-(n+1) cocycle to a crossed module.

The model is the free algebra (tensor or Lie) on the classes of the dual
cooperad applied to the split extension, carrying the differential with
one part applying the structure-plus-cocycle blocks inside a class and
one part splitting a class at a binary vertex. The V-letter count is a
weight that the splitting part preserves and the block part strictly
drops, so the window of weight at most W is an honest subcomplex and
every check below is exact there. The Lie model is computed inside the
tensor model through left-normed bracket expansions.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .cochain import Cochain, CochainComplex, merge_terms
from .crossed import CrossedModule
from .errors import InputError, StructureError
from .graded import ChainComplex, GradedSpace
from .linalg import Matrix, PreparedSolve, RowReducer, quotient_basis
from .palgebra import (AlgebraDatum, BinaryStructure, ModuleDatum, add_into,
                       scale_dict, semidirect)
from .schur import (ASSOC, LIE, Alphabet, class_degree, desuspension_sign,
                    enumerate_classes, normalize_class, two_block_splits)


class RectifiedModel:
    """Weight-capped cobar-bar model of the structure attached to a cocycle."""

    def __init__(self, algebra: AlgebraDatum, module: ModuleDatum, n: int,
                 zeta: Cochain | None, weight_bound: int):
        if weight_bound < n + 2:
            raise InputError("weight bound below n+2 cannot reach the cocycle slot")
        self.algebra = algebra
        self.module = module
        self.n = n
        self.kind = algebra.kind
        self.weight_bound = weight_bound
        self.sd = semidirect(algebra, module, n)
        self.alphabet = Alphabet(self.sd.labels, self.sd.degrees)
        if zeta is not None:
            if zeta.degree != n + 1:
                raise InputError("the cocycle must sit in degree n+1")
            if not zeta.complex.is_cocycle(zeta):
                raise InputError("the rectification input is not a cocycle")
        self.zeta = zeta
        self._build_generators()
        self._build_basis()
        self._build_differential()

    # -- generators: classes of the dual cooperad on the split extension ----

    def _build_generators(self):
        self.gens = []
        self.gen_index = {}
        for r in range(1, self.weight_bound + 1):
            for tup in enumerate_classes(self.kind, self.alphabet, r):
                d = class_degree(tup, self.alphabet)
                if d <= self.n + 1:
                    self.gen_index[tup] = len(self.gens)
                    self.gens.append(tup)
        self.gen_degree = [class_degree(t, self.alphabet) for t in self.gens]
        self.gen_weight = [len(t) for t in self.gens]

    def _zeta_value(self, block) -> dict:
        """Cocycle value on an all-base block, as split-extension letters."""
        if self.zeta is None:
            return {}
        val = self.zeta.evaluate(block)
        return {self.sd.dim_a + m: c for m, c in val.items()}

    def _gen_d(self, gi: int):
        """Differential of one generator: block applications (a dict over
        generators) plus binary splittings (a dict over 2-letter words)."""
        tup = self.gens[gi]
        lin = {}
        quad = {}
        # binary structure blocks
        for coeff, rep in merge_terms(self.kind, tup, self.alphabet,
                                      lambda i, j: self.sd.table.get((i, j), {})):
            gj = self.gen_index.get(rep)
            if gj is not None:
                add_into(lin, {gj: Fraction(1)}, coeff)
        # cocycle blocks: arity n+2, base letters only
        q = self.n + 2
        r = len(tup)
        if self.zeta is not None and r >= q:
            for coeff, block, pre, post in _block_terms(self.kind, tup, self.alphabet, q):
                if any(t >= self.sd.dim_a for t in block):
                    continue
                val = self._zeta_value(block)
                for letter, c in val.items():
                    nsign, canon = normalize_class(self.kind, pre + (letter,) + post,
                                                   self.alphabet)
                    if not nsign:
                        continue
                    gj = self.gen_index.get(canon)
                    if gj is not None:
                        add_into(lin, {gj: Fraction(coeff * nsign) * c}, Fraction(1))
        # binary vertex splittings
        for coeff, left, right in two_block_splits(self.kind, tup, self.alphabet):
            if len(left) == r or len(right) == r:
                continue
            gl = self.gen_index.get(left)
            gr = self.gen_index.get(right)
            if gl is None or gr is None:
                continue
            sign = Fraction(coeff) * (-1 if class_degree(left, self.alphabet) & 1 else 1)
            add_into(quad, {(gl, gr): sign}, Fraction(1))
        return lin, quad

    # -- ambient words and the Lie sub-basis --------------------------------

    def _build_basis(self):
        # enumerate words of generators, weight and degree capped, by length
        max_deg = self.n + 1
        all_words = {}
        current = [()]
        while current:
            nxt = []
            for w in current:
                wdeg = sum(self.gen_degree[g] for g in w)
                wwt = sum(self.gen_weight[g] for g in w)
                if w:
                    all_words.setdefault(wdeg, []).append(w)
                for gi in range(len(self.gens)):
                    d2 = wdeg + self.gen_degree[gi]
                    w2 = wwt + self.gen_weight[gi]
                    if d2 <= max_deg and w2 <= self.weight_bound:
                        nxt.append(w + (gi,))
            current = nxt
        self.words = {d: sorted(ws, key=lambda w: (len(w), _word_sort_key(self, w)))
                      for d, ws in all_words.items()}
        self.word_index = {d: {w: i for i, w in enumerate(ws)}
                           for d, ws in self.words.items()}
        if self.kind == ASSOC:
            self.basis = self.words
            self.recipes = {d: list(ws) for d, ws in self.words.items()}
            self._expr = None
        else:
            self._build_lie_basis()

    def _word_degree(self, w) -> int:
        return sum(self.gen_degree[g] for g in w)

    def _word_weight(self, w) -> int:
        return sum(self.gen_weight[g] for g in w)

    def _bracket_expansion(self, recipe):
        """T-coordinates of the left-normed bracket monomial of a recipe word."""
        terms = {(recipe[0],): Fraction(1)}
        deg_so_far = self.gen_degree[recipe[0]]
        for g in recipe[1:]:
            nxt = {}
            dg = self.gen_degree[g]
            for w, c in terms.items():
                add_into(nxt, {w + (g,): c}, Fraction(1))
                sign = Fraction(-1 if (deg_so_far * dg) & 1 else 1)
                add_into(nxt, {(g,) + w: -sign * c}, Fraction(1))
            terms = nxt
            deg_so_far += dg
        return terms

    def _build_lie_basis(self):
        self.recipes = {}
        self.expansions = {}
        for d, ws in sorted(self.words.items()):
            rr = RowReducer(len(ws))
            chosen = []
            exps = []
            for w in ws:
                exp = self._bracket_expansion(w)
                vec = [Fraction(0)] * len(ws)
                for t, c in exp.items():
                    vec[self.word_index[d][t]] = c
                if rr.add(tuple(vec)):
                    chosen.append(w)
                    exps.append(exp)
            self.recipes[d] = chosen
            self.expansions[d] = exps
        self.basis = self.recipes
        self._expr = {}
        for d, exps in self.expansions.items():
            cols = []
            for exp in exps:
                vec = [Fraction(0)] * len(self.words[d])
                for t, c in exp.items():
                    vec[self.word_index[d][t]] = c
                cols.append(vec)
            if cols:
                self._expr[d] = PreparedSolve(
                    Matrix.from_cols(cols, rows=len(self.words[d])))

    def dim(self, d: int) -> int:
        return len(self.recipes.get(d, ()))

    def express(self, tdict: dict, d: int) -> tuple:
        """Coordinates of a T-vector in the degree-d model basis."""
        if self.kind == ASSOC:
            vec = [Fraction(0)] * self.dim(d)
            idx = self.word_index.get(d, {})
            for w, c in tdict.items():
                if w in idx:
                    vec[idx[w]] += c
                elif c:
                    raise StructureError("tensor word escaped the capped window")
            return tuple(vec)
        vec = [Fraction(0)] * len(self.words.get(d, ()))
        idx = self.word_index.get(d, {})
        for w, c in tdict.items():
            if w in idx:
                vec[idx[w]] += c
            elif c:
                raise StructureError("tensor word escaped the capped window")
        if not vec:
            return ()
        x = self._expr[d].solve(tuple(vec))
        if x is None:
            raise StructureError("vector landed outside the Lie part")
        return x

    # -- differential --------------------------------------------------------

    def _d_word(self, w) -> dict:
        """Derivation extension of the generator differential, T-coordinates."""
        out = {}
        for i, g in enumerate(w):
            sign = Fraction(-1 if sum(self.gen_degree[t] for t in w[:i]) & 1 else 1)
            lin, quad = self._gen_data[g]
            for gj, c in lin.items():
                add_into(out, {w[:i] + (gj,) + w[i + 1:]: sign * c}, Fraction(1))
            for (gl, gr), c in quad.items():
                add_into(out, {w[:i] + (gl, gr) + w[i + 1:]: sign * c}, Fraction(1))
        return out

    def _build_differential(self):
        self._gen_data = [self._gen_d(gi) for gi in range(len(self.gens))]
        self.d_matrices = {}
        for d in sorted(self.recipes, reverse=True):
            cols = []
            for t, recipe in enumerate(self.recipes[d]):
                if self.kind == ASSOC:
                    tvec = self._d_word(recipe)
                else:
                    tvec = {}
                    for w, c in self.expansions[d][t].items():
                        add_into(tvec, self._d_word(w), c)
                cols.append(self.express(tvec, d - 1))
            self.d_matrices[d] = Matrix.from_cols(cols, rows=self.dim(d - 1)) \
                if cols else Matrix.zeros(self.dim(d - 1), 0)

    def check_d_squared(self):
        for d in sorted(self.d_matrices):
            if d - 1 in self.d_matrices:
                if not (self.d_matrices[d - 1] @ self.d_matrices[d]).is_zero():
                    raise StructureError(f"rectified differential fails d*d=0 at {d}")

    # -- products ------------------------------------------------------------

    def product_t(self, u: dict, v: dict) -> dict:
        """Free product in T-coordinates with the weight cap applied."""
        out = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                w = wu + wv
                if self._word_weight(w) > self.weight_bound:
                    continue
                if self._word_degree(w) > self.n + 1:
                    continue
                add_into(out, {w: cu * cv}, Fraction(1))
        if self.kind == LIE:
            swapped = {}
            for wu, cu in u.items():
                du = self._word_degree(wu)
                for wv, cv in v.items():
                    w = wv + wu
                    if self._word_weight(w) > self.weight_bound:
                        continue
                    if self._word_degree(w) > self.n + 1:
                        continue
                    sign = Fraction(-1 if (du * self._word_degree(wv)) & 1 else 1)
                    add_into(swapped, {w: sign * cu * cv}, Fraction(1))
            for w, c in swapped.items():
                add_into(out, {w: -c}, Fraction(1))
        return out

    def element_t(self, d: int, i: int) -> dict:
        if self.kind == ASSOC:
            return {self.recipes[d][i]: Fraction(1)}
        return dict(self.expansions[d][i])


def _word_sort_key(model: RectifiedModel, w):
    return tuple((model.gen_weight[g], g) for g in w)


def _block_terms(kind: str, tup, alphabet: Alphabet, q: int):
    """Blocks of size q with the coderivation signs of merge_terms.

    Returns (sign, block, pre, post); sign contains the prefix and the
    block desuspension, matching the q = 2 case used by the cochain path.
    """
    from .signs import koszul_rearrange_sign
    r = len(tup)
    out = []
    if kind == ASSOC:
        for i in range(r - q + 1):
            base = sum(alphabet.sdeg(x) for x in tup[:i])
            sign = (-1 if base & 1 else 1) * desuspension_sign(tup[i:i + q], alphabet)
            out.append((sign, tup[i:i + q], tup[:i], tup[i + q:]))
        return out
    sdegs = [alphabet.sdeg(x) for x in tup]
    for subset in itertools.combinations(range(r), q):
        order = list(subset) + [u for u in range(r) if u not in subset]
        unshuffle = koszul_rearrange_sign(order, sdegs)
        block = tuple(tup[t] for t in subset)
        rest = tuple(tup[t] for t in range(r) if t not in subset)
        sign = unshuffle * desuspension_sign(block, alphabet)
        out.append((sign, block, (), rest))
    return out


def cobar_bar(algebra: AlgebraDatum, module: ModuleDatum, n: int,
              zeta: Cochain | None, weight_bound: int) -> RectifiedModel:
    """The capped rectification model; raises unless d*d = 0 holds on it."""
    model = RectifiedModel(algebra, module, n, zeta, weight_bound)
    model.check_d_squared()
    return model


def truncate(model: RectifiedModel) -> CrossedModule:
    """Degrees 0..n with the cokernel of the top differential on top,
    packaged as a crossed module with the evaluation projection."""
    n = model.n
    dn1 = model.d_matrices.get(n + 1, Matrix.zeros(model.dim(n), 0))
    image_cols = [dn1.col(j) for j in range(dn1.cols)]
    qreps = quotient_basis(image_cols, model.dim(n))
    rep_positions = [next(i for i, x in enumerate(v) if x) for v in qreps]
    # projection to the quotient, in the pivot representatives
    span = [v for v in image_cols]
    rr = RowReducer(model.dim(n))
    image_basis = [v for v in span if rr.add(v)]
    proj_solver = PreparedSolve(Matrix.from_cols(image_basis + qreps,
                                                 rows=model.dim(n))) \
        if (image_basis or qreps) else None

    def project_top(vec) -> tuple:
        if proj_solver is None:
            return ()
        x = proj_solver.solve(tuple(vec))
        if x is None:
            raise StructureError("degree-n vector escaped the truncation")
        return tuple(x[len(image_basis):])

    # graded space and differential of the truncated complex
    labels = {}
    for d in range(0, n + 1):
        if d < n:
            labels[d] = [_label_of(model, d, i) for i in range(model.dim(d))]
        else:
            labels[d] = [_label_of(model, n, i) for i in rep_positions]
    diff = {}
    for d in range(1, n):
        m = model.d_matrices.get(d)
        if m is not None:
            diff[d] = m
    dn = model.d_matrices.get(n, Matrix.zeros(model.dim(n - 1), model.dim(n)))
    cols = [dn.col(j) for j in rep_positions]
    diff[n] = Matrix.from_cols(cols, rows=model.dim(n - 1)) if cols \
        else Matrix.zeros(model.dim(n - 1), 0)
    space = GradedSpace(labels)
    cx = ChainComplex(space, diff)

    # structure constants on the truncated basis
    flat_labels = []
    flat_degrees = []
    weights = []
    flat_elems = []
    for d in range(0, n + 1):
        idxs = range(model.dim(d)) if d < n else rep_positions
        for i in idxs:
            flat_labels.append(f"d{d}." + _label_of(model, d, i))
            flat_degrees.append(d)
            weights.append(_weight_of(model, d, i))
            flat_elems.append((d, i))
    table = {}
    for a, (da, ia) in enumerate(flat_elems):
        for b, (db, ib) in enumerate(flat_elems):
            if da + db > n:
                continue
            prod = model.product_t(model.element_t(da, ia), model.element_t(db, ib))
            coords = model.express(prod, da + db)
            cell = {}
            if da + db < n:
                for t, c in enumerate(coords):
                    if c:
                        cell[_flat_pos(model, rep_positions, n, da + db, t)] = c
            else:
                for t, c in enumerate(project_top(coords)):
                    if c:
                        cell[_flat_pos(model, rep_positions, n, n, t)] = c
            if cell:
                table[(a, b)] = cell
    structure = BinaryStructure(model.kind, flat_labels, flat_degrees, table)

    pi = _evaluation_projection(model)
    phi_n = _top_comparison(model, rep_positions, cx)
    return CrossedModule(model.algebra, model.module, n, cx, structure, pi, phi_n,
                         weights=weights, name=f"rectified(W={model.weight_bound})")


def _label_of(model: RectifiedModel, d: int, i: int) -> str:
    recipe = model.recipes[d][i]
    return "[" + ".".join(str(g) for g in recipe) + "]"


def _weight_of(model: RectifiedModel, d: int, i: int) -> int:
    return model._word_weight(model.recipes[d][i])


def _flat_pos(model: RectifiedModel, rep_positions, n, d, t):
    offset = 0
    for dd in range(0, d):
        offset += model.dim(dd) if dd < n else len(rep_positions)
    return offset + t


def _evaluation_projection(model: RectifiedModel) -> Matrix:
    """Multiply out a degree-zero monomial in the base algebra."""
    alg = model.algebra
    cols = []
    for recipe in model.recipes.get(0, ()):
        acc = None
        for g in recipe:
            tup = model.gens[g]
            vec = {tup[0]: Fraction(1)}  # degree-0 generators are single letters
            acc = vec if acc is None else alg.mul(acc, vec)
        col = [Fraction(0)] * alg.dim
        for i, c in (acc or {}).items():
            col[i] = c
        cols.append(col)
    return Matrix.from_cols(cols, rows=alg.dim) if cols else Matrix.zeros(alg.dim, 0)


def _top_comparison(model: RectifiedModel, rep_positions, cx: ChainComplex) -> Matrix:
    """Identify the top homology with the module through the length-one
    module generators, killing a pivot complement."""
    n = model.n
    mdim = model.module.dim
    qdim = len(rep_positions)
    if mdim == 0:
        return Matrix.zeros(0, qdim)
    dn1 = model.d_matrices.get(n + 1, Matrix.zeros(model.dim(n), 0))
    image_cols = [dn1.col(j) for j in range(dn1.cols)]
    rr = RowReducer(model.dim(n))
    image_basis = [v for v in image_cols if rr.add(v)]
    proj_solver = PreparedSolve(
        Matrix.from_cols(image_basis + [ _unit(model.dim(n), p) for p in rep_positions],
                         rows=model.dim(n)))

    def to_quotient(vec):
        x = proj_solver.solve(tuple(vec))
        if x is None:
            raise StructureError("module generator escaped the truncation")
        return tuple(x[len(image_basis):])

    mcols = []
    for m in range(mdim):
        letter = model.sd.dim_a + m
        gi = model.gen_index.get((letter,))
        if gi is None:
            raise StructureError("missing module generator in the model")
        pos = model.recipes[n].index((gi,))
        mcols.append(to_quotient(_unit(model.dim(n), pos)))
    mmat = Matrix.from_cols(mcols, rows=qdim)
    # extend the module classes to a basis of the quotient and project
    rr2 = RowReducer(qdim)
    for c in mcols:
        if not rr2.add(c):
            raise StructureError("module classes are dependent in the truncation")
    extension = []
    for t in range(qdim):
        e = _unit(qdim, t)
        if rr2.add(e):
            extension.append(e)
    solver = PreparedSolve(Matrix.from_cols(mcols + extension, rows=qdim))
    rows = [[Fraction(0)] * qdim for _ in range(mdim)]
    for j in range(qdim):
        coords = solver.solve(_unit(qdim, j))
        for m in range(mdim):
            rows[m][j] = coords[m]
    return Matrix.from_rows(rows)


def _unit(nn, j):
    return tuple(Fraction(1 if t == j else 0) for t in range(nn))


def crossed_module_of_cocycle(algebra: AlgebraDatum, module: ModuleDatum, n: int,
                              zeta: Cochain | None, weight_bound: int | None = None
                              ) -> CrossedModule:
    """Rectify a cocycle into a crossed module, fully verified on the window."""
    w = weight_bound or (n + 2)
    model = cobar_bar(algebra, module, n, zeta, w)
    return truncate(model)


def roundtrip_check(algebra: AlgebraDatum, module: ModuleDatum, n: int,
                    zeta: Cochain, weight_bound: int | None = None) -> bool:
    """Whether rectifying and transferring back returns the cocycle exactly."""
    from .transfer import cocycle_of
    x = crossed_module_of_cocycle(algebra, module, n, zeta, weight_bound)
    cls = cocycle_of(x, cochains=zeta.complex)
    return cls.representative.values == zeta.values
