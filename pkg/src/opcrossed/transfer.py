"""Contractions of crossed modules onto their split-extension homology
and the homotopy transfer of the algebra structure across them.

The transferred twisting map is computed by the usual sum over binary
trees: sections on the leaves, the structure product at each vertex, the
homotopy on inner edges, the projection at the root. With the package's
conventions every assembled tree map has even degree, so the only signs
are the block-split coefficients and one (-1)^(degree of the left
branch) per vertex. The twisting identity is re-checked on every basis
class, which is what certifies the whole sign scheme.
"""
from __future__ import annotations

from fractions import Fraction

from .cochain import Cochain, CochainComplex
from .crossed import CrossedModule
from .errors import InputError, StructureError
from .graded import ChainComplex, GradedSpace
from .linalg import Matrix, PreparedSolve, RowReducer
from .palgebra import add_into, scale_dict
from .schur import (Alphabet, block_map_prefix_sign, class_degree, enumerate_classes,
                    normalize_class, split_one, two_block_splits)


class Contraction:
    """Deformation-retract data (i, p, h) with the side conditions imposed."""

    def __init__(self, big: ChainComplex, small: ChainComplex,
                 i: dict, p: dict, h: dict, check: bool = True):
        self.big = big
        self.small = small
        self.i = {k: m for k, m in i.items() if not m.is_zero()}
        self.p = {k: m for k, m in p.items() if not m.is_zero()}
        self.h = {k: m for k, m in h.items() if not m.is_zero()}
        if check:
            failures = self.validate()
            if failures:
                raise StructureError(f"contraction data invalid: {failures}")

    def i_at(self, k):
        return self.i.get(k) or Matrix.zeros(self.big.dim(k), self.small.dim(k))

    def p_at(self, k):
        return self.p.get(k) or Matrix.zeros(self.small.dim(k), self.big.dim(k))

    def h_at(self, k):
        return self.h.get(k) or Matrix.zeros(self.big.dim(k + 1), self.big.dim(k))

    def validate(self):
        """Exact retract identities plus the side conditions."""
        out = []
        degs = sorted(set(self.big.support()) | set(self.small.support()))
        for k in degs:
            ident_v = Matrix.identity(self.small.dim(k))
            if (self.p_at(k) @ self.i_at(k)).data != ident_v.data:
                out.append((k, "p i != id"))
            ident_b = Matrix.identity(self.big.dim(k))
            lhs = ident_b - (self.i_at(k) @ self.p_at(k))
            rhs = (self.big.d(k + 1) @ self.h_at(k)) + (self.h_at(k - 1) @ self.big.d(k))
            if lhs.data != rhs.data:
                out.append((k, "id - i p != d h + h d"))
            if not (self.h_at(k + 1) @ self.h_at(k)).is_zero():
                out.append((k, "h h != 0"))
            if not (self.h_at(k) @ self.i_at(k)).is_zero():
                out.append((k, "h i != 0"))
            if not (self.p_at(k + 1) @ self.h_at(k)).is_zero():
                out.append((k, "p h != 0"))
            # i and p are chain maps onto the zero-differential target
            if not (self.p_at(k - 1) @ self.big.d(k)).is_zero():
                out.append((k, "p d != 0"))
            if not (self.big.d(k) @ self.i_at(k)).is_zero():
                out.append((k, "d i != 0"))
        return out


def contraction_from_projection(big: ChainComplex, small: ChainComplex,
                                p: dict, order: str = "asc") -> Contraction:
    """Complete a surjective quasi-isomorphism onto a zero-differential
    complex into a contraction with side conditions.

    Deterministic: the section solves against the pivot convention and the
    homotopy inverts the differential on the pivot complement of the
    cycles inside ker p. `order` flips the basis order used for those
    pivot choices, giving a second, usually different, contraction.
    """
    if order not in ("asc", "desc"):
        raise InputError("order must be 'asc' or 'desc'")
    degs = sorted(set(big.support()) | set(small.support()))
    p = {k: m for k, m in p.items()}

    def flip(mat: Matrix, rows=False, cols=False) -> Matrix:
        data = list(mat.data)
        if rows:
            data = data[::-1]
        if cols:
            data = [row[::-1] for row in data]
        return Matrix(mat.rows, mat.cols, data)

    # section: for each target basis vector solve p x = e, d x = 0
    i = {}
    for k in degs:
        nv = small.dim(k)
        if not nv:
            continue
        pk = p.get(k)
        if pk is None:
            raise InputError(f"projection missing at degree {k}")
        stacked = Matrix(pk.rows + big.dim(k - 1), big.dim(k),
                         list(pk.data) + list(big.d(k).data))
        if order == "desc":
            stacked = flip(stacked, cols=True)
        solver = PreparedSolve(stacked)
        cols = []
        for j in range(nv):
            rhs = tuple(Fraction(1 if t == j else 0) for t in range(pk.rows)) + \
                tuple(Fraction(0) for _ in range(big.dim(k - 1)))
            x = solver.solve(rhs)
            if x is None:
                raise InputError(f"projection admits no chain section at degree {k}")
            cols.append(x[::-1] if order == "desc" else x)
        i[k] = Matrix.from_cols(cols, rows=big.dim(k))

    # kernel of p as a subcomplex, with its internal differential
    kbasis = {}
    for k in degs:
        pk = p.get(k)
        kbasis[k] = (pk.kernel_basis() if pk is not None
                     else [tuple(Fraction(1 if t == j else 0) for t in range(big.dim(k)))
                           for j in range(big.dim(k))])
    ksolver = {k: PreparedSolve(Matrix.from_cols(kbasis[k], rows=big.dim(k)))
               for k in degs if kbasis[k]}
    kdiff = {}
    for k in degs:
        if not kbasis.get(k) or not kbasis.get(k - 1):
            continue
        cols = []
        for v in kbasis[k]:
            img = big.d(k).apply(v)
            coords = ksolver[k - 1].solve(img)
            if coords is None:
                raise StructureError("kernel of the projection is not a subcomplex")
            cols.append(coords)
        kdiff[k] = Matrix.from_cols(cols, rows=len(kbasis[k - 1]))

    # split each kernel degree into cycles and a pivot complement; the
    # homotopy kills the complement and lifts cycles through the complement
    # one degree up (possible exactly because the kernel is acyclic)
    zpart = {}
    cpart = {}
    spart = {}
    for k in degs:
        m = len(kbasis.get(k, ()))
        if not m:
            continue
        dk = kdiff.get(k)
        if dk is None:
            zs = [tuple(Fraction(1 if u == t else 0) for u in range(m))
                  for t in range(m)]
        else:
            zs = dk.kernel_basis()
        rr = RowReducer(m)
        for z in zs:
            rr.add(z)
        unit_order = list(range(m))
        if order == "desc":
            unit_order.reverse()
        comp = []
        for t in unit_order:
            e = tuple(Fraction(1 if u == t else 0) for u in range(m))
            if rr.add(e):
                comp.append(e)
        zpart[k] = zs
        cpart[k] = comp
        spart[k] = PreparedSolve(Matrix.from_cols(zs + comp, rows=m))

    h = {}
    for k in degs:
        m = len(kbasis.get(k, ()))
        if not m or not zpart.get(k):
            continue
        above = cpart.get(k + 1, [])
        dk1 = kdiff.get(k + 1)
        if not above or dk1 is None:
            # no room to lift; if genuine cycles sit here the final
            # contraction validation reports the broken homotopy identity
            continue
        comp_mat = Matrix.from_cols(above, rows=len(kbasis[k + 1]))
        lift_solver = PreparedSolve(dk1 @ comp_mat)
        zmat = Matrix.from_cols(zpart[k], rows=m)
        cols = []
        ik = i.get(k)
        pk = p.get(k)
        for j in range(big.dim(k)):
            e = tuple(Fraction(1 if u == j else 0) for u in range(big.dim(k)))
            resid = e
            if pk is not None and ik is not None:
                resid = tuple(a - b for a, b in zip(e, ik.apply(pk.apply(e))))
            kc = ksolver[k].solve(resid)
            if kc is None:
                raise StructureError("projection complement fell outside ker p")
            coords = spart[k].solve(kc)
            zvec = zmat.apply(coords[: len(zpart[k])])
            y = lift_solver.solve(zvec)
            if y is None:
                raise StructureError("kernel of the projection is not acyclic")
            lifted = comp_mat.apply(y)
            cols.append(Matrix.from_cols(kbasis[k + 1],
                                         rows=big.dim(k + 1)).apply(lifted))
        hk = Matrix.from_cols(cols, rows=big.dim(k + 1))
        if not hk.is_zero():
            h[k] = hk

    return Contraction(big, small, i, {k: m for k, m in p.items()}, h)


def build_contraction(big: ChainComplex, small, order: str = "asc") -> Contraction:
    """Deterministic contraction of a complex onto its homology.

    `small` is a GradedSpace (or zero-differential ChainComplex) abstractly
    isomorphic to the homology, identified positionally with the pivot
    homology representatives.
    """
    if isinstance(small, GradedSpace):
        small = ChainComplex(small, {})
    pcomp = {}
    for k in sorted(set(big.support()) | set(small.support())):
        dim, reps = big.homology(k)
        if dim != small.dim(k):
            raise InputError(f"homology dimension mismatch at degree {k}")
        if small.dim(k) == 0:
            continue
        # p kills boundaries and the pivot complement of the cycles
        cycles = big.d(k).kernel_basis()
        image = [big.d(k + 1).col(j) for j in range(big.dim(k + 1))]
        rr = RowReducer(big.dim(k))
        basis_cols = []
        coords_rows = []
        for v in image:
            if rr.add(v):
                basis_cols.append((v, None))
        for t, z in enumerate(reps):
            rr.add(z)
            basis_cols.append((z, t))
        for j in range(big.dim(k)):
            e = tuple(Fraction(1 if u == j else 0) for u in range(big.dim(k)))
            if rr.add(e):
                basis_cols.append((e, None))
        full = Matrix.from_cols([v for v, _ in basis_cols], rows=big.dim(k))
        ps = PreparedSolve(full)
        rows = [[Fraction(0)] * big.dim(k) for _ in range(small.dim(k))]
        for j in range(big.dim(k)):
            e = tuple(Fraction(1 if u == j else 0) for u in range(big.dim(k)))
            coords = ps.solve(e)
            for t, (_, tag) in enumerate(basis_cols):
                if tag is not None and coords[t]:
                    rows[tag][j] = coords[t]
        pcomp[k] = Matrix.from_rows(rows)
    return contraction_from_projection(big, small, pcomp, order=order)


def contraction_of(x: CrossedModule, order: str = "asc") -> Contraction:
    """Contraction of a crossed module onto its split extension, with the
    projection given by the crossed module's own comparison map."""
    target = x.target_complex()
    p = {0: x.pi}
    if x.module.dim:
        p[x.n] = x.phi_n
    return contraction_from_projection(x.complex, target, p, order=order)


class TransferredStructure:
    """Values of the transferred twisting map on every class up to a bound."""

    def __init__(self, x: CrossedModule, contraction: Contraction, arity_bound: int):
        self.x = x
        self.contraction = contraction
        self.arity_bound = arity_bound
        sd = x.semidirect_target()
        self.sd = sd
        self.alphabet = Alphabet(sd.labels, sd.degrees)
        self.values = {}
        self._w_memo = {}
        kind = x.kind
        for r in range(2, arity_bound + 1):
            for tup in enumerate_classes(kind, self.alphabet, r):
                self.values[tup] = self._transfer_value(tup)
        self._check_slots()

    # -- tree evaluation ---------------------------------------------------

    def _leaf(self, letter: int) -> dict:
        x, sd = self.x, self.sd
        c = self.contraction
        if letter < sd.dim_a:
            col = c.i_at(0).col(letter)
            return {x.flat(0, t): v for t, v in enumerate(col) if v}
        col = c.i_at(x.n).col(letter - sd.dim_a)
        return {x.flat(x.n, t): v for t, v in enumerate(col) if v}

    def _apply_h(self, v: dict) -> dict:
        out = {}
        x = self.x
        c = self.contraction
        for idx, coeff in v.items():
            k = x.degree_of(idx)
            col = c.h_at(k).col(idx - x.offsets[k])
            for t, vv in enumerate(col):
                if vv:
                    add_into(out, {x.flat(k + 1, t): vv}, coeff)
        return out

    def _apply_p(self, v: dict) -> dict:
        out = {}
        x, sd = self.x, self.sd
        c = self.contraction
        for idx, coeff in v.items():
            k = x.degree_of(idx)
            i = idx - x.offsets[k]
            if k == 0:
                for t, vv in enumerate(c.p_at(0).col(i)):
                    if vv:
                        add_into(out, {t: vv}, coeff)
            elif k == x.n:
                for t, vv in enumerate(c.p_at(x.n).col(i)):
                    if vv:
                        add_into(out, {sd.dim_a + t: vv}, coeff)
        return out

    def _branch(self, tup) -> dict:
        """W of a block: leaf section, or homotopy applied to the tree sum."""
        if len(tup) == 1:
            return self._leaf(tup[0])
        if tup not in self._w_memo:
            self._w_memo[tup] = self._apply_h(self._tree_sum(tup))
        return self._w_memo[tup]

    def _tree_sum(self, tup) -> dict:
        out = {}
        for coeff, left, right in two_block_splits(self.x.kind, tup, self.alphabet):
            lsign = class_degree(left, self.alphabet) & 1
            sign = Fraction(coeff) * (-1 if lsign else 1)
            prod = self.x.structure.mul(self._branch(left), self._branch(right))
            add_into(out, prod, sign)
        return out

    def _transfer_value(self, tup) -> dict:
        return self._apply_p(self._tree_sum(tup))

    # -- component views ----------------------------------------------------

    def _slot_kind(self, tup):
        sd = self.sd
        r = len(tup)
        m_letters = sum(1 for t in tup if t >= sd.dim_a)
        if r == 2 and m_letters == 0:
            return "A"
        if r == 2 and m_letters == 1:
            return "M"
        if r == self.x.n + 2 and m_letters == 0:
            return "top"
        return None

    def _check_slots(self):
        sd = self.sd
        for tup, val in self.values.items():
            kind = self._slot_kind(tup)
            if kind is None and val:
                raise StructureError(
                    f"transferred value outside the three allowed components: {tup}")
            if kind == "A" and any(i >= sd.dim_a for i in val):
                raise StructureError(f"arity-2 value left the base algebra: {tup}")
            if kind in ("M", "top") and any(i < sd.dim_a for i in val):
                raise StructureError(f"shifted value left the module: {tup}")

    def mu_A(self, tup) -> dict:
        return {i: c for i, c in self.values.get(tup, {}).items() if i < self.sd.dim_a}

    def mu_M(self, tup) -> dict:
        return {i - self.sd.dim_a: c for i, c in self.values.get(tup, {}).items()
                if i >= self.sd.dim_a}

    def mu_top(self, tup) -> dict:
        return self.mu_M(tup)

    # -- the twisting identity ----------------------------------------------

    def twisting_residues(self):
        """mu*mu on every class up to the bound; empty means the transferred
        data is an honest twisting map (the differentials vanish, so the
        bar term is absent)."""
        residues = []
        for r in range(2, self.arity_bound + 1):
            for tup in enumerate_classes(self.x.kind, self.alphabet, r):
                total = {}
                for coeff, pre, inner, post in split_one(self.x.kind, tup, self.alphabet):
                    if len(inner) < 2:
                        continue
                    inner_val = self.values.get(inner, {})
                    if not inner_val:
                        continue
                    prefix = block_map_prefix_sign(1, pre, self.alphabet)
                    base = Fraction(coeff * prefix)
                    for letter, c in inner_val.items():
                        nsign, canon = normalize_class(
                            self.x.kind, pre + (letter,) + post, self.alphabet)
                        if not nsign:
                            continue
                        outer_val = self.values.get(canon, {})
                        if len(canon) == 1:
                            outer_val = {}
                        add_into(total, outer_val, base * c * nsign)
                if total:
                    residues.append((tup, sorted(total.items())))
        return residues


def htt_transfer(x: CrossedModule, contraction: Contraction,
                 arity_bound: int) -> TransferredStructure:
    """Transfer the structure across the contraction; verifies the twisting
    identity and the three-component support."""
    if arity_bound < x.n + 2:
        raise InputError("arity bound too small to see the top component")
    t = TransferredStructure(x, contraction, arity_bound)
    residues = t.twisting_residues()
    if residues:
        raise StructureError(f"transferred structure fails the twisting identity: "
                             f"{residues[:3]}")
    return t


def extract_cocycle(t: TransferredStructure, cochains: CochainComplex | None = None) -> Cochain:
    """The top transferred component, desuspended into a cochain of degree n+1.

    Re-verified to be a cocycle; a failure here would mean a sign fault in
    the transfer machinery.
    """
    x = t.x
    if cochains is None:
        cochains = CochainComplex(x.algebra, x.module, x.n + 2)
    m = x.n + 1
    values = [Fraction(0)] * cochains.cochain_dim(m)
    for ci, tup in enumerate(cochains.slice(m)):
        val = t.mu_top(tup)
        for b, c in val.items():
            values[cochains.flat_index(m, ci, b)] = c
    g = Cochain(cochains, m, values)
    if not cochains.is_cocycle(g):
        raise StructureError("extracted cochain is not closed; sign conventions broken")
    return g


def cocycle_of(x: CrossedModule, arity_bound: int | None = None,
               cochains: CochainComplex | None = None, order: str = "asc"):
    """The cohomology class attached to a crossed module."""
    bound = arity_bound or (x.n + 2)
    c = contraction_of(x, order=order)
    t = htt_transfer(x, c, bound)
    g = extract_cocycle(t, cochains)
    return g.complex.class_data(g)
