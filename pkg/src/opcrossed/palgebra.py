"""Algebras and modules over the built-in operads, given by binary
structure constants, plus the split extension carrying a module in a
shifted degree.

Every operad basis element of the built-ins is an iterated composition
of the binary generator, so structure maps of any arity are evaluated by
folding the binary table; the per-element multilinear tensors the rest
of the package consumes are produced (and cached) from that fold.
Evaluation on graded tuples applies the Koszul sign of rearranging the
arguments into the element's multiplication order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .schur import ASSOC, LIE
from .signs import koszul_rearrange_sign
from . import words as W


def add_into(acc: dict, d: dict, c=Fraction(1)):
    for k, v in d.items():
        x = acc.get(k, Fraction(0)) + c * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


def scale_dict(c, d: dict) -> dict:
    c = Fraction(c)
    return {k: c * v for k, v in d.items() if c * v}


class BinaryStructure:
    """A graded carrier with a bilinear product table for one operad kind."""

    def __init__(self, kind: str, labels, degrees, table: dict):
        if kind not in (ASSOC, LIE):
            raise InputError(f"unknown operad kind {kind!r}")
        self.kind = kind
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate carrier labels")
        self.degrees = tuple(int(d) for d in degrees)
        self.index = {x: i for i, x in enumerate(self.labels)}
        self.table = {}
        for (i, j), d in table.items():
            d = {k: Fraction(v) for k, v in d.items() if Fraction(v)}
            if d:
                self.table[(int(i), int(j))] = d

    @property
    def dim(self):
        return len(self.labels)

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                t = self.table.get((i, j))
                if t:
                    add_into(out, t, a * b)
        return out

    def basis_vec(self, i: int) -> dict:
        return {i: Fraction(1)}

    def elements(self, r: int):
        return W.words(r) if self.kind == ASSOC else W.leftnormed_words(r)

    def eval_key(self, key, args) -> dict:
        """Evaluate one operad basis element (a word) on sparse arguments.

        The rearrangement into multiplication order contributes the Koszul
        sign of the argument degrees; inhomogeneous arguments are split
        into their homogeneous parts first.
        """
        parts = [self._split_homogeneous(a) for a in args]
        out = {}
        import itertools
        for combo in itertools.product(*parts):
            degs = [d for d, _ in combo]
            sign = koszul_rearrange_sign(key, degs)
            acc = combo[key[0]][1]
            for t in key[1:]:
                acc = self.mul(acc, combo[t][1])
            add_into(out, acc, sign)
        return out

    def _split_homogeneous(self, a: dict):
        by_deg = {}
        for i, c in a.items():
            by_deg.setdefault(self.degrees[i], {})[i] = c
        if not by_deg:
            return [(0, {})]
        return sorted(by_deg.items())

    @lru_cache(maxsize=None)
    def tensor(self, r: int, k: int):
        """Dense multilinear tensor of the k-th arity-r operad basis element.

        Maps basis index tuples to sparse output dicts; cached on demand.
        """
        import itertools
        key = self.elements(r)[k]
        out = {}
        for tup in itertools.product(range(self.dim), repeat=r):
            val = self.eval_key(key, [self.basis_vec(i) for i in tup])
            if val:
                out[tup] = val
        return out

    # -- axiom sweeps -----------------------------------------------------

    def validate_axioms(self, arity_bound: int = 4):
        """Compatibility with partial composition plus equivariance, exact."""
        from .operads import OperadDatum
        op = OperadDatum(self.kind, max(arity_bound, 2))
        failures = []
        failures += self._compat_sweep(op, arity_bound)
        failures += self._equivariance_sweep(op, arity_bound)
        return failures

    def _tuples(self, r: int):
        import itertools
        return itertools.product(range(self.dim), repeat=r)

    def _compat_sweep(self, op, bound):
        failures = []
        for p in range(2, bound + 1):
            for s in range(2, bound + 1):
                r = p + s - 1
                if r > bound:
                    continue
                for k1, key1 in enumerate(op.elements(p)):
                    for k2, key2 in enumerate(op.elements(s)):
                        for i in range(p):
                            composed = op.compose(p, k1, i, s, k2)
                            for tup in self._tuples(r):
                                args = [self.basis_vec(t) for t in tup]
                                lhs = {}
                                for k, c in composed.items():
                                    add_into(lhs, self.eval_key(op.elements(r)[k], args), c)
                                inner = self.eval_key(key2, args[i:i + s])
                                outer_args = args[:i] + [inner] + args[i + s:]
                                rhs = self.eval_key(key1, outer_args)
                                if lhs != rhs:
                                    failures.append(
                                        ("compose", p, k1, i, s, k2, tup))
        return failures

    def _equivariance_sweep(self, op, bound):
        failures = []
        for r in range(2, bound + 1):
            for t in range(r - 1):
                tau = W.transposition(r, t)
                inv = W.perm_inverse(tau)
                for k, key in enumerate(op.elements(r)):
                    acted = op.act(r, k, tau)
                    for tup in self._tuples(r):
                        args = [self.basis_vec(x) for x in tup]
                        lhs = {}
                        for k2, c in acted.items():
                            add_into(lhs, self.eval_key(op.elements(r)[k2], args), c)
                        degs = [self.degrees[x] for x in tup]
                        sign = koszul_rearrange_sign(inv, degs)
                        permuted = [args[inv[x]] for x in range(r)]
                        rhs = scale_dict(sign, self.eval_key(key, permuted))
                        if lhs != rhs:
                            failures.append(("equivariance", r, k, t, tup))
        return failures


class AlgebraDatum(BinaryStructure):
    """A degree-zero algebra over one of the built-in operads."""

    def __init__(self, kind: str, labels, table: dict):
        super().__init__(kind, labels, [0] * len(tuple(labels)), table)

    @staticmethod
    def from_triples(kind, labels, triples):
        labels = tuple(labels)
        idx = {x: i for i, x in enumerate(labels)}
        table = {}
        for li, lj, coeffs in triples:
            if li not in idx or lj not in idx:
                raise InputError(f"structure constant references unknown label {li!r}/{lj!r}")
            cell = table.setdefault((idx[li], idx[lj]), {})
            for lk, v in coeffs.items():
                if lk not in idx:
                    raise InputError(f"structure constant targets unknown label {lk!r}")
                cell[idx[lk]] = cell.get(idx[lk], Fraction(0)) + Fraction(v)
        return AlgebraDatum(kind, labels, table)


def validate_algebra(alg: BinaryStructure, arity_bound: int = 4):
    """Empty report iff the structure satisfies the operad axioms."""
    return alg.validate_axioms(arity_bound)


class ModuleDatum:
    """A degree-zero module over an AlgebraDatum.

    For the associative operad both one-slot actions are stored (algebra
    element acting from the position before or after the module slot);
    the Lie bracket needs only one and the other is its negative.
    """

    def __init__(self, algebra: AlgebraDatum, labels, left: dict, right: dict | None = None):
        self.algebra = algebra
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate module labels")
        self.index = {x: i for i, x in enumerate(self.labels)}
        self.left = {k: {m: Fraction(v) for m, v in d.items() if Fraction(v)}
                     for k, d in left.items()}
        if algebra.kind == LIE:
            if right is not None:
                raise InputError("Lie modules carry a single action table")
            self.right = {(m, i): scale_dict(-1, d) for (i, m), d in self.left.items()}
        else:
            if right is None:
                raise InputError("associative modules need both action tables")
            self.right = {k: {m: Fraction(v) for m, v in d.items() if Fraction(v)}
                          for k, d in right.items()}

    @property
    def dim(self):
        return len(self.labels)

    def act_left(self, i: int, m: int) -> dict:
        return dict(self.left.get((i, m), {}))

    def act_right(self, m: int, i: int) -> dict:
        return dict(self.right.get((m, i), {}))


def validate_module(mod: ModuleDatum, arity_bound: int = 4):
    """Module axioms, checked on the degree-zero split extension."""
    return semidirect(mod.algebra, mod, 0, _allow_zero=True).validate_axioms(arity_bound)


class SemidirectDatum(BinaryStructure):
    """The algebra structure on A + M[n] with zero differential.

    Products with two module slots vanish for degree reasons; one module
    slot transports the module action into degree n.
    """

    def __init__(self, algebra: AlgebraDatum, module: ModuleDatum, n: int):
        self.algebra = algebra
        self.module = module
        self.n = n
        da = algebra.dim
        labels = ["a." + x for x in algebra.labels] + ["m." + x for x in module.labels]
        degrees = [0] * da + [n] * module.dim
        table = {}
        for (i, j), d in algebra.table.items():
            table[(i, j)] = dict(d)
        for (i, m), d in module.left.items():
            table[(i, da + m)] = {da + k: v for k, v in d.items()}
        for (m, i), d in module.right.items():
            table[(da + m, i)] = {da + k: v for k, v in d.items()}
        super().__init__(algebra.kind, labels, degrees, table)
        self.dim_a = da

    def project_a(self, v: dict) -> dict:
        return {i: c for i, c in v.items() if i < self.dim_a}

    def project_m(self, v: dict) -> dict:
        return {i - self.dim_a: c for i, c in v.items() if i >= self.dim_a}

    def inject_a(self, v: dict) -> dict:
        return dict(v)

    def inject_m(self, v: dict) -> dict:
        return {i + self.dim_a: c for i, c in v.items()}


def semidirect(algebra: AlgebraDatum, module: ModuleDatum, n: int,
               _allow_zero: bool = False) -> SemidirectDatum:
    """Split extension of the algebra by the module shifted into degree n."""
    if n < 1 and not _allow_zero:
        raise InputError("the module shift must be at least 1")
    return SemidirectDatum(algebra, module, n)
