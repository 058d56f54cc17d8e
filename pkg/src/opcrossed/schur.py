"""Classes of the Koszul-dual cooperads applied to a graded alphabet.

For the associative side a class in arity r is an ordered tuple of
letters (the regular-representation orbit of the tensor basis collapses
onto ordered tuples); for the Lie side it is a sorted tuple surviving
the graded sign rule. A letter holding a degree-d basis vector works in
degree d+1 (see signs.py), which is what turns the Lie coinvariants into
the graded exterior algebra and fixes every decomposition sign below.

Decomposition terms are produced in-place: `split_one` keeps the inner
block where it stood (associative) or moves it to the front slot (Lie),
and the block split-off costs the uniform -1 of the s s^{-1} rule.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import InputError
from .graded import GradedSpace
from .signs import koszul_rearrange_sign, sort_letters

ASSOC = "assoc"
LIE = "lie"
KINDS = (ASSOC, LIE)


class Alphabet:
    """A finite graded set of letters, indexed once and for all."""

    def __init__(self, labels, degrees):
        self.labels = tuple(str(x) for x in labels)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.labels) != len(self.degrees):
            raise InputError("alphabet labels and degrees differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate alphabet labels")
        self.index = {x: i for i, x in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def sdeg(self, i: int) -> int:
        """Working degree of the suspended letter."""
        return self.degrees[i] + 1


def class_degree(tup, alphabet: Alphabet) -> int:
    return len(tup) - 1 + sum(alphabet.degrees[i] for i in tup)


def normalize_class(kind: str, tup, alphabet: Alphabet):
    """Canonical representative of a decorated tensor, with its sign.

    Returns (sign, tuple) with sign 0 and tuple None when the class dies
    (repeated letter of even suspended degree on the Lie side).
    """
    if kind == ASSOC:
        return 1, tuple(tup)
    if kind == LIE:
        degs = [alphabet.sdeg(i) for i in tup]
        sign, order = sort_letters(list(tup), degs)
        if sign == 0:
            return 0, None
        return sign, tuple(tup[t] for t in order)
    raise InputError(f"unknown cooperad kind {kind!r}")


def enumerate_classes(kind: str, alphabet: Alphabet, arity: int):
    """Canonical class tuples of one arity, in lexicographic order."""
    n = len(alphabet)
    if kind == ASSOC:
        return [tup for tup in itertools.product(range(n), repeat=arity)]
    out = []
    for tup in itertools.combinations_with_replacement(range(n), arity):
        sign, canon = normalize_class(LIE, tup, alphabet)
        if sign == 1 and canon == tup:
            out.append(tup)
    return out


def split_one(kind: str, tup, alphabet: Alphabet):
    """Proper single-block decompositions of a class.

    Yields (coeff, pre, inner, post): the inner block replaces the slot at
    position len(pre) of the outer class, whose arity stays >= 2, so the
    block size runs from 1 (a bare letter) to r-1. On the Lie side the
    block always moves to the front slot, pre == ().
    """
    r = len(tup)
    out = []
    if kind == ASSOC:
        for q in range(1, r):
            for i in range(r - q + 1):
                out.append((-1, tup[:i], tup[i:i + q], tup[i + q:]))
        return out
    if kind == LIE:
        sdegs = [alphabet.sdeg(i) for i in tup]
        for q in range(1, r):
            for subset in itertools.combinations(range(r), q):
                inner = tuple(tup[t] for t in subset)
                rest = tuple(tup[t] for t in range(r) if t not in subset)
                order = list(subset) + [t for t in range(r) if t not in subset]
                sign = koszul_rearrange_sign(order, sdegs)
                out.append((-sign, (), inner, rest))
        return out
    raise InputError(f"unknown cooperad kind {kind!r}")


def two_block_splits(kind: str, tup, alphabet: Alphabet):
    """Decompositions into an ordered pair of blocks filling a binary root.

    Yields (coeff, left, right); both blocks nonempty. Lie pairs are
    enumerated once, with the first letter kept in the left block.
    """
    r = len(tup)
    out = []
    if kind == ASSOC:
        for t in range(1, r):
            out.append((1, tup[:t], tup[t:]))
        return out
    if kind == LIE:
        sdegs = [alphabet.sdeg(i) for i in tup]
        for q in range(1, r):
            for subset in itertools.combinations(range(1, r), q - 1):
                left_pos = (0,) + subset
                right_pos = tuple(t for t in range(1, r) if t not in subset)
                order = list(left_pos) + list(right_pos)
                sign = koszul_rearrange_sign(order, sdegs)
                out.append((sign, tuple(tup[t] for t in left_pos),
                            tuple(tup[t] for t in right_pos)))
        return out
    raise InputError(f"unknown cooperad kind {kind!r}")


def desuspension_sign(tup, alphabet: Alphabet) -> int:
    """Sign of unwrapping every letter of a block before a multilinear map.

    This is the Koszul cost of the q-fold desuspension hitting the
    suspended letters left to right.
    """
    q = len(tup)
    exp = 0
    for j in range(q - 1):
        exp += (q - 1 - j) * alphabet.sdeg(tup[j])
    return -1 if exp & 1 else 1


def block_map_prefix_sign(map_degree: int, pre, alphabet: Alphabet) -> int:
    """Sign for carrying a map to the block sitting after the letters `pre`."""
    total = sum(alphabet.sdeg(i) for i in pre)
    return -1 if (map_degree * total) & 1 else 1


def _class_label(kind: str, tup, alphabet: Alphabet) -> str:
    sep = "|" if kind == ASSOC else "^"
    return "(" + sep.join(alphabet.labels[i] for i in tup) + ")"


def schur_apply(kind: str, space: GradedSpace, degree_bound: int, arity_bound: int,
                tag: str = "") -> GradedSpace:
    """Graded basis of the cooperad applied to a space, up to the bounds.

    Coinvariants are resolved by the orbit analysis of normalize_class:
    each surviving orbit contributes its canonical representative.
    """
    letters = []
    degrees = []
    for k in space.support():
        if k < 0:
            raise InputError("negative-degree input to the Schur functor")
        for lab in space.labels(k):
            letters.append(lab)
            degrees.append(k)
    alphabet = Alphabet(letters, degrees)
    out = {}
    for r in range(1, arity_bound + 1):
        for tup in enumerate_classes(kind, alphabet, r):
            d = class_degree(tup, alphabet)
            if d <= degree_bound:
                out.setdefault(d, []).append(tag + _class_label(kind, tup, alphabet))
    return GradedSpace(out)


def analytic_split(kind: str, a_space: GradedSpace, n_space: GradedSpace,
                   linear_count: int, degree_bound: int, arity_bound: int) -> GradedSpace:
    """Sub-basis of the classes on A + N with exactly `linear_count` N-letters."""
    letters = []
    degrees = []
    is_n = []
    for space, flag, prefix in ((a_space, False, "A."), (n_space, True, "N.")):
        for k in space.support():
            if k < 0:
                raise InputError("negative-degree input to the Schur functor")
            for lab in space.labels(k):
                letters.append(prefix + lab)
                degrees.append(k)
                is_n.append(flag)
    alphabet = Alphabet(letters, degrees)
    out = {}
    for r in range(1, arity_bound + 1):
        for tup in enumerate_classes(kind, alphabet, r):
            if sum(1 for i in tup if is_n[i]) != linear_count:
                continue
            d = class_degree(tup, alphabet)
            if d <= degree_bound:
                out.setdefault(d, []).append(_class_label(kind, tup, alphabet))
    return GradedSpace(out)
