"""Permutation-word calculus for the associative operad and the free Lie
expansion used to realize the Lie operad inside it.

A word of arity r is a tuple holding each of 0..r-1 once; it stands for
the operation multiplying its inputs in the listed order. Left-normed
Lie monomials are words starting with 0; their expansions live in the
span of all words and linear algebra moves elements back to the
left-normed basis.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .errors import StructureError
from .linalg import Matrix, PreparedSolve


@lru_cache(maxsize=None)
def words(r: int):
    """All permutation words of arity r in lexicographic order."""
    return tuple(itertools.permutations(range(r)))


@lru_cache(maxsize=None)
def word_index(r: int):
    return {w: i for i, w in enumerate(words(r))}


def perm_inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_compose(a, b):
    """a after b as functions: (a o b)(i) = a[b[i]]."""
    return tuple(a[x] for x in b)


def transposition(r: int, i: int):
    """Adjacent transposition swapping i and i+1 (0-based)."""
    p = list(range(r))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def word_act(w, tau):
    """Right symmetric-group action on words: w . tau = tau^{-1} o w."""
    inv = perm_inverse(tau)
    return tuple(inv[x] for x in w)


def word_subst(w, i, v):
    """Substitute the arity-|v| word v into input slot i of w."""
    q = len(v)
    out = []
    for x in w:
        if x < i:
            out.append(x)
        elif x == i:
            out.extend(y + i for y in v)
        else:
            out.append(x + q - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def leftnormed_words(r: int):
    """Left-normed Lie monomial indices: words fixing 0 first, lexicographic."""
    if r == 1:
        return ((0,),)
    return tuple((0,) + rest for rest in itertools.permutations(range(1, r)))


def expand_leftnormed(c):
    """Expansion of [[x_{c0}, x_{c1}], ..., x_{c_{r-1}}] over words.

    Coefficients are plain integers; the operad lives in degree 0.
    """
    terms = {(c[0],): 1}
    for letter in c[1:]:
        nxt = {}
        for w, coeff in terms.items():
            left = w + (letter,)
            right = (letter,) + w
            nxt[left] = nxt.get(left, 0) + coeff
            nxt[right] = nxt.get(right, 0) - coeff
        terms = nxt
    return {w: v for w, v in terms.items() if v}


@lru_cache(maxsize=None)
def _lie_solver(r: int):
    """PreparedSolve expressing word vectors in the left-normed basis."""
    ws = words(r)
    widx = word_index(r)
    cols = []
    for c in leftnormed_words(r):
        col = [Fraction(0)] * len(ws)
        for w, v in expand_leftnormed(c).items():
            col[widx[w]] = Fraction(v)
        cols.append(col)
    return PreparedSolve(Matrix.from_cols(cols, rows=len(ws)))


def lie_express(r: int, word_vec):
    """Coordinates of a word-span vector in the left-normed basis."""
    x = _lie_solver(r).solve(tuple(Fraction(v) for v in word_vec))
    if x is None:
        raise StructureError(f"vector is not in the multilinear Lie part at arity {r}")
    return x


def lie_express_dict(r: int, terms: dict):
    """Same as lie_express but from a sparse dict word -> coefficient."""
    ws = words(r)
    widx = word_index(r)
    vec = [Fraction(0)] * len(ws)
    for w, v in terms.items():
        vec[widx[w]] += Fraction(v)
    return lie_express(r, vec)
