"""A small library of algebras and modules used by tests, the verify
sweep, and the seeded random families.

Random samples are valid by construction: they are base-change
conjugates of catalogued structures, so associativity and Jacobi survive
exactly while the structure constants look generic.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError
from .linalg import Matrix
from .palgebra import AlgebraDatum, ModuleDatum
from .schur import ASSOC, LIE

F1 = Fraction(1)


def zero_algebra(kind: str, dim: int = 1) -> AlgebraDatum:
    return AlgebraDatum(kind, [f"x{i}" for i in range(dim)], {})


def ground_field() -> AlgebraDatum:
    """The 1-dimensional algebra with u*u = u."""
    return AlgebraDatum(ASSOC, ["u"], {(0, 0): {0: F1}})


def dual_numbers() -> AlgebraDatum:
    """k[x]/(x^2), basis (1, x)."""
    return AlgebraDatum(ASSOC, ["1", "x"],
                        {(0, 0): {0: F1}, (0, 1): {1: F1}, (1, 0): {1: F1}})


def truncated_polynomials() -> AlgebraDatum:
    """k[x]/(x^3), basis (1, x, x^2)."""
    t = {(0, 0): {0: F1}, (0, 1): {1: F1}, (1, 0): {1: F1},
         (0, 2): {2: F1}, (2, 0): {2: F1}, (1, 1): {2: F1}}
    return AlgebraDatum(ASSOC, ["1", "x", "xx"], t)


def upper_triangular2() -> AlgebraDatum:
    """Upper triangular 2x2 matrices, basis (e11, e12, e22); noncommutative."""
    t = {(0, 0): {0: F1}, (0, 1): {1: F1}, (1, 2): {1: F1}, (2, 2): {2: F1}}
    return AlgebraDatum(ASSOC, ["e11", "e12", "e22"], t)


def abelian_lie(dim: int = 2) -> AlgebraDatum:
    return AlgebraDatum(LIE, [f"x{i}" for i in range(dim)], {})


def nonabelian2() -> AlgebraDatum:
    """The 2-dimensional nonabelian Lie algebra, [x, y] = y."""
    return AlgebraDatum(LIE, ["x", "y"],
                        {(0, 1): {1: F1}, (1, 0): {1: Fraction(-1)}})


def heisenberg() -> AlgebraDatum:
    """[x, y] = z, z central."""
    return AlgebraDatum(LIE, ["x", "y", "z"],
                        {(0, 1): {2: F1}, (1, 0): {2: Fraction(-1)}})


def regular_module(alg: AlgebraDatum) -> ModuleDatum:
    """The algebra acting on itself (both slots for the associative case)."""
    left = {(i, m): dict(d) for (i, m), d in alg.table.items()}
    if alg.kind == LIE:
        return ModuleDatum(alg, alg.labels, left)
    right = {(m, i): dict(d) for (m, i), d in alg.table.items()}
    return ModuleDatum(alg, alg.labels, left, right)


def trivial_module(alg: AlgebraDatum, dim: int = 1) -> ModuleDatum:
    labels = [f"t{i}" for i in range(dim)]
    if alg.kind == LIE:
        return ModuleDatum(alg, labels, {})
    return ModuleDatum(alg, labels, {}, {})


def zero_module(alg: AlgebraDatum) -> ModuleDatum:
    if alg.kind == LIE:
        return ModuleDatum(alg, [], {})
    return ModuleDatum(alg, [], {}, {})


def conjugate_algebra(alg: AlgebraDatum, t: Matrix, labels=None) -> AlgebraDatum:
    """Transport the structure through the base change x_i -> t(e_i)."""
    if t.rows != alg.dim or t.cols != alg.dim:
        raise InputError("base change has the wrong size")
    tinv = t.inverse()
    table = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = alg.mul({k: t.data[k][i] for k in range(alg.dim) if t.data[k][i]},
                           {k: t.data[k][j] for k in range(alg.dim) if t.data[k][j]})
            cell = {}
            for k, c in prod.items():
                for k2 in range(alg.dim):
                    v = tinv.data[k2][k] * c
                    if v:
                        cell[k2] = cell.get(k2, Fraction(0)) + v
            cell = {k: v for k, v in cell.items() if v}
            if cell:
                table[(i, j)] = cell
    return AlgebraDatum(alg.kind, labels or [f"b{i}" for i in range(alg.dim)], table)


def _random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = Matrix(n, n, [[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                          for _ in range(n)])
        try:
            m.inverse()
            return m
        except InputError:
            continue


ASSOC_FAMILY = (zero_algebra, lambda: zero_algebra(ASSOC, 2), ground_field,
                dual_numbers, truncated_polynomials, upper_triangular2)
LIE_FAMILY = (lambda: abelian_lie(1), lambda: abelian_lie(3), nonabelian2, heisenberg)


def random_pair(kind: str, rng: random.Random):
    """A seeded valid (algebra, module) pair of dimension at most 3."""
    if kind == ASSOC:
        base = rng.choice(ASSOC_FAMILY)
        alg = base(ASSOC) if base is zero_algebra else base()
    else:
        alg = rng.choice(LIE_FAMILY)()
    alg = conjugate_algebra(alg, _random_invertible(rng, alg.dim))
    choice = rng.randrange(3)
    if choice == 0:
        mod = regular_module(alg)
    elif choice == 1:
        mod = trivial_module(alg, rng.randint(1, 2))
    else:
        mod = trivial_module(alg, 1)
    return alg, mod
