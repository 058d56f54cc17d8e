from math import comb

from opcrossed.graded import GradedSpace
from opcrossed.schur import (ASSOC, LIE, Alphabet, analytic_split, class_degree,
                             enumerate_classes, normalize_class, schur_apply)


def degree_zero(n):
    return GradedSpace({0: [f"x{i}" for i in range(n)]})


def slice_dim(space, m):
    return space.dim(m)


def test_assoc_dims_power_rule():
    # degree-m slice of the dual applied to a degree-0 space has dim a^(m+1)
    for a in (1, 2, 3):
        sp = schur_apply(ASSOC, degree_zero(a), 4, 6)
        for m in range(0, 5):
            assert slice_dim(sp, m) == a ** (m + 1)


def test_lie_dims_binomial_rule():
    for a in (1, 2, 3):
        sp = schur_apply(LIE, degree_zero(a), 4, 6)
        for m in range(0, 5):
            assert slice_dim(sp, m) == comb(a, m + 1)


def test_assoc_one_dim_degree_two_slice():
    sp = schur_apply(ASSOC, degree_zero(1), 2, 4)
    assert sp.dim(2) == 1


def test_lie_exterior_square():
    sp = schur_apply(LIE, degree_zero(2), 1, 3)
    assert sp.dim(1) == 1  # wedge of the two letters


def test_zero_space():
    sp = schur_apply(ASSOC, GradedSpace({}), 3, 4)
    assert sp.support() == []


def test_analytic_split_zero_linear_matches_plain():
    a = degree_zero(2)
    n = GradedSpace({0: ["u"]})
    split = analytic_split(ASSOC, a, n, 0, 3, 4)
    plain = schur_apply(ASSOC, a, 3, 4)
    assert [split.dim(m) for m in range(4)] == [plain.dim(m) for m in range(4)]


def test_analytic_split_one_slot_count():
    # arity-2 part with exactly one N-letter over 1-dim A and N: the two
    # planar orders stay distinct
    a = degree_zero(1)
    n = GradedSpace({0: ["u"]})
    split = analytic_split(ASSOC, a, n, 1, 1, 2)
    assert split.dim(1) == 2


def test_analytic_split_too_many_slots():
    a = degree_zero(1)
    n = GradedSpace({0: ["u"]})
    split = analytic_split(ASSOC, a, n, 5, 6, 3)
    assert split.support() == []


def test_lie_graded_survival():
    # a repeated letter survives the wedge exactly when its degree is odd
    odd = Alphabet(["m"], [1])
    sign, canon = normalize_class(LIE, (0, 0), odd)
    assert sign == 1 and canon == (0, 0)
    even = Alphabet(["a"], [0])
    sign, canon = normalize_class(LIE, (0, 0), even)
    assert sign == 0 and canon is None
    assert enumerate_classes(LIE, odd, 2) == [(0, 0)]
    assert enumerate_classes(LIE, even, 2) == []


def test_class_degree():
    al = Alphabet(["a", "m"], [0, 1])
    assert class_degree((0, 0), al) == 1
    assert class_degree((0, 1), al) == 2
    assert class_degree((0,), al) == 0
