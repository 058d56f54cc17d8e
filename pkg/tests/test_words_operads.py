import itertools
import random
from fractions import Fraction

import pytest

from opcrossed.errors import InputError
from opcrossed import words as W
from opcrossed.operads import (CooperadDatum, OperadDatum, builtin_assoc, builtin_lie,
                               check_twisting, _perm_block_embed, _perm_block_subst)


def eval_word(w, args):
    """Free-monoid semantics: multiply the strings in word order."""
    return "".join(args[x] for x in w)


def test_word_act_is_right_action():
    rng = random.Random(11)
    for _ in range(50):
        r = rng.randint(2, 5)
        w = tuple(rng.sample(range(r), r))
        s = tuple(rng.sample(range(r), r))
        t = tuple(rng.sample(range(r), r))
        assert W.word_act(W.word_act(w, s), t) == W.word_act(w, W.perm_compose(s, t))


def test_word_act_semantics():
    # (f . tau)(a_1..a_r) = f applied to the tau-permuted tuple
    rng = random.Random(12)
    for _ in range(50):
        r = rng.randint(2, 5)
        w = tuple(rng.sample(range(r), r))
        tau = tuple(rng.sample(range(r), r))
        args = [chr(97 + i) for i in range(r)]
        permuted = [args[W.perm_inverse(tau)[i]] for i in range(r)]
        assert eval_word(W.word_act(w, tau), args) == eval_word(w, permuted)


def test_word_subst_semantics():
    rng = random.Random(13)
    for _ in range(80):
        p = rng.randint(1, 4)
        q = rng.randint(1, 4)
        w = tuple(rng.sample(range(p), p))
        v = tuple(rng.sample(range(q), q))
        i = rng.randrange(p)
        args = [chr(97 + t) for t in range(p + q - 1)]
        inner = eval_word(v, args[i:i + q])
        outer_args = args[:i] + [inner] + args[i + q:]
        assert eval_word(W.word_subst(w, i, v), args) == eval_word(w, outer_args)


def test_perm_block_identities():
    rng = random.Random(14)
    for _ in range(150):
        p = rng.randint(2, 4)
        q = rng.randint(1, 3)
        w = tuple(rng.sample(range(p), p))
        v = tuple(rng.sample(range(q), q))
        sigma = tuple(rng.sample(range(p), p))
        tau = tuple(rng.sample(range(q), q))
        i = rng.randrange(p)
        lhs = W.word_subst(W.word_act(w, sigma), i, v)
        rhs = W.word_act(W.word_subst(w, sigma[i], v), _perm_block_subst(sigma, i, q))
        assert lhs == rhs
        lhs2 = W.word_subst(w, i, W.word_act(v, tau))
        rhs2 = W.word_act(W.word_subst(w, i, v), _perm_block_embed(tau, i, p + q - 1))
        assert lhs2 == rhs2


def test_leftnormed_expansion_antisymmetry_and_jacobi():
    # [[x0,x1]] expansion
    e = W.expand_leftnormed((0, 1))
    assert e == {(0, 1): 1, (1, 0): -1}
    # Jacobi: [[0,1],2] + [[1,2],0] + [[2,0],1] = 0 in the word span
    total = {}
    for c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        for w, v in W.expand_leftnormed(c).items():
            total[w] = total.get(w, 0) + v
    assert all(v == 0 for v in total.values())


def test_dim_counts():
    op, co, _ = builtin_assoc(4)
    assert op.basis.dim(2) == 2
    assert op.basis.dim(3) == 6
    assert co.basis.dim(3) == 6
    assert co.basis.degree(3) == 2
    lop, lco, _ = builtin_lie(4)
    assert lop.basis.dim(3) == 2
    assert lop.basis.dim(4) == 6
    assert lco.basis.dim(3) == 1
    assert lco.basis.degree(2) == 1


def test_lie_dual_sign_representation():
    _, lco, _ = builtin_lie(3)
    m = lco.basis.transposition_matrix(2, 0)
    assert m.data == ((Fraction(-1),),)


def test_bound_too_small():
    with pytest.raises(InputError):
        builtin_assoc(1)
    with pytest.raises(InputError):
        builtin_lie(1)


def test_operad_validate_assoc():
    op, _, _ = builtin_assoc(4)
    assert op.validate(4) == []


def test_operad_validate_lie():
    op, _, _ = builtin_lie(4)
    assert op.validate(4) == []


def test_coxeter_cooperads():
    for build in (builtin_assoc, builtin_lie):
        _, co, _ = build(4)
        assert co.basis.check_coxeter(4) == []


def test_twisting_morphism_zero_off_arity_two():
    op, co, al = builtin_assoc(4)
    assert al.table(3, 0) == {}
    lop, lco, lal = builtin_lie(4)
    assert lal.table(3, 0) == {}
    assert lal.table(2, 0) == {0: Fraction(1)}


def test_maurer_cartan_assoc():
    op, co, al = builtin_assoc(6)
    assert check_twisting(op, co, al, 6) == []


def test_maurer_cartan_lie():
    op, co, al = builtin_lie(6)
    assert check_twisting(op, co, al, 6) == []


def test_lie_compose_matches_bracket_substitution():
    op, _, _ = builtin_lie(4)
    # [x0,x1] o_0 [x0,x1] = [[x0,x1],x2] expansion check
    d = op.compose(2, 0, 0, 2, 0)
    total = {}
    for k, v in d.items():
        for w, c in W.expand_leftnormed(W.leftnormed_words(3)[k]).items():
            total[w] = total.get(w, 0) + v * c
    direct = {}
    for w1, v1 in W.expand_leftnormed((0, 1)).items():
        for w2, v2 in W.expand_leftnormed((0, 1)).items():
            w = W.word_subst(w1, 0, w2)
            direct[w] = direct.get(w, 0) + v1 * v2
    direct = {w: v for w, v in direct.items() if v}
    total = {w: v for w, v in total.items() if v}
    assert total == direct
