from fractions import Fraction

import pytest

from opcrossed import catalog
from opcrossed.cochain import CochainComplex
from opcrossed.crossed import from_ideal, trivial
from opcrossed.errors import InputError
from opcrossed.graded import ChainComplex, GradedSpace
from opcrossed.linalg import Matrix
from opcrossed.schur import ASSOC, LIE
from opcrossed.transfer import (build_contraction, cocycle_of, contraction_of,
                                extract_cocycle, htt_transfer)


def trivial_case(kind=ASSOC, n=1):
    alg = catalog.dual_numbers() if kind == ASSOC else catalog.nonabelian2()
    mod = catalog.regular_module(alg) if kind == ASSOC else catalog.trivial_module(alg)
    return trivial(alg, mod, n)


def ideal_case():
    alg = catalog.dual_numbers()
    return from_ideal(alg, [(Fraction(0), Fraction(1))], catalog.zero_module(alg))


def test_contraction_zero_differential():
    x = trivial_case()
    c = contraction_of(x)
    assert c.validate() == []
    assert not c.h  # nothing to contract
    for k in (0, 1):
        assert (c.p_at(k) @ c.i_at(k)).data == Matrix.identity(c.small.dim(k)).data


def test_contraction_inverts_cone():
    # B = cone(id) + V: h inverts the cone, zero on V
    sp = GradedSpace({0: ["v", "c0"], 1: ["c1"]})
    big = ChainComplex(sp, {1: Matrix.from_rows([[0], [3]])})
    small = GradedSpace({0: ["v"]})
    c = build_contraction(big, small)
    assert c.validate() == []
    # h sends c0 to c1/3 and kills v
    assert c.h_at(0).col(1) == (Fraction(1, 3),)
    assert c.h_at(0).col(0) == (Fraction(0),)


def test_build_contraction_dimension_mismatch():
    sp = GradedSpace({0: ["a", "b"]})
    big = ChainComplex(sp, {})
    with pytest.raises(InputError):
        build_contraction(big, GradedSpace({0: ["only"]}))


def test_two_orders_both_valid():
    big = catalog.truncated_polynomials()
    x = from_ideal(big, [(0, 1, 0), (0, 0, 1)], catalog.zero_module(big))
    for order in ("asc", "desc"):
        c = contraction_of(x, order)
        assert c.validate() == []


def test_transfer_trivial_components():
    for kind in (ASSOC, LIE):
        for n in (1, 2):
            x = trivial_case(kind, n)
            t = htt_transfer(x, contraction_of(x), n + 2)
            sd = x.semidirect_target()
            for tup, val in t.values.items():
                slot = t._slot_kind(tup)
                if slot == "top":
                    assert not val  # trivial module: no top component
                elif slot == "A":
                    assert t.mu_A(tup) == x.algebra.mul(
                        {tup[0]: Fraction(1)}, {tup[1]: Fraction(1)})
                elif slot == "M":
                    prod = sd.mul(sd.basis_vec(tup[0]), sd.basis_vec(tup[1]))
                    sign = 1
                    if sd.degrees[tup[0]] == n:
                        sign = (-1) ** n  # block-first convention
                    assert val == {k: Fraction(sign) * v for k, v in prod.items()}


def test_transfer_mu_A_closed_formula():
    # mu_A(a, b) = p(mu_B(i a, i b)) exactly, on a module with d != 0
    x = ideal_case()
    c = contraction_of(x)
    t = htt_transfer(x, c, 3)
    sd = x.semidirect_target()
    for a in range(sd.dim_a):
        for b in range(sd.dim_a):
            direct = t._apply_p(x.structure.mul(t._leaf(a), t._leaf(b)))
            assert t.values[(a, b)] == direct


def test_transfer_rejects_small_bound():
    x = trivial_case()
    with pytest.raises(InputError):
        htt_transfer(x, contraction_of(x), 2)


def test_extract_cocycle_trivial_and_ideal():
    for x in (trivial_case(ASSOC, 1), trivial_case(LIE, 1), ideal_case()):
        t = htt_transfer(x, contraction_of(x), x.n + 2)
        g = extract_cocycle(t)
        assert g.is_zero()
        assert g.complex.is_cocycle(g)


def test_cocycle_of_trivial_is_zero_class():
    for kind in (ASSOC, LIE):
        for n in (1, 2):
            x = trivial_case(kind, n)
            cls = cocycle_of(x)
            assert cls.is_zero()


def test_heisenberg_center_ideal():
    h = catalog.heisenberg()
    x = from_ideal(h, [(0, 0, 1)], catalog.zero_module(h))
    assert x.validate(3) == []
    cls = cocycle_of(x)
    assert cls.is_zero()


def test_twisting_residues_checked():
    # the constructor re-checks the twisting identity; a corrupted homotopy
    # must be caught by the contraction validator instead
    x = ideal_case()
    c = contraction_of(x)
    broken_h = {k: m.scale(2) for k, m in c.h.items()}
    from opcrossed.errors import StructureError
    from opcrossed.transfer import Contraction
    with pytest.raises(StructureError):
        Contraction(x.complex, c.small, c.i, c.p, broken_h)
