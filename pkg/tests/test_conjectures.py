import itertools
import random
from fractions import Fraction

import pytest

from canonalg.conjectures import (
    chain_probe,
    check_instance,
    counterexample_suite,
    decide_poly_automorphism,
    decide_weyl_automorphism,
    extension_degree_estimate,
    frobenius_deficit_poly,
    frobenius_deficit_weyl,
    gabber_degree_bound,
    inverse_search_poly,
    kraus_check,
)
from canonalg.poly import Poly, PolyEndo
from canonalg.rings import GF, QQ, ZZ
from canonalg.weyl import WeylAlgebra, WeylEndo, generate_weyl_automorphism


def test_inverse_search_poly_examples():
    F5 = GF(5)
    x1, x2 = Poly.variable(F5, 2, 1), Poly.variable(F5, 2, 2)
    shear = PolyEndo(F5, 2, [x1 + x2**2, x2])
    assert gabber_degree_bound(shear) == 2
    inv, d = inverse_search_poly(shear, 2)
    assert d == 2
    assert inv.images == (x1 - x2**2, x2)

    ident = PolyEndo.identity(QQ, 2)
    inv, d = inverse_search_poly(ident, 1)
    assert inv == ident and d == 1

    F2 = GF(2)
    x = Poly.variable(F2, 1, 1)
    frob = PolyEndo(F2, 1, [x - x**2])
    assert gabber_degree_bound(frob) == 1
    inv, d = inverse_search_poly(frob, 1)
    assert inv is None and d is None


def test_inverse_search_poly_rational_scaling():
    two = PolyEndo(QQ, 1, [Poly.variable(QQ, 1, 1).scale(QQ.of_int(2))])
    inv, d = inverse_search_poly(two, 1)
    assert d == 1
    assert inv.images[0] == Poly.variable(QQ, 1, 1).scale(QQ.of_fraction(Fraction(1, 2)))


def test_inverse_search_needs_field():
    with pytest.raises(ValueError):
        inverse_search_poly(PolyEndo.identity(ZZ, 1), 1)


def test_extension_degree_m1():
    F5 = GF(5)
    squaring = PolyEndo(F5, 1, [Poly.variable(F5, 1, 1) ** 2])
    rep = extension_degree_estimate(squaring)
    assert rep.exact and rep.estimate == 2
    assert rep.separable is False  # gcd(X^2, 2X) = X
    assert rep.max_fiber == 2  # fibers over the nonzero squares

    F2 = GF(2)
    rep = extension_degree_estimate(frobenius_deficit_poly(F2, 1))
    assert rep.exact and rep.estimate == 2 and rep.separable is True
    assert rep.estimate % 2 == 0  # the hypothesis CJC drops fails here

    ident = PolyEndo.identity(GF(7), 1)
    assert extension_degree_estimate(ident).estimate == 1


def test_extension_degree_m2_and_blowup():
    F3 = GF(3)
    x1, x2 = Poly.variable(F3, 2, 1), Poly.variable(F3, 2, 2)

    rep = extension_degree_estimate(PolyEndo(F3, 2, [x1, x2**2]))
    assert not rep.exact and rep.estimate == 2 and not rep.not_finite

    collapse = PolyEndo(F3, 2, [x1, x1])
    rep = extension_degree_estimate(collapse)
    assert rep.not_finite

    with pytest.raises(ValueError):
        extension_degree_estimate(PolyEndo.identity(QQ, 1))
    with pytest.raises(ValueError):
        extension_degree_estimate(PolyEndo.identity(GF(3), 4))


def test_decide_poly_automorphism_statuses():
    F2 = GF(2)
    x = Poly.variable(F2, 1, 1)
    assert decide_poly_automorphism(PolyEndo(F2, 1, [x])).status == "yes"
    assert decide_poly_automorphism(PolyEndo(F2, 1, [x - x**2])).status == "no"
    assert decide_poly_automorphism(PolyEndo(F2, 1, [Poly.one(F2, 1)])).status == "no"

    # certified bound far beyond the monomial budget: only unknown is honest
    F5 = GF(5)
    vars4 = [Poly.variable(F5, 4, i) for i in range(1, 5)]
    big = PolyEndo(F5, 4, [vars4[0] - vars4[0] ** 5] + vars4[1:])
    decision = decide_poly_automorphism(big, monomial_cap=100, quick_cap=2)
    assert decision.status == "unknown"
    assert decision.searched_degree < decision.certified_bound


def test_check_instance_njc_counterexample():
    verdict = check_instance("NJC", frobenius_deficit_poly(GF(2), 1))
    assert verdict.automorphism == "no"
    assert verdict.flags["jacobian_nonzero"] is True
    assert verdict.hypothesis_holds is True
    assert verdict.biconditional_holds is False
    assert verdict.witnesses


def test_check_instance_cjc_same_map_is_consistent():
    # CJC keeps the extension-degree hypothesis; deg = p kills it, so the
    # classical statement survives the classical counterexample
    verdict = check_instance("CJC", frobenius_deficit_poly(GF(2), 1))
    assert verdict.flags["extension_degree_ok"] is False
    assert verdict.hypothesis_holds is False
    assert verdict.biconditional_holds is True
    assert verdict.estimated is False  # m = 1 is exact


def test_check_instance_npc_counterexample():
    verdict = check_instance("NPC", frobenius_deficit_poly(GF(2), 2))
    assert verdict.flags["symplectic"] is True
    assert verdict.automorphism == "no"
    assert verdict.biconditional_holds is False


def test_check_instance_ndc_counterexample():
    verdict = check_instance("NDC", frobenius_deficit_weyl(WeylAlgebra(GF(2), 1)))
    assert verdict.automorphism == "no"
    assert verdict.biconditional_holds is False
    assert verdict.certified_bound == 2


def test_check_instance_rejects_mismatches():
    with pytest.raises(ValueError):
        check_instance("XYZ", frobenius_deficit_poly(GF(2), 1))
    with pytest.raises(ValueError):
        check_instance("NDC", frobenius_deficit_poly(GF(2), 1))
    with pytest.raises(ValueError):
        check_instance("NPC", PolyEndo(GF(2), 2, [Poly.variable(GF(2), 2, 1).scale(0) , Poly.variable(GF(2), 2, 2)]))


def test_cpc_jacobian_condition_is_gated_on_p_le_n():
    # p = 5 > n = 1: the jacobian clause is skipped entirely
    F5 = GF(5)
    x1, x2 = Poly.variable(F5, 2, 1), Poly.variable(F5, 2, 2)
    shear = PolyEndo(F5, 2, [x1 + x2**2, x2])
    verdict = check_instance("CPC", shear)
    assert "jacobian_nonzero" not in verdict.flags
    assert verdict.estimated  # m = 2 relies on the fiber estimator

    # p = 2 <= n = 2: the clause is evaluated
    F2 = GF(2)
    ident = PolyEndo.identity(F2, 4)
    verdict = check_instance("CPC", ident)
    assert verdict.flags.get("jacobian_nonzero") is True


def test_micro_exhaustive_njc_sweep_over_f2():
    # all univariate endomorphisms of degree <= 2 over F2; the naive statement
    # fails exactly on the two jacobian-1 quadratics
    F2 = GF(2)
    x = Poly.variable(F2, 1, 1)
    falsifiers = []
    for c0, c1, c2 in itertools.product(range(2), repeat=3):
        img = Poly.const(F2, 1, c0) + x.scale(c1) + (x**2).scale(c2)
        verdict = check_instance("NJC", PolyEndo(F2, 1, [img]))
        assert verdict.automorphism in ("yes", "no")  # micro scale: always decided
        if verdict.biconditional_holds is False:
            falsifiers.append(img)
    assert falsifiers == [x + x**2, Poly.one(F2, 1) + x + x**2]


def test_chain_probe_consistency():
    F5 = GF(5)
    A = WeylAlgebra(F5, 1)
    shear = WeylEndo(A, [A.generator(1), A.generator(2) + A.generator(1) ** 2])
    rep = chain_probe(shear)
    assert rep.consistent and rep.weyl_status == "yes" and rep.center_status == "yes"

    F2 = GF(2)
    pert = frobenius_deficit_weyl(WeylAlgebra(F2, 1))
    rep = chain_probe(pert)
    assert rep.consistent and rep.weyl_status == "no" and rep.center_status == "no"
    assert rep.center_symplectic

    rep = chain_probe(WeylEndo.identity(A))
    assert rep.consistent


def test_kraus_examples():
    rep = kraus_check(53)
    assert rep.z_irreducible and rep.all_reducible
    assert rep.factorizations[2] == ("X1 + 1", "X1^3 + X1^2 + X1 + 1")
    assert rep.factorizations[3] == ("X1^2 + X1 + 2", "X1^2 + 2*X1 + 2")
    assert set(rep.factorizations) == {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}
    with pytest.raises(ValueError):
        kraus_check(1)


def test_suite_smoke():
    rep = counterexample_suite(kraus_p_max=50)
    assert rep.all_expected
    assert len(rep.cases) == 9  # three families at three primes
    names = {(c["name"], c["p"]) for c in rep.cases}
    assert names == {(f, p) for f in ("NJC", "NPC", "NDC") for p in (2, 3, 5)}


def test_cdc_over_q_treats_center_clauses_as_vacuous():
    A = WeylAlgebra(QQ, 1)
    shear = WeylEndo(A, [A.generator(1), A.generator(2) + A.generator(1) ** 2])
    verdict = check_instance("CDC", shear)
    assert verdict.flags["extension_degree_ok"] is True
    assert verdict.automorphism == "yes"
    assert verdict.biconditional_holds is True

    ndc = check_instance("NDC", shear)
    assert ndc.biconditional_holds is True


def test_cjc_over_q_has_vacuous_extension_condition():
    x = Poly.variable(QQ, 1, 1)
    verdict = check_instance("CJC", PolyEndo(QQ, 1, [x + Poly.one(QQ, 1)]))
    assert verdict.p == 0
    assert verdict.flags["extension_degree_ok"] is True
    assert verdict.estimated is False
    assert verdict.automorphism == "yes" and verdict.biconditional_holds is True


def test_jc_over_q_proven_invertible_implies_unit_constant_jacobian():
    # over Q every nonzero constant is a unit; the sweep confirms the search
    # never certifies an automorphism whose jacobian fails the hypothesis
    from util import random_poly

    rng = random.Random(41)
    seen_yes = 0
    for _ in range(40):
        m = rng.choice((1, 2))
        endo = PolyEndo(QQ, m, [random_poly(rng, QQ, m, 3, 2) for _ in range(m)])
        decision = decide_poly_automorphism(endo)
        if decision.status != "yes":
            continue
        seen_yes += 1
        det = endo.jacobian().determinant()
        assert det.is_constant() and not det.is_zero()
        assert QQ.is_unit(det.constant_value())
    assert seen_yes > 0


def test_decide_weyl_unknown_when_bound_unreachable():
    A = WeylAlgebra(GF(5), 2)
    pert = frobenius_deficit_weyl(A)  # degree 5, bound 125
    decision = decide_weyl_automorphism(pert, monomial_cap=400, quick_cap=2)
    assert decision.status == "unknown"
    assert decision.certified_bound == 125
    assert decision.searched_degree <= 2
