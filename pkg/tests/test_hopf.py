from random import Random

import pytest

from qcontract import catalog
from qcontract.freealg import Element
from qcontract.hopf import (
    ExcludedGenerator,
    central_residuals,
    check_coassociativity,
    check_convolution_on_element,
    check_counit_antipode,
    check_delta_respects_relations,
    check_star,
    grouplike_residual,
    run_hopf_suite,
)
from qcontract.sampling import random_element
from qcontract.scalars import Scalar


class TestCoproduct:
    def test_matrix_coproduct_of_a(self, suq2, pe_suq2):
        g = pe_suq2("a")
        assert suq2.apply_coproduct(g) == pe_suq2("a ox a + b ox c")

    def test_contracted_coproduct_of_K(self, klmn, pe_klmn):
        g = pe_klmn("K")
        assert klmn.apply_coproduct(g) == pe_klmn("K ox K + M ox M")

    def test_grouplike_exponential(self, final, pe_final):
        g = pe_final("E")
        assert final.apply_coproduct(g) == pe_final("E ox E")

    def test_excluded_generator_rejected(self, klmn, pe_klmn):
        with pytest.raises(ExcludedGenerator):
            klmn.apply_coproduct(pe_klmn("J"))
        # J*L is a normal word, so the adjoint survives reduction
        with pytest.raises(ExcludedGenerator):
            klmn.apply_counit(pe_klmn("J*L"))

    def test_reducible_adjoint_is_fine(self, klmn, pe_klmn):
        # K*J reduces to 1, so the guard admits it
        assert klmn.apply_coproduct(pe_klmn("K*J")) == \
            Element.unit(klmn.base.alphabet.at_slots(2), 1)


class TestDeltaRespectsRelations:
    def test_all_catalog_presentations(self, suq2, klmn, final):
        for h in (suq2, klmn, final):
            report = check_delta_respects_relations(h)
            assert report.ok, [r.name for r in report.failures()]

    def test_suq2_first_rule_residual_zero(self, suq2):
        report = check_delta_respects_relations(suq2)
        rec = next(r for r in report.records if "a*b -> q*b*a" in r.name)
        assert rec.ok and rec.residual == "0"

    def test_klmn_mixed_rule_residual_zero(self, klmn):
        report = check_delta_respects_relations(klmn)
        rec = next(r for r in report.records if r.name.count("L*M"))
        assert rec.ok

    def test_final_commutator_rule_is_coproduct_consistent(self, final):
        report = check_delta_respects_relations(final)
        rec = next(r for r in report.records if "etabar*eta" in r.name)
        assert rec.ok

    def test_adjoint_rules_are_skipped(self, klmn):
        report = check_delta_respects_relations(klmn)
        assert not any("J" in r.name.split("/")[-1] for r in report.records)

    def test_corrupted_rule_is_caught(self, klmn):
        # replace [L, K] = lam M^2 by a wrong coefficient and watch the
        # coproduct compatibility fail
        from qcontract.catalog import _mk_rule
        from qcontract.hopf import HopfPresentation
        from qcontract.rewrite import Presentation
        rules = [r for r in klmn.base.rules if not r.label.startswith("L*K")]
        rules.append(_mk_rule(klmn.base.alphabet, ("lam",), 1,
                              "L*K", "K*L + 2*lam*M*M"))
        bad_base = Presentation(klmn.base.alphabet, rules, 1, name="bad")
        bad = HopfPresentation(
            base=bad_base, coproduct=klmn.coproduct, counit=klmn.counit,
            antipode=klmn.antipode, star=klmn.star, excluded=klmn.excluded,
            name="bad")
        report = check_delta_respects_relations(bad)
        assert not report.ok


class TestCoassociativity:
    def test_all_catalog_presentations(self, suq2, klmn, final):
        for h in (suq2, klmn, final):
            report = check_coassociativity(h)
            assert report.ok, [r.name for r in report.failures()]

    def test_grouplike_generator(self, final):
        report = check_coassociativity(final)
        rec = next(r for r in report.records if r.name.endswith("/E"))
        assert rec.ok

    def test_contracted_generators(self, klmn):
        report = check_coassociativity(klmn)
        names = {r.name.rsplit("/", 1)[1] for r in report.records}
        assert names == {"K", "M", "N", "L"}


class TestCounitAntipode:
    def test_all_catalog_presentations(self, suq2, klmn, final):
        for h in (suq2, klmn, final):
            report = check_counit_antipode(h)
            assert report.ok, [r.name for r in report.failures()]

    def test_antipode_convolution_on_a(self, suq2, pe_suq2):
        # S(a) a + S(b) c = d a - q^-1 b c -> 1
        g = pe_suq2("a")
        dg = suq2.apply_coproduct(g)
        s_id = suq2.fold_tensor(dg, suq2.apply_antipode, lambda x: x)
        assert s_id == suq2.base.normal_form(pe_suq2("1"))

    def test_final_antipode_on_eta(self, final, pe_final):
        g = pe_final("eta")
        dg = final.apply_coproduct(g)
        s_id = final.fold_tensor(dg, final.apply_antipode, lambda x: x)
        assert s_id.is_zero  # eps(eta) = 0

    def test_grouplike_antipode_is_inverse(self, final, pe_final):
        got = final.base.normal_form(
            final.apply_antipode(pe_final("E")) * pe_final("E"))
        assert got == Element.unit(final.base.alphabet, 1)


class TestStar:
    def test_all_catalog_presentations(self, suq2, klmn, final):
        for h in (suq2, klmn, final):
            report = check_star(h)
            assert report.ok, [r.name for r in report.failures()]

    def test_star_involution_on_N(self, klmn, pe_klmn):
        # N* = -N - i lam M applied twice returns N
        got = klmn.apply_star(klmn.apply_star(pe_klmn("N")))
        assert got == pe_klmn("N")

    def test_star_of_coproduct_of_M(self, klmn, pe_klmn):
        # M* = -M, K* = K: Delta(M*) = (* ox *) Delta(M) = -Delta(M)
        lhs = klmn.apply_coproduct(klmn.apply_star(pe_klmn("M")))
        rhs = klmn.star_tensor(klmn.apply_coproduct(pe_klmn("M")))
        assert lhs == rhs
        assert lhs == klmn.base.at_slots(2).normal_form(
            -klmn.apply_coproduct(pe_klmn("M")))

    def test_star_involution_on_random_elements(self, suq2, klmn, final):
        rng = Random(42)
        for h, params in ((suq2, ("q",)), (klmn, ("lam",)), (final, ("lam",))):
            for _ in range(100):
                x = random_element(rng, h.base, degree=3, params=params)
                xss = h.apply_star(h.apply_star(x))
                assert h.base.normal_form(xss - x).is_zero


class TestConvolutionIdentity:
    @pytest.mark.parametrize("which", ["suq2", "klmn", "final"])
    def test_random_elements(self, which, suq2, klmn, final):
        h, params = {
            "suq2": (suq2, ("q",)),
            "klmn": (klmn, ("lam",)),
            "final": (final, ("lam",)),
        }[which]
        rng = Random(42)
        for _ in range(200):
            x = random_element(rng, h.base, degree=3, params=params,
                               exclude=h.excluded,
                               forbid_adjacent=(("L", "N"),))
            assert check_convolution_on_element(h, x)


class TestDeterminant:
    def test_grouplike(self, suq2):
        det = catalog.determinant_element(1)
        assert grouplike_residual(suq2, det).is_zero

    def test_central(self, suq2):
        det = catalog.determinant_element(1)
        assert all(r.is_zero for r in central_residuals(suq2.base, det))

    def test_counit_one(self, suq2):
        det = catalog.determinant_element(1)
        assert suq2.apply_counit(det) == Scalar.one(1)


class TestFullSuite:
    def test_run_hopf_suite_with_random_layer(self, suq2, klmn, final):
        for h in (suq2, klmn, final):
            rng = Random(42)
            report = run_hopf_suite(h, rng=rng, n_random=25)
            assert report.ok, [r.name for r in report.failures()]


def test_tensor_grouplike_helper(final, pe_final):
    x = pe_final("E*E")
    assert grouplike_residual(final, x).is_zero
    y = pe_final("eta")
    assert not grouplike_residual(final, y).is_zero
