from random import Random

import pytest

from qcontract.freealg import (
    Alphabet,
    AlphabetMismatch,
    Element,
    GeneratorMap,
    MapKind,
    MissingImage,
    tensor_embed,
)
from qcontract.parser import parse_expression
from qcontract.sampling import random_element
from qcontract.scalars import Scalar


def pe(text, alphabet, params=("lam",), order=1):
    return parse_expression(text, alphabet, params, order)


class TestMultiply:
    def test_single_letters_concatenate(self, klmn, pe_klmn):
        assert pe_klmn("K") * pe_klmn("M") == pe_klmn("K*M")

    def test_distributivity_with_truncation(self, pe_klmn):
        got = pe_klmn("K + eps*L") * pe_klmn("K - eps*L")
        assert got == pe_klmn("K*K + eps*(L*K - K*L)")

    def test_ansatz_style_product(self, pe_klmn):
        got = pe_klmn("M + i*eps*N") * pe_klmn("M - i*eps*N")
        assert got == pe_klmn("M*M + i*eps*(N*M - M*N)")

    def test_alphabet_mismatch_rejected(self, pe_klmn, pe_suq2):
        with pytest.raises(AlphabetMismatch):
            pe_klmn("K") * pe_suq2("a")

    def test_associative_and_unital_randomized(self, klmn):
        rng = Random(42)
        one = Element.unit(klmn.base.alphabet, 1)
        for _ in range(200):
            x = random_element(rng, klmn.base)
            y = random_element(rng, klmn.base)
            z = random_element(rng, klmn.base)
            assert (x * y) * z == x * (y * z)
            assert one * x == x
            assert x * one == x


class TestApplyMap:
    def test_homomorphism_on_words(self):
        src = Alphabet(("x",))
        dst = Alphabet(("K",))
        f = GeneratorMap({src.gen("x"): Element.generator(dst, "K", 1)},
                         MapKind.HOMOMORPHISM, src, dst, 1)
        xx = Element.generator(src, "x", 1) * Element.generator(src, "x", 1)
        assert f.apply(xx) == pe("K*K", dst, (), 1)

    def test_contraction_images_on_product(self, klmn, pe_klmn):
        src = Alphabet(("b", "c"))
        f = GeneratorMap(
            {src.gen("b"): pe_klmn("M + i*eps*N"),
             src.gen("c"): pe_klmn("M - i*eps*N")},
            MapKind.HOMOMORPHISM, src, klmn.base.alphabet, 1)
        bc = Element.generator(src, "b", 1) * Element.generator(src, "c", 1)
        assert f.apply(bc) == pe_klmn("(M + i*eps*N)*(M - i*eps*N)")

    def test_antilinear_antihomomorphism_reverses_and_conjugates(self, klmn, pe_klmn):
        alph = klmn.base.alphabet
        f = GeneratorMap(
            {alph.gen(n): pe_klmn(n) for n in ("K", "J", "N", "L")}
            | {alph.gen("M"): pe_klmn("-M")},
            MapKind.STAR, alph, alph, 1)
        x = pe_klmn("i*K*M")
        # (i K M)* = conj(i) M* K* = (-i)(-M)(K) = i M K
        assert f.apply(x) == pe_klmn("i*M*K")

    def test_missing_image_is_an_error(self):
        src = Alphabet(("x", "y"))
        f = GeneratorMap({src.gen("x"): Element.generator(src, "x", 1)},
                         MapKind.HOMOMORPHISM, src, src, 1)
        with pytest.raises(MissingImage):
            f.apply(Element.generator(src, "y", 1))

    def test_multiplicativity_randomized(self, klmn):
        rng = Random(5)
        alph = klmn.base.alphabet
        images = {alph.gen(n): random_element(rng, klmn.base, degree=2,
                                              n_terms=2)
                  for n in alph.names}
        hom = GeneratorMap(images, MapKind.HOMOMORPHISM, alph, alph, 1)
        anti = GeneratorMap(images, MapKind.ANTIHOMOMORPHISM, alph, alph, 1)
        for _ in range(50):
            x = random_element(rng, klmn.base, degree=2)
            y = random_element(rng, klmn.base, degree=2)
            assert hom.apply(x * y) == hom.apply(x) * hom.apply(y)
            assert anti.apply(x * y) == anti.apply(y) * anti.apply(x)


class TestTensorEmbed:
    def test_embed_two_slots(self, klmn, pe_klmn):
        got = tensor_embed(pe_klmn("K"), 1) * tensor_embed(pe_klmn("M"), 2)
        assert got == pe_klmn("K ox M")

    def test_embed_unit(self, klmn):
        one = Element.unit(klmn.base.alphabet, 1)
        assert tensor_embed(one, 1) == Element.unit(
            klmn.base.alphabet.at_slots(2), 1)

    def test_coproduct_image_as_embed_sum(self, klmn, pe_klmn):
        delta_k = klmn.coproduct.images[klmn.base.alphabet.gen("K")]
        built = (tensor_embed(pe_klmn("K"), 1) * tensor_embed(pe_klmn("K"), 2)
                 + tensor_embed(pe_klmn("M"), 1) * tensor_embed(pe_klmn("M"), 2))
        assert delta_k == built

    def test_slot_out_of_range(self, pe_klmn):
        with pytest.raises(ValueError):
            tensor_embed(pe_klmn("K"), 4)
        with pytest.raises(ValueError):
            tensor_embed(pe_klmn("K"), 0)

    def test_embedding_is_algebra_map(self, klmn):
        rng = Random(9)
        for _ in range(100):
            x = random_element(rng, klmn.base, degree=2)
            y = random_element(rng, klmn.base, degree=2)
            assert tensor_embed(x * y, 1) == tensor_embed(x, 1) * tensor_embed(y, 1)
            assert tensor_embed(x + y, 2) == tensor_embed(x, 2) + tensor_embed(y, 2)


class TestEpsComponents:
    def test_components_reassemble(self, klmn):
        rng = Random(3)
        for _ in range(100):
            x = random_element(rng, klmn.base, degree=3)
            comps = x.eps_components()
            total = Element.zero(klmn.base.alphabet, 1)
            for k, comp in comps.items():
                eps_k = Scalar.eps(1, power=k) if k else Scalar.one(1)
                total = total + comp.scaled(eps_k)
            assert total == x
