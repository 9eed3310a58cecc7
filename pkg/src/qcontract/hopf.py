"""Hopf structure maps attached to a presentation, with axiom checkers.

The coproduct is a homomorphism into the 2-slot algebra, the counit an
algebra map to scalars, the antipode an antihomomorphism and the star an
antilinear antihomomorphism.  Generators listed as excluded (computational
adjoints such as the inverse of K) carry no coproduct, counit or antipode;
the star is still defined on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .freealg import (
    Element,
    GeneratorMap,
    MapKind,
    retag_slots,
    slot_parts,
    to_base_slot,
)
from .reports import CheckRecord, CheckReport
from .rewrite import DEFAULT_STEP_LIMIT, Presentation
from .scalars import Scalar


class ExcludedGenerator(ValueError):
    """A structure map met a generator it is undefined on."""


@dataclass
class HopfPresentation:
    base: Presentation
    coproduct: GeneratorMap
    counit: dict[str, Scalar]
    antipode: GeneratorMap
    star: GeneratorMap
    excluded: frozenset[str] = frozenset()
    name: str = ""
    #: equation tags surfaced in reports: per rule label, per coproduct
    #: generator, and one for the antipode/counit pair
    rule_tags: dict[str, str] = field(default_factory=dict)
    coproduct_tags: dict[str, str] = field(default_factory=dict)
    antipode_tag: str | None = None

    def __post_init__(self):
        # coproduct images must avoid excluded generators
        for g, img in self.coproduct.images.items():
            for w in img.words():
                for letter in w:
                    if letter.name in self.excluded:
                        raise ValueError(
                            f"coproduct of {g.name} hits excluded generator "
                            f"{letter.name}")

    @property
    def order(self) -> int:
        return self.base.trunc_order

    def hopf_generators(self) -> list[str]:
        return [n for n in self.base.alphabet.names if n not in self.excluded]

    # -- structure maps on elements -----------------------------------------

    def _guard(self, x: Element, what: str) -> Element:
        nf = self.base.normal_form(x)
        for name in self.excluded:
            if nf.contains_letter(name):
                raise ExcludedGenerator(
                    f"{what} undefined: normal form contains {name!r}")
        return nf

    def apply_coproduct(self, x: Element, step_limit: int = DEFAULT_STEP_LIMIT) -> Element:
        """Homomorphic extension of the generator coproducts, normalized in
        the 2-slot algebra."""
        nf = self._guard(x, "coproduct")
        p2 = self.base.at_slots(2)
        return p2.normal_form(self.coproduct.apply(nf), step_limit)

    def apply_counit(self, x: Element) -> Scalar:
        nf = self._guard(x, "counit")
        out = Scalar.zero(self.order)
        for word, coeff in nf.terms.items():
            val = coeff
            for g in word:
                val = val * self.counit[g.name]
                if val.is_zero:
                    break
            out = out + val
        return out

    def apply_antipode(self, x: Element) -> Element:
        nf = self._guard(x, "antipode")
        return self.base.normal_form(self.antipode.apply(nf))

    def apply_star(self, x: Element) -> Element:
        return self.base.normal_form(self.star.apply(x))

    def star_tensor(self, x2: Element) -> Element:
        """Slot-wise star on the 2-slot algebra."""
        p2 = self.base.at_slots(2)
        images = {}
        for name in self.base.alphabet.names:
            img = self.star.images[self.base.alphabet.gen(name)]
            for slot in (1, 2):
                images[p2.alphabet.gen(name, slot)] = retag_slots(
                    img, {0: slot}, 2)
        m = GeneratorMap(images, MapKind.STAR, p2.alphabet, p2.alphabet,
                         self.order)
        return p2.normal_form(m.apply(x2))

    # -- convolution-style folds ---------------------------------------------

    def fold_tensor(self, x2: Element, left, right) -> Element:
        """Multiply the two tensor legs back together after applying ``left``
        to the slot-1 part and ``right`` to the slot-2 part (each a map from
        base elements to base elements)."""
        p2 = self.base.at_slots(2)
        x2 = p2.normal_form(x2)
        out = Element.zero(self.base.alphabet, self.order)
        for word, coeff in x2.terms.items():
            parts = slot_parts(word)
            u = Element.from_word(self.base.alphabet,
                                  to_base_slot(parts.get(1, ())), self.order)
            v = Element.from_word(self.base.alphabet,
                                  to_base_slot(parts.get(2, ())), self.order)
            out = out + (left(u) * right(v)).scaled(coeff)
        return self.base.normal_form(out)

    def _id(self, x: Element) -> Element:
        return x

    def _counit_elem(self, x: Element) -> Element:
        return Element.unit(self.base.alphabet, self.order).scaled(
            self.apply_counit(x))


def grouplike_residual(h: HopfPresentation, x: Element) -> Element:
    """Delta(x) - x (x) x in the 2-slot algebra (zero iff x is grouplike)."""
    from .freealg import tensor_embed

    p2 = h.base.at_slots(2)
    nf = h.base.normal_form(x)
    lhs = h.apply_coproduct(nf)
    rhs = tensor_embed(nf, 1) * tensor_embed(nf, 2)
    return p2.normal_form(lhs - rhs)


def central_residuals(p: Presentation, x: Element) -> list[Element]:
    out = []
    for name in p.alphabet.names:
        g = Element.generator(p.alphabet, name, p.trunc_order)
        out.append(p.normal_form(x * g - g * x))
    return out


# -- axiom checkers ----------------------------------------------------------


def check_delta_respects_relations(h: HopfPresentation,
                                   step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    """Well-definedness of the coproduct on the quotient: for every rule
    the residual Delta(lhs) - Delta(rhs) must normalize to zero.  Rules that
    mention excluded generators carry no coproduct and are skipped."""
    report = CheckReport()
    p2 = h.base.at_slots(2)
    for rule in h.base.rules:
        involved = {g.name for g in rule.lhs} | {
            g.name for w in rule.rhs.words() for g in w}
        if involved & h.excluded:
            continue
        lhs_elem = Element.from_word(h.base.alphabet, rule.lhs, h.order)
        residual = p2.normal_form(
            h.coproduct.apply(lhs_elem) - h.coproduct.apply(rule.rhs),
            step_limit)
        report.add(CheckRecord(
            name=f"{h.name}/delta-respects/{rule.label}",
            ok=residual.is_zero,
            residual=str(residual),
            paper_eq=h.rule_tags.get(rule.label),
        ))
    return report


def check_coassociativity(h: HopfPresentation,
                          step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on every Hopf generator,
    checked in the 3-slot algebra."""
    report = CheckReport()
    p2 = h.base.at_slots(2)
    p3 = h.base.at_slots(3)
    alph2 = p2.alphabet
    left_images = {}
    right_images = {}
    for name in h.hopf_generators():
        delta_g = h.apply_coproduct(
            Element.generator(h.base.alphabet, name, h.order))
        left_images[alph2.gen(name, 1)] = retag_slots(delta_g, {}, 3)
        left_images[alph2.gen(name, 2)] = Element.generator(
            p3.alphabet, name, h.order, slot=3)
        right_images[alph2.gen(name, 1)] = Element.generator(
            p3.alphabet, name, h.order, slot=1)
        right_images[alph2.gen(name, 2)] = retag_slots(delta_g, {1: 2, 2: 3}, 3)
    delta_id = GeneratorMap(left_images, MapKind.HOMOMORPHISM, alph2,
                            p3.alphabet, h.order)
    id_delta = GeneratorMap(right_images, MapKind.HOMOMORPHISM, alph2,
                            p3.alphabet, h.order)
    for name in h.hopf_generators():
        delta_g = h.apply_coproduct(
            Element.generator(h.base.alphabet, name, h.order))
        residual = p3.normal_form(
            delta_id.apply(delta_g) - id_delta.apply(delta_g), step_limit)
        report.add(CheckRecord(
            name=f"{h.name}/coassociativity/{name}",
            ok=residual.is_zero,
            residual=str(residual),
            paper_eq=h.coproduct_tags.get(name),
        ))
    return report


def check_counit_antipode(h: HopfPresentation,
                          step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    """Counit and antipode axioms on every Hopf generator:
    (eps (x) id) Delta g = g = (id (x) eps) Delta g and
    m(S (x) id) Delta g = eps(g) 1 = m(id (x) S) Delta g."""
    report = CheckReport()
    for name in h.hopf_generators():
        g = Element.generator(h.base.alphabet, name, h.order)
        g_nf = h.base.normal_form(g)
        dg = h.apply_coproduct(g)
        eps_id = h.fold_tensor(dg, h._counit_elem, h._id)
        id_eps = h.fold_tensor(dg, h._id, h._counit_elem)
        unit_eps = Element.unit(h.base.alphabet, h.order).scaled(
            h.apply_counit(g))
        s_id = h.fold_tensor(dg, h.apply_antipode, h._id)
        id_s = h.fold_tensor(dg, h._id, h.apply_antipode)
        checks = [
            (f"counit-left/{name}", eps_id - g_nf),
            (f"counit-right/{name}", id_eps - g_nf),
            (f"antipode-left/{name}", s_id - unit_eps),
            (f"antipode-right/{name}", id_s - unit_eps),
        ]
        for label, residual in checks:
            residual = h.base.normal_form(residual, step_limit)
            report.add(CheckRecord(
                name=f"{h.name}/{label}",
                ok=residual.is_zero,
                residual=str(residual),
                paper_eq=h.antipode_tag,
            ))
    return report


def check_star(h: HopfPresentation,
               step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    """Star axioms: involutivity on generators, compatibility with every
    rule, and Delta(x*) = (* (x) *) Delta(x) on Hopf generators."""
    report = CheckReport()
    for name in h.base.alphabet.names:
        g = Element.generator(h.base.alphabet, name, h.order)
        residual = h.base.normal_form(
            h.apply_star(h.apply_star(g)) - g, step_limit)
        report.add(CheckRecord(
            name=f"{h.name}/star-involution/{name}",
            ok=residual.is_zero,
            residual=str(residual),
        ))
    for rule in h.base.rules:
        rel = rule.as_element(h.base.alphabet)
        residual = h.base.normal_form(h.star.apply(rel), step_limit)
        report.add(CheckRecord(
            name=f"{h.name}/star-respects/{rule.label}",
            ok=residual.is_zero,
            residual=str(residual),
            paper_eq=h.rule_tags.get(rule.label),
        ))
    p2 = h.base.at_slots(2)
    for name in h.hopf_generators():
        g = Element.generator(h.base.alphabet, name, h.order)
        g_star = h.apply_star(g)
        lhs = h.apply_coproduct(g_star)
        rhs = h.star_tensor(h.apply_coproduct(g))
        residual = p2.normal_form(lhs - rhs, step_limit)
        report.add(CheckRecord(
            name=f"{h.name}/star-coproduct/{name}",
            ok=residual.is_zero,
            residual=str(residual),
            paper_eq=h.coproduct_tags.get(name),
        ))
    return report


def check_convolution_on_element(h: HopfPresentation, x: Element,
                                 step_limit: int = DEFAULT_STEP_LIMIT) -> bool:
    """m(S (x) id) Delta x = eps(x) 1, the convolution-inverse identity."""
    dg = h.apply_coproduct(x, step_limit)
    s_id = h.fold_tensor(dg, h.apply_antipode, h._id)
    unit_eps = Element.unit(h.base.alphabet, h.order).scaled(h.apply_counit(x))
    return h.base.normal_form(s_id - unit_eps, step_limit).is_zero


def run_hopf_suite(h: HopfPresentation, rng=None, n_random: int = 0,
                   random_degree: int = 3,
                   step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    """All four axiom checkers, plus an optional randomized layer exercising
    the convolution identity and star involutivity on random elements."""
    report = CheckReport()
    report.extend(check_delta_respects_relations(h, step_limit))
    report.extend(check_coassociativity(h, step_limit))
    report.extend(check_counit_antipode(h, step_limit))
    report.extend(check_star(h, step_limit))
    if rng is not None and n_random > 0:
        from .sampling import random_element

        failures = 0
        for _ in range(n_random):
            x = random_element(rng, h.base, degree=random_degree,
                               params=("q", "lam"), exclude=h.excluded,
                               forbid_adjacent=(("L", "N"),))
            if not check_convolution_on_element(h, x, step_limit):
                failures += 1
            x_ss = h.apply_star(h.apply_star(x))
            if not h.base.normal_form(x_ss - x, step_limit).is_zero:
                failures += 1
        report.add(CheckRecord(
            name=f"{h.name}/random-layer/{n_random}-elements",
            ok=failures == 0,
            residual="0" if failures == 0 else f"{failures} failures",
        ))
    return report
