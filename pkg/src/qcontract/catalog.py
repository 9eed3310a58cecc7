"""Built-in presentations, RTT relation generation and the text format.

Three presentations ship with the package:

``suq2``
    The quantum SU(2) function algebra on generators a, b, c, d with the
    q-commutation rules and both orientations of the determinant relation.
``ekappa2-klmn``
    The contracted algebra on K, L, M, N plus the computational adjoint
    J = K^-1, i.e. the kappa-deformed Euclidean group in linear variables.
``ekappa2-final``
    The same algebra rewritten in the exponential variables eta, etabar,
    E and F = E^-1, including the consistency-determined commutator rule.

Each builtin also exists as a text file under ``data/``; the files are
bit-exact serializations of the builders and are what ``builtin:`` URIs load,
so the parser is exercised on every load.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .freealg import (
    Alphabet,
    Element,
    GeneratorMap,
    MapKind,
    format_element,
    format_word,
)
from .hopf import HopfPresentation
from .parser import ParseError, parse_expression
from .rewrite import Presentation, RewriteRule
from .scalars import Scalar

BUILTIN_NAMES = ("suq2", "ekappa2-klmn", "ekappa2-final")
_BUILTIN_FILES = {
    "suq2": "suq2.preso",
    "ekappa2-klmn": "ekappa2_klmn.preso",
    "ekappa2-final": "ekappa2_final.preso",
}

# equation tags carried into reports
TAG_RTT = "Eq. (1)-(2)"
TAG_COPRODUCT_T = "Eq. (3)"
TAG_ANTIPODE_STAR_T = "Eq. (4)"
TAG_ANSATZ = "Eq. (5)-(6)"
TAG_DETERMINANT = "Eq. (7)"
TAG_D_SERIES = "Eq. (8)"


class PresentationFormatError(ValueError):
    """Malformed presentation source text."""


def _mk_rule(alphabet: Alphabet, params: tuple[str, ...], order: int,
             lhs_text: str, rhs_text: str) -> RewriteRule:
    lhs_elem = parse_expression(lhs_text, alphabet, params, order)
    if len(lhs_elem.terms) != 1:
        raise PresentationFormatError(
            f"rule left-hand side must be a single word: {lhs_text!r}")
    ((word, coeff),) = lhs_elem.terms.items()
    if not word or not coeff.is_one:
        raise PresentationFormatError(
            f"rule left-hand side must be a plain word: {lhs_text!r}")
    rhs = parse_expression(rhs_text, alphabet, params, order)
    label = f"{format_word(word, 1)} -> {format_element(rhs)}"
    return RewriteRule(word, rhs, label)


def _gen_map(alphabet: Alphabet, params, order, kind: MapKind,
             images_text: dict[str, str],
             target: Alphabet | None = None) -> GeneratorMap:
    target = target or alphabet
    images = {}
    for name, text in images_text.items():
        img = parse_expression(text, alphabet, params, order)
        if img.alphabet != target:
            # letter-free images (units, scalars) promote between slot counts
            img = img.rebind(target)
        images[alphabet.gen(name, 0)] = img
    return GeneratorMap(images, kind, alphabet, target, order)


# --------------------------------------------------------------------------
# SU_q(2)
# --------------------------------------------------------------------------

SUQ2_PARAMS = ("q",)
SUQ2_ALPHABET = Alphabet(("b", "c", "a", "d"))

_SUQ2_RULES = [
    ("a*b", "q*b*a", TAG_RTT),
    ("a*c", "q*c*a", TAG_RTT),
    ("c*b", "b*c", TAG_RTT),
    ("d*b", "q^-1*b*d", TAG_RTT),
    ("d*c", "q^-1*c*d", TAG_RTT),
    ("a*d", "1 + q*b*c", TAG_DETERMINANT),
    ("d*a", "1 + q^-1*b*c", TAG_DETERMINANT),
]

_SUQ2_COPRODUCT = {
    "a": "a ox a + b ox c",
    "b": "a ox b + b ox d",
    "c": "c ox a + d ox c",
    "d": "c ox b + d ox d",
}
_SUQ2_COUNIT = {"a": "1", "b": "0", "c": "0", "d": "1"}
_SUQ2_ANTIPODE = {"a": "d", "b": "-q^-1*b", "c": "-q*c", "d": "a"}
_SUQ2_STAR = {"a": "d", "b": "-q*c", "c": "-q^-1*b", "d": "a"}


def suq2_presentation(order: int = 1) -> HopfPresentation:
    alph = SUQ2_ALPHABET
    rules = []
    tags = {}
    for lhs, rhs, tag in _SUQ2_RULES:
        r = _mk_rule(alph, SUQ2_PARAMS, order, lhs, rhs)
        rules.append(r)
        tags[r.label] = tag
    base = Presentation(alph, rules, order, name="suq2", params=SUQ2_PARAMS)
    alph2 = alph.at_slots(2)
    return HopfPresentation(
        base=base,
        coproduct=_gen_map(alph, SUQ2_PARAMS, order, MapKind.HOMOMORPHISM,
                           _SUQ2_COPRODUCT, target=alph2),
        counit=_parse_counit(alph, SUQ2_PARAMS, order, _SUQ2_COUNIT),
        antipode=_gen_map(alph, SUQ2_PARAMS, order, MapKind.ANTIHOMOMORPHISM,
                          _SUQ2_ANTIPODE),
        star=_gen_map(alph, SUQ2_PARAMS, order, MapKind.STAR, _SUQ2_STAR),
        excluded=frozenset(),
        name="suq2",
        rule_tags=tags,
        coproduct_tags={n: TAG_COPRODUCT_T for n in alph.names},
        antipode_tag=TAG_ANTIPODE_STAR_T,
    )


# --------------------------------------------------------------------------
# E_kappa(2) in K, L, M, N (plus the adjoint J = K^-1)
# --------------------------------------------------------------------------

KLMN_PARAMS = ("lam",)
KLMN_ALPHABET = Alphabet(("J", "K", "M", "N", "L"))

# L*J is the reduction of [L, J] = -J [L, K] J using M^2 -> K^2 - 1 and
# K*J -> 1; certified by the confluence suite together with the K/J rules.
_KLMN_RULES = [
    ("N*K", "K*N", "Eq. (21)"),
    ("N*M", "M*N", "Eq. (23)"),
    ("M*K", "K*M", "Eq. (18)"),
    ("M*M", "K*K - 1", "Eq. (9)"),
    ("L*K", "K*L + lam*M*M", "Eq. (10)"),
    ("L*M", "M*L + lam*M*K", "Eq. (22)"),
    ("M*J", "J*M", None),
    ("N*J", "J*N", None),
    ("K*J", "1", "Eq. (8)"),
    ("J*K", "1", "Eq. (8)"),
    ("L*J", "J*L + lam*J*J - lam", None),
]

_KLMN_COPRODUCT = {
    "K": "K ox K + M ox M",            # Eq. (11)
    "M": "K ox M + M ox K",            # Eq. (12)
    "L": "K ox L + L ox K + i*N ox M - i*M ox N",   # Eq. (13)
    "N": "K ox N - i*L ox M + i*M ox L + N ox K",   # Eq. (14)
}
_KLMN_COUNIT = {"K": "1", "L": "0", "M": "0", "N": "0"}
# The antipode images are not free data: they are induced by the antipode of
# the source algebra through the contraction and validated by the axiom
# checkers.
_KLMN_ANTIPODE = {"K": "K", "L": "-L", "M": "-M", "N": "-N - i*lam*M"}
_KLMN_STAR = {"K": "K", "L": "-L", "M": "-M", "N": "-N - i*lam*M",
              "J": "J"}  # Eq. (15)

_KLMN_COPRODUCT_TAGS = {"K": "Eq. (11)", "M": "Eq. (12)", "L": "Eq. (13)",
                        "N": "Eq. (14)"}


def ekappa2_klmn_presentation(order: int = 1) -> HopfPresentation:
    alph = KLMN_ALPHABET
    rules = []
    tags = {}
    for lhs, rhs, tag in _KLMN_RULES:
        r = _mk_rule(alph, KLMN_PARAMS, order, lhs, rhs)
        rules.append(r)
        if tag:
            tags[r.label] = tag
    base = Presentation(alph, rules, order, name="ekappa2-klmn",
                        params=KLMN_PARAMS)
    alph2 = alph.at_slots(2)
    return HopfPresentation(
        base=base,
        coproduct=_gen_map(alph, KLMN_PARAMS, order, MapKind.HOMOMORPHISM,
                           _KLMN_COPRODUCT, target=alph2),
        counit=_parse_counit(alph, KLMN_PARAMS, order, _KLMN_COUNIT),
        antipode=_gen_map(alph, KLMN_PARAMS, order, MapKind.ANTIHOMOMORPHISM,
                          _KLMN_ANTIPODE),
        star=_gen_map(alph, KLMN_PARAMS, order, MapKind.STAR, _KLMN_STAR),
        excluded=frozenset({"J"}),
        name="ekappa2-klmn",
        rule_tags=tags,
        coproduct_tags=dict(_KLMN_COPRODUCT_TAGS),
    )


# --------------------------------------------------------------------------
# E_kappa(2) in exponential variables
# --------------------------------------------------------------------------

FINAL_PARAMS = ("lam",)
FINAL_ALPHABET = Alphabet(("F", "E", "eta", "etabar"))

# The F-rules follow from the E-rules by conjugating with the inverse;
# certified by the confluence suite together with E*F -> 1, F*E -> 1.
_FINAL_RULES = [
    ("E*F", "1", "Eq. (24)"),
    ("F*E", "1", "Eq. (24)"),
    ("eta*E", "E*eta + lam*E - lam", "Eq. (33)"),
    ("etabar*E", "E*etabar + lam*E - lam*E*E", "Eq. (34)"),
    ("eta*F", "F*eta + lam*F*F - lam*F", None),
    ("etabar*F", "F*etabar + lam - lam*F", None),
    ("etabar*eta", "eta*etabar - lam*etabar - lam*eta", "Eq. (35)"),
]

_FINAL_COPRODUCT = {
    "eta": "eta ox 1 + F ox eta",          # Eq. (30)
    "etabar": "etabar ox 1 + E ox etabar",  # Eq. (31)
    "E": "E ox E",                          # Eq. (32)
    "F": "F ox F",
}
_FINAL_COUNIT = {"eta": "0", "etabar": "0", "E": "1", "F": "1"}
# Derived data: counit and antipode are fixed by solving the Hopf axioms on
# generators and validated by the checkers.
_FINAL_ANTIPODE = {"eta": "-E*eta", "etabar": "-F*etabar", "E": "F", "F": "E"}
_FINAL_STAR = {"eta": "etabar", "etabar": "eta", "E": "F", "F": "E"}

_FINAL_COPRODUCT_TAGS = {"eta": "Eq. (30)", "etabar": "Eq. (31)",
                         "E": "Eq. (32)"}


def ekappa2_final_presentation(order: int = 1,
                               with_commutator_rule: bool = True) -> HopfPresentation:
    alph = FINAL_ALPHABET
    rules = []
    tags = {}
    for lhs, rhs, tag in _FINAL_RULES:
        if not with_commutator_rule and lhs == "etabar*eta":
            continue
        r = _mk_rule(alph, FINAL_PARAMS, order, lhs, rhs)
        rules.append(r)
        if tag:
            tags[r.label] = tag
    name = "ekappa2-final" if with_commutator_rule else "ekappa2-final-open"
    base = Presentation(alph, rules, order, name=name, params=FINAL_PARAMS)
    alph2 = alph.at_slots(2)
    return HopfPresentation(
        base=base,
        coproduct=_gen_map(alph, FINAL_PARAMS, order, MapKind.HOMOMORPHISM,
                           _FINAL_COPRODUCT, target=alph2),
        counit=_parse_counit(alph, FINAL_PARAMS, order, _FINAL_COUNIT),
        antipode=_gen_map(alph, FINAL_PARAMS, order, MapKind.ANTIHOMOMORPHISM,
                          _FINAL_ANTIPODE),
        star=_gen_map(alph, FINAL_PARAMS, order, MapKind.STAR, _FINAL_STAR),
        excluded=frozenset(),
        name=name,
        rule_tags=tags,
        coproduct_tags=dict(_FINAL_COPRODUCT_TAGS),
    )


_BUILDERS = {
    "suq2": suq2_presentation,
    "ekappa2-klmn": ekappa2_klmn_presentation,
    "ekappa2-final": ekappa2_final_presentation,
}


# --------------------------------------------------------------------------
# classical limit
# --------------------------------------------------------------------------


def classical_limit(h: HopfPresentation) -> HopfPresentation:
    """The lam -> 0 degeneration: every deformation term is dropped, leaving
    the commutative function algebra with the same coproducts."""

    def s0(s: Scalar) -> Scalar:
        return s.set_param_zero("lam")

    def e0(x: Element) -> Element:
        return x.map_scalars(s0)

    def map0(m: GeneratorMap) -> GeneratorMap:
        return GeneratorMap({g: e0(img) for g, img in m.images.items()},
                            m.kind, m.source, m.target, m.order)

    base = Presentation(
        h.base.alphabet,
        [RewriteRule(r.lhs, e0(r.rhs), r.label) for r in h.base.rules],
        h.base.trunc_order,
        name=f"{h.base.name}@lam=0",
        params=h.base.params,
    )
    return HopfPresentation(
        base=base,
        coproduct=map0(h.coproduct),
        counit={k: s0(v) for k, v in h.counit.items()},
        antipode=map0(h.antipode),
        star=map0(h.star),
        excluded=h.excluded,
        name=f"{h.name}@lam=0",
        rule_tags=dict(h.rule_tags),
        coproduct_tags=dict(h.coproduct_tags),
        antipode_tag=h.antipode_tag,
    )


# --------------------------------------------------------------------------
# RTT relation generation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RttComponent:
    row: tuple[int, int]
    col: tuple[int, int]
    element: Element

    @property
    def is_trivial(self) -> bool:
        return self.element.is_zero

    def describe(self) -> str:
        return (f"row=({self.row[0]},{self.row[1]}) "
                f"col=({self.col[0]},{self.col[1]}): {self.element}")


def r_matrix(order: int = 1) -> dict[tuple, Scalar]:
    """The 4x4 R matrix, rows and columns indexed by ordered index pairs:
    diagonal (q, 1, 1, q) and the single off-diagonal q - q^-1 entry at
    row (2,1), column (1,2)."""
    q = Scalar.param("q", order)
    qinv = Scalar.param("q", order, exp=-1)
    one = Scalar.one(order)
    return {
        ((1, 1), (1, 1)): q,
        ((1, 2), (1, 2)): one,
        ((2, 1), (2, 1)): one,
        ((2, 2), (2, 2)): q,
        ((2, 1), (1, 2)): q - qinv,
    }


INDEX_PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def rtt_relations(order: int = 1) -> list[RttComponent]:
    """The 16 entries of R T1 T2 - T2 T1 R over the free algebra on a, b,
    c, d.  T1 = T tensor 1 and T2 = 1 tensor T with the row-major pairing
    (i,j) for rows and (k,l) for columns; zero entries are kept and flagged
    trivial."""
    alph = SUQ2_ALPHABET
    T = {
        (1, 1): Element.generator(alph, "a", order),
        (1, 2): Element.generator(alph, "b", order),
        (2, 1): Element.generator(alph, "c", order),
        (2, 2): Element.generator(alph, "d", order),
    }
    R = r_matrix(order)
    out = []
    for u in INDEX_PAIRS:
        i, j = u
        for v in INDEX_PAIRS:
            k, l = v
            lhs = Element.zero(alph, order)
            rhs = Element.zero(alph, order)
            for w in INDEX_PAIRS:
                m, n = w
                r_uw = R.get((u, w))
                if r_uw is not None:
                    lhs = lhs + (T[(m, k)] * T[(n, l)]).scaled(r_uw)
                r_wv = R.get((w, v))
                if r_wv is not None:
                    rhs = rhs + (T[(j, n)] * T[(i, m)]).scaled(r_wv)
            out.append(RttComponent(u, v, lhs - rhs))
    return out


def _commutation_only_suq2(order: int) -> Presentation:
    rule = _mk_rule(SUQ2_ALPHABET, SUQ2_PARAMS, order, "c*b", "b*c")
    return Presentation(SUQ2_ALPHABET, [rule], order, name="suq2-cb-only")


def scale_to_unit_lead(x: Element) -> Element:
    """Divide by the leading coefficient (which must be an invertible
    monomial) so scalar multiples share one representative."""
    lead = x.terms[x.leading_word()]
    return x.scaled(lead.inverse_of_unit())


def canonical_relation_form(x: Element, order: int) -> Element:
    """Representative of a relation up to scalar multiples and reordering of
    the commuting pair b, c (the commutation relation itself is part of the
    generated set, so it canonicalizes to its own scaled form)."""
    pc = _commutation_only_suq2(order)
    z = pc.normal_form(x)
    if z.is_zero:
        if x.is_zero:
            return x
        return scale_to_unit_lead(x)
    return scale_to_unit_lead(z)


def distinct_rtt_relations(order: int = 1) -> list[Element]:
    """The distinct nonzero RTT relations up to scalar multiples (and up to
    the commuting pair reordering), in order of first appearance."""
    seen = {}
    out = []
    for comp in rtt_relations(order):
        if comp.is_trivial:
            continue
        canon = canonical_relation_form(comp.element, order)
        key = str(canon)
        if key not in seen:
            seen[key] = True
            out.append(canon)
    return out


def reference_rtt_relation_set(order: int = 1) -> list[Element]:
    """The six textbook relations {ab - q ba, ac - q ca, bc - cb,
    bd - q db, cd - q dc, ad - da - (q - q^-1) bc}, as written."""
    texts = [
        "a*b - q*b*a",
        "a*c - q*c*a",
        "b*c - c*b",
        "b*d - q*d*b",
        "c*d - q*d*c",
        "a*d - d*a - (q - q^-1)*b*c",
    ]
    return [parse_expression(t, SUQ2_ALPHABET, SUQ2_PARAMS, order)
            for t in texts]


def determinant_element(order: int = 1) -> Element:
    return parse_expression("a*d - q*b*c", SUQ2_ALPHABET, SUQ2_PARAMS, order)


def determinant_relation(order: int = 1) -> Element:
    return parse_expression("a*d - q*b*c - 1", SUQ2_ALPHABET, SUQ2_PARAMS,
                            order)


# --------------------------------------------------------------------------
# named elements of the contracted algebra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NamedElement:
    name: str
    definition: Element
    paper_eq: str | None = None


def klmn_named_elements(order: int = 1, lam_zero: bool = False) -> dict[str, NamedElement]:
    """eta, etabar, E, F and the intermediate linear combinations, as
    elements of the K, L, M, N algebra."""
    alph = KLMN_ALPHABET

    def pe(text: str) -> Element:
        x = parse_expression(text, alph, KLMN_PARAMS, order)
        if lam_zero:
            x = x.map_scalars(lambda s: s.set_param_zero("lam"))
        return x

    vplus = pe("K + M")
    vminus = pe("K - M")
    wplus = pe("L - 1/2*lam*M + i*N")
    wminus = pe("L + 1/2*lam*M - i*N")
    return {
        "vplus": NamedElement("vplus", vplus, "Eq. (16)"),
        "vminus": NamedElement("vminus", vminus, "Eq. (16)"),
        "wplus": NamedElement("wplus", wplus, "Eq. (17)"),
        "wminus": NamedElement("wminus", wminus, "Eq. (17)"),
        "eta": NamedElement("eta", wplus * vminus, "Eq. (28)"),
        "etabar": NamedElement("etabar", -(vplus * wminus), "Eq. (29)"),
        "E": NamedElement("E", vplus * vplus, "Eq. (24)"),
        "F": NamedElement("F", vminus * vminus, "Eq. (24)"),
    }


def final_to_klmn_map(order: int = 1, lam_zero: bool = False) -> GeneratorMap:
    """Realization of the exponential-variable generators inside the
    K, L, M, N algebra."""
    named = klmn_named_elements(order, lam_zero)
    images = {
        FINAL_ALPHABET.gen(n): named[n].definition
        for n in ("eta", "etabar", "E", "F")
    }
    return GeneratorMap(images, MapKind.HOMOMORPHISM, FINAL_ALPHABET,
                        KLMN_ALPHABET, order)


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

_SECTIONS = ("params", "generators", "rules", "coproduct", "counit",
             "antipode", "star", "excluded")
_HOPF_SECTIONS = ("coproduct", "counit", "antipode", "star")


def _parse_counit(alphabet, params, order, entries: dict[str, str]) -> dict[str, Scalar]:
    out = {}
    for name, text in entries.items():
        elem = parse_expression(text, alphabet, params, order)
        for w in elem.words():
            if w:
                raise PresentationFormatError(
                    f"counit of {name} must be a scalar: {text!r}")
        out[name] = elem.coefficient(())
    return out


def parse_presentation_text(text: str, order: int = 1, name: str = ""):
    """Parse the line-oriented presentation format.

    Returns a :class:`HopfPresentation` when all four structure-map sections
    are present, otherwise a bare :class:`Presentation`.
    """
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SECTIONS:
                raise PresentationFormatError(
                    f"line {lineno}: unknown section [{current}]")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise PresentationFormatError(
                f"line {lineno}: content before any section header")
        sections[current].append((lineno, line))

    if "generators" not in sections:
        raise PresentationFormatError("missing [generators] section")
    gen_names = tuple(
        n for _, line in sections["generators"] for n in line.split())
    params = tuple(
        n for _, line in sections.get("params", ()) for n in line.split())
    alphabet = Alphabet(gen_names)

    def split_arrow(line: str, lineno: int) -> tuple[str, str]:
        if "->" not in line:
            raise PresentationFormatError(
                f"line {lineno}: expected 'lhs -> rhs'")
        lhs, rhs = line.split("->", 1)
        return lhs.strip(), rhs.strip()

    rules = []
    for lineno, line in sections.get("rules", ()):
        lhs, rhs = split_arrow(line, lineno)
        try:
            rules.append(_mk_rule(alphabet, params, order, lhs, rhs))
        except ParseError as exc:
            raise PresentationFormatError(
                f"line {lineno}: {exc}") from exc
    base = Presentation(alphabet, rules, order, name=name, params=params)

    if not any(s in sections for s in _HOPF_SECTIONS):
        return base
    for s in _HOPF_SECTIONS:
        if s not in sections:
            raise PresentationFormatError(
                f"incomplete Hopf data: missing [{s}] section")

    def collect(section: str) -> dict[str, str]:
        out = {}
        for lineno, line in sections[section]:
            lhs, rhs = split_arrow(line, lineno)
            if lhs not in gen_names:
                raise PresentationFormatError(
                    f"line {lineno}: unknown generator {lhs!r}")
            out[lhs] = rhs
        return out

    excluded = frozenset(
        n for _, line in sections.get("excluded", ()) for n in line.split())
    alph2 = alphabet.at_slots(2)
    return HopfPresentation(
        base=base,
        coproduct=_gen_map(alphabet, params, order, MapKind.HOMOMORPHISM,
                           collect("coproduct"), target=alph2),
        counit=_parse_counit(alphabet, params, order, collect("counit")),
        antipode=_gen_map(alphabet, params, order, MapKind.ANTIHOMOMORPHISM,
                          collect("antipode")),
        star=_gen_map(alphabet, params, order, MapKind.STAR, collect("star")),
        excluded=excluded,
        name=name,
    )


def _format_map_line(name: str, img: Element) -> str:
    return f"{name} -> {format_element(img)}"


def serialize_presentation(h) -> str:
    """Canonical text form; bit-exact against the shipped builtin files."""
    if isinstance(h, HopfPresentation):
        base, hopf = h.base, h
    else:
        base, hopf = h, None
    params: set[str] = set()
    for r in base.rules:
        for c in r.rhs.terms.values():
            for (mono, _eps) in c.terms:
                for pname, _ in mono.exps:
                    params.add(pname)
    if hopf:
        for m in (hopf.coproduct, hopf.antipode, hopf.star):
            for img in m.images.values():
                for c in img.terms.values():
                    for (mono, _eps) in c.terms:
                        for pname, _ in mono.exps:
                            params.add(pname)
    lines = [f"# presentation: {base.name}"]
    lines += ["", "[params]"] + sorted(params)
    lines += ["", "[generators]", " ".join(base.alphabet.names)]
    lines += ["", "[rules]"]
    lines += [r.label for r in base.rules]
    if hopf:
        names = [n for n in base.alphabet.names]
        lines += ["", "[coproduct]"]
        for n in names:
            if n in hopf.excluded:
                continue
            img = hopf.coproduct.images[base.alphabet.gen(n)]
            lines.append(_format_map_line(n, img))
        lines += ["", "[counit]"]
        for n in names:
            if n in hopf.excluded:
                continue
            lines.append(f"{n} -> {hopf.counit[n]}")
        lines += ["", "[antipode]"]
        for n in names:
            if n in hopf.excluded:
                continue
            img = hopf.antipode.images[base.alphabet.gen(n)]
            lines.append(_format_map_line(n, img))
        lines += ["", "[star]"]
        for n in names:
            img = hopf.star.images[base.alphabet.gen(n)]
            lines.append(_format_map_line(n, img))
        if hopf.excluded:
            lines += ["", "[excluded]", " ".join(sorted(hopf.excluded))]
    return "\n".join(lines) + "\n"


def builtin_source(name: str, catalog_dir: str | Path | None = None) -> str:
    fname = _BUILTIN_FILES[name]
    if catalog_dir is not None:
        return (Path(catalog_dir) / fname).read_text()
    return (resources.files("qcontract") / "data" / fname).read_text()


def load_presentation(source: str | Path, order: int = 1,
                      lam_zero: bool = False,
                      catalog_dir: str | Path | None = None):
    """Load a presentation from a ``builtin:`` URI or a file path."""
    src = str(source)
    if src.startswith("builtin:"):
        name = src.split(":", 1)[1]
        if name not in BUILTIN_NAMES:
            raise PresentationFormatError(
                f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}")
        text = builtin_source(name, catalog_dir)
        h = parse_presentation_text(text, order, name=name)
        if isinstance(h, HopfPresentation):
            built = _BUILDERS[name](order)
            h.rule_tags.update(built.rule_tags)
            h.coproduct_tags.update(built.coproduct_tags)
            h.antipode_tag = built.antipode_tag
    else:
        path = Path(src)
        text = path.read_text()
        h = parse_presentation_text(text, order, name=path.stem)
    if lam_zero:
        if not isinstance(h, HopfPresentation):
            raise PresentationFormatError(
                "classical limit requires full Hopf data")
        h = classical_limit(h)
    return h


def coproduct_tag(presentation_name: str, generator: str) -> str | None:
    if presentation_name.startswith("ekappa2-klmn"):
        return _KLMN_COPRODUCT_TAGS.get(generator)
    if presentation_name.startswith("ekappa2-final"):
        return _FINAL_COPRODUCT_TAGS.get(generator)
    return None
