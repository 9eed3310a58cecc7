"""Command-line surface: normal forms, confluence, Hopf suites, the full
contraction verification and the commutator solver.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from random import Random

from . import __version__, catalog, contract
from .freealg import AlphabetMismatch, MissingImage
from .hopf import (
    ExcludedGenerator,
    HopfPresentation,
    central_residuals,
    grouplike_residual,
    run_hopf_suite,
)
from .parser import ParseError, parse_expression
from .reports import CheckRecord, CheckReport, report_to_json_dict
from .rewrite import StepLimitExceeded, check_local_confluence

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@dataclass
class RunConfig:
    presentation: str | None = None
    truncation_order: int = 1
    step_limit: int = 10**6
    seed: int = 42
    max_overlap: int = 6
    output: str = "text"
    timings: bool = False
    catalog_dir: str | None = None
    lam_zero: bool = False

    def public_dict(self) -> dict:
        d = asdict(self)
        d.pop("timings")
        d.pop("catalog_dir")
        d.pop("lam_zero")
        return d


def _add_common(p: argparse.ArgumentParser, default_presentation=None):
    p.add_argument("-p", "--presentation", default=default_presentation,
                   help="builtin:NAME or a presentation file path")
    p.add_argument("--order", type=int, default=1, dest="truncation_order",
                   choices=range(0, 5), metavar="{0..4}",
                   help="eps truncation order (default 1)")
    p.add_argument("--step-limit", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-overlap", type=int, default=6)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true",
                   help="record wall-clock millis per check (off by default "
                        "so output is byte-identical across runs)")
    p.add_argument("--lam-zero", action="store_true",
                   help="work in the classical limit (lam = 0)")
    p.add_argument("--catalog-dir", default=None,
                   help="override the builtin presentation directory")


def _config(args) -> RunConfig:
    return RunConfig(
        presentation=args.presentation,
        truncation_order=args.truncation_order,
        step_limit=args.step_limit,
        seed=args.seed,
        max_overlap=args.max_overlap,
        output=args.output,
        timings=args.timings,
        catalog_dir=args.catalog_dir,
        lam_zero=args.lam_zero,
    )


def _load(cfg: RunConfig):
    return catalog.load_presentation(
        cfg.presentation, cfg.truncation_order, lam_zero=cfg.lam_zero,
        catalog_dir=cfg.catalog_dir)


def _emit(report: CheckReport, cfg: RunConfig) -> int:
    if cfg.output == "json":
        doc = report_to_json_dict(report, __version__, cfg.public_dict())
        print(json.dumps(doc, indent=2))
    else:
        for r in report.records:
            mark = "  ok  " if r.ok else " FAIL "
            tag = f"  [{r.paper_eq}]" if r.paper_eq else ""
            line = f"[{mark.strip():4}] {r.name}{tag}"
            if not r.ok:
                line += f"  residual: {r.residual}"
            elif r.residual not in ("0", ""):
                line += f"  = {r.residual}"
            print(line)
        n_fail = len(report.failures())
        print(f"checks: {len(report)}  failed: {n_fail}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _timed(fn, cfg: RunConfig) -> CheckReport:
    if not cfg.timings:
        return fn()
    t0 = time.monotonic()
    report = fn()
    total = int((time.monotonic() - t0) * 1000)
    if report.records:
        report.records[-1].millis = total
    return report


# -- commands ----------------------------------------------------------------


def cmd_nf(args) -> int:
    cfg = _config(args)
    h = _load(cfg)
    base = h.base if isinstance(h, HopfPresentation) else h
    params = _presentation_params(base)
    expr = parse_expression(args.expression, base.alphabet, params,
                            cfg.truncation_order)
    nf = base.normal_form(expr, cfg.step_limit)
    print(nf)
    return EXIT_OK


def _presentation_params(base) -> tuple[str, ...]:
    params = set(base.params)
    params.update(("q", "lam"))
    return tuple(sorted(params))


def cmd_confluence(args) -> int:
    cfg = _config(args)
    h = _load(cfg)
    base = h.base if isinstance(h, HopfPresentation) else h
    rep = check_local_confluence(base, cfg.max_overlap, cfg.step_limit)
    report = CheckReport()
    for item in rep.items:
        amb = item.ambiguity
        word = "*".join(g.name for g in amb.word)
        report.add(CheckRecord(
            name=f"{base.name}/confluence/{word}"
                 f"[{amb.rule_i},{amb.rule_j},{amb.kind}]",
            ok=item.resolved,
            residual="0" if item.resolved
            else f"{item.nf_left} != {item.nf_right}",
        ))
    return _emit(report, cfg)


def cmd_hopf_check(args) -> int:
    cfg = _config(args)
    h = _load(cfg)
    if not isinstance(h, HopfPresentation):
        print("presentation has no Hopf data", file=sys.stderr)
        return EXIT_USAGE
    rng = Random(cfg.seed)
    report = _timed(lambda: run_hopf_suite(h, rng=rng, n_random=25,
                                           step_limit=cfg.step_limit), cfg)
    return _emit(report, cfg)


def cmd_contract(args) -> int:
    cfg = _config(args)

    def run():
        report = CheckReport()
        report.extend(contract.contraction_suite(
            cfg.truncation_order, cfg.lam_zero, cfg.step_limit))
        report.extend(contract.verify_change_of_variables(
            cfg.truncation_order, cfg.lam_zero, cfg.step_limit))
        return report

    return _emit(_timed(run, cfg), cfg)


def cmd_solve_commutator(args) -> int:
    cfg = _config(args)
    outcome = contract.solve_commutator(
        catalog.ekappa2_final_presentation(
            cfg.truncation_order, with_commutator_rule=False),
        "eta", "etabar",
        contract.standard_commutator_basis(cfg.truncation_order),
        cfg.step_limit)
    report = CheckReport()
    report.add(CheckRecord(
        name="solver/eta-etabar/status", ok=outcome.ok,
        residual=outcome.status, paper_eq="Eq. (35)"))
    if outcome.solution:
        for label, coeff in outcome.solution.items():
            report.add(CheckRecord(
                name=f"solver/eta-etabar/coefficient[{label}]",
                ok=True, residual=str(coeff), paper_eq="Eq. (35)"))
    if args.ln:
        ln = contract.solve_ln_commutator(cfg.truncation_order)
        report.add(CheckRecord(
            name="solver/L-N/status", ok=ln.ok, residual=ln.status))
        if ln.solution:
            for label, coeff in ln.solution.items():
                if not coeff.is_zero:
                    report.add(CheckRecord(
                        name=f"solver/L-N/coefficient[{label}]",
                        ok=True, residual=str(coeff)))
    return _emit(report, cfg)


def _golden_catalog_report(cfg: RunConfig) -> CheckReport:
    report = CheckReport()
    for name in catalog.BUILTIN_NAMES:
        try:
            loaded = catalog.load_presentation(
                f"builtin:{name}", cfg.truncation_order,
                catalog_dir=cfg.catalog_dir)
            built = {
                "suq2": catalog.suq2_presentation,
                "ekappa2-klmn": catalog.ekappa2_klmn_presentation,
                "ekappa2-final": catalog.ekappa2_final_presentation,
            }[name](cfg.truncation_order)
            same = (catalog.serialize_presentation(loaded)
                    == catalog.serialize_presentation(built))
            source = catalog.builtin_source(name, cfg.catalog_dir)
            golden = source == catalog.serialize_presentation(built)
            report.add(CheckRecord(
                name=f"catalog/load/{name}", ok=same and golden,
                residual="0" if same and golden else "golden mismatch"))
        except (ParseError, catalog.PresentationFormatError,
                ValueError) as exc:
            report.add(CheckRecord(
                name=f"catalog/load/{name}", ok=False, residual=str(exc)))
    return report


def cmd_report(args) -> int:
    """The full verification pipeline over all builtins."""
    cfg = _config(args)

    def run() -> CheckReport:
        report = CheckReport()
        report.extend(_golden_catalog_report(cfg))
        if not report.ok:
            return report

        order = cfg.truncation_order
        suq2 = catalog.suq2_presentation(order)
        klmn = catalog.ekappa2_klmn_presentation(order)
        final = catalog.ekappa2_final_presentation(order)
        if cfg.lam_zero:
            suq2_h, klmn_h, final_h = (suq2, catalog.classical_limit(klmn),
                                       catalog.classical_limit(final))
        else:
            suq2_h, klmn_h, final_h = suq2, klmn, final

        # RTT generation against the reference relation set
        distinct = catalog.distinct_rtt_relations(order)
        reference = {
            str(catalog.canonical_relation_form(r, order))
            for r in catalog.reference_rtt_relation_set(order)
        }
        got = {str(x) for x in distinct}
        report.add(CheckRecord(
            name="catalog/rtt/distinct-relations",
            ok=got == reference and len(distinct) == 6,
            residual="0" if got == reference else
            f"got {sorted(got)} expected {sorted(reference)}",
            paper_eq=catalog.TAG_RTT))
        for comp in catalog.rtt_relations(order):
            nf = suq2.base.normal_form(comp.element, cfg.step_limit)
            report.add(CheckRecord(
                name=f"catalog/rtt/reduces[{comp.row[0]}{comp.row[1]},"
                     f"{comp.col[0]}{comp.col[1]}]",
                ok=nf.is_zero, residual=str(nf), paper_eq=catalog.TAG_RTT))

        # confluence of the three builtins
        for h in (suq2_h, klmn_h, final_h):
            rep = check_local_confluence(h.base, cfg.max_overlap,
                                         cfg.step_limit)
            report.add(CheckRecord(
                name=f"confluence/{h.base.name}",
                ok=rep.ok,
                residual="0" if rep.ok else
                f"{len(rep.unresolved())} unresolved ambiguities"))

        # Hopf suites
        rng = Random(cfg.seed)
        for h in (suq2_h, klmn_h, final_h):
            report.extend(run_hopf_suite(h, rng=rng, n_random=25,
                                         step_limit=cfg.step_limit))

        # determinant is grouplike and central
        det = catalog.determinant_element(order)
        report.add(CheckRecord(
            name="suq2/determinant-grouplike",
            ok=grouplike_residual(suq2_h, det).is_zero,
            residual=str(grouplike_residual(suq2_h, det)),
            paper_eq=catalog.TAG_DETERMINANT))
        cen = central_residuals(suq2_h.base, det)
        report.add(CheckRecord(
            name="suq2/determinant-central",
            ok=all(r.is_zero for r in cen),
            residual="0" if all(r.is_zero for r in cen) else "nonzero",
            paper_eq=catalog.TAG_DETERMINANT))

        # contraction suites, change of variables, solver
        report.extend(contract.contraction_suite(order, cfg.lam_zero,
                                                 cfg.step_limit))
        report.extend(contract.verify_change_of_variables(
            order, cfg.lam_zero, cfg.step_limit))
        report.extend(contract.solver_suite(order, cfg.lam_zero,
                                            cfg.step_limit))
        return report

    return _emit(_timed(run, cfg), cfg)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qcontract",
        description="Exact symbolic checks for quantum-group presentations "
                    "and the kappa-contraction of quantum SU(2).")
    sub = ap.add_subparsers(dest="command", required=True)

    p_nf = sub.add_parser("nf", help="normal form of an expression")
    _add_common(p_nf, default_presentation="builtin:suq2")
    p_nf.add_argument("expression")
    p_nf.set_defaults(fn=cmd_nf)

    p_conf = sub.add_parser("confluence", help="critical-pair resolution")
    _add_common(p_conf, default_presentation="builtin:suq2")
    p_conf.set_defaults(fn=cmd_confluence)

    p_hopf = sub.add_parser("hopf-check", help="Hopf axiom suite")
    _add_common(p_hopf, default_presentation="builtin:suq2")
    p_hopf.set_defaults(fn=cmd_hopf_check)

    p_con = sub.add_parser("contract", help="order-by-order contraction run")
    _add_common(p_con)
    p_con.set_defaults(fn=cmd_contract)

    p_solve = sub.add_parser("solve-commutator",
                             help="back-solve [eta, etabar] from coproducts")
    _add_common(p_solve)
    p_solve.add_argument("--ln", action="store_true",
                         help="also back-solve the undetermined [L, N]")
    p_solve.set_defaults(fn=cmd_solve_commutator)

    p_rep = sub.add_parser("report", help="full verification pipeline")
    _add_common(p_rep)
    p_rep.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.fn(args)
    except StepLimitExceeded as exc:
        print(f"step limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, catalog.PresentationFormatError, AlphabetMismatch,
            MissingImage, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (contract.AdjointResidue, contract.UnknownCommutatorNeeded,
            ExcludedGenerator) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())
