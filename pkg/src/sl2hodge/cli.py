"""Command-line front end: ``sl2hodge <subcommand> ...``.

Exit status is 0 when every check passes, 1 when some check fails and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import __version__
from .results import VerificationResult, timed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("all", "identities", "d1-rewrite", "cohomology", "spectral", "weights", "tables")


class InputError(Exception):
    """Bad input file or argument value; reported with exit status 2."""


# --- suites ------------------------------------------------------------------------

def _identity_suite() -> list[VerificationResult]:
    from .identities import run_identity_suite
    return run_identity_suite()


def _rewrite_suite() -> list[VerificationResult]:
    from .rewrite import run_rewrite_suite
    return run_rewrite_suite()


def _cohomology_suite() -> list[VerificationResult]:
    from .cohomology import build_complex, cohomology_dims, solve_hodge_family
    from .lie import an, sl2
    from .modules import adjoint, character, trivial
    from .scalars import INV_SQRT2, fe

    cases = [
        ("an,C_0", an(), character(0), [1, 1, 0]),
        ("an,C_{1/sqrt2}", an(), character(INV_SQRT2), [0, 1, 1]),
        ("sl2,C", sl2(), trivial(sl2()), [1, 0, 0, 1]),
        ("an,ad", an(), adjoint(an()), [0, 0, 0]),
        ("an,C_2", an(), character(fe(2)), [0, 0, 0]),
    ]
    out = []
    for label, g, v, want in cases:
        def compute(g=g, v=v, want=want):
            c = build_complex(g, v)
            got = cohomology_dims(c)
            return c.square_zero_residual() + sum(x != y for x, y in zip(got, want)), {"dims": got}
        out.append(timed(f"cohomology.dims[{label}]", compute))
    for label, v in (("an,C_0", character(0)), ("an,C_{1/sqrt2}", character(INV_SQRT2))):
        def family(v=v):
            f = solve_hodge_family(build_complex(an(), v))
            return int(f.nparams != 1) + len(f.remaining), {"parameters": f.nparams}
        out.append(timed(f"cohomology.hodge_family[{label}]", family))
    return out


def _spectral_suite() -> list[VerificationResult]:
    from .lie import an_in_sl2, sl2
    from .modules import trivial
    from .spectral import (build_filtration, check_convergence, check_e1_isomorphism,
                           check_page_homology, limit_sheet, random_modules, totals)

    sub, v = an_in_sl2(), trivial(sl2())
    out = [check_e1_isomorphism(sub, v), check_convergence(sub, v), check_page_homology(sub, v)]

    def limit():
        got = totals(limit_sheet(build_filtration(sub, v)), 3)
        return sum(x != y for x, y in zip(got, [1, 0, 0, 1])), {"totals": got}
    out.append(timed("spectral.limit_totals[sl2,an,C]", limit))
    for k, (s, m) in enumerate(random_modules()):
        r = check_convergence(s, m)
        r.name = f"spectral.random[{k}].{r.name.split('.', 1)[-1]}"
        out.append(r)
    return out


def _weights_suite() -> list[VerificationResult]:
    from .weights import model_report
    out = []
    for tag, param in (("D+", 1), ("D+", 2), ("D+", 3), ("D-", 1), ("H", "-1/9")):
        out += model_report(tag, param, 20)
    return out


def _tables_suite() -> list[VerificationResult]:
    from .assembly import table_checks
    from .modules import lh_kernel_cokernel_checks
    out = [leaf for r in table_checks() for leaf in r.flatten()]
    return out + lh_kernel_cokernel_checks()


_SUITE_RUNNERS: dict[str, Callable[[], list[VerificationResult]]] = {
    "identities": _identity_suite,
    "d1-rewrite": _rewrite_suite,
    "cohomology": _cohomology_suite,
    "spectral": _spectral_suite,
    "weights": _weights_suite,
    "tables": _tables_suite,
}


# --- report ------------------------------------------------------------------------

class Report:
    def __init__(self, argv: Sequence[str], timing: bool):
        self.command = list(argv)
        self.timing = timing
        self.checks: list[VerificationResult] = []
        self.data: dict = {}
        self.lines: list[str] = []

    def add(self, results: Sequence[VerificationResult]) -> None:
        for r in results:
            self.checks.extend(r.flatten())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def sorted_checks(self) -> list[VerificationResult]:
        return sorted(self.checks, key=lambda c: c.name)

    def text(self) -> str:
        out = list(self.lines)
        if out and self.checks:
            out.append("")
        for c in self.sorted_checks():
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.name}  residual_terms={c.residual_terms}"
            if self.timing:
                line += f"  ({c.millis:.1f} ms)"
            out.append(line)
        if self.checks:
            failed = sum(not c.passed for c in self.checks)
            out.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return "\n".join(out)

    def json(self) -> str:
        doc = {
            "tool": "sl2hodge",
            "version": __version__,
            "command": self.command,
            "pass": self.passed,
            "checks": [c.as_dict(self.timing) for c in self.sorted_checks()],
        }
        if self.data:
            doc["result"] = self.data
        return json.dumps(doc, indent=2, sort_keys=False, default=str)


# --- subcommands ---------------------------------------------------------------------

def cmd_verify(args, report: Report) -> None:
    names = list(_SUITE_RUNNERS) if args.suite == "all" else [args.suite]
    for name in names:
        report.add(_SUITE_RUNNERS[name]())
    if args.trace:
        from .rewrite import trace_d1_hodge
        transcripts = {}
        for sign in (1, -1):
            label = "plus" if sign > 0 else "minus"
            steps, mismatches = trace_d1_hodge(sign)
            transcripts[label] = [str(s) for s in steps]
            report.lines.append(f"rewrite transcript, sign {label} ({len(steps)} steps):")
            report.lines += [f"  {s}" for s in steps]
            report.add([timed(f"rewrite.trace_replay[{label}]", lambda m=mismatches: m,
                              steps=len(steps))])
        report.data["transcripts"] = transcripts


def _load(path: str):
    from .specfile import SpecFileError, load_spec
    try:
        return load_spec(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except SpecFileError as exc:
        raise InputError(str(exc)) from None


def _format_matrix(m) -> list[str]:
    from .scalars import format_scalar
    if not m.nrows or not m.ncols:
        return [f"    ({m.nrows}x{m.ncols})"]
    cells = [[format_scalar(x) for x in row] for row in m.rows]
    width = max(len(c) for row in cells for c in row)
    return ["    [ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def cmd_cohomology(args, report: Report) -> None:
    from .cohomology import build_complex, cohomology_dims, euler_characteristic
    spec = _load(args.file)
    if not spec.modules:
        raise InputError(f"{args.file}: no module declared")
    results = {}
    for v in spec.modules:
        c = build_complex(spec.algebra, v)
        dims = cohomology_dims(c)
        results[v.name] = {"chain_dims": c.dims, "cohomology_dims": dims,
                           "euler_characteristic": euler_characteristic(dims)}
        report.lines.append(f"H^*({spec.algebra.name}; {v.name}) = {dims}"
                            f"   chain dims {c.dims}, Euler characteristic {euler_characteristic(dims)}")
        if args.matrices:
            for i, d in enumerate(c.diffs):
                report.lines.append(f"  d_{i}:")
                report.lines += _format_matrix(d)
            results[v.name]["differentials"] = [[[str(x) for x in row] for row in d.rows]
                                                for d in c.diffs]
        report.add([timed(f"cohomology.square_zero[{v.name}]", c.square_zero_residual)])
    report.data["modules"] = results


def cmd_spectral(args, report: Report) -> None:
    from .spectral import (build_filtration, check_convergence, check_e1_isomorphism,
                           check_page_homology, limit_sheet, sheet, totals)
    spec = _load(args.file)
    if spec.subalgebra is None:
        raise InputError(f"{args.file}: the spectral sequence needs a 'subalgebra' line")
    if not spec.modules:
        raise InputError(f"{args.file}: no module declared")
    sub = spec.subalgebra
    out = {}
    for v in spec.modules:
        fc = build_filtration(sub, v)
        top = spec.algebra.dim
        pages = {}
        report.lines.append(f"Hochschild-Serre sequence of ({spec.algebra.name}, {sub.algebra.name}; {v.name})")
        for r in range(1, top + 2):
            sh = sheet(fc, r)
            pages[f"E_{r}"] = {f"{p},{q}": d for (p, q), d in sorted(sh.dims.items())}
            report.lines.append(f"E_{r}:")
            report.lines += ["  " + line for line in sh.render().splitlines()]
        lim = limit_sheet(fc)
        tot = totals(lim, top)
        report.lines.append(f"E_inf totals by degree: {tot}")
        out[v.name] = {"pages": pages, "totals": tot}
        report.add([check_e1_isomorphism(sub, v), check_convergence(sub, v), check_page_homology(sub, v)])
    report.data["modules"] = out


def cmd_model(args, report: Report) -> None:
    from .weights import build_model, model_report, parse_rep
    try:
        tag, param = parse_rep(args.rep)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.top_weight < 4:
        raise InputError("--top-weight must be at least 4")
    report.add(model_report(tag, param, args.top_weight))
    if args.matrices:
        m = build_model(tag, param, args.top_weight)
        report.lines.append(f"{m.label}, weights {m.weights[0]}..{m.weights[-1]}")
        mats = {}
        for name in ("H0", "Hp", "Hm", "E", "H", "F"):
            mat = getattr(m, name)
            report.lines.append(f"  {name}:")
            report.lines += _format_matrix(mat)
            mats[name] = [[str(x) for x in row] for row in mat.rows]
        report.data["matrices"] = mats


def cmd_table(args, report: Report) -> None:
    from .assembly import (SpectrumError, assembled_dims, foliation_cohomology_dims,
                           parse_coefficient, parse_spectrum, synthetic_spectrum)
    try:
        coeff = parse_coefficient(args.coeff)
        if args.spectrum:
            try:
                with open(args.spectrum, encoding="utf-8") as fh:
                    st = parse_spectrum(fh.read(), args.genus)
            except OSError as exc:
                raise InputError(f"{args.spectrum}: {exc.strerror}") from None
        else:
            st = synthetic_spectrum(args.genus)
    except (SpectrumError, ValueError) as exc:
        raise InputError(str(exc)) from None
    table = foliation_cohomology_dims(coeff, st)
    report.lines.append(f"H^*(F; {coeff.label}) at genus {st.genus} = {list(table.dims)}")
    if table.classification is not None:
        report.lines.append(f"  classification: {table.classification.describe()}")
    for note in table.notes:
        report.lines.append(f"  note: {note}")
    if table.synthetic_spectrum:
        report.lines.append("  spectrum: built-in SYNTHETIC example (pass --spectrum for real data)")
    report.data["table"] = {
        "coefficient": coeff.label, "genus": st.genus, "dims": list(table.dims),
        "classification": table.classification.kind if table.classification else None,
        "notes": list(table.notes), "synthetic_spectrum": table.synthetic_spectrum,
    }

    def crosscheck():
        summed = assembled_dims(coeff, st)
        return sum(x != y for x, y in zip(summed, table.dims)), {"block_sum": summed}
    report.add([timed(f"assembly[g={st.genus},{coeff.label}]", crosscheck)])


# --- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured report")
    common.add_argument("--no-timing", action="store_true",
                        help="omit timings so output is byte-for-byte reproducible")

    parser = argparse.ArgumentParser(prog="sl2hodge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sl2hodge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run identity and consistency suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--trace", action="store_true", help="print and replay rewrite transcripts")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", parents=[common], help="Lie algebra cohomology of a spec file")
    p.add_argument("file")
    p.add_argument("--matrices", action="store_true", help="also print the differentials")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("spectral", parents=[common], help="Hochschild-Serre pages of a spec file")
    p.add_argument("file")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("model", parents=[common], help="truncated weight model checks")
    p.add_argument("--rep", required=True, help="D<n>+, D<n>- or H<mu>, e.g. D1+ or H-1/9")
    p.add_argument("--top-weight", type=int, required=True)
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("table", parents=[common], help="leafwise cohomology dimensions")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--coeff", required=True, help="c:<scalar>, an or sl2")
    p.add_argument("--spectrum", help="file of 'nu multiplicity' lines")
    p.set_defaults(func=cmd_table)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    report = Report(argv, timing=not args.no_timing)
    try:
        args.func(args, report)
    except InputError as exc:
        print(f"sl2hodge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.json() if args.json else report.text())
    return EXIT_OK if report.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "Report", "SUITES"]
