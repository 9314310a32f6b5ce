"""Command-line front end: ``zsgroupoid <command> FILE [options]``.

Exit codes: 0 when every check passes, 1 when a check found violations, 2 for
unreadable input, schema violations and structural or precondition errors.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .algebra import RTOL, check_slice_norms, full_norm
from .blend import blend_density
from .constructions import semidirect_skew_isomorphism_check, skew_matched_pair, skew_product
from .dynamics import dr_zs_decomposition_check, star_commuting_check
from .errors import GroupoidError, SearchTooLarge, VerificationFailed
from .groupoid import DEFAULT_MAX_SIZE, validate_groupoid
from .kgraph import coaligned_check, hypotheses_certificate, validate_two_graph
from .report import label
from .zs import (
    ZS_AXIOMS,
    build_zs_product,
    check_derived_identities,
    internal_decompose,
    verify_matched_pair,
)

EXIT = {"ok": 0, "violations": 1, "error": 2}


@dataclass
class Report:
    """What one invocation found; ``fields`` are the details shown in text mode."""

    command: str
    status: str
    summary: str
    details: dict = field(default_factory=dict)
    fields: tuple = ()
    lines: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def to_dict(self) -> dict:
        return {"status": self.status, "command": self.command, **self.details, "exit_code": self.exit_code}

    def to_text(self) -> str:
        out = [f"{self.status}: {self.summary}"]
        if self.fields:
            width = max(len(k) for k in self.fields)
            for key in self.fields:
                out.append(f"  {key.ljust(width)}  {_fmt(self.details[key])}")
        out += [f"  {line}" for line in self.lines]
        return "\n".join(out)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, dict):
        return " ".join(f"{k}={_fmt(v)}" for k, v in value.items())
    return str(value)


def _plural(n: int, word: str, many: str | None = None) -> str:
    return f"{n} {word}" if n == 1 else f"{n} {many or word + 's'}"


def _status(ok: bool) -> str:
    return "ok" if ok else "violations"


def _guard(args, *sizes: int) -> None:
    total = sum(sizes)
    if total > args.max_size:
        raise SearchTooLarge(f"input has {total} elements, above --max-size {args.max_size}")


# -- commands ----------------------------------------------------------------------


def cmd_validate(args) -> Report:
    g = io.load_groupoid(args.file)
    _guard(args, len(g))
    rep = validate_groupoid(g)
    details = {**rep.to_dict(), "elements": len(g), "units": len(g.units)}
    del details["status"]
    summary = f"groupoid with {_plural(len(g), 'element')}, {_plural(len(g.units), 'unit')}"
    return Report("validate", _status(rep.ok), summary, details, lines=[str(v) for v in rep.violations])


def cmd_zs_check(args) -> Report:
    mp = io.load_matched_pair(args.file)
    _guard(args, len(mp.g), len(mp.h))
    axioms = verify_matched_pair(mp)
    derived = check_derived_identities(mp)
    ok = axioms.ok and derived.ok
    details = {
        "axioms": {a: axioms.status(a) for a in ZS_AXIOMS},
        "derived": {rule: derived.status(rule) for rule in derived.rules},
        "checked": sum(axioms.checked.values()) + sum(derived.checked.values()),
        "violations": [v.to_dict() for v in axioms.violations + derived.violations],
        "domain_errors": [v.to_dict() for v in axioms.domain_errors + derived.domain_errors],
    }
    summary = (
        f"matched pair of {_plural(len(mp.g), 'element')} and {_plural(len(mp.h), 'element')}"
        f" over {_plural(len(mp.unit_map), 'unit')}"
    )
    lines = [str(v) for v in axioms.violations + derived.violations + axioms.domain_errors + derived.domain_errors]
    return Report("zs-check", _status(ok), summary, details, ("axioms", "derived", "checked"), lines)


def cmd_zs_build(args) -> Report:
    mp = io.load_matched_pair(args.file)
    _guard(args, len(mp.g), len(mp.h))
    try:
        zs = build_zs_product(mp)
    except VerificationFailed as exc:
        rep = exc.report
        details = {"axioms": {a: rep.status(a) for a in ZS_AXIOMS}, "violations": [v.to_dict() for v in rep.violations]}
        return Report("zs-build", "violations", "matched pair does not verify", details, ("axioms",),
                      [str(v) for v in rep.violations + rep.domain_errors])
    val = validate_groupoid(zs.product)
    details = {
        "elements": len(zs.product),
        "units": len(zs.product.units),
        "groupoid_ok": val.ok,
        "units_match": len(zs.product.units) == len(mp.unit_map),
    }
    if args.output:
        io.write_json(args.output, zs.product.to_dict())
        details["output"] = str(args.output)
    ok = val.ok and details["units_match"]
    summary = f"product with {_plural(len(zs.product), 'element')}, {_plural(len(zs.product.units), 'unit')}"
    shown = ("elements", "units", "groupoid_ok", "units_match") + (("output",) if args.output else ())
    return Report("zs-build", _status(ok), summary, details, shown)


def cmd_decompose(args) -> Report:
    k = io.load_groupoid(args.file)
    _guard(args, len(k))
    if not args.gsub or not args.hsub:
        raise io.InputError("decompose needs --gsub and --hsub subset files")
    gsub, hsub = io.load_subset(args.gsub), io.load_subset(args.hsub)
    for path, sub in ((args.gsub, gsub), (args.hsub, hsub)):
        for i, x in enumerate(sub):
            if x not in k:
                raise io.InputError(f"{path}: entry /{i} ({x!r}) is not an element of {args.file}", str(path), f"/{i}")
    dec = internal_decompose(k, gsub, hsub)
    details = {"found": dec.found, "g_elements": len(set(gsub)), "h_elements": len(set(hsub))}
    lines = []
    if dec.witnesses:
        details["witnesses"] = [
            {"element": label(z), "factorisations": [[label(x), label(y)] for x, y in fs]}
            for z, fs in dec.witnesses
        ]
        lines = [f"{label(z)} has {_plural(len(fs), 'factorisation')}" for z, fs in dec.witnesses]
    if dec.report is not None:
        details["axioms"] = {a: dec.report.status(a) for a in ZS_AXIOMS}
        lines += [str(v) for v in dec.report.violations]
    if dec.found and args.output:
        io.write_json(args.output, dec.pair.to_dict())
        details["output"] = str(args.output)
    summary = f"{'internal' if dec.found else 'no internal'} Zappa-Szep decomposition of {len(k)} elements"
    return Report("decompose", _status(dec.found), summary, details, ("found", "g_elements", "h_elements"), lines)


def cmd_blend_check(args) -> Report:
    mp = io.load_matched_pair(args.file)
    _guard(args, len(mp.g), len(mp.h))
    zs = build_zs_product(mp)
    wit = blend_density(zs, seed=args.seed, rtol=args.tol)
    details = wit.to_dict()
    summary = f"blend of {_plural(len(mp.g), 'element')} and {_plural(len(mp.h), 'element')}"
    return Report("blend-check", _status(wit.ok), summary, details, tuple(details))


def cmd_norms(args) -> Report:
    f = io.load_function(args.file)
    _guard(args, len(f.base))
    rep = check_slice_norms(f, rtol=args.tol)
    details = {**rep.to_dict(), "full": full_norm(f)}
    bounded = details["reduced"] <= details["I"] * (1 + args.tol) + 1e-12
    details["reduced_le_I"] = bounded
    summary = f"function on {_plural(len(f.support), 'element')} of a {len(f.base)}-element groupoid"
    return Report("norms", _status(rep.ok and bounded), summary, details, tuple(details))


def cmd_skew_build(args) -> Report:
    c = io.load_cocycle(args.file)
    _guard(args, len(c.domain) * len(c.target))
    g = c.domain
    gc = skew_product(g, c)
    mp = skew_matched_pair(g, c)
    axioms = verify_matched_pair(mp)
    details = {
        "elements": len(gc),
        "units": len(gc.units),
        "groupoid_ok": validate_groupoid(gc).ok,
        "matched_pair_ok": axioms.ok,
        "h_elements": len(mp.h),
    }
    if args.output:
        io.write_json(args.output, gc.to_dict())
        details["output"] = str(args.output)
    if args.pair_output:
        io.write_json(args.pair_output, mp.to_dict())
        details["pair_output"] = str(args.pair_output)
    ok = details["groupoid_ok"] and axioms.ok
    summary = f"skew product with {_plural(len(gc), 'element')}, {_plural(len(gc.units), 'unit')}"
    return Report("skew-build", _status(ok), summary, details, tuple(details), [str(v) for v in axioms.violations])


def cmd_skew_iso(args) -> Report:
    c = io.load_cocycle(args.file)
    _guard(args, len(c.domain) * len(c.target) ** 2)
    rep = semidirect_skew_isomorphism_check(c.domain, c)
    details = rep.to_dict()
    summary = "semidirect-skew isomorphism " + ("verified" if rep.ok else f"failed at stage {rep.failed_stage}")
    lines = [rep.detail] if rep.detail else []
    return Report("skew-iso", _status(rep.ok), summary, details, lines=lines)


def cmd_dr_check(args) -> Report:
    pair = io.load_endo(args.file)
    _guard(args, len(pair.carrier))
    star = star_commuting_check(pair)
    details = {"lag_bound": args.lag, **star.to_dict()}
    lines = [str(w) for w in star.witnesses]
    if not star.star_commute:
        return Report("dr-check", "violations", "maps do not *-commute", details, ("commute", "star_commute"), lines)
    dec = dr_zs_decomposition_check(pair, args.lag)
    details["decomposition"] = dec.to_dict()
    shown = {k: v for k, v in dec.to_dict().items() if k not in ("status", "violations", "lag_bound")}
    details["window"] = shown
    lines += [str(v) for v in dec.violations]
    summary = f"windowed Deaconu-Renault check on {_plural(len(pair.carrier), 'point')}, K = {args.lag}"
    return Report("dr-check", _status(dec.ok), summary, details, ("commute", "star_commute", "window"), lines)


def cmd_kgraph_check(args) -> Report:
    tg = io.load_two_graph(args.file)
    _guard(args, len(tg.vertices) + len(tg.blue) + len(tg.red))
    val = validate_two_graph(tg)
    coal = coaligned_check(tg)
    cert = hypotheses_certificate(tg)
    details = {
        "valid": val.ok,
        "rules": {rule: val.status(rule) for rule in val.rules},
        "one_coaligned": coal.one_coaligned,
        "fill_in_counts": [[e1, e2, n] for (e1, e2), n in coal.counts.items()],
        "certificate": {k: v for k, v in cert.to_dict().items() if k not in ("status", "witnesses")},
        "witnesses": [w.to_dict() for w in cert.witnesses],
    }
    summary = f"2-graph with {_plural(len(tg.vertices), 'vertex', 'vertices')}, {len(tg.blue)} blue and {len(tg.red)} red edges"
    return Report("kgraph-check", _status(cert.hypotheses_hold), summary, details,
                  ("valid", "one_coaligned", "certificate"), [str(w) for w in cert.witnesses])


COMMANDS = {
    "validate": (cmd_validate, "check the groupoid axioms on a groupoid file"),
    "zs-check": (cmd_zs_check, "verify the matched-pair axioms ZS1-ZS9 and derived identities"),
    "zs-build": (cmd_zs_build, "build the Zappa-Szep product of a matched pair"),
    "decompose": (cmd_decompose, "recognise an internal Zappa-Szep product"),
    "blend-check": (cmd_blend_check, "check that the factor algebras blend into the product algebra"),
    "norms": (cmd_norms, "sup, I- and reduced norms of a function file"),
    "skew-build": (cmd_skew_build, "skew product and its matched pair from a cocycle file"),
    "skew-iso": (cmd_skew_iso, "check the semidirect-skew isomorphism for a cocycle file"),
    "dr-check": (cmd_dr_check, "*-commuting check and windowed Deaconu-Renault decomposition"),
    "kgraph-check": (cmd_kgraph_check, "2-graph validity, 1-coalignment and blend hypotheses"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zsgroupoid", description="Finite groupoid and Zappa-Szep product verifier.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("file", type=Path, help="input JSON file")
        p.add_argument("--json", action="store_true", help="emit the machine-readable report")
        p.add_argument("--tol", type=float, default=RTOL, help="relative tolerance (default 1e-9)")
        p.add_argument("--lag", type=int, default=1, help="window bound K for dr-check")
        p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, help="refuse larger inputs")
        p.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
        if name in ("zs-build", "decompose", "skew-build"):
            p.add_argument("-o", "--output", type=Path, help="write the constructed object here")
        if name == "decompose":
            p.add_argument("--gsub", type=Path, help="JSON list of labels of the first subgroupoid")
            p.add_argument("--hsub", type=Path, help="JSON list of labels of the second subgroupoid")
        if name == "skew-build":
            p.add_argument("--pair-output", type=Path, help="write the skew matched pair here")
    return parser


def execute(args: argparse.Namespace) -> Report:
    """Run one parsed command; input problems become an ``error`` report."""
    handler = COMMANDS[args.command][0]
    try:
        if args.lag < 0:
            raise io.InputError("--lag must be non-negative")
        return handler(args)
    except VerificationFailed as exc:
        lines = [str(v) for v in exc.report.violations] if exc.report else []
        return Report(args.command, "violations", str(exc), {"error": str(exc)}, lines=lines)
    except (GroupoidError, ValueError, KeyError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"unknown label {exc.args[0]!r}"
        if not isinstance(exc, io.InputError) or not exc.path:
            msg = f"{args.file}: {msg}"
        return Report(args.command, "error", msg, {"error": msg})


def run(argv: Sequence[str] | None = None) -> Report:
    return execute(build_parser().parse_args(argv))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report = execute(args)
    as_json = args.json
    if report.status == "error":
        print(f"error: {report.summary}", file=sys.stderr)
        if as_json:
            print(io.dumps(report.to_dict()))
        return report.exit_code
    print(io.dumps(report.to_dict()) if as_json else report.to_text())
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
