"""Command-line front end: ``mhc-ore verify <file>`` and ``mhc-ore demo <name>``.

Exit codes: 0 when every selected suite passes, 1 when a law fails, 2 on
input or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import product

from .iso import build_phi_hat, check_hypotheses, verify_iso
from .laws import Checker, LawResult, SuiteReport
from .ore import (
    Extension,
    NotAPointCharacter,
    check_conditions,
    check_ext_coassociativity,
    derived_identities,
    verify_extension,
)
from .io import SUITES, InputError, antipode_poly, build, fixture_names, load_fixture, load_path, validate
from .star import star_suite

__all__ = ["main", "run_document", "run_experiment", "run_pack", "render_text", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1.0"


def loop_suite(loop) -> SuiteReport:
    n, m, inv = loop.order, loop.table, loop.inv
    ch = Checker(None, [])
    pairs = list(product(range(n), repeat=2))
    desc = lambda xy: [loop.name(xy[0]), loop.name(xy[1])]
    nm = loop.name
    rep = SuiteReport("loop")
    rep.add(LawResult("Latin square with identity and two-sided inverses", "pass", n * n))
    rep.add(ch.scalar_law("left-IP x^-1(xy)=y", pairs,
                          lambda xy: (nm(m[inv[xy[0]]][m[xy[0]][xy[1]]]), nm(xy[1])), describe=desc))
    rep.add(ch.scalar_law("right-IP (yx)x^-1=y", pairs,
                          lambda xy: (nm(m[m[xy[1]][xy[0]]][inv[xy[0]]]), nm(xy[1])), describe=desc))
    rep.add(ch.scalar_law("AAIP (xy)^-1=y^-1x^-1", pairs,
                          lambda xy: (nm(inv[m[xy[0]][xy[1]]]), nm(m[inv[xy[1]]][inv[xy[0]]])), describe=desc))
    wa = loop.associativity_witness()
    rep.notes.append("associative" if wa is None else "nonassociative: ({0}{1}){2} != {0}({1}{2})".format(*wa))
    wm = loop.moufang_witness()
    rep.notes.append("Moufang" if wm is None else "not Moufang at z,x,y = {}, {}, {}".format(*wm))
    return rep.finish()


def _refused(suite: str, why: str) -> SuiteReport:
    rep = SuiteReport(suite, status="refused")
    rep.add(LawResult(suite, "refused", note=why))
    return rep


def _skipped(suite: str, why: str) -> SuiteReport:
    return SuiteReport(suite, status="skipped", notes=[why])


def run_suite(ex, suite: str, radius: int, maxdeg: int, cache: dict) -> SuiteReport:
    A, D = ex.A, ex.ore

    def extension():
        if "E" not in cache:
            try:
                cache["E"] = Extension(D, antipode_poly(ex.antipode_y))
            except NotAPointCharacter as exc:
                cache["E"] = exc
        return cache["E"]

    if suite == "loop":
        return loop_suite(A.loop)
    if suite == "mhc":
        return A.check_mhc_axioms(radius)
    if suite == "coassoc":
        rep = A.check_coassociativity(radius)
        E = extension()
        if isinstance(E, Extension):
            for r in check_ext_coassociativity(E, radius, min(maxdeg, 1)).laws:
                rep.add(r)
            rep.status = None
        return rep.finish()
    if suite == "ore-conditions":
        return check_conditions(D, radius)
    if suite == "extension":
        E = extension()
        if not isinstance(E, Extension):
            return _refused("extension", str(E))
        return verify_extension(E, radius, maxdeg)
    if suite == "derived":
        E = extension()
        return derived_identities(D, radius, E if isinstance(E, Extension) else None)
    if suite == "star":
        if not ex.star:
            return _skipped("star", "no star section enabled in the input")
        E = extension()
        return star_suite(D, radius, maxdeg, E if isinstance(E, Extension) else None)
    if suite == "iso":
        if ex.phi is None:
            return _skipped("iso", "no iso section in the input")
        hyp = check_hypotheses(ex.phi, D, ex.target, ex.d_prime, radius)
        rep = SuiteReport("iso", list(hyp.laws))
        if not hyp.ok:
            rep.add(LawResult("build_phi_hat", "refused", note="hypotheses fail: " + ", ".join(hyp.failed())))
            return rep.finish()
        E = extension()
        try:
            E2 = Extension(ex.target, antipode_poly(ex.target_antipode_y))
        except NotAPointCharacter as exc:
            E2 = exc
        if not isinstance(E, Extension) or not isinstance(E2, Extension):
            rep.add(LawResult("build_phi_hat", "refused", note="both characters must be point evaluations"))
            return rep.finish()
        ph = build_phi_hat(ex.phi, E, E2, ex.d_prime, hyp)
        rep.add(LawResult("build_phi_hat", "pass", 1))
        for r in verify_iso(ph, radius, maxdeg, ex.star).laws:
            rep.add(r)
        return rep.finish()
    raise InputError("/suites", f"unknown suite {suite!r}")


def run_experiment(ex, suites=None, radius=None, maxdeg=None, timing: bool = False) -> dict:
    suites = list(suites or ex.suites)
    radius = ex.radius if radius is None else radius
    maxdeg = ex.maxdeg if maxdeg is None else maxdeg
    cache = {}
    reports, times = [], {}
    for s in SUITES:
        if s not in suites:
            continue
        t0 = time.perf_counter()
        rep = run_suite(ex, s, radius, maxdeg, cache)
        times[s] = round(time.perf_counter() - t0, 3)
        if s in ("mhc", "ore-conditions") and ex.A.warnings:
            rep.notes = list(dict.fromkeys(rep.notes + ex.A.warnings))
        reports.append(rep)
    bad = any(r.status in ("fail", "refused") for r in reports)
    out = {
        "schema_version": SCHEMA_VERSION,
        "name": ex.name,
        "config": {"suites": [r.suite for r in reports], "radius": radius, "maxdeg": maxdeg},
        "status": "fail" if bad else "pass",
        "suites": [r.to_json() for r in reports],
        "witnesses": [dict(w.to_json(), suite=r.suite) for r in reports for w in r.witnesses],
    }
    if timing:
        out["timing"] = times
    out["_reports"] = reports
    return out


def run_pack(doc: dict, radius=None, maxdeg=None, timing: bool = False) -> dict:
    """Each member must fail exactly its expected laws, with witnesses that re-fail."""
    entries = []
    for i, item in enumerate(doc["pack"]):
        try:
            ex = build(item["document"], item["name"])
        except InputError as exc:
            raise InputError(f"/pack/{i}/document{exc.path if exc.path != '/' else ''}", exc.message) from None
        suite = item["expect"]["suite"]
        res = run_experiment(ex, [suite], radius, maxdeg, timing)
        rep = res.pop("_reports")[0]
        failed = rep.failed()
        replay = all(w.refails() for w in rep.witnesses if w.replay is not None)
        ok = sorted(failed) == sorted(item["expect"]["laws"]) and replay and bool(rep.witnesses)
        entry = {
            "name": item["name"],
            "suite": suite,
            "expected": list(item["expect"]["laws"]),
            "failed": failed,
            "witnesses_refail": replay,
            "status": "pass" if ok else "fail",
            "report": res,
        }
        entries.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "name": doc.get("name", "pack"),
        "status": "pass" if all(e["status"] == "pass" for e in entries) else "fail",
        "pack": entries,
    }


def run_document(doc: dict, name: str = "input", suites=None, radius=None, maxdeg=None, timing=False) -> dict:
    validate(doc)
    if "pack" in doc:
        return run_pack(doc, radius, maxdeg, timing)
    ex = build(doc, name)
    out = run_experiment(ex, suites, radius, maxdeg, timing)
    out.pop("_reports")
    return out


# -- rendering ------------------------------------------------------------------


def _text_lines(report: dict, indent: str = "") -> list:
    lines = []
    if "pack" in report:
        lines.append(f"{indent}{report['name']}: {report['status']}")
        for e in report["pack"]:
            lines.append(f"{indent}  [{e['status']}] {e['name']} ({e['suite']}): "
                         f"expected {', '.join(e['expected'])}; failed {', '.join(e['failed']) or 'nothing'}")
            for w in e["report"]["witnesses"]:
                lines.append(f"{indent}      {_witness_text(w)}")
        return lines
    cfg = report["config"]
    lines.append(f"{indent}{report['name']}: {report['status']} (radius {cfg['radius']}, maxdeg {cfg['maxdeg']})")
    for s in report["suites"]:
        n_pass = sum(1 for l in s["laws"] if l["status"] == "pass")
        lines.append(f"{indent}  {s['suite']}: {s['status']} ({n_pass}/{len(s['laws'])} laws pass)")
        for l in s["laws"]:
            if l["status"] == "pass":
                continue
            lines.append(f"{indent}    {l['status'].upper()} {l['law']}")
            if "witness" in l:
                lines.append(f"{indent}      {_witness_text(l['witness'])}")
            if "note" in l:
                lines.append(f"{indent}      note: {l['note']}")
        for note in s.get("notes", []):
            lines.append(f"{indent}    note: {note}")
    if "timing" in report:
        lines.append(f"{indent}  timing: " + ", ".join(f"{k} {v}s" for k, v in report["timing"].items()))
    return lines


def _witness_text(w: dict) -> str:
    where = " ".join(w["component"])
    deg = f" deg {tuple(w['degree'])}" if "degree" in w else ""
    out = f"{w['law']}: {w['lhs']} != {w['rhs']}"
    if where:
        out += f" at {where}"
    out += f"{deg} [{', '.join(w['input'])}]"
    if "note" in w:
        out += f"; {w['note']}"
    return out


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(report)) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- entry point ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mhc-ore", description="Exact law checker for Ore extensions of F(Z^m x G).")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--radius", type=int, default=None, help="window radius (default: from input, else 2)")
        sp.add_argument("--maxdeg", type=int, default=None, help="max y-degree (default: from input, else 3)")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--timing", action="store_true", help="include per-suite wall-clock times")

    v = sub.add_parser("verify", help="check an input document")
    v.add_argument("file")
    v.add_argument("--suites", default=None, help="comma-separated subset of " + ",".join(SUITES))
    common(v)
    d = sub.add_parser("demo", help="run a bundled fixture")
    d.add_argument("name")
    common(d)
    sub.add_parser("list", help="list bundled fixtures")
    return p


def main(argv=None) -> int:
    p = _parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = sys.stdout
    try:
        if args.cmd == "list":
            out.write("\n".join(fixture_names()) + "\n")
            return 0
        if args.radius is not None and args.radius < 0:
            raise InputError("--radius", "must be nonnegative")
        if args.maxdeg is not None and args.maxdeg < 0:
            raise InputError("--maxdeg", "must be nonnegative")
        suites = None
        if args.cmd == "verify":
            doc, name = load_path(args.file), args.file
            if args.suites:
                suites = [s.strip() for s in args.suites.split(",") if s.strip()]
                unknown = [s for s in suites if s not in SUITES]
                if unknown or not suites:
                    raise InputError("--suites", f"unknown suites {unknown}" if unknown else "no suites given")
        else:
            try:
                doc, name = load_fixture(args.name), args.name
            except KeyError:
                raise InputError("demo", f"unknown demo {args.name!r}; choose from {', '.join(fixture_names())}") from None
        report = run_document(doc, name, suites, args.radius, args.maxdeg, args.timing)
    except InputError as exc:
        sys.stderr.write(f"input error at {exc.path}: {exc.message}\n")
        return 2
    out.write(render_json(report) if args.format == "json" else render_text(report))
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
