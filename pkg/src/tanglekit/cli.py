"""Command-line front end.

Exit codes: 0 pass, 1 input error, 2 violation (geography failure, failed
check, obstruction), 3 undecided within resource caps.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import ainfty
from . import cube as cb
from . import curves as cv
from . import library as lib
from . import pairing
from . import report
from . import simplify
from . import tangles as tg
from .typed import TypeD, central_action, is_nullhomotopic, WindowNotStabilized

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_UNDECIDED = 0, 1, 2, 3
SUITES = ("geography", "connectivity", "gluing-consistency", "ainfty", "extension")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


class _Spec(argparse.Action):
    """Collect tangle inputs in command-line order."""

    def __call__(self, parser, ns, values, option_string=None):
        specs = list(getattr(ns, "specs", None) or [])
        specs.append((self.dest, values))
        ns.specs = specs


def _add_inputs(p):
    p.add_argument("--file", dest="file", action=_Spec, metavar="PATH", help="tangle file")
    p.add_argument("--rational", dest="rational", action=_Spec, metavar="P/Q",
                   help="rational tangle of the given slope (inf allowed)")
    p.add_argument("--pretzel", dest="pretzel", action=_Spec, nargs="+", metavar="K",
                   help="pretzel tangle with the given column twists")
    p.add_argument("--lib", dest="lib", action=_Spec, metavar="NAME", help="library entry")
    p.set_defaults(specs=[])


def _add_common(p):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--max-u-order", type=int, default=8)
    p.add_argument("--window", type=int, default=4,
                   help="number of quiet q-levels that certifies a homology window")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tanglekit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"tanglekit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="build DD and DD1, reduce, classify, check geography")
    p.add_argument("paths", nargs="*", help="tangle files")
    _add_inputs(p)
    _add_common(p)

    p = sub.add_parser("pair", help="glue two tangles and compare with the oracle")
    p.add_argument("paths", nargs="*")
    _add_inputs(p)
    _add_common(p)

    p = sub.add_parser("twist", help="twist a tangle's invariant by a word in t1, t2, T1, T2")
    p.add_argument("word", nargs="+")
    _add_inputs(p)
    _add_common(p)

    p = sub.add_parser("verify", help="run property suites over the bundled library")
    p.add_argument("suites", nargs="*", default=["all"])
    _add_common(p)

    p = sub.add_parser("extend", help="solve for an extension over the U-deformed algebra")
    p.add_argument("paths", nargs="*")
    _add_inputs(p)
    p.add_argument("--complex", dest="complex_file", metavar="JSON",
                   help="type D structure in JSON instead of a tangle")
    p.add_argument("--which", choices=("dd", "dd1", "both"), default="both")
    _add_common(p)

    p = sub.add_parser("oracle", help="reduced Khovanov homology of a closed diagram")
    p.add_argument("paths", nargs="*", help="closed diagram file, or two tangle files to glue")
    _add_inputs(p)
    _add_common(p)
    return ap


# ---------------------------------------------------------------- inputs

def _load_spec(kind, value) -> tg.Tangle:
    try:
        if kind == "file":
            with open(value) as fh:
                T = tg.parse(fh.read())
            T.name = T.name or value
            return T
        if kind == "rational":
            return tg.rational(tg.parse_slope(value))
        if kind == "pretzel":
            return tg.pretzel([int(k) for k in value])
        if kind == "lib":
            entries = lib.load_library()
            if value not in entries:
                raise InputError(f"no library entry {value!r}")
            e = entries[value]
            if e.kind != "tangle":
                raise InputError(f"library entry {value!r} is a {e.kind}, not a tangle")
            return e.tangle
    except (OSError, ValueError, ZeroDivisionError) as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown input kind {kind}")


def _tangles(args) -> list:
    specs = [("file", p) for p in getattr(args, "paths", [])] + list(args.specs)
    return [_load_spec(k, v) for k, v in specs]


def _one(args) -> tg.Tangle:
    ts = _tangles(args)
    if len(ts) != 1:
        raise InputError(f"expected one tangle, got {len(ts)}")
    if ts[0].closed:
        raise InputError("expected a four-ended tangle, got a closed diagram")
    return ts[0]


# ---------------------------------------------------------------- commands

def _curve_list(cl) -> list:
    return [str(c) for c, _ in cl.curves]


def cmd_compute(args):
    T = _one(args)
    DD = cb.build_DD(T)
    DD1 = cb.build_DD1(T, DD)
    rDD, rDD1 = simplify.reduce(DD), simplify.reduce(DD1)
    geo = cv.geography_check(rDD1)
    conn = T.connectivity()
    odd = None if T.loops else cv.odd_count_check(geo.curves)
    body = {
        "tangle": T.name, "crossings": T.n, "closed_components": T.loops,
        "connectivity": conn, "writhe": list(T.writhe_data()),
        "sizes": {"DD": len(DD), "DD1": len(DD1), "reduced_DD": len(rDD), "reduced_DD1": len(rDD1)},
        "components": [str(c) for c in geo.curves],
        "geography": geo.as_dict(),
        "odd_count_ok": odd,
        "DD": DD.to_json_obj(), "DD1": DD1.to_json_obj(),
        "reduced": {"DD": rDD.to_json_obj(), "DD1": rDD1.to_json_obj()},
    }
    ok = geo.ok and odd is not False
    text = [f"tangle {T.name}: {T.n} crossings, connectivity {conn}",
            f"DD {len(DD)} generators, DD1 {len(DD1)}; reduced {len(rDD)} and {len(rDD1)}",
            "components: " + (", ".join(body["components"]) or "(none)"),
            f"geography: {'pass' if geo.ok else 'FAIL'}"]
    for issue in geo.issues:
        text.append(f"  {issue}")
    if odd is not None:
        text.append(f"odd-count parity: {'pass' if odd else 'FAIL'}")
    return report.envelope("compute", body), text, EXIT_OK if ok else EXIT_VIOLATION


def cmd_pair(args):
    ts = _tangles(args)
    if len(ts) != 2:
        raise InputError(f"pair needs two tangles, got {len(ts)}")
    r = pairing.glue(ts[0], ts[1], oracle=True, band=args.window)
    body = {"tangles": [t.name for t in ts], **r.to_json_obj(),
            "checks": {"doubled": r.doubled, "delta_copies_agree": r.delta_copies_agree,
                       "matches_oracle": r.matches_oracle}}
    windows = body.pop("windows")
    text = [f"{ts[0].name} glued to {ts[1].name}",
            f"khr_times_V total {r.khr_times_V.total}, khr_direct total {r.khr_direct.total}, "
            f"oracle total {r.oracle.total}",
            "khr_direct (relative):", r.khr_direct.normalized().to_text(),
            f"consistent: {r.consistent}"]
    return report.envelope("pair", body, windows), text, EXIT_OK if r.consistent else EXIT_VIOLATION


def cmd_twist(args):
    T = _one(args)
    try:
        word = cv.parse_word(args.word)
    except ValueError as e:
        raise InputError(str(e)) from None
    X = simplify.reduce(cb.build_DD1(T))
    before = cv.classify(X)
    if not before.ok:
        return (report.envelope("twist", {"tangle": T.name, "error": before.failure}),
                [f"classification failed: {before.failure}"], EXIT_VIOLATION)
    expected = []
    for c, _ in before.curves:
        p, q = cv.word_action(word, (c.p, c.q))
        expected.append(str(cv.Curve(c.kind, c.n, p, q)))
    after = cv.classify(cv.twist(X, word))
    U = T
    for w in word:
        U = tg.twist(U, *cv.DIAGRAM_TWIST[w])
    diag = cv.classify(simplify.reduce(cb.build_DD1(U)))
    got, got_d = sorted(_curve_list(after)), sorted(_curve_list(diag))
    ok = after.ok and diag.ok and got == sorted(expected) == got_d
    body = {"tangle": T.name, "word": word, "before": _curve_list(before),
            "expected": sorted(expected), "bimodule_twist": got, "diagram_twist": got_d,
            "consistent": ok}
    text = [f"{T.name}: {', '.join(_curve_list(before))}",
            f"after {' '.join(word)}: {', '.join(got)}",
            f"diagram twist: {', '.join(got_d)}",
            f"consistent: {ok}"]
    return report.envelope("twist", body), text, EXIT_OK if ok else EXIT_VIOLATION


def _extension_record(X: TypeD, max_u: int) -> dict:
    r = ainfty.extend(X, max_u_order=max_u)
    rec = {"status": r.status, "orders": r.orders, "message": r.message}
    if r.ext is not None:
        rec["u_arrows"] = [list(a) for a in r.ext.u_arrows()]
        rec["extension"] = r.ext.to_json_obj()
    if r.obstruction is not None:
        o = r.obstruction
        rec["obstruction"] = {"u_power": o.order, "pair": list(o.pair), "term": o.term,
                              "certified": o.certified}
    w = ainfty.wrap_obstruction(X)
    rec["wrap_witness"] = w
    return rec


def cmd_extend(args):
    targets = {}
    if args.complex_file:
        try:
            with open(args.complex_file) as fh:
                obj = json.load(fh)
            if obj.get("kind") == "extended":
                X = ainfty.ExtTypeD.from_json_obj(obj["complex"]).restrict0()
            else:
                X = TypeD.from_json_obj(obj.get("complex", obj))
            targets["complex"] = simplify.reduce(X)
        except (OSError, ValueError, KeyError) as e:
            raise InputError(f"cannot read complex: {e}") from None
        name = args.complex_file
    else:
        T = _one(args)
        name = T.name
        DD = cb.build_DD(T)
        if args.which in ("dd", "both"):
            targets["DD"] = simplify.reduce(DD)
        if args.which in ("dd1", "both"):
            targets["DD1"] = simplify.reduce(cb.build_DD1(T, DD))
    recs = {k: _extension_record(X, args.max_u_order) for k, X in targets.items()}
    statuses = {r["status"] for r in recs.values()}
    code = EXIT_OK
    if "obstructed" in statuses:
        code = EXIT_VIOLATION
    elif "undecided" in statuses:
        code = EXIT_UNDECIDED
    text = [f"extension of {name} (U-order cap {args.max_u_order})"]
    for k, r in recs.items():
        text.append(f"{k}: {r['status']} {r['message']}".rstrip())
        for s, lab, d in r.get("u_arrows", []):
            text.append(f"  {s} --{lab}--> {d}")
        if "obstruction" in r:
            o = r["obstruction"]
            text.append(f"  uncancelable U^{o['u_power']} term {o['term']} at {o['pair']}")
        if r["wrap_witness"]:
            text.append(f"  wrapping chain: {' '.join(r['wrap_witness'])}")
    return report.envelope("extend", {"input": name, "results": recs}), text, code


def cmd_oracle(args):
    ts = _tangles(args)
    if len(ts) == 1 and ts[0].closed:
        L = ts[0]
    elif len(ts) == 2:
        L = tg.glue(ts[0], ts[1])
    else:
        raise InputError("oracle needs a closed diagram or two tangles to glue")
    d = pairing.reduced_kh_oracle(L)
    body = {"link": L.name, "crossings": L.n, "total": d.total, "homology": d.to_json_obj(),
            "relative": d.normalized().to_json_obj()}
    text = [f"reduced Khovanov homology of {L.name} ({L.n} crossings): total {d.total}",
            d.normalized().to_text()]
    return report.envelope("oracle", body), text, EXIT_OK


# ---------------------------------------------------------------- verify

def _suite_row(task):
    """Run one (suite, entry) check; returns (suite, entry, ok, detail)."""
    suite, name, opts = task
    try:
        return (suite, name) + _SUITE_FUNCS[suite](name, opts)
    except WindowNotStabilized as e:
        return suite, name, False, f"window not stabilized: {e}"


def _entry(name):
    return lib.load_library()[name]


def _geo(name, opts):
    e = _entry(name)
    if e.kind == "tangle":
        X = simplify.reduce(cb.build_DD1(e.tangle))
        g = cv.geography_check(X)
        return g.ok, ", ".join(str(c) for c in g.curves) if g.ok else str(g.issues)
    if "violation" in e.tags:
        g = cv.geography_check(e.obj)
        return (not g.ok), "violation detected" if not g.ok else "violation missed"
    return None, "skip"


def _conn(name, opts):
    e = _entry(name)
    if e.kind != "tangle":
        return None, "skip"
    T = e.tangle
    X = simplify.reduce(cb.build_DD1(T))
    conn = T.connectivity()
    pat = cv.connectivity_tests(X)
    cl = cv.classify(X)
    based = all(cv.based_on(c) == cv.CONNECTIVITY_PAIR[conn]
                for c, _ in cl.curves if c.kind == "r" and c.n % 2 == 1)
    hnull = all(is_nullhomotopic(central_action("H", P), P, P)[0] for P in cl.parts)
    odd = True if T.loops else cv.odd_count_check([c for c, _ in cl.curves])
    ok = pat.case == conn and based and hnull and odd and cl.ok
    return ok, f"{conn}: pattern {pat.case}, based_on {based}, H null {hnull}, odd count {odd}"


def _glue(name, opts):
    T1, T2 = (f() for f in pairing.CLOSURES[name])
    r = pairing.glue(T1, T2, oracle=True, band=opts["window"])
    return r.consistent, f"direct {r.khr_direct.total}, times V {r.khr_times_V.total}, oracle {r.oracle.total}"


def _ainfty(name, opts):
    rep = ainfty.check_ainfty(8, 4, seed=opts["seed"])
    return rep.ok, f"{rep.checked} tuples, {rep.mode}" + ("" if rep.ok else f", witness {rep.witness}")


def _ext(name, opts):
    e = _entry(name)
    cap = opts["max_u_order"]
    if e.kind == "tangle":
        DD = cb.build_DD(e.tangle)
        r1 = ainfty.extend(simplify.reduce(DD), max_u_order=cap)
        r2 = ainfty.extend(simplify.reduce(cb.build_DD1(e.tangle, DD)), max_u_order=cap)
        ok = r1.ok and r2.ok and not _bare_u(r1) and not _bare_u(r2)
        return ok, f"DD {r1.status}, DD1 {r2.status}"
    if e.kind == "extended":
        r = ainfty.extend(e.obj.restrict0(), max_u_order=cap)
        match = r.ok and sorted(r.ext.u_arrows()) == sorted(e.obj.u_arrows())
        return match, f"{r.status}, displayed arrows {'matched' if match else 'differ'}"
    if "wrapping" in e.tags:
        r = ainfty.extend(e.obj, max_u_order=cap)
        ok = r.status == "obstructed" and r.obstruction.certified and r.obstruction.order == 2
        return ok, f"{r.status} at U^{r.obstruction.order if r.obstruction else '-'}"
    return None, "skip"


def _bare_u(r) -> bool:
    """An arrow labelled U or U*S would contradict quantum parity."""
    if r.ext is None:
        return False
    return any(u % 2 for lab in r.ext.arrows.values() for u, _ in lab.terms)


_SUITE_FUNCS = {"geography": _geo, "connectivity": _conn, "gluing-consistency": _glue,
                "ainfty": _ainfty, "extension": _ext}


def suite_tasks(suites, opts) -> list:
    entries = lib.load_library()
    tasks = []
    for s in suites:
        if s == "gluing-consistency":
            names = list(pairing.CLOSURES)
        elif s == "ainfty":
            names = ["disk-sequences"]
        elif s == "connectivity":
            names = [k for k, e in entries.items() if e.kind == "tangle"]
        else:
            names = list(entries)
        tasks += [(s, n, opts) for n in names]
    return tasks


def run_suites(suites, opts, jobs: int = 1) -> list:
    tasks = suite_tasks(suites, opts)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_suite_row, tasks))
    else:
        rows = [_suite_row(t) for t in tasks]
    return [r for r in rows if r[2] is not None]


def cmd_verify(args):
    suites = list(SUITES) if args.suites in (["all"], []) else args.suites
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise InputError(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}")
    opts = {"seed": args.seed, "window": args.window, "max_u_order": args.max_u_order}
    rows = run_suites(suites, opts, args.jobs)
    ok = all(r[2] for r in rows)
    body = {"suites": suites, "seed": args.seed,
            "results": [{"suite": s, "entry": n, "pass": bool(v), "detail": d} for s, n, v, d in rows],
            "pass": ok}
    width = max((len(n) for _, n, _, _ in rows), default=5)
    text = []
    for s in suites:
        text.append(f"[{s}]")
        for s2, n, v, d in rows:
            if s2 == s:
                text.append(f"  {n:<{width}}  {'pass' if v else 'FAIL'}  {d}")
    text.append(f"overall: {'pass' if ok else 'FAIL'}")
    return (report.envelope("verify", body, {"band": args.window}), text,
            EXIT_OK if ok else EXIT_VIOLATION)


COMMANDS = {"compute": cmd_compute, "pair": cmd_pair, "twist": cmd_twist,
            "verify": cmd_verify, "extend": cmd_extend, "oracle": cmd_oracle}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj, text, code = COMMANDS[args.command](args)
    except (InputError, tg.DiagramError) as e:
        print(f"tanglekit {args.command}: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except WindowNotStabilized as e:
        print(f"tanglekit {args.command}: {e}", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.format == "json":
        print(json.dumps(obj, indent=1, ensure_ascii=False, default=_jsonable))
    else:
        print(f"tanglekit {__version__} calibration {obj['calibration']} (relative gradings)")
        print("\n".join(text))
    return code


def _jsonable(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")
