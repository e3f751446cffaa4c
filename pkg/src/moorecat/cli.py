"""Command line front end.

Exit codes: 0 every check passed, 1 a check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .bundle import Bundle, BundleError, load_bundle, load_fixture, pmorphism_from_json, pmorphism_to_json
from .enriched import CategoryError, validate
from .interchange import (bifunctor_counterexample, interchange_sweep, sweep_report,
                          validate_monoidal)
from .monoidal.fincat import validate_fincat
from .monoidal.free import VARIANTS, check_monad_laws
from .monoidal.presentation import BUILTINS, PresentationError, compile_presentation
from .monoidal.tensor import (check_algebra, check_associator_coherence, check_symmetric_monoidal,
                              tensor_algebra)
from .pathobj import (NotAForest, PathObjectError, PObject, check_pmorphism,
                      essential_surjectivity_witness, lift_weq, objects, p_compose, p_identity,
                      pi0_fully_faithful)
from .report import Report, dumps
from .space import format_rational, sort_key

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(spec: str | None) -> Bundle:
    if spec is None:
        raise UsageError("--bundle is required (a file or a shipped fixture name)")
    if os.path.exists(spec):
        return load_bundle(spec)
    return load_fixture(spec)


def _pick(table: dict, name: str | None, what: str):
    if not table:
        raise UsageError(f"bundle has no {what} section")
    if name is None:
        if len(table) == 1:
            return next(iter(table.items()))
        raise UsageError(f"bundle has several {what} sections; choose one with --category")
    if name not in table:
        raise UsageError(f"no {what} named {name!r}")
    return name, table[name]


def _emit(rep: Report, fmt: str) -> int:
    print(rep.dumps() if fmt == "json" else str(rep), end="" if fmt == "json" else "\n")
    return PASS if rep.ok else FAIL


# -- validate --------------------------------------------------------------------------

def validation_reports(b: Bundle) -> list:
    reps = []
    for n, C in sorted(b.categories.items()):
        rep = validate(C)
        if rep.ok:
            for pn, m in sorted(b.pmorphisms.get(n, {}).items()):
                try:
                    check_pmorphism(C, m)
                except (PathObjectError, CategoryError) as exc:
                    rep.add("pmorphism", (pn,), str(exc))
        reps.append(rep)
    for n, M in sorted(b.monoidal.items()):
        if validate(M.cat).ok:
            reps.append(validate_monoidal(M))
    for n, C in sorted(b.fincats.items()):
        reps.append(validate_fincat(C))
    for n, P in sorted(b.presentations.items()):
        rep = Report(f"presentation {n}")
        try:
            compile_presentation(P)
        except PresentationError as exc:
            rep.add("compile", (n,), str(exc))
        reps.append(rep)
    return reps


def _merged(title, reps) -> Report:
    out = Report(title)
    for r in reps:
        for v in r.violations:
            out.violations.append(type(v)(v.check, (r.title,) + v.witness, v.message))
        out.notes.extend(f"{r.title}: {n}" for n in r.notes)
    return out


def cmd_validate(args) -> int:
    b = _load(args.bundle)
    return _emit(_merged(f"validate {args.bundle}", validation_reports(b)), args.format)


# -- pathobj ---------------------------------------------------------------------------

def _pm(b: Bundle, cat: str, C, ref: str):
    named = b.pmorphisms.get(cat, {})
    if ref in named:
        return named[ref]
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            try:
                return pmorphism_from_json(C, json.load(fh))
            except json.JSONDecodeError as exc:
                raise BundleError(f"{ref}: {exc}") from None
    raise UsageError(f"{ref!r} is neither a named morphism nor a file")


def _obj(C, a) -> PObject:
    for o in objects(C):
        if o.a == a:
            return o
    raise UsageError(f"{a!r} is not a marked weak equivalence")


def _print_pm(m, label=""):
    d = pmorphism_to_json(m)
    if label:
        d = {"morphism": label, **d}
    print(dumps(d), end="")


def cmd_pathobj(args) -> int:
    b = _load(args.bundle)
    name, C = _pick(b.categories, args.category, "category")
    rep = validate(C)
    if not rep.ok:
        print(rep)
        return FAIL
    sub = args.sub
    if sub == "objects":
        for o in objects(C):
            print(o)
        return PASS
    if sub == "identity":
        o = _obj(C, args.object)
        m = p_identity(C, o)
        _print_pm(m, f"id[{o}]")
        print(f"length {format_rational(m.length)}")
        return PASS
    if sub == "compose":
        if len(args.morphisms) != 2:
            raise UsageError("compose takes two morphisms: FIRST SECOND (FIRST runs first)")
        first, second = (_pm(b, name, C, r) for r in args.morphisms)
        for m in (first, second):
            check_pmorphism(C, m)
        m = p_compose(C, second, first)
        _print_pm(m)
        print(f"length {format_rational(m.length)}")
        return PASS
    if sub == "lift":
        if not (args.w1 and args.w2 and args.object):
            raise UsageError("lift needs --w1, --w2 and --object")
        m = lift_weq(C, args.w1, args.w2, _obj(C, args.object))
        _print_pm(m, f"lift({args.w1},{args.w2})")
        return PASS
    if sub == "es-witness":
        for o in objects(C):
            _print_pm(essential_surjectivity_witness(C, o), f"i({o.x}) -> {o}")
        return PASS
    if sub == "ff-check":
        status = PASS
        for x in C.objects:
            for y in C.objects:
                try:
                    r = pi0_fully_faithful(C, x, y, max_word=args.max_len or 2)
                except NotAForest as exc:
                    print(f"hom({x},{y}): skipped, {exc}")
                    continue
                verdict = "bijection" if r.holds else "not a bijection"
                print(f"hom({x},{y}): {verdict} ({r.detail})")
                if not r.holds:
                    status = FAIL
        return status
    raise UsageError(f"unknown pathobj subcommand {sub!r}")


# -- check -----------------------------------------------------------------------------

def cmd_check(args) -> int:
    b = _load(args.bundle)
    what = args.checker
    k = args.max_len or 2
    if what == "interchange":
        name, M = _pick(b.monoidal, args.category, "monoidal")
        rep = validate_monoidal(M)
        if rep.ok:
            rep = Report(f"interchange {name}")
            found = bifunctor_counterexample(M)
            rep.notes.append(f"searched {found.searched} quadruples of loops")
            if found:
                v = found.found
                rep.add("interchange", tuple(format_rational(x) for x in v.lengths),
                        f"(b (.) b2) o (a (.) a2) = {v.lhs.path} but (b o a) (.) (b2 o a2) = {v.rhs.path}")
        return _emit(rep, args.format)
    if what == "monad-laws":
        name, C = _pick(b.fincats, args.category, "fincats")
        variants = [args.variant] if args.variant else list(VARIANTS)
        rep = Report(f"monad laws on {name}")
        for v in variants:
            rep.extend(check_monad_laws(C, k, v, args.unital))
        return _emit(rep, args.format)
    name, C = _pick(b.fincats, args.category, "fincats")
    if name not in b.tensors:
        raise UsageError(f"no tensor data for {name!r}")
    T = b.tensors[name]
    if what == "monoidal":
        return _emit(check_associator_coherence(C, T), args.format)
    if what == "symmetric":
        return _emit(check_symmetric_monoidal(C, T), args.format)
    if what == "algebra":
        variant = args.variant or "S"
        return _emit(check_algebra(C, tensor_algebra(C, T, variant), variant, k, args.unital), args.format)
    if what.startswith("operad:"):
        pname = what.split(":", 1)[1]
        if pname in b.presentations:
            P = b.presentations[pname]
        elif pname in BUILTINS:
            P = BUILTINS[pname]()
        else:
            raise UsageError(f"no presentation named {pname!r}")
        checker = compile_presentation(P)
        return _emit(checker(C, T), args.format)
    raise UsageError(f"unknown checker {what!r}")


# -- export ----------------------------------------------------------------------------

def cmd_export(args) -> int:
    b = _load(args.bundle)
    if args.target == "dot":
        for n, C in sorted(b.categories.items()):
            for (x, y), sp in sorted(C.homs.items(), key=lambda kv: sort_key(kv[0])):
                if sp.vertices:
                    print(sp.to_dot(f"{n} hom({x},{y})"), end="")
        return PASS
    reps = validation_reports(b)
    doc = {"bundle": args.bundle, "reports": [r.to_json() for r in reps],
           "ok": all(r.ok for r in reps)}
    print(dumps(doc), end="")
    return PASS if doc["ok"] else FAIL


def cmd_interchange_demo(args) -> int:
    b = _load(args.bundle or "interchange-default")
    name, M = _pick(b.monoidal, args.category, "monoidal")
    rep = validate_monoidal(M)
    if not rep.ok:
        print(rep)
        return FAIL
    print(dumps(sweep_report(M, interchange_sweep(M))), end="")
    return PASS


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bundle", help="bundle file, or the name of a shipped fixture")
    common.add_argument("--category", help="section name inside the bundle")
    common.add_argument("--max-len", type=int, dest="max_len", help="truncation length / word bound")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")

    p = argparse.ArgumentParser(prog="moorecat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="run every structural validator")

    po = sub.add_parser("pathobj", parents=[common], help="work with the path object P(C)")
    po.add_argument("sub", choices=("objects", "compose", "identity", "lift", "ff-check", "es-witness"))
    po.add_argument("morphisms", nargs="*", help="for compose: FIRST SECOND (names or JSON files)")
    po.add_argument("--object", help="a marked weak equivalence naming an object of P(C)")
    po.add_argument("--w1")
    po.add_argument("--w2")

    ck = sub.add_parser("check", parents=[common], help="run a law checker")
    ck.add_argument("checker", help="monoidal | symmetric | operad:<name> | monad-laws | algebra | interchange")
    ck.add_argument("--variant", choices=VARIANTS)
    ck.add_argument("--unital", action="store_true")

    ex = sub.add_parser("export", parents=[common], help="export DOT graphs or a JSON report")
    ex.add_argument("target", choices=("dot", "report-json"))

    sub.add_parser("interchange-demo", parents=[common], help="print the interchange sweep table")
    return p


COMMANDS = {"validate": cmd_validate, "pathobj": cmd_pathobj, "check": cmd_check,
            "export": cmd_export, "interchange-demo": cmd_interchange_demo}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, BundleError) as exc:
        print(f"moorecat: {exc}", file=sys.stderr)
        return USAGE
    except (PathObjectError, CategoryError) as exc:
        print(f"moorecat: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
