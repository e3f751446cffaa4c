"""Symbolic presentations built from free operations by coinserters and coequifiers.

A presentation lists generator operations with their arities and then an
ordered list of steps.  A coinserter adjoins a named invertible cell between
two derived operations; a coequifier demands that two derived cells agree.
Compiling a presentation gives a checker that tests a candidate algebra
(a :class:`FinCat` with :class:`TensorData`) step by step.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from ..report import Report
from ..space import sort_key
from .fincat import FinCat
from .tensor import Skip, TensorData, Undefined


class PresentationError(ValueError):
    """Ill-formed presentation or arity mismatch."""


# -- terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple

    def __str__(self):
        return f"{self.symbol}({','.join(map(str, self.args))})"


def term_vars(t) -> list:
    """Variables in order of first appearance."""
    if isinstance(t, Var):
        return [t.name]
    out = []
    for a in t.args:
        for v in term_vars(a):
            if v not in out:
                out.append(v)
    return out


def subst(t, mapping: dict):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.symbol, tuple(subst(a, mapping) for a in t.args))


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[(),])")


def parse_term(text: str):
    """Parse ``tensor(tensor(a,b),c)`` style terms."""
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PresentationError(f"bad term {text!r} at {pos}")
        toks.append(m.group(1))
        pos = m.end()
    toks.append(None)
    i = 0

    def parse():
        nonlocal i
        name = toks[i]
        if name is None or name in "(),":
            raise PresentationError(f"bad term {text!r}")
        i += 1
        if toks[i] != "(":
            return Var(name)
        i += 1
        args = []
        if toks[i] == ")":
            i += 1
            return App(name, ())
        while True:
            args.append(parse())
            if toks[i] == ",":
                i += 1
            elif toks[i] == ")":
                i += 1
                return App(name, tuple(args))
            else:
                raise PresentationError(f"bad term {text!r}")

    t = parse()
    if toks[i] is not None:
        raise PresentationError(f"trailing input in {text!r}")
    return t


# -- cells ----------------------------------------------------------------------

@dataclass(frozen=True)
class Iso:
    name: str
    args: tuple
    inverse: bool = False


@dataclass(frozen=True)
class Id:
    term: object


@dataclass(frozen=True)
class Op:
    """An operation applied to cells (whiskering when all but one are identities)."""
    symbol: str
    cells: tuple


@dataclass(frozen=True)
class Comp:
    """Composite in diagrammatic order: ``cells[0]`` first."""
    cells: tuple


# -- steps ----------------------------------------------------------------------

@dataclass(frozen=True)
class Coproduct:
    """Marks the sum of the generator monads; carries no data."""


@dataclass(frozen=True)
class Coinserter:
    name: str
    lhs: object
    rhs: object
    vars: tuple


@dataclass(frozen=True)
class Coequifier:
    name: str
    cell1: object
    cell2: object
    vars: tuple


@dataclass(frozen=True)
class OperadPresentation:
    generators: tuple           # ((symbol, arity), ...)
    steps: tuple = ()
    name: str = ""


# -- evaluation -----------------------------------------------------------------

@dataclass
class Bindings:
    """Tables interpreting symbols: operations on objects and morphisms, iso components."""
    obj_ops: dict = field(default_factory=dict)    # symbol -> callable(*objects)
    mor_ops: dict = field(default_factory=dict)    # symbol -> callable(*morphisms)
    isos: dict = field(default_factory=dict)       # name -> (components, inverses)
    partial: bool = False                          # truncated tables: missing means out of range


def tensor_bindings(T: TensorData, symbol: str = "tensor") -> Bindings:
    return Bindings({symbol: T.obj}, {symbol: T.mor},
                    {"assoc": (T.assoc, T.assoc_inv), "sym": (T.sym, T.sym_inv)}, T.partial)


def _eval(t, env, ops):
    if isinstance(t, Var):
        return env[t.name]
    fn = ops.get(t.symbol)
    if fn is None:
        raise PresentationError(f"no interpretation for {t.symbol!r}")
    return fn(*(_eval(a, env, ops) for a in t.args))


def eval_term(t, T, args, kind: str = "obj"):
    """Evaluate ``t`` with the tensor tables of ``T`` (or explicit :class:`Bindings`).

    ``args`` is a dict or a sequence matched against the variables in order
    of first appearance.
    """
    b = T if isinstance(T, Bindings) else tensor_bindings(T)
    names = term_vars(t)
    if isinstance(args, dict):
        missing = [v for v in names if v not in args]
        if missing:
            raise PresentationError(f"unbound variables {missing}")
        env = args
    else:
        args = tuple(args)
        if len(args) != len(names):
            raise PresentationError(f"{t} takes {len(names)} arguments, got {len(args)}")
        env = dict(zip(names, args))
    return _eval(t, env, b.obj_ops if kind == "obj" else b.mor_ops)


def eval_cell(cell, C: FinCat, b: Bindings, env: dict):
    if isinstance(cell, Id):
        return C.identity(_eval(cell.term, env, b.obj_ops))
    if isinstance(cell, Iso):
        key = tuple(_eval(a, env, b.obj_ops) for a in cell.args)
        comps, invs = b.isos[cell.name]
        table = invs if cell.inverse else comps
        if key not in table:
            if b.partial:
                raise Skip((cell.name,) + key)
            raise Undefined((cell.name,) + key)
        return table[key]
    if isinstance(cell, Op):
        return b.mor_ops[cell.symbol](*(eval_cell(c, C, b, env) for c in cell.cells))
    if isinstance(cell, Comp):
        out = eval_cell(cell.cells[0], C, b, env)
        for c in cell.cells[1:]:
            out = C.compose(eval_cell(c, C, b, env), out)
        return out
    raise PresentationError(f"not a cell: {cell!r}")


# -- compilation ----------------------------------------------------------------

def _check_term(t, arities, vars_, where):
    if isinstance(t, Var):
        if t.name not in vars_:
            raise PresentationError(f"{where}: variable {t.name!r} not bound")
        return
    if t.symbol not in arities:
        raise PresentationError(f"{where}: undeclared operation {t.symbol!r}")
    if len(t.args) != arities[t.symbol]:
        raise PresentationError(f"{where}: {t.symbol} has arity {arities[t.symbol]}, got {len(t.args)}")
    for a in t.args:
        _check_term(a, arities, vars_, where)


def _check_cell(c, arities, isos, vars_, where):
    if isinstance(c, Id):
        _check_term(c.term, arities, vars_, where)
    elif isinstance(c, Iso):
        if c.name not in isos:
            raise PresentationError(f"{where}: undeclared iso {c.name!r}")
        if len(c.args) != isos[c.name]:
            raise PresentationError(f"{where}: {c.name} takes {isos[c.name]} arguments, got {len(c.args)}")
        for a in c.args:
            _check_term(a, arities, vars_, where)
    elif isinstance(c, Op):
        if c.symbol not in arities:
            raise PresentationError(f"{where}: undeclared operation {c.symbol!r}")
        if len(c.cells) != arities[c.symbol]:
            raise PresentationError(f"{where}: {c.symbol} has arity {arities[c.symbol]}, got {len(c.cells)}")
        for x in c.cells:
            _check_cell(x, arities, isos, vars_, where)
    elif isinstance(c, Comp):
        if not c.cells:
            raise PresentationError(f"{where}: empty composite")
        for x in c.cells:
            _check_cell(x, arities, isos, vars_, where)
    else:
        raise PresentationError(f"{where}: not a cell: {c!r}")


class Checker:
    """Runs a compiled presentation against a candidate algebra."""

    def __init__(self, presentation: OperadPresentation):
        self.presentation = presentation
        self.arities = dict(presentation.generators)

    def __call__(self, C: FinCat, T, bindings: Bindings | None = None) -> Report:
        b = bindings if bindings is not None else tensor_bindings(T)
        rep = Report(f"presentation {self.presentation.name or ''}".strip())
        for sym, n in self.presentation.generators:
            self._generator(C, b, sym, n, rep)
        if not rep.ok:
            return rep
        failed = set()
        for step in self.presentation.steps:
            if isinstance(step, Coinserter):
                if not self._coinserter(C, b, step, rep):
                    failed.add(step.name)
            elif isinstance(step, Coequifier):
                if (_isos_in(step.cell1) | _isos_in(step.cell2)) & failed:
                    rep.notes.append(f"{step.name}: skipped, depends on a failed coinserter")
                    continue
                self._coequifier(C, b, step, rep)
        return rep

    # generators: totality, typing, functoriality of each n-ary table
    def _generator(self, C, b, sym, n, rep):
        fo, fm = b.obj_ops.get(sym), b.mor_ops.get(sym)
        if fo is None or fm is None:
            rep.add(f"{sym}-total", (sym,), "operation has no table")
            return
        for xs in product(C.objects, repeat=n):
            try:
                y = fo(*xs)
            except Skip:
                continue
            except Undefined:
                rep.add(f"{sym}-total", xs, "operation on objects undefined")
                continue
            if y not in C.objects:
                rep.add(f"{sym}-typed", xs + (y,), "result is not an object")
            try:
                if fm(*(C.identity(x) for x in xs)) != C.identity(y):
                    rep.add(f"{sym}-identity", xs, "does not preserve identities")
            except (Undefined, Skip):
                rep.add(f"{sym}-total", tuple(C.identity(x) for x in xs), "operation on identities undefined")
        if not rep.ok:
            return
        mors = sorted(C.morphisms, key=sort_key)
        for fs in product(mors, repeat=n):
            try:
                want = (fo(*(C.src(f) for f in fs)), fo(*(C.tgt(f) for f in fs)))
            except Skip:
                continue
            try:
                m = fm(*fs)
            except (Undefined, Skip):
                rep.add(f"{sym}-total", fs, "operation on morphisms undefined")
                continue
            if C.morphisms.get(m) != want:
                rep.add(f"{sym}-typed", fs, f"{m} does not run {want[0]} -> {want[1]}")
        if not rep.ok:
            return
        for fs in product(mors, repeat=n):
            for gs in product(*(C.hom_from(C.tgt(f)) for f in fs)):
                try:
                    lhs = C.compose(fm(*gs), fm(*fs))
                    rhs = fm(*(C.compose(g, f) for g, f in zip(gs, fs)))
                except Skip:
                    continue
                if lhs != rhs:
                    rep.add(f"{sym}-functor", gs + fs, "does not preserve composition")

    def _coinserter(self, C, b, step: Coinserter, rep) -> bool:
        comps, invs = b.isos.get(step.name, ({}, {}))
        n = len(step.vars)
        label = step.name
        ok = True
        for xs in product(C.objects, repeat=n):
            env = dict(zip(step.vars, xs))
            try:
                want = (_eval(step.lhs, env, b.obj_ops), _eval(step.rhs, env, b.obj_ops))
            except Skip:
                continue
            m = comps.get(xs)
            if m is None:
                rep.add(f"{label}-exists", xs, f"no component {label}_{{{','.join(map(str, xs))}}}")
                ok = False
                continue
            if C.morphisms.get(m) != want:
                rep.add(f"{label}-typed", xs, f"{m} does not run {want[0]} -> {want[1]}")
                ok = False
                continue
            inv = invs.get(xs)
            if inv is None or C.morphisms.get(inv) != (want[1], want[0]) \
                    or C.comp.get((inv, m)) != C.identity(want[0]) \
                    or C.comp.get((m, inv)) != C.identity(want[1]):
                rep.add(f"{label}-iso", xs, "no recorded inverse")
                ok = False
        if not ok:
            return False
        mors = sorted(C.morphisms, key=sort_key)
        for fs in product(mors, repeat=n):
            src = dict(zip(step.vars, (C.src(f) for f in fs)))
            tgt = dict(zip(step.vars, (C.tgt(f) for f in fs)))
            fenv = dict(zip(step.vars, fs))
            try:
                # tensor first: it is what runs out of range in truncated tables
                top, bottom = _eval(step.lhs, fenv, b.mor_ops), _eval(step.rhs, fenv, b.mor_ops)
                lhs = C.compose(comps[tuple(tgt[v] for v in step.vars)], top)
                rhs = C.compose(bottom, comps[tuple(src[v] for v in step.vars)])
            except Skip:
                continue
            if lhs != rhs:
                rep.add(f"{label}-natural", fs, f"{label} is not natural")
                ok = False
        return ok

    def _coequifier(self, C, b, step: Coequifier, rep):
        for xs in product(C.objects, repeat=len(step.vars)):
            env = dict(zip(step.vars, xs))
            try:
                c1 = eval_cell(step.cell1, C, b, env)
                c2 = eval_cell(step.cell2, C, b, env)
            except Skip:
                continue
            except Undefined as exc:
                rep.add(step.name, xs, f"undefined: {exc}")
                continue
            if c1 != c2:
                rep.add(step.name, xs, f"{c1} != {c2}")


def _isos_in(cell) -> set:
    if isinstance(cell, Iso):
        return {cell.name}
    if isinstance(cell, (Op, Comp)):
        return set().union(*(_isos_in(c) for c in cell.cells))
    return set()


def compile_presentation(P: OperadPresentation) -> Checker:
    """Check every symbol is declared before use and arities match."""
    arities = {}
    for sym, n in P.generators:
        if sym in arities:
            raise PresentationError(f"generator {sym!r} declared twice")
        if n < 0:
            raise PresentationError(f"negative arity for {sym!r}")
        arities[sym] = n
    isos = {}
    for step in P.steps:
        if isinstance(step, Coproduct):
            continue
        vars_ = set(step.vars)
        if len(vars_) != len(step.vars):
            raise PresentationError(f"{step.name}: repeated variable")
        if isinstance(step, Coinserter):
            if step.name in isos:
                raise PresentationError(f"iso {step.name!r} declared twice")
            _check_term(step.lhs, arities, vars_, step.name)
            _check_term(step.rhs, arities, vars_, step.name)
            isos[step.name] = len(step.vars)
        elif isinstance(step, Coequifier):
            _check_cell(step.cell1, arities, isos, vars_, step.name)
            _check_cell(step.cell2, arities, isos, vars_, step.name)
        else:
            raise PresentationError(f"unknown step {step!r}")
    return Checker(P)


# -- the two built-in presentations ---------------------------------------------

def _t(a, b):
    return App("tensor", (a, b))


_a, _b, _c, _d = (Var(n) for n in "abcd")


def _assoc(x, y, z, inverse=False):
    return Iso("assoc", (x, y, z), inverse)


def _sym(x, y):
    return Iso("sym", (x, y))


ASSOC = Coinserter("assoc", _t(_t(_a, _b), _c), _t(_a, _t(_b, _c)), ("a", "b", "c"))
PENTAGON = Coequifier(
    "pentagon",
    Comp((_assoc(_t(_a, _b), _c, _d), _assoc(_a, _b, _t(_c, _d)),
          Op("tensor", (Id(_a), _assoc(_b, _c, _d, inverse=True))))),
    Comp((Op("tensor", (_assoc(_a, _b, _c), Id(_d))), _assoc(_a, _t(_b, _c), _d))),
    ("a", "b", "c", "d"))
SYM = Coinserter("sym", _t(_a, _b), _t(_b, _a), ("a", "b"))
SYM_INVOLUTIVE = Coequifier("sym-involutive", Comp((_sym(_a, _b), _sym(_b, _a))),
                            Id(_t(_a, _b)), ("a", "b"))
HEXAGON = Coequifier(
    "hexagon",
    Comp((_assoc(_a, _b, _c), _sym(_a, _t(_b, _c)), _assoc(_b, _c, _a))),
    Comp((Op("tensor", (_sym(_a, _b), Id(_c))), _assoc(_b, _a, _c),
          Op("tensor", (Id(_b), _sym(_a, _c))))),
    ("a", "b", "c"))


def builtin_M() -> OperadPresentation:
    """Binary tensor with an associator subject to the four-fold coherence."""
    return OperadPresentation((("tensor", 2),), (Coproduct(), ASSOC, PENTAGON), "M")


def builtin_S() -> OperadPresentation:
    """``builtin_M`` plus an involutive symmetry compatible with the associator."""
    return OperadPresentation((("tensor", 2),),
                              (Coproduct(), ASSOC, PENTAGON, SYM, SYM_INVOLUTIVE, HEXAGON), "S")


BUILTINS = {"M": builtin_M, "S": builtin_S}


# -- JSON form --------------------------------------------------------------------

def cell_to_json(c):
    if isinstance(c, Id):
        return {"id": str(c.term)}
    if isinstance(c, Iso):
        out = {"iso": c.name, "args": [str(a) for a in c.args]}
        if c.inverse:
            out["inverse"] = True
        return out
    if isinstance(c, Op):
        return {"op": c.symbol, "cells": [cell_to_json(x) for x in c.cells]}
    return {"comp": [cell_to_json(x) for x in c.cells]}


def cell_from_json(d):
    if not isinstance(d, dict):
        raise PresentationError(f"bad cell {d!r}")
    if "id" in d:
        return Id(parse_term(d["id"]))
    if "iso" in d:
        return Iso(d["iso"], tuple(parse_term(a) for a in d.get("args", [])), bool(d.get("inverse", False)))
    if "op" in d:
        return Op(d["op"], tuple(cell_from_json(x) for x in d["cells"]))
    if "comp" in d:
        return Comp(tuple(cell_from_json(x) for x in d["comp"]))
    raise PresentationError(f"bad cell {d!r}")


def presentation_to_json(P: OperadPresentation) -> dict:
    steps = []
    for s in P.steps:
        if isinstance(s, Coproduct):
            steps.append({"kind": "coproduct"})
        elif isinstance(s, Coinserter):
            steps.append({"kind": "coinserter", "name": s.name, "lhs": str(s.lhs),
                          "rhs": str(s.rhs), "vars": list(s.vars)})
        else:
            steps.append({"kind": "coequifier", "name": s.name, "cell1": cell_to_json(s.cell1),
                          "cell2": cell_to_json(s.cell2), "vars": list(s.vars)})
    return {"name": P.name, "generators": [[s, n] for s, n in P.generators], "steps": steps}


def presentation_from_json(d: dict) -> OperadPresentation:
    try:
        gens = tuple((str(s), int(n)) for s, n in d["generators"])
        steps = []
        for s in d.get("steps", []):
            kind = s["kind"]
            if kind == "coproduct":
                steps.append(Coproduct())
            elif kind == "coinserter":
                steps.append(Coinserter(s["name"], parse_term(s["lhs"]), parse_term(s["rhs"]),
                                        tuple(s["vars"])))
            elif kind == "coequifier":
                steps.append(Coequifier(s["name"], cell_from_json(s["cell1"]),
                                        cell_from_json(s["cell2"]), tuple(s["vars"])))
            else:
                raise PresentationError(f"unknown step kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"malformed presentation: {exc}") from None
    return OperadPresentation(gens, tuple(steps), d.get("name", ""))
