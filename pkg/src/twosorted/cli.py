"""Command-line interface.

Output is JSON (numbers as decimal strings) unless ``--text`` is given, in
which case expressions are printed in the canonical concrete syntax.
Exit status: 0 success, 1 input error, 2 semantic error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import decidable, translations
from .errors import InputError, InvariantViolation, NoWitnessError, SemanticError
from .kernel import (
    BASE_TABLE,
    EMPTY_ASG,
    EMPTY_ENV,
    Assignment,
    Environment,
    Evaluator,
    bindings_from_json,
    check_defining_axiom,
    codec,
)
from .schemas import schemata, systems
from .suites import SUITES, run_suite
from .syntax import ops, parser, serialize
from .syntax.ast import Formula, Functor, FunVar, NumVar, Term
from .syntax.printer import to_text

EXIT_OK, EXIT_INPUT, EXIT_SEMANTIC, EXIT_INVARIANT = 0, 1, 2, 3
STACK_BYTES = 512 * 1024 * 1024
STACK_DEPTH = 400_000


@dataclass(frozen=True)
class Command:
    name: str
    module: str
    operations: tuple[str, ...]
    run: Callable[["_Ctx", argparse.Namespace], object]
    help: str


# -- context -----------------------------------------------------------------

@dataclass
class _Ctx:
    env: Environment
    asg: Assignment
    system: systems.SystemDescriptor | None
    text: bool

    @property
    def signature(self):
        return self.system.signature() if self.system else None

    @property
    def table(self):
        return systems.system_table(self.system) if self.system else BASE_TABLE

    def parse(self, src: str, kind: str = "any"):
        text = _read_source(src)
        fn = {
            "any": parser.parse,
            "formula": parser.parse_formula,
            "term": parser.parse_term,
            "functor": parser.parse_functor,
        }[kind]
        e = fn(text, table=self.signature)
        if self.system is not None:
            bad = systems.language_violations(e, self.system)
            if bad:
                raise InputError(f"not in the language of {self.system.name}: {bad[0]}")
        return e

    def var(self, text: str, cls=NumVar):
        try:
            name, index = parser.split_ident(text)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return cls(name, index)


def _read_source(src: str) -> str:
    """``@path`` reads a file, ``-`` reads stdin, anything else is literal."""
    if src == "-":
        return sys.stdin.read()
    if src.startswith("@"):
        try:
            return Path(src[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {src[1:]}: {exc.strerror}") from None
    return src


def _load_json(src: str):
    text = src if src.lstrip().startswith("{") else _read_source("@" + src)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {src}: {exc}") from None


def _bindings(src: str | None, key: str) -> tuple[Environment, Assignment]:
    if src is None:
        return EMPTY_ENV, EMPTY_ASG
    data = _load_json(src)
    if not isinstance(data, dict):
        raise InputError("bindings must be a JSON object")
    if not set(data) <= {"funvars", "numvars"}:
        data = {key: data}
    return bindings_from_json(data)


def _num(n: int) -> str:
    return str(n)


def _expr_out(ctx: _Ctx, e) -> object:
    return to_text(e) if ctx.text else {"text": to_text(e), "ast": serialize.to_json(e)}


# -- command bodies ----------------------------------------------------------

def _cmd_parse(ctx, a):
    e = ctx.parse(a.source)
    if a.subst:
        var, _, rep = a.subst.partition("=")
        target = ctx.var(var, FunVar if not _is_numvar(var) else NumVar)
        e = ops.substitute(e, target, ctx.parse(rep))
    if a.superscript_w:
        w, _, order = a.superscript_w.partition(":")
        ordering = [ctx.var(v.strip()) for v in order.split(",") if v.strip()]
        e = ops.superscript_w(e, ctx.var(w), ordering)
    nums, funs = ops.free_vars(e)
    out = {
        "kind": _kind(e),
        "free_numvars": sorted(str(v) for v in nums),
        "free_funvars": sorted(str(v) for v in funs),
    }
    if a.free_for:
        var, _, rep = a.free_for.partition("=")
        target = ctx.var(var, NumVar if _is_numvar(var) else FunVar)
        out["free_for"] = ops.is_free_for(ctx.parse(rep), target, e)
    if a.congruent:
        out["congruent"] = ops.congruent(e, ctx.parse(a.congruent))
    if ctx.text:
        return to_text(e)
    out.update(_expr_out(ctx, e))
    return out


def _is_numvar(text: str) -> bool:
    name = text.lstrip("'")
    return not text.startswith("'") and name.rstrip("0123456789") not in parser.DEFAULT_FUNVAR_NAMES


def _kind(e) -> str:
    if isinstance(e, Formula):
        return "formula"
    return "term" if isinstance(e, Term) else "functor"


def _cmd_print(ctx, a):
    e = serialize.loads(_read_source(a.source))
    return to_text(e) if ctx.text else {"text": to_text(e)}


def _cmd_eval(ctx, a):
    ev = Evaluator(ctx.env, ctx.table)
    if a.axiom:
        nums = tuple(int(s) for s in ([a.source] if a.source else []) + a.numbers)
        funs = tuple(ctx.parse(u, "functor") for u in a.functor or ())
        ok = check_defining_axiom(a.axiom, nums, funs, ctx.table)
        return {"axiom": a.axiom, "holds": ok}
    e = ctx.parse(a.source)
    asg = dict(ctx.asg.numvars)
    if isinstance(e, Functor):
        if a.at is None:
            raise InputError("evaluating a functor needs --at N")
        return {"value": _num(ev.functor(e, asg)(a.at))}
    if isinstance(e, Formula):
        return {"value": ev.holds(e, asg)}
    return {"value": _num(ev.term(e, asg))}


def _cmd_truth(ctx, a):
    f = ctx.parse(a.source, "formula")
    cls = decidable.classify(f)
    if a.expand:
        g = decidable.expand(f, ctx.env, ctx.asg, ctx.table)
        return to_text(g) if ctx.text else {"class": cls.name, "expanded": to_text(g)}
    value = decidable.truth(f, ctx.env, ctx.asg, ctx.table)
    return {"class": cls.name, "truth": value}


def _cmd_char_term(ctx, a):
    f = ctx.parse(a.source, "formula")
    q = decidable.char_term(f).q
    if ctx.text:
        return to_text(q)
    out = {"q": to_text(q), "ast": serialize.to_json(q)}
    if ctx.asg.numvars or not ops.free_vars(q)[0]:
        out["value"] = _num(Evaluator(ctx.env, ctx.table).term(q, dict(ctx.asg.numvars)))
    return out


def _cmd_least(ctx, a):
    f = ctx.parse(a.source, "formula")
    y = ctx.var(a.var)
    n = decidable.least_witness(f, y, ctx.env, ctx.asg, a.cap, ctx.table)
    if n is None:
        raise NoWitnessError(f"no witness <= {a.cap} for {y}")
    return {"witness": _num(n)}


def _cmd_choice(ctx, a):
    f = ctx.parse(a.source, "formula")
    x, y = ctx.var(a.x), ctx.var(a.y)
    table = decidable.choice_witness(f, x, y, ctx.env, ctx.asg, a.bound, a.cap, ctx.table)
    paired = decidable.pairing_witness_holds(f, x, y, table, ctx.env, ctx.asg, ctx.table)
    return {"table": [_num(n) for n in table], "pairing_holds": paired}


def _cmd_cfd(ctx, a):
    f = ctx.parse(a.source, "formula")
    table = decidable.cfd_witness(f, ctx.var(a.x), ctx.env, ctx.asg, a.bound, ctx.table)
    return {"table": [_num(n) for n in table]}


def _cmd_translate(ctx, a):
    f = ctx.parse(a.source, "formula")
    if a.eliminate == "rec":
        g = translations.rec_eliminate(f)
    else:
        g = translations.lambda_eliminate(f)
    if ctx.text and not a.check:
        return to_text(g)
    out = {"input": to_text(f), "output": to_text(g)}
    if a.check:
        if a.eliminate == "rec":
            ok = translations.check_rec_equiv(f, ctx.env, ctx.asg, a.bound or 64, ctx.table)
        else:
            ok = translations.check_lambda_equiv(f, ctx.env, ctx.asg, a.bound or 8, ctx.table)
        out["check"] = ok
        if not ok:
            raise InvariantViolation(json.dumps(out, sort_keys=True))
    return out


def _instance_json(inst: schemata.SchemaInstance) -> dict:
    pieces = {k: (v if isinstance(v, str) else to_text(v)) for k, v in sorted(inst.pieces.items())}
    return {"schema": inst.schema.value, "pieces": pieces, "formula": to_text(inst.formula)}


def _cmd_match(ctx, a):
    f = ctx.parse(a.source, "formula")
    if a.schema:
        m = schemata.match(f, a.schema)
        found = [m] if m is not None else []
    else:
        allowed = ctx.system.schemata if ctx.system else tuple(schemata.SchemaId)
        found = schemata.match_any(f, tuple(schemata.SchemaId(s) for s in allowed))
    return {"matches": [_instance_json(m) for m in found]}


def _cmd_instantiate(ctx, a):
    schema = _schema_id(a.schema)
    kinds = schemata.piece_kinds(schema)
    pieces = {}
    for item in a.piece or ():
        key, sep, value = item.partition("=")
        if not sep or key not in kinds:
            raise InputError(f"bad piece {item!r}; {schema.value} takes {', '.join(kinds)}")
        kind = kinds[key]
        if kind == "str":
            pieces[key] = value
        elif kind == "numvar":
            pieces[key] = ctx.var(value)
        elif kind == "funvar":
            pieces[key] = ctx.var(value.lstrip("'"), FunVar)
        else:
            pieces[key] = ctx.parse(value, kind)
    f = schemata.instantiate(schema, pieces)
    return to_text(f) if ctx.text else {"schema": schema.value, "formula": to_text(f)}


def _schema_id(name: str) -> schemata.SchemaId:
    try:
        return schemata.SchemaId(name)
    except ValueError:
        known = ", ".join(s.value for s in schemata.SchemaId)
        raise InputError(f"unknown schema {name!r}; known: {known}") from None


def _cmd_systems(ctx, a):
    if a.action == "list":
        return {"systems": sorted(systems.builtin_systems())}
    if not a.args:
        raise InputError(f"systems {a.action} needs a system name")
    sys_ = systems.get_system(a.args[0])
    if a.action == "describe":
        return sys_.to_json()
    if a.action == "in-language":
        if len(a.args) != 2:
            raise InputError("usage: systems in-language NAME TEXT")
        e = parser.parse(_read_source(a.args[1]))
        return {"system": sys_.name, "in_language": systems.formula_in_language(e, sys_),
                "violations": systems.language_violations(e, sys_)}
    # define NAME CONST G H [TEXT]
    if len(a.args) not in (4, 5):
        raise InputError("usage: systems define NAME CONST G H [TEXT]")
    _, const, g_src, h_src, *rest = a.args
    g = parser.parse_term(_read_source(g_src))
    h = parser.parse_term(_read_source(h_src))
    new, rule = systems.define_prim_rec(sys_, const, g, h)
    out = {"system": new.to_json(), "rule": to_text(rule.expand(rule.x, NumVar("y")))}
    if rest:
        e = parser.parse(_read_source(rest[0]), table=new.signature())
        expanded = systems.expand_defined(e, new.extensions)
        out["expanded"] = to_text(expanded)
        out["in_base_language"] = systems.formula_in_language(expanded, systems.base_system(new))
        out["value_check"] = None
        if isinstance(e, Term) and not ops.free_vars(e)[0]:
            v1 = Evaluator(EMPTY_ENV, systems.system_table(new)).term(e, {})
            v2 = Evaluator().term(expanded, {})
            out["value_check"] = v1 == v2
            out["value"] = _num(v1)
    return out


def _cmd_codec(ctx, a):
    nums = [int(s) for s in a.numbers]
    op = a.op
    arity = {"encode": None, "decode": 2, "component": 2, "len": 1, "concat": 2, "join": 2,
             "bar": 1, "tilde": 1, "cov": 2}
    want = arity[op]
    if want is not None and len(nums) != want and not (op == "decode" and len(nums) == 1):
        raise InputError(f"codec {op} takes {want} numbers")
    if op == "encode":
        return {"code": _num(codec.encode_seq(nums))}
    if op == "decode":
        n = nums[1] if len(nums) == 2 else codec.seq_len(nums[0])
        return {"seq": [_num(v) for v in codec.decode_seq(nums[0], n)]}
    if op == "component":
        return {"value": _num(codec.component(*nums))}
    if op == "len":
        return {"value": _num(codec.seq_len(nums[0]))}
    if op == "concat":
        return {"code": _num(codec.concat(*nums))}
    if op == "join":
        return {"code": _num(codec.join(*nums))}
    if a.functor is None or len(a.functor) != 1:
        raise InputError(f"codec {op} needs exactly one --functor")
    f = Evaluator(ctx.env, ctx.table).functor(ctx.parse(a.functor[0], "functor"), {})
    if op == "bar":
        return {"code": _num(codec.bar_code(f, nums[0]))}
    if op == "tilde":
        return {"code": _num(codec.tilde_code(f, nums[0]))}
    x, y = nums
    return {"code": _num(codec.course_of_values(x, f, y))}


def _cmd_check(ctx, a):
    report = run_suite(a.suite, a.cases, a.seed)
    if ctx.text:
        status = "pass" if report.ok else "FAIL"
        line = f"{report.name}: {status} {report.passed}/{report.passed + report.failed}"
        return line if report.ok else f"{line}\nfirst counterexample: {report.first_counterexample}"
    return report.to_json()


COMMANDS: dict[str, Command] = {
    c.name: c
    for c in (
        Command("parse", "syntax", ("parse", "free_vars", "substitute", "is_free_for", "congruent", "superscript_w"),
                _cmd_parse, "parse text; report free variables; optional syntactic operations"),
        Command("print", "syntax", ("from_json", "to_text"), _cmd_print, "print a JSON AST as text"),
        Command("eval", "kernel", ("eval_term", "eval_functor", "check_defining_axiom"),
                _cmd_eval, "evaluate a term, or a functor at --at N, or check a defining axiom"),
        Command("truth", "decidable", ("classify", "truth", "expand"), _cmd_truth,
                "decide a quantifier-free or bounded formula"),
        Command("char-term", "decidable", ("char_term",), _cmd_char_term, "characteristic term"),
        Command("least", "decidable", ("least_witness",), _cmd_least, "least witness below --cap"),
        Command("choice", "decidable", ("choice_witness", "pairing_witness_holds"), _cmd_choice,
                "choice table for x < --bound"),
        Command("cfd", "decidable", ("cfd_witness",), _cmd_cfd, "characteristic table for x < --bound"),
        Command("translate", "translations",
                ("rec_eliminate", "lambda_eliminate", "check_rec_equiv", "check_lambda_equiv"),
                _cmd_translate, "eliminate rec or lambda, optionally checking equivalence"),
        Command("match-schema", "schemas", ("match", "match_any"), _cmd_match, "recognise axiom instances"),
        Command("instantiate", "schemas", ("instantiate",), _cmd_instantiate, "build an axiom instance"),
        Command("systems", "schemas",
                ("builtin_systems", "get_system", "formula_in_language", "define_prim_rec", "expand_defined"),
                _cmd_systems, "list, describe, in-language, define"),
        Command("codec", "kernel",
                ("encode_seq", "decode_seq", "component", "seq_len", "concat", "join", "bar_code",
                 "tilde_code", "course_of_values"),
                _cmd_codec, "sequence coding"),
        Command("check", "suites", ("run_suite",), _cmd_check, "run a property suite"),
    )
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--env", help="function-variable bindings (JSON file or inline object)")
    common.add_argument("--asg", help="number-variable assignment (JSON file or inline object)")
    common.add_argument("--system", help="restrict the language and semantics to a system")
    common.add_argument("--text", action="store_true", help="print expressions as text")

    p = argparse.ArgumentParser(prog="twosorted", description="Two-sorted arithmetic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name):
        return sub.add_parser(name, parents=[common], help=COMMANDS[name].help)

    s = add("parse")
    s.add_argument("source", help="text, @file or -")
    s.add_argument("--subst", metavar="VAR=TEXT")
    s.add_argument("--free-for", metavar="VAR=TEXT")
    s.add_argument("--congruent", metavar="TEXT")
    s.add_argument("--superscript-w", metavar="W:X,Y,...")

    add("print").add_argument("source", help="JSON AST, @file or -")

    s = add("eval")
    s.add_argument("source", nargs="?", default=None)
    s.add_argument("--at", type=int)
    s.add_argument("--axiom", metavar="CONST")
    s.add_argument("--functor", action="append")
    s.add_argument("numbers", nargs="*", default=[])

    s = add("truth")
    s.add_argument("source")
    s.add_argument("--expand", action="store_true")

    add("char-term").add_argument("source")

    s = add("least")
    s.add_argument("source")
    s.add_argument("--var", default="y")
    s.add_argument("--cap", type=int, default=1000)

    s = add("choice")
    s.add_argument("source")
    s.add_argument("--x", default="x")
    s.add_argument("--y", default="y")
    s.add_argument("--bound", type=int, default=10)
    s.add_argument("--cap", type=int, default=1000)

    s = add("cfd")
    s.add_argument("source")
    s.add_argument("--x", default="x")
    s.add_argument("--bound", type=int, default=10)

    s = add("translate")
    s.add_argument("source")
    s.add_argument("--eliminate", choices=("rec", "lambda"), required=True)
    s.add_argument("--check", action="store_true")
    s.add_argument("--bound", type=int, help="w_bound for rec, x_bound for lambda")

    s = add("match-schema")
    s.add_argument("source")
    s.add_argument("--schema")

    s = add("instantiate")
    s.add_argument("schema")
    s.add_argument("--piece", action="append", metavar="KEY=VALUE")

    s = add("systems")
    s.add_argument("action", choices=("list", "describe", "in-language", "define"))
    s.add_argument("args", nargs="*")

    s = add("codec")
    s.add_argument("op", choices=("encode", "decode", "component", "len", "concat", "join", "bar", "tilde", "cov"))
    s.add_argument("numbers", nargs="*")
    s.add_argument("--functor", action="append")

    s = add("check")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--cases", type=int)
    s.add_argument("--seed", type=int, default=0)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if a.command == "eval" and not a.axiom:
            if a.source is None:
                raise InputError("eval needs a term")
        if a.command in ("eval", "codec"):
            nums = list(a.numbers)
            if a.command == "eval" and a.axiom and a.source:
                nums.append(a.source)
            if any(not s.isdigit() for s in nums):
                raise InputError("numeric arguments must be natural numbers")
        env, _ = _bindings(a.env, "funvars")
        _, asg = _bindings(a.asg, "numvars")
        system = systems.get_system(a.system) if a.system else None
        ctx = _Ctx(env, asg, system, a.text)
        result = _with_deep_stack(lambda: COMMANDS[a.command].run(ctx, a))
    except InputError as exc:
        _error(err, "input", exc, a.text)
        return EXIT_INPUT
    except RecursionError:
        _error(err, "input", InputError("expression nested too deeply"), a.text)
        return EXIT_INPUT
    except SemanticError as exc:
        _error(err, "semantic", exc, a.text)
        return EXIT_SEMANTIC
    except InvariantViolation as exc:
        _error(err, "invariant", exc, a.text)
        return EXIT_INVARIANT
    except Exception as exc:  # noqa: BLE001 - any other failure is a bug
        _error(err, "invariant", exc, a.text)
        return EXIT_INVARIANT
    if isinstance(result, str):
        out.write(result + "\n")
    else:
        out.write(json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n")
    return EXIT_OK


def _with_deep_stack(fn):
    """Run ``fn`` on a thread with a large stack: unary numerals make deep trees."""
    box: dict = {}

    def target():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(STACK_DEPTH)
        try:
            box["value"] = fn()
        except BaseException as exc:  # re-raised on the calling thread
            box["error"] = exc
        finally:
            sys.setrecursionlimit(old)

    old_size = threading.stack_size(STACK_BYTES)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
    if "error" in box:
        raise box["error"]
    return box["value"]


def _error(err, kind: str, exc: Exception, text: bool) -> None:
    msg = str(exc) or type(exc).__name__
    if text:
        err.write(f"{kind} error: {msg}\n")
    else:
        err.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": msg},
                             sort_keys=True, separators=(",", ":")) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
