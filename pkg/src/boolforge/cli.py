"""boolforge command line.

Exit status: 0 on success, 1 when the equation is inconsistent (or a
verification fails), 2 on usage, parse or size-limit errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from . import __version__
from .algebra import Elem, elem_from_json, to_sop_text
from .enumeration import ParticularSolution, enumerate_all, pick, verify_solution
from .errors import BoolforgeError, InconsistentEquation
from .expr import evaluate, generator_env, parse_expr, parse_problem, to_json as expr_json, to_text
from .parametric import ParamSolution, contribution_table, solve_independent, solve_shared, verify
from .reduce import problem_map, suppress_zero_form, unify
from .subsumptive import eliminants, intervals, to_parametric
from .vekm import NaturalMap, atom_counts, build_map, consistency, count_solutions, render_text

log = logging.getLogger("boolforge")

COMMANDS = ("reduce", "suppress", "map", "solve-parametric", "solve-subsumptive",
            "enumerate", "count", "verify")
SCHEMA = 1


@dataclass
class RunConfig:
    command: str
    input: str = "-"
    scheme: str = "shared"
    order: tuple[str, ...] | None = None
    format: str = "text"
    style: str = "sop"
    max_k: int | None = None
    limit: int | None = None
    pick: str | None = None
    solution: str | None = None
    zero_form: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise BoolforgeError(f"unknown command {self.command!r}")
        if self.max_k is not None and self.max_k < 1:
            raise BoolforgeError("--max-k must be positive")
        if self.limit is not None and self.limit < 1:
            raise BoolforgeError("--limit must be positive")
        if self.command == "verify" and not self.solution:
            raise BoolforgeError("verify needs a solution file")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _emit(out, data, fmt, text):
    if fmt == "json":
        data = {"schema": SCHEMA, **data}
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text)


def _consistency_line(m: NaturalMap) -> str:
    c = consistency(m)
    if c.absolute:
        return "consistency: inconsistent (every atom is dead)"
    if c.unconditional:
        return "consistency: unconditional"
    return f"consistency: {to_sop_text(c.condition)} = 0"


def _consistency_json(m: NaturalMap) -> dict:
    c = consistency(m)
    return {"kill": sorted(c.kill), "condition": to_sop_text(c.condition),
            "absolute": c.absolute}


def _cmd_reduce(cfg, problem, out):
    u = unify(problem)
    text = f"h = {to_text(u.h)}\nr = {to_text(u.r)}\n"
    _emit(out, {"h": to_text(u.h), "r": to_text(u.r),
                "h_ast": expr_json(u.h), "r_ast": expr_json(u.r)}, cfg.format, text)
    return 0


def _cmd_suppress(cfg, problem, out):
    sig = problem.signature()
    u = unify(problem)
    unknowns = problem.unknowns + problem.suppressed
    if cfg.zero_form:
        m = suppress_zero_form(build_map(u.r, sig, unknowns), problem.suppressed)
        label = "f (= 0)"
    else:
        m = problem_map(problem, sig)
        label = "g (= 1)"
    _emit(out, {"form": "zero" if cfg.zero_form else "one", "map": m.to_json()}, cfg.format,
          f"{label} over {', '.join(m.unknowns)}\n" + render_text(m, cfg.style))
    return 0


def _cmd_map(cfg, problem, out):
    m = problem_map(problem)
    counts = atom_counts(m)
    lines = [render_text(m, cfg.style).rstrip("\n"),
             "atom counts: " + ", ".join(f"{m.sig.atom_text(i)}: {counts[i]}" for i in m.sig.live_atoms),
             _consistency_line(m)]
    _emit(out, {"map": m.to_json(), "atom_counts": list(counts),
                "consistency": _consistency_json(m)}, cfg.format, "\n".join(lines) + "\n")
    return 1 if consistency(m).absolute else 0


def _cmd_count(cfg, problem, out):
    m = problem_map(problem)
    n = count_solutions(m)
    text = (f"{_consistency_line(m)}\nunconditional solutions: {n.unconditional}\n"
            f"conditional solutions: {n.conditional}\n")
    _emit(out, {"consistency": _consistency_json(m), "unconditional": str(n.unconditional),
                "conditional": str(n.conditional)}, cfg.format, text)
    return 1 if consistency(m).absolute else 0


def _cmd_solve_parametric(cfg, problem, out):
    m = problem_map(problem)
    if cfg.scheme == "independent":
        sol, table = solve_independent(m)
    else:
        sol, table = solve_shared(m), None
    text = [_consistency_line(m), f"scheme: {sol.scheme}", f"parameters: {len(sol.params)}"
            + (f" ({', '.join(sol.params)})" if sol.params else ""), sol.to_text().rstrip("\n")]
    data = {"consistency": _consistency_json(m), "solution": sol.to_json()}
    if table is not None:
        data["contributions"] = table.to_json()
    _emit(out, data, cfg.format, "\n".join(text) + "\n")
    return 0


def _cmd_solve_subsumptive(cfg, problem, out):
    m = problem_map(problem)
    chain = eliminants(m, cfg.order)
    iv = intervals(chain)
    sol = to_parametric(iv)
    text = iv.to_text() + "parametric:\n" + sol.to_text()
    _emit(out, {"intervals": iv.to_json(), "solution": sol.to_json()}, cfg.format, text)
    return 0


def _parse_pick(text: str):
    if text == "min-atoms":
        return "min-atoms"
    if text.startswith("independent-of="):
        return ("independent-of", text.split("=", 1)[1])
    if text.startswith("expr="):
        body = text.split("=", 1)[1]
        if body.count("=") != 1:
            raise BoolforgeError("expr predicate must be an equation 'lhs = rhs'")
        lhs, rhs = body.split("=")
        return (parse_expr(lhs), parse_expr(rhs))
    raise BoolforgeError(f"unknown pick criterion {text!r}")


def _cmd_enumerate(cfg, problem, out):
    m = problem_map(problem)
    if consistency(m).absolute:
        raise InconsistentEquation("every atom is dead")
    table = contribution_table(m)
    if cfg.pick:
        found = pick(table, _parse_pick(cfg.pick))
        sols = [] if found is None else [found]
    else:
        sols = enumerate_all(table, cfg.limit)
    if cfg.format == "json":
        listed = [s.to_json() for s in sols]
        _emit(out, {"consistency": _consistency_json(m), "count": str(table.size()),
                    "solutions": listed}, "json", "")
        return 0 if listed or not cfg.pick else 1
    out.write(_consistency_line(m) + "\n")
    seen = 0
    for s in sols:
        out.write(s.to_text() + "\n")
        seen += 1
    if cfg.pick and not seen:
        out.write("no solution satisfies the criterion\n")
        return 1
    return 0


def _particular_from_json(data: dict, m: NaturalMap) -> ParticularSolution:
    sig = m.sig
    env = generator_env(sig)
    vals = []
    for u in m.unknowns:
        v = data["values"][u]
        if isinstance(v, str):
            vals.append(evaluate(parse_expr(v), env, sig))
        elif "generators" in v:
            vals.append(elem_from_json(v).project(sig))
        elif "atoms" in v:
            vals.append(Elem(sig, sum(1 << i for i in v["atoms"]) & sig.live_mask))
        else:
            vals.append(evaluate(parse_expr(v["text"]), env, sig))
    return ParticularSolution(m.unknowns, tuple(vals))


def _cmd_verify(cfg, problem, out):
    m = problem_map(problem)
    data = json.loads(_read(cfg.solution))
    if "solution" in data:
        data = data["solution"]
    if data.get("kind") == "particular":
        s = _particular_from_json(data, m)
        ok = verify_solution(m, s)
        _emit(out, {"kind": "particular", "ok": ok}, cfg.format,
              f"particular solution {s.to_text()}: {'valid' if ok else 'INVALID'}\n")
        return 0 if ok else 1
    sol = ParamSolution.from_json(data)
    verdict = verify(sol, m)
    text = f"parametric solution ({sol.scheme}): {'valid' if verdict.ok else 'INVALID'}\n"
    if verdict.counterexample:
        text += f"counterexample: {json.dumps(verdict.counterexample)}\n"
    _emit(out, {"kind": "parametric", "ok": verdict.ok, "exhaustive": verdict.exhaustive,
                "counterexample": verdict.counterexample}, cfg.format, text)
    return 0 if verdict.ok else 1


_HANDLERS = {
    "reduce": _cmd_reduce,
    "suppress": _cmd_suppress,
    "map": _cmd_map,
    "count": _cmd_count,
    "solve-parametric": _cmd_solve_parametric,
    "solve-subsumptive": _cmd_solve_subsumptive,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    saved = os.environ.get("BOOLFORGE_MAX_K")
    try:
        cfg.validate()
        if cfg.max_k is not None:
            os.environ["BOOLFORGE_MAX_K"] = str(cfg.max_k)
        problem = parse_problem(_read(cfg.input))
        log.debug("%s: %d generators, %d unknowns, %d suppressed", cfg.command,
                  len(problem.generators), len(problem.unknowns), len(problem.suppressed))
        return _HANDLERS[cfg.command](cfg, problem, out)
    except InconsistentEquation as exc:
        err.write(f"inconsistent: {exc}\n")
        return 1
    except (BoolforgeError, OSError, json.JSONDecodeError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    finally:
        if saved is None:
            os.environ.pop("BOOLFORGE_MAX_K", None)
        else:
            os.environ["BOOLFORGE_MAX_K"] = saved


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolforge",
                                     description="Solve Boolean equations over finite Boolean algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default="-", help="problem file ('-' for stdin)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-k", type=int, default=None, help="generator cap (default 20)")
        return p

    add("reduce", "unify the system into h = 1 and r = 0")
    p = add("suppress", "natural map after suppressing intermediary variables")
    p.add_argument("--zero-form", action="store_true", help="suppress from r = 0 instead of h = 1")
    p.add_argument("--style", choices=("sop", "atoms"), default="sop")
    p = add("map", "render the natural map, atom counts and consistency condition")
    p.add_argument("--style", choices=("sop", "atoms"), default="sop")
    add("count", "consistency condition and solution counts")
    p = add("solve-parametric", "parametric general solution")
    p.add_argument("--scheme", choices=("shared", "independent"), default="shared")
    p = add("solve-subsumptive", "interval (subsumptive) general solution")
    p.add_argument("--order", default=None,
                   help="comma-separated elimination order, first eliminated first "
                        "(default: reverse of declaration)")
    p = add("enumerate", "list particular solutions")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--pick", default=None,
                   help="min-atoms | independent-of=<generator> | expr=<lhs>=<rhs>")
    p = add("verify", "check a solution file against the problem")
    p.add_argument("solution", help="solution JSON (parametric or particular)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        scheme=getattr(args, "scheme", "shared"),
        order=tuple(x.strip() for x in args.order.split(",")) if getattr(args, "order", None) else None,
        format=args.format,
        style=getattr(args, "style", "sop"),
        max_k=args.max_k,
        limit=getattr(args, "limit", None),
        pick=getattr(args, "pick", None),
        solution=getattr(args, "solution", None),
        zero_form=getattr(args, "zero_form", False),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
