"""The ``socle-lab`` command line.

Exit codes: 0 when every verdict passes, 1 when any fails, 2 when the only
deviations are inconclusive, 3 for usage and parse errors, 4 for semantic
errors in otherwise well-formed input.
"""

from __future__ import annotations

import argparse
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field as dc_field

from . import __version__
from .catalog import catalog, load_catalog_file, load_group
from .errors import ParseError, SemanticError, SocleLabError, UnknownScenario
from .extensions import ExtensionInstance, disjointness_check
from .fields import Field, is_prime
from .funcfields import FunctionField
from .groups import (
    FiniteGroup,
    explore_counterexamples,
    frattini_intersection,
    frattini_p,
    normal_core,
    relative_frattini,
    subgroups,
    verify_socle_equation,
)
from .kummer import (
    CERTIFIED,
    INCONCLUSIVE,
    as_rank,
    as_relative_rank,
    kummer_rank,
    kummer_relative_rank,
    pth_root_membership,
    wp,
    wp_solve,
)
from .parsing import parse_element_list, parse_expression, parse_field
from .scenarios import (
    BY_CONSTRUCTION,
    FAIL,
    INCONCLUSIVE_VERDICT,
    PASS,
    RECOMPUTED,
    Row,
    ScenarioReport,
    emit_report,
    exit_code,
    run_scenario,
    scenario_names,
    socle_equation_explore,
)

USAGE_ERROR, SEMANTIC_ERROR = 3, 4

ELEMENT_COMMANDS = ("kummer-rank", "kummer-relative", "as-rank", "wp-solve", "membership")
GROUP_COMMANDS = ("frattini", "relative-frattini", "socle")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="socle-lab", description="Exact checks for p-socles, radical classes and p-Frattini subgroups.")
    parser.add_argument("--version", action="version", version=f"socle-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("human", "jsonl"), default="human")
        return p

    for name in ELEMENT_COMMANDS:
        p = common(sub.add_parser(name))
        p.add_argument("--field", required=True, help='function field, e.g. "F7(t,u)"')
        p.add_argument("--elems", default="", help="comma separated expressions")
        p.add_argument("--p", type=int)
        if name == "as-rank":
            p.add_argument("--strategy", choices=("echelon", "enumerate"), default="echelon")
            p.add_argument("--relative", action="store_true", help="rank modulo C(T) + C(U) + wp(F)")
        if name == "membership":
            p.add_argument("--b", required=True, help="the element to test")

    for name in GROUP_COMMANDS:
        p = common(sub.add_parser(name))
        p.add_argument("--group", help="catalog name such as S4, or a perm:/table: specification")
        p.add_argument("--catalog", help="file with one group per line")
        p.add_argument("--p", type=int, required=True)
        if name in ("relative-frattini", "socle"):
            p.add_argument("--H", help="generators of H as element indices, e.g. 1,5")
        if name == "socle":
            p.add_argument("--N", help="generators of N as element indices")

    p = common(sub.add_parser("disjoint"))
    p.add_argument("--field", required=True, help='ambient field, e.g. "Q(zeta5)(r:x^5-2)"')
    p.add_argument("--sub1", required=True, help="generators of the first subfield")
    p.add_argument("--sub2", required=True, help="generators of the second subfield")

    p = common(sub.add_parser("scenario"))
    p.add_argument("names", nargs="+", metavar="name", help=f"one of {', '.join(scenario_names())}, or all")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--jobs", type=int, default=1)

    p = common(sub.add_parser("explore"))
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--p", type=int, action="append", help="repeatable; default 2 and 3")
    p.add_argument("--catalog", help="file with one group per line instead of the built-in catalog")
    return parser


@dataclass
class Request:
    """A validated command: parsed field, elements and options."""

    command: str
    format: str = "human"
    field: Field | FunctionField | None = None
    elems: list = dc_field(default_factory=list)
    p: int | None = None
    options: dict = dc_field(default_factory=dict)


def _param_value(text: str):
    parts = text.split(",")
    try:
        values = [int(x) for x in parts]
    except ValueError:
        return text
    return values if len(parts) > 1 else values[0]


def _require_function_field(F, command: str) -> FunctionField:
    if not isinstance(F, FunctionField):
        raise SemanticError(f"{command} needs a function field such as F7(t,u)")
    return F


def _indices(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"{what} must be a list of element indices, got {text!r}") from None


def _validate(args) -> Request:
    req = Request(args.command, args.format)
    cmd = args.command
    if cmd in ELEMENT_COMMANDS:
        R = _require_function_field(parse_field(args.field), cmd)
        req.field = R
        char = R.characteristic
        if cmd in ("kummer-rank", "kummer-relative", "membership"):
            if args.p is None:
                raise SemanticError(f"{cmd} needs --p")
            if not is_prime(args.p):
                raise SemanticError(f"p = {args.p} is not prime")
            if args.p == char:
                raise SemanticError(f"p = {args.p} equals the characteristic; use as-rank for that case")
            if not R.base.has_root_of_unity(args.p):
                raise SemanticError(f"{R.base.text()} has no primitive {args.p}-th root of unity")
        else:
            if char == 0:
                raise SemanticError(f"{cmd} needs positive characteristic, {R.base.text()} has characteristic 0")
            if args.p is not None and args.p != char:
                raise SemanticError(f"p = {args.p} differs from the characteristic {char}")
            if not R.base.is_finite:
                raise SemanticError(f"{cmd} needs a finite constant field")
        relative = cmd == "kummer-relative" or (cmd == "as-rank" and args.relative)
        if relative and not (R.t_vars and R.u_vars):
            raise SemanticError("relative ranks need both T-variables and U-variables")
        req.p = args.p if args.p is not None else char
        req.elems = parse_element_list(args.elems, R)
        if cmd in ("kummer-rank", "kummer-relative") and any(e.is_zero() for e in req.elems):
            raise SemanticError("Kummer classes need nonzero elements")
        if cmd == "membership":
            req.options["b"] = parse_expression(args.b, R)
            if req.options["b"].is_zero() or any(e.is_zero() for e in req.elems):
                raise SemanticError("membership needs nonzero elements")
        if cmd == "as-rank":
            req.options["strategy"] = args.strategy
            req.options["relative"] = args.relative
        if cmd == "wp-solve" and not req.elems:
            raise SemanticError("wp-solve needs at least one element in --elems")
        return req
    if cmd in GROUP_COMMANDS:
        if not is_prime(args.p):
            raise SemanticError(f"p = {args.p} is not prime")
        req.p = args.p
        req.options["groups"] = _groups(args.group, args.catalog)
        req.options["H"] = _indices(getattr(args, "H", None), "--H")
        req.options["N"] = _indices(getattr(args, "N", None), "--N")
        if cmd == "relative-frattini" and req.options["H"] is None:
            raise SemanticError("relative-frattini needs --H")
        if (req.options["N"] is None) != (req.options["H"] is None) and cmd == "socle":
            raise SemanticError("give both --N and --H, or neither")
        return req
    if cmd == "disjoint":
        A = parse_field(args.field)
        if isinstance(A, FunctionField):
            raise SemanticError("disjoint needs a finite extension tower, not a function field")
        req.field = A
        req.options["sub1"] = parse_element_list(args.sub1, A)
        req.options["sub2"] = parse_element_list(args.sub2, A)
        return req
    if cmd == "scenario":
        names = scenario_names() if args.names == ["all"] else args.names
        for n in names:
            if n not in scenario_names():
                raise UnknownScenario(f"unknown scenario {n!r}; choose from {', '.join(scenario_names())}")
        params = {}
        for item in args.param:
            key, eq, value = item.partition("=")
            if not eq:
                raise ParseError(f"--param expects KEY=VALUE, got {item!r}")
            params[key.replace("-", "_")] = _param_value(value)
        if args.jobs < 1:
            raise SemanticError("--jobs must be at least 1")
        req.options.update(names=names, params=params, jobs=args.jobs)
        return req
    if cmd == "explore":
        primes = args.p or [2, 3]
        bad = [q for q in primes if not is_prime(q)]
        if bad:
            raise SemanticError(f"not prime: {bad}")
        groups = load_catalog_file(args.catalog) if args.catalog else None
        if groups is None and args.max_order > 24:
            raise SemanticError("the built-in catalog stops at order 24")
        req.options.update(max_order=args.max_order, primes=primes, groups=groups)
        return req
    raise ParseError(f"unknown command {cmd!r}")


def _groups(name: str | None, path: str | None) -> list[FiniteGroup]:
    if path:
        groups = load_catalog_file(path)
        if name:
            groups = [G for G in groups if G.name == name]
            if not groups:
                raise SemanticError(f"no group labelled {name!r} in {path}")
        return groups
    if name:
        return [load_group(name)]
    return catalog()


def parse_input(text: str | list[str]) -> Request:
    """Turn a command line (string or argv list) into a validated request."""
    argv = shlex.split(text) if isinstance(text, str) else list(text)
    args = build_parser().parse_args(argv)
    return _validate(args)


# ---------------------------------------------------------------------------
# execution


def _class_rows(sys_) -> list[Row]:
    ok = sys_.recheck()
    verdict = INCONCLUSIVE_VERDICT if sys_.status == INCONCLUSIVE else (PASS if ok else FAIL)
    bounds = "" if sys_.status != INCONCLUSIVE else f" bounds {sys_.rank_bounds[0]}..{sys_.rank_bounds[1]}"
    rows = [
        Row("rank", f"{sys_.rank}{bounds}", "certificate re-verifies", RECOMPUTED, verdict),
        Row("status", sys_.status, CERTIFIED if sys_.rank == len(sys_.elements) else "dependence-witness", RECOMPUTED, verdict),
        Row("mixed primes" if sys_.relative else "primes", ", ".join(str(q) for q in sys_.primes) or "none", "valuation columns", BY_CONSTRUCTION, PASS),
    ]
    for rel in sys_.relations:
        good = sys_.verify_relation(rel)
        rows.append(Row(f"relation nu={list(rel.nu)}", f"alpha={rel.alpha}", "verified identity", RECOMPUTED, PASS if good else FAIL))
    return rows


def _subgroup_from(G: FiniteGroup, gens: list[int]):
    if any(not 0 <= g < G.order for g in gens):
        raise SemanticError(f"element index out of range for {G.name} of order {G.order}")
    return G.generate(gens)


def _execute_groups(req: Request) -> list[Row]:
    rows = []
    p = req.p
    for G in req.options["groups"]:
        if req.command == "frattini":
            res = frattini_p(G, p, cross_check=False)
            same = frattini_intersection(G, p) == res.phi if G.order <= 64 else None
            verdict = PASS if same else (INCONCLUSIVE_VERDICT if same is None else FAIL)
            rows.append(Row(f"{G.name}: Phi^{p}", f"order {res.phi.order}, quotient C{p}^{res.quotient_rank}", "equals intersection of index-p normal subgroups", RECOMPUTED, verdict))
        elif req.command == "relative-frattini":
            H = _subgroup_from(G, req.options["H"])
            out = relative_frattini(G, H, p)
            same = frattini_intersection(G, p, contains=H) == out
            rows.append(Row(f"{G.name}: H*Phi^{p} with |H|={H.order}", f"order {out.order}: {list(out.members)}", "equals intersection over index-p normals containing H", RECOMPUTED, PASS if same else FAIL))
        else:
            rows.extend(_socle_rows(G, p, req.options["N"], req.options["H"]))
    return rows


def _socle_rows(G: FiniteGroup, p: int, N_gens, H_gens) -> list[Row]:
    if N_gens is not None:
        N, H = _subgroup_from(G, N_gens), _subgroup_from(G, H_gens)
        v = verify_socle_equation(G, N, H, p)
        verdict = {"holds": PASS, "fails": FAIL}.get(v.verdict, INCONCLUSIVE_VERDICT)
        detail = f"{v.verdict}; NH=G {v.product_hypothesis}; core(N)H=G {v.core_hypothesis}; witness {v.witness}"
        return [Row(f"{G.name}: socle equation for |N|={N.order}, |H|={H.order}", detail, "holds", RECOMPUTED, verdict)]
    subs = subgroups(G)
    full = G.whole.bits
    pairs = failures = 0
    for N in subs:
        core = normal_core(G, N)
        for H in subs:
            if core.product_set(H) == full:
                pairs += 1
                failures += verify_socle_equation(G, N, H, p).verdict != "holds"
    return [Row(f"{G.name}: failures among {pairs} pairs with core(N)H = G", str(failures), "0", RECOMPUTED, PASS if failures == 0 else FAIL)]


def execute(req: Request) -> list[ScenarioReport]:
    """Run a validated request; scenarios may produce several reports."""
    if req.command == "scenario":
        names, params, jobs = req.options["names"], req.options["params"], req.options["jobs"]
        if jobs > 1 and len(names) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                return list(pool.map(run_scenario, names, [params] * len(names)))
        return [run_scenario(n, params) for n in names]
    start = time.perf_counter()
    cmd, R, p = req.command, req.field, req.p
    params: dict = {"p": p} if p is not None else {}
    if R is not None:
        params["field"] = R.text()
    if req.elems:
        params["elems"] = [str(e) for e in req.elems]
    if cmd == "kummer-rank":
        rows = _class_rows(kummer_rank(req.elems, p, field=R))
    elif cmd == "kummer-relative":
        rows = _class_rows(kummer_relative_rank(req.elems, p, field=R))
    elif cmd == "as-rank":
        if req.options["relative"]:
            rows = _class_rows(as_relative_rank(req.elems, p, field=R))
        else:
            rows = _class_rows(as_rank(req.elems, p, field=R, strategy=req.options["strategy"]))
    elif cmd == "wp-solve":
        rows = []
        for b in req.elems:
            res = wp_solve(b)
            if res:
                rows.append(Row(f"solve alpha^p - alpha = {b}", f"alpha = {res.alpha}", "wp(alpha) = b", RECOMPUTED, PASS if wp(res.alpha) == b else FAIL))
            else:
                where = f" at {res.prime} (order {res.order})" if res.prime is not None else ""
                rows.append(Row(f"solve alpha^p - alpha = {b}", f"no solution: {res.reason}{where}", "obstruction re-checks", RECOMPUTED, PASS if res.recheck(b) else FAIL))
    elif cmd == "membership":
        b = req.options["b"]
        params["b"] = str(b)
        v = pth_root_membership(b, req.elems, p, field=R)
        verdict = INCONCLUSIVE_VERDICT if v.verdict == "inconclusive" else PASS
        detail = v.verdict
        if v.verdict == "member":
            detail += f"; nu={list(v.nu)}; alpha={v.alpha}"
        elif v.witness_prime is not None:
            detail += f"; odd valuation at {v.witness_prime}"
        elif v.witness_functional is not None:
            detail += f"; functional {v.witness_functional}"
        rows = [Row("b in <A> (F*)^p", detail, "decided with a witness", RECOMPUTED, verdict)]
    elif cmd in GROUP_COMMANDS:
        params["groups"] = [G.name for G in req.options["groups"]]
        rows = _execute_groups(req)
    elif cmd == "disjoint":
        s1, s2 = req.options["sub1"], req.options["sub2"]
        params.update(sub1=[str(x) for x in s1], sub2=[str(x) for x in s2])
        res = disjointness_check(ExtensionInstance(R, s1, s2))
        rows = [
            Row("dims (L1, L2, L1L2)", f"({res.dim1}, {res.dim2}, {res.dim_compositum})", "spans over the prime field", RECOMPUTED, PASS),
            Row("linearly disjoint", str(res.linearly_disjoint).lower(), "dim L1L2 = dim L1 * dim L2", BY_CONSTRUCTION, PASS),
        ]
    elif cmd == "explore":
        max_order, primes, groups = req.options["max_order"], req.options["primes"], req.options["groups"]
        params.update(max_order=max_order, primes=primes)
        if groups is None:
            rows = socle_equation_explore(max_order, primes).rows
        else:
            rows = _explore_file(groups, max_order, primes)
    else:
        raise ParseError(f"unknown command {cmd!r}")
    elapsed = int((time.perf_counter() - start) * 1000)
    return [ScenarioReport(cmd, params, rows, elapsed, __version__)]


def _explore_file(groups, max_order, primes) -> list[Row]:
    rows = []
    for p in primes:
        recs = explore_counterexamples(max_order, p, groups)
        failing = [r for r in recs if not r.equation_holds]
        rows.append(Row(f"p={p}: pairs with NH=G but core(N)H!=G", f"{len(failing)} of {len(recs)} fail the equation", "recorded", RECOMPUTED, PASS))
        for r in failing:
            rows.append(Row(f"{r.group}: N={list(r.N)} H={list(r.H)}", f"fails, witness {r.witness}", "recorded", RECOMPUTED, PASS))
    return rows


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_input(argv)
    except (ParseError, UnknownScenario) as exc:
        print(f"socle-lab: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SemanticError as exc:
        print(f"socle-lab: error: {exc}", file=sys.stderr)
        return SEMANTIC_ERROR
    except SocleLabError as exc:
        print(f"socle-lab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return SEMANTIC_ERROR
    try:
        reports = execute(req)
    except SemanticError as exc:
        print(f"socle-lab: error: {exc}", file=sys.stderr)
        return SEMANTIC_ERROR
    except SocleLabError as exc:
        print(f"socle-lab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return SEMANTIC_ERROR
    for r in reports:
        sys.stdout.write(emit_report(r, req.format))
    return exit_code(v for r in reports for v in r.verdicts)


if __name__ == "__main__":
    sys.exit(main())
