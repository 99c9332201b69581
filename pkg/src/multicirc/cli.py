"""Command-line front end.

Matrices are written ``"2,0;0,6"`` (rows by ``;``) or as a JSON array;
jump sets as ``"1,0|0,1"``. Exit status: 0 on success, 1 when the input is
well formed but the computation refuses it (the error class is printed),
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .circulant import (
    adam_canonical,
    build,
    cartesian_product,
    components,
    make_jumps,
    reduce_disconnected,
)
from .dimension import analyze, dimension_bounds, is_circulant_2step
from .directions import detect_directions
from .errors import CirculantError, MatrixParseError
from .graph import Graph
from .intmat import (
    IntMatrix,
    determinantal_divisors,
    hermite_normal_form,
    invariant_factors,
    parse_matrix,
    smith_normal_form,
)
from .quotient import QuotientGroup, make_group


class UsageError(Exception):
    pass


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int("".join(t.split())) for t in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None


def parse_jumps(text: str) -> list[tuple[int, ...]]:
    if not text.strip():
        raise UsageError("empty jump set")
    return [parse_vector(chunk) for chunk in text.split("|")]


def _matrix_arg(text: str) -> IntMatrix:
    try:
        return parse_matrix(text)
    except MatrixParseError as e:
        raise UsageError(f"-m: {e}") from None


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json" or text is None:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _jstr(A) -> str:
    return "{" + ", ".join("(" + ",".join(map(str, a)) + ")" for a in A) + "}"


def _group_and_jumps(args) -> tuple[QuotientGroup, list[tuple[int, ...]]]:
    if not args.matrix:
        raise UsageError("-m/--matrix is required")
    if not args.jumps:
        raise UsageError("--jumps is required")
    g = make_group(_matrix_arg(args.matrix[0]))
    return g, parse_jumps(args.jumps[0])


def _symmetric(args) -> bool:
    return args.mode == "graph"


def _graph_out(G, fmt: str) -> None:
    if fmt == "dot":
        sys.stdout.write(G.to_dot())
    elif fmt == "text":
        print(repr(G))
        for u in range(G.n):
            print(f"  {u}: {' '.join(map(str, G.out[u]))}")
    else:
        print(json.dumps(G.to_json_dict(), sort_keys=True))


# --- subcommands ---------------------------------------------------------


def cmd_snf(args) -> None:
    M = _matrix_arg(args.matrix[0])
    sd = smith_normal_form(M)
    obj = {
        "S": list(sd.factors),
        "U": sd.U.tolist(),
        "V": sd.V.tolist(),
        "divisors": list(sd.divisors),
        "factors": list(sd.factors),
    }
    _emit(obj, args.format, f"S = diag({', '.join(map(str, sd.factors))})\nU = {sd.U}\nV = {sd.V}")


def cmd_hnf(args) -> None:
    hd = hermite_normal_form(_matrix_arg(args.matrix[0]))
    _emit({"H": hd.H.tolist(), "V": hd.V.tolist()}, args.format, f"H = {hd.H}\nV = {hd.V}")


def cmd_divisors(args) -> None:
    M = _matrix_arg(args.matrix[0])
    d = determinantal_divisors(M, args.method)
    s = invariant_factors(M)
    _emit({"divisors": list(d), "factors": list(s)}, args.format, f"d = {d}\ns = {s}")


def cmd_group(args) -> None:
    g = make_group(_matrix_arg(args.matrix[0]))
    obj = g.to_json() | {"hermite_diagonal": list(g.H.diagonal()), "U_prime": g.Uprime.tolist()}
    _emit(obj, args.format, f"{g.describe()} (order {g.m}, rank {g.r})")


def _element_arg(args) -> tuple[int, ...]:
    if args.element is None:
        raise UsageError("-a/--element is required")
    return parse_vector(args.element)


def cmd_order(args) -> None:
    g = make_group(_matrix_arg(args.matrix[0]))
    a = _element_arg(args)
    o = g.element_order(a)
    _emit({"element": list(g.canonicalize(a)), "order": o}, args.format, str(o))


def cmd_canon(args) -> None:
    g = make_group(_matrix_arg(args.matrix[0]))
    a = _element_arg(args)
    c = g.canonicalize(a)
    obj = {"element": list(c), "snf_coords": list(g.to_snf_coords(c))}
    _emit(obj, args.format, ",".join(map(str, c)))


def cmd_build(args) -> None:
    g, A = _group_and_jumps(args)
    _graph_out(build(g, A, _symmetric(args)), args.format)


def cmd_components(args) -> None:
    g, A = _group_and_jumps(args)
    G = build(g, A, _symmetric(args))
    alpha, comps = components(G)
    obj = {"alpha": alpha, "components": comps}
    text = f"{alpha} component(s)"
    if alpha > 1:
        red = reduce_disconnected(g, A, _symmetric(args))
        obj["component_matrix"] = red.component_matrix.tolist()
        obj["component_jumps"] = [list(a) for a in red.component_jumps]
        obj["scaled_matrix"] = red.scaled_matrix.tolist()
        obj["scaled_jumps"] = [list(a) for a in red.scaled_jumps]
        text += f", each G({red.component_matrix}; {_jstr(red.component_jumps)})"
    _emit(obj, args.format, text)


def cmd_product(args) -> None:
    if len(args.matrix or []) != 2 or len(args.jumps or []) != 2:
        raise UsageError("product needs -m and --jumps twice each")
    sym = _symmetric(args)
    G1 = build(make_group(_matrix_arg(args.matrix[0])), parse_jumps(args.jumps[0]), sym)
    G2 = build(make_group(_matrix_arg(args.matrix[1])), parse_jumps(args.jumps[1]), sym)
    P = cartesian_product(G1, G2)
    if args.format == "json":
        obj = {"matrix": P.group.M.tolist(), "jumps": [list(a) for a in P.jumps]} | P.to_json_dict()
        print(json.dumps(obj, sort_keys=True))
    else:
        _graph_out(P, args.format)


def cmd_adam_canon(args) -> None:
    g, A = _group_and_jumps(args)
    target, js = adam_canonical(g, A, _symmetric(args))
    if args.format == "dot":
        sys.stdout.write(build(target, js).to_dot())
        return
    obj = {"invariant_factors": list(g.Sprime), "jumps": [list(a) for a in js]}
    _emit(obj, args.format, f"{target.describe()} with jumps {_jstr(js)}")


def cmd_directions(args) -> None:
    if args.graph:
        try:
            G = Graph.from_json(Path(args.graph).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"--graph: {e}") from None
    else:
        g, A = _group_and_jumps(args)
        G = build(g, A, _symmetric(args))
    if args.p is None:
        raise UsageError("-p is required")
    part = detect_directions(G, args.p, args.rule)
    edges = sorted([u, v, d] for (u, v), d in part.direction_of_edge.items())
    obj = {"n_directions": part.n_directions, "edges": edges}
    text = "\n".join(
        f"direction {i + 1}: {len(c)} edges" for i, c in enumerate(part.classes())
    )
    _emit(obj, args.format, text)


def cmd_bounds(args) -> None:
    g, A = _group_and_jumps(args)
    rep = dimension_bounds(g, A, _symmetric(args))
    _emit(rep.to_dict(), args.format, _report_text(rep))


def _report_text(rep) -> str:
    lines = [
        f"order {rep.m}, components {rep.components}",
        f"bounds: rank {rep.snf_rank_bound}, prime exponent {rep.prime_exponent_bound}, generators {rep.generator_bound}",
    ]
    if rep.verdicts:
        lines.append("verdicts: " + ", ".join(f"{k}={v}" for k, v in sorted(rep.verdicts.items())))
    if rep.exact_dimension is not None:
        lines.append(f"dimension {rep.exact_dimension} ({rep.provenance})")
    return "\n".join(lines)


def cmd_is_circulant(args) -> None:
    g, A = _group_and_jumps(args)
    sym = _symmetric(args)
    js = make_jumps(g, A)
    if len(js) == 2 and g.generates(js.jumps):
        ok, rule = is_circulant_2step(g, js.jumps, sym)
        obj = {"is_circulant": ok, "rule": rule, "method": "2-step", "d_n_minus_1": g.smith.divisors[g.n - 2] if g.n > 1 else 1}
    else:
        rep = analyze(g, A, sym, exact=args.exact, limit=args.cap)
        obj = {
            "is_circulant": rep.verdicts.get("is_circulant"),
            "rule": rep.verdicts.get("rule"),
            "method": rep.provenance,
        }
    verdict = {True: "circulant", False: "not a circulant", None: "undecided (try --exact)"}[obj["is_circulant"]]
    _emit(obj, args.format, f"{verdict} (rule {obj['rule']})")


def cmd_dimension(args) -> None:
    g, A = _group_and_jumps(args)
    rep = analyze(g, A, _symmetric(args), exact=args.exact, limit=args.cap)
    _emit(rep.to_dict(), args.format, _report_text(rep))


def cmd_verify(args) -> int:
    from .verify import CRITERIA, run_all

    selected = None
    if args.only:
        try:
            selected = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError(f"--only: cannot parse {args.only!r}") from None
        unknown = [k for k in selected if k not in CRITERIA]
        if unknown:
            raise UsageError(f"--only: unknown criteria {unknown}")
    echo = None if args.format == "json" else print
    results = run_all(selected, echo=echo)
    if args.format == "json":
        print(json.dumps([r.__dict__ for r in results], sort_keys=True))
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "snf": (cmd_snf, "Smith normal form with transforms"),
    "hnf": (cmd_hnf, "Hermite normal form with transform"),
    "divisors": (cmd_divisors, "determinantal divisors and invariant factors"),
    "group": (cmd_group, "structure of Z^n / M Z^n"),
    "order": (cmd_order, "order of an element"),
    "canon": (cmd_canon, "canonical representative of an element"),
    "build": (cmd_build, "build the circulant G(M; A)"),
    "components": (cmd_components, "components and the connected reduction"),
    "product": (cmd_product, "cartesian product of two circulants"),
    "adam-canon": (cmd_adam_canon, "presentation over the Smith group"),
    "directions": (cmd_directions, "recover product directions from adjacency"),
    "bounds": (cmd_bounds, "dimension upper bounds"),
    "is-circulant": (cmd_is_circulant, "decide whether G(M; A) is a circulant"),
    "dimension": (cmd_dimension, "dimension: bounds, closed forms, optional brute force"),
    "verify": (cmd_verify, "run the acceptance sweeps"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicirc", description="Multidimensional circulants over Z^n / M Z^n.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=["json", "text", "dot"], default="json")
        if name != "verify":
            p.add_argument("-m", "--matrix", action="append", help="matrix like 2,0;0,6 or a JSON array")
        if name in ("order", "canon"):
            p.add_argument("-a", "--element", help="vector like 1,1")
        if name in ("build", "components", "product", "adam-canon", "directions", "bounds", "is-circulant", "dimension"):
            p.add_argument("--jumps", action="append", help="jump set like 1,0|0,1")
            p.add_argument("--mode", choices=["digraph", "graph"], default="digraph")
        if name == "divisors":
            p.add_argument("--method", choices=["smith", "minors"], default="smith")
        if name == "directions":
            p.add_argument("--graph", help="JSON edge-list file {n_vertices, directed, edges}")
            p.add_argument("-p", type=int, help="prime order of every factor")
            p.add_argument("--rule", choices=["odd-cycle", "neighbourhood"], default="odd-cycle")
        if name in ("is-circulant", "dimension"):
            p.add_argument("--exact", action="store_true", help="fall back to the brute-force oracle")
            p.add_argument("--cap", type=int, default=None, help=f"oracle vertex limit (default {oracle.FULL_LIMIT})")
        if name == "verify":
            p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "dot" and args.command not in ("build", "product", "adam-canon"):
        parser.error(f"--format dot is not available for {args.command}")
    if args.command != "verify" and not args.matrix and not getattr(args, "graph", None):
        parser.error("-m/--matrix is required")
    func = COMMANDS[args.command][0]
    try:
        code = func(args)
    except UsageError as e:
        print(f"multicirc {args.command}: error: {e}", file=sys.stderr)
        return 2
    except CirculantError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
