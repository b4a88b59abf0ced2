"""Command-line front end.

Reports are JSON lines (with ``--json``) or one readable line per
instance.  Vertex ids in certificates are 1-indexed, like the files.
Exit codes: 0 success, 1 input error, 2 timeout / refused as too wide /
invalid decomposition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import generators as gen
from . import io, mmbs, mmhs, oracle
from .core import CapacityError, Graph, Hypergraph
from .search import BranchStats, SearchTimeout, deadline_after
from .treewidth import (BagLimitExceeded, TD_CAPACITY, bag_limit_from_env, compute_td_small,
                        make_nice, mmbs_tw, validate_td)

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

SOLVERS = ("oracle", "search", "extension", "improved", "alt", "tw", "kernel+improved")
MODES = ("exactly", "at-most", "at-least")


class InputError(Exception):
    pass


@dataclass
class SolveReport:
    instance_id: str
    solver: str
    question: str
    answer: object  # bool, int, "timeout" or "width-too-large"
    certificate: Optional[list] = None
    stats: dict = field(default_factory=lambda: BranchStats().to_dict())
    config: dict = field(default_factory=dict)
    value: Optional[int] = None
    kernel: Optional[dict] = None

    def to_dict(self):
        d = asdict(self)
        for k in ("value", "kernel"):
            if d[k] is None:
                del d[k]
        return d

    def human(self):
        ans = self.answer
        if isinstance(ans, bool):
            ans = "true" if ans else "false"
        out = f"{self.instance_id}: {self.question} -> {ans}"
        if self.certificate is not None:
            out += f"  certificate={self.certificate}"
        st = self.stats
        out += f"  [{self.solver}, {st.get('nodes_expanded', 0)} nodes, {st.get('time_ms', 0):.1f} ms]"
        return out


def _cert(s):
    return None if s is None else sorted(v + 1 for v in s)


def _config(args):
    keys = ("beta", "mode", "solver", "td", "seed", "timeout_ms", "bag_limit")
    return {k: getattr(args, k, None) for k in keys if getattr(args, k, None) is not None}


def _question(kind, mode, beta):
    name = "mmbs" if kind == "graph" else "mmhs"
    obj = "mbs" if kind == "graph" else "mhs"
    if beta is None:
        return name
    if mode == "at-least":
        return f"{name}>={beta}"
    if mode == "exactly":
        return f"exists-{obj}-of-size=={beta}"
    return f"exists-{obj}-of-size<={beta}"


def _verify(kind, inst, cert):
    if cert is None:
        return
    ok = (mmbs.is_minimal_blocking(inst, cert) if kind == "graph"
          else oracle.is_minimal_hitting_set(inst, cert))
    if not ok:
        raise RuntimeError("internal error: certificate failed verification")


def _decomposition(G, args):
    limit = args.bag_limit if args.bag_limit is not None else bag_limit_from_env()
    if args.td:
        D = io.parse_td(Path(args.td).read_text(encoding="utf-8"), G.n)
        if not validate_td(G, D):
            raise InputError(f"{args.td}: not a valid tree decomposition of the graph")
        return make_nice(G, D), limit
    if G.n > TD_CAPACITY:
        raise InputError(f"--solver tw needs --td for graphs with more than {TD_CAPACITY} vertices")
    D = compute_td_small(G, max(limit - 1, 0))
    if D is None:
        raise BagLimitExceeded(limit + 1, limit)
    return make_nice(G, D), limit


def solve_instance(kind, inst, instance_id, args) -> SolveReport:
    """Run one solve; raises InputError for unsupported combinations."""
    solver = args.solver
    mode = args.mode
    beta = args.beta
    mode_u = mode.replace("-", "_")
    stats = BranchStats()
    deadline = deadline_after(args.timeout_ms)
    rep = SolveReport(instance_id, solver, _question(kind, mode, beta), None,
                      config=_config(args))
    if beta is None and solver not in ("oracle", "tw"):
        raise InputError(f"--solver {solver} answers a decision question; pass --beta")
    if beta is not None and beta < 1:
        raise InputError("--beta must be at least 1")
    if solver == "search" and mode == "at-least":
        raise InputError("--solver search answers --mode exactly or --mode at-most")
    if solver in ("extension", "improved", "alt", "kernel+improved", "tw") and mode != "at-least":
        raise InputError(f"--solver {solver} answers --mode at-least only")
    if kind == "graph" and inst.n == 0:
        raise InputError("minimal blocking sets are undefined for the graph with no vertices")
    if kind == "hypergraph" and inst.has_empty_edge():
        raise InputError("hypergraph has an empty hyperedge, so no hitting set exists")

    t0 = time.perf_counter()
    cert = None
    try:
        if solver == "oracle":
            if kind == "graph":
                sets = oracle.all_minimal_blocking_sets(inst)
            else:
                sets = oracle.all_minimal_hitting_sets(inst)
            best = max(sets, key=len)
            rep.value = len(best)
            if beta is None:
                rep.answer, cert = len(best), best
            else:
                if mode == "at-least":
                    hit = [s for s in sets if len(s) >= beta]
                elif mode == "exactly":
                    hit = [s for s in sets if len(s) == beta]
                else:
                    hit = [s for s in sets if len(s) <= beta]
                rep.answer = bool(hit)
                cert = hit[0] if hit else None
        elif solver == "tw":
            if kind != "graph":
                raise InputError("--solver tw works on graphs only")
            nice, limit = _decomposition(inst, args)
            value, best = mmbs_tw(inst, nice, bag_limit=limit, stats=stats, deadline=deadline)
            rep.value = value
            if beta is None:
                rep.answer, cert = value, best
            else:
                rep.answer = value >= beta
                cert = best if rep.answer else None
        elif solver == "search":
            f = mmbs.search_certificate if kind == "graph" else mmhs.search_tree_certificate
            cert = f(inst, beta, mode_u, stats, deadline)
            rep.answer = cert is not None
        elif solver == "kernel+improved":
            # the kernel works on hypergraphs; graphs go through their mis hypergraph
            H = mmbs.mis_hypergraph(inst) if kind == "graph" else inst
            cert, k = mmhs.kernel_certificate(H, beta, stats, deadline)
            rep.answer = cert is not None
            rep.kernel = k.to_dict()
            if rep.kernel.get("core") is not None:
                rep.kernel["core"] = [v + 1 for v in rep.kernel["core"]]
        else:
            if kind == "graph":
                cert = mmbs.at_least_certificate(inst, beta, solver, stats, deadline)
            else:
                cert = mmhs.ENGINES[solver](inst, beta, stats, deadline)
            rep.answer = cert is not None
    except SearchTimeout:
        rep.answer = "timeout"
        cert = None
    except BagLimitExceeded as exc:
        rep.answer = "width-too-large"
        rep.config["error"] = str(exc)
        cert = None
    stats.time_ms = (time.perf_counter() - t0) * 1000.0
    _verify(kind, inst, cert)
    rep.certificate = _cert(cert)
    rep.stats = stats.to_dict()
    return rep


def _status(rep):
    return EXIT_INFEASIBLE if rep.answer in ("timeout", "width-too-large") else EXIT_OK


def _emit(rep_or_dict, args, out):
    if args.json:
        d = rep_or_dict.to_dict() if isinstance(rep_or_dict, SolveReport) else rep_or_dict
        out.write(json.dumps(d, sort_keys=True) + "\n")
    else:
        if isinstance(rep_or_dict, SolveReport):
            out.write(rep_or_dict.human() + "\n")
        else:
            out.write(" ".join(f"{k}={v}" for k, v in sorted(rep_or_dict.items())) + "\n")
    out.flush()


def _load(path, want=None):
    try:
        kind, inst = io.read_instance(path)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except io.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    if want is not None and kind != want:
        raise InputError(f"{path}: expected a {want} file, found a {kind}")
    return kind, inst


# ---------------------------------------------------------------- subcommands

def cmd_solve(args, out, want):
    status = EXIT_OK
    for path in args.files:
        kind, inst = _load(path, want)
        rep = solve_instance(kind, inst, Path(path).name, args)
        _emit(rep, args, out)
        status = max(status, _status(rep))
    return status


def cmd_kernel(args, out):
    if args.beta is None:
        raise InputError("kernel needs --beta")
    status = EXIT_OK
    for path in args.files:
        kind, inst = _load(path)
        H = mmbs.mis_hypergraph(inst) if kind == "graph" else inst
        t0 = time.perf_counter()
        k = mmhs.sunflower_kernel(H, args.beta)
        d = {"instance_id": Path(path).name, "solver": "kernel", "beta": args.beta,
             "kernel": k.to_dict(), "time_ms": (time.perf_counter() - t0) * 1000.0}
        if "core" in d["kernel"]:
            d["kernel"]["core"] = [v + 1 for v in d["kernel"]["core"]]
        if args.out:
            Path(args.out).write_text(io.format_hypergraph(k.hypergraph), encoding="utf-8")
        _emit(d, args, out)
    return status


def cmd_oracle(args, out):
    for path in args.files:
        kind, inst = _load(path)
        d = {"instance_id": Path(path).name, "solver": "oracle"}
        if kind == "graph":
            if inst.n == 0:
                raise InputError("minimal blocking sets are undefined for the graph with no vertices")
            fam = oracle.enumerate_max_independent_sets(inst)
            value, cert = oracle.mmbs_bruteforce(inst)
            d.update(question="mmbs", answer=value, certificate=_cert(cert),
                     alpha=fam.alpha, mis_count=len(fam.sets))
        else:
            if inst.has_empty_edge():
                raise InputError("hypergraph has an empty hyperedge, so no hitting set exists")
            value, cert = oracle.mmhs_bruteforce(inst)
            d.update(question="mmhs", answer=value, certificate=_cert(cert))
        _verify(kind, inst, cert)
        _emit(d, args, out)
    return EXIT_OK


def _read_graph(path):
    try:
        return io.parse_graph(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except io.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_partitioned(path):
    try:
        return io.parse_partitioned_graph(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except (io.FormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_gen(args, out):
    kind = args.kind
    seed = args.seed if args.seed is not None else 0
    recipe = None
    if kind == "recipe":
        if not args.input:
            raise InputError("gen recipe needs a recipe file")
        recipe = json.loads(Path(args.input).read_text(encoding="utf-8"))
        inst = gen.from_recipe(recipe)
    elif kind == "random-graph":
        recipe = gen.make_recipe("graph", seed, n=args.n, edge_prob=args.p)
    elif kind == "random-hypergraph":
        recipe = gen.make_recipe("hypergraph", seed, n=args.n, m=args.m,
                                 max_edge_size=args.max_edge_size)
    elif kind == "random-partitioned":
        sizes = [int(s) for s in (args.sizes or "").split(",") if s]
        if not sizes:
            raise InputError("random-partitioned needs --sizes, e.g. --sizes 2,2,3")
        recipe = gen.make_recipe("partitioned", seed, sizes=sizes, cross_prob=args.p)
    else:
        if not args.input:
            raise InputError(f"gen {kind} needs an input file")
        if kind in ("mcis-join", "updom"):
            PG = _read_partitioned(args.input)
            inst = gen.gen_mcis_join(PG) if kind == "mcis-join" else gen.gen_updom(PG)
        else:
            G = _read_graph(args.input)
            if kind == "pendant":
                inst = gen.gen_pendant(G)
            elif kind == "complement-mmvc":
                inst = gen.gen_complement_mmvc(G)
            else:
                inst = gen.updom_to_mmhs(G)
    if args.emit_recipe:
        if recipe is None:
            raise InputError("--emit-recipe applies to random generators only")
        text = json.dumps(recipe, sort_keys=True) + "\n"
    else:
        if kind != "recipe" and recipe is not None:
            inst = gen.from_recipe(recipe)
        if isinstance(inst, Graph):
            text = io.format_graph(inst)
        elif isinstance(inst, Hypergraph):
            text = io.format_hypergraph(inst)
        else:
            text = io.format_partitioned_graph(inst)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _bench_one(job):
    path, args = job
    try:
        kind, inst = _load(path)
        return solve_instance(kind, inst, Path(path).name, args).to_dict()
    except (InputError, CapacityError, ValueError) as exc:
        return {"instance_id": Path(path).name, "error": str(exc)}


def cmd_bench(args, out):
    root = Path(args.directory)
    if not root.is_dir():
        raise InputError(f"{root}: not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix in (".gr", ".hs"))
    jobs = [(str(p), args) for p in files]
    t0 = time.perf_counter()
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    answers = {}
    nodes = errors = 0
    for d in results:
        if args.json:
            out.write(json.dumps(d, sort_keys=True) + "\n")
        else:
            if "error" in d:
                out.write(f"{d['instance_id']}: error: {d['error']}\n")
            else:
                out.write(SolveReport(**d).human() + "\n")
        if "error" in d:
            errors += 1
            continue
        nodes += d["stats"]["nodes_expanded"]
        key = str(d["answer"]).lower()
        answers[key] = answers.get(key, 0) + 1
    summary = {"summary": True, "instances": len(results), "errors": errors,
               "nodes_expanded": nodes, "answers": dict(sorted(answers.items())),
               "wall_ms": (time.perf_counter() - t0) * 1000.0}
    _emit(summary, args, out)
    return EXIT_OK if not errors else EXIT_INPUT


def cmd_check_td(args, out):
    G = _read_graph(args.graph)
    try:
        D = io.parse_td(Path(args.td_file).read_text(encoding="utf-8"), G.n)
        valid = validate_td(G, D)
    except FileNotFoundError:
        raise InputError(f"{args.td_file}: no such file") from None
    except (io.FormatError, ValueError) as exc:
        raise InputError(f"{args.td_file}: {exc}") from None
    d = {"instance_id": Path(args.graph).name, "td": Path(args.td_file).name,
         "valid": valid, "width": D.width, "bags": len(D.bags)}
    _emit(d, args, out)
    return EXIT_OK if valid else EXIT_INFEASIBLE


# ---------------------------------------------------------------- parser

def _common(p, solver_default):
    p.add_argument("--beta", type=int)
    p.add_argument("--mode", choices=MODES, default="at-least")
    p.add_argument("--solver", choices=SOLVERS, default=solver_default)
    p.add_argument("--td", help="tree decomposition (.td) for --solver tw")
    p.add_argument("--seed", type=int)
    p.add_argument("--timeout-ms", type=float, dest="timeout_ms")
    p.add_argument("--bag-limit", type=int, dest="bag_limit")
    p.add_argument("--json", action="store_true", help="emit JSON lines")


def build_parser():
    ap = argparse.ArgumentParser(prog="blockset", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-mmbs", help="minimal blocking sets of a graph")
    _common(p, "improved")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("solve-mmhs", help="minimal hitting sets of a hypergraph")
    _common(p, "improved")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("kernel", help="sunflower kernel")
    p.add_argument("--beta", type=int)
    p.add_argument("--out", help="write the reduced hypergraph here")
    p.add_argument("--json", action="store_true")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("oracle", help="exhaustive mmbs / mmhs")
    p.add_argument("--json", action="store_true")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=("random-graph", "random-hypergraph", "random-partitioned",
                                    "pendant", "complement-mmvc", "mcis-join", "updom",
                                    "updom-mmhs", "recipe"))
    p.add_argument("input", nargs="?")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--max-edge-size", type=int, default=4, dest="max_edge_size")
    p.add_argument("--sizes")
    p.add_argument("--seed", type=int)
    p.add_argument("--emit-recipe", action="store_true", dest="emit_recipe")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bench", help="solve every .gr/.hs file of a directory")
    _common(p, "improved")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("directory")

    p = sub.add_parser("check-td", help="validate a tree decomposition")
    p.add_argument("--json", action="store_true")
    p.add_argument("graph")
    p.add_argument("td_file")
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "solve-mmbs":
            return cmd_solve(args, out, "graph")
        if args.command == "solve-mmhs":
            return cmd_solve(args, out, "hypergraph")
        if args.command == "kernel":
            return cmd_kernel(args, out)
        if args.command == "oracle":
            return cmd_oracle(args, out)
        if args.command == "gen":
            return cmd_gen(args, out)
        if args.command == "bench":
            return cmd_bench(args, out)
        return cmd_check_td(args, out)
    except (InputError, CapacityError, io.FormatError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": type(exc).__name__}) + "\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
