"""Command-line surface: generation, extraction, oracles, experiments, verification.

Exit codes: 0 success or verified, 2 verified-failure outcome (failure
certificate, refuted verification, no witness), 1 usage or I/O error.
Randomized subcommands always echo the seed in use on stderr so every run
can be replayed; configuration precedence is flags > DEGB_* environment
variables > built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import C4LabError, KernelFailure
from .graphio import (
    bipartite_sidecar,
    read_edgelist,
    read_graph6,
    read_hypergraph,
    read_sparse6,
    write_edgelist,
    write_graph6,
    write_sparse6,
)
from .graphs import Graph, gen_gnp, gen_lopsided, projective_plane_incidence
from .hypergraphs import Hypergraph, f_search, furedi_kernel, verify_kernel
from .lowerbounds import check_lb_conditions, lb_experiment
from .oracles import best_c4free_induced, max_independent_set
from .pipeline import (
    ExtractionCertificate,
    PipelineParams,
    extract_induced_c4free,
    verify_certificate,
)
from .subdivisions import (
    SubdivisionWitness,
    find_subdivision,
    induced_subdivision,
    verify_subdivision,
)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"DEGB_{name}")
    return int(raw) if raw else default


def _echo_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _resolve_seed(value) -> int:
    return int(value) if value is not None else time.time_ns() % (2 ** 63)


def _read_text(path: str) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(path: str, fmt: str) -> Graph:
    text = _read_text(path)
    if fmt == "auto":
        stripped = text.lstrip()
        if stripped.startswith(":") or stripped.startswith(">>sparse6<<"):
            fmt = "sparse6"
        elif any(ln.strip() and (ln.lstrip()[0].isdigit() or ln.startswith("#"))
                 and " " in ln for ln in text.splitlines()):
            fmt = "edgelist"
        else:
            fmt = "graph6"
    if fmt == "graph6":
        return read_graph6(text)
    if fmt == "sparse6":
        return read_sparse6(text)
    if fmt == "edgelist":
        return read_edgelist(text)
    raise C4LabError(f"unknown format {fmt}")


def _params_from(args) -> PipelineParams:
    return PipelineParams(
        retries=args.retries, attempts=args.attempts,
        oracle_limit=args.oracle_limit, threads=args.threads)


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", default="-", help="graph path or - for stdin")
    p.add_argument("--format", default="auto",
                   choices=["auto", "graph6", "sparse6", "edgelist"])


def _add_pipeline_knobs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--retries", type=int, default=_env_int("RETRIES", 100))
    p.add_argument("--attempts", type=int, default=_env_int("ATTEMPTS", 8))
    p.add_argument("--oracle-limit", type=int,
                   default=_env_int("ORACLE_LIMIT", 22), dest="oracle_limit")
    p.add_argument("--threads", type=int, default=_env_int("THREADS", 1))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="c4lab")
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="seeded graph generators")
    g.add_argument("--kind", required=True, choices=["gnp", "plane", "lopsided"])
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--q", type=int)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--s", type=int, default=2)
    g.add_argument("--seed", type=int)
    g.add_argument("--out", default="-")
    g.add_argument("--sidecar", help="write bipartite side info to this path")
    g.add_argument("--gen-format", default="graph6",
                   choices=["graph6", "sparse6", "edgelist"])

    e = sub.add_parser("extract", help="induced C4-free extraction certificate")
    _add_graph_input(e)
    e.add_argument("--s", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--seed", type=int)
    _add_pipeline_knobs(e)
    e.add_argument("--out", default="-", help="certificate JSON destination")

    o = sub.add_parser("oracle", help="exhaustive small-instance baselines")
    _add_graph_input(o)
    o.add_argument("--task", default="c4free", choices=["c4free", "mis"])
    o.add_argument("--limit", type=int, default=_env_int("ORACLE_LIMIT", 22))

    kcmd = sub.add_parser("kernel", help="partite kernel of a uniform hypergraph")
    kcmd.add_argument("--input", default="-")
    kcmd.add_argument("--s", type=int, required=True)
    kcmd.add_argument("--t", type=int, required=True)
    kcmd.add_argument("--seed", type=int)
    kcmd.add_argument("--retries", type=int, default=_env_int("RETRIES", 100))

    f = sub.add_parser("ftable", help="exhaustive pair-forcing threshold search")
    f.add_argument("--ell", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--nmax", type=int, required=True)
    f.add_argument("--out", help="persist the result row as JSON")

    lb = sub.add_parser("lowerbound", help="random-graph lower-bound experiments")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--p", type=float, required=True)
    lb.add_argument("--s", type=int, required=True)
    lb.add_argument("--k", type=int, required=True)
    lb.add_argument("--trials", type=int, default=100)
    lb.add_argument("--seed", type=int)
    lb.add_argument("--check-only", action="store_true", dest="check_only")
    lb.add_argument("--csv", action="store_true")

    sd = sub.add_parser("subdivide", help="induced clique-subdivision search")
    _add_graph_input(sd)
    sd.add_argument("--k", type=int, required=True)
    sd.add_argument("--s", type=int, default=2)
    sd.add_argument("--seed", type=int)
    sd.add_argument("--plain", action="store_true",
                    help="plain (not necessarily induced) search")
    _add_pipeline_knobs(sd)

    v = sub.add_parser("verify", help="re-verify a certificate or witness")
    _add_graph_input(v)
    v.add_argument("--cert", required=True)
    v.add_argument("--subdivision", action="store_true",
                   help="treat the certificate as a subdivision witness")

    return top


def _cmd_gen(args) -> int:
    seed = _resolve_seed(args.seed)
    _echo_seed(seed)
    sidecar_text = None
    if args.kind == "gnp":
        if args.n is None or args.p is None:
            raise C4LabError("gnp needs --n and --p")
        graph = gen_gnp(args.n, args.p, seed)
    elif args.kind == "plane":
        if args.q is None:
            raise C4LabError("plane needs --q")
        bg = projective_plane_incidence(args.q)
        graph = bg.underlying
        sidecar_text = bipartite_sidecar(bg)
    else:
        if None in (args.a, args.b, args.r):
            raise C4LabError("lopsided needs --a, --b, --r")
        bg = gen_lopsided(args.a, args.b, args.r, args.s, seed)
        graph = bg.underlying
        sidecar_text = bipartite_sidecar(bg)
    if args.gen_format == "graph6":
        payload = write_graph6(graph) + "\n"
    elif args.gen_format == "sparse6":
        payload = write_sparse6(graph) + "\n"
    else:
        payload = write_edgelist(graph)
    _write_text(args.out, payload)
    if args.sidecar and sidecar_text:
        _write_text(args.sidecar, sidecar_text + "\n")
    return 0


def _cmd_extract(args) -> int:
    g = _load_graph(args.input, args.format)
    seed = _resolve_seed(args.seed)
    _echo_seed(seed)
    cert = extract_induced_c4free(g, args.s, args.k, _params_from(args), seed=seed)
    _write_text(args.out, cert.to_json())
    return 2 if cert.mode == "failure" else 0


def _cmd_oracle(args) -> int:
    g = _load_graph(args.input, args.format)
    if args.task == "c4free":
        witness, value = best_c4free_induced(g, limit=args.limit)
        payload = {"task": "c4free", "witness": sorted(witness),
                   "value": str(value)}
    else:
        witness = max_independent_set(g, limit=args.limit)
        payload = {"task": "mis", "witness": sorted(witness),
                   "value": len(witness)}
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_kernel(args) -> int:
    n, edges = read_hypergraph(_read_text(args.input))
    h = Hypergraph(n, edges)
    seed = _resolve_seed(args.seed)
    _echo_seed(seed)
    try:
        kern = furedi_kernel(h, s=args.s, t=args.t, seed=seed,
                             retries=args.retries)
    except KernelFailure as exc:
        print(json.dumps({"ok": False, "error": str(exc)}))
        return 2
    report = verify_kernel(h, kern)
    payload = {
        "ok": report.ok,
        "surviving_edges": list(kern.surviving_edges),
        "coloring": list(kern.coloring),
        "trace": sorted(sorted(e) for e in kern.trace.edges),
        "history": list(kern.history),
        "multiplicity": kern.multiplicity,
        "s_bound": kern.s_bound,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0 if report.ok else 2


def _cmd_ftable(args) -> int:
    res = f_search(args.ell, args.k, args.nmax)
    if res.upper is not None:
        print(f"F({args.ell},{args.k}) = {res.upper}")
    else:
        print(f"F({args.ell},{args.k}) >= {res.lower} (not settled up to n={args.nmax})")
    if args.out:
        _write_text(args.out, res.to_json() + "\n")
    return 0


def _cmd_lowerbound(args) -> int:
    if args.check_only:
        rep = check_lb_conditions(args.n, args.p, args.s, args.k)
        print(json.dumps(rep.as_dict(), sort_keys=True))
        return 0
    seed = _resolve_seed(args.seed)
    _echo_seed(seed)
    rep = lb_experiment(args.n, args.p, args.s, args.k, args.trials, seed)
    if args.csv:
        print(rep.CSV_HEADER)
        print(rep.csv_row())
    else:
        print(json.dumps(rep.as_dict(), sort_keys=True))
    return 0


def _cmd_subdivide(args) -> int:
    g = _load_graph(args.input, args.format)
    seed = _resolve_seed(args.seed)
    _echo_seed(seed)
    if args.plain:
        w = find_subdivision(g, args.k, seed=seed)
    else:
        w = induced_subdivision(g, args.s, args.k, seed=seed,
                                params=_params_from(args))
    if w is None:
        print(json.dumps({"found": False}))
        return 2
    print(w.to_json())
    return 0


def _cmd_verify(args) -> int:
    g = _load_graph(args.input, args.format)
    text = _read_text(args.cert)
    if args.subdivision:
        ok = verify_subdivision(g, SubdivisionWitness.from_json(text))
    else:
        ok = verify_certificate(g, ExtractionCertificate.from_json(text))
    print("verified" if ok else "REJECTED")
    return 0 if ok else 2


_HANDLERS = {
    "gen": _cmd_gen,
    "extract": _cmd_extract,
    "oracle": _cmd_oracle,
    "kernel": _cmd_kernel,
    "ftable": _cmd_ftable,
    "lowerbound": _cmd_lowerbound,
    "subdivide": _cmd_subdivide,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return _HANDLERS[args.command](args)
    except (C4LabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
