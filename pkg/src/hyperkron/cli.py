"""Command-line front end: generation, statistics, expectations,
parameter sweeps, layered composition, the signed-motif experiment, and
benchmarks.

Options may come from flags or from a plain-text config file of
"key = value" lines ('#' comments); flags win.  Identical configs and
seeds produce byte-identical outputs regardless of thread count.
Replicate k of any multi-run subcommand derives its seed as
derive_seed(master_seed, k).
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import analytics, graph, rng, sampler
from . import io as hio
from ._accel import JIT_ENABLED
from .tensor import InitiatorTensor, ModelParams, solve_param_for_density

# Non-symmetric initiator for the signed feed-forward experiment
# ("n" then n^3 column-major entries).
FFL_TENSOR = "2,0.14,0,0.25,0.45,0.55,0.31,0,0.06"
FFL_MOTIF_PROBS = "0.5,0.25,0.125,0.125"

# Clustering sweep anchor: a, d held fixed while b, c vary.
SWEEP_A = 0.8
SWEEP_D = 0.3

# Benchmark recipes: three fixed labels, the fourth solved so expected
# hyperedges = per_node * 2^r.
BENCH_RECIPES = {
    1: ({"a": 0.05, "b": 0.3, "c": 0.4}, "d", 5.0),
    2: ({"a": 0.9, "b": 0.3, "d": 0.0}, "c", 10.0),
    3: ({"a": 0.3, "c": 0.3, "d": 0.1}, "b", 20.0),
}

_BOOL_KEYS = {"symmetric", "exact", "randomize_roles", "compare_pure"}
_INT_KEYS = {"r", "seed", "replicates", "grid", "r_min", "r_max", "recipe"}
_FLOAT_KEYS = {"sigma", "kron_sigma", "target_edges", "a", "d",
               "b_min", "b_max", "c_min", "c_max"}


class CliError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _emit(out, key, value) -> None:
    out.write(f"{key} {_fmt(value)}\n")


def _parse_floats(text: str, count: int | None = None, what: str = "value"):
    try:
        vals = [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"could not parse {what} list {text!r}") from None
    if count is not None and len(vals) != count:
        raise CliError(f"{what} needs {count} values, got {len(vals)}")
    return vals


def _parse_bool(text: str, key: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise CliError(f"config key {key}: not a boolean: {text!r}")


def _load_config(path: str) -> dict:
    values: dict = {}
    try:
        fh = open(path)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key in _BOOL_KEYS:
                values[key] = _parse_bool(val, key)
            elif key in _INT_KEYS:
                try:
                    values[key] = int(val)
                except ValueError:
                    raise CliError(f"{path}:{lineno}: {key} wants an integer") from None
            elif key in _FLOAT_KEYS:
                try:
                    values[key] = float(val)
                except ValueError:
                    raise CliError(f"{path}:{lineno}: {key} wants a number") from None
            else:
                values[key] = val
    return values


def _merge(ns: argparse.Namespace, defaults: dict) -> dict:
    cfg = dict(defaults)
    flags = {k: v for k, v in vars(ns).items() if v is not None}
    if flags.get("config"):
        file_values = _load_config(flags["config"])
        for key, val in file_values.items():
            if key in defaults:
                cfg[key] = val
    for key, val in flags.items():
        if key in defaults:
            cfg[key] = val
    return cfg


def _threads() -> int:
    raw = os.environ.get("HYPERKRON_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(f"HYPERKRON_THREADS is not an integer: {raw!r}") from None


def _resolve_tensor(cfg: dict) -> tuple[InitiatorTensor, str]:
    """Tensor from either literal form; returns it with its replay string."""
    if cfg.get("general_tensor"):
        text = cfg["general_tensor"]
        vals = _parse_floats(text, what="general tensor")
        if not vals:
            raise CliError("empty general tensor literal")
        n = int(vals[0])
        if n != vals[0] or len(vals) - 1 != n ** 3:
            raise CliError(
                f"general tensor wants n then n^3 entries, got {len(vals) - 1} for n={vals[0]:g}")
        return InitiatorTensor.from_vector(n, vals[1:]), text
    if cfg.get("tensor"):
        text = cfg["tensor"]
        a, b, c, d = _parse_floats(text, count=4, what="tensor")
        return InitiatorTensor.symmetric_2x2x2(a, b, c, d), text
    raise CliError("no tensor given (use --tensor or --general-tensor)")


def _model(cfg: dict) -> tuple[ModelParams, str]:
    tensor, literal = _resolve_tensor(cfg)
    params = ModelParams(tensor, cfg["r"], symmetric_mode=cfg["symmetric"])
    if params.symmetric_mode and not tensor.is_symmetric:
        raise CliError("tensor is not symmetric; pass --no-symmetric")
    return params, literal


def _sample(params: ModelParams, sigma: float, seed: int) -> sampler.HyperedgeList:
    if sigma > 0.0:
        noisy = sampler.make_noisy_levels(params.tensor, params.r, sigma, seed)
        return sampler.sample_hyperedges_noisy(noisy, params.symmetric_mode, seed)
    return sampler.sample_hyperedges(params, seed)


def _run_meta(cfg: dict, literal: str, params: ModelParams) -> dict:
    return {
        "tensor": literal,
        "n": params.tensor.n,
        "r": params.r,
        "seed": cfg["seed"],
        "symmetric": int(params.symmetric_mode),
        "sigma": repr(float(cfg.get("sigma", 0.0))),
        "num_nodes": params.num_nodes,
    }


def cmd_generate(cfg: dict, out=sys.stdout) -> None:
    params, literal = _model(cfg)
    hl = _sample(params, cfg["sigma"], cfg["seed"])
    meta = _run_meta(cfg, literal, params)
    _emit(out, "hyperedges", len(hl))
    fmt = cfg["format"]
    g = None
    if fmt != "hyperedges" or cfg.get("edges_out"):
        g = graph.assemble_triangles(hl)
        _emit(out, "edges", g.num_edges)
        _emit(out, "loops", g.loop_count)
    if cfg.get("out"):
        if fmt == "hyperedges":
            hio.write_hyperedges(cfg["out"], hl.triples, meta)
        elif fmt == "edges":
            hio.write_edges(cfg["out"], g.edges, {**meta, "loops": g.loop_count})
        else:
            probs = _parse_floats(cfg["motif_probs"], count=4, what="motif probability")
            sd = graph.assemble_ffl(hl, seed=cfg["seed"], motif_probs=probs)
            hio.write_signed(cfg["out"], sd.edges, sd.signs, meta)
            _emit(out, "signed_edges", sd.num_edges)
        _emit(out, "out", cfg["out"])
    if cfg.get("edges_out"):
        hio.write_edges(cfg["edges_out"], g.edges, {**meta, "loops": g.loop_count})
        _emit(out, "edges_out", cfg["edges_out"])


def _graph_from_rows(rows: np.ndarray, meta: dict) -> graph.SimpleGraph:
    num_nodes = int(meta["num_nodes"]) if "num_nodes" in meta else None
    if rows.shape[1] == 3:
        return graph.assemble_triangles(rows, num_nodes)
    if num_nodes is None:
        num_nodes = int(rows.max()) + 1 if rows.size else 0
    loops = int(np.sum(rows[:, 0] == rows[:, 1])) + int(meta.get("loops", 0))
    pairs = rows[rows[:, 0] != rows[:, 1]]
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    edges = np.unique(np.column_stack((lo, hi)), axis=0)
    return graph.SimpleGraph(num_nodes, edges, loops)


def cmd_stats(cfg: dict, out=sys.stdout) -> None:
    rows, meta = hio.read_table(cfg["path"])
    kind = meta.get("format") or (
        hio.FORMAT_HYPEREDGES if rows.shape[1] == 3 else hio.FORMAT_EDGES)
    if kind == hio.FORMAT_SIGNED:
        pairs, signs = rows[:, :2], rows[:, 2]
        sd = graph.SignedDigraph(
            num_nodes=int(pairs.max()) + 1 if pairs.size else 0,
            edges=pairs, signs=signs.astype(np.int8),
            net_signs=signs.astype(np.int64),
            type_counts=np.zeros(4, dtype=np.int64))
        coh, inc = graph.count_ffls(sd)
        _emit(out, "edges", sd.num_edges)
        _emit(out, "positive", int(np.sum(signs > 0)))
        _emit(out, "negative", int(np.sum(signs < 0)))
        _emit(out, "coherent_ffls", coh)
        _emit(out, "incoherent_ffls", inc)
        return
    g = _graph_from_rows(rows, meta)
    st = graph.graph_stats(g)
    _emit(out, "edges", st.num_edges)
    _emit(out, "nodes", st.num_active_nodes)
    _emit(out, "loops", st.loop_count)
    _emit(out, "triangles", st.triangle_count)
    _emit(out, "wedges", st.wedge_count)
    _emit(out, "global_clustering", st.global_clustering)
    _emit(out, "mean_local_clustering", st.mean_local_clustering)
    _emit(out, "largest_component", st.largest_component)
    if cfg.get("hist_out"):
        hio.write_keyvalues(cfg["hist_out"], st.degree_histogram)
        _emit(out, "hist_out", cfg["hist_out"])
    if cfg.get("stats_out"):
        hio.write_keyvalues(cfg["stats_out"], {
            "edges": st.num_edges,
            "nodes": st.num_active_nodes,
            "loops": st.loop_count,
            "triangles": st.triangle_count,
            "wedges": st.wedge_count,
            "global_clustering": repr(st.global_clustering),
            "mean_local_clustering": repr(st.mean_local_clustering),
            "largest_component": st.largest_component,
        })
        _emit(out, "stats_out", cfg["stats_out"])


def cmd_expect(cfg: dict, out=sys.stdout) -> None:
    tensor, _ = _resolve_tensor(cfg)
    gp = analytics.GeneralParams222.from_tensor(tensor)
    ee = analytics.expected_edges_approx(gp, cfg["r"])
    _emit(out, "three_edges", ee.three_edges)
    _emit(out, "two_edges", ee.two_edges)
    _emit(out, "duplicates", ee.duplicates)
    _emit(out, "expected_edges", ee.total)
    if cfg["exact"]:
        params = ModelParams(tensor, cfg["r"], symmetric_mode=cfg["symmetric"])
        _emit(out, "exact_edges",
              analytics.expected_edges_exact_small(params))


def cmd_sweep(cfg: dict, out=sys.stdout) -> None:
    grid = cfg["grid"]
    if grid < 1:
        raise CliError("grid must be at least 1")
    bs = np.linspace(cfg["b_min"], cfg["b_max"], grid)
    cs = np.linspace(cfg["c_min"], cfg["c_max"], grid)
    lines = [
        "# hyperkron sweep\n",
        f"# a {cfg['a']!r}\n# d {cfg['d']!r}\n# r {cfg['r']}\n"
        f"# seed {cfg['seed']}\n# grid {grid}\n",
        "# columns b c gcc has_wedges\n",
    ]
    defined = []
    undefined = 0
    idx = 0
    for b in bs:
        for c in cs:
            tensor = InitiatorTensor.symmetric_2x2x2(cfg["a"], float(b), float(c), cfg["d"])
            params = ModelParams(tensor, cfg["r"], symmetric_mode=True)
            hl = sampler.sample_hyperedges(params, rng.derive_seed(cfg["seed"], idx))
            g = graph.assemble_triangles(hl)
            st = graph.graph_stats(g)
            has_wedges = int(st.wedge_count > 0)
            if has_wedges:
                defined.append(st.global_clustering)
            else:
                undefined += 1
            lines.append(
                f"{float(b)!r} {float(c)!r} "
                f"{float(st.global_clustering)!r} {has_wedges}\n"
            )
            idx += 1
    if cfg.get("out"):
        hio._atomic_write(cfg["out"], lines)
        _emit(out, "out", cfg["out"])
    else:
        out.writelines(lines)
    _emit(out, "points", grid * grid)
    _emit(out, "undefined_points", undefined)
    if defined:
        _emit(out, "min_gcc", min(defined))
        _emit(out, "max_gcc", max(defined))


def _undirected_codes(pairs: np.ndarray, num_nodes: int) -> np.ndarray:
    """Distinct non-loop pairs as sorted u*N+v codes (u < v)."""
    keep = pairs[pairs[:, 0] != pairs[:, 1]]
    if keep.size == 0:
        return np.empty(0, dtype=np.int64)
    lo = keep.min(axis=1)
    hi = keep.max(axis=1)
    return np.unique(lo * num_nodes + hi)


def cmd_compose(cfg: dict, out=sys.stdout) -> None:
    params, literal = _model(cfg)
    N = params.num_nodes
    if N > (1 << 31):
        raise CliError("composition needs node count <= 2^31")
    seed = cfg["seed"]
    hl = _sample(params, cfg["sigma"], seed)
    g = graph.assemble_triangles(hl)
    codes = _undirected_codes(g.edges, N)
    _emit(out, "hyperkron_edges", codes.size)
    kron_added = 0
    if cfg.get("kron"):
        if params.tensor.n != 2:
            raise CliError("the residual layer needs a 2x2x2 tensor (same node space)")
        ka, kb, kc, kd = _parse_floats(cfg["kron"], count=4, what="kron initiator")
        mat = np.array([[ka, kb], [kc, kd]])
        levels = None
        if cfg["kron_sigma"] > 0.0:
            levels, _, _ = sampler.make_noisy_kron_levels(
                mat, params.r, cfg["kron_sigma"], seed)
        es = sampler.sample_kronecker_edges(mat, params.r, seed, levels=levels)
        kron_codes = _undirected_codes(es.pairs, N)
        new = np.setdiff1d(kron_codes, codes, assume_unique=True)
        kron_added = new.size
        codes = np.union1d(codes, new)
    _emit(out, "kron_added", kron_added)
    er_added = 0
    if cfg.get("target_edges") is not None:
        want = max(0.0, cfg["target_edges"] - codes.size)
        if want > 0:
            er = sampler.sample_erdos_renyi(N, want, seed)
            er_codes = er.pairs[:, 0] * N + er.pairs[:, 1]
            new = np.setdiff1d(er_codes, codes, assume_unique=True)
            er_added = new.size
            codes = np.union1d(codes, new)
    _emit(out, "er_added", er_added)
    _emit(out, "edges_total", codes.size)
    if cfg.get("out"):
        edges = np.column_stack((codes // N, codes % N))
        meta = _run_meta(cfg, literal, params)
        meta.update({
            "kron": cfg.get("kron") or "",
            "kron_sigma": repr(float(cfg["kron_sigma"])),
            "target_edges": repr(float(cfg["target_edges"]))
            if cfg.get("target_edges") is not None else "",
        })
        hio.write_edges(cfg["out"], edges, meta)
        _emit(out, "out", cfg["out"])


def cmd_ffl(cfg: dict, out=sys.stdout) -> None:
    params, literal = _model(cfg)
    probs = _parse_floats(cfg["motif_probs"], count=4, what="motif probability")
    reps = cfg["replicates"]
    if reps < 1:
        raise CliError("replicates must be at least 1")

    def run(k: int):
        seed_k = rng.derive_seed(cfg["seed"], k)
        hl = sampler.sample_hyperedges(params, seed_k)
        sd = graph.assemble_ffl(
            hl, seed=seed_k, motif_probs=probs,
            randomize_roles=cfg["randomize_roles"])
        coh, inc = graph.count_ffls(sd)
        pos = int(np.sum(sd.signs > 0))
        return (sd.num_edges, pos, sd.num_edges - pos, coh, inc,
                sd if k == 0 else None)

    workers = min(_threads(), reps)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(reps)))
    else:
        results = [run(k) for k in range(reps)]
    table = np.array([row[:5] for row in results], dtype=np.float64)
    _emit(out, "replicates", reps)
    _emit(out, "mean_edges", float(table[:, 0].mean()))
    _emit(out, "mean_positive", float(table[:, 1].mean()))
    _emit(out, "mean_negative", float(table[:, 2].mean()))
    _emit(out, "mean_coherent", float(table[:, 3].mean()))
    _emit(out, "mean_incoherent", float(table[:, 4].mean()))
    _emit(out, "frac_ge2_incoherent", float(np.mean(table[:, 4] >= 2)))
    if cfg.get("out"):
        sd0 = results[0][5]
        meta = _run_meta(cfg, literal, params)
        meta["motif_probs"] = cfg["motif_probs"]
        hio.write_signed(cfg["out"], sd0.edges, sd0.signs, meta)
        _emit(out, "out", cfg["out"])


def cmd_bench(cfg: dict, out=sys.stdout) -> None:
    if cfg["recipe"] not in BENCH_RECIPES:
        raise CliError(f"unknown recipe {cfg['recipe']} (choose 1, 2, or 3)")
    fixed, free, per_node = BENCH_RECIPES[cfg["recipe"]]
    if cfg["r_min"] > cfg["r_max"]:
        raise CliError("r-min exceeds r-max")

    def build(r: int) -> ModelParams:
        t = solve_param_for_density(dict(fixed), free, r, per_node)
        return ModelParams(t, r, symmetric_mode=True)

    def timed(params: ModelParams, force_pure: bool) -> tuple[int, float]:
        t0 = time.perf_counter()
        hl = sampler.sample_hyperedges(params, cfg["seed"], force_pure=force_pure)
        return len(hl), time.perf_counter() - t0

    _emit(out, "recipe", cfg["recipe"])
    _emit(out, "jit", int(JIT_ENABLED))
    timed(build(cfg["r_min"]), False)  # warm the compiled path
    columns = "r hyperedges seconds ns_per_hyperedge rate"
    if cfg["compare_pure"]:
        columns += " pure_seconds pure_ns_per_hyperedge"
    out.write(f"# columns {columns}\n")
    per_edge = []
    for r in range(cfg["r_min"], cfg["r_max"] + 1):
        params = build(r)
        count, secs = timed(params, False)
        ns = secs / count * 1e9 if count else float("inf")
        per_edge.append(ns)
        row = (f"{r} {count} {_fmt(secs)} {_fmt(ns)} "
               f"{_fmt(count / secs if secs > 0 else 0.0)}")
        if cfg["compare_pure"]:
            pcount, psecs = timed(params, True)
            pns = psecs / pcount * 1e9 if pcount else float("inf")
            row += f" {_fmt(psecs)} {_fmt(pns)}"
        out.write(row + "\n")
    finite = [x for x in per_edge if np.isfinite(x)]
    if finite and min(finite) > 0:
        _emit(out, "time_per_hyperedge_ratio", max(finite) / min(finite))


def _add_tensor_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tensor", help="symmetric 2x2x2 literal a,b,c,d")
    p.add_argument("--general-tensor", dest="general_tensor",
                   help="general literal: n then n^3 column-major entries")
    p.add_argument("--r", type=int, help="Kronecker power")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--symmetric", action=argparse.BooleanOptionalAction,
                   default=None, help="sample sorted triples only")
    p.add_argument("--sigma", type=float, help="per-level noise half-width")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperkron",
        description="Generate and analyze triangle-motif Kronecker graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    common_defaults = {"tensor": None, "general_tensor": None, "r": 10,
                       "seed": 0, "symmetric": True, "sigma": 0.0}

    p = sub.add_parser("generate", help="sample hyperedges and write them out")
    p.add_argument("--config")
    _add_tensor_options(p)
    p.add_argument("--out", help="output path")
    p.add_argument("--edges-out", dest="edges_out",
                   help="also write the assembled edge list here")
    p.add_argument("--format", choices=["hyperedges", "edges", "signed"])
    p.add_argument("--motif-probs", dest="motif_probs",
                   help="four probabilities for --format signed")
    p.set_defaults(func=cmd_generate, defaults={
        **common_defaults, "out": None, "edges_out": None,
        "format": "hyperedges", "motif_probs": FFL_MOTIF_PROBS})

    p = sub.add_parser("stats", help="statistics of a written graph file")
    p.add_argument("path")
    p.add_argument("--config")
    p.add_argument("--hist-out", dest="hist_out",
                   help="write the degree histogram here")
    p.add_argument("--stats-out", dest="stats_out",
                   help="write machine-readable stats here")
    p.set_defaults(func=cmd_stats, defaults={
        "path": None, "hist_out": None, "stats_out": None})

    p = sub.add_parser("expect", help="closed-form expected edge counts")
    p.add_argument("--config")
    _add_tensor_options(p)
    p.add_argument("--exact", action=argparse.BooleanOptionalAction, default=None,
                   help="also compute the exact small-instance expectation")
    p.set_defaults(func=cmd_expect, defaults={**common_defaults, "exact": False})

    p = sub.add_parser("sweep", help="global clustering over a b,c grid")
    p.add_argument("--config")
    p.add_argument("--a", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid", type=int, help="grid points per axis")
    p.add_argument("--b-min", dest="b_min", type=float)
    p.add_argument("--b-max", dest="b_max", type=float)
    p.add_argument("--c-min", dest="c_min", type=float)
    p.add_argument("--c-max", dest="c_max", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep, defaults={
        "a": SWEEP_A, "d": SWEEP_D, "r": 10, "seed": 0, "grid": 15,
        "b_min": 0.05, "b_max": 0.5, "c_min": 0.05, "c_max": 0.5,
        "out": None})

    p = sub.add_parser(
        "compose",
        help="layered graph: hyperedge triangles + residual + uniform top-up")
    p.add_argument("--config")
    _add_tensor_options(p)
    p.add_argument("--kron", help="2x2 residual initiator a,b,c,d")
    p.add_argument("--kron-sigma", dest="kron_sigma", type=float)
    p.add_argument("--target-edges", dest="target_edges", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose, defaults={
        **common_defaults, "kron": None, "kron_sigma": 0.0,
        "target_edges": None, "out": None})

    p = sub.add_parser("ffl", help="signed feed-forward motif experiment")
    p.add_argument("--config")
    _add_tensor_options(p)
    p.add_argument("--replicates", type=int)
    p.add_argument("--motif-probs", dest="motif_probs")
    p.add_argument("--randomize-roles", dest="randomize_roles",
                   action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--out", help="write replicate 0's signed edges here")
    p.set_defaults(func=cmd_ffl, defaults={
        **common_defaults, "general_tensor": FFL_TENSOR, "r": 7,
        "symmetric": False, "replicates": 1, "motif_probs": FFL_MOTIF_PROBS,
        "randomize_roles": False, "out": None})

    p = sub.add_parser("bench", help="generation throughput table")
    p.add_argument("--config")
    p.add_argument("--recipe", type=int)
    p.add_argument("--r-min", dest="r_min", type=int)
    p.add_argument("--r-max", dest="r_max", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--compare-pure", dest="compare_pure",
                   action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(func=cmd_bench, defaults={
        "recipe": 1, "r_min": 12, "r_max": 18, "seed": 0,
        "compare_pure": False})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _merge(ns, ns.defaults)
        # resolve the stream at call time so redirection of sys.stdout
        # after import is honored
        ns.func(cfg, sys.stdout)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
