"""Command line entry point: run verification suites and emit reports.

    newspace finite --p 2 --L 4 --pivot 2 --exhaustive
    newspace tree --q 2 --indices 0,1,2,3 --trials 100000 --seed 7
    newspace kirillov --q 3 --alpha 0.8,0.6
    newspace dims --k 12 --qmax 1000 --csv
    newspace all --seed 7 --json

Exit codes: 0 when every case passes, 1 when any case fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import finite_model as fm
from . import kirillov as kv
from . import tree_walks as tw
from .classical import arith, petersson, traces
from .segments import Segment, composition_hypothesis, intersect

SCHEMA = "1"
SUITES = ("finite", "tree", "kirillov", "dims", "trace", "petersson", "all")
OUTPUTS = ("human", "json", "csv")
DEFAULT_SEED = 7


class UsageError(ValueError):
    pass


# allowed parameter keys per suite; anything else is a usage error
PARAM_KEYS = {
    "finite": {"p", "L", "pivot", "exhaustive", "a", "b", "theorem", "products", "negative"},
    "tree": {"q", "indices", "trials"},
    "kirillov": {"q", "alpha", "a1", "sweep", "tol"},
    "dims": {"k", "qmax"},
    "trace": {"k", "q", "n"},
    "petersson": {"k", "q", "m", "n", "tol"},
    "all": set(),
}


@dataclass
class SuiteConfig:
    suite: str
    params: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output: str = "human"
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.output not in OUTPUTS:
            raise UsageError(f"unknown output format {self.output!r}")
        unknown = set(self.params) - PARAM_KEYS[self.suite]
        if unknown:
            raise UsageError(f"unknown parameter(s) for {self.suite}: {', '.join(sorted(unknown))}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")


@dataclass
class CaseReport:
    case_id: str
    inputs: dict
    status: str
    residual: object = None
    runtime_ms: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self, timing=False):
        out = {"case_id": self.case_id, "inputs": self.inputs, "status": self.status, "residual": _jsonable(self.residual)}
        out.update({k: _jsonable(v) for k, v in self.details.items()})
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Segment):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def _magnitude(r):
    if r is None:
        return 0.0
    if isinstance(r, Fraction):
        return abs(r)
    return abs(float(r))


# --------------------------------------------------------------------------
# individual cases; each returns (status, residual, details)


def case_lemma(p, L, pivot, a, b):
    a, b = Segment.parse(a), Segment.parse(b)
    r = fm.check_lemma_composition(fm.ModelParams(p, L), pivot, a, b, require_hypothesis=False)
    status = r["status"]
    if not r["hypothesis"]:
        # outside the hypothesis the identity is not asserted; report only
        status = "skip"
    res = r["residual"]
    return status, res, {
        "p": p,
        "L": L,
        "pivot": pivot,
        "segments": [str(a), str(b)],
        "residual_numerator": res.numerator,
        "residual_denominator": res.denominator,
        "hypothesis": r["hypothesis"],
    }


def case_negative(p, L, pivot, ell):
    ell = Segment.parse(ell)
    prods = fm.star_kill_residuals(fm.ModelParams(p, L), pivot, ell)
    witness = None
    for s, op in sorted(prods.items()):
        hit = op.nonzero_entry()
        if hit is not None:
            witness = {"subsegment": str(s), "row": hit[0], "col": hit[1], "value": hit[2]}
            break
    res = max(op.max_abs() for op in prods.values())
    # the control passes when the identity visibly fails
    return ("pass" if witness else "fail"), res, {"p": p, "L": L, "pivot": pivot, "segments": [str(ell)], "witness": witness}


def case_theorem(p, L, pivot, ell):
    ell = Segment.parse(ell)
    r = fm.check_theorem_main(fm.ModelParams(p, L), pivot, ell)
    keep = ("idempotent", "kills_flat", "rank_ok", "rank_star", "rank_full", "rank_flat", "dim")
    return r["status"], r["residual"], {"p": p, "L": L, "pivot": pivot, "segments": [str(ell)], **{k: r[k] for k in keep}}


def case_product(p, L, h1, h2, expected):
    e = [fm.EichlerPair(*x) for x in (h1, h2, expected)]
    r = fm.check_product_decomposition(fm.ModelParams(p, L), *e)
    return r["status"], None, {k: v for k, v in r.items() if k != "status"}


def tree_case_id(q, idx):
    return f"tree:q={q}:indices={','.join(map(str, idx))}"


def case_tree(q, indices, trials, seed):
    r = tw.verify_goal_paths(q, *indices)
    atoms = r["rhs"].encoded(r["params"], r["fixed"])
    details = {
        "atoms": {str(k): f"{v.numerator}/{v.denominator}" for k, v in sorted(atoms.items())},
        "exact_status": r["status"],
    }
    status = r["status"]
    if trials:
        ss = tw.case_seed(seed, tree_case_id(q, indices))
        freqs = tw.sample_two_stage(ss, q, *indices, trials)
        mc = tw.monte_carlo_check(freqs, atoms, trials)
        details["monte_carlo"] = {"trials": trials, **{k: v for k, v in mc.items()}}
        if mc["status"] != "pass":
            status = "fail"
    return status, r["max_discrepancy"], details


def case_kirillov(q, alpha=None, a1=None, tol=1e-10):
    if a1 is not None:
        seq = kv.exact_coeffs(Fraction(a1), q, 12)
        label = {"a1": str(Fraction(a1))}
    else:
        s = kv.SatakeParam(complex(*alpha), q)
        seq = kv.spherical_coeffs(s, 12)
        label = {"alpha": [s.alpha.real, s.alpha.imag]}
    r = kv.verify_c0_case(seq, tol)
    b0, b1 = r["b0"], r["b1"]
    lin1, lin2 = kv.linear_residuals(seq, b0, b1)
    one_sided = kv.recurrence_check(seq, b0, b1, range(-1, 9))
    two_sided = kv.recurrence_check(seq, b0, b1, range(-5, 6))
    checks = dict(r["checks"], linear_1=lin1, linear_2=lin2, recurrence=one_sided)
    if seq.exact:
        ok = all(v == 0 for v in checks.values())
    else:
        eig, _ = kv.gram_min_eigenvalue(seq)
        checks["gram_min_eigenvalue"] = eig
        ok = r["status"] == "pass" and max(lin1, lin2, one_sided) <= 1e-12 and eig >= -1e-10
    worst = max(abs(v) for k, v in checks.items() if k != "gram_min_eigenvalue")
    details = dict(label, checks={k: _jsonable(float(v) if not seq.exact else v) for k, v in checks.items()})
    details["two_sided_recurrence"] = _jsonable(two_sided if seq.exact else float(two_sided))
    return ("pass" if ok else "fail"), worst, details


def case_diagonal(c, ambient):
    model = kv.DiagonalModel(c, Segment.parse(ambient))
    bad = []
    for ell in model.ambient.subsegments():
        if ell.card >= 3:
            r = kv.star_diagonal(model, ell, compositions=False)
            if not (r["projector"] and r["matches_expected"]):
                bad.append(str(ell))
    checked, failures = kv.diagonal_compositions(model)
    status = "pass" if not bad and not failures else "fail"
    return status, len(bad) + len(failures), {"compositions_checked": checked, "bad_segments": bad}


def case_dims(k, q):
    new = traces.trace_hecke_new(k, q, 1)
    oracle = traces.dim_new_atkin_lehner(k, q)
    ok = new == oracle and new >= 0
    return ("pass" if ok else "fail"), abs(new - oracle), {"k": k, "q": q, "n": 1, "value": new, "oracle": oracle}


def case_trace(k, q, n):
    val = traces.trace_hecke_new(k, q, n)
    ok = val.denominator == 1
    details = {"k": k, "q": q, "n": n, "value": val}
    if n == 1:
        oracle = traces.dim_new_atkin_lehner(k, q)
        details["oracle"] = oracle
        ok = ok and val == oracle and val >= 0
    return ("pass" if ok else "fail"), None, details


def case_petersson(k, q, m, n, tol):
    v = petersson.petersson_delta_new(k, q, m, n, tol)
    w = petersson.petersson_delta_new(k, q, n, m, tol)
    allowance = v.tail_bound + w.tail_bound + 1e-9
    ok = abs(v.value - w.value) <= allowance
    details = {"value": v.value, "tail_bound": v.tail_bound, "cutoff": v.cutoff, "dim_new": traces.dim_new(k, q)}
    residual = abs(v.value - w.value)
    if details["dim_new"] == 0:
        details["vanishing"] = abs(v.value) <= v.tail_bound + 1e-6
        ok = ok and details["vanishing"]
        residual = abs(v.value)
    return ("pass" if ok else "fail"), residual, details


CASES = {
    "lemma": case_lemma,
    "negative": case_negative,
    "theorem": case_theorem,
    "product": case_product,
    "tree": case_tree,
    "kirillov": case_kirillov,
    "diagonal": case_diagonal,
    "dims": case_dims,
    "trace": case_trace,
    "petersson": case_petersson,
}


def run_case(job):
    case_id, kind, inputs = job
    t0 = time.perf_counter()
    try:
        status, residual, details = CASES[kind](**inputs)
    except (fm.SizeError, petersson.BudgetError, kv.DegenerateError) as exc:
        status, residual, details = "fail", None, {"error": str(exc)}
    ms = int(round(1000 * (time.perf_counter() - t0)))
    shown = {k: v for k, v in inputs.items() if k != "seed"}
    return CaseReport(case_id, _jsonable(shown), status, residual, ms, details)


# --------------------------------------------------------------------------
# case grids


def _ints(text):
    return tuple(int(x) for x in str(text).split(","))


def finite_cases(params):
    p, L = int(params.get("p", 2)), int(params.get("L", 3))
    if not fm.is_prime(p):
        raise UsageError(f"p = {p} is not prime")
    ambient = Segment(0, L)
    preferred = params.get("pivot")
    preferred = None if preferred is None else int(preferred)
    out = []

    def lemma(a, b):
        pivot = fm.default_pivot(a, b, preferred)
        cid = f"finite:lemma:p={p}:L={L}:pivot={pivot}:{a}:{b}"
        out.append((cid, "lemma", {"p": p, "L": L, "pivot": pivot, "a": str(a), "b": str(b)}))

    if params.get("exhaustive"):
        for a in ambient.subsegments():
            for b in ambient.subsegments():
                if composition_hypothesis(a, b):
                    lemma(a, b)
    if params.get("a") and params.get("b"):
        a, b = Segment.parse(params["a"]), Segment.parse(params["b"])
        if intersect(a, b) is None:
            raise UsageError(f"{a} and {b} are disjoint")
        lemma(a, b)
    if params.get("theorem"):
        ell = Segment.parse(params["theorem"])
        pivot = preferred if preferred is not None else ell.lo + 1
        out.append((f"finite:theorem:p={p}:L={L}:pivot={pivot}:{ell}", "theorem", {"p": p, "L": L, "pivot": pivot, "ell": str(ell)}))
    if params.get("negative"):
        ell = Segment.parse(params["negative"])
        pivot = preferred if preferred is not None else ell.lo + 1
        out.append((f"finite:negative:p={p}:L={L}:pivot={pivot}:{ell}", "negative", {"p": p, "L": L, "pivot": pivot, "ell": str(ell)}))
    if params.get("products"):
        for h1, h2, ex in fm.product_cases(L):
            cid = f"finite:product:p={p}:L={L}:{h1}:{h2}"
            out.append((cid, "product", {"p": p, "L": L, "h1": (h1.i, h1.j), "h2": (h2.i, h2.j), "expected": (ex.i, ex.j)}))
    if not out:
        raise UsageError("finite: nothing to run (give --exhaustive, --a/--b, --theorem, --negative or --products)")
    return out


TREE_TUPLES = ((0, 1, 2, 3), (0, 2, 3, 5), (0, 1, 3, 5))


def tree_cases(params, seed):
    qs = [int(params["q"])] if "q" in params else [2, 3]
    tuples = [_ints(params["indices"])] if "indices" in params else list(TREE_TUPLES)
    trials = int(params.get("trials", 0))
    out = []
    for q in qs:
        for idx in tuples:
            if len(idx) != 4:
                raise UsageError("--indices takes m,m',n,n'")
            out.append((tree_case_id(q, idx), "tree", {"q": q, "indices": idx, "trials": trials, "seed": seed}))
    return out


COMPLEMENTARY = ((2, 1.2), (2, 0.8), (3, 1.5), (3, 0.7), (4, 1.9))


def kirillov_sweep(count=25):
    """20 tempered alpha = e^{2 pi i j / 41} (q cycling through 2, 3, 4), then
    5 complementary real alpha, then the remaining tempered (j, q) pairs."""
    first = [((2, 3, 4)[(j - 1) % 3], j) for j in range(1, 21)]
    rest = [(q, j) for j in range(1, 21) for q in (2, 3, 4) if (q, j) not in first]
    tempered = lambda q, j: (q, cmath.exp(2j * math.pi * j / 41))
    out = [tempered(*x) for x in first] + [(q, complex(a)) for q, a in COMPLEMENTARY] + [tempered(*x) for x in rest]
    return out[:count]


def kirillov_cases(params):
    tol = float(params.get("tol", 1e-10))
    out = []
    if "a1" in params:
        q = int(params.get("q", 4))
        out.append((f"kirillov:exact:q={q}:a1={Fraction(params['a1'])}", "kirillov", {"q": q, "a1": str(Fraction(params["a1"])), "tol": tol}))
    if "alpha" in params:
        q = int(params.get("q", 2))
        re_, im_ = (float(x) for x in str(params["alpha"]).split(","))
        out.append((f"kirillov:q={q}:alpha={re_!r},{im_!r}", "kirillov", {"q": q, "alpha": (re_, im_), "tol": tol}))
    if "sweep" in params or not out:
        for i, (q, a) in enumerate(kirillov_sweep(int(params.get("sweep", 25)))):
            out.append((f"kirillov:sweep:{i:03d}:q={q}", "kirillov", {"q": q, "alpha": (a.real, a.imag), "tol": tol}))
    return out


def diagonal_cases():
    return [(f"kirillov:diagonal:c={c}:0..8", "diagonal", {"c": c, "ambient": "0..8"}) for c in (2, 3, 4)]


def dims_cases(params):
    qmax = int(params.get("qmax", 1000))
    ks = [int(params["k"])] if "k" in params else list(range(4, 17, 2))
    out = []
    for k in ks:
        traces.LevelWeight(k, 1)
        for q in arith.cubefull_up_to(qmax):
            out.append((f"dims:k={k:02d}:q={q:05d}", "dims", {"k": k, "q": q}))
    return out


def trace_cases(params):
    try:
        k, q, n = int(params["k"]), int(params["q"]), int(params.get("n", 1))
    except KeyError as exc:
        raise UsageError(f"trace-new needs --{exc.args[0]}") from None
    if not arith.is_cubefull(q):
        raise UsageError(f"{q} is not cubefull")
    if math.gcd(n, q) != 1:
        raise UsageError(f"gcd(n, q) = {math.gcd(n, q)} != 1")
    return [(f"trace:k={k}:q={q}:n={n}", "trace", {"k": k, "q": q, "n": n})]


def petersson_cases(params):
    try:
        k, q = int(params["k"]), int(params["q"])
        m, n = int(params["m"]), int(params["n"])
    except KeyError as exc:
        raise UsageError(f"petersson-new needs --{exc.args[0]}") from None
    if not arith.is_cubefull(q):
        raise UsageError(f"{q} is not cubefull")
    tol = float(params.get("tol", 1e-8))
    return [(f"petersson:k={k}:q={q}:m={m}:n={n}", "petersson", {"k": k, "q": q, "m": m, "n": n, "tol": tol})]


def all_cases(seed):
    out = finite_cases({"p": 2, "L": 3, "exhaustive": True, "theorem": "0..3", "pivot": 1, "products": True})
    out += finite_cases({"p": 2, "L": 2, "negative": "0..2", "pivot": 1})
    out += tree_cases({"trials": 100_000}, seed)
    out += kirillov_cases({"sweep": 25})
    out += kirillov_cases({"a1": "1/3", "q": 4})
    out += diagonal_cases()
    out += dims_cases({"qmax": 1000})
    out += trace_cases({"k": 12, "q": 8, "n": 3})
    out += petersson_cases({"k": 8, "q": 1, "m": 2, "n": 3})
    out += petersson_cases({"k": 6, "q": 8, "m": 3, "n": 5})
    return out


def build_cases(config: SuiteConfig):
    s, p = config.suite, config.params
    if s == "finite":
        return finite_cases(p)
    if s == "tree":
        return tree_cases(p, config.seed)
    if s == "kirillov":
        cases = kirillov_cases(p)
        return cases + (diagonal_cases() if not p else [])
    if s == "dims":
        return dims_cases(p)
    if s == "trace":
        return trace_cases(p)
    if s == "petersson":
        return petersson_cases(p)
    return all_cases(config.seed)


def run_suite(config: SuiteConfig):
    """Run every case of the configured grid; reports come back sorted by case_id."""
    cases = build_cases(config)
    ids = [c[0] for c in cases]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate case ids")
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(run_case, cases))
    else:
        reports = [run_case(c) for c in cases]
    reports.sort(key=lambda r: r.case_id)
    counts = {"pass": 0, "fail": 0, "skip": 0}
    worst = {}
    for r in reports:
        counts[r.status] += 1
        kind = r.case_id.split(":")[0]
        mag = _magnitude(r.residual)
        if kind not in worst or mag > _magnitude(worst[kind]):
            worst[kind] = r.residual if r.residual is not None else 0
    summary = {"counts": counts, "max_residual": worst, "total": len(reports)}
    return reports, summary


# --------------------------------------------------------------------------
# output


def render(config, reports, summary, timing=False):
    if config.output == "json":
        doc = {
            "schema": SCHEMA,
            "suite": config.suite,
            "seed": config.seed,
            "params": _jsonable(config.params),
            "cases": [r.to_json(timing) for r in reports],
            "summary": _jsonable(summary),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config.output == "csv":
        buf = io.StringIO()
        if config.suite in ("dims", "trace"):
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["k", "q", "n", "value"])
            for r in reports:
                d = r.details
                w.writerow([d["k"], d["q"], d["n"], str(d["value"])])
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["case_id", "status", "residual"])
            for r in reports:
                w.writerow([r.case_id, r.status, _jsonable(r.residual)])
        return buf.getvalue()
    lines = []
    for r in reports:
        res = "" if r.residual is None else f"  residual={_jsonable(r.residual)}"
        lines.append(f"{r.status.upper():4}  {r.case_id}{res}  ({r.runtime_ms} ms)")
    c = summary["counts"]
    lines.append(f"{summary['total']} cases: {c['pass']} pass, {c['fail']} fail, {c['skip']} skip")
    return "\n".join(lines) + "\n"


def cache_dir() -> Path:
    return Path(os.environ.get("NEWSPACE_CACHE_DIR", Path.home() / ".cache" / "newspace"))


def cache_group(params: fm.ModelParams, path=None) -> Path:
    path = Path(path) if path else cache_dir() / f"group_p{params.p}_L{params.L}.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    return fm.save_group(params, path)


def load_group(path, params=None):
    return fm.load_group(path, params)


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _common(sp):
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output", action="store_const", const="json")
    g.add_argument("--csv", dest="output", action="store_const", const="csv")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include runtime_ms in JSON (breaks byte-identical output)")
    sp.set_defaults(output="human")


def build_parser():
    ap = _Parser(prog="newspace", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("finite", aliases=["finite-check"], help="finite-group model checks")
    sp.add_argument("--p", type=int)
    sp.add_argument("--L", type=int)
    sp.add_argument("--pivot", type=int)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--theorem", metavar="SEGMENT")
    sp.add_argument("--negative", metavar="SEGMENT")
    sp.add_argument("--products", action="store_true")
    _common(sp)

    sp = sub.add_parser("tree", aliases=["tree-check"], help="tree-walk identities")
    sp.add_argument("--q", type=int)
    sp.add_argument("--indices")
    sp.add_argument("--trials", type=int)
    _common(sp)

    sp = sub.add_parser("kirillov", aliases=["kirillov-check"], help="Gram and diagonal model checks")
    sp.add_argument("--q", type=int)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--alpha", metavar="RE,IM")
    g.add_argument("--a1", metavar="RAT")
    sp.add_argument("--sweep", type=int)
    sp.add_argument("--tol", type=float)
    _common(sp)

    sp = sub.add_parser("dims", help="newspace dimensions for cubefull levels")
    sp.add_argument("--k", type=int)
    sp.add_argument("--qmax", type=int)
    _common(sp)

    sp = sub.add_parser("trace-new", aliases=["trace"], help="trace of T_n on a cubefull newspace")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    _common(sp)

    sp = sub.add_parser("petersson-new", aliases=["petersson"], help="Petersson sum over newforms")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float)
    _common(sp)

    sp = sub.add_parser("all", help="default grid of every suite")
    _common(sp)

    sp = sub.add_parser("cache-group", help="write (or verify) a group cache file")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--path")
    sp.add_argument("--load", action="store_true", help="load and verify instead of writing")
    return ap


SUITE_OF = {
    "finite": "finite",
    "finite-check": "finite",
    "tree": "tree",
    "tree-check": "tree",
    "kirillov": "kirillov",
    "kirillov-check": "kirillov",
    "dims": "dims",
    "trace-new": "trace",
    "trace": "trace",
    "petersson-new": "petersson",
    "petersson": "petersson",
    "all": "all",
}

_NOT_PARAMS = {"command", "output", "seed", "jobs", "timing"}


def config_from_args(args) -> SuiteConfig:
    params = {k: v for k, v in vars(args).items() if k not in _NOT_PARAMS and v not in (None, False)}
    return SuiteConfig(SUITE_OF[args.command], params, args.seed, args.output, max(1, args.jobs))


def _cache_command(args):
    params = fm.ModelParams(args.p, args.L)
    path = Path(args.path) if args.path else cache_dir() / f"group_p{args.p}_L{args.L}.txt"
    if args.load:
        elems = load_group(path, params)
        print(f"{path}: {len(elems)} elements, header and checksum ok")
    else:
        cache_group(params, path)
        print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "cache-group":
            return _cache_command(args)
        config = config_from_args(args)
        reports, summary = run_suite(config)
    except (UsageError, fm.SizeError, traces.WeightError, traces.LevelError) as exc:
        print(f"newspace: error: {exc}", file=sys.stderr)
        return 2
    except (fm.GroupCacheError, OSError) as exc:
        print(f"newspace: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(config, reports, summary, timing=args.timing))
    return 1 if summary["counts"]["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
