"""Command-line front end: ``fhl dims | spectrum | cycles | verify``.

Every command prints deterministic JSON by default (sorted keys, rationals as
``"p/q"``).  Exit status is 0 on success, 1 when a verification fails and 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import cohomology, filtering, laplacian, partitions, stablecycles
from .liealg import AlgebraSpec, Chain, delta

SUITES = ("identities", "sylvester", "basis-counts", "spectrum", "stable", "trace", "all")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# arguments


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=("witt", "loop"))
    common.add_argument("--k", type=int)
    common.add_argument("--degree", type=int)
    common.add_argument("--max-degree", type=int)
    common.add_argument("--dim", type=int)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--out")
    common.add_argument("--jobs", type=int)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="fhl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("dims", parents=[common], help="dimensions of chains and homology per slice")
    sp = sub.add_parser("spectrum", parents=[common], help="Laplacian eigenvalues per degree")
    sp.add_argument("--brute", action="store_true",
                    help="allow any k and family through characteristic polynomials")
    sp.add_argument("--vectors", action="store_true", help="include eigenvectors (Witt, k = 1)")
    sub.add_parser("cycles", parents=[common], help="explicit homology cycles for main partitions")
    vp = sub.add_parser("verify", parents=[common], help="run a property suite")
    vp.add_argument("--suite", required=True)
    vp.add_argument("--trunc", type=int, default=60)
    return p


def _jobs(cfg) -> int:
    if cfg.jobs is not None:
        j = cfg.jobs
    elif os.environ.get("FHL_JOBS"):
        try:
            j = int(os.environ["FHL_JOBS"])
        except ValueError:
            raise UsageError("FHL_JOBS must be an integer") from None
    else:
        j = os.cpu_count() or 1
    if j < 1:
        raise UsageError("--jobs must be positive")
    return j


def _degrees(cfg, default_max: int | None = None, start: int = 1) -> list:
    if cfg.degree is not None and cfg.max_degree is not None:
        raise UsageError("give --degree or --max-degree, not both")
    if cfg.degree is not None:
        if cfg.degree < 0:
            raise UsageError("--degree must be >= 0")
        return [cfg.degree]
    top = cfg.max_degree if cfg.max_degree is not None else default_max
    if top is None:
        raise UsageError("a --degree or --max-degree is required")
    if top < 0:
        raise UsageError("--max-degree must be >= 0")
    return list(range(start, top + 1))


def _pmap(fn, items: list, jobs: int) -> list:
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
        return list(ex.map(fn, items))


def _emit(cfg, obj=None, text: str | None = None):
    if text is None:
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec(cfg, need_k: int = -1) -> AlgebraSpec:
    k = 1 if cfg.k is None else cfg.k
    if k < need_k:
        raise UsageError(f"this command needs k >= {need_k}")
    try:
        return AlgebraSpec(cfg.family or "witt", k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# dims


def _dims_task(args):
    family, k, n, dim = args
    rep = cohomology.homology_dims(AlgebraSpec(family, k), n, None if dim is None else [dim])
    return rep


def cmd_dims(cfg) -> int:
    spec = _spec(cfg)
    degrees = _degrees(cfg)
    reports = _pmap(_dims_task, [(spec.family, spec.k, n, cfg.dim) for n in degrees], _jobs(cfg))
    if cfg.format == "csv":
        _emit(cfg, text=cohomology.to_csv(reports))
    elif cfg.format == "pretty":
        lines = [f"{'n':>4} {'q':>3} {'dimC':>8} {'dimH':>5} {'main':>5}"]
        for r in reports:
            for s in r.slices:
                lines.append(f"{r.n:>4} {s.q:>3} {s.dim_c:>8} {s.dim_h:>5} {len(s.main):>5}")
        _emit(cfg, text="\n".join(lines) + "\n")
    else:
        _emit(cfg, [r.to_json() for r in reports])
    return 0


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_task(args):
    family, k, n, vectors = args
    return laplacian.spectrum(AlgebraSpec(family, k), n, with_vectors=vectors).to_json()


def cmd_spectrum(cfg) -> int:
    spec = _spec(cfg)
    closed = spec.family == "witt" and spec.k in (0, 1)
    if not closed and not cfg.brute:
        raise UsageError("closed forms cover the Witt algebra with k = 0 or 1; pass --brute otherwise")
    if cfg.vectors and (spec.family, spec.k) != ("witt", 1):
        raise UsageError("--vectors needs the Witt algebra with k = 1")
    if cfg.format == "csv":
        raise UsageError("csv output is only available for dims")
    degrees = _degrees(cfg)
    out = _pmap(_spectrum_task, [(spec.family, spec.k, n, cfg.vectors) for n in degrees], _jobs(cfg))
    if cfg.format == "pretty":
        lines = []
        for r in out:
            vals = ", ".join(f"{e['value']}^{e['mult']}" for e in r["eigen"])
            lines.append(f"n={r['n']:>3} harmonic={r['harmonic_dim']:>2}  {vals}")
        _emit(cfg, text="\n".join(lines) + "\n")
    else:
        _emit(cfg, out)
    return 0


# ---------------------------------------------------------------------------
# cycles


def _cycle_task(args):
    family, k, parts = args
    spec = AlgebraSpec(family, k)
    chain = stablecycles.explicit_cycle(parts, family, k)
    rec = stablecycles.cycle_record(parts, family, k, chain)
    cocycle = cohomology.cocycle_for_main(spec, parts)
    rec["flags"] = {
        "stable": stablecycles.is_stable(chain, spec),
        "nonzero_homology_class": stablecycles.independent_mod_boundaries(spec, [chain]),
        "cocycle_closed": not delta(spec, cocycle),
        "nonzero_cohomology_class": cohomology.classes_independent(spec, [cocycle]),
    }
    rec["cocycle"] = cocycle.to_json()
    return rec


def cmd_cycles(cfg) -> int:
    spec = _spec(cfg, need_k=1)
    if cfg.format == "csv":
        raise UsageError("csv output is only available for dims")
    if cfg.degree is None and cfg.max_degree is None:
        if cfg.dim is None:
            raise UsageError("give --dim, --degree or --max-degree")
        parts_list = partitions.main_partitions_of_dim(spec.k, cfg.dim)
    else:
        parts_list = []
        for n in _degrees(cfg):
            parts_list.extend(partitions.enumerate_partitions("main", spec.k, n, cfg.dim))
    parts_list = sorted(set(parts_list), key=lambda p: (sum(p), len(p), p))
    parts_list = [p for p in parts_list if p]
    out = _pmap(_cycle_task, [(spec.family, spec.k, p) for p in parts_list], _jobs(cfg))
    if cfg.format == "pretty":
        lines = [f"{tuple(r['partition'])}: {Chain.from_json(r['chain'])!r}" for r in out]
        _emit(cfg, text="\n".join(lines) + "\n")
    else:
        _emit(cfg, out)
    bad = [r for r in out if not all(r["flags"].values())]
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# verify


def _check(name, ok, **where) -> dict:
    return {"check": name, "pass": bool(ok), **where}


def _task_identities(args):
    family, k, n = args
    return [_check(r["identity"], r["pass"], family=family, k=k, n=n)
            for r in filtering.verify_identities(AlgebraSpec(family, k), n)]


def _task_sylvester(args):
    k, trunc, nmax = args
    rows = [_check("sylvester", partitions.verify_series_identity("sylvester", k, trunc), k=k, trunc=trunc)]
    rows.append(_check("strict-count-at-t=1",
                       all(partitions.strict_count_check(k, n) for n in range(nmax + 1)), k=k, n=nmax))
    return rows


def _task_basis(args):
    family, k, n = args
    spec = AlgebraSpec(family, k)
    rows = []
    for q in sorted({len(p) for p in partitions.strict_partitions(n, k)}):
        if q == 0:
            continue
        try:
            bc = filtering.basis_change(spec, n, q)
            ok = not bc.triangular_violations()
        except filtering.BasisRankError:
            ok = False
        rows.append(_check("filtering-basis", ok, family=family, k=k, n=n, dim=q))
    return rows


def _task_spectrum(args):
    k, n = args
    rep = laplacian.spectrum(AlgebraSpec("witt", k), n)
    rows = [_check(f"gamma{k}-spectrum", dict(rep.eigen) == laplacian.closed_form_spectrum(k, n), k=k, n=n)]
    if k == 1:
        mains = len(partitions.enumerate_partitions("main", 1, n))
        rows.append(_check("harmonic-dim", rep.harmonic_dim == mains, k=k, n=n))
        rows.append(_check("non-negative-integer",
                           all(v >= 0 and int(v) == v for v, _ in rep.eigen), k=k, n=n))
    return rows


def _task_stable(args):
    family, k, n = args
    spec = AlgebraSpec(family, k)
    rows = []
    for q in range(1, 5):
        if not list(partitions.strict_partitions(n, k, q)):
            continue
        rep = stablecycles.stab_pos_decomposition(spec, n, q)
        rows.append(_check("stable-triple", rep.ok, family=family, k=k, n=n, dim=q))
    return rows


def _task_schur(args):
    seed, count = args
    rng = random.Random(seed)
    ok = True
    for _ in range(count):
        q = rng.randint(1, 4)
        a = sorted(rng.randint(0, 3) for _ in range(rng.randint(0, q)))
        b = sorted(rng.randint(0, 3) for _ in range(rng.randint(0, q)))
        prod = stablecycles.schur_product(stablecycles.schur(a, q), stablecycles.schur(b, q))
        lead = tuple(x + y for x, y in zip([0] * (q - len(a)) + a, [0] * (q - len(b)) + b))
        ok &= prod.coeffs.get(lead) == 1 and all(
            v > 0 and int(v) == v and partitions.dominates(key, lead) for key, v in prod.coeffs.items())
    return [_check("schur-positivity", ok, seed=seed, samples=count)]


def _task_trace(args):
    (n,) = args
    return [_check("trace-identity", laplacian.trace_identity(n), n=n)]


_TASKS = {
    "identities": _task_identities,
    "sylvester": _task_sylvester,
    "basis-counts": _task_basis,
    "spectrum": _task_spectrum,
    "stable": _task_stable,
    "schur": _task_schur,
    "trace": _task_trace,
}


def _run(task):
    kind, args = task
    return _TASKS[kind](args)


def _suite_tasks(cfg, suite: str) -> list:
    fams = [cfg.family] if cfg.family else ["witt", "loop"]

    def ks(default):
        if cfg.k is None:
            return default
        if cfg.k < 1:
            raise UsageError(f"suite {suite} needs k >= 1")
        return [cfg.k]

    def top(default):
        return cfg.max_degree if cfg.max_degree is not None else (cfg.degree if cfg.degree is not None else default)

    if suite == "identities":
        return [("identities", (f, k, n)) for f in fams for k in ks([1, 2, 3]) for n in range(top(20) + 1)]
    if suite == "sylvester":
        return [("sylvester", (k, cfg.trunc, top(30))) for k in ks([1, 2, 3])]
    if suite == "basis-counts":
        return [("basis-counts", (f, k, n)) for f in fams for k in ks([1, 2, 3]) for n in range(1, top(25) + 1)]
    if suite == "spectrum":
        hi = top(20)
        return ([("spectrum", (1, n)) for n in range(hi + 1)]
                + [("spectrum", (0, n)) for n in range(min(hi, 12) + 1)])
    if suite == "stable":
        return ([("stable", (f, k, n)) for f in fams for k in ks([1, 2]) if k <= 2 for n in range(1, top(20) + 1)]
                + [("schur", (cfg.seed, 100))])
    if suite == "trace":
        return [("trace", (n,)) for n in range(top(25) + 1)]
    raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def cmd_verify(cfg) -> int:
    if cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    if cfg.format == "csv":
        raise UsageError("csv output is only available for dims")
    names = SUITES[:-1] if cfg.suite == "all" else (cfg.suite,)
    tasks = [t for s in names for t in _suite_tasks(cfg, s)]
    rows = [r for chunk in _pmap(_run, tasks, _jobs(cfg)) for r in chunk]
    failures = [r for r in rows if not r["pass"]]
    report = {"suite": cfg.suite, "checks": len(rows), "failures": failures, "pass": not failures}
    if cfg.format == "pretty":
        lines = [f"suite {cfg.suite}: {len(rows)} checks, {len(failures)} failed"]
        lines += [f"  FAIL {json.dumps(r, sort_keys=True)}" for r in failures]
        _emit(cfg, text="\n".join(lines) + "\n")
    else:
        _emit(cfg, report)
    return 0 if not failures else 1


COMMANDS = {"dims": cmd_dims, "spectrum": cmd_spectrum, "cycles": cmd_cycles, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = _parser()
    cfg = parser.parse_args(argv)
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except ValueError as exc:
        print(f"fhl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
