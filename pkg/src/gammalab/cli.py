"""Command-line front end.

Three subcommands: `gamma` computes exterior-square gamma factors (all
routes, or the level-zero L/eps/gamma rational functions when a Shalika
vector blocks the plain functional equation), `verify` runs the invariant
suites, and `export` writes Bessel tables and gamma sweeps to disk.  Output
bytes depend only on the configuration and seed; timings go to stderr.

Exit codes: 0 success, 1 verification failure, 2 precondition violation,
3 route disagreement beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import exjs, levelzero
from .bessel import bessel_build, bessel_closed_form_gl3, export_bessel_csv
from .charkit import (AddChar, MultChar, is_regular, regular_orbit_reps,
                      restriction_is_trivial)
from .cuspchar import CuspidalRep, verify_irreducible
from .errors import GammalabError, PreconditionViolated
from .ffield import build_field
from .levelzero import LevelZeroCtx, RatQS, l_factor
from . import matgrp as mg

SCHEMA = "gammalab/1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PRECONDITION = 2
EXIT_ROUTE_DISAGREEMENT = 3


@dataclass
class RunConfig:
    command: str
    p: int
    e: int
    n: int
    theta: str
    psi_inverse: bool
    c: complex
    seed: int
    trials: int
    tol: float
    fmt: str
    out: str
    exhaustive: bool


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            v = q
            while v % p == 0:
                v //= p
                e += 1
            if v == 1:
                return p, e
            raise PreconditionViolated(f"q = {q} is not a prime power")
    raise PreconditionViolated(f"q = {q} is not a prime power")


def parse_config(argv) -> RunConfig:
    ap = argparse.ArgumentParser(
        prog="gammalab",
        description="Exterior-square gamma factors of cuspidal representations"
                    " of GL_n over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("gamma", "verify", "export"):
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, default=None, help="characteristic")
        sp.add_argument("--e", type=int, default=1, help="base extension degree; q = p^e")
        sp.add_argument("--q", type=int, default=None, help="base-field size (prime power)")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--theta", default="all-regular",
                        help="character exponent k, or 'all-regular'")
        sp.add_argument("--psi-inverse", action="store_true")
        sp.add_argument("--c-re", type=float, default=1.0)
        sp.add_argument("--c-im", type=float, default=0.0)
        sp.add_argument("--seed", type=int, default=exjs.DEFAULT_SEED)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--tol", type=float, default=1e-7)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default=None)
        sp.add_argument("--exhaustive", action="store_true")
    ns = ap.parse_args(argv)
    if ns.q is not None:
        p, e = _factor_prime_power(ns.q)
    elif ns.p is not None:
        p, e = ns.p, ns.e
    else:
        ap.error("one of --q or --p is required")
    return RunConfig(ns.command, p, e, ns.n, str(ns.theta), ns.psi_inverse,
                     complex(ns.c_re, ns.c_im), ns.seed, ns.trials, ns.tol,
                     ns.format, ns.out, ns.exhaustive)


def _theta_exponents(cfg: RunConfig, ctx):
    if cfg.theta == "all-regular":
        return regular_orbit_reps(ctx, cfg.n)
    k = int(cfg.theta)
    if not is_regular(MultChar(ctx, cfg.n, k), cfg.n):
        raise PreconditionViolated(f"theta exponent {k} is not regular")
    return [k]


def _cnum(z: complex):
    return [float(z.real), float(z.imag)]


def _gamma_row(cfg: RunConfig, ctx, k: int) -> dict:
    t0 = time.perf_counter()
    rep = CuspidalRep(ctx, k)
    psi = AddChar(ctx, cfg.psi_inverse)
    table = bessel_build(rep, psi)
    row = {
        "theta": rep.exponent,
        "orbit": list(rep.galois_orbit()),
        "regular": True,
        "central_char_exponent": rep.central_char.exponent,
    }
    shalika = cfg.n % 2 == 0 and restriction_is_trivial(rep.theta, cfg.n // 2)
    row["shalika"] = shalika
    if shalika:
        lz = LevelZeroCtx(table, cfg.c)
        L, eps = levelzero.local_L_eps(lz)
        gam = levelzero.local_gamma(lz)
        gtilde, resid = levelzero.modified_fe_check(table, cfg.trials, cfg.seed)
        row["c"] = _cnum(cfg.c)
        row["L"] = L.to_json_dict()
        row["eps"] = eps.to_json_dict()
        row["gamma"] = gam.to_json_dict()
        row["modified_gamma"] = gtilde.to_json_dict()
        row["modified_fe_residual"] = resid
    else:
        routes = {}
        ratio = exjs.gamma_ratio(table, cfg.trials, cfg.seed)
        routes["ratio"] = ratio.value
        routes["torus"] = exjs.gamma_torus(table).value
        if cfg.n in (2, 3, 4):
            routes["closed_form"] = exjs.gamma_closed(table).value
        names = sorted(routes)
        deltas = {f"{a}-{b}": abs(routes[a] - routes[b])
                  for i, a in enumerate(names) for b in names[i + 1:]}
        row["routes"] = {name: _cnum(v) for name, v in sorted(routes.items())}
        row["abs_gamma"] = abs(routes["ratio"])
        row["route_deltas"] = deltas
        row["max_route_delta"] = max(deltas.values()) if deltas else 0.0
        row["fe_residual"] = ratio.diagnostics["max_residual"]
    row["_elapsed"] = time.perf_counter() - t0
    return row


def _emit(cfg: RunConfig, payload: dict, flat_rows=None) -> None:
    if cfg.fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        rows = flat_rows or []
        if rows:
            header = sorted({key for row in rows for key in row})
            writer.writerow(header)
            for row in rows:
                writer.writerow([row.get(h, "") for h in header])
        text = f"# schema {SCHEMA}\n" + buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten_gamma_row(row: dict) -> dict:
    flat = {"theta": row["theta"], "orbit": "+".join(map(str, row["orbit"])),
            "shalika": int(row["shalika"])}
    if row["shalika"]:
        for key in ("L", "eps", "gamma"):
            flat[key] = json.dumps(row[key], sort_keys=True)
    else:
        for name, val in row["routes"].items():
            flat[f"gamma_{name}_re"] = repr(float(val[0]))
            flat[f"gamma_{name}_im"] = repr(float(val[1]))
        flat["abs_gamma"] = repr(float(row["abs_gamma"]))
        flat["max_route_delta"] = repr(float(row["max_route_delta"]))
    return flat


def cmd_gamma(cfg: RunConfig) -> int:
    ctx = build_field(cfg.p, cfg.e, cfg.n)
    ks = _theta_exponents(cfg, ctx)
    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(lambda k: _gamma_row(cfg, ctx, k), ks))
    for row in rows:
        print(f"theta={row['theta']} elapsed={row.pop('_elapsed'):.3f}s",
              file=sys.stderr)
    bad = [row for row in rows
           if not row["shalika"] and row["max_route_delta"] > cfg.tol]
    payload = {"schema": SCHEMA, "command": "gamma", "q": ctx.q, "n": cfg.n,
               "psi_inverse": cfg.psi_inverse, "seed": cfg.seed, "rows": rows}
    _emit(cfg, payload, [_flatten_gamma_row(r) for r in rows])
    if bad:
        print(f"route disagreement beyond {cfg.tol} for theta="
              f"{[r['theta'] for r in bad]}", file=sys.stderr)
        return EXIT_ROUTE_DISAGREEMENT
    return EXIT_OK


def _verify_checks(cfg: RunConfig, ctx):
    """Yield (name, passed, residual) tuples for the invariant suites."""
    import random
    q, n = ctx.q, cfg.n
    psi = AddChar(ctx, cfg.psi_inverse)
    # character orthogonality
    resid = abs(sum(psi(x) for x in ctx.subfield_elements(1)))
    yield ("additive_orthogonality", resid < 1e-9, resid)
    worst = 0.0
    for k in range(1, min(q ** n - 1, 40)):
        th = MultChar(ctx, n, k)
        worst = max(worst, abs(sum(th(x) for x in ctx.subfield_units(n))))
    yield ("multiplicative_orthogonality", worst < 1e-8, worst)
    ks = regular_orbit_reps(ctx, n)
    reps = [CuspidalRep(ctx, k) for k in ks]
    # character oracle
    worst = 0.0
    ok = True
    for rep in reps:
        try:
            report = verify_irreducible(rep)
            worst = max(worst, abs(report["inner_product"] - 1))
        except GammalabError:
            ok = False
    yield ("character_oracle", ok, worst)
    tables = [bessel_build(rep, psi) for rep in reps]
    # Bessel support and bi-equivariance
    rng = random.Random(cfg.seed)
    samples = 10000 if cfg.exhaustive else 500
    worst = 0.0
    for table in tables:
        for _ in range(samples // max(len(tables), 1) + 1):
            g = mg.random_invertible(ctx, n, rng)
            u1 = mg.random_unipotent(ctx, n, rng)
            u2 = mg.random_unipotent(ctx, n, rng)
            lhs = table.eval(mg.mat_chain(ctx, u1, g, u2))
            rhs = (psi(mg.superdiag_sum(ctx, u1)) * psi(mg.superdiag_sum(ctx, u2))
                   * table.eval(g))
            worst = max(worst, abs(lhs - rhs))
    yield ("bessel_biequivariance", worst < 1e-8, worst)
    if n == 3:
        worst = 0.0
        for table in tables:
            for l1 in ctx.subfield_units(1):
                for l2 in ctx.subfield_units(1):
                    printed = bessel_closed_form_gl3(table.rep, psi, l1, l2)
                    worst = max(worst, abs(printed - table.value((1, 2), (l1, l2))))
        yield ("bessel_gl3_closed_form", worst < 1e-8, worst)
    # functional equation and route agreement
    worst_fe = 0.0
    worst_route = 0.0
    worst_unit = 0.0
    ok = True
    for table in tables:
        shal = n % 2 == 0 and restriction_is_trivial(table.rep.theta, n // 2)
        if shal:
            try:
                _, resid = levelzero.modified_fe_check(table, cfg.trials, cfg.seed)
                worst_fe = max(worst_fe, resid)
            except GammalabError:
                ok = False
            continue
        try:
            r = exjs.gamma_ratio(table, cfg.trials, cfg.seed)
            t = exjs.gamma_torus(table)
            worst_fe = max(worst_fe, r.diagnostics["max_residual"])
            worst_route = max(worst_route, abs(r.value - t.value))
            worst_unit = max(worst_unit, abs(abs(r.value) - 1))
            if n in (2, 3, 4):
                worst_route = max(worst_route,
                                  abs(r.value - exjs.gamma_closed(table).value))
        except GammalabError:
            ok = False
    yield ("functional_equation", ok and worst_fe < 1e-8, worst_fe)
    yield ("route_agreement", worst_route < cfg.tol, worst_route)
    yield ("gamma_unitarity", worst_unit < 1e-8, worst_unit)
    # Shalika criterion
    if n % 2 == 0:
        ok = True
        for table in tables:
            try:
                exjs.shalika_detect(table, samples=200, seed=cfg.seed)
            except GammalabError:
                ok = False
        yield ("shalika_equivalence", ok, 0.0)
    # appendix bound (small groups only)
    if mg.gl_order(q, n) <= 25000:
        ok = True
        for rep in reps:
            try:
                exjs.homdim_check(rep)
            except GammalabError:
                ok = False
        yield ("homdim_bound", ok, 0.0)
    # RatQS identities
    x = RatQS.x_power(1)
    one = RatQS.one()
    f = (one - x) / (one + RatQS.const(0.5j) * x)
    resid = (f * f.inverse()).residual(one)
    lf = l_factor(cfg.c, max(n // 2, 1))
    yield ("ratqs_identities", resid < 1e-10 and lf.equals(lf.simplified()), resid)


def cmd_verify(cfg: RunConfig) -> int:
    ctx = build_field(cfg.p, cfg.e, cfg.n)
    failed = 0
    lines = []
    for name, passed, resid in _verify_checks(cfg, ctx):
        status = "PASS" if passed else "FAIL"
        lines.append(f"{status} {name} residual={resid:.3e}")
        if not passed:
            failed += 1
    payload = {"schema": SCHEMA, "command": "verify", "q": ctx.q, "n": cfg.n,
               "checks": lines, "failed": failed}
    if cfg.fmt == "json":
        _emit(cfg, payload)
    else:
        text = f"# schema {SCHEMA}\n" + "\n".join(lines) + "\n"
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    for line in lines:
        print(line, file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def cmd_export(cfg: RunConfig) -> int:
    import os
    if not cfg.out:
        raise PreconditionViolated("export needs --out DIRECTORY")
    os.makedirs(cfg.out, exist_ok=True)
    ctx = build_field(cfg.p, cfg.e, cfg.n)
    ks = _theta_exponents(cfg, ctx)
    psi = AddChar(ctx, cfg.psi_inverse)
    written = []
    rows = []
    for k in ks:
        rep = CuspidalRep(ctx, k)
        table = bessel_build(rep, psi)
        path = os.path.join(cfg.out, f"bessel_q{ctx.q}_n{cfg.n}_k{rep.exponent}.csv")
        export_bessel_csv(table, path)
        written.append(path)
        rows.append(_gamma_row(cfg, ctx, k))
    for row in rows:
        row.pop("_elapsed", None)
    sweep = {"schema": SCHEMA, "command": "export", "q": ctx.q, "n": cfg.n,
             "psi_inverse": cfg.psi_inverse, "seed": cfg.seed, "rows": rows}
    sweep_path = os.path.join(cfg.out, f"gamma_sweep_q{ctx.q}_n{cfg.n}.{cfg.fmt}")
    if cfg.fmt == "json":
        with open(sweep_path, "w") as fh:
            json.dump(sweep, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        with open(sweep_path, "w") as fh:
            fh.write(f"# schema {SCHEMA}\n")
            writer = csv.writer(fh)
            flat = [_flatten_gamma_row(r) for r in rows]
            header = sorted({key for row in flat for key in row})
            writer.writerow(header)
            for row in flat:
                writer.writerow([row.get(h, "") for h in header])
    written.append(sweep_path)
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if cfg.command == "gamma":
            return cmd_gamma(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_export(cfg)
    except GammalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
