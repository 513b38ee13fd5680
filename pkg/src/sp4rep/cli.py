"""Command-line interface: matrix elements, blocks, characters and verification.

Global options configure the representation, truncation and group element;
they may also come from a flat ``key=value`` file given with ``--config``
(flags override the file).  Every record echoes the effective configuration.

Exit codes: 0 ok, 1 verification failure, 2 usage or configuration error,
3 numerical non-convergence.

Group elements (``--element``):

    identity
    kak:T                     the boost d(T)
    kak:K1:T:K2               k1 d(T) k2, each K = phi,x1,x2,x3,x4 meaning
                              exp(i phi) times the normalized real quaternion
                              (x4, x1 e1 + x2 e2 + x3 e3)
    diag:MU_RE,MU_IM,NU_RE,NU_IM
    explicit:A4,A1,A2,A3,B4,B1,B2,B3   complex components, e.g. 1.2+0.1j

Indices are ``l,k,m`` for s = 0 and ``l,k,J_x2,M_x2`` for any s.

CSV columns:
    element:   in, out, value_re, value_im, tail_estimate, l_max_used, route
    character: L, partial_re, partial_im, increment_re, increment_im, verdict
    verify:    suite, name, residual, threshold, passed, expected_failure
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys

import click

from . import characters as ch
from . import fockbasis as fb
from . import matrix_elements as me
from . import sp4
from . import verify as vf
from .cquat import CQuat
from .errors import Sp4RepError
from .fockbasis import RepLabel, ScalarIndex, SpinIndex, Truncation
from .sp4 import EigenQuadruple

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2, 3

DEFAULTS = {
    "varsigma": 4.0,
    "spin_x2": 0,
    "lmax": 14,
    "tol": 1e-8,
    "abel_t": 0.9,
    "mc_samples": 100_000,
    "seed": 0,
    "element": "identity",
    "format": "json",
}
CASTS = {"varsigma": float, "spin_x2": int, "lmax": int, "tol": float, "abel_t": float,
         "mc_samples": int, "seed": int, "element": str, "format": str}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- config

def read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CASTS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            out[key] = value
    return out


def effective_config(file_values: dict, flags: dict) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(file_values)
    cfg.update({k: v for k, v in flags.items() if v is not None})
    try:
        cfg = {k: CASTS[k](v) for k, v in cfg.items()}
    except ValueError as exc:
        raise UsageError(f"bad configuration value: {exc}") from None
    if cfg["format"] not in ("json", "csv"):
        raise UsageError("format must be json or csv")
    if cfg["lmax"] < 0 or cfg["mc_samples"] <= 0 or not 0 < cfg["abel_t"] <= 1 or cfg["tol"] <= 0:
        raise UsageError("need lmax >= 0, mc_samples > 0, 0 < abel_t <= 1, tol > 0")
    fb.check_rep(RepLabel(cfg["varsigma"], cfg["spin_x2"]))
    return cfg


def echo_config(cfg: dict) -> dict:
    """Configuration as written into records (half-integers doubled)."""
    return {
        "varsigma": cfg["varsigma"],
        "s_x2": cfg["spin_x2"],
        "l_max": cfg["lmax"],
        "series_tol": cfg["tol"],
        "abel_t": cfg["abel_t"],
        "mc_samples": cfg["mc_samples"],
        "seed": cfg["seed"],
        "element": cfg["element"],
        "format": cfg["format"],
    }


# ---------------------------------------------------------------- parsing

def _floats(text: str, n: int, what: str):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected {n} comma-separated numbers") from None
    if len(vals) != n:
        raise UsageError(f"{what}: expected {n} comma-separated numbers")
    return vals


def _compact(text: str) -> sp4.Sp4Element:
    phi, x1, x2, x3, x4 = _floats(text, 5, "compact factor")
    norm = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4)
    if norm == 0:
        raise UsageError("compact factor needs a non-zero quaternion")
    ph = complex(math.cos(phi), math.sin(phi))
    return sp4.compact(CQuat(ph * x4 / norm, (ph * x1 / norm, ph * x2 / norm, ph * x3 / norm)))


def parse_element(spec: str) -> sp4.Sp4Element:
    kind, _, body = spec.partition(":")
    if kind == "identity" and not body:
        return sp4.Sp4Element.identity()
    if kind == "kak":
        parts = body.split(":")
        if len(parts) == 1:
            return sp4.boost(_floats(parts[0], 1, "boost parameter")[0])
        if len(parts) == 3:
            t = _floats(parts[1], 1, "boost parameter")[0]
            return _compact(parts[0]) @ sp4.boost(t) @ _compact(parts[2])
        raise UsageError("kak element: use kak:T or kak:K1:T:K2")
    if kind == "diag":
        mr, mi, nr, ni = _floats(body, 4, "diag element")
        return sp4.make_diagonal(complex(mr, mi), complex(nr, ni))
    if kind == "explicit":
        try:
            c = [complex(x.replace(" ", "")) for x in body.split(",")]
        except ValueError:
            raise UsageError("explicit element: components must be complex numbers") from None
        if len(c) != 8:
            raise UsageError("explicit element: expected 8 components a4,a1,a2,a3,b4,b1,b2,b3")
        g = sp4.Sp4Element(CQuat(c[0], tuple(c[1:4])), CQuat(c[4], tuple(c[5:8])))
        ok, worst = sp4.check_membership(g)
        if not ok:
            raise UsageError(f"explicit element is not in the group (residual {worst:.3g})")
        return g
    raise UsageError(f"unknown element spec {spec!r}")


def element_eigen(spec: str, g: sp4.Sp4Element) -> EigenQuadruple:
    if spec.startswith("diag:"):
        mr, mi, nr, ni = _floats(spec[5:], 4, "diag element")
        return EigenQuadruple(complex(mr, mi), complex(nr, ni))
    return sp4.eigenvalues(g)


def parse_index(text: str, s_x2: int):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"index {text!r}: expected comma-separated integers") from None
    if len(vals) == 3 and s_x2 == 0:
        return fb.check_scalar_index(ScalarIndex(*vals))
    if len(vals) == 4:
        return fb.check_spin_index(s_x2, SpinIndex(*vals))
    raise UsageError("index must be l,k,m (s = 0) or l,k,J_x2,M_x2")


def index_dict(idx) -> dict:
    if isinstance(idx, ScalarIndex):
        return {"l": idx.l, "k": idx.k, "m": idx.m}
    return {"l": idx.l, "k": idx.k, "J_x2": idx.J_x2, "M_x2": idx.M_x2}


def index_text(idx) -> str:
    return ",".join(str(v) for v in idx)


# ---------------------------------------------------------------- output

def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, allow_nan=True)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _complex(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def element_record(cfg, in_idx, out_idx, value, tail, route) -> dict:
    return {
        "kind": "element",
        "in": index_dict(in_idx),
        "out": index_dict(out_idx),
        "value": _complex(value),
        "value_re": float(value.real),
        "value_im": float(value.imag),
        "tail_estimate": float(tail),
        "l_max_used": cfg["lmax"],
        "route": route,
        "config": echo_config(cfg),
    }


def compute_element(cfg, in_idx, out_idx):
    rep = RepLabel(cfg["varsigma"], cfg["spin_x2"])
    g = parse_element(cfg["element"])
    trunc = Truncation(l_max=cfg["lmax"], series_tol=cfg["tol"], abel_t=cfg["abel_t"],
                       mc_samples=cfg["mc_samples"])
    if isinstance(in_idx, ScalarIndex) != isinstance(out_idx, ScalarIndex):
        raise UsageError("input and output indices must use the same form")
    if isinstance(in_idx, ScalarIndex):
        value, tail, route = me.scalar_matrix_element(rep, g, in_idx, out_idx, trunc)
    else:
        value, tail, route = me.spin_matrix_element(rep, g, in_idx, out_idx, trunc)
    return element_record(cfg, in_idx, out_idx, complex(value), tail, route)


def format_elements(cfg, records) -> str:
    if cfg["format"] == "json":
        return "".join(_json(r) + "\n" for r in records)
    rows = [(index_text(tuple(r["in"].values())), index_text(tuple(r["out"].values())),
             r["value_re"], r["value_im"], r["tail_estimate"], r["l_max_used"], r["route"])
            for r in records]
    return _csv(rows, ["in", "out", "value_re", "value_im", "tail_estimate", "l_max_used", "route"])


def character_record(cfg) -> dict:
    rep = RepLabel(cfg["varsigma"], cfg["spin_x2"])
    g = parse_element(cfg["element"])
    eig = element_eigen(cfg["element"], g)
    trunc = Truncation(l_max=cfg["lmax"], series_tol=cfg["tol"], abel_t=cfg["abel_t"],
                       mc_samples=cfg["mc_samples"])
    report = ch.character(rep, eig, trunc)
    return {
        "kind": "character",
        "eigenvalues": {"mu": _complex(complex(eig.mu)), "nu": _complex(complex(eig.nu))},
        "partial_sums": [dict(L=L, **_complex(s)) for L, s in enumerate(report.partial_sums)],
        "increments": [dict(L=L, **_complex(s)) for L, s in enumerate(report.increments)],
        "verdict": report.verdict,
        "l_max_used": report.l_max,
        "abel_t": report.abel_t,
        "config": echo_config(cfg),
    }


def format_character(cfg, rec) -> str:
    if cfg["format"] == "json":
        return _json(rec) + "\n"
    rows = [(p["L"], p["re"], p["im"], i["re"], i["im"], rec["verdict"])
            for p, i in zip(rec["partial_sums"], rec["increments"])]
    return _csv(rows, ["L", "partial_re", "partial_im", "increment_re", "increment_im", "verdict"])


def verify_records(cfg, suite: str) -> list:
    vcfg = vf.VerifyConfig(seed=cfg["seed"], l_max=cfg["lmax"], mc_samples=cfg["mc_samples"])
    results = vf.run(suite, vcfg)
    return [{
        "kind": "verify",
        "suite": name,
        "passed": vf.suite_passed(checks),
        "checks": [c.to_dict() for c in checks],
        "config": echo_config(cfg),
    } for name, checks in results.items()]


def format_verify(cfg, records) -> str:
    if cfg["format"] == "json":
        return "".join(_json(r) + "\n" for r in records)
    rows = [(r["suite"], c["name"], c["residual"], c["threshold"], c["passed"], c["expected_failure"])
            for r in records for c in r["checks"]]
    return _csv(rows, ["suite", "name", "residual", "threshold", "passed", "expected_failure"])


# ---------------------------------------------------------------- click

def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _run(ctx, body):
    """Run ``body(cfg)``; map library and usage errors to exit code 2."""
    try:
        cfg = effective_config(ctx.obj["file"], ctx.obj["flags"])
        return body(cfg)
    except (UsageError, Sp4RepError, ValueError, OSError) as exc:
        _fail(str(exc), EXIT_USAGE)


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Flat key=value configuration file; flags override it.")
@click.option("--varsigma", type=float, default=None, help="Representation label varsigma (> s + 2).")
@click.option("--spin-x2", type=int, default=None, help="Twice the spin s.")
@click.option("--lmax", type=int, default=None, help="Largest degree kept in truncations.")
@click.option("--tol", type=float, default=None, help="Series tolerance.")
@click.option("--abel-t", type=float, default=None, help="Abel factor t in (0, 1] for characters.")
@click.option("--mc-samples", type=int, default=None, help="Monte Carlo sample count.")
@click.option("--seed", type=int, default=None, help="Random seed.")
@click.option("--element", type=str, default=None, help="Group element spec (see module help).")
@click.option("--format", "fmt", type=str, default=None, help="json or csv.")
@click.pass_context
def main(ctx, config_path, varsigma, spin_x2, lmax, tol, abel_t, mc_samples, seed, element, fmt):
    """Matrix elements and characters of Sp(4, R) discrete-series representations."""
    file_values = {}
    if config_path is not None:
        try:
            file_values = read_config_file(config_path)
        except (UsageError, OSError) as exc:
            _fail(str(exc), EXIT_USAGE)
    ctx.obj = {
        "file": file_values,
        "flags": {"varsigma": varsigma, "spin_x2": spin_x2, "lmax": lmax, "tol": tol,
                  "abel_t": abel_t, "mc_samples": mc_samples, "seed": seed,
                  "element": element, "format": fmt},
    }


@main.command()
@click.option("--in", "in_idx", required=True, help="Input index l,k,m or l,k,J_x2,M_x2.")
@click.option("--out", "out_idx", required=True, help="Output index, same form.")
@click.pass_context
def element(ctx, in_idx, out_idx):
    """One matrix element U[in; out](g)."""
    def body(cfg):
        a = parse_index(in_idx, cfg["spin_x2"])
        b = parse_index(out_idx, cfg["spin_x2"])
        rec = compute_element(cfg, a, b)
        return rec, cfg

    rec, cfg = _run(ctx, body)
    click.echo(format_elements(cfg, [rec]), nl=False)
    if not rec["tail_estimate"] <= cfg["tol"]:
        sys.exit(EXIT_NONCONVERGED)


@main.command()
@click.option("--l-in", type=int, required=True, help="Input degree.")
@click.option("--l-out", type=int, required=True, help="Output degree.")
@click.pass_context
def block(ctx, l_in, l_out):
    """All elements between two degrees, one record per element in index order."""
    def body(cfg):
        if l_out > cfg["lmax"]:
            raise UsageError(f"output degree {l_out} exceeds l_max = {cfg['lmax']}")
        if l_in < 0 or l_out < 0:
            raise UsageError("degrees must be non-negative")
        rep = RepLabel(cfg["varsigma"], cfg["spin_x2"])
        g = parse_element(cfg["element"])
        B = me.matrix_block(rep, g, l_in, l_out)
        ins = me.level_indices(rep, l_in)
        outs = me.level_indices(rep, l_out)
        route = "b0" if me.is_b0(g) else "series"
        recs = [element_record(cfg, a, b, complex(B[i, j]), 0.0, route)
                for i, a in enumerate(ins) for j, b in enumerate(outs)]
        return recs, cfg

    recs, cfg = _run(ctx, body)
    click.echo(format_elements(cfg, recs), nl=False)


@main.command()
@click.pass_context
def character(ctx):
    """Abel-weighted partial sums of the character on the element's eigenvalues."""
    rec, cfg = _run(ctx, lambda cfg: (character_record(cfg), cfg))
    click.echo(format_character(cfg, rec), nl=False)
    if rec["verdict"] != "converged":
        sys.exit(EXIT_NONCONVERGED)


@main.command()
@click.argument("suite")
@click.pass_context
def verify(ctx, suite):
    """Run a verification suite: one of the module names or 'all'."""
    if suite != "all" and suite not in vf.SUITES:
        _fail(f"unknown suite {suite!r}; choose from {', '.join(vf.SUITES + ('all',))}", EXIT_USAGE)
    recs, cfg = _run(ctx, lambda cfg: (verify_records(cfg, suite), cfg))
    click.echo(format_verify(cfg, recs), nl=False)
    if not all(r["passed"] for r in recs):
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
