"""Command-line driver: ``apery8 verify`` and ``apery8 show``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import etamod, fricke, pcf, seqs
from .apreal import GUARD, apery_constant, const_zeta3, rat_to_mpf, to_decimal
from .checks import CheckResult
from .exactq import QSeries, QuadRat

SUITES = ("exact", "limit", "pcf", "numeric")
SCHEMA = "apery8.report/1"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    order: int = 200
    prec: int = 50
    n_max: int = 300
    suites: tuple[str, ...] = SUITES
    output: str = "text"
    seed: int | None = None

    def validate(self) -> "RunConfig":
        if self.order < 8:
            raise ConfigError(f"order must be >= 8 (got {self.order})")
        if self.prec < 20:
            raise ConfigError(f"prec must be >= 20 (got {self.prec})")
        if self.n_max < 10:
            raise ConfigError(f"n_max must be >= 10 (got {self.n_max})")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}")
        if self.output not in ("text", "json"):
            raise ConfigError("output must be text or json")
        # run in dependency order regardless of how they were given
        self.suites = tuple(s for s in SUITES if s in self.suites)
        return self

    def samples(self) -> tuple[str, ...]:
        extra = fricke.random_samples(self.seed) if self.seed is not None else ()
        return fricke.DEFAULT_SAMPLES + extra


@dataclass
class Report:
    config: RunConfig
    records: list[tuple[str, CheckResult]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for _, r in self.records)

    def to_json(self) -> dict:
        P = self.config.prec
        return {
            "schema": SCHEMA,
            "config": {
                "order": self.config.order, "prec": P, "n_max": self.config.n_max,
                "suites": list(self.config.suites), "seed": self.config.seed,
            },
            "passed": self.passed,
            "checks": [_record_json(suite, r, P) for suite, r in self.records],
        }

    def to_text(self) -> str:
        c = self.config
        lines = [f"apery8 verify  order={c.order} prec={c.prec} n_max={c.n_max} "
                 f"suites={','.join(c.suites)}",
                 "cusp orders use the local uniformizer at each cusp (widths 1, 8, 2, 1)"]
        for suite, r in self.records:
            lines.append(f"{suite:8s} {r.line()}  [{r.elapsed:.2f}s]")
        n_ok = sum(r.passed for _, r in self.records)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {n_ok}/{len(self.records)} checks passed")
        return "\n".join(lines)


def encode(x, prec: int):
    """JSON-safe form: rationals as num/den strings, reals as tagged decimals."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator)}
    if isinstance(x, QuadRat):
        return {"a": encode(x.a, prec), "b": encode(x.b, prec)}
    if isinstance(x, mpmath.mpf):
        return {"decimal": to_decimal(x, prec), "prec": prec}
    if isinstance(x, mpmath.mpc):
        return {"re": encode(x.real, prec), "im": encode(x.imag, prec)}
    if isinstance(x, float):
        return {"decimal": repr(x), "prec": 17}
    if isinstance(x, dict):
        return {str(k): encode(v, prec) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v, prec) for v in x]
    return str(x)


def _record_json(suite: str, r: CheckResult, prec: int) -> dict:
    return {
        "suite": suite,
        "name": r.name,
        "anchor": r.anchor,
        "params": encode(r.params, prec),
        "passed": r.passed,
        "residual": encode(r.residual, prec),
        "tolerance": encode(r.tolerance, prec),
        "first_mismatch": r.first_mismatch,
        "details": encode(r.details, prec),
        "elapsed_s": round(r.elapsed, 6),
    }


def _timed(fn, *args, **kwargs) -> CheckResult:
    t0 = time.perf_counter()
    res = fn(*args, **kwargs)
    res.elapsed = time.perf_counter() - t0
    return res


def cmd_verify(cfg: RunConfig) -> Report:
    cfg.validate()
    report = Report(cfg)
    add = report.records.append
    table_size = max(cfg.order + 3, cfg.n_max + 1)
    table = seqs.extend_table(table_size, binomial_check_limit=0)

    if "exact" in cfg.suites:
        o = cfg.order
        for fn, args in ((etamod.check_wronskian, (o,)),
                         (etamod.check_phi, (o,)),
                         (etamod.check_parametrizations, (o, table)),
                         (etamod.check_g8_sources, (o,)),
                         (seqs.check_theta_ode, (o, table)),
                         (seqs.check_ordinary_ode, (o, table)),
                         (etamod.check_cusp_orders, ()),
                         (etamod.check_sturm, ()),
                         (seqs.check_indicial, ())):
            add(("exact", _timed(fn, *args)))

    if "limit" in cfg.suites:
        n = cfg.n_max
        add(("limit", _timed(seqs.check_binomial_agreement, table, min(200, n))))
        add(("limit", _timed(seqs.check_integrality, _sub_table(table, n))))
        add(("limit", _timed(seqs.check_apery_limit, n, max(cfg.prec, 60), table)))
        if n >= 32:
            add(("limit", _timed(seqs.check_error_ratio, 30, min(60, n), table)))
        add(("limit", _timed(seqs.check_growth, _sub_table(table, n), cfg.prec)))

    if "pcf" in cfg.suites:
        pair = pcf.build_continuants(pcf.APERY8_PCF, cfg.n_max)
        add(("pcf", _timed(pcf.check_determinant, pair)))
        add(("pcf", _timed(pcf.check_closed_forms, pair, table)))
        add(("pcf", _timed(pcf.check_convergent_ratio, pair, table)))
        add(("pcf", _timed(pcf.check_pcf_value, cfg.n_max, cfg.prec, pair)))
        add(("pcf", _timed(pcf.check_bo_polynomial)))

    if "numeric" in cfg.suites:
        fcfg = fricke.FrickeCheckConfig(cfg.samples(), cfg.prec)
        p = cfg.prec
        for fn, args in ((fricke.check_zeta3, (p,)),
                         (fricke.check_l_values, (p,)),
                         (fricke.check_t_invariance, (fcfg,)),
                         (fricke.check_Y_fricke, (fcfg,)),
                         (fricke.check_g8_fricke, (fcfg,)),
                         (fricke.check_period_polynomial, (fcfg,)),
                         (fricke.check_F_functional, (fricke.DEFAULT_Y, p)),
                         (fricke.check_geodesic_consistency, (fricke.DEFAULT_Y, p)),
                         (fricke.check_derivative_identities, (max(p, 30),)),
                         (fricke.check_t0, (p,))):
            add(("numeric", _timed(fn, *args)))
    return report


def _sub_table(table: seqs.SeqTable, n: int) -> seqs.SeqTable:
    return seqs.SeqTable(n, table.s[: n + 1], table.B[: n + 1], table.Bnorm[:n])


# ---------------------------------------------------------------------------
# show
# ---------------------------------------------------------------------------

QEXP_BUILDERS = {
    "t": etamod.t_series,
    "Y": etamod.Y_series,
    "g8": etamod.build_g8,
    "E": etamod.eichler_series,
}


def cmd_show(what: str, args: list[str], as_json: bool = False) -> str:
    if what == "qexp":
        name = args[0] if args else "t"
        if name not in QEXP_BUILDERS:
            raise ConfigError(f"unknown series {name!r}; choose from {', '.join(QEXP_BUILDERS)}")
        k = int(args[1]) if len(args) > 1 else 7
        s: QSeries = QEXP_BUILDERS[name](k)
        start = 1 if name in ("t", "g8", "E") else 0
        coeffs = [s[n] for n in range(start, k)]
        data = {"series": name, "order": k, "first_exponent": start, "coefficients": coeffs}
        text = f"{name}: " + ", ".join(str(c) for c in coeffs) + f"  (q^{start}..q^{k - 1})"
    elif what == "sequence":
        n = int(args[0]) if args else 10
        tab = seqs.extend_table(max(n, 1))
        data = {"n": n, "s": tab.s[: n + 1], "B": tab.B[: n + 1]}
        text = "s: " + ", ".join(map(str, tab.s[: n + 1])) + "\nB: " + \
            ", ".join(map(str, tab.B[: n + 1]))
    elif what == "ratio":
        n = int(args[0]) if args else 20
        prec = int(args[1]) if len(args) > 1 else 30
        tab = seqs.extend_table(max(n, 1), binomial_check_limit=0)
        with mpmath.workdps(prec + GUARD):
            c = apery_constant(prec)
            rows = []
            for k in range(1, n + 1):
                r = rat_to_mpf(seqs.apery_ratio(k, tab), prec)
                rows.append((k, r, abs(r - c)))
        data = {"n": n, "prec": prec, "target": c,
                "trace": [{"n": k, "ratio": r, "error": e} for k, r, e in rows]}
        text = "\n".join(f"{k:4d}  {to_decimal(r, prec)}  err={mpmath.nstr(e, 3)}"
                         for k, r, e in rows)
        return _dump(data, text, as_json, prec)
    elif what == "constants":
        prec = int(args[0]) if args else 30
        with mpmath.workdps(prec + GUARD):
            z3 = const_zeta3(max(prec, 10))
            t0 = seqs.T0.to_mpf(prec)
            data = {
                "zeta3": z3,
                "apery_constant": 7 * z3 / 32,
                "pcf_value": 8 / (7 * z3),
                "t0": t0,
                "inverse_t0": 1 / t0,
            }
        text = "\n".join(f"{k:15s} {to_decimal(v, prec)}" for k, v in data.items())
        return _dump(data, text, as_json, prec)
    else:
        raise ConfigError(f"unknown selector {what!r}")
    return _dump(data, text, as_json, 50)


def _dump(data, text, as_json, prec):
    if as_json:
        return json.dumps(encode(data, prec), indent=2)
    return text


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apery8", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--order", type=int, default=200, help="q/z truncation order")
    v.add_argument("--prec", type=int, default=50, help="working precision in digits")
    v.add_argument("--nmax", type=int, default=300, help="sequence / continuant depth")
    v.add_argument("--suite", action="append", choices=SUITES,
                   help="suite to run (repeatable); default all")
    v.add_argument("--seed", type=int, default=None,
                   help="add three reproducible random Fricke sample points")
    v.add_argument("--json", action="store_true", help="emit a JSON report")

    s = sub.add_parser("show", help="print q-expansions, sequences, ratios or constants")
    s.add_argument("what", choices=("qexp", "sequence", "ratio", "constants"))
    s.add_argument("args", nargs="*")
    s.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            cfg = RunConfig(order=args.order, prec=args.prec, n_max=args.nmax,
                            suites=tuple(args.suite) if args.suite else SUITES,
                            output="json" if args.json else "text", seed=args.seed)
            report = cmd_verify(cfg)
            if args.json:
                print(json.dumps(report.to_json(), indent=2))
            else:
                print(report.to_text())
            return 0 if report.passed else 1
        print(cmd_show(args.what, args.args, args.json))
        return 0
    except (ConfigError, ValueError) as exc:
        print(f"apery8: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
