"""Check runner, parameter sweep, coset ingestion and the command line."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import coset, sasaki
from .coset import CosetSpace
from .scalars import Field, format_scalar, make_field

GROUPS = (2, 3, 4, 5, 6, 7)

GROUP_TITLES = {
    2: "structure equations",
    3: "G2-structure, torsion and connections",
    4: "canonical spinor",
    5: "spinor splitting and holonomy",
    6: "Killing spinors",
    7: "deformation family",
}

# group -> producers of identities; group 7 runs at the configured t, the
# others at the 3-Sasakian metric t = 1
REGISTRY: dict[int, tuple[Callable, ...]] = {
    2: (sasaki.verify_structure,),
    3: (sasaki.verify_g2_torsion, sasaki.verify_connection),
    4: (sasaki.verify_spinor,),
    5: (sasaki.verify_holonomy,),
    6: (sasaki.killing_spinor_check,),
    7: (sasaki.verify_deformation,),
}


class ConfigError(ValueError):
    """Invalid suite configuration or input file (exit status 2)."""


@dataclass(frozen=True)
class SuiteConfig:
    mode: str = "exact"
    t: Fraction = Fraction(1)
    tolerance: float = 1e-9
    sections: tuple = GROUPS
    output: str = "text"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.t <= 0:
            raise ConfigError("t must be positive")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        unknown = [s for s in self.sections if s not in GROUPS]
        if unknown:
            raise ConfigError(f"unknown section {unknown[0]}")
        if self.output not in ("text", "json"):
            raise ConfigError(f"unknown format {self.output!r}")

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "t": str(self.t),
            "tolerance": self.tolerance,
            "sections": list(self.sections),
            "format": self.output,
        }


@dataclass
class CheckResult:
    id: str
    section: int
    paper_ref: str
    status: str
    residual: object  # max-abs error in float mode, exact-zero flag in exact mode
    elapsed: float  # milliseconds
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, with_time: bool = True) -> dict:
        out = asdict(self)
        if not with_time:
            out.pop("elapsed")
        if out["error"] is None:
            out.pop("error")
        return out


def parse_t(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid t {text!r}") from exc


def parse_sections(text: str) -> tuple:
    try:
        values = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError as exc:
        raise ConfigError(f"invalid section list {text!r}") from exc
    return tuple(values)


def _field(cfg: SuiteConfig, t) -> Field:
    return make_field(cfg.mode, t, cfg.tolerance)


def _evaluate(ident: sasaki.Identity, section: int, fld: Field) -> CheckResult:
    start = time.perf_counter()
    error = None
    try:
        res = ident.compute()
        ok = sasaki.residual_is_zero(res, fld)
        residual = ok if fld.mode == "exact" else sasaki.residual_size(res)
    except Exception as exc:  # a crashing check is a failing check
        ok, residual, error = False, None, f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1000
    return CheckResult(ident.id, section, ident.statement, "pass" if ok else "fail", residual, elapsed, error)


def run_suite(cfg: SuiteConfig) -> list[CheckResult]:
    """Run every registered check of the selected sections in a fixed order."""
    base = None
    results = []
    for section in sorted(cfg.sections):
        if section == 7:
            model = sasaki.build_model(cfg.t, _field(cfg, cfg.t))
        else:
            if base is None:
                base = sasaki.build_model(1, _field(cfg, 1))
            model = base
        for producer in REGISTRY[section]:
            for ident in producer(model):
                results.append(_evaluate(ident, section, model.field))
    return results


def summarize(results: Sequence[CheckResult]) -> dict:
    passed = sum(r.passed for r in results)
    return {"pass": passed, "fail": len(results) - passed}


def report_json(cfg: SuiteConfig, results: Sequence[CheckResult], with_time: bool = True) -> str:
    doc = {
        "config": cfg.to_json(),
        "results": [r.to_json(with_time) for r in results],
        "summary": summarize(results),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def report_text(results: Sequence[CheckResult]) -> str:
    lines = []
    current = None
    for r in results:
        if r.section != current:
            current = r.section
            lines.append(f"[{current}] {GROUP_TITLES[current]}")
        tail = f"  ({r.error})" if r.error else ""
        if r.residual is not None and not isinstance(r.residual, bool):
            tail = f"  residual={r.residual:.3e}" + tail
        lines.append(f"  {r.status.upper():4}  {r.id:34} {r.paper_ref}{tail}")
    s = summarize(results)
    lines.append(f"{s['pass']} passed, {s['fail']} failed")
    return "\n".join(lines)


# sweep ---------------------------------------------------------------------

SWEEP_COLUMNS = ("t", "s", "scal", "ric_horizontal", "ric_vertical",
                 "ric_c_horizontal", "ric_c_vertical", "dirac", "dirac_squared")


def sweep(t_from, t_to, steps: int) -> list[dict]:
    """Curvature and Dirac data at ``steps`` evenly spaced values of t (endpoints included)."""
    t_from, t_to = parse_t(t_from), parse_t(t_to)
    if not 0 < t_from < t_to:
        raise ConfigError("sweep needs 0 < t_from < t_to")
    if steps < 2:
        raise ConfigError("sweep needs at least 2 steps")
    rows = []
    for k in range(steps):
        t = t_from + (t_to - t_from) * Fraction(k, steps - 1)
        m = sasaki.build_model(t)
        curv = m.curvature_lc
        ric_c = m.ricci_c
        d_psi = coset.dirac(m.levi_civita, m.psi0, m.rep, m.space, m.field)
        dirac = d_psi @ m.psi0
        rows.append({
            "t": t,
            "s": m.s,
            "scal": curv.scal,
            "ric_horizontal": curv.ric_endo[3, 3],
            "ric_vertical": curv.ric_endo[0, 0],
            "ric_c_horizontal": ric_c[3, 3],
            "ric_c_vertical": ric_c[0, 0],
            "dirac": dirac,
            "dirac_squared": dirac * dirac,
        })
    return rows


def _sweep_value(x) -> float:
    return round(float(x), 12)


def sweep_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([str(row["t"])] + [_sweep_value(row[c]) for c in SWEEP_COLUMNS[1:]])
    return buf.getvalue()


def sweep_json(rows: Sequence[dict]) -> str:
    out = []
    for row in rows:
        out.append({c: (str(row[c]) if c == "t" else _sweep_value(row[c])) for c in SWEEP_COLUMNS}
                   | {"exact": {c: format_scalar(row[c]) for c in SWEEP_COLUMNS}})
    return json.dumps(out, indent=2)


# ingestion and dumps -------------------------------------------------------

def ingest_coset(path) -> CosetSpace:
    """Load and validate a coset file; violated invariants raise :class:`ConfigError`."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        space = CosetSpace.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot read coset file: {exc}") from exc
    checks = coset.validate(space)
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise ConfigError("coset violates: " + ", ".join(failed))
    return space


DUMP_OBJECTS = ("omega", "torsion", "gammas", "phi", "coset")


def dump(obj: str, t=1) -> dict | list:
    m = sasaki.build_model(parse_t(t))
    if obj == "omega":
        return m.omega_s.to_json()
    if obj == "torsion":
        return m.torsion.to_json()
    if obj == "gammas":
        return m.rep.to_json()
    if obj == "phi":
        return [[[format_scalar(x) for x in row] for row in p] for p in m.phis]
    if obj == "coset":
        return m.space.to_json()
    raise ConfigError(f"unknown object {obj!r}")


# command line ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sasaki7", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the identity checks")
    v.add_argument("--sections", default=",".join(map(str, GROUPS)),
                   help="comma separated check groups 2..7 (default: all)")
    v.add_argument("--t", default="1", help="deformation parameter s^2 for group 7 (rational)")
    v.add_argument("--mode", choices=("exact", "float"), default="exact")
    v.add_argument("--tol", type=float, default=1e-9, help="zero tolerance in float mode")
    v.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("sweep", help="curvature and Dirac data along the deformation")
    s.add_argument("--t-from", required=True)
    s.add_argument("--t-to", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    d = sub.add_parser("dump", help="print a model object as JSON")
    d.add_argument("--object", choices=DUMP_OBJECTS, required=True)
    d.add_argument("--t", default="1")

    i = sub.add_parser("ingest", help="validate a coset JSON file")
    i.add_argument("file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            cfg = SuiteConfig(args.mode, parse_t(args.t), args.tol, parse_sections(args.sections), args.format)
            results = run_suite(cfg)
            print(report_json(cfg, results) if cfg.output == "json" else report_text(results))
            return 0 if all(r.passed for r in results) else 1
        if args.command == "sweep":
            rows = sweep(args.t_from, args.t_to, args.steps)
            sys.stdout.write(sweep_csv(rows) if args.format == "csv" else sweep_json(rows) + "\n")
            return 0
        if args.command == "dump":
            print(json.dumps(dump(args.object, args.t), indent=2, sort_keys=True, ensure_ascii=False))
            return 0
        space = ingest_coset(args.file)
        print(f"valid coset: dim g = {space.dim_g}, dim h = {space.dim_h}, dim m = {space.dim_m}")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
