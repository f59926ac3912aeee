"""Grid surveys over (k, p) for a fixed odd n, with JSON and CSV reports."""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import asdict, dataclass, field
import io
import json
import logging
import os
from math import gcd
from pathlib import Path

from .arith import primes_up_to
from .certifier import certify_instance, cross_validate
from .diophantine import proposition_pb_verdict
from .errors import ConfigInvalid, IOFailure, OddClassError, OracleMismatch
from .field import build_instance
from .qform import DEFAULT_ENUMERATION_BOUND

log = logging.getLogger(__name__)

SCHEMA = 1
WORKERS_ENV = "ODDCLASS_WORKERS"

ROW_FIELDS = (
    "k", "p", "n", "d", "m", "D", "certified", "failed_condition", "claimed_order",
    "oracle_order", "h", "probable_prime", "pb_verdict", "error",
)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SurveyConfig:
    n: int = 3
    k_min: int = 1
    k_max: int = 10
    p_max: int = 50
    y_max: int = 40
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
    validate: bool = True
    workers: int = field(default_factory=default_workers)

    def check(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ConfigInvalid(f"n = {self.n} must be odd and >= 3")
        if not 1 <= self.k_min <= self.k_max:
            raise ConfigInvalid(f"empty k range [{self.k_min}, {self.k_max}]")
        if self.p_max < 3:
            raise ConfigInvalid("p_max must be >= 3")
        if self.y_max < 1 or self.enumeration_bound < 1 or self.workers < 1:
            raise ConfigInvalid("y_max, enumeration_bound and workers must be positive")
        return self

    def echo(self) -> dict:
        # workers is deliberately left out: reports must not depend on it
        d = asdict(self)
        d.pop("workers")
        return d


def _parse_bool(v):
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("1", "true", "yes", "on")


def load_config(path, **overrides) -> SurveyConfig:
    """Read a JSON or ``key = value`` config file.

    ``k_range`` may be given as ``[lo, hi]`` or ``"lo..hi"`` in place of
    ``k_min``/``k_max``.
    """
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigInvalid(f"cannot parse config line {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            raw[key] = val
    if not isinstance(raw, dict):
        raise ConfigInvalid("config must be a mapping")
    raw = dict(raw)
    if "k_range" in raw:
        kr = raw.pop("k_range")
        if isinstance(kr, str):
            kr = kr.replace("..", ",").replace("-", ",").split(",")
        try:
            raw["k_min"], raw["k_max"] = (int(x) for x in kr)
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(f"bad k_range {kr!r}") from exc
    raw.update({k: v for k, v in overrides.items() if v is not None})
    known = set(SurveyConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise ConfigInvalid(f"unknown config keys {sorted(unknown)}")
    try:
        kwargs = {k: (_parse_bool(v) if k == "validate" else int(v)) for k, v in raw.items()}
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc
    return SurveyConfig(**kwargs).check()


def _empty_row(k, p, n):
    row = dict.fromkeys(ROW_FIELDS)
    row.update(k=k, p=p, n=n, certified=False)
    return row


def evaluate_pair(k: int, p: int, cfg: SurveyConfig) -> tuple[dict, bool]:
    """One work unit.  Returns (row, mismatch)."""
    row = _empty_row(k, p, cfg.n)
    try:
        inst = build_instance(k, p, cfg.n)
    except OddClassError as exc:
        row["error"] = exc.kind
        return row, False
    cert = certify_instance(inst)
    row.update(
        d=inst.d, m=inst.m, D=inst.D, certified=cert.certified,
        failed_condition=cert.failed_condition, claimed_order=cert.claimed_order,
        probable_prime=inst.probable_prime,
        pb_verdict=proposition_pb_verdict(inst.d, k, p, cfg.y_max).verdict,
    )
    mismatch = False
    if cfg.validate:
        try:
            cert = cross_validate(cert, cfg.enumeration_bound)
        except OracleMismatch as exc:
            cert = exc.certificate
            mismatch = True
            row["error"] = exc.kind
        except OddClassError as exc:
            row["error"] = exc.kind
        row.update(oracle_order=cert.oracle_order, h=cert.class_number)
    return row, mismatch


def _work(args):
    k, p, cfg = args
    return evaluate_pair(k, p, cfg)


def grid(cfg: SurveyConfig) -> list[tuple[int, int]]:
    out = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        for p in primes_up_to(cfg.p_max):
            if p == 2 or gcd(k, p) != 1 or k * k >= p**cfg.n:
                continue
            out.append((k, p))
    return out


@dataclass
class SurveyReport:
    config: dict
    rows: list[dict]
    summary: dict
    schema: int = SCHEMA

    def to_dict(self) -> dict:
        return {"schema": self.schema, "config": self.config, "summary": self.summary, "rows": self.rows}

    @classmethod
    def from_dict(cls, d: dict) -> "SurveyReport":
        return cls(config=d["config"], rows=d["rows"], summary=d["summary"], schema=d["schema"])


def summarize(rows: list[dict], mismatches: int) -> dict:
    built = [r for r in rows if r["d"] is not None]
    per_k: dict[str, int] = {}
    for r in rows:
        per_k.setdefault(str(r["k"]), 0)
        if r["certified"]:
            per_k[str(r["k"])] += 1
    certified = [r for r in built if r["certified"]]
    return {
        "attempted": len(rows),
        "instances_built": len(built),
        "error_rows": len(rows) - len(built),
        "certified_count": len(certified),
        "oracle_matches": sum(1 for r in certified if r["oracle_order"] is not None
                              and r["oracle_order"] == r["claimed_order"]),
        "oracle_mismatches": mismatches,
        "certified_prime_count_per_k": per_k,
    }


def run_survey(cfg: SurveyConfig) -> SurveyReport:
    cfg.check()
    pairs = grid(cfg)
    jobs = [(k, p, cfg) for k, p in pairs]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_work, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        results = [_work(j) for j in jobs]
    results.sort(key=lambda t: (t[0]["k"], t[0]["p"]))
    rows = [r for r, _ in results]
    mismatches = sum(1 for _, mm in results if mm)
    if mismatches:
        log.error("survey found %d oracle mismatches", mismatches)
    return SurveyReport(cfg.echo(), rows, summarize(rows, mismatches))


def report_json(report: SurveyReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_csv(report: SurveyReport) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in report.rows:
        w.writerow({k: "" if r[k] is None else r[k] for k in ROW_FIELDS})
    return buf.getvalue()


def emit_report(report: SurveyReport, fmt: str = "json", path=None) -> str:
    """Render the report; write it to ``path`` when given (else just return it)."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise IOFailure(f"cannot write report to {path}: {exc}") from exc
    return text


def read_report(path) -> SurveyReport:
    return SurveyReport.from_dict(json.loads(Path(path).read_text()))


_INT_FIELDS = {"k", "p", "n", "d", "m", "D", "claimed_order", "oracle_order", "h"}
_BOOL_FIELDS = {"certified", "probable_prime"}


def read_csv_rows(path) -> list[dict]:
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row = {}
            for k, v in raw.items():
                if v == "":
                    row[k] = None
                elif k in _INT_FIELDS:
                    row[k] = int(v)
                elif k in _BOOL_FIELDS:
                    row[k] = v == "True"
                else:
                    row[k] = v
            rows.append(row)
    return rows
