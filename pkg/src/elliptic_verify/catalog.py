"""Registry of verified identities and the suite runner.

Records are loaded from the packaged JSON manifest.  Each record names a
left-hand and a right-hand plan (see ``identities``), a tolerance, a cost
class and tags.  ``evaluate`` runs one record; ``run_suite`` runs a filtered
selection, possibly in parallel, and returns reports in id order.
"""

from __future__ import annotations

import builtins
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from types import MappingProxyType

from .errors import DivergenceError, DomainError, NonConvergenceError, QuadratureError
from .identities import PLANS, expression_ops, run_plan

__all__ = [
    "PlanRef",
    "IdentityRecord",
    "VerificationReport",
    "SuiteSummary",
    "SuiteResult",
    "UnknownIdentityError",
    "FilterError",
    "load_registry",
    "list_records",
    "get_record",
    "evaluate",
    "run_suite",
    "independence_audit",
    "report_line",
    "summary_line",
]

COST_CLASSES = ("fast", "slow", "mc")
MIN_GRID_POINTS = 5


class UnknownIdentityError(KeyError):
    """No record with the requested id."""


class FilterError(ValueError):
    """Malformed filter expression."""


@dataclass(frozen=True)
class PlanRef:
    plan: str
    params: MappingProxyType

    @classmethod
    def from_json(cls, obj):
        return cls(obj["plan"], MappingProxyType(dict(obj.get("params", {}))))

    def ops(self):
        """All operations this side relies on, top-level first."""
        if self.plan == "expr":
            return ("expr", *sorted(expression_ops(self.params["expr"])))
        return PLANS[self.plan].ops

    def to_dict(self):
        return {"plan": self.plan, "params": dict(self.params)}


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    section: str
    lhs: PlanRef
    rhs: PlanRef
    tol: float
    cost_class: str
    tags: tuple
    tol_mode: str = "relative"
    compare: str = "real"
    grid: tuple = ()

    @classmethod
    def from_json(cls, obj):
        return cls(
            id=obj["id"],
            section=obj["section"],
            lhs=PlanRef.from_json(obj["lhs"]),
            rhs=PlanRef.from_json(obj["rhs"]),
            tol=float(obj["tol"]),
            cost_class=obj["cost_class"],
            tags=tuple(obj.get("tags", ())),
            tol_mode=obj.get("tol_mode", "relative"),
            compare=obj.get("compare", "real"),
            grid=tuple(MappingProxyType(dict(p)) for p in obj.get("grid", ())),
        )

    def to_dict(self):
        out = {
            "id": self.id,
            "section": self.section,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "tol": self.tol,
            "tol_mode": self.tol_mode,
            "cost_class": self.cost_class,
            "compare": self.compare,
            "tags": [*self.tags],
        }
        if self.grid:
            out["grid"] = [dict(p) for p in self.grid]
        return out


@dataclass(frozen=True)
class VerificationReport:
    id: str
    lhs_value: object
    rhs_value: object
    abs_diff: float
    rel_diff: float
    tol: float
    passed: bool
    runtime_ms: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self, timings=False):
        return {
            "id": self.id,
            "lhs_value": _jsonable(self.lhs_value),
            "rhs_value": _jsonable(self.rhs_value),
            "abs_diff": _jsonable(self.abs_diff),
            "rel_diff": _jsonable(self.rel_diff),
            "tol": _jsonable(self.tol),
            "pass": self.passed,
            "runtime_ms": _jsonable(self.runtime_ms) if timings else None,
            "diagnostics": _jsonable(self.diagnostics),
        }


@dataclass(frozen=True)
class SuiteSummary:
    total: int
    passed: int
    failed: int
    runtime_ms: float

    def to_dict(self, timings=False):
        return {
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "runtime_ms": self.runtime_ms if timings else None,
        }


@dataclass(frozen=True)
class SuiteResult:
    reports: tuple
    summary: SuiteSummary

    @property
    def all_passed(self):
        return self.summary.failed == 0


def _jsonable(v):
    """Plain JSON value: complex as [re, im], non-finite numbers as null."""
    if v is None or isinstance(v, (bool, str, int)):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (builtins.list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        if v.imag == 0.0:
            return _jsonable(v.real)
        return [_jsonable(v.real), _jsonable(v.imag)]
    try:
        f = float(v)
    except TypeError:
        try:
            return _jsonable(complex(v))
        except TypeError:
            return str(v)
    return f if math.isfinite(f) else None


def report_line(report, timings=False):
    """One JSON line (no trailing newline) for a report."""
    return json.dumps(report.to_dict(timings), ensure_ascii=False, allow_nan=False)


def summary_line(summary, timings=False):
    return json.dumps({"summary": summary.to_dict(timings)}, ensure_ascii=False, allow_nan=False)


# ---------------------------------------------------------------------------
# registry


@lru_cache(maxsize=1)
def load_registry():
    """All records, sorted by id; validated on first load."""
    text = resources.files(__package__).joinpath("data/identities.json").read_text(encoding="utf-8")
    records = tuple(sorted((IdentityRecord.from_json(o) for o in json.loads(text)), key=lambda r: r.id))
    _validate(records)
    return records


def _validate(records):
    seen = set()
    for r in records:
        if r.id in seen:
            raise ValueError(f"duplicate identity id {r.id!r}")
        seen.add(r.id)
        for side in (r.lhs, r.rhs):
            if side.plan != "expr" and side.plan not in PLANS:
                raise ValueError(f"{r.id}: unknown plan {side.plan!r}")
        if r.cost_class not in COST_CLASSES:
            raise ValueError(f"{r.id}: bad cost class {r.cost_class!r}")
        if r.tol_mode not in ("relative", "sigma") or r.compare not in ("real", "parts", "real_part"):
            raise ValueError(f"{r.id}: bad tolerance mode or comparison")
        if "function-valued" in r.tags and len(r.grid) < MIN_GRID_POINTS:
            raise ValueError(f"{r.id}: function-valued records need a grid of at least {MIN_GRID_POINTS} points")


def _parse_filter(expr):
    """'key:value[,key:value...]' with keys tag, section, cost, id; all terms must hold."""
    if expr is None or str(expr).strip() == "":
        return []
    terms = []
    for part in str(expr).split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition(":")
        if not sep:
            raise FilterError(f"filter term {part!r} is not of the form key:value")
        key = key.strip().lower()
        value = value.strip().strip("\"'")
        if key not in ("tag", "section", "cost", "id"):
            raise FilterError(f"unknown filter key {key!r}")
        terms.append((key, value))
    return terms


def _matches(record, terms):
    for key, value in terms:
        if key == "tag" and value not in record.tags:
            return False
        if key == "section" and record.section != value:
            return False
        if key == "cost" and record.cost_class != value:
            return False
        if key == "id" and record.id != value:
            return False
    return True


def list_records(filter=None):
    """Records matching ``filter``, in id order."""
    terms = _parse_filter(filter)
    return [r for r in load_registry() if _matches(r, terms)]


def get_record(identity_id):
    for r in load_registry():
        if r.id == identity_id:
            return r
    raise UnknownIdentityError(identity_id)


# ---------------------------------------------------------------------------
# evaluation

_NUMERIC_ERRORS = (NonConvergenceError, QuadratureError, DivergenceError, DomainError, ArithmeticError)


def _side_params(side, point, mc_overrides):
    params = {**side.params, **point}
    if side.plan == "mc":
        params.update({k: v for k, v in mc_overrides.items() if v is not None})
    return params


def _difference(lhs, rhs, compare):
    a, b = complex(lhs), complex(rhs)
    if compare == "parts":
        return max(abs(a.real - b.real), abs(a.imag - b.imag))
    if compare == "real_part":
        return abs(a.real - b.real)
    return abs(a - b)


def _plain(v):
    v = complex(v)
    return v.real if v.imag == 0.0 else v


def evaluate(identity_id, tol_override=None, *, samples=None, seed=None):
    """Evaluate both sides of a record and compare them.

    For grid records the reported values are those at the worst grid point.
    Monte Carlo records use 4 standard errors (``tol`` times the stderr in
    sigma mode); ``samples`` and ``seed`` override the stored values.
    """
    record = get_record(identity_id)
    start = time.perf_counter()
    mc_overrides = {"samples": samples, "seed": seed}
    worst = None
    diagnostics = {"grid_points": len(record.grid) or 1}
    all_converged = True
    error = None
    for point in record.grid or (MappingProxyType({}),):
        point = dict(point)
        try:
            lhs = run_plan(record.lhs.plan, _side_params(record.lhs, point, mc_overrides), record.tol)
            rhs = run_plan(record.rhs.plan, _side_params(record.rhs, point, mc_overrides), record.tol)
        except _NUMERIC_ERRORS as exc:
            error = f"{type(exc).__name__}: {exc}"
            worst = {"point": point, "lhs": None, "rhs": None, "abs": math.inf, "scale": 1.0, "tol": record.tol,
                     "lhs_err": None, "rhs_err": None, "extra": {}}
            all_converged = False
            break
        abs_diff = _difference(lhs.value, rhs.value, record.compare)
        scale = max(1.0, abs(rhs.value))
        if tol_override is not None:
            tol = float(tol_override)
        elif record.tol_mode == "sigma":
            tol = record.tol * lhs.err / scale
        else:
            tol = record.tol
        # a side whose routine stopped short still counts if its own error
        # estimate is inside the tolerance being checked
        all_converged = all_converged and all(
            side.converged or (math.isfinite(side.err) and side.err <= tol * scale) for side in (lhs, rhs)
        )
        ratio = abs_diff / (tol * scale) if tol > 0 else (0.0 if abs_diff == 0 else math.inf)
        if not math.isfinite(abs_diff):
            ratio = math.inf
        if worst is None or ratio > worst["ratio"]:
            worst = {"point": point, "lhs": lhs.value, "rhs": rhs.value, "abs": abs_diff, "scale": scale,
                     "tol": tol, "ratio": ratio, "lhs_err": lhs.err, "rhs_err": rhs.err,
                     "extra": {**rhs.extra, **lhs.extra}}
    runtime_ms = (time.perf_counter() - start) * 1e3

    abs_diff = worst["abs"]
    rel_diff = abs_diff / worst["scale"]
    tol = worst["tol"]
    passed = bool(error is None and all_converged and math.isfinite(abs_diff) and abs_diff <= tol * worst["scale"])
    diagnostics.update({"lhs_err_est": worst["lhs_err"], "rhs_err_est": worst["rhs_err"], "converged": all_converged})
    if record.grid:
        diagnostics["worst_point"] = worst["point"]
    extra = worst["extra"]
    if record.lhs.plan == "mc":
        diagnostics.update({k: extra[k] for k in ("mean", "median_of_means", "stderr", "n_samples", "seed") if k in extra})
    elif "terms_used" in extra:
        diagnostics["terms_used"] = extra["terms_used"]
    if record.compare == "real_part" and worst["lhs"] is not None:
        diagnostics["imag_residual"] = complex(worst["lhs"]).imag - complex(worst["rhs"]).imag
    if error is not None:
        diagnostics["error"] = error
    return VerificationReport(
        id=record.id,
        lhs_value=None if worst["lhs"] is None else _plain(worst["lhs"]),
        rhs_value=None if worst["rhs"] is None else _plain(worst["rhs"]),
        abs_diff=abs_diff,
        rel_diff=rel_diff,
        tol=tol,
        passed=passed,
        runtime_ms=runtime_ms,
        diagnostics=diagnostics,
    )


def run_suite(filter=None, parallelism=1, *, tol_override=None, samples=None, seed=None):
    """Evaluate every record matching ``filter``; reports come back in id order."""
    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    records = list_records(filter)
    start = time.perf_counter()

    def one(r):
        return evaluate(r.id, tol_override, samples=samples, seed=seed)

    if parallelism == 1 or len(records) <= 1:
        reports = [one(r) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            reports = [*pool.map(one, records)]
    reports.sort(key=lambda rep: rep.id)
    n_pass = sum(rep.passed for rep in reports)
    summary = SuiteSummary(len(reports), n_pass, len(reports) - n_pass, (time.perf_counter() - start) * 1e3)
    return SuiteResult(tuple(reports), summary)


# ---------------------------------------------------------------------------
# static checks


def independence_audit(records=None):
    """Violations of the rule that the two sides of a record share no numerical route.

    Checks that the plans differ, that neither side's top-level operation
    appears among the other side's operations, and that a constant computed
    on one side is not computed by the same method on the other.
    """
    problems = []
    for r in load_registry() if records is None else records:
        lhs_ops, rhs_ops = r.lhs.ops(), r.rhs.ops()
        if r.lhs.plan == r.rhs.plan:
            problems.append(f"{r.id}: both sides use plan {r.lhs.plan!r}")
            continue
        if lhs_ops[0] in rhs_ops:
            problems.append(f"{r.id}: right side uses the left side's operation {lhs_ops[0]!r}")
        if rhs_ops[0] != "expr" and rhs_ops[0] in lhs_ops:
            problems.append(f"{r.id}: left side uses the right side's operation {rhs_ops[0]!r}")
        shared = {op for op in set(lhs_ops) & set(rhs_ops) if op.startswith("constants.")}
        if shared:
            problems.append(f"{r.id}: both sides compute {sorted(shared)}")
    return problems


# The operation is named ``list`` in the public interface.
list = list_records  # noqa: A001
