"""Benchmark harness: run analyzers over good/bad program pairs and score them.

A test file is YAML with ``title``, ``description``, ``features``, ``bad`` and
``good``; the last two map file names to program text. The extension of a
file selects the analyzer that reads it.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from pathlib import Path

import yaml

from .errors import MalformedTest
from .pipeline import analyze_sources

DEFECT = "mutual-recursion"
ANALYZERS = {"eo": ".eo", "mini": ".mini"}
REQUIRED_KEYS = ("title", "description", "features", "bad", "good")


class Outcome(str, Enum):
    TP = "TP"
    FP = "FP"
    TN = "TN"
    FN = "FN"
    ERR = "ERR"


@dataclass(frozen=True)
class TestCase:
    title: str
    description: str
    features: tuple[str, ...]
    bad: dict
    good: dict
    path: str

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class MetricsRow:
    analyzer: str
    defect: str
    tp: int
    tn: int
    fp: int
    fn: int
    err: int
    accuracy: Decimal
    precision: Decimal
    recall: Decimal
    f1: Decimal

    def as_json(self):
        row = asdict(self)
        for key in ("accuracy", "precision", "recall", "f1"):
            row[key] = float(row[key])
        return row


def load_test_file(path) -> TestCase:
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, yaml.YAMLError) as exc:
        raise MalformedTest(path, f"unreadable: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedTest(path, "top level is not a mapping")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise MalformedTest(path, "missing " + ", ".join(missing))
    for side in ("bad", "good"):
        programs = data[side]
        if not isinstance(programs, dict) or not programs:
            raise MalformedTest(path, f"{side!r} must map file names to programs")
        if not all(isinstance(k, str) and isinstance(v, str) for k, v in programs.items()):
            raise MalformedTest(path, f"{side!r} programs must be text")
        if not any(Path(k).suffix in ANALYZERS.values() for k in programs):
            raise MalformedTest(path, f"{side!r} has no .eo or .mini program")
    features = data["features"] or []
    if isinstance(features, str):
        features = [features]
    return TestCase(str(data["title"]), str(data["description"]).strip(),
                    tuple(str(f) for f in features), dict(data["bad"]),
                    dict(data["good"]), str(path))


def classify(kind: str, verdict: str) -> Outcome:
    """Outcome of one run; ``kind`` is good|bad, ``verdict`` found|clean|error."""
    if verdict == "error":
        return Outcome.ERR
    found = verdict == "found"
    if kind == "bad":
        return Outcome.TP if found else Outcome.FN
    if kind == "good":
        return Outcome.FP if found else Outcome.TN
    raise ValueError(f"unknown program kind {kind!r}")


_STATUS = {
    (Outcome.TP, Outcome.TN): "OK",
    (Outcome.FN, Outcome.TN): "FN",
    (Outcome.TP, Outcome.FP): "FP",
    (Outcome.FN, Outcome.FP): "FF",
}


def detail_status(bad: Outcome, good: Outcome) -> str:
    return _STATUS.get((bad, good), "E")


def percent(num: int, den: int) -> Decimal:
    return ratio(Fraction(num, den) if den else Fraction(0))


def ratio(value: Fraction) -> Decimal:
    """Percentage of an exact ratio, rounded half-up to one decimal."""
    tenths = value * 1000
    whole = tenths.numerator // tenths.denominator
    if tenths - whole >= Fraction(1, 2):
        whole += 1
    return (Decimal(whole) / 10).quantize(Decimal("0.1"))


def compute_metrics(tp, tn, fp, fn, err, analyzer="", defect=DEFECT) -> MetricsRow:
    for n in (tp, tn, fp, fn, err):
        if n < 0:
            raise ValueError("counts must be non-negative")
    p = Fraction(tp, tp + fp) if tp + fp else Fraction(0)
    r = Fraction(tp, tp + fn) if tp + fn else Fraction(0)
    f1 = 2 * p * r / (p + r) if p + r else Fraction(0)
    return MetricsRow(analyzer, defect, tp, tn, fp, fn, err,
                      percent(tp + tn, tp + tn + fp + fn + err), ratio(p), ratio(r), ratio(f1))


def fmt_percent(value: Decimal) -> str:
    return f"{value:.1f}%"


# -- running ------------------------------------------------------------------

@dataclass(frozen=True)
class ProgramResult:
    analyzer: str
    kind: str  # bad | good
    outcome: Outcome
    messages: tuple[str, ...] = ()
    error: str | None = None


@dataclass(frozen=True)
class CaseResult:
    path: str
    results: tuple[ProgramResult, ...]
    error: str | None = None

    def outcome(self, analyzer, kind):
        for r in self.results:
            if r.analyzer == analyzer and r.kind == kind:
                return r.outcome
        return None


@dataclass
class SuiteResult:
    statistics: list[MetricsRow] = field(default_factory=list)
    details: list[dict] = field(default_factory=list)
    messages: list[dict] = field(default_factory=list)
    analyzers: list[str] = field(default_factory=list)


def _run_program(analyzer, kind, programs):
    ext = ANALYZERS[analyzer]
    units = [(text, name) for name, text in sorted(programs.items()) if Path(name).suffix == ext]
    if not units:
        return ProgramResult(analyzer, kind, Outcome.ERR, error=f"no {ext} program")
    try:
        _, reports = analyze_sources(units)
    except Exception as exc:  # any crash of the analyzer is an ERR outcome
        return ProgramResult(analyzer, kind, Outcome.ERR, error=f"{type(exc).__name__}: {exc}")
    verdict = "found" if reports else "clean"
    return ProgramResult(analyzer, kind, classify(kind, verdict),
                         tuple(r.one_line() for r in reports))


def run_case(path, analyzers=tuple(ANALYZERS), label=None) -> CaseResult:
    label = label or str(path)
    try:
        case = load_test_file(path)
    except MalformedTest as exc:
        errs = tuple(ProgramResult(a, k, Outcome.ERR, error=exc.reason)
                     for a in analyzers for k in ("bad", "good"))
        return CaseResult(label, errs, exc.reason)
    results = []
    for analyzer in analyzers:
        ext = ANALYZERS[analyzer]
        if not any(Path(n).suffix == ext for n in (*case.bad, *case.good)):
            continue  # this language is not part of the test
        results.append(_run_program(analyzer, "bad", case.bad))
        results.append(_run_program(analyzer, "good", case.good))
    return CaseResult(label, tuple(results))


def _run_case_args(args):
    return run_case(*args)


def find_tests(directory) -> list[Path]:
    directory = Path(directory)
    files = [p for p in directory.rglob("*") if p.suffix in (".yml", ".yaml") and p.is_file()]
    return sorted(files, key=lambda p: p.relative_to(directory).as_posix())


def run_suite(directory, analyzers=tuple(ANALYZERS), jobs=1, compare=()) -> SuiteResult:
    """Statistics, details and detection messages for every test file under ``directory``."""
    directory = Path(directory)
    for a in analyzers:
        if a not in ANALYZERS:
            raise ValueError(f"unknown analyzer {a!r}")
    work = [(p, tuple(analyzers), p.relative_to(directory).as_posix()) for p in find_tests(directory)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_case_args, work))
    else:
        cases = [_run_case_args(w) for w in work]
    cases.sort(key=lambda c: c.path)
    external = [load_outcomes(p) for p in compare]
    return summarize(cases, list(analyzers), external)


def summarize(cases, analyzers, external=()) -> SuiteResult:
    suite = SuiteResult(analyzers=list(analyzers) + [e["analyzer"] for e in external])
    counts = {a: Counter() for a in analyzers}
    for case in cases:
        row = {"file": case.path, "results": {}}
        for a in analyzers:
            bad, good = case.outcome(a, "bad"), case.outcome(a, "good")
            if bad is None:
                continue
            counts[a][bad] += 1
            counts[a][good] += 1
            row["results"][a] = {"bad": bad.value, "good": good.value,
                                 "status": detail_status(bad, good)}
        for ext in external:
            got = _external_result(ext["results"], case.path)
            if got is None:
                continue
            bad, good = Outcome(got["bad"]), Outcome(got["good"])
            row["results"][ext["analyzer"]] = {"bad": bad.value, "good": good.value,
                                               "status": detail_status(bad, good)}
        suite.details.append(row)
        for r in case.results:
            stem = Path(case.path).with_suffix("").as_posix()
            for text in r.messages:
                suite.messages.append({"analyzer": r.analyzer, "program": f"{stem}-{r.kind}",
                                       "text": text})
            if r.error is not None:
                suite.messages.append({"analyzer": r.analyzer, "program": f"{stem}-{r.kind}",
                                       "text": f"error: {r.error}"})
    for ext in external:
        c = Counter()
        for got in ext["results"].values():
            c[Outcome(got["bad"])] += 1
            c[Outcome(got["good"])] += 1
        counts[ext["analyzer"]] = c
    for name in sorted(counts):
        c = counts[name]
        args = (c[Outcome.TP], c[Outcome.TN], c[Outcome.FP], c[Outcome.FN], c[Outcome.ERR])
        suite.statistics.append(compute_metrics(*args, analyzer=name, defect=DEFECT))
        suite.statistics.append(compute_metrics(*args, analyzer=name, defect="All"))
    return suite


def _external_result(results, path):
    # outcome files may be keyed relative to a parent of the test directory
    if path in results:
        return results[path]
    for key in sorted(results):
        if key.endswith("/" + path) or path.endswith("/" + key):
            return results[key]
    return None


def load_outcomes(path) -> dict:
    """Outcomes of an external tool: ``{"analyzer", "results": {file: {bad, good}}}``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or "analyzer" not in data or "results" not in data:
        raise ValueError(f"{path}: expected keys 'analyzer' and 'results'")
    for name, got in data["results"].items():
        for kind in ("bad", "good"):
            Outcome(got[kind])
    return data


# -- rendering ----------------------------------------------------------------

_HEADER = ["Analyzer", "Defect title", "TP", "TN", "FP", "FN", "ERR",
           "Accuracy", "Precision", "Recall", "F1 score"]


def _table(header, rows):
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return lines


def render_markdown(suite: SuiteResult) -> str:
    out = ["# Benchmark report", "", "## Statistics", ""]
    stats = [[r.analyzer, r.defect, r.tp, r.tn, r.fp, r.fn, r.err,
              fmt_percent(r.accuracy), fmt_percent(r.precision),
              fmt_percent(r.recall), fmt_percent(r.f1)] for r in suite.statistics]
    out += _table(_HEADER, stats) if stats else ["(no tests)"]
    out += ["", "TP: warnings exist and should. TN: no warnings and none expected.",
            "FN: no warnings but some expected. FP: warnings exist but none expected.",
            "ERR: errors or exceptions during analysis.", "", "## Details", ""]
    if suite.details:
        rows = [[d["file"]] + [d["results"].get(a, {}).get("status", "-") for a in suite.analyzers]
                for d in suite.details]
        out += _table(["File"] + suite.analyzers, rows)
    else:
        out.append("(no tests)")
    out += ["", "OK = TP and TN. FN = FN and TN. FP = TP and FP. FF = FN and FP. E = error.",
            "", "## Detection messages", ""]
    for analyzer in suite.analyzers:
        msgs = [m for m in suite.messages if m["analyzer"] == analyzer]
        if not msgs:
            continue
        out += [f"### {analyzer}", ""]
        out += [f"- {m['program']}: {m['text']}" for m in msgs]
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def render_json(suite: SuiteResult) -> str:
    doc = {
        "statistics": [r.as_json() for r in suite.statistics],
        "details": suite.details,
        "messages": suite.messages,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
