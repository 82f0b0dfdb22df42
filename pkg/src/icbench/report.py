"""CSV and markdown rendering of bias estimates and decomposition summaries."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

from .analytic import Scenario
from .distributions import Family

__all__ = [
    "Method",
    "BiasReport",
    "CSV_HEADER",
    "to_csv",
    "read_csv",
    "to_markdown_table",
    "decomposition_to_csv",
    "TABLE_SIZES",
]

TABLE_SIZES = (25, 100, 400, 1600)


class Method(str, Enum):
    TRUE = "true"
    AIC = "aic"
    SUGIURA = "sugiura"
    TIC = "tic"
    TIC_HAT = "tic_hat"
    CN = "cn"
    BN = "bn"

    def __str__(self):
        return self.value


_ORDER = {m: i for i, m in enumerate(Method)}
_LABELS = {
    Method.TRUE: "True",
    Method.AIC: "AIC",
    Method.SUGIURA: "AICc",
    Method.TIC: "IJ^-1",
    Method.TIC_HAT: "est. IJ^-1",
    Method.CN: "C_n",
    Method.BN: "B_n",
}
STOCHASTIC = frozenset({Method.TRUE, Method.TIC_HAT, Method.BN})


@dataclass(frozen=True)
class BiasReport:
    scenario: Scenario
    n: int
    method: Method
    estimate: float | None
    stderr: float | None = None
    reps: int = 1
    nb: int | None = None
    seed: int = 0
    unavailable: bool = False

    def sort_key(self):
        s = self.scenario
        return (s.truth.value, s.model.value, self.n, _ORDER[self.method])


CSV_HEADER = ("scenario", "model", "n", "method", "estimate", "stderr", "reps", "nb", "seed")


def _num(v) -> str:
    return "" if v is None else f"{v:#.6g}"


def to_csv(reports) -> str:
    """One row per report, sorted by (data family, model, n, method)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(reports, key=BiasReport.sort_key):
        w.writerow([
            r.scenario.truth.value,
            r.scenario.model.value,
            r.n,
            r.method.value,
            "" if r.unavailable else _num(r.estimate),
            _num(r.stderr),
            r.reps,
            "" if r.nb is None else r.nb,
            r.seed,
        ])
    return buf.getvalue()


def read_csv(text: str) -> list[BiasReport]:
    """Inverse of :func:`to_csv` up to the printed precision."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        est = row["estimate"]
        out.append(BiasReport(
            scenario=Scenario(Family(row["scenario"]), Family(row["model"])),
            n=int(row["n"]),
            method=Method(row["method"]),
            estimate=float(est) if est else None,
            stderr=float(row["stderr"]) if row["stderr"] else None,
            reps=int(row["reps"]),
            nb=int(row["nb"]) if row["nb"] else None,
            seed=int(row["seed"]),
            unavailable=not est,
        ))
    return out


def _md(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for k, row in enumerate(rows):
        cells = [c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        lines.append("| " + " | ".join(cells) + " |")
        if k == 0:
            lines.append("|" + "|".join(("-" * (w + 1) + ":") if i else ("-" * (w + 2)) for i, w in enumerate(widths)) + "|")
    return "\n".join(lines) + "\n"


def _methods_table(reports, model: Family, methods, sizes, truths) -> str:
    cells = {}
    for r in reports:
        if r.scenario.model is model:
            cells[(r.method, r.scenario.truth, r.n)] = r
    rows = [["Method"] + [f"{t.label} {n}" for t in truths for n in sizes]]
    present = {m for m, _, _ in cells}
    for m in methods:
        if m is Method.SUGIURA and m not in present:
            continue
        row = [_LABELS[m]]
        for t in truths:
            for n in sizes:
                r = cells.get((m, t, n))
                if r is None:
                    row.append("")
                elif r.unavailable:
                    row.append("---")
                else:
                    row.append(f"{r.estimate:.3f}")
        rows.append(row)
    return _md(rows)


_DECOMP_ROWS = (("c1", "C1"), ("c2", "C2"), ("c3", "C3"), ("c", "C"), ("c13", "C1+C3"))


def _decomposition_table(summaries, sizes) -> str:
    by = {(s.scenario, s.n): s for s in summaries}
    header = ["D", "M", "Term"] + [f"mean {n}" for n in sizes] + [f"var {n}" for n in sizes]
    rows = [header]
    scenarios = sorted({s for s, _ in by}, key=_scenario_rank)
    for sc in scenarios:
        for name, label in _DECOMP_ROWS:
            row = [sc.truth.value[0].upper(), sc.model.value[0].upper(), label]
            for stat in ("mean", "var"):
                for n in sizes:
                    s = by.get((sc, n))
                    row.append("" if s is None else f"{getattr(s, stat)(name):.3f}")
            rows.append(row)
    return _md(rows)


def _scenario_rank(sc: Scenario):
    order = [(Family.GAUSS, Family.GAUSS), (Family.LAPLACE, Family.LAPLACE),
             (Family.LAPLACE, Family.GAUSS), (Family.GAUSS, Family.LAPLACE)]
    return order.index((sc.truth, sc.model))


TABLE1_METHODS = (Method.TRUE, Method.AIC, Method.SUGIURA, Method.TIC, Method.TIC_HAT, Method.CN, Method.BN)
TABLE2_METHODS = (Method.TRUE, Method.AIC, Method.SUGIURA, Method.TIC, Method.CN, Method.BN)


def to_markdown_table(items, layout: str, sizes=TABLE_SIZES, truths=tuple(Family)) -> str:
    """Render one of the layouts ``table1``, ``table2`` or ``table3``.

    Tables 1 and 2 take BiasReports (Gaussian and Laplace model respectively);
    ``table3`` takes DecompositionSummary objects.  Numbers show 3 decimals and
    an unavailable TIC cell shows ``---``.  ``truths`` selects the data
    families shown as column groups.
    """
    layout = layout.lower()
    if layout == "table1":
        return _methods_table(items, Family.GAUSS, TABLE1_METHODS, sizes, truths)
    if layout == "table2":
        return _methods_table(items, Family.LAPLACE, TABLE2_METHODS, sizes, truths)
    if layout == "table3":
        return _decomposition_table(items, sizes)
    raise ValueError(f"unknown layout {layout!r}")


def decomposition_to_csv(summaries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scenario", "model", "n", "term", "mean", "variance", "reps", "seed"])
    for s in sorted(summaries, key=lambda s: (_scenario_rank(s.scenario), s.n)):
        for name, _ in _DECOMP_ROWS:
            w.writerow([s.scenario.truth.value, s.scenario.model.value, s.n, name,
                        _num(s.mean(name)), _num(s.var(name)), s.reps, s.seed])
    return buf.getvalue()
