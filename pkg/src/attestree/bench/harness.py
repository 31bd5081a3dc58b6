"""Measurement harness for circuit compilation, setup and proving.

Grid points run sequentially in-process and single-threaded (the whole
pipeline is), so wall times are comparable across rows.  Peak memory is
the process resident-set high-water mark, which only grows over a run;
treat it as an upper bound per row, not an exact figure.  Constraint
counts are exact and reproducible; times are medians over the configured
repetitions with the relative spread recorded alongside.
"""

from __future__ import annotations

import hashlib
import io
import random
import resource
import statistics
import sys
import time
from dataclasses import dataclass, field

from ..attestation.chains import chains_from_tree
from ..attestation.processspec import ProcessSpec
from ..crypto import eddsa
from ..snark import groth16
from ..snark.relation import RelationParams, build_witness, synthesize

CSV_COLUMNS = [
    "l", "n", "total_sigs", "constraints", "compile_ms", "setup_ms", "prove_ms",
    "peak_mem_mb", "status",
]
# appended after the required schema so rows stay parseable as a superset
CSV_EXTRA_COLUMNS = ["sig_constraints", "prove_spread_pct"]


class BenchError(ValueError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    grid: tuple[tuple[int, int], ...]  # (chain count, height) points
    repetitions: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise BenchError("repetitions must be at least 1")
        if not self.grid:
            raise BenchError("empty grid")


@dataclass
class BenchRow:
    l: int
    n: int
    total_sigs: int
    constraints: int | None = None
    compile_ms: float | None = None
    setup_ms: float | None = None
    prove_ms: float | None = None
    peak_mem_mb: float | None = None
    status: str = "ok"
    sig_constraints: int | None = None
    prove_spread_pct: float | None = None


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    fits: dict[str, float] = field(default_factory=dict)

    def sorted_rows(self) -> list[BenchRow]:
        return sorted(self.rows, key=lambda r: (r.total_sigs, r.l, r.n))


def make_grid_spec(l: int, n: int) -> ProcessSpec:
    """Synthetic reference-free phase: one author role at depth n-1 issuing
    all l documents, so every chain is naturally height n and proving cost
    is driven by the signature count alone."""
    doctypes = tuple((f"D{i}", 1 << i) for i in range(l))
    universe = (1 << l) - 1
    roles = [("root", None, universe)]
    for depth in range(1, n):
        parent = "root" if depth == 1 else f"level{depth - 1}"
        roles.append((f"level{depth}", parent, universe))
    author = "root" if n == 1 else f"level{n - 1}"
    documents = tuple((f"D{i}", author, ()) for i in range(l))
    spec = ProcessSpec(
        name=f"grid-l{l}-n{n}",
        doctypes=doctypes,
        roles=tuple(roles),
        documents=documents,
        height=n,
    )
    spec.validate()
    return spec


def _peak_mem_mb() -> float:
    peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return peak_kb / 1024.0


def _median_ms(samples: list[float]) -> tuple[float, float]:
    med = statistics.median(samples)
    spread = 0.0 if med == 0 else (max(samples) - min(samples)) / med * 100.0
    return med * 1000.0, spread


def _measure_point(l: int, n: int, repetitions: int, seed: int) -> BenchRow:
    row = BenchRow(l=l, n=n, total_sigs=l * n)
    spec = make_grid_spec(l, n)
    params = RelationParams.from_spec(spec)
    keys = {
        rid: eddsa.kgen(eddsa.derive_seed(b"bench", str(seed).encode(), rid.encode()))
        for rid in spec.role_ids()
    }
    payloads = {
        code: hashlib.sha256(f"bench/{seed}/{name}".encode()).digest()
        for name, code in spec.doctypes
    }
    chains = chains_from_tree(spec.tree(), keys, payloads, spec.hash_config)
    rpk = keys["root"].pk
    context = spec.content_hash()

    compile_samples, setup_samples, prove_samples = [], [], []
    cs0 = None
    for rep in range(repetitions):
        t0 = time.perf_counter()
        cs0 = synthesize(params)
        compile_samples.append(time.perf_counter() - t0)
    row.constraints = cs0.num_constraints
    row.sig_constraints = cs0.cost_breakdown().get("signature", 0)

    rng = random.Random(seed)
    pk = None
    for rep in range(repetitions):
        t0 = time.perf_counter()
        pk, vk = groth16.setup(cs0, context, rng)
        setup_samples.append(time.perf_counter() - t0)
    for rep in range(repetitions):
        csw = build_witness(params, chains, rpk)
        t0 = time.perf_counter()
        groth16.prove(pk, csw, context, rng)
        prove_samples.append(time.perf_counter() - t0)

    row.compile_ms, _ = _median_ms(compile_samples)
    row.setup_ms, _ = _median_ms(setup_samples)
    row.prove_ms, row.prove_spread_pct = _median_ms(prove_samples)
    row.peak_mem_mb = _peak_mem_mb()
    return row


def linear_fit_r2(xs: list[float], ys: list[float]) -> float:
    """R-squared of the least-squares line through (xs, ys)."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise BenchError("need at least two points for a fit")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0:
        raise BenchError("degenerate fit: all x equal")
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    if ss_tot == 0:
        return 1.0
    return 1.0 - ss_res / ss_tot


def run_scaling(cfg: BenchConfig, progress: bool = False) -> BenchReport:
    """Measure every grid point; out-of-memory marks the row skipped and
    the run continues."""
    report = BenchReport()
    for l, n in cfg.grid:
        if progress:
            print(f"[bench] measuring l={l} n={n} ...", file=sys.stderr, flush=True)
        try:
            row = _measure_point(l, n, cfg.repetitions, cfg.seed)
        except MemoryError:
            row = BenchRow(l=l, n=n, total_sigs=l * n, status="skipped")
        report.rows.append(row)
    report.rows = report.sorted_rows()
    ok_rows = [r for r in report.rows if r.status == "ok"]
    if len(ok_rows) >= 2:
        xs = [float(r.total_sigs) for r in ok_rows]
        report.fits["prove_ms_vs_total_sigs_r2"] = linear_fit_r2(xs, [r.prove_ms for r in ok_rows])
        report.fits["sig_constraints_vs_total_sigs_r2"] = linear_fit_r2(
            xs, [float(r.sig_constraints) for r in ok_rows]
        )
    return report


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def emit_table(report: BenchReport, format: str = "csv") -> str:
    """Render the report; csv column order is stable and parses back."""
    columns = CSV_COLUMNS + CSV_EXTRA_COLUMNS
    rows = [[_cell(getattr(r, c)) for c in columns] for r in report.sorted_rows()]
    if format == "csv":
        out = io.StringIO()
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
        return out.getvalue()
    if format == "markdown":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        lines.extend("| " + " | ".join(row) + " |" for row in rows)
        if report.fits:
            lines.append("")
            for name, value in sorted(report.fits.items()):
                lines.append(f"- {name}: {value:.4f}")
        return "\n".join(lines) + "\n"
    raise BenchError(f"unknown table format {format!r}")


def parse_csv(text: str) -> BenchReport:
    lines = [ln for ln in text.strip().splitlines() if ln]
    header = lines[0].split(",")
    if header[: len(CSV_COLUMNS)] != CSV_COLUMNS:
        raise BenchError("unexpected CSV header")
    report = BenchReport()
    for ln in lines[1:]:
        cells = dict(zip(header, ln.split(",")))

        def get(name, conv):
            v = cells.get(name, "")
            return None if v == "" else conv(v)

        report.rows.append(BenchRow(
            l=int(cells["l"]), n=int(cells["n"]), total_sigs=int(cells["total_sigs"]),
            constraints=get("constraints", int),
            compile_ms=get("compile_ms", float),
            setup_ms=get("setup_ms", float),
            prove_ms=get("prove_ms", float),
            peak_mem_mb=get("peak_mem_mb", float),
            status=cells.get("status", "ok"),
            sig_constraints=get("sig_constraints", int),
            prove_spread_pct=get("prove_spread_pct", float),
        ))
    return report
