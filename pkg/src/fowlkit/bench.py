"""Phase timing and scaling checks for the benchmark programs."""

from __future__ import annotations

import gc
import math
import statistics
import time
from dataclasses import asdict, dataclass, field

from ._deep import run_deep
from .errors import DegenerateTiming
from .gen import BenchSpec, resolve
from .langs import language
from .session import Session
from .terms import STATS, node_count

PHASES = ("read_ms", "expand_ms", "elaborate_ms")


@dataclass
class PhaseTimes:
    read_ms: float
    expand_ms: float
    elaborate_ms: float
    node_count: int
    terms_allocated: int  # Terms created during elaboration

    @property
    def total_ms(self) -> float:
        return self.read_ms + self.expand_ms + self.elaborate_ms


def time_phases(text: str, lang_name: str) -> PhaseTimes:
    """Read, expand and elaborate ``text`` once in a fresh session."""
    return run_deep(_time_phases, text, lang_name)


def _time_phases(text: str, lang_name: str) -> PhaseTimes:
    clock = time.perf_counter
    with Session(language(lang_name)) as s:
        t0 = clock()
        forms = s.read(text)
        t1 = clock()
        terms = s.expand_program(forms)
        t2 = clock()
        before = STATS.terms
        s.elaborate(terms)
        t3 = clock()
        allocated = STATS.terms - before
    nodes = sum(node_count(t) for t in terms)
    return PhaseTimes((t1 - t0) * 1e3, (t2 - t1) * 1e3, (t3 - t2) * 1e3, nodes, allocated)


@dataclass
class TimingReport:
    name: str
    language: str
    size: int
    phases: dict[str, float]       # mean per phase, ms
    mean_ms: float                 # mean total time, ms
    stddev_ms: float
    samples: list[float]           # total time per measured repetition, ms
    node_count: int
    allocations: int
    warmups: int
    phase_samples: dict[str, list[float]] = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("phase_samples")
        return d


def bench_run(spec: BenchSpec | str, reps: int = 10, warmups: int = 3,
              collect_garbage: bool = False) -> TimingReport:
    """Time ``spec`` ``reps`` times after ``warmups`` discarded runs.

    The cyclic garbage collector is paused inside each timed run unless
    ``collect_garbage`` is set, as ``timeit`` does.
    """
    if isinstance(spec, str):
        spec = resolve(spec)
    if reps < 3:
        raise ValueError("at least 3 repetitions are required")
    if warmups < 0:
        raise ValueError("warmups must be non-negative")
    text = spec.generate(spec.size)
    runs = []
    for i in range(warmups + reps):
        gc.collect()
        enabled = gc.isenabled()
        if not collect_garbage:
            gc.disable()
        try:
            r = time_phases(text, spec.language)
        finally:
            if enabled:
                gc.enable()
        if i >= warmups:
            runs.append(r)
    per_phase = {p: [getattr(r, p) for r in runs] for p in PHASES}
    totals = [r.total_ms for r in runs]
    return TimingReport(
        name=spec.name, language=spec.language, size=spec.size,
        phases={p: statistics.fmean(v) for p, v in per_phase.items()},
        mean_ms=statistics.fmean(totals), stddev_ms=statistics.stdev(totals),
        samples=totals, node_count=runs[0].node_count,
        allocations=runs[0].terms_allocated, warmups=warmups,
        phase_samples=per_phase,
    )


@dataclass(frozen=True)
class ScalingResult:
    exponent: float
    max_exponent: float
    size_ratio: float
    time_ratio: float

    @property
    def passed(self) -> bool:
        return self.exponent <= self.max_exponent


def timer_resolution_ms() -> float:
    return time.get_clock_info("perf_counter").resolution * 1e3


def fitted_exponent(small_ms: float, large_ms: float, size_ratio: float) -> float:
    """Exponent k with ``large / small == size_ratio ** k``."""
    if size_ratio <= 1:
        raise ValueError("size ratio must exceed 1")
    if small_ms <= timer_resolution_ms() or large_ms <= 0:
        raise DegenerateTiming(f"time {small_ms:.6f} ms is below the timer resolution")
    return math.log(large_ms / small_ms) / math.log(size_ratio)


def scaling_check(small: TimingReport | float, large: TimingReport | float,
                  size_ratio: float, max_exponent: float = 1.35,
                  phase: str = "elaborate_ms") -> ScalingResult:
    """Fit the growth exponent of ``phase`` between two reports (or raw ms)."""
    a = small.phases[phase] if isinstance(small, TimingReport) else float(small)
    b = large.phases[phase] if isinstance(large, TimingReport) else float(large)
    k = fitted_exponent(a, b, size_ratio)
    return ScalingResult(k, max_exponent, size_ratio, b / a)
