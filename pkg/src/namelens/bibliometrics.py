"""Population dynamics, fractional publication output and venue ratios.

An author's debut year is the earliest year any publication carries their
name; accumulated population by year t counts all debuts up to t. Output uses
fractional counting: a paper with K authors credits 1/K to each author's
class, so yearly totals over all classes (OTH included) equal the yearly
paper count exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import labels as lbl
from .corpus import PublicationRecord
from .errors import DegenerateDataError

Points = Sequence[tuple[float, float]]


@dataclass(frozen=True)
class PopulationSeries:
    """New-author and accumulated head counts per (year, label)."""

    years: tuple[int, ...]  # contiguous range
    new: dict[str, dict[int, int]]
    accumulated: dict[str, dict[int, int]]

    def labels_present(self) -> list[str]:
        return [label for label in lbl.ALL_LABELS if label in self.new]


@dataclass(frozen=True)
class OutputSeries:
    """Fractional publication counts per (year, label)."""

    years: tuple[int, ...]
    values: dict[str, dict[int, float]]

    def labels_present(self) -> list[str]:
        return [label for label in lbl.ALL_LABELS if label in self.values]


@dataclass(frozen=True)
class VenueYearRatio:
    venue: str
    year: int
    count_a: int
    count_b: int
    ratio: float | None  # None when count_b is zero
    venue_size: int  # distinct names over the window, any label


@dataclass(frozen=True)
class VenueRatioSeries:
    group_a: frozenset[str]
    group_b: frozenset[str]
    window: str  # "cumulative" or "per-year"
    rows: tuple[VenueYearRatio, ...]


def _label_of(labels: Mapping[str, str], name: str) -> str:
    return labels.get(name, lbl.OTH)


def population_series(
    records: Iterable[PublicationRecord], labels: Mapping[str, str]
) -> PopulationSeries:
    """Debut-based population counts; empty corpus gives an empty series."""
    debut: dict[str, int] = {}
    seen_years: set[int] = set()
    for record in records:
        seen_years.add(record.year)
        for author in record.authors:
            name = author.normalized
            if name not in debut or record.year < debut[name]:
                debut[name] = record.year
    if not debut:
        return PopulationSeries(years=(), new={}, accumulated={})

    years = tuple(range(min(seen_years), max(seen_years) + 1))
    new: dict[str, dict[int, int]] = {}
    for name, year in debut.items():
        label = _label_of(labels, name)
        series = new.setdefault(label, {y: 0 for y in years})
        series[year] += 1
    accumulated: dict[str, dict[int, int]] = {}
    for label, series in new.items():
        running = 0
        acc: dict[int, int] = {}
        for year in years:
            running += series[year]
            acc[year] = running
        accumulated[label] = acc
    return PopulationSeries(years=years, new=new, accumulated=accumulated)


def output_series(
    records: Iterable[PublicationRecord], labels: Mapping[str, str]
) -> OutputSeries:
    """Fractional output: 1/K of each paper per author, binned by class."""
    values: dict[str, dict[int, float]] = {}
    seen_years: set[int] = set()
    for record in records:
        seen_years.add(record.year)
        share = 1.0 / len(record.authors)
        for author in record.authors:
            label = _label_of(labels, author.normalized)
            per_year = values.setdefault(label, {})
            per_year[record.year] = per_year.get(record.year, 0.0) + share
    if not seen_years:
        return OutputSeries(years=(), values={})
    years = tuple(range(min(seen_years), max(seen_years) + 1))
    for per_year in values.values():
        for year in years:
            per_year.setdefault(year, 0.0)
    return OutputSeries(years=years, values=values)


@dataclass(frozen=True)
class LogisticFit:
    """Parameters of the growth curve P(t) = pm / (1 + (pm/p0 - 1) e^(-r (t-t0))).

    By construction the curve passes exactly through (t0, p0); pm is the
    carrying capacity and the inflection sits at P = pm / 2.
    """

    p0: float
    pm: float
    r: float
    t0: float
    residual: float  # sum of squared errors
    converged: bool
    iterations: int

    def value(self, t: float) -> float:
        return self.pm / (1.0 + (self.pm / self.p0 - 1.0) * math.exp(-self.r * (t - self.t0)))


def _logistic_curve(theta: np.ndarray, t: np.ndarray, t0: float) -> np.ndarray:
    p0, pm, r = np.exp(theta)
    return pm / (1.0 + (pm / p0 - 1.0) * np.exp(-r * (t - t0)))


def _logistic_jacobian(theta: np.ndarray, t: np.ndarray, t0: float) -> np.ndarray:
    """Partials of the curve w.r.t. the log-parameters (chain rule applied)."""
    p0, pm, r = np.exp(theta)
    tau = t - t0
    e = np.exp(-r * tau)
    q = pm / p0 - 1.0
    d = 1.0 + q * e
    dp0 = pm**2 * e / (p0**2 * d**2)
    dpm = (1.0 - e) / d**2
    dr = pm * q * tau * e / d**2
    return np.column_stack([dp0 * p0, dpm * pm, dr * r])


def fit_logistic(
    points: Points,
    init: tuple[float, float, float] | None = None,
    max_iter: int = 200,
    tol: float = 1e-14,
) -> LogisticFit:
    """Least-squares logistic growth fit by damped Gauss-Newton.

    Parameters are optimized in log space, which keeps them positive. t0 is
    pinned to the first year. Needs at least 4 positive points; a constant
    series raises DegenerateDataError. On a stalled fit the best parameters so
    far are returned with converged=False rather than raising.
    """
    if len(points) < 4:
        raise ValueError("need at least 4 points to fit the growth curve")
    t = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.any(y <= 0):
        raise ValueError("growth values must be positive")
    if float(y.max()) == float(y.min()):
        raise DegenerateDataError("constant series has no growth to fit")
    t0 = float(t[0])

    if init is None:
        init = (float(y[0]), 2.0 * float(y.max()), 0.1)
    theta = np.log(np.array(init, dtype=float))

    residual = _logistic_curve(theta, t, t0) - y
    sse = float(residual @ residual)
    damping = 1e-3
    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        jac = _logistic_jacobian(theta, t, t0)
        gram = jac.T @ jac
        rhs = -jac.T @ residual
        stepped = False
        for _ in range(50):
            try:
                delta = np.linalg.solve(gram + damping * np.eye(3), rhs)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            cand = theta + delta
            cand_residual = _logistic_curve(cand, t, t0) - y
            cand_sse = float(cand_residual @ cand_residual)
            if np.isfinite(cand_sse) and cand_sse <= sse:
                improvement = sse - cand_sse
                theta, residual, sse = cand, cand_residual, cand_sse
                damping = max(damping * 0.3, 1e-12)
                stepped = True
                if improvement <= tol * max(sse, 1e-30) or float(np.abs(delta).max()) < 1e-14:
                    converged = True
                break
            damping *= 10.0
        if converged or not stepped:
            break

    p0, pm, r = (float(v) for v in np.exp(theta))
    if not (pm > p0 and r > 0.0):
        converged = False
    return LogisticFit(
        p0=p0, pm=pm, r=r, t0=t0, residual=sse, converged=converged, iterations=iteration
    )


def inflection_position(fit: LogisticFit, t_last: float, band: float = 0.1) -> str:
    """Classify where t_last sits relative to the inflection point (P = pm/2).

    The band is a fraction of pm on each side of the inflection value.
    """
    value = fit.value(t_last)
    half = fit.pm / 2.0
    if value < half - band * fit.pm:
        return "pre-inflection"
    if value > half + band * fit.pm:
        return "post-inflection"
    return "near"


def venue_ratio_series(
    records: Iterable[PublicationRecord],
    labels: Mapping[str, str],
    group_a: Iterable[str] = lbl.ASIAN_GROUP,
    group_b: Iterable[str] = lbl.EUROPEAN_GROUP,
    venues: Iterable[str] | None = None,
    window: str = "cumulative",
) -> VenueRatioSeries:
    """Per-venue yearly ratio of distinct group-A names to distinct group-B names.

    With the default cumulative window, counts cover all years up to each
    year; per-year counts only that year. The ratio is None whenever the
    group-B count is zero. Venue names are matched case-insensitively.
    """
    set_a = frozenset(group_a)
    set_b = frozenset(group_b)
    if not set_a or not set_b:
        raise ValueError("both groups must be non-empty")
    if set_a & set_b:
        raise ValueError(f"groups must be disjoint, got overlap: {sorted(set_a & set_b)}")
    if window not in ("cumulative", "per-year"):
        raise ValueError(f"unknown window mode: {window!r}")

    wanted = {v.upper() for v in venues} if venues is not None else None
    per_venue: dict[str, dict[int, set[str]]] = {}
    for record in records:
        venue = record.venue.upper()
        if not venue or (wanted is not None and venue not in wanted):
            continue
        by_year = per_venue.setdefault(venue, {})
        names = by_year.setdefault(record.year, set())
        names.update(a.normalized for a in record.authors)

    rows: list[VenueYearRatio] = []
    for venue in sorted(per_venue):
        by_year = per_venue[venue]
        cum_a: set[str] = set()
        cum_b: set[str] = set()
        cum_all: set[str] = set()
        for year in sorted(by_year):
            names = by_year[year]
            year_a = {n for n in names if _label_of(labels, n) in set_a}
            year_b = {n for n in names if _label_of(labels, n) in set_b}
            if window == "cumulative":
                cum_a |= year_a
                cum_b |= year_b
                cum_all |= names
                count_a, count_b, size = len(cum_a), len(cum_b), len(cum_all)
            else:
                count_a, count_b, size = len(year_a), len(year_b), len(names)
            ratio = count_a / count_b if count_b > 0 else None
            rows.append(VenueYearRatio(venue, year, count_a, count_b, ratio, size))
    return VenueRatioSeries(
        group_a=set_a, group_b=set_b, window=window, rows=tuple(rows)
    )
