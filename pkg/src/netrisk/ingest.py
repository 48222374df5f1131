"""Parsing and alignment of the exposure panel and its risk inputs.

Three CSV files feed the toolkit:

* ``exposures.csv``   -- ``period,reporter,counterparty,claim``
* ``risk_inputs.csv`` -- ``period,country,default_prob,loss,debt_gdp``
* ``transitions.csv`` -- ``from,to,q``

``build_panel`` aligns them into a :class:`Panel` whose lexicographic
country ordering fixes every matrix index used downstream.
"""

from __future__ import annotations

import csv
import io
import math
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from netrisk.errors import (
    BadCountryCode,
    BadPeriod,
    DataError,
    DuplicateRow,
    InconsistentCountrySet,
    MalformedRow,
    MissingRiskInput,
    NegativeClaim,
    NegativeValue,
    ProbOutOfRange,
    SelfClaim,
)

EXPOSURE_HEADER = ("period", "reporter", "counterparty", "claim")
RISK_HEADER = ("period", "country", "default_prob", "loss", "debt_gdp")
TRANSITION_HEADER = ("from", "to", "q")

_PERIOD_RE = re.compile(r"^(\d{4})Q([1-4])$")
_COUNTRY_RE = re.compile(r"^[A-Z]{2}$")
# '.' decimal point only; no thousands separators, no inf/nan
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def period_key(period: str) -> tuple[int, int]:
    m = _PERIOD_RE.match(period)
    if m is None:
        raise BadPeriod(f"bad period {period!r}, expected YYYYQn")
    return int(m.group(1)), int(m.group(2))


@dataclass(frozen=True)
class ExposureRecord:
    period: str
    reporter: str
    counterparty: str
    claim: float


@dataclass(frozen=True)
class RiskInputRecord:
    period: str
    country: str
    default_prob: float
    loss: float
    debt_gdp: float


@dataclass(frozen=True)
class TransitionTable:
    """Conditional default probabilities ``q[(i, j)]``: P(j defaults | i defaults).

    Missing off-diagonal pairs read as 0; the diagonal always reads as 1.
    """

    entries: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (i, j), q in self.entries.items():
            if not (0.0 <= q <= 1.0):
                raise ProbOutOfRange(f"q[{i},{j}] = {q} outside [0, 1]")

    def q(self, i: str, j: str) -> float:
        if i == j:
            return 1.0
        return self.entries.get((i, j), 0.0)

    def matrix(self, countries: Sequence[str]):
        import numpy as np

        n = len(countries)
        out = np.zeros((n, n))
        for a, i in enumerate(countries):
            for b, j in enumerate(countries):
                out[a, b] = self.q(i, j)
        return out


@dataclass(frozen=True)
class Panel:
    periods: tuple[str, ...]
    countries: tuple[str, ...]
    exposures: Mapping[str, tuple[ExposureRecord, ...]]
    risk_inputs: Mapping[str, Mapping[str, RiskInputRecord]]
    transitions: TransitionTable
    missing_transitions: int = 0

    def index(self, country: str) -> int:
        return self.countries.index(country)


# -- parsing -----------------------------------------------------------------


def _rows(text: str | Iterable[str], header: tuple[str, ...]):
    if isinstance(text, str):
        text = io.StringIO(text, newline="")
    reader = csv.reader(text)
    first = True
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        row = [c.strip() for c in row]
        if first:
            first = False
            if tuple(row) == header:
                continue
            if tuple(c.lower() for c in row) == header:
                continue
            # a headerless first line is treated as data only if it has the right arity
            if row[0].lower() == header[0]:
                raise MalformedRow(f"expected header {','.join(header)!r}", line)
        if len(row) != len(header):
            raise MalformedRow(f"expected {len(header)} columns, got {len(row)}", line)
        yield line, row


def _period(value: str, line: int) -> str:
    if _PERIOD_RE.match(value) is None:
        raise BadPeriod(f"bad period {value!r}, expected YYYYQn", line)
    return value


def _country(value: str, line: int) -> str:
    if _COUNTRY_RE.match(value) is None:
        raise BadCountryCode(f"bad country code {value!r}", line)
    return value


def _decimal(value: str, name: str, line: int) -> float:
    if _DECIMAL_RE.match(value) is None:
        raise MalformedRow(f"{name}: not a decimal number: {value!r}", line)
    x = float(value)
    if not math.isfinite(x):
        raise MalformedRow(f"{name}: not finite: {value!r}", line)
    return x


def parse_exposure_csv(text: str | Iterable[str]) -> list[ExposureRecord]:
    records = []
    seen: dict[tuple[str, str, str], int] = {}
    for line, (period, reporter, counterparty, claim) in _rows(text, EXPOSURE_HEADER):
        period = _period(period, line)
        reporter = _country(reporter, line)
        counterparty = _country(counterparty, line)
        amount = _decimal(claim, "claim", line)
        if amount < 0:
            raise NegativeClaim(f"negative claim {claim}", line)
        if reporter == counterparty:
            raise SelfClaim(f"self-claim {reporter}->{counterparty}", line)
        key = (period, reporter, counterparty)
        if key in seen:
            raise DuplicateRow(f"duplicate {period},{reporter},{counterparty} (first at line {seen[key]})", line)
        seen[key] = line
        records.append(ExposureRecord(period, reporter, counterparty, amount))
    return records


def parse_risk_inputs_csv(text: str | Iterable[str]) -> list[RiskInputRecord]:
    records = []
    seen: dict[tuple[str, str], int] = {}
    for line, (period, country, p, loss, d) in _rows(text, RISK_HEADER):
        period = _period(period, line)
        country = _country(country, line)
        p = _decimal(p, "default_prob", line)
        loss = _decimal(loss, "loss", line)
        d = _decimal(d, "debt_gdp", line)
        if not (0.0 <= p <= 1.0):
            raise ProbOutOfRange(f"default_prob {p} outside [0, 1]", line)
        if loss < 0:
            raise NegativeValue(f"negative loss {loss}", line)
        if d < 0:
            raise NegativeValue(f"negative debt_gdp {d}", line)
        key = (period, country)
        if key in seen:
            raise DuplicateRow(f"duplicate {period},{country} (first at line {seen[key]})", line)
        seen[key] = line
        records.append(RiskInputRecord(period, country, p, loss, d))
    return records


def parse_transitions_csv(text: str | Iterable[str]) -> TransitionTable:
    entries: dict[tuple[str, str], float] = {}
    seen: dict[tuple[str, str], int] = {}
    for line, (src, dst, q) in _rows(text, TRANSITION_HEADER):
        src = _country(src, line)
        dst = _country(dst, line)
        q = _decimal(q, "q", line)
        if not (0.0 <= q <= 1.0):
            raise ProbOutOfRange(f"q {q} outside [0, 1]", line)
        if (src, dst) in seen:
            raise DuplicateRow(f"duplicate {src},{dst} (first at line {seen[src, dst]})", line)
        seen[src, dst] = line
        entries[src, dst] = 1.0 if src == dst else q
    return TransitionTable(entries)


# -- serialization (inverse of the parsers) ------------------------------------


def format_exposure_csv(records: Iterable[ExposureRecord]) -> str:
    lines = [",".join(EXPOSURE_HEADER)]
    lines += [f"{r.period},{r.reporter},{r.counterparty},{r.claim!r}" for r in records]
    return "\n".join(lines) + "\n"


def format_risk_inputs_csv(records: Iterable[RiskInputRecord]) -> str:
    lines = [",".join(RISK_HEADER)]
    lines += [
        f"{r.period},{r.country},{r.default_prob!r},{r.loss!r},{r.debt_gdp!r}" for r in records
    ]
    return "\n".join(lines) + "\n"


def format_transitions_csv(table: TransitionTable) -> str:
    lines = [",".join(TRANSITION_HEADER)]
    lines += [f"{i},{j},{q!r}" for (i, j), q in sorted(table.entries.items())]
    return "\n".join(lines) + "\n"


# -- alignment -----------------------------------------------------------------


def build_panel(
    exposures: Iterable[ExposureRecord],
    risks: Iterable[RiskInputRecord],
    transitions: TransitionTable | None = None,
    require_risk: bool = True,
) -> Panel:
    """Align exposures, risk inputs and transitions on a common index.

    Periods sort chronologically and countries lexicographically. Every
    (period, country) pair must carry exactly one risk record unless
    ``require_risk`` is false (network-only use). Off-diagonal
    transition pairs that are absent read as 0 and are counted in
    ``Panel.missing_transitions``.
    """
    exposures = list(exposures)
    risks = list(risks)
    transitions = transitions or TransitionTable()

    exposure_countries = {r.reporter for r in exposures} | {r.counterparty for r in exposures}
    risk_countries = {r.country for r in risks}
    extra = sorted(risk_countries - exposure_countries)
    if extra and exposure_countries:
        warnings.warn(
            f"risk inputs mention countries absent from exposures: {', '.join(extra)}",
            InconsistentCountrySet,
            stacklevel=2,
        )
    countries = tuple(sorted(exposure_countries | risk_countries))
    periods = tuple(sorted({r.period for r in exposures} | {r.period for r in risks}, key=period_key))

    by_period: dict[str, list[ExposureRecord]] = {p: [] for p in periods}
    for r in exposures:
        by_period[r.period].append(r)
    exposure_map = {
        p: tuple(sorted(rs, key=lambda r: (r.reporter, r.counterparty))) for p, rs in by_period.items()
    }

    risk_map: dict[str, dict[str, RiskInputRecord]] = {p: {} for p in periods}
    for r in risks:
        if r.country in risk_map[r.period]:
            raise DuplicateRow(f"duplicate risk input {r.period},{r.country}")
        risk_map[r.period][r.country] = r
    if require_risk:
        for p in periods:
            for c in countries:
                if c not in risk_map[p]:
                    raise MissingRiskInput(f"missing risk input for period {p}, country {c}")
    risk_map = {p: {c: risk_map[p][c] for c in countries if c in risk_map[p]} for p in periods}

    known = set(countries)
    entries = {k: v for k, v in transitions.entries.items() if k[0] in known and k[1] in known}
    unknown = sorted({c for k in transitions.entries for c in k} - known)
    if unknown:
        warnings.warn(
            f"transitions mention countries outside the panel: {', '.join(unknown)}",
            InconsistentCountrySet,
            stacklevel=2,
        )
    missing = sum(1 for i in countries for j in countries if i != j and (i, j) not in entries)
    for c in countries:
        entries[c, c] = 1.0
    table = TransitionTable(dict(sorted(entries.items())))

    return Panel(
        periods=periods,
        countries=countries,
        exposures=exposure_map,
        risk_inputs=risk_map,
        transitions=table,
        missing_transitions=missing,
    )


def read_csv(path: str | Path, parser):
    path = Path(path)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return parser(fh)
    except DataError as exc:
        exc.source = str(path)
        raise


def load_panel(
    exposures_path: str | Path,
    risk_inputs_path: str | Path,
    transitions_path: str | Path | None = None,
) -> Panel:
    exposures = read_csv(exposures_path, parse_exposure_csv)
    risks = read_csv(risk_inputs_path, parse_risk_inputs_csv)
    transitions = read_csv(transitions_path, parse_transitions_csv) if transitions_path else None
    try:
        return build_panel(exposures, risks, transitions)
    except DataError as exc:
        if exc.source is None:
            exc.source = str(risk_inputs_path)
        raise
