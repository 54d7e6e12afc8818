"""Record ingestion, report serialization, and parameter sweeps.

Input formats
    csv    header `date,t6_1,t6_2,t16,t24,k_c,c_0,delta`, one record per
           row; `date` is an opaque pass-through label and may be empty
    json   an array of objects carrying the same keys; `date` optional

Report serialization is deterministic: fixed key order, shortest
round-trip decimals, and undefined quantities as null next to a flag or
error record saying why.  Serializing the same report twice yields
byte-identical text.
"""

from __future__ import annotations

import csv
import dataclasses
import io as _io
import json
from dataclasses import dataclass

from .config import RunConfig
from .errors import ParseError, ValidationError
from .inputs import FIELD_ORDER, InputParameters, validate
from .watch import WatchReport, run_watch

CSV_HEADER = ("date",) + FIELD_ORDER

INPUT_FORMATS = ("csv", "json")

# Trace keys of each report block, in serialization order.
_EXPONENT_KEYS = ("t6_1_s", "t6_2_s", "t16_s", "t24_s", "perm_a",
                  "l_p1", "l_p2", "l_y1", "l_y2")
_MODEL_KEYS = ("rho", "discriminant", "e1", "e2", "omega1", "omega2",
               "t1", "t2")
_POTENTIAL_KEYS = ("v1", "w1", "u_s", "p_x", "u_p")
_DISTANCE_KEYS = ("r_e", "r_h", "r_c")
_PROBABILITY_KEYS = ("p_s", "p_t", "p_g")
_CHAIN_KEYS = ("r_small", "r_mid", "r_big")
_MISS_KEYS = ("p1", "p2", "p3", "p4")


def _record_from_strings(row_number: int, date: str,
                         fields: dict[str, str]) -> InputParameters:
    numbers: dict[str, float] = {}
    for name, text in fields.items():
        try:
            numbers[name] = float(text)
        except ValueError:
            raise ParseError(row_number,
                             f"field {name!r} is not a number: {text!r}") \
                from None
    params = InputParameters(date=date or None, **numbers)
    try:
        validate(params)
    except ValidationError as exc:
        raise exc.with_row(row_number) from None
    return params


def _parse_csv(text: str) -> list[InputParameters]:
    rows = list(csv.reader(_io.StringIO(text)))
    if not rows:
        return []
    header = tuple(cell.strip() for cell in rows[0])
    if header != CSV_HEADER:
        raise ParseError(1, "header must be exactly "
                            f"{','.join(CSV_HEADER)!r}, got "
                            f"{','.join(header)!r}")
    records = []
    for row_number, row in enumerate(rows[1:], start=1):
        if not row:  # blank line
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(row_number,
                             f"expected {len(CSV_HEADER)} fields, "
                             f"got {len(row)}")
        fields = dict(zip(FIELD_ORDER, (cell.strip() for cell in row[1:])))
        records.append(_record_from_strings(row_number, row[0].strip(),
                                            fields))
    return records


def _parse_json(text: str) -> list[InputParameters]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(0, f"not valid JSON: {exc}") from None
    if not isinstance(payload, list):
        raise ParseError(0, "top level must be an array of records")
    records = []
    for row_number, entry in enumerate(payload, start=1):
        if not isinstance(entry, dict):
            raise ParseError(row_number, "record must be an object")
        unknown = set(entry) - set(FIELD_ORDER) - {"date"}
        if unknown:
            raise ParseError(row_number,
                             f"unexpected fields: {sorted(unknown)}")
        missing = set(FIELD_ORDER) - set(entry)
        if missing:
            raise ParseError(row_number,
                             f"missing fields: {sorted(missing)}")
        date = entry.get("date")
        if date is not None and not isinstance(date, str):
            raise ParseError(row_number, "date must be a string or null")
        numbers = {}
        for name in FIELD_ORDER:
            value = entry[name]
            # bool is an int subtype; reject it explicitly
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(row_number,
                                 f"field {name!r} is not a number: {value!r}")
            numbers[name] = float(value)
        params = InputParameters(date=date, **numbers)
        try:
            validate(params)
        except ValidationError as exc:
            raise exc.with_row(row_number) from None
        records.append(params)
    return records


def parse_records(text: str, format: str = "csv") -> list[InputParameters]:
    """Parse and validate a batch of input records.

    Empty input is an empty batch in either format.  Raises ParseError
    when the text cannot be read as records at all, ValidationError
    (with the row number) when a record is readable but inadmissible.
    """
    if format not in INPUT_FORMATS:
        raise ValueError(f"format must be one of {INPUT_FORMATS}, "
                         f"got {format!r}")
    if not text.strip():
        return []
    if format == "csv":
        return _parse_csv(text)
    return _parse_json(text)


def report_as_dict(report: WatchReport) -> dict:
    """The report as nested primitives, in serialization order."""
    trace = report.trace

    def block(keys):
        return {key: trace[key] for key in keys}

    states = report.states
    return {
        "input": {
            "date": report.params.date,
            **{name: getattr(report.params, name) for name in FIELD_ORDER},
        },
        "exponents": block(_EXPONENT_KEYS),
        "grid_model": block(_MODEL_KEYS),
        "potentials": block(_POTENTIAL_KEYS),
        "distances": block(_DISTANCE_KEYS),
        "probabilities": block(_PROBABILITY_KEYS),
        "states": {
            "market_state": None if states.market_state is None
            else states.market_state.value,
            "grid_state": None if states.grid_state is None
            else states.grid_state.value,
            "threat_level": None if states.threat_level is None
            else states.threat_level.value,
        },
        "watch": {
            "trade_volume_pct": report.trade_volume_pct,
            **block(_CHAIN_KEYS),
            "p_false_alarm_raw": report.p_false_alarm_raw,
            "p_false_alarm": report.p_false_alarm,
            **block(_MISS_KEYS),
            "p_miss_raw": report.p_miss_raw,
            "p_miss": report.p_miss,
            "errors": [record.as_dict() for record in report.errors],
        },
        "flags": report.flags.as_dict(),
    }


def _emit_text(report: WatchReport) -> str:
    payload = report_as_dict(report)
    lines = []
    for section, fields in payload.items():
        lines.append(section)
        for name, value in fields.items():
            if name == "errors":
                if not value:
                    continue
                lines.append("  errors")
                for record in value:
                    lines.append(f"    {record['error']} in "
                                 f"{record['stage']}/{record['quantity']}: "
                                 f"{record['detail']}")
                continue
            shown = "undefined" if value is None else value
            lines.append(f"  {name:<18} {shown}")
    lines.append(f"degraded: {report.degraded}")
    return "\n".join(lines) + "\n"


def emit_report(report: WatchReport, format: str = "json") -> str:
    """Serialize one report; identical reports serialize identically."""
    if format == "json":
        return json.dumps(report_as_dict(report), indent=2,
                          allow_nan=False) + "\n"
    if format == "text":
        return _emit_text(report)
    raise ValueError(f"format must be 'json' or 'text', got {format!r}")


@dataclass(frozen=True)
class SweepSpec:
    """Uniform sweep of one input field over [start, stop]."""

    parameter: str
    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if self.parameter not in FIELD_ORDER:
            raise ValueError(f"parameter must be one of {FIELD_ORDER}, "
                             f"got {self.parameter!r}")
        if not self.start < self.stop:
            raise ValueError("start must be below stop, got "
                             f"[{self.start!r}, {self.stop!r}]")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps!r}")

    def value_at(self, index: int) -> float:
        return self.start + index * (self.stop - self.start) / (self.steps - 1)


@dataclass(frozen=True)
class SweepEntry:
    """One sweep point: either a report or the reason there is none."""

    value: float
    report: WatchReport | None
    error: str | None


def sweep(base: InputParameters, spec: SweepSpec,
          config: RunConfig | None = None) -> list[SweepEntry]:
    """Evaluate the pipeline at every sweep point of one parameter.

    Always returns exactly spec.steps entries in sweep order; a point
    whose record is inadmissible contributes an error entry instead of
    aborting the sweep.
    """
    entries = []
    for index in range(spec.steps):
        value = spec.value_at(index)
        point = dataclasses.replace(base, **{spec.parameter: value})
        try:
            entries.append(SweepEntry(value=value, report=run_watch(
                point, config), error=None))
        except ValidationError as exc:
            entries.append(SweepEntry(value=value, report=None,
                                      error=str(exc)))
    return entries


def sweep_rows(entries: list[SweepEntry]) -> list[dict]:
    """Plot-ready flat rows (one per entry) for columnar output."""
    rows = []
    for entry in entries:
        if entry.report is None:
            rows.append({
                "value": entry.value,
                "trade_volume_pct": None,
                "market_state": None,
                "grid_state": None,
                "threat_level": None,
                "p_false_alarm": None,
                "p_miss": None,
                "degraded": True,
                "error": entry.error,
            })
            continue
        report = entry.report
        states = report.states
        rows.append({
            "value": entry.value,
            "trade_volume_pct": report.trade_volume_pct,
            "market_state": None if states.market_state is None
            else states.market_state.value,
            "grid_state": None if states.grid_state is None
            else states.grid_state.value,
            "threat_level": None if states.threat_level is None
            else states.threat_level.value,
            "p_false_alarm": report.p_false_alarm,
            "p_miss": report.p_miss,
            "degraded": report.degraded,
            "error": "; ".join(
                f"{r.error}({r.stage}/{r.quantity})" for r in report.errors)
            or None,
        })
    return rows
