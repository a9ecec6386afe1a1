"""Crowdsourced cell-tower CSV ingestion.

The expected layout is the public cell-tower export format:

    radio,mcc,net,area,cell,unit,lon,lat,range,samples,changeable,created,updated,averageSignal

``unit`` and ``changeable`` are ignored. Crowdsourced rows are dirty by
nature, so a bad row is counted and skipped, never fatal; only a missing
or garbled header aborts the ingest. Fields are checked left to right in
column order and the first failure decides the reject reason.

A single-digit ``net`` column is zero-padded to the 2-digit minimum MNC
width (exports strip leading zeros); wider values are kept verbatim.
"""

from __future__ import annotations

import csv
import gzip
import io
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable

from .errors import BadBboxError, GnbdimError, MissingHeaderError
from .identifiers import Mcc, Mnc, PlmnId, Tac

EXPECTED_HEADER = (
    "radio", "mcc", "net", "area", "cell", "unit", "lon", "lat",
    "range", "samples", "changeable", "created", "updated", "averageSignal",
)

LTE_CELL_LIMIT = 1 << 28

# Reject reason keys, as they appear in the IngestReport histogram.
BAD_SHAPE = "BadShape"
BAD_RADIO = "BadRadio"
BAD_NUMERIC = "BadNumeric"
BAD_COORDINATE = "BadCoordinate"


class Radio(Enum):
    GSM = "GSM"
    UMTS = "UMTS"
    LTE = "LTE"
    NR = "NR"
    CDMA = "CDMA"


@dataclass(frozen=True)
class CellRecord:
    """One crowdsourced tower observation."""

    radio: Radio
    plmn: PlmnId
    area: Tac
    cell: int
    lon: float
    lat: float
    range_m: float
    samples: int
    created: int
    updated: int
    avg_signal: float | None = None


@dataclass(frozen=True)
class IngestReport:
    rows_read: int
    rows_kept: int
    rows_rejected: int
    reject_reasons: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_kept": self.rows_kept,
            "rows_rejected": self.rows_rejected,
            "reject_reasons": dict(sorted(self.reject_reasons.items())),
        }


class _RowError(GnbdimError):
    def __init__(self, reason: str, detail: str) -> None:
        super().__init__(detail)
        self.reason = reason


def _parse_int(value: str, what: str, minimum: int = 0) -> int:
    try:
        n = int(value)
    except ValueError:
        raise _RowError(BAD_NUMERIC, f"{what}: not an integer: {value!r}") from None
    if n < minimum:
        raise _RowError(BAD_NUMERIC, f"{what}: {n} below {minimum}")
    return n


def _parse_float(value: str, what: str, reason: str = BAD_NUMERIC) -> float:
    try:
        x = float(value)
    except ValueError:
        raise _RowError(reason, f"{what}: not a number: {value!r}") from None
    if not math.isfinite(x):
        raise _RowError(reason, f"{what}: not finite: {value!r}")
    return x


def _parse_mnc(value: str) -> Mnc:
    text = value.strip()
    if len(text) == 1 and text.isdigit():
        text = "0" + text
    try:
        return Mnc(text)
    except GnbdimError as exc:
        raise _RowError(BAD_NUMERIC, f"net: {exc}") from None


def _parse_row(row: list[str]) -> CellRecord:
    if len(row) != len(EXPECTED_HEADER):
        raise _RowError(BAD_SHAPE, f"expected {len(EXPECTED_HEADER)} fields, got {len(row)}")

    radio_text = row[0].strip()
    try:
        radio = Radio(radio_text)
    except ValueError:
        raise _RowError(BAD_RADIO, f"unknown radio {radio_text!r}") from None

    try:
        mcc = Mcc(row[1].strip())
    except GnbdimError as exc:
        raise _RowError(BAD_NUMERIC, f"mcc: {exc}") from None
    mnc = _parse_mnc(row[2])

    area = _parse_int(row[3].strip(), "area")
    if area > 0xFFFF:
        raise _RowError(BAD_NUMERIC, f"area: {area} exceeds 16-bit range")
    cell = _parse_int(row[4].strip(), "cell")
    if radio is Radio.LTE and cell >= LTE_CELL_LIMIT:
        raise _RowError(BAD_NUMERIC, f"cell: {cell} exceeds the 28-bit LTE cell identity")

    lon = _parse_float(row[6].strip(), "lon", BAD_COORDINATE)
    lat = _parse_float(row[7].strip(), "lat", BAD_COORDINATE)
    if not -180.0 <= lon <= 180.0:
        raise _RowError(BAD_COORDINATE, f"lon: {lon} outside [-180, 180]")
    if not -90.0 <= lat <= 90.0:
        raise _RowError(BAD_COORDINATE, f"lat: {lat} outside [-90, 90]")

    range_m = _parse_float(row[8].strip(), "range")
    if range_m < 0:
        raise _RowError(BAD_NUMERIC, f"range: {range_m} below 0")
    samples = _parse_int(row[9].strip(), "samples")
    created = _parse_int(row[11].strip(), "created")
    updated = _parse_int(row[12].strip(), "updated")

    signal_text = row[13].strip()
    avg_signal = None if signal_text == "" else _parse_float(signal_text, "averageSignal")

    return CellRecord(
        radio=radio,
        plmn=PlmnId(mcc, mnc),
        area=Tac(area),
        cell=cell,
        lon=lon,
        lat=lat,
        range_m=range_m,
        samples=samples,
        created=created,
        updated=updated,
        avg_signal=avg_signal,
    )


def _as_text_stream(stream: IO | bytes) -> Iterable[str]:
    if isinstance(stream, (bytes, bytearray)):
        return io.StringIO(stream.decode("utf-8-sig"))
    if isinstance(stream, (io.RawIOBase, io.BufferedIOBase)):
        return io.TextIOWrapper(stream, encoding="utf-8-sig", newline="")
    return stream


def parse_csv(stream: IO | bytes) -> tuple[list[CellRecord], IngestReport]:
    """Parse tower records from a CSV stream; bad rows are counted, not fatal."""
    reader = csv.reader(_as_text_stream(stream))
    try:
        header = next(reader)
    except (StopIteration, csv.Error):
        raise MissingHeaderError("input has no header row") from None
    if tuple(h.strip() for h in header) != EXPECTED_HEADER:
        raise MissingHeaderError(
            f"header mismatch: expected {','.join(EXPECTED_HEADER)}"
        )

    records: list[CellRecord] = []
    reasons: Counter[str] = Counter()
    rows_read = 0
    for row in reader:
        if not row:
            continue  # blank line, not a data row
        rows_read += 1
        try:
            records.append(_parse_row(row))
        except _RowError as exc:
            reasons[exc.reason] += 1

    rejected = sum(reasons.values())
    report = IngestReport(
        rows_read=rows_read,
        rows_kept=rows_read - rejected,
        rows_rejected=rejected,
        reject_reasons=dict(reasons),
    )
    return records, report


def read_cells(path: str | Path) -> tuple[list[CellRecord], IngestReport]:
    """Read a tower CSV file; names ending in .gz are decompressed."""
    path = Path(path)
    if path.name.endswith(".gz"):
        with gzip.open(path, "rt", encoding="utf-8-sig", newline="") as fh:
            return parse_csv(fh)
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        return parse_csv(fh)


def write_cells(path: str | Path, records: Iterable[CellRecord]) -> None:
    """Write records back out in the canonical 14-column layout."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXPECTED_HEADER)
        for r in records:
            writer.writerow([
                r.radio.value,
                r.plmn.mcc.digits,
                r.plmn.mnc.digits,
                r.area.code,
                r.cell,
                "",
                repr(r.lon),
                repr(r.lat),
                repr(r.range_m),
                r.samples,
                "",
                r.created,
                r.updated,
                "" if r.avg_signal is None else repr(r.avg_signal),
            ])


Bbox = tuple[float, float, float, float]  # (min_lon, min_lat, max_lon, max_lat)


def filter_records(
    records: Iterable[CellRecord],
    radio: Radio | None = None,
    plmn: PlmnId | None = None,
    bbox: Bbox | None = None,
) -> list[CellRecord]:
    """Keep records matching every present predicate, in input order."""
    if bbox is not None:
        min_lon, min_lat, max_lon, max_lat = bbox
        if min_lon > max_lon or min_lat > max_lat:
            raise BadBboxError(f"bbox min exceeds max: {bbox}")
    out = []
    for r in records:
        if radio is not None and r.radio is not radio:
            continue
        if plmn is not None and r.plmn != plmn:
            continue
        if bbox is not None and not (
            min_lon <= r.lon <= max_lon and min_lat <= r.lat <= max_lat
        ):
            continue
        out.append(r)
    return out
