"""COP event calendar and fixed-width week windows around each event.

Every event gets a window of exactly ``2w + 1`` weekly positions centered
on the week containing the event's start date (00:00 UTC).  Weeks with no
snapshot in the graph stay in the window as explicit gaps; reports emit
them with empty metric fields rather than dropping or interpolating them.
Reports for distinct events are independent and may run in parallel.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from .community import louvain
from .errors import EventFileError
from .temporal_graph import Snapshot, TemporalGraph, snapshot_stats, week_of

EVENTS_HEADER = ("name", "start", "end", "location")
REPORT_COLUMNS = (
    "event",
    "week",
    "offset",
    "num_nodes",
    "num_edges",
    "density",
    "num_communities",
    "modularity",
)


@dataclass(frozen=True)
class CopEvent:
    name: str
    start_date: dt.date
    end_date: dt.date
    location: str

    def __post_init__(self) -> None:
        if self.start_date > self.end_date:
            raise ValueError(
                f"event {self.name!r}: start {self.start_date} is after end {self.end_date}"
            )


@dataclass(frozen=True)
class EventWindow:
    """2w+1 consecutive (week_index, snapshot-or-None) positions."""

    event: CopEvent
    anchor_week: int
    weeks: tuple[tuple[int, Optional[Snapshot]], ...]

    @property
    def half_width(self) -> int:
        return (len(self.weeks) - 1) // 2


def load_events(source) -> list[CopEvent]:
    """Parse a ``name,start,end,location`` CSV into events sorted by start date.

    Dates are ISO-8601.  All malformed rows are collected and reported
    together, each with its row number.
    """
    close = False
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        fh = open(source, newline="", encoding="utf-8")
        close = True
    else:
        fh = source
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != EVENTS_HEADER:
            raise EventFileError(
                "events file must start with a 'name,start,end,location' header"
            )
        events: list[CopEvent] = []
        problems: list[str] = []
        for row in reader:
            if not row:
                continue
            lineno = reader.line_num
            if len(row) != 4:
                problems.append(f"row {lineno}: expected 4 columns, got {len(row)}")
                continue
            name, start_text, end_text, location = (field.strip() for field in row)
            if not name:
                problems.append(f"row {lineno}: empty event name")
                continue
            try:
                start = dt.date.fromisoformat(start_text)
                end = dt.date.fromisoformat(end_text)
            except ValueError as exc:
                problems.append(f"row {lineno}: {exc}")
                continue
            try:
                events.append(CopEvent(name, start, end, location))
            except ValueError as exc:
                problems.append(f"row {lineno}: {exc}")
        if problems:
            raise EventFileError("; ".join(problems))
        events.sort(key=lambda e: (e.start_date, e.name))
        return events
    finally:
        if close:
            fh.close()


def load_default_events() -> list[CopEvent]:
    """Bundled COP 13 through COP 25 calendar."""
    with resources.files("copnet.data").joinpath("cop_events.csv").open(
        "r", encoding="utf-8"
    ) as fh:
        return load_events(fh)


def event_start_timestamp(event: CopEvent) -> int:
    """Seconds since the epoch at 00:00:00 UTC on the event's start date."""
    moment = dt.datetime.combine(event.start_date, dt.time.min, tzinfo=dt.timezone.utc)
    return int(moment.timestamp())


def event_window(g: TemporalGraph, e: CopEvent, w: int = 10) -> EventWindow:
    """Window of weeks anchor-w .. anchor+w around the event's start week."""
    if w < 0:
        raise ValueError(f"window half-width must be >= 0, got {w}")
    anchor = week_of(event_start_timestamp(e))
    weeks = tuple(
        (week, g.snapshot_for(week)) for week in range(anchor - w, anchor + w + 1)
    )
    return EventWindow(event=e, anchor_week=anchor, weeks=weeks)


def window_report(win: EventWindow, seed: int) -> list[dict]:
    """One row per window position; missing weeks carry None metrics.

    Present snapshots get structural stats plus a community detection run
    with the given seed; zero-weight snapshots (possible only with
    explicitly zero-weight input arcs) report node counts but no
    modularity.
    """
    rows: list[dict] = []
    for week, snap in win.weeks:
        row: dict = {
            "event": win.event.name,
            "week": week,
            "offset": week - win.anchor_week,
            "num_nodes": None,
            "num_edges": None,
            "density": None,
            "num_communities": None,
            "modularity": None,
        }
        if snap is not None:
            row.update(snapshot_stats(snap))
            if snap.total_weight() > 0:
                result = louvain(snap, seed)
                row["num_communities"] = result.final_partition.num_communities
                row["modularity"] = result.final_partition.modularity
        rows.append(row)
    return rows


def write_window_report_csv(rows: Sequence[dict], path) -> None:
    """Fixed-column report CSV; None values become empty fields."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    "" if row[col] is None else (repr(row[col]) if isinstance(row[col], float) else row[col])
                    for col in REPORT_COLUMNS
                ]
            )
