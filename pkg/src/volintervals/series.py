"""Price series, log-returns, normalized volatility, and intraday detrending.

The normalized volatility is the absolute log-return divided by the
full-sample standard deviation of the log-returns (population moments,
i.e. time averages). Intraday detrending divides each observation by the
cross-session mean volatility of its time-of-day slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "VolatilitySeries",
    "IntradayPattern",
    "SessionCalendar",
    "DegenerateSeriesError",
    "DetrendError",
    "InsufficientSessionsError",
    "log_returns",
    "normalize_volatility",
    "build_intraday_pattern",
    "intraday_detrend",
    "session_slots",
    "gap_report",
]


class DegenerateSeriesError(ValueError):
    """Raised when a return series has zero sample standard deviation."""


class DetrendError(ValueError):
    """Raised when detrending hits an empty or non-positive pattern slot."""


class InsufficientSessionsError(ValueError):
    """Raised when an intraday pattern is requested from fewer than 2 sessions."""


@dataclass(frozen=True)
class PriceSeries:
    """Timestamped prices for one instrument at a fixed sampling interval."""

    instrument_id: str
    timestamps: np.ndarray  # datetime64
    prices: np.ndarray
    sampling_interval: np.timedelta64

    def __post_init__(self):
        ts = np.asarray(self.timestamps)
        prices = np.asarray(self.prices, dtype=float)
        if prices.size < 2:
            raise ValueError("price series needs at least 2 observations")
        bad = np.flatnonzero(prices <= 0)
        if bad.size:
            raise ValueError(f"non-positive price at index {bad[0]}")
        if ts.shape != prices.shape:
            raise ValueError("timestamps and prices must have equal length")
        if np.any(np.diff(ts).astype("timedelta64[ns]") <= np.timedelta64(0, "ns")):
            raise ValueError("timestamps must be strictly increasing")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", prices)

    def __len__(self):
        return self.prices.size


@dataclass(frozen=True)
class ReturnSeries:
    """Log-returns; timestamps mark the left endpoint of each return."""

    values: np.ndarray
    timestamps: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class VolatilitySeries:
    """Normalized absolute-return magnitudes, optionally detrended."""

    values: np.ndarray
    detrended: bool = False
    timestamps: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if np.any(v < 0):
            raise ValueError("volatility values must be non-negative")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class IntradayPattern:
    """Cross-session mean volatility per time-of-day slot.

    Slots never observed carry NaN mean and zero count (empty, not zero).
    """

    slot_means: np.ndarray
    slot_counts: np.ndarray


@dataclass(frozen=True)
class SessionCalendar:
    """Trading session open/close, "HH:MM" wall-clock strings."""

    open_time: str = "09:00"
    close_time: str = "15:00"

    def open_minute(self) -> int:
        h, m = self.open_time.split(":")
        return int(h) * 60 + int(m)

    def close_minute(self) -> int:
        h, m = self.close_time.split(":")
        return int(h) * 60 + int(m)


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Log-return between consecutive samples: ln(Y[t+1]) - ln(Y[t])."""
    g = np.diff(np.log(prices.prices))
    return ReturnSeries(values=g, timestamps=prices.timestamps[:-1])


def normalize_volatility(returns: ReturnSeries) -> VolatilitySeries:
    """Normalize |G| by the full-sample standard deviation of G.

    The normalizer is sqrt(<G^2> - <G>^2) with <.> the time average over
    the whole sample (population variance, not ddof=1).
    """
    g = returns.values
    var = np.mean(g * g) - np.mean(g) ** 2
    if var <= 0 or not np.isfinite(var):
        raise DegenerateSeriesError("return series has zero standard deviation")
    return VolatilitySeries(values=np.abs(g) / np.sqrt(var), timestamps=returns.timestamps)


def session_slots(timestamps, calendar: SessionCalendar, sampling_interval) -> tuple[np.ndarray, np.ndarray]:
    """Map timestamps to (slot, session_id) arrays.

    Slot is the number of sampling intervals elapsed since session open;
    session id is the calendar day. Samples before the session open are
    rejected.
    """
    ts = np.asarray(timestamps)
    days = ts.astype("datetime64[D]")
    minute_of_day = (ts - days).astype("timedelta64[m]").astype(np.int64)
    step_min = max(int(np.timedelta64(sampling_interval, "m").astype(np.int64)), 1)
    slots = (minute_of_day - calendar.open_minute()) // step_min
    if np.any(slots < 0):
        i = int(np.flatnonzero(slots < 0)[0])
        raise ValueError(f"sample at index {i} falls before session open {calendar.open_time}")
    return slots.astype(np.int64), days.astype(np.int64)


def build_intraday_pattern(vol: VolatilitySeries, slots, session_ids) -> IntradayPattern:
    """Average volatility per time-of-day slot across sessions."""
    slots = np.asarray(slots, dtype=np.int64)
    session_ids = np.asarray(session_ids)
    if np.unique(session_ids).size < 2:
        raise InsufficientSessionsError("intraday pattern needs at least 2 sessions")
    n_slots = int(slots.max()) + 1
    counts = np.bincount(slots, minlength=n_slots)
    sums = np.bincount(slots, weights=vol.values, minlength=n_slots)
    means = np.full(n_slots, np.nan)
    np.divide(sums, counts, out=means, where=counts > 0)
    return IntradayPattern(slot_means=means, slot_counts=counts)


def intraday_detrend(vol: VolatilitySeries, pattern: IntradayPattern, slots) -> VolatilitySeries:
    """Divide each observation by its slot's cross-session mean."""
    slots = np.asarray(slots, dtype=np.int64)
    if slots.max() >= pattern.slot_means.size:
        raise DetrendError(f"slot {int(slots.max())} not covered by pattern")
    means = pattern.slot_means[slots]
    bad = ~(means > 0)  # catches NaN (empty slot) and non-positive means
    if np.any(bad):
        s = int(slots[np.flatnonzero(bad)[0]])
        raise DetrendError(f"pattern slot {s} is empty or non-positive")
    return VolatilitySeries(values=vol.values / means, detrended=True, timestamps=vol.timestamps)


def gap_report(prices: PriceSeries) -> list[int]:
    """Indices i where the step from sample i to i+1 exceeds the sampling interval."""
    diffs = np.diff(prices.timestamps)
    return np.flatnonzero(diffs > prices.sampling_interval).tolist()
