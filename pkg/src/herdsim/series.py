"""Uniform-grid time series container plus lossless CSV round-trip helpers.

Every simulator in this package reports its output on a uniform time grid,
so the container stores only the grid origin, the spacing and the sampled
values.  CSV serialization writes floats with ``repr`` (shortest round-trip
representation), which guarantees that reading the file back reproduces the
exact binary values.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class TimeSeries:
    """Samples on the uniform grid t0, t0+dt, t0+2*dt, ...

    ``values`` has shape (n_samples, n_columns); single-variable series use a
    single column.  Column names follow the serialization contract: ``x`` for
    the two-state fraction, ``n_f``/``xi`` for the three-state pair, ``p`` for
    log-price, ``r`` for returns.
    """

    t0: float
    dt: float
    values: np.ndarray
    columns: tuple = ("x",)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2:
            raise ValueError("values must be 1-D or 2-D")
        if len(self.columns) != v.shape[1]:
            raise ValueError(
                f"{len(self.columns)} column names for {v.shape[1]} columns"
            )
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        self.values = v
        self.columns = tuple(self.columns)

    def __len__(self):
        return self.values.shape[0]

    @property
    def t(self):
        """Grid times, regenerated from (t0, dt)."""
        return self.t0 + self.dt * np.arange(len(self))

    @property
    def duration(self):
        return self.dt * (len(self) - 1)

    def column(self, name):
        return self.values[:, self.columns.index(name)]

    def drop_burn_in(self, fraction):
        """Return the series with the first ``fraction`` of samples removed."""
        if not 0 <= fraction < 1:
            raise ValueError("burn-in fraction must be in [0, 1)")
        k = int(np.floor(fraction * len(self)))
        return TimeSeries(
            t0=self.t0 + k * self.dt,
            dt=self.dt,
            values=self.values[k:],
            columns=self.columns,
        )


def _fmt(x):
    # repr of a Python float is the shortest string that round-trips exactly
    return repr(float(x))


def write_csv(ts: TimeSeries, path) -> None:
    """Write ``t,<columns...>`` CSV: header row, UTF-8, LF endings, exact floats."""
    t = ts.t
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t," + ",".join(ts.columns) + "\n")
        for i in range(len(ts)):
            row = [_fmt(t[i])] + [_fmt(v) for v in ts.values[i]]
            fh.write(",".join(row) + "\n")


def read_csv(path) -> TimeSeries:
    """Read a CSV produced by :func:`write_csv` back into a TimeSeries."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = fh.readline().strip().split(",")
        if not header or header[0] != "t":
            raise ValueError(f"{path}: expected header starting with 't'")
        columns = tuple(header[1:])
        rows = [line.strip().split(",") for line in fh if line.strip()]
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two samples to fix the grid")
    data = np.array([[float(c) for c in row] for row in rows])
    t = data[:, 0]
    dt = (t[-1] - t[0]) / (len(t) - 1)
    return TimeSeries(t0=t[0], dt=dt, values=data[:, 1:], columns=columns)
