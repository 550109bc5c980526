"""World input-output tables and bilateral reliance metrics.

Takes a country-by-sector intermediate flow matrix with final demand,
value added and gross output, inverts the Leontief system and produces two
reliance measures for a target sector:

* foreign input reliance (FIR): where the value added embodied in a
  country's target-sector output originates, in percent of that output,
* foreign market reliance (FMR): where a country's value added ends up
  being absorbed, in percent of its value added tied to the target sector.

Both come out as country-by-country percentage matrices with the diagonal
(domestic share) set aside, and optionally aggregate every country outside
a focus list into a rest-of-world column.  An alternative "gross" measure
replaces value-added weights with total intermediate input content.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

# Relative slack for accounting identities in published tables.
BALANCE_RTOL = 1e-3
LEONTIEF_RESIDUAL_TOL = 1e-10

FD_PREFIX = "FD"
VA_LABEL = "VA"
OUT_LABEL = "OUT"
ROW_LABEL = "ROW"


class TableFormatError(ValueError):
    """Malformed or unbalanced input-output table."""


@dataclass
class WorldIOTable:
    """Intermediate flows Z, final demand F, value added v, gross output x.

    Rows and columns of Z follow the same (country, sector) order: country
    blocks in the order of ``countries``, sectors within each block in the
    order of ``sectors``.  F has one column per country.
    """

    countries: list
    sectors: list
    Z: np.ndarray
    F: np.ndarray
    v: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        C, S = len(self.countries), len(self.sectors)
        n = C * S
        self.Z = np.asarray(self.Z, dtype=float)
        self.F = np.asarray(self.F, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        if self.Z.shape != (n, n):
            raise TableFormatError(f"Z must be {n}x{n}, got {self.Z.shape}")
        if self.F.shape != (n, C):
            raise TableFormatError(f"F must be {n}x{C}, got {self.F.shape}")
        if self.v.shape != (n,) or self.x.shape != (n,):
            raise TableFormatError("v and x must have one entry per country-sector")
        if len(set(self.countries)) != C or len(set(self.sectors)) != S:
            raise TableFormatError("duplicate country or sector labels")
        self.validate()

    def index(self, country: str, sector: str) -> int:
        return self.countries.index(country) * len(self.sectors) \
            + self.sectors.index(sector)

    def labels(self) -> list:
        return [f"{c}:{s}" for c in self.countries for s in self.sectors]

    def validate(self, rtol: float = BALANCE_RTOL):
        """Check accounting balance; raise listing every offender."""
        if np.any(~np.isfinite(self.Z)) or np.any(~np.isfinite(self.F)):
            raise TableFormatError("table contains non-finite entries")
        if np.any(self.Z < 0.0) or np.any(self.F < 0.0) or np.any(self.x < 0.0):
            raise TableFormatError("flows and outputs must be nonnegative")
        labels = self.labels()
        problems = []
        scale = np.maximum(self.x, 1e-12)
        use = self.Z.sum(axis=1) + self.F.sum(axis=1)
        bad = np.abs(use - self.x) > rtol * scale
        problems += [f"{labels[i]}: output {self.x[i]:.6g} vs row use {use[i]:.6g}"
                     for i in np.nonzero(bad)[0]]
        implied_va = self.x - self.Z.sum(axis=0)
        bad = np.abs(implied_va - self.v) > rtol * scale
        problems += [f"{labels[i]}: value added {self.v[i]:.6g} vs implied "
                     f"{implied_va[i]:.6g}" for i in np.nonzero(bad)[0]]
        # A zero-output row must be genuinely absent from the table.
        for i in np.nonzero(self.x == 0.0)[0]:
            if (self.Z[i].any() or self.Z[:, i].any() or self.F[i].any()
                    or self.v[i] != 0.0):
                problems.append(f"{labels[i]}: zero output but nonzero flows")
        if problems:
            head = "; ".join(problems[:8])
            more = f" (+{len(problems) - 8} more)" if len(problems) > 8 else ""
            raise TableFormatError(f"unbalanced table: {head}{more}")


def technical_coefficients(table: WorldIOTable) -> np.ndarray:
    """Input coefficients A = Z per unit of buyer output, zero-output safe."""
    x = table.x
    out = np.zeros_like(table.Z)
    np.divide(table.Z, x[None, :], out=out, where=x[None, :] > 0.0)
    return out


def _spectral_radius(A: np.ndarray, iterations: int = 200) -> float:
    # Power iteration; A is nonnegative so the dominant eigenvalue is real.
    n = A.shape[0]
    vec = np.full(n, 1.0 / n)
    radius = 0.0
    for _ in range(iterations):
        nxt = A @ vec
        norm = float(np.linalg.norm(nxt))
        if norm == 0.0:
            return 0.0
        prev, radius = radius, norm / float(np.linalg.norm(vec))
        vec = nxt / norm
        if abs(radius - prev) < 1e-12:
            break
    return radius


def leontief_inverse(table: WorldIOTable) -> np.ndarray:
    """B = (I - A)^-1 with productivity and accuracy guards.

    Requires the spectral radius of A to be strictly below one, and checks
    the inverse to ``LEONTIEF_RESIDUAL_TOL`` in the max norm.
    """
    A = technical_coefficients(table)
    radius = _spectral_radius(A)
    if radius >= 1.0:
        raise TableFormatError(
            f"input coefficients are not productive (spectral radius {radius:.6f})")
    n = A.shape[0]
    eye = np.eye(n)
    B = np.linalg.solve(eye - A, eye)
    residual = float(np.max(np.abs(B @ (eye - A) - eye)))
    if residual > LEONTIEF_RESIDUAL_TOL:
        raise TableFormatError(
            f"Leontief inverse residual {residual:.3e} exceeds tolerance")
    return B


@dataclass
class RelianceMatrix:
    """Country-by-country percentage shares with the diagonal set aside.

    ``values[i, j]`` is the share attributed to partner ``columns[j]`` for
    row country ``rows[i]``; the own-country cell is NaN and its share is
    kept in ``domestic``.  Rows plus domestic sum to 100 up to the table's
    accounting slack.
    """

    metric: str
    target_sector: str
    measure: str
    rows: list
    columns: list
    values: np.ndarray
    domestic: np.ndarray

    def partner_share(self, row_country: str, col_country: str) -> float:
        i = self.rows.index(row_country)
        if col_country == row_country:
            return float(self.domestic[i])
        return float(self.values[i, self.columns.index(col_country)])

    def row_total(self, row_country: str) -> float:
        i = self.rows.index(row_country)
        return float(np.nansum(self.values[i]) + self.domestic[i])

    def to_csv(self, path, decimals: int = 1):
        """Write the matrix with values rounded as printed; diagonal blank."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([self.metric] + list(self.columns))
            for i, country in enumerate(self.rows):
                cells = []
                for j in range(len(self.columns)):
                    val = self.values[i, j]
                    cells.append("" if np.isnan(val) else f"{val:.{decimals}f}")
                writer.writerow([country] + cells)


def _content_matrix(table: WorldIOTable, B: np.ndarray, measure: str) -> np.ndarray:
    """Per-unit content of column output attributed to each row, by measure.

    "va" weights B by row value-added shares, so columns decompose one unit
    of output into originating value added and sum to 1 on balanced data.
    "gross" uses total intermediate input content B - I, normalised later.
    """
    if measure == "va":
        shares = np.zeros_like(table.x)
        np.divide(table.v, table.x, out=shares, where=table.x > 0.0)
        return shares[:, None] * B
    if measure == "gross":
        return B - np.eye(B.shape[0])
    raise ValueError(f"measure must be 'va' or 'gross', got {measure!r}")


def _split_focus(table: WorldIOTable, focus) -> tuple[list, list]:
    if focus is None:
        return list(table.countries), []
    focus = list(focus)
    unknown = [c for c in focus if c not in table.countries]
    if unknown:
        raise ValueError(f"focus countries not in table: {', '.join(unknown)}")
    if len(set(focus)) != len(focus):
        raise ValueError("focus countries must be unique")
    rest = [c for c in table.countries if c not in focus]
    return focus, rest


def _aggregate_by_country(table: WorldIOTable, per_sector: np.ndarray) -> np.ndarray:
    """Sum a (country*sector,) vector into a (country,) vector."""
    S = len(table.sectors)
    return per_sector.reshape(len(table.countries), S).sum(axis=1)


def _assemble(metric: str, table: WorldIOTable, target_sector: str, measure: str,
              focus, shares_by_country) -> RelianceMatrix:
    """Lay out percentage shares for focus rows, partners plus ROW columns.

    ``shares_by_country[i]`` must give row country i's full share vector
    over all table countries, summing to 1.
    """
    focus_list, rest = _split_focus(table, focus)
    columns = list(focus_list) + ([ROW_LABEL] if rest else [])
    values = np.full((len(focus_list), len(columns)), np.nan)
    domestic = np.zeros(len(focus_list))
    rest_idx = [table.countries.index(c) for c in rest]
    for i, country in enumerate(focus_list):
        shares = shares_by_country(country) * 100.0
        domestic[i] = shares[table.countries.index(country)]
        for j, partner in enumerate(focus_list):
            if partner != country:
                values[i, j] = shares[table.countries.index(partner)]
        if rest:
            values[i, len(focus_list)] = shares[rest_idx].sum()
    return RelianceMatrix(metric=metric, target_sector=target_sector,
                          measure=measure, rows=focus_list, columns=columns,
                          values=values, domestic=domestic)


def _check_target(table: WorldIOTable, target_sector: str):
    if target_sector not in table.sectors:
        raise ValueError(f"target sector {target_sector!r} not in table "
                         f"(have: {', '.join(table.sectors)})")


def compute_fir(table: WorldIOTable, target_sector: str, focus=None,
                measure: str = "va") -> RelianceMatrix:
    """Where the content of each country's target-sector output comes from.

    For row country i, the column-j share is the value added originating in
    j (every sector) embodied per unit of i's target-sector gross output,

        FIR[i, j] = sum_s v_(j,s)/x_(j,s) * B_(j,s),(i,target) * 100 .

    Shares over all origins including home sum to 100 on balanced tables.
    """
    _check_target(table, target_sector)
    B = leontief_inverse(table)
    content = _content_matrix(table, B, measure)

    def shares_for(country: str) -> np.ndarray:
        col = content[:, table.index(country, target_sector)]
        by_country = _aggregate_by_country(table, col)
        total = by_country.sum()
        if total <= 0.0:
            raise ValueError(f"{country} has no {target_sector} input content")
        return by_country / total if measure == "gross" else by_country

    return _assemble("fir", table, target_sector, measure, focus, shares_for)


def compute_fmr(table: WorldIOTable, target_sector: str, focus=None,
                measure: str = "va") -> RelianceMatrix:
    """Where each country's target-sector-linked value added is absorbed.

    For row country i, the column-j share is the value added of i embodied
    in country j's target-sector output, as a fraction of i's value added
    absorbed by the target sector worldwide.  The sales-side mirror of
    :func:`compute_fir`.
    """
    _check_target(table, target_sector)
    B = leontief_inverse(table)
    content = _content_matrix(table, B, measure)
    target_cols = np.array([table.index(c, target_sector) for c in table.countries])
    target_out = table.x[target_cols]

    def shares_for(country: str) -> np.ndarray:
        S = len(table.sectors)
        c = table.countries.index(country)
        own_rows = slice(c * S, (c + 1) * S)
        # value originating in `country` absorbed in each country's target output
        absorbed = content[own_rows][:, target_cols].sum(axis=0) * target_out
        total = absorbed.sum()
        if total <= 0.0:
            raise ValueError(f"{country} supplies no content to {target_sector}")
        return absorbed / total

    return _assemble("fmr", table, target_sector, measure, focus, shares_for)


def reliance_change(after: RelianceMatrix, before: RelianceMatrix) -> RelianceMatrix:
    """Percentage-point change between two matching reliance matrices."""
    if (after.metric != before.metric or after.rows != before.rows
            or after.columns != before.columns
            or after.target_sector != before.target_sector
            or after.measure != before.measure):
        raise ValueError("reliance matrices must share metric, axes, sector "
                         "and measure to be differenced")
    return RelianceMatrix(metric=f"{after.metric}_change",
                          target_sector=after.target_sector,
                          measure=after.measure,
                          rows=list(after.rows), columns=list(after.columns),
                          values=after.values - before.values,
                          domestic=after.domestic - before.domestic)


def load_table(path) -> WorldIOTable:
    """Read a world IO table from the documented CSV layout.

    Layout: header ``table,C1:S1,...,Cn:Sm,FD:C1,...,FD:Cn``; one row per
    country:sector with intermediate flows then final demand; a ``VA`` row
    and an ``OUT`` row close the file (their final-demand cells stay
    empty).  Raises :class:`TableFormatError` naming the offending row or
    column on any structural or balance problem.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    if len(rows) < 4:
        raise TableFormatError(f"{path}: too few rows for an IO table")
    header = [cell.strip() for cell in rows[0]]
    flow_labels = []
    fd_countries = []
    for cell in header[1:]:
        if cell.startswith(f"{FD_PREFIX}:"):
            fd_countries.append(cell.split(":", 1)[1])
        elif ":" in cell:
            if fd_countries:
                raise TableFormatError(
                    f"{path}: flow column {cell!r} after final demand block")
            flow_labels.append(tuple(cell.split(":", 1)))
        else:
            raise TableFormatError(f"{path}: malformed column header {cell!r}")
    countries = list(dict.fromkeys(c for c, _ in flow_labels))
    sectors = list(dict.fromkeys(s for _, s in flow_labels))
    expect = [(c, s) for c in countries for s in sectors]
    if flow_labels != expect:
        raise TableFormatError(
            f"{path}: columns must nest sectors within country blocks")
    if fd_countries != countries:
        raise TableFormatError(
            f"{path}: final demand columns must cover every country in order")

    n = len(flow_labels)
    body = {}
    va_row = out_row = None
    for row in rows[1:]:
        label = row[0].strip()
        cells = [cell.strip() for cell in row[1:]]
        if label in (VA_LABEL, OUT_LABEL):
            if len(cells) < n:
                raise TableFormatError(f"{path}: row {label} is too short")
            try:
                vals = np.array([float(c) for c in cells[:n]])
            except ValueError as err:
                raise TableFormatError(f"{path}: row {label}: {err}") from None
            if label == VA_LABEL:
                va_row = vals
            else:
                out_row = vals
            continue
        if ":" not in label:
            raise TableFormatError(f"{path}: unexpected row label {label!r}")
        if len(cells) != n + len(countries):
            raise TableFormatError(
                f"{path}: row {label} has {len(cells)} cells, "
                f"expected {n + len(countries)}")
        try:
            body[tuple(label.split(":", 1))] = np.array([float(c) for c in cells])
        except ValueError as err:
            raise TableFormatError(f"{path}: row {label}: {err}") from None

    missing = [f"{c}:{s}" for (c, s) in expect if (c, s) not in body]
    if missing:
        raise TableFormatError(f"{path}: missing rows: {', '.join(missing)}")
    if va_row is None or out_row is None:
        raise TableFormatError(f"{path}: VA and OUT rows are required")

    data = np.vstack([body[key] for key in expect])
    return WorldIOTable(countries=countries, sectors=sectors,
                        Z=data[:, :n], F=data[:, n:], v=va_row, x=out_row)


def write_table(table: WorldIOTable, path):
    """Inverse of :func:`load_table`, mainly for fixtures and round trips."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        labels = table.labels()
        writer.writerow(["table"] + labels
                        + [f"{FD_PREFIX}:{c}" for c in table.countries])
        for i, label in enumerate(labels):
            writer.writerow([label] + [repr(float(z)) for z in table.Z[i]]
                            + [repr(float(f)) for f in table.F[i]])
        blank = [""] * len(table.countries)
        writer.writerow([VA_LABEL] + [repr(float(v)) for v in table.v] + blank)
        writer.writerow([OUT_LABEL] + [repr(float(x)) for x in table.x] + blank)
