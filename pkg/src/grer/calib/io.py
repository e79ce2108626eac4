"""File formats: MPC CSV, calibration config JSON and fitted-output JSON."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field, fields

from .campaign import CampaignGeometry, Orientation
from .classify import ClassifierConfig, MpcRecord
from .fit import CalibBounds, FitResult
from .pso import SwarmConfig

MPC_HEADER = ["orientation_index", "rotation_deg", "tilt_deg", "azimuth_deg",
              "elevation_deg", "delay_ns", "path_gain_db"]


class FormatError(ValueError):
    pass


def write_mpc_csv(path_or_file, mpcs, orientations) -> None:
    """MPC angles are stored in degrees, delays in ns."""
    def dump(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MPC_HEADER)
        for m in mpcs:
            o = orientations[m.orientation_index]
            w.writerow([m.orientation_index, repr(float(o.rotation_deg)), repr(float(o.tilt_deg)),
                        repr(math.degrees(m.azimuth)), repr(math.degrees(m.elevation)),
                        repr(float(m.delay)), repr(float(m.path_gain_db))])

    if hasattr(path_or_file, "write"):
        dump(path_or_file)
    else:
        with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
            dump(fh)


def read_mpc_csv(path_or_file):
    """Returns (mpcs, orientations); orientations are indexed densely by
    orientation_index and must agree between rows sharing an index."""
    def load(fh):
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty MPC file: header required") from None
        if [h.strip() for h in header] != MPC_HEADER:
            raise FormatError(f"bad MPC header {header!r}; expected {','.join(MPC_HEADER)}")
        mpcs, orients = [], {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(MPC_HEADER):
                raise FormatError(f"line {lineno}: expected {len(MPC_HEADER)} fields, got {len(row)}")
            try:
                idx = int(row[0])
                rot, tilt, az, el, delay, pg = (float(v) for v in row[1:])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
            if not all(math.isfinite(v) for v in (rot, tilt, az, el, delay, pg)):
                raise FormatError(f"line {lineno}: non-finite value")
            o = Orientation(rot, tilt)
            if orients.setdefault(idx, o) != o:
                raise FormatError(f"line {lineno}: orientation {idx} redefined")
            mpcs.append(MpcRecord(math.radians(az), math.radians(el), delay, pg, idx))
        if orients and sorted(orients) != list(range(len(orients))):
            raise FormatError("orientation_index values must be 0..n-1 without gaps")
        return mpcs, [orients[i] for i in range(len(orients))]

    if hasattr(path_or_file, "read"):
        return load(path_or_file)
    with open(path_or_file, newline="", encoding="utf-8") as fh:
        return load(fh)


@dataclass
class CalibConfig:
    bounds: CalibBounds = field(default_factory=CalibBounds)
    swarm: SwarmConfig = field(default_factory=SwarmConfig)
    seed: int = 0
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)
    geometry: CampaignGeometry = field(default_factory=CampaignGeometry)

    def to_dict(self) -> dict:
        return {"bounds": {k: list(v) for k, v in asdict(self.bounds).items()},
                "swarm": asdict(self.swarm), "seed": self.seed,
                "classifier": asdict(self.classifier), "geometry": asdict(self.geometry)}


def _build(cls, data, section):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise FormatError(f"{section} must be an object")
    known = {f.name for f in fields(cls)}
    extra = set(data) - known
    if extra:
        raise FormatError(f"unknown keys in {section}: {sorted(extra)}")
    if cls is CalibBounds:
        data = {k: tuple(v) for k, v in data.items()}
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{section}: {exc}") from None


def config_from_dict(d: dict) -> CalibConfig:
    extra = set(d) - {"bounds", "swarm", "seed", "classifier", "geometry"}
    if extra:
        raise FormatError(f"unknown top-level keys: {sorted(extra)}")
    seed = d.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise FormatError("seed must be an integer")
    return CalibConfig(_build(CalibBounds, d.get("bounds"), "bounds"),
                       _build(SwarmConfig, d.get("swarm"), "swarm"), seed,
                       _build(ClassifierConfig, d.get("classifier"), "classifier"),
                       _build(CampaignGeometry, d.get("geometry"), "geometry"))


def load_config(path) -> CalibConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"config is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("config must be a JSON object")
    return config_from_dict(data)


def save_config(path, cfg: CalibConfig) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2)
        fh.write("\n")


def dump_fit(fit: FitResult, fh) -> None:
    json.dump(fit.to_dict(), fh, indent=2)
    fh.write("\n")


def save_fit(path, fit: FitResult) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        dump_fit(fit, fh)
