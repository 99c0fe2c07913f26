"""Serializable analysis records, input parsing and medium presets."""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .gain_sphere import GainMedium
from .point_core import (
    DEFAULT_TOL,
    MatchingMatrix,
    SpectralKind,
    SpectralPoint,
    Tolerances,
    case_label,
    classify_anomalous,
    spectrum,
)
from .symmetries import SymmetryReport, symmetry_report

__all__ = [
    "AnalysisReport",
    "analyze_point",
    "parse_complex",
    "parse_matrix",
    "parse_length",
    "load_presets",
    "medium_from_preset",
    "format_float",
    "write_csv",
    "PRESETS_ENV",
]

PRESETS_ENV = "SPECSING_PRESETS"
CSV_DIGITS = 12

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def _real(text, original):
    if not re.fullmatch(rf"[+-]?{_NUMBER}", text):
        raise ValueError(f"not a complex literal: {original!r}")
    return float(text)


def parse_complex(text):
    """Parse "3", "2i", "-1+4i", "-i", "1.5e-3-2j" into a complex number."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    if s[-1] not in "ij":
        return complex(_real(s, text), 0.0)
    body = s[:-1]
    split = 0
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            split = i
            break
    real, imag = body[:split], body[split:]
    im = {"": 1.0, "+": 1.0, "-": -1.0}.get(imag)
    if im is None:
        im = _real(imag, text)
    return complex(_real(real, text) if real else 0.0, im)


def parse_matrix(text):
    """Parse "a=..,b=..,c=..,d=.." into a MatchingMatrix."""
    entries = {}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        key = key.strip().lower()
        if key not in "abcd" or len(key) != 1:
            raise ValueError(f"unknown matrix entry {key!r}")
        if key in entries:
            raise ValueError(f"entry {key!r} given twice")
        entries[key] = parse_complex(value)
    missing = [k for k in "abcd" if k not in entries]
    if missing:
        raise ValueError(f"missing matrix entries: {', '.join(missing)}")
    return MatchingMatrix(**entries)


_LENGTH_UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "μm": 1e-6, "µm": 1e-6, "nm": 1e-9}
_LENGTH_RE = re.compile(rf"^(?P<num>[+]?{_NUMBER})\s*(?P<unit>[a-zμµ]*)$")


def parse_length(text):
    """Parse a length such as "3.3mm", "150um" or "0.0033" (meters)."""
    match = _LENGTH_RE.match(text.strip())
    if match is None:
        raise ValueError(f"not a length: {text!r}")
    unit = match.group("unit") or "m"
    if unit not in _LENGTH_UNITS:
        raise ValueError(f"unknown length unit {unit!r}")
    return float(match.group("num")) * _LENGTH_UNITS[unit]


def format_float(value, digits=CSV_DIGITS):
    if value is None:
        return ""
    return f"{value:.{digits}g}"


def write_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# point-interaction report
# ---------------------------------------------------------------------------


def _c2j(z):
    # adding 0.0 folds -0.0 into 0.0 for stable output
    return None if z is None else {"re": z.real + 0.0, "im": z.imag + 0.0}


def _j2c(obj):
    return None if obj is None else complex(obj["re"], obj["im"])


@dataclass(frozen=True)
class AnalysisReport:
    matrix: MatchingMatrix
    case: str
    det: complex
    anomalous: bool
    singular: bool
    symmetries: SymmetryReport
    spectrum: tuple
    version: str
    tolerances: Tolerances

    def to_dict(self):
        m = self.matrix
        return {
            "input": {"a": _c2j(m.a), "b": _c2j(m.b), "c": _c2j(m.c), "d": _c2j(m.d)},
            "case": self.case,
            "det": _c2j(self.det),
            "anomalous": self.anomalous,
            "singular_matching_matrix": self.singular,
            "symmetries": {
                "p_symmetric": self.symmetries.p_symmetric,
                "t_symmetric": self.symmetries.t_symmetric,
                "pt_symmetric": self.symmetries.pt_symmetric,
                "p_residual": self.symmetries.p_residual,
                "t_residual": self.symmetries.t_residual,
                "pt_residual": self.symmetries.pt_residual,
            },
            "spectrum": [
                {"k": _c2j(p.k), "kind": p.kind.value, "order": p.order} for p in self.spectrum
            ],
            "version": self.version,
            "tolerances": self.tolerances.as_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data):
        inp = data["input"]
        sym = data["symmetries"]
        tol = data["tolerances"]
        return cls(
            matrix=MatchingMatrix(*(_j2c(inp[key]) for key in "abcd")),
            case=data["case"],
            det=_j2c(data["det"]),
            anomalous=data["anomalous"],
            singular=data["singular_matching_matrix"],
            symmetries=SymmetryReport(**sym),
            spectrum=tuple(
                SpectralPoint(_j2c(p["k"]), SpectralKind(p["kind"]), p["order"])
                for p in data["spectrum"]
            ),
            version=data["version"],
            tolerances=Tolerances(tol["class"], tol["det"], tol["disc"], tol["sym"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def analyze_point(B, tol=DEFAULT_TOL):
    det, anomalous = classify_anomalous(B, tol)
    return AnalysisReport(
        matrix=B,
        case=case_label(B, tol),
        det=det,
        anomalous=anomalous,
        singular=abs(det) <= tol.det,
        symmetries=symmetry_report(B, tol),
        spectrum=tuple(spectrum(B, tol)),
        version=__version__,
        tolerances=tol,
    )


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def load_presets(path=None):
    """Read a presets file; falls back to $SPECSING_PRESETS, then the bundled one."""
    path = path or os.environ.get(PRESETS_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            entries = json.load(fh)
    else:
        entries = json.loads(resources.files("specsing").joinpath("presets.json").read_text())
    presets = {}
    for entry in entries:
        missing = {"name", "n0", "lambda0_nm", "gamma_hat", "g0_max_cm1"} - set(entry)
        if missing:
            raise ValueError(f"preset entry lacks {sorted(missing)}")
        presets[entry["name"]] = entry
    return presets


def medium_from_preset(entry):
    """(GainMedium, g0_max in 1/m) from a presets entry."""
    medium = GainMedium(
        n0=float(entry["n0"]),
        lambda0=float(entry["lambda0_nm"]) * 1e-9,
        gamma_hat=float(entry["gamma_hat"]),
    )
    return medium, float(entry["g0_max_cm1"]) * 100.0
