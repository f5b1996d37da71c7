"""Problem specs, design artifacts, reports and sample files.

Specs, artifacts and reports are JSON tagged ``"schema": "matchlet/1"``.
Coefficient payloads are written as 17-significant-digit decimal strings,
which round-trip IEEE doubles exactly.  Samples are CSV.
"""
import copy
import csv
import datetime as _dt
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import jsonschema
import numpy as np

from ._kernels import BACKEND
from .meyer import MeyerTargetSequence
from .sequence import DataSequence, DecayCertificate
from .verification import QuadratureSpec

SCHEMA_VERSION = "matchlet/1"
LATTICES = ("half-integer", "meyer3")


class SpecError(ValueError):
    """Input file does not match the expected schema or semantics."""


_number = {"anyOf": [{"type": "number"}, {"type": "string"}]}
_entry = {"anyOf": [_number, {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}]}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["lattice", "gamma"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "lattice": {"enum": list(LATTICES)},
        "gamma": {
            "anyOf": [
                {"type": "array", "items": _entry},
                {
                    "type": "object",
                    "required": ["values"],
                    "properties": {
                        "values": {"type": "array", "items": _entry},
                        "offset": {"type": "integer"},
                    },
                },
                {
                    "type": "object",
                    "required": ["generator", "decay"],
                    "properties": {
                        "generator": {
                            "type": "object",
                            "required": ["name"],
                            "properties": {
                                "name": {"type": "string"},
                                "params": {"type": "object"},
                            },
                        },
                        "decay": {
                            "type": "object",
                            "required": ["constant", "epsilon"],
                            "properties": {
                                "constant": {"type": "number", "minimum": 0},
                                "epsilon": {"type": "number", "exclusiveMinimum": 0},
                            },
                        },
                    },
                },
            ]
        },
        "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
        "quadrature": {
            "type": "object",
            "properties": {
                "panels": {"type": "integer", "minimum": 1},
                "nodes": {"type": "integer", "minimum": 1},
            },
        },
        "n_max": {"type": "integer", "minimum": 1},
        "outputs": {"type": "object", "additionalProperties": {"type": "string"}},
        "notes": {},
    },
}


# ---------------------------------------------------------------------------
# exact decimal encoding
# ---------------------------------------------------------------------------

def encode_float(x):
    return format(float(x), ".17g")


def decode_float(s):
    return float(s)


def encode_array(a):
    a = np.asarray(a)
    if a.dtype.kind == "c":
        return [[encode_float(v.real), encode_float(v.imag)] for v in a]
    return [encode_float(v) for v in a]


def decode_array(items):
    if any(isinstance(v, list) for v in items):
        vals = [complex(decode_float(v[0]), decode_float(v[1])) if isinstance(v, list)
                else complex(decode_float(v)) for v in items]
        return np.array(vals, dtype=complex)
    return np.array([decode_float(v) for v in items], dtype=float)


# ---------------------------------------------------------------------------
# generators for infinite data
# ---------------------------------------------------------------------------

def _power(k, amplitude=1.0, exponent=3.0, alternating=False, one_sided=False):
    k = np.asarray(k)
    v = amplitude * (1.0 + np.abs(k)) ** (-float(exponent))
    if alternating:
        v = v * (-1.0) ** np.abs(k)
    if one_sided:
        v = np.where(k < 0, 0.0, v)
    return v


def _geometric(k, amplitude=1.0, ratio=0.5, one_sided=False):
    k = np.asarray(k)
    v = amplitude * float(ratio) ** np.abs(k)
    if one_sided:
        v = np.where(k < 0, 0.0, v)
    return v


GENERATORS = {"power": _power, "geometric": _geometric}


def make_generator(name, params):
    if name not in GENERATORS:
        raise SpecError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    fn = GENERATORS[name]
    params = dict(params or {})

    def gen(k):
        return fn(k, **params)

    try:
        gen(np.arange(-2, 3))
    except TypeError as exc:
        raise SpecError(f"bad parameters for generator {name!r}: {exc}") from exc
    return gen


# ---------------------------------------------------------------------------
# problem specs
# ---------------------------------------------------------------------------

@dataclass
class ProblemSpec:
    lattice: str
    gamma: dict
    tolerances: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    n_max: Optional[int] = None
    outputs: dict = field(default_factory=dict)
    notes: object = None

    @classmethod
    def from_dict(cls, d):
        try:
            jsonschema.validate(d, PROBLEM_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise SpecError(f"spec invalid at {where}: {exc.message}") from exc
        gamma = d["gamma"]
        if isinstance(gamma, list):
            gamma = {"values": gamma, "offset": 0}
        spec = cls(
            lattice=d["lattice"],
            gamma=copy.deepcopy(gamma),
            tolerances=dict(d.get("tolerances", {})),
            quadrature=dict(d.get("quadrature", {})),
            n_max=d.get("n_max"),
            outputs=dict(d.get("outputs", {})),
            notes=d.get("notes"),
        )
        spec._validate()
        return spec

    def _validate(self):
        if "values" in self.gamma:
            try:
                vals = decode_array(self.gamma["values"])
            except (TypeError, ValueError) as exc:
                raise SpecError(f"gamma values are not numeric: {exc}") from exc
            if not np.all(np.isfinite(vals)):
                raise SpecError("gamma values must be finite")
            if self.lattice == "meyer3":
                if self.gamma.get("offset", 0) != 0:
                    raise SpecError("lattice 'meyer3' requires offset 0")
                if vals.dtype.kind == "c":
                    raise SpecError("lattice 'meyer3' requires real gamma")

    def to_dict(self):
        d = {"schema": SCHEMA_VERSION, "lattice": self.lattice, "gamma": self.gamma}
        if self.tolerances:
            d["tolerances"] = self.tolerances
        if self.quadrature:
            d["quadrature"] = self.quadrature
        if self.n_max is not None:
            d["n_max"] = self.n_max
        if self.outputs:
            d["outputs"] = self.outputs
        if self.notes is not None:
            d["notes"] = self.notes
        return d

    @property
    def is_finite(self):
        return "values" in self.gamma

    def quadrature_spec(self):
        from .verification import default_spec
        base = default_spec()
        if not self.quadrature:
            return base
        return QuadratureSpec(panels=self.quadrature.get("panels", base.panels),
                              nodes=self.quadrature.get("nodes", base.nodes))

    def values(self):
        return decode_array(self.gamma["values"])

    def data_sequence(self):
        """DataSequence for the half-integer lattice."""
        if self.is_finite:
            return DataSequence.finite(self.values(), int(self.gamma.get("offset", 0)))
        gen = make_generator(self.gamma["generator"]["name"],
                             self.gamma["generator"].get("params"))
        dec = self.gamma["decay"]
        return DataSequence.infinite(gen, DecayCertificate(dec["constant"], dec["epsilon"]))

    def meyer_sequence(self):
        if self.is_finite:
            return MeyerTargetSequence(self.values())
        gen = make_generator(self.gamma["generator"]["name"],
                             self.gamma["generator"].get("params"))
        dec = self.gamma["decay"]
        return MeyerTargetSequence(
            np.zeros(0), DecayCertificate(dec["constant"], dec["epsilon"]), gen
        )

    def with_values(self, values, offset=0, notes=None):
        new = copy.deepcopy(self)
        new.gamma = {"values": encode_array(values), "offset": int(offset)}
        if notes is not None:
            new.notes = notes
        return new


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc


def load_spec(path):
    return ProblemSpec.from_dict(load_json(path))


# ---------------------------------------------------------------------------
# design artifacts
# ---------------------------------------------------------------------------

def _arr_eq(a, b):
    if a is None or b is None:
        return a is None and b is None
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and a.dtype.kind == b.dtype.kind and np.array_equal(a, b)


def _encode_map(m):
    """Floats go under "float" as exact strings; everything else verbatim."""
    floats = {k: encode_float(v) for k, v in m.items() if isinstance(v, float)}
    other = {k: v for k, v in m.items() if not isinstance(v, float)}
    return {"float": floats, "other": other}


def _decode_map(m):
    if m is None:
        return None
    out = {k: decode_float(v) for k, v in m["float"].items()}
    out.update(m["other"])
    return out


@dataclass(eq=False)
class DesignArtifact:
    lattice: str
    problem: dict
    gamma_values: np.ndarray
    gamma_offset: int = 0
    truncation_error: float = 0.0
    bounds: Optional[dict] = None
    h_coefficients: Optional[np.ndarray] = None
    tail_bound: float = 0.0
    admissibility: Optional[dict] = None
    quadrature: dict = field(default_factory=dict)
    created: str = ""
    backend: str = BACKEND
    format_version: str = SCHEMA_VERSION

    def __eq__(self, other):
        if not isinstance(other, DesignArtifact):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and self.problem == other.problem
            and _arr_eq(self.gamma_values, other.gamma_values)
            and self.gamma_offset == other.gamma_offset
            and self.truncation_error == other.truncation_error
            and self.bounds == other.bounds
            and _arr_eq(self.h_coefficients, other.h_coefficients)
            and self.tail_bound == other.tail_bound
            and self.admissibility == other.admissibility
            and self.quadrature == other.quadrature
            and self.created == other.created
            and self.backend == other.backend
            and self.format_version == other.format_version
        )

    def to_dict(self):
        d = {
            "schema": self.format_version,
            "kind": "artifact",
            "lattice": self.lattice,
            "problem": self.problem,
            "gamma": {"offset": self.gamma_offset, "values": encode_array(self.gamma_values)},
            "truncation_error": encode_float(self.truncation_error),
            "quadrature": self.quadrature,
            "metadata": {"created": self.created, "backend": self.backend},
        }
        if self.bounds is not None:
            d["bounds"] = _encode_map(self.bounds)
        if self.h_coefficients is not None:
            d["h_coefficients"] = encode_array(self.h_coefficients)
            d["tail_bound"] = encode_float(self.tail_bound)
        if self.admissibility is not None:
            d["admissibility"] = _encode_map(self.admissibility)
        return d

    @classmethod
    def from_dict(cls, d):
        if (not isinstance(d, dict) or d.get("schema") != SCHEMA_VERSION
                or d.get("kind") != "artifact"):
            raise SpecError("not a matchlet/1 design artifact")
        try:
            return cls(
                lattice=d["lattice"],
                problem=d["problem"],
                gamma_values=decode_array(d["gamma"]["values"]),
                gamma_offset=int(d["gamma"]["offset"]),
                truncation_error=decode_float(d["truncation_error"]),
                bounds=_decode_map(d.get("bounds")),
                h_coefficients=(decode_array(d["h_coefficients"])
                                if "h_coefficients" in d else None),
                tail_bound=decode_float(d.get("tail_bound", "0")),
                admissibility=_decode_map(d.get("admissibility")),
                quadrature=d.get("quadrature", {}),
                created=d.get("metadata", {}).get("created", ""),
                backend=d.get("metadata", {}).get("backend", BACKEND),
                format_version=d["schema"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"malformed artifact: {exc}") from exc

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SpecError(f"artifact is not JSON: {exc}") from exc


def load_artifact(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return DesignArtifact.from_json(fh.read())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc


def now_iso():
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------

def atomic_write(path, text):
    """Write via a temp file in the target directory, then rename."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


# ---------------------------------------------------------------------------
# samples
# ---------------------------------------------------------------------------

def format_sample(x):
    return format(float(x), ".15g")


def samples_csv(t, values):
    """CSV text with header t,value (plus value_im for complex values)."""
    values = np.asarray(values)
    cplx = values.dtype.kind == "c"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "value", "value_im"] if cplx else ["t", "value"])
    for ti, v in zip(t, values):
        if cplx:
            w.writerow([format_sample(ti), format_sample(v.real), format_sample(v.imag)])
        else:
            w.writerow([format_sample(ti), format_sample(v)])
    return buf.getvalue()


def read_samples(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:2] != ["t", "value"]:
        raise SpecError(f"{path}: missing 't,value' header")
    cplx = len(rows[0]) > 2 and rows[0][2] == "value_im"
    t = np.array([float(r[0]) for r in rows[1:]])
    if cplx:
        v = np.array([complex(float(r[1]), float(r[2])) for r in rows[1:]])
    else:
        v = np.array([float(r[1]) for r in rows[1:]])
    return t, v


def lattice_residuals(lattice, gamma_values, offset, t, values):
    """|value - gamma_k| at every sample that falls on the lattice."""
    out = []
    for ti, v in zip(t, values):
        if lattice == "half-integer":
            k = ti - 0.5
        else:
            k = (ti - 0.5) / 3.0
            if k < -1e-12:
                continue
        kr = round(k)
        if abs(k - kr) > 1e-12:
            continue
        idx = kr - offset
        target = gamma_values[idx] if 0 <= idx < len(gamma_values) else 0.0
        out.append({"t": float(ti), "k": int(kr), "residual": float(abs(v - target))})
    worst = max((r["residual"] for r in out), default=0.0)
    return {"points": out, "max_residual": worst if math.isfinite(worst) else None}
