"""
Instance and Result Files
JSON schemas for query instances and results, CSV point clouds, and the
deterministic instance generator.

Numbers are exact: JSON integers or "num/den" strings. JSON floats are rejected.
"""

import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .depth_api import AffineFlatSpec, DepthReport
from .exceptions import DimensionMismatchError, InstanceError
from .geometry.exact_core import format_rat, lift_affine, to_rat

logger = logging.getLogger(__name__)

QUERY_KINDS = ("depth-line3", "depth-line2", "tukey2", "crossdist")

Vector = Tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# Schema types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Query:
    kind: str
    line: Optional[AffineFlatSpec] = None
    point: Optional[Vector] = None
    flats: Optional[Tuple[AffineFlatSpec, AffineFlatSpec]] = None


@dataclass(frozen=True)
class InstanceFile:
    dimension: int
    points: Optional[Tuple[Vector, ...]] = None
    hyperplanes: Optional[Tuple[Tuple[Vector, Fraction], ...]] = None
    query: Optional[Query] = None

    @property
    def n(self) -> int:
        return len(self.points if self.points is not None else self.hyperplanes or ())


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _expect_object(obj: Any, path: str, required: Sequence[str], optional: Sequence[str] = ()) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise InstanceError("expected an object", path)
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InstanceError(f"unknown field {unknown[0]!r}", f"{path}.{unknown[0]}" if path else unknown[0])
    for key in required:
        if key not in obj:
            raise InstanceError("missing field", f"{path}.{key}" if path else key)
    return obj


def _vector(obj: Any, path: str, arity: Optional[int] = None) -> Vector:
    if not isinstance(obj, list):
        raise InstanceError("expected a list of numbers", path)
    vector = tuple(to_rat(c, f"{path}[{i}]") for i, c in enumerate(obj))
    if arity is not None and len(vector) != arity:
        raise DimensionMismatchError(f"expected {arity} coordinates, got {len(vector)}", path)
    return vector


def _vectors(obj: Any, path: str, arity: Optional[int] = None) -> Tuple[Vector, ...]:
    if not isinstance(obj, list):
        raise InstanceError("expected a list of vectors", path)
    return tuple(_vector(v, f"{path}[{i}]", arity) for i, v in enumerate(obj))


def parse_flat(obj: Any, path: str, dimension: int) -> AffineFlatSpec:
    if isinstance(obj, dict) and "homogeneous" in obj:
        _expect_object(obj, path, ["homogeneous"])
        return AffineFlatSpec(homogeneous=_vectors(obj["homogeneous"], f"{path}.homogeneous", dimension + 1))
    if isinstance(obj, dict) and "direction" in obj:
        _expect_object(obj, path, ["point", "direction"])
        return AffineFlatSpec(
            points=(_vector(obj["point"], f"{path}.point", dimension),),
            direction=_vector(obj["direction"], f"{path}.direction", dimension),
        )
    _expect_object(obj, path, ["points"])
    return AffineFlatSpec(points=_vectors(obj["points"], f"{path}.points", dimension))


def parse_query(obj: Any, dimension: int) -> Query:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceError("missing field", "query.kind")
    kind = obj["kind"]
    if kind not in QUERY_KINDS:
        raise InstanceError(f"unknown query kind {kind!r}", "query.kind")
    if kind in ("depth-line3", "depth-line2"):
        _expect_object(obj, "query", ["kind", "line"])
        return Query(kind=kind, line=parse_flat(obj["line"], "query.line", dimension))
    if kind == "tukey2":
        _expect_object(obj, "query", ["kind", "point"])
        return Query(kind=kind, point=_vector(obj["point"], "query.point", dimension))
    _expect_object(obj, "query", ["kind", "flats"])
    flats = obj["flats"]
    if not isinstance(flats, list) or len(flats) != 2:
        raise InstanceError("expected exactly two flats", "query.flats")
    return Query(
        kind=kind,
        flats=(
            parse_flat(flats[0], "query.flats[0]", dimension),
            parse_flat(flats[1], "query.flats[1]", dimension),
        ),
    )


def parse_instance_obj(obj: Any) -> InstanceFile:
    """Validate a decoded JSON instance"""
    obj = _expect_object(obj, "", ["dimension"], ["points", "hyperplanes", "query"])
    dimension = obj["dimension"]
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise InstanceError("expected a positive integer", "dimension")
    if ("points" in obj) == ("hyperplanes" in obj):
        raise InstanceError("exactly one of 'points' or 'hyperplanes' is required", "points")

    points = hyperplanes = None
    if "points" in obj:
        points = _vectors(obj["points"], "points", dimension)
    else:
        if not isinstance(obj["hyperplanes"], list):
            raise InstanceError("expected a list", "hyperplanes")
        parsed = []
        for i, h in enumerate(obj["hyperplanes"]):
            path = f"hyperplanes[{i}]"
            _expect_object(h, path, ["coeffs", "rhs"])
            parsed.append((_vector(h["coeffs"], f"{path}.coeffs", dimension), to_rat(h["rhs"], f"{path}.rhs")))
        hyperplanes = tuple(parsed)

    query = parse_query(obj["query"], dimension) if "query" in obj else None
    return InstanceFile(dimension=dimension, points=points, hyperplanes=hyperplanes, query=query)


def _reject_float(text: str):
    raise InstanceError(f"floating-point number {text} not allowed; use 'num/den'")


def loads_instance(text: str) -> InstanceFile:
    try:
        obj = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise InstanceError(f"invalid JSON: {e}") from None
    return parse_instance_obj(obj)


def read_points_csv(text: str) -> Tuple[Vector, ...]:
    """One point per row; blank rows and rows starting with '#' are skipped"""
    points = []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or not any(cells) or cells[0].startswith("#"):
            continue
        points.append(tuple(to_rat(c, f"row {line_no}") for c in cells))
    if not points:
        raise InstanceError("no points in CSV input", "points")
    arity = len(points[0])
    for i, p in enumerate(points):
        if len(p) != arity:
            raise DimensionMismatchError(f"expected {arity} coordinates, got {len(p)}", f"points[{i}]")
    return tuple(points)


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"cannot read {source}: {e.strerror}", "input") from None


def parse_instance(source: str = "-", query_json: Optional[str] = None) -> InstanceFile:
    """Read an instance from a JSON file, a CSV point cloud, or stdin ("-")"""
    text = _read_source(source)
    if source.lower().endswith(".csv"):
        points = read_points_csv(text)
        instance = InstanceFile(dimension=len(points[0]), points=points)
    else:
        instance = loads_instance(text)
    if query_json is not None:
        try:
            query_obj = json.loads(query_json, parse_float=_reject_float)
        except json.JSONDecodeError as e:
            raise InstanceError(f"invalid JSON: {e}", "query") from None
        instance = InstanceFile(
            dimension=instance.dimension,
            points=instance.points,
            hyperplanes=instance.hyperplanes,
            query=parse_query(query_obj, instance.dimension),
        )
    return instance


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def _rats(vector: Sequence[Fraction]) -> List[Any]:
    return [format_rat(c) for c in vector]


def flat_to_obj(flat: AffineFlatSpec) -> Dict[str, Any]:
    if flat.homogeneous is not None:
        return {"homogeneous": [_rats(v) for v in flat.homogeneous]}
    if flat.direction is not None:
        return {"point": _rats(flat.points[0]), "direction": _rats(flat.direction)}
    return {"points": [_rats(p) for p in flat.points]}


def query_to_obj(query: Query) -> Dict[str, Any]:
    obj: Dict[str, Any] = {"kind": query.kind}
    if query.line is not None:
        obj["line"] = flat_to_obj(query.line)
    if query.point is not None:
        obj["point"] = _rats(query.point)
    if query.flats is not None:
        obj["flats"] = [flat_to_obj(f) for f in query.flats]
    return obj


def instance_to_obj(instance: InstanceFile) -> Dict[str, Any]:
    obj: Dict[str, Any] = {"dimension": instance.dimension}
    if instance.points is not None:
        obj["points"] = [_rats(p) for p in instance.points]
    if instance.hyperplanes is not None:
        obj["hyperplanes"] = [{"coeffs": _rats(a), "rhs": format_rat(b)} for a, b in instance.hyperplanes]
    if instance.query is not None:
        obj["query"] = query_to_obj(instance.query)
    return obj


def dumps_instance(instance: InstanceFile) -> str:
    return json.dumps(instance_to_obj(instance), indent=2) + "\n"


def result_to_obj(report: DepthReport, dimension: int, elapsed_ms: float) -> Dict[str, Any]:
    """ResultFile schema"""
    result = report.result
    witness = None
    if result.witness is not None:
        w = result.witness
        witness = {
            "u1": _rats(w.u1.coords),
            "u2": _rats(w.u2.coords),
            "coords1": _rats(w.coords1),
            "coords2": _rats(w.coords2),
        }
    primal = None
    if report.primal_witness is not None:
        primal = {
            "hyperplanes": [
                {"coeffs": _rats(h.coeffs), "rhs": format_rat(h.rhs), "is_at_infinity": h.is_at_infinity}
                for h in report.primal_witness.hyperplanes
            ],
            "count": report.primal_witness.count,
        }
    return {
        "distance": report.distance,
        "strict_min": result.strict_min,
        "incident_count": result.incident_count,
        "intersecting": result.intersecting,
        "witness": witness,
        "primal_witness": primal,
        "meta": {
            "query": report.query,
            "n": result.n,
            "d": dimension,
            "solver": result.solver,
            "headline": report.headline,
            "elapsed_ms": round(elapsed_ms, 3),
        },
    }


def dumps_result(obj: Dict[str, Any]) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit(text: str, output: str = "-") -> None:
    if output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(output).write_text(text, encoding="utf-8")


def _count(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InstanceError(f"expected an integer, got {obj!r}", path)
    return obj


def _validate_witness(obj: Any) -> None:
    _expect_object(obj, "witness", ["u1", "u2"], ["coords1", "coords2"])
    for key in ("u1", "u2", "coords1", "coords2"):
        if key in obj:
            _vector(obj[key], f"witness.{key}")
    if len(obj["u1"]) != len(obj["u2"]):
        raise DimensionMismatchError("u1 and u2 differ in length", "witness.u2")


def _validate_primal_witness(obj: Any) -> None:
    _expect_object(obj, "primal_witness", ["hyperplanes", "count"])
    _count(obj["count"], "primal_witness.count")
    hyperplanes = obj["hyperplanes"]
    if not isinstance(hyperplanes, list) or len(hyperplanes) != 2:
        raise InstanceError("expected a list of two hyperplanes", "primal_witness.hyperplanes")
    for i, h in enumerate(hyperplanes):
        path = f"primal_witness.hyperplanes[{i}]"
        _expect_object(h, path, ["coeffs", "rhs"], ["is_at_infinity"])
        _vector(h["coeffs"], f"{path}.coeffs")
        to_rat(h["rhs"], f"{path}.rhs")


def load_result(source: str) -> Dict[str, Any]:
    """Read and validate a ResultFile.

    JSON floats are tolerated in meta.elapsed_ms only: counts must be integers and
    witness coordinates go through to_rat, which rejects floats.
    """
    text = _read_source(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"invalid JSON: {e}", "result") from None
    _expect_object(
        obj,
        "",
        ["distance", "strict_min", "incident_count", "witness", "meta"],
        ["intersecting", "primal_witness"],
    )
    for key in ("distance", "strict_min", "incident_count"):
        _count(obj[key], key)
    if not isinstance(obj.get("intersecting", False), bool):
        raise InstanceError("expected true or false", "intersecting")
    if obj["witness"] is not None:
        _validate_witness(obj["witness"])
    if obj.get("primal_witness") is not None:
        _validate_primal_witness(obj["primal_witness"])

    meta = _expect_object(obj["meta"], "meta", [], ["query", "n", "d", "solver", "headline", "elapsed_ms"])
    for key in ("n", "d"):
        if key in meta:
            _count(meta[key], f"meta.{key}")
    for key in ("query", "solver", "headline"):
        if key in meta and not isinstance(meta[key], str):
            raise InstanceError("expected a string", f"meta.{key}")
    elapsed = meta.get("elapsed_ms", 0)
    if isinstance(elapsed, bool) or not isinstance(elapsed, (int, float)):
        raise InstanceError("expected a number", "meta.elapsed_ms")
    return obj


# ---------------------------------------------------------------------------
# Deterministic generator
# ---------------------------------------------------------------------------

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood): 64-bit state, golden-gamma increment.

    Fixed here so generated instances are byte-identical across Python versions.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] by rejection sampling"""
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            value = self.next_u64()
            if value < limit:
                return lo + value % span

    def vector(self, dim: int, bound: int) -> Vector:
        return tuple(Fraction(self.randint(-bound, bound)) for _ in range(dim))

    def nonzero_vector(self, dim: int, bound: int) -> Vector:
        while True:
            v = self.vector(dim, bound)
            if any(v):
                return v


def default_kind(dim: int) -> str:
    return {2: "depth-line2", 3: "depth-line3"}.get(dim, "crossdist")


def _random_line(rng: SplitMix64, dim: int, bound: int) -> AffineFlatSpec:
    p = rng.vector(dim, bound)
    while True:
        q = rng.vector(dim, bound)
        if q != p:
            return AffineFlatSpec(points=(p, q))


def _hyperplane_through_line(line: AffineFlatSpec) -> Tuple[Vector, Fraction]:
    """Integer hyperplane containing the line: normal orthogonal to its direction"""
    p, q = line.points
    v = [b - a for a, b in zip(p, q)]
    i = next(i for i, c in enumerate(v) if c != 0)
    j = (i + 1) % len(v)
    normal = [Fraction(0)] * len(v)
    normal[i], normal[j] = v[j], -v[i]
    return tuple(normal), sum((a * b for a, b in zip(normal, p)), Fraction(0))


def generate_instance(
    seed: int,
    n: int,
    dim: int,
    coord_bound: int = 1000,
    kind: Optional[str] = None,
    degenerate: bool = False,
) -> InstanceFile:
    """Random instance with integer coordinates uniform in [-coord_bound, coord_bound]"""
    kind = kind or default_kind(dim)
    if kind not in QUERY_KINDS:
        raise InstanceError(f"unknown query kind {kind!r}", "kind")
    expected_dim = {"depth-line3": 3, "depth-line2": 2, "tukey2": 2}.get(kind)
    if expected_dim is not None and dim != expected_dim:
        raise DimensionMismatchError(f"{kind} needs dimension {expected_dim}, got {dim}", "dim")
    if kind == "crossdist" and dim < 2:
        raise DimensionMismatchError("crossdist instances need dimension >= 2", "dim")
    rng = SplitMix64(seed)

    if kind == "crossdist":
        flats = (_random_line(rng, dim, coord_bound), _random_line(rng, dim, coord_bound))
        hyperplanes = [
            (rng.nonzero_vector(dim, coord_bound), Fraction(rng.randint(-coord_bound, coord_bound)))
            for _ in range(n)
        ]
        if degenerate and n:
            hyperplanes[0] = _hyperplane_through_line(flats[0])
            for i in range(1, n, 3):
                hyperplanes[i] = hyperplanes[i - 1]
        instance = InstanceFile(dimension=dim, hyperplanes=tuple(hyperplanes), query=Query(kind, flats=flats))
    else:
        points = [rng.vector(dim, coord_bound) for _ in range(n)]
        if kind == "tukey2":
            q = rng.vector(dim, coord_bound)
            if degenerate and points:
                q = points[0]
            query = Query(kind, point=q)
        else:
            line = _random_line(rng, dim, coord_bound)
            query = Query(kind, line=line)
            if degenerate:
                p0, p1 = line.points
                for i in range(0, n, 3):
                    t = rng.randint(-3, 3)
                    points[i] = tuple(a + t * (b - a) for a, b in zip(p0, p1))
        if degenerate:
            for i in range(1, n, 4):
                points[i] = points[i - 1]
        instance = InstanceFile(dimension=dim, points=tuple(points), query=query)

    for issue in general_position_report(instance):
        log = logger.info if degenerate else logger.warning
        log("Generated instance (seed %d) not in general position: %s", seed, issue)
    return instance


def general_position_report(instance: InstanceFile) -> List[str]:
    """Unintended incidences: duplicate data, data on the query flat"""
    issues = []
    data = instance.points if instance.points is not None else instance.hyperplanes
    data = data or ()
    if len(set(data)) != len(data):
        issues.append(f"{len(data) - len(set(data))} duplicate entries")
    query = instance.query
    if query is not None and instance.points is not None:
        if query.point is not None:
            on = sum(1 for p in instance.points if p == query.point)
            if on:
                issues.append(f"{on} points coincide with the query point")
        if query.line is not None and query.line.homogeneous is None:
            flat = query.line.to_projective()
            on = sum(1 for p in instance.points if flat.contains(lift_affine(p)))
            if on:
                issues.append(f"{on} points lie on the query line")
    return issues
