"""Scenario files (JSON, schema version "1"): loading, validation, running, export.

A scenario describes one experiment plus the sections it needs::

    {
      "version": "1",
      "hbar": 1.0,
      "seed": 0,
      "hilbert": {"dim": 2,
                  "generators": {"X": {"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "time_index": 0}},
                  "states": {"zero": [[1,0],[0,0]]}},
      "times": {"n_times": 2, "speeds": [1, 1], "n_space": 0},
      "graph": {"nodes": [{"id": "A", "state": "zero"}, ...],
                "edges": [{"from": "A", "to": "B", "kind": "shortcut", "duration": 1,
                           "energy_cost": 1.57, "shortcut": {"target": <matrix>, "duration": 1}}]},
      "rates": {"states": [{"id": "0", "energy": 0}], "rates": [{"from": "1", "to": "0", "rate": 0.1}]},
      "experiment": {"kind": "mpemba", "a": "2", "b": "1", "epsilon": 0.02},
      "sweep": {"parameter": "experiment.epsilon", "values": [0.01, 0.02]}
    }

Complex matrices are nested lists of ``[re, im]`` pairs. Validation errors
carry the dotted key path of the offending entry.
"""
from __future__ import annotations

import copy
import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import descartes, multitime, relaxation, routing, shortcut, tc
from .config import conventions, get_tolerances
from .errors import SupermazeError, ValidationError
from .quantum_core import (
    Generator,
    QuantumState,
    fidelity,
    hermiticity_defect,
    random_state,
    unitarity_defect,
)

SCHEMA_VERSION = "1"
EXPERIMENTS = ("evolve", "shortcut_synth", "route", "tc", "relax", "mpemba", "descartes")
REQUIRES = {
    "evolve": ("hilbert",),
    "shortcut_synth": ("hilbert",),
    "route": ("graph",),
    "tc": ("graph",),
    "relax": ("rates",),
    "mpemba": ("rates",),
    "descartes": (),
}
SECTIONS = ("hilbert", "times", "graph", "rates")


@dataclass(frozen=True)
class Scenario:
    version: str
    hbar: float
    seed: int
    experiment: dict
    hilbert: dict | None = None
    times: dict | None = None
    graph: dict | None = None
    rates: dict | None = None
    sweep: dict | None = None

    @property
    def kind(self) -> str:
        return self.experiment["kind"]

    def to_dict(self) -> dict:
        d = {"version": self.version, "hbar": self.hbar, "seed": self.seed, "experiment": self.experiment}
        for name in SECTIONS + ("sweep",):
            value = getattr(self, name)
            if value is not None:
                d[name] = value
        return d


# ---------------------------------------------------------------- validation helpers


def _fail(path: str, message: str):
    raise ValidationError(path, message)


def _obj(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        _fail(path, f"expected an array, got {type(value).__name__}")
    return value


def _req(d: dict, key: str, path: str):
    if key not in d:
        _fail(f"{path}.{key}" if path else key, "missing required key")
    return d[key]


def _real(value, path: str, *, minimum: float | None = None, strict: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        _fail(path, "must be finite")
    if minimum is not None and (x <= minimum if strict else x < minimum):
        _fail(path, f"must be {'>' if strict else '>='} {minimum}, got {x}")
    return x


def _int(value, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if value < minimum:
        _fail(path, f"must be >= {minimum}")
    return value


def _str(value, path: str) -> str:
    if not isinstance(value, str):
        _fail(path, f"expected a string, got {value!r}")
    return value


def _complex_vector(value, path: str) -> list:
    out = []
    for i, z in enumerate(_list(value, path)):
        p = f"{path}.{i}"
        if not (isinstance(z, list) and len(z) == 2):
            _fail(p, "expected a [re, im] pair")
        out.append([_real(z[0], p + ".0"), _real(z[1], p + ".1")])
    return out


def _complex_matrix(value, path: str, dim: int | None = None) -> list:
    rows = [_complex_vector(r, f"{path}.{i}") for i, r in enumerate(_list(value, path))]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        _fail(path, "matrix must be square and non-empty")
    if dim is not None and n != dim:
        _fail(path, f"matrix is {n}x{n}, hilbert.dim is {dim}")
    return rows


def to_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def from_complex(a) -> list:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in a]
    return [from_complex(row) for row in a]


# ---------------------------------------------------------------- section normalisers


def _norm_hilbert(d, path="hilbert") -> dict:
    d = _obj(d, path)
    dim = _int(_req(d, "dim", path), f"{path}.dim", minimum=2)
    gens = {}
    for name, g in sorted(_obj(d.get("generators", {}), f"{path}.generators").items()):
        p = f"{path}.generators.{name}"
        g = _obj(g, p)
        mat = _complex_matrix(_req(g, "matrix", p), f"{p}.matrix", dim)
        dev = hermiticity_defect(to_complex(mat))
        if dev >= get_tolerances().hermitian:
            _fail(f"{p}.matrix", f"generator {name!r} is not Hermitian (max |M - M^dagger| = {dev:.3g})")
        gens[name] = {"matrix": mat, "time_index": _int(g.get("time_index", 0), f"{p}.time_index")}
    states = {}
    for name, v in sorted(_obj(d.get("states", {}), f"{path}.states").items()):
        p = f"{path}.states.{name}"
        vec = _complex_vector(v, p)
        if len(vec) != dim:
            _fail(p, f"state has {len(vec)} amplitudes, hilbert.dim is {dim}")
        norm = float(np.linalg.norm(to_complex(vec)))
        if abs(norm - 1) > get_tolerances().norm:
            _fail(p, f"state {name!r} is not normalized (norm {norm!r})")
        states[name] = vec
    return {"dim": dim, "generators": gens, "states": states}


def _norm_times(d, path="times") -> dict:
    d = _obj(d, path)
    n = _int(_req(d, "n_times", path), f"{path}.n_times", minimum=1)
    speeds = [_real(c, f"{path}.speeds.{i}", minimum=0, strict=True) for i, c in enumerate(_list(d.get("speeds", [1.0] * n), f"{path}.speeds"))]
    if len(speeds) != n:
        _fail(f"{path}.speeds", f"expected {n} speeds, got {len(speeds)}")
    return {"n_times": n, "speeds": speeds, "n_space": _int(d.get("n_space", 0), f"{path}.n_space")}


def _norm_shortcut_block(d, path: str, hilbert: dict | None) -> dict:
    d = _obj(d, path)
    dim = hilbert["dim"] if hilbert else None
    mat = _complex_matrix(_req(d, "target", path), f"{path}.target", dim)
    dev = unitarity_defect(to_complex(mat))
    if dev >= get_tolerances().unitary:
        _fail(f"{path}.target", f"target is not unitary (max |U^dagger U - I| = {dev:.3g})")
    return {"target": mat, "duration": _real(_req(d, "duration", path), f"{path}.duration", minimum=0, strict=True)}


def _norm_graph(d, hilbert: dict | None, path="graph") -> dict:
    d = _obj(d, path)
    state_names = set(hilbert["states"]) if hilbert else set()
    nodes = []
    ids = set()
    for i, n in enumerate(_list(d.get("nodes", []), f"{path}.nodes")):
        p = f"{path}.nodes.{i}"
        n = _obj(n, p)
        nid = _str(_req(n, "id", p), f"{p}.id")
        if nid in ids:
            _fail(f"{p}.id", f"duplicate node id {nid!r}")
        ids.add(nid)
        node = {"id": nid, "label": _str(n.get("label", ""), f"{p}.label")}
        if n.get("state") is not None:
            s = _str(n["state"], f"{p}.state")
            if s not in state_names:
                _fail(f"{p}.state", f"unknown state {s!r}")
            node["state"] = s
        if n.get("energy") is not None:
            node["energy"] = _real(n["energy"], f"{p}.energy")
        nodes.append(node)
    edges = []
    for i, e in enumerate(_list(d.get("edges", []), f"{path}.edges")):
        p = f"{path}.edges.{i}"
        e = _obj(e, p)
        src, dst = _str(_req(e, "from", p), f"{p}.from"), _str(_req(e, "to", p), f"{p}.to")
        for key, end in (("from", src), ("to", dst)):
            if end not in ids:
                _fail(f"{p}.{key}", f"edge references missing node {end!r}")
        kind = _str(e.get("kind", "continuous"), f"{p}.kind")
        if kind not in ("continuous", "shortcut"):
            _fail(f"{p}.kind", f"unknown edge kind {kind!r}")
        edge = {
            "from": src,
            "to": dst,
            "kind": kind,
            "duration": _real(_req(e, "duration", p), f"{p}.duration", minimum=0),
            "energy_cost": _real(e.get("energy_cost", 0.0), f"{p}.energy_cost", minimum=0),
        }
        if kind == "continuous" and edge["energy_cost"] != 0:
            _fail(f"{p}.energy_cost", "continuous edges carry zero energy cost")
        if e.get("generator") is not None:
            g = _str(e["generator"], f"{p}.generator")
            if not hilbert or g not in hilbert["generators"]:
                _fail(f"{p}.generator", f"unknown generator {g!r}")
            edge["generator"] = g
        if e.get("shortcut") is not None:
            if kind != "shortcut":
                _fail(f"{p}.shortcut", "only shortcut edges carry a shortcut block")
            edge["shortcut"] = _norm_shortcut_block(e["shortcut"], f"{p}.shortcut", hilbert)
        edges.append(edge)
    return {"nodes": nodes, "edges": edges}


def _norm_rates(d, path="rates") -> dict:
    d = _obj(d, path)
    states = []
    ids = set()
    for i, s in enumerate(_list(_req(d, "states", path), f"{path}.states")):
        p = f"{path}.states.{i}"
        s = _obj(s, p)
        sid = _str(_req(s, "id", p), f"{p}.id")
        if sid in ids:
            _fail(f"{p}.id", f"duplicate level id {sid!r}")
        ids.add(sid)
        states.append({"id": sid, "energy": _real(_req(s, "energy", p), f"{p}.energy"), "label": _str(s.get("label", ""), f"{p}.label")})
    rates = []
    seen = set()
    for i, r in enumerate(_list(d.get("rates", []), f"{path}.rates")):
        p = f"{path}.rates.{i}"
        r = _obj(r, p)
        a, b = _str(_req(r, "from", p), f"{p}.from"), _str(_req(r, "to", p), f"{p}.to")
        for key, end in (("from", a), ("to", b)):
            if end not in ids:
                _fail(f"{p}.{key}", f"unknown level {end!r}")
        if a == b:
            _fail(p, f"self-rate {a}->{a} is not allowed")
        if (a, b) in seen:
            _fail(p, f"duplicate rate {a}->{b}")
        seen.add((a, b))
        rates.append({"from": a, "to": b, "rate": _real(_req(r, "rate", p), f"{p}.rate", minimum=0)})
    return {"states": states, "rates": rates}


def _norm_state_ref(value, path: str, hilbert: dict):
    if value == "random":
        return value
    name = _str(value, path)
    if name not in hilbert["states"]:
        _fail(path, f"unknown state {name!r}")
    return name


def _norm_grid(value, path: str):
    if isinstance(value, dict):
        t_max = _real(_req(value, "t_max", path), f"{path}.t_max", minimum=0, strict=True)
        n = _int(_req(value, "n", path), f"{path}.n", minimum=2)
        return {"t_max": t_max, "n": n}
    grid = [_real(t, f"{path}.{i}", minimum=0) for i, t in enumerate(_list(value, path))]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        _fail(path, "grid must be non-empty and strictly ascending")
    return grid


def _norm_experiment(d, sc: dict, path="experiment") -> dict:
    d = _obj(d, path)
    kind = _str(_req(d, "kind", path), f"{path}.kind")
    if kind not in EXPERIMENTS:
        _fail(f"{path}.kind", f"unknown experiment {kind!r}; expected one of {', '.join(EXPERIMENTS)}")
    for section in REQUIRES[kind]:
        if sc.get(section) is None:
            _fail(f"{path}.{kind}", f"experiment.{kind} requires {section}")
    out: dict[str, Any] = {"kind": kind}
    h, g, r = sc.get("hilbert"), sc.get("graph"), sc.get("rates")
    if kind == "evolve":
        out["state"] = _norm_state_ref(_req(d, "state", path), f"{path}.state", h)
        segs = []
        for i, s in enumerate(_list(_req(d, "segments", path), f"{path}.segments")):
            p = f"{path}.segments.{i}"
            s = _obj(s, p)
            seg = {
                "time_index": _int(_req(s, "time_index", p), f"{p}.time_index"),
                "duration": _real(_req(s, "duration", p), f"{p}.duration", minimum=0),
            }
            if s.get("generator") is not None:
                name = _str(s["generator"], f"{p}.generator")
                if name not in h["generators"]:
                    _fail(f"{p}.generator", f"unknown generator {name!r}")
                seg["generator"] = name
            else:
                bound = [n for n, gen in h["generators"].items() if gen["time_index"] == seg["time_index"]]
                if not bound:
                    _fail(p, f"no generator bound to time index {seg['time_index']}")
            segs.append(seg)
        out["segments"] = segs
        n_times = sc["times"]["n_times"] if sc.get("times") else max([s["time_index"] for s in segs], default=0) + 1
        origin = d.get("origin", [0.0] * n_times)
        out["origin"] = [_real(t, f"{path}.origin.{i}") for i, t in enumerate(_list(origin, f"{path}.origin"))]
        if len(out["origin"]) != n_times:
            _fail(f"{path}.origin", f"expected {n_times} time coordinates")
        for i, seg in enumerate(segs):
            if seg["time_index"] >= n_times:
                _fail(f"{path}.segments.{i}.time_index", f"index {seg['time_index']} >= n_times {n_times}")
        if d.get("target") is not None:
            out["target"] = _norm_state_ref(d["target"], f"{path}.target", h)
    elif kind == "shortcut_synth":
        out.update(_norm_shortcut_block({"target": _req(d, "target", path), "duration": _req(d, "duration", path)}, path, h))
        out["state"] = _norm_state_ref(_req(d, "state", path), f"{path}.state", h)
    elif kind == "route":
        ids = {n["id"] for n in g["nodes"]}
        for key in ("source", "target"):
            v = _str(_req(d, key, path), f"{path}.{key}")
            if v not in ids:
                _fail(f"{path}.{key}", f"unknown node {v!r}")
            out[key] = v
    elif kind in ("relax", "mpemba"):
        ids = {s["id"] for s in r["states"]}
        out["epsilon"] = _real(d.get("epsilon", 0.02), f"{path}.epsilon", minimum=0, strict=True)
        if not out["epsilon"] < 1:
            _fail(f"{path}.epsilon", "must be < 1")
        if d.get("grid") is not None:
            out["grid"] = _norm_grid(d["grid"], f"{path}.grid")
        keys = ("a", "b") if kind == "mpemba" else ("initial",)
        for key in keys:
            v = _str(_req(d, key, path), f"{path}.{key}")
            if v not in ids:
                _fail(f"{path}.{key}", f"unknown level {v!r}")
            out[key] = v
        if kind == "relax" and "grid" not in out:
            _fail(f"{path}.grid", "relax requires a grid")
    elif kind == "descartes":
        k = _list(_req(d, "k", path), f"{path}.k")
        if len(k) != 3:
            _fail(f"{path}.k", "expected three curvatures")
        out["k"] = [_real(x, f"{path}.k.{i}") for i, x in enumerate(k)]
        out["depth"] = _int(d.get("depth", 0), f"{path}.depth")
        branch = _str(d.get("branch", "plus"), f"{path}.branch")
        if branch not in ("plus", "minus"):
            _fail(f"{path}.branch", "expected 'plus' or 'minus'")
        out["branch"] = branch
    return out


def _norm_sweep(d, path="sweep") -> dict:
    d = _obj(d, path)
    param = _str(_req(d, "parameter", path), f"{path}.parameter")
    values = _list(_req(d, "values", path), f"{path}.values")
    if not values:
        _fail(f"{path}.values", "sweep needs at least one value")
    return {"parameter": param, "values": copy.deepcopy(values)}


def scenario_from_dict(raw: dict) -> Scenario:
    raw = _obj(raw, "<root>")
    version = _req(raw, "version", "")
    if version != SCHEMA_VERSION:
        _fail("version", f"unsupported schema version {version!r}; expected {SCHEMA_VERSION!r}")
    known = {"version", "hbar", "seed", "experiment", "sweep", *SECTIONS}
    for key in raw:
        if key not in known:
            _fail(key, "unknown top-level key")
    sc: dict[str, Any] = {}
    sc["hbar"] = _real(raw.get("hbar", 1.0), "hbar", minimum=0, strict=True)
    sc["seed"] = _int(raw.get("seed", 0), "seed")
    if raw.get("hilbert") is not None:
        sc["hilbert"] = _norm_hilbert(raw["hilbert"])
    if raw.get("times") is not None:
        sc["times"] = _norm_times(raw["times"])
    if raw.get("graph") is not None:
        sc["graph"] = _norm_graph(raw["graph"], sc.get("hilbert"))
    if raw.get("rates") is not None:
        sc["rates"] = _norm_rates(raw["rates"])
    sc["experiment"] = _norm_experiment(_req(raw, "experiment", ""), sc)
    if raw.get("sweep") is not None:
        sc["sweep"] = _norm_sweep(raw["sweep"])
    return Scenario(version=version, **sc)


def parse_scenario(text: str) -> Scenario:
    from .errors import ParseError

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return scenario_from_dict(raw)


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def serialize_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario.to_dict(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- building model objects


def build_generators(sc: Scenario) -> dict[str, Generator]:
    return {
        name: Generator(to_complex(g["matrix"]), g["time_index"], name)
        for name, g in (sc.hilbert or {}).get("generators", {}).items()
    }


def build_state(sc: Scenario, ref: str, rng: np.random.Generator) -> QuantumState:
    if ref == "random":
        return random_state(sc.hilbert["dim"], rng)
    return QuantumState(to_complex(sc.hilbert["states"][ref]))


def build_graph(sc: Scenario) -> routing.SupermazeGraph:
    gens = build_generators(sc)
    states = (sc.hilbert or {}).get("states", {})
    nodes = [
        routing.StateNode(
            n["id"],
            n["label"],
            QuantumState(to_complex(states[n["state"]])) if "state" in n else None,
            n.get("energy"),
        )
        for n in sc.graph["nodes"]
    ]
    edges = []
    for e in sc.graph["edges"]:
        payload = None
        if "shortcut" in e:
            spec = shortcut.ShortcutSpec(to_complex(e["shortcut"]["target"]), e["shortcut"]["duration"])
            payload = shortcut.synthesize_generator(spec)
        elif "generator" in e:
            payload = gens[e["generator"]]
        edges.append(routing.SupermazeEdge(e["from"], e["to"], e["kind"], e["duration"], e["energy_cost"], payload))
    return routing.build_graph(nodes, edges)


def build_rates(sc: Scenario) -> relaxation.RateNetwork:
    levels = tuple(relaxation.Level(s["id"], s["energy"], s["label"]) for s in sc.rates["states"])
    return relaxation.RateNetwork(levels, {(r["from"], r["to"]): r["rate"] for r in sc.rates["rates"]})


def _grid(spec) -> np.ndarray:
    if isinstance(spec, dict):
        return np.linspace(0.0, spec["t_max"], spec["n"])
    return np.asarray(spec, dtype=float)


# ---------------------------------------------------------------- running


@dataclass
class ExperimentResult:
    kind: str
    summary: dict
    tables: dict = field(default_factory=dict)  # name -> (header, rows)
    dot: dict = field(default_factory=dict)  # name -> DOT text
    qsl_violations: int = 0


def _run_evolve(sc: Scenario, rng) -> ExperimentResult:
    ex = sc.experiment
    gens = build_generators(sc)
    by_index = {}
    for name in sorted(gens):
        by_index.setdefault(gens[name].time_index, gens[name])
    segments = tuple(
        multitime.TrajectorySegment(s["time_index"], s["duration"], gens[s["generator"]] if "generator" in s else None)
        for s in ex["segments"]
    )
    path = multitime.MultiTimePath(segments, multitime.TimeVector(tuple(ex["origin"])))
    psi = build_state(sc, ex["state"], rng)
    final = multitime.evolve_path(psi, path, by_index)
    used = []
    for s in segments:
        g = s.generator or by_index[s.time_index]
        if g not in used:
            used.append(g)
    residuals = [
        {"pair": [a.label, b.label], "residual": multitime.consistency_residual(a, b).residual}
        for i, a in enumerate(used)
        for b in used[i + 1 :]
    ]
    summary = {
        "initial": from_complex(psi.amplitudes),
        "final": from_complex(final.amplitudes),
        "norm": final.norm(),
        "fidelity_to_initial": fidelity(psi, final),
        "origin": list(path.origin.coordinates),
        "final_time": list(path.final_time().coordinates),
        "consistency": residuals,
    }
    if "target" in ex:
        summary["fidelity_to_target"] = fidelity(final, build_state(sc, ex["target"], rng))
    if sc.times:
        metric = multitime.TemporalMetric(sc.times["n_times"], tuple(sc.times["speeds"]), sc.times["n_space"])
        ds2 = multitime.interval(metric, path.displacement(), (0.0,) * metric.n_space)
        summary["interval"] = {"ds2": ds2, "kind": multitime.classify_interval(ds2).value}
    return ExperimentResult("evolve", summary)


def _run_shortcut(sc: Scenario, rng) -> ExperimentResult:
    ex = sc.experiment
    spec = shortcut.ShortcutSpec(to_complex(ex["target"]), ex["duration"])
    syn = shortcut.synthesize_generator(spec)
    psi = build_state(sc, ex["state"], rng)
    final, report = shortcut.apply_shortcut(psi, syn)
    summary = {
        "generator": from_complex(syn.generator.matrix),
        "eigenphases": list(syn.eigenphases),
        "spectral_cost": syn.spectral_cost,
        "bandwidth_cost": syn.bandwidth_cost,
        "duration": syn.duration,
        "initial": from_complex(psi.amplitudes),
        "final": from_complex(final.amplitudes),
        "qsl": report.as_dict(),
    }
    if report.delta_e > 0:
        summary["minimal_duration"] = shortcut.minimal_duration(psi, final, report.delta_e)
    return ExperimentResult("shortcut_synth", summary, qsl_violations=0 if report.satisfied else 1)


def _invariants(graph: routing.SupermazeGraph, frontier_size: int) -> dict:
    b0, b1 = tc.betti_numbers(graph)
    shortcuts = sum(e.kind is routing.EdgeKind.SHORTCUT for e in graph.edges)
    return {
        "frontier_size": frontier_size,
        "nodes": graph.n_nodes,
        "edges": len(graph.edges),
        "shortcut_edges": shortcuts,
        "b0": b0,
        "b1": b1,
        "strongly_connected": routing.is_strongly_connected(graph),
    }


def _run_route(sc: Scenario, rng) -> ExperimentResult:
    graph = build_graph(sc)
    frontier = routing.route_pareto(graph, sc.experiment["source"], sc.experiment["target"])
    violations = routing.qsl_admissibility(graph)
    summary = {
        "source": sc.experiment["source"],
        "target": sc.experiment["target"],
        "frontier": [
            {"time": r.total_time, "energy": r.total_energy, "edges": list(r.edges), "nodes": list(r.nodes)}
            for r in frontier.routes
        ],
        "diameter_time": routing.diameter(graph, "time"),
        # raw numbers for side-by-side comparison; no relation between them is implied
        "graph_invariants": _invariants(graph, len(frontier.routes)),
        "qsl_violations": [
            {"edge": v.edge, "from": v.source, "to": v.target, "declared": v.declared_duration, "required": v.required_duration}
            for v in violations
        ],
    }
    rows = [(r.total_time, r.total_energy, " ".join(map(str, r.edges)), " ".join(r.nodes)) for r in frontier.routes]
    return ExperimentResult(
        "route",
        summary,
        tables={"frontier": (("time", "energy", "edges", "nodes"), rows)},
        dot={"graph": routing.to_dot(graph)},
        qsl_violations=len(violations),
    )


def _run_tc(sc: Scenario, rng) -> ExperimentResult:
    graph = build_graph(sc)
    report = tc.tc_estimate(graph)
    summary = report.as_dict()
    summary["diameter_time"] = routing.diameter(graph, "time")
    return ExperimentResult("tc", summary, dot={"graph": routing.to_dot(graph)})


def _run_relax(sc: Scenario, rng) -> ExperimentResult:
    ex = sc.experiment
    net = build_rates(sc)
    grid = _grid(ex["grid"])
    p0 = net.pure(ex["initial"])
    curve = relaxation.evolve_populations(net, p0, grid)
    summary = {"initial": ex["initial"], "epsilon": ex["epsilon"], "samples": int(grid.size)}
    try:
        summary["stationary"] = relaxation.stationary_distribution(net).tolist()
        summary["time_to_equilibrium"] = relaxation.time_to_equilibrium(net, p0, ex["epsilon"], grid)
    except relaxation.NotReachedWithinGrid as exc:
        summary["time_to_equilibrium"] = None
        summary["not_reached"] = {"horizon": exc.horizon, "distance": exc.distance}
    header = ("time", *(f"p_{i}" for i in net.ids))
    return ExperimentResult("relax", summary, tables={"curve": (header, list(curve.rows()))})


def _run_mpemba(sc: Scenario, rng) -> ExperimentResult:
    ex = sc.experiment
    net = build_rates(sc)
    grid = _grid(ex["grid"]) if "grid" in ex else None
    verdict = relaxation.mpemba_compare(net, ex["a"], ex["b"], ex["epsilon"], grid)
    return ExperimentResult("mpemba", verdict.as_dict())


def _run_descartes(sc: Scenario, rng) -> ExperimentResult:
    ex = sc.experiment
    k1, k2, k3 = ex["k"]
    roots = descartes.fourth_curvature(k1, k2, k3)
    k4 = roots[0] if ex["branch"] == "plus" else roots[1]
    root = descartes.CircleQuadruple((k1, k2, k3, k4))
    layers = descartes.apollonian_layers(root, ex["depth"])
    rows = [(d, *q.k) for d, layer in enumerate(layers) for q in layer]
    summary = {
        "k": [k1, k2, k3],
        "roots": list(roots),
        "residuals": [descartes.descartes_residual((k1, k2, k3, r)) for r in roots],
        "root_quadruple": list(root.k),
        "depth": ex["depth"],
        "quadruples": len(rows),
        "max_residual": max(descartes.descartes_residual(r[1:]) for r in rows),
    }
    return ExperimentResult("descartes", summary, tables={"packing": (("depth", "k1", "k2", "k3", "k4"), rows)})


_RUNNERS = {
    "evolve": _run_evolve,
    "shortcut_synth": _run_shortcut,
    "route": _run_route,
    "tc": _run_tc,
    "relax": _run_relax,
    "mpemba": _run_mpemba,
    "descartes": _run_descartes,
}


class ExperimentError(SupermazeError):
    def __init__(self, kind: str, cause: Exception):
        self.kind = kind
        self.cause = cause
        super().__init__(f"experiment {kind!r} failed: {type(cause).__name__}: {cause}")


def run_single(sc: Scenario) -> ExperimentResult:
    rng = np.random.default_rng(sc.seed)
    with conventions(hbar=sc.hbar):
        try:
            return _RUNNERS[sc.kind](sc, rng)
        except SupermazeError as exc:
            raise ExperimentError(sc.kind, exc) from exc


def _set_path(d: dict, dotted: str, value) -> None:
    keys = dotted.split(".")
    cur: Any = d
    for k in keys[:-1]:
        cur = cur[int(k)] if isinstance(cur, list) else cur[k]
    last = keys[-1]
    if isinstance(cur, list):
        cur[int(last)] = value
    else:
        cur[last] = value


def expand_sweep(sc: Scenario) -> list[Scenario]:
    if sc.sweep is None:
        return [sc]
    out = []
    base = sc.to_dict()
    base.pop("sweep")
    for i, value in enumerate(sc.sweep["values"]):
        d = copy.deepcopy(base)
        try:
            _set_path(d, sc.sweep["parameter"], value)
        except (KeyError, IndexError, ValueError, TypeError):
            _fail("sweep.parameter", f"cannot resolve path {sc.sweep['parameter']!r}")
        try:
            out.append(scenario_from_dict(d))
        except ValidationError as exc:
            raise ValidationError(f"sweep.values.{i} -> {exc.path}", str(exc)) from None
    return out


def run(sc: Scenario) -> list[ExperimentResult]:
    """Run the scenario; a sweep expands to one result per value, in order."""
    return [run_single(s) for s in expand_sweep(sc)]


# ---------------------------------------------------------------- export


def _plain(x):
    if isinstance(x, float):
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(x, (np.floating,)):
        return _plain(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def dumps_json(data) -> str:
    return json.dumps(_plain(data), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def write_outputs(results: list[ExperimentResult], out_dir, *, scenario: Scenario | None = None) -> list[str]:
    """Write every result under ``out_dir`` plus ``index.json``; returns written file names."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    multi = len(results) > 1

    def put(name: str, text: str):
        (out / name).write_text(text, encoding="utf-8")
        written.append(name)

    for i, res in enumerate(results):
        stem = f"{res.kind}_{i:03d}" if multi else res.kind
        put(f"{stem}.json", dumps_json({"kind": res.kind, "result": res.summary, "qsl_violations": res.qsl_violations}))
        for name, (header, rows) in sorted(res.tables.items()):
            put(f"{stem}_{name}.csv", dumps_csv(header, rows))
        for name, text in sorted(res.dot.items()):
            put(f"{stem}_{name}.dot", text)
    index = {"files": list(written), "runs": len(results)}
    if scenario is not None:
        index["scenario"] = scenario.to_dict()
        if scenario.sweep:
            index["sweep"] = scenario.sweep
    put("index.json", dumps_json(index))
    return written


def default_out_dir() -> str:
    return os.environ.get("SUPERMAZE_OUT", "out")


def demo_paths() -> list[Path]:
    """Bundled demo scenarios, sorted by file name."""
    return sorted(Path(__file__).with_name("demos").glob("*.json"))
