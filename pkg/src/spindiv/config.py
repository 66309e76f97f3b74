"""Run configuration: JSON in, validated objects out.

Every physical parameter is range-checked at parse time and violations
name the offending key.  Unknown keys are rejected so typos cannot
silently fall back to defaults.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bath import BathState, QuadratureSettings, SpectralDensity
from .errors import ConfigError
from .evolve import InitialState
from .spin import CouplingSpec, DriveParameters, SpinQuantumNumber

_TOP_KEYS = {
    "spin", "omega_s", "alpha", "phi", "coupling", "bath", "grid",
    "quadrature", "g", "initial_state", "output", "sweep", "threads",
}
_BATH_KEYS = {"eta", "exponent_s", "omega_c", "temperature"}
_GRID_KEYS = {"t_max", "steps", "max_step_factor"}
_QUAD_KEYS = {"nodes_per_panel", "panel_width_factor", "tail_cut",
              "resonance_refine", "resonance_halfwidth", "max_tail_multiples"}
_G_KEYS = {"t1_rel"}
_STATE_KEYS = {"kind", "index", "indices", "amplitudes", "path"}
_OUTPUT_KEYS = {"format", "path"}
_SWEEP_KEYS = {"parameter", "values"}

SWEEPABLE = {
    "alpha", "phi", "omega_s",
    "bath.eta", "bath.exponent_s", "bath.omega_c", "bath.temperature",
}


@dataclass(frozen=True)
class GridSpec:
    t_max: float
    steps: int
    max_step_factor: float = 0.05

    @property
    def h(self):
        return self.t_max / self.steps

    def stage_times(self):
        """Uniform half-step grid [0, h/2, h, ...] covering RK4 stages."""
        return np.linspace(0.0, self.t_max, 2 * self.steps + 1)

    def times(self):
        return np.linspace(0.0, self.t_max, self.steps + 1)


@dataclass(frozen=True)
class RunConfig:
    spin: SpinQuantumNumber
    drive: DriveParameters
    coupling: CouplingSpec
    spectral_density: SpectralDensity
    bath: BathState
    grid: GridSpec
    quadrature: QuadratureSettings
    t1_rel: float
    initial_state: InitialState
    output_format: str
    output_path: str | None
    sweep_parameter: str | None = None
    sweep_values: tuple = ()
    threads: int = 1
    raw: dict = field(default=None, repr=False, compare=False)


def _require(cond, key, message):
    if not cond:
        raise ConfigError(key, message)


def _check_keys(mapping, allowed, prefix=""):
    for k in mapping:
        if k not in allowed:
            raise ConfigError(f"{prefix}{k}", "unknown key")


def _get_number(section, key, prefix, default=None):
    if key not in section:
        if default is None:
            raise ConfigError(f"{prefix}{key}", "missing required key")
        return default
    v = section[key]
    _require(isinstance(v, (int, float)) and not isinstance(v, bool),
             f"{prefix}{key}", f"expected a number, got {v!r}")
    _require(math.isfinite(float(v)), f"{prefix}{key}", "must be finite")
    return float(v)


def _parse_initial_state(section):
    if section is None:
        return InitialState.maximally_mixed()
    _check_keys(section, _STATE_KEYS, "initial_state.")
    kind = section.get("kind")
    if kind == "maximally_mixed":
        return InitialState.maximally_mixed()
    if kind == "eigenbasis_pure":
        idx = section.get("index", 0)
        _require(isinstance(idx, int) and not isinstance(idx, bool),
                 "initial_state.index", "expected an integer")
        return InitialState.eigenbasis_pure(idx)
    if kind == "coherent_superposition":
        idxs = section.get("indices")
        amps = section.get("amplitudes")
        _require(isinstance(idxs, list) and idxs, "initial_state.indices", "expected a non-empty list")
        _require(isinstance(amps, list) and len(amps) == len(idxs),
                 "initial_state.amplitudes", "expected a list matching indices")
        parsed = []
        for a in amps:
            if isinstance(a, (int, float)) and not isinstance(a, bool):
                parsed.append(complex(a))
            elif isinstance(a, list) and len(a) == 2:
                parsed.append(complex(a[0], a[1]))
            else:
                raise ConfigError("initial_state.amplitudes",
                                  f"amplitudes are numbers or [re, im] pairs, got {a!r}")
        return InitialState.coherent_superposition(idxs, parsed)
    if kind == "custom":
        path = section.get("path")
        _require(isinstance(path, str), "initial_state.path", "expected a file path")
        return InitialState.custom(_load_matrix(path, "initial_state.path"))
    raise ConfigError("initial_state.kind", f"unknown kind {kind!r}")


def _load_matrix(path, key):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(key, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(key, f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or "re" not in data:
        raise ConfigError(key, f"{path} must hold an object with 're' (and optional 'im') arrays")
    re = np.asarray(data["re"], dtype=np.float64)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=np.float64)
    if re.shape != im.shape or re.ndim != 2:
        raise ConfigError(key, f"'re'/'im' in {path} must be matching 2-D arrays")
    return re + 1j * im


def _parse_coupling(value):
    if value == "sz":
        return CouplingSpec.sz()
    if value == "sminus":
        return CouplingSpec.sminus()
    if isinstance(value, str) and value.startswith("custom:"):
        return CouplingSpec.custom(_load_matrix(value[len("custom:"):], "coupling"))
    raise ConfigError("coupling", f"expected 'sz', 'sminus' or 'custom:<path>', got {value!r}")


def parse_config(data: dict) -> RunConfig:
    _require(isinstance(data, dict), "<root>", "configuration must be a JSON object")
    _check_keys(data, _TOP_KEYS)

    spin_text = data.get("spin")
    _require(isinstance(spin_text, str), "spin", "expected a string like '1/2' or '1'")
    try:
        spin = SpinQuantumNumber.from_string(spin_text)
    except ValueError as exc:
        raise ConfigError("spin", str(exc)) from exc

    omega_s = _get_number(data, "omega_s", "")
    _require(omega_s > 0, "omega_s", "must be > 0")
    alpha = _get_number(data, "alpha", "", default=0.0)
    _require(0.0 <= alpha < math.pi, "alpha", "must lie in [0, pi)")
    phi = _get_number(data, "phi", "", default=0.0)
    _require(0.0 <= phi < 2.0 * math.pi, "phi", "must lie in [0, 2*pi)")
    drive = DriveParameters(omega_s=omega_s, alpha=alpha, phi=phi)

    coupling = _parse_coupling(data.get("coupling", "sz"))

    bath_section = data.get("bath")
    _require(isinstance(bath_section, dict), "bath", "missing bath section")
    _check_keys(bath_section, _BATH_KEYS, "bath.")
    eta = _get_number(bath_section, "eta", "bath.")
    _require(eta >= 0, "bath.eta", "must be >= 0")
    exponent_s = _get_number(bath_section, "exponent_s", "bath.", default=1.0)
    _require(exponent_s > 0, "bath.exponent_s", "must be > 0")
    omega_c = _get_number(bath_section, "omega_c", "bath.")
    _require(omega_c > 0, "bath.omega_c", "must be > 0")
    temperature = _get_number(bath_section, "temperature", "bath.", default=0.0)
    _require(temperature >= 0, "bath.temperature", "must be >= 0")
    jdens = SpectralDensity(eta=eta, exponent_s=exponent_s, omega_c=omega_c)
    bath = BathState(temperature=temperature)

    grid_section = data.get("grid") or {}
    _check_keys(grid_section, _GRID_KEYS, "grid.")
    t_max = _get_number(grid_section, "t_max", "grid.", default=20.0 / omega_s)
    _require(t_max > 0, "grid.t_max", "must be > 0")
    steps_v = grid_section.get("steps", 2000)
    _require(isinstance(steps_v, int) and not isinstance(steps_v, bool) and steps_v >= 1,
             "grid.steps", "must be a positive integer")
    factor = _get_number(grid_section, "max_step_factor", "grid.", default=0.05)
    _require(factor > 0, "grid.max_step_factor", "must be > 0")
    grid = GridSpec(t_max=t_max, steps=steps_v, max_step_factor=factor)
    cap = factor / max(omega_s, omega_c)
    if grid.h > cap * (1.0 + 1e-12):
        need = math.ceil(t_max / cap)
        raise ConfigError("grid.steps",
                          f"step {grid.h:.3e} exceeds max_step_factor/max(omega_s, omega_c)"
                          f" = {cap:.3e}; use at least {need} steps")

    quad_section = data.get("quadrature") or {}
    _check_keys(quad_section, _QUAD_KEYS, "quadrature.")
    nodes = quad_section.get("nodes_per_panel", 64)
    _require(isinstance(nodes, int) and not isinstance(nodes, bool) and nodes >= 2,
             "quadrature.nodes_per_panel", "must be an integer >= 2")
    pw = _get_number(quad_section, "panel_width_factor", "quadrature.", default=4.0)
    _require(pw > 0, "quadrature.panel_width_factor", "must be > 0")
    tail = _get_number(quad_section, "tail_cut", "quadrature.", default=1e-14)
    _require(0 < tail < 1, "quadrature.tail_cut", "must lie in (0, 1)")
    refine = quad_section.get("resonance_refine", 4)
    _require(isinstance(refine, int) and not isinstance(refine, bool) and refine >= 1,
             "quadrature.resonance_refine", "must be an integer >= 1")
    halfwidth = _get_number(quad_section, "resonance_halfwidth", "quadrature.", default=10.0)
    _require(halfwidth > 0, "quadrature.resonance_halfwidth", "must be > 0")
    max_mult = quad_section.get("max_tail_multiples", 1000)
    _require(isinstance(max_mult, int) and not isinstance(max_mult, bool) and max_mult >= 1,
             "quadrature.max_tail_multiples", "must be an integer >= 1")
    quadrature = QuadratureSettings(
        nodes_per_panel=nodes, panel_width_factor=pw, tail_cut=tail,
        resonance_refine=refine, resonance_halfwidth=halfwidth,
        max_tail_multiples=max_mult,
    )

    g_section = data.get("g") or {}
    _check_keys(g_section, _G_KEYS, "g.")
    t1_rel = _get_number(g_section, "t1_rel", "g.", default=1e-6)
    _require(0 < t1_rel < 1, "g.t1_rel", "must lie in (0, 1)")

    initial_state = _parse_initial_state(data.get("initial_state"))

    output_section = data.get("output") or {}
    _check_keys(output_section, _OUTPUT_KEYS, "output.")
    fmt = output_section.get("format", "csv")
    _require(fmt in ("csv", "json"), "output.format", f"expected 'csv' or 'json', got {fmt!r}")
    out_path = output_section.get("path")
    _require(out_path is None or isinstance(out_path, str), "output.path", "expected a string path")

    sweep_param, sweep_values = None, ()
    if "sweep" in data:
        sweep_section = data["sweep"]
        _require(isinstance(sweep_section, dict), "sweep", "expected an object")
        _check_keys(sweep_section, _SWEEP_KEYS, "sweep.")
        sweep_param = sweep_section.get("parameter")
        _require(sweep_param in SWEEPABLE, "sweep.parameter",
                 f"must be one of {sorted(SWEEPABLE)}, got {sweep_param!r}")
        values = sweep_section.get("values")
        _require(isinstance(values, list) and values, "sweep.values", "expected a non-empty list")
        for v in values:
            _require(isinstance(v, (int, float)) and not isinstance(v, bool),
                     "sweep.values", f"expected numbers, got {v!r}")
        sweep_values = tuple(float(v) for v in values)

    threads = data.get("threads", 1)
    _require(isinstance(threads, int) and not isinstance(threads, bool) and threads >= 1,
             "threads", "must be an integer >= 1")

    try:
        initial_state_check = initial_state.resolve(spin.d)  # noqa: F841  (fail fast)
    except Exception as exc:
        raise ConfigError("initial_state", str(exc)) from exc

    return RunConfig(
        spin=spin, drive=drive, coupling=coupling, spectral_density=jdens, bath=bath,
        grid=grid, quadrature=quadrature, t1_rel=t1_rel, initial_state=initial_state,
        output_format=fmt, output_path=out_path,
        sweep_parameter=sweep_param, sweep_values=sweep_values, threads=threads,
        raw=data,
    )


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("<config>", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("<config>", f"invalid JSON: {exc}") from exc
    return parse_config(data)


def with_sweep_value(cfg: RunConfig, parameter: str, value: float) -> RunConfig:
    """A copy of the config with one swept parameter replaced (sweep key dropped)."""
    data = json.loads(json.dumps(cfg.raw))
    data.pop("sweep", None)
    if "." in parameter:
        section, key = parameter.split(".", 1)
        data.setdefault(section, {})[key] = value
    else:
        data[parameter] = value
    return parse_config(data)
