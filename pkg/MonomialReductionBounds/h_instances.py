"""
h_instances.py

Instance configs: JSON files (schemaVersion 1) declaring an ambient ring, named
ideals, search bounds and a list of tasks, plus the two built-in generators:

  generate_veronese_family(n, part)   the determinantal family on Veronese(n)
  generate_random_corpus(seed, count) seeded m-primary instances in Free(2)

Ideal references inside task parameters are a declared name, one of the
reserved names 'm' (graded maximal ideal), '0' (zero ideal), 'A' (unit ideal),
or a list of references meaning their product.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .a_exponent_core import AFFINE, FREE, VERONESE, AmbientRing
from .b_ideal_engine import (
    MonomialIdeal,
    ideal_product,
    maximal_ideal,
    minimalize,
    unit_ideal,
    zero_ideal,
)
from .c_closures import YES, integral_closure, is_reduction
from .e_filtrations import FILTRATION_KINDS
from .helpers import AlgebraError, ConfigError, load_json_file

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

COMPUTE = "compute"
VERIFY = "verify"

COMPUTE_TARGETS = (
    "reduction_number", "ratliff_rush", "integral_closure", "length", "nu",
    "hilbert", "is_reduction", "equality", "membership",
)
VERIFY_TARGETS = (
    "filtration_bound", "generator_bound", "ideal_gap_bound",
    "closure_gap_bound", "hilbert_bound", "determinant_trick",
)
RESERVED_IDEALS = ("m", "0", "A")
IDEAL_PARAMS = ("I", "Q", "J", "a", "F", "G", "left", "right", "ideal")

DEFAULT_K = 24
DEFAULT_V = 24

CORPUS_PROFILES = ("free2-mprimary",)


@dataclass(frozen=True)
class Bounds:
    rn: Optional[int] = None
    k: int = DEFAULT_K
    v: int = DEFAULT_V

    def to_config(self) -> dict:
        out = {"k": self.k, "v": self.v}
        if self.rn is not None:
            out["rn"] = self.rn
        return out


@dataclass(frozen=True)
class TaskSpec:
    kind: str
    target: str
    params: Dict[str, Any] = field(default_factory=dict)
    expect: Any = None

    def to_config(self) -> dict:
        out = {"kind": self.kind, "target": self.target, "params": self.params}
        if self.expect is not None:
            out["expect"] = self.expect
        return out


@dataclass(frozen=True)
class InstanceConfig:
    name: str
    ambient: AmbientRing
    ideals: Dict[str, MonomialIdeal]
    tasks: Tuple[TaskSpec, ...] = ()
    bounds: Bounds = Bounds()
    seed: Optional[int] = None

    def resolve(self, ref) -> MonomialIdeal:
        """Turn an ideal reference into the ideal it names."""
        if isinstance(ref, list):
            if not ref:
                raise ConfigError("empty product reference")
            result = self.resolve(ref[0])
            for part in ref[1:]:
                result = ideal_product(result, self.resolve(part))
            return result
        if ref == "m":
            return maximal_ideal(self.ambient)
        if ref == "0":
            return zero_ideal(self.ambient)
        if ref == "A":
            return unit_ideal(self.ambient)
        if isinstance(ref, str) and ref in self.ideals:
            return self.ideals[ref]
        raise ConfigError(f"unknown ideal reference {ref!r} in {self.name}")


def _require(raw: dict, key: str, kind, where: str):
    if key not in raw:
        raise ConfigError(f"{where}: missing field '{key}'")
    value = raw[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def _parse_ambient(raw, where: str) -> AmbientRing:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    kind = _require(raw, "kind", str, where)
    try:
        if kind == FREE:
            return AmbientRing.free(_require(raw, "dim", int, where))
        if kind == VERONESE:
            return AmbientRing.veronese(_require(raw, "degree", int, where))
        if kind == AFFINE:
            return AmbientRing.affine(_require(raw, "gens", list, where))
    except ConfigError:
        raise
    except (AlgebraError, TypeError, ValueError) as e:
        raise ConfigError(f"{where}: {e}")
    raise ConfigError(f"{where}.kind: unknown ambient kind '{kind}'")


def _parse_bounds(raw, where: str) -> Bounds:
    if raw is None:
        return Bounds()
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    values = {}
    for key in ("rn", "k", "v"):
        if key in raw and raw[key] is not None:
            value = raw[key]
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigError(f"{where}.{key}: bounds must be positive integers, got {value!r}")
            values[key] = value
    return Bounds(**values)


def _check_ref(cfg: InstanceConfig, ref, where: str) -> None:
    if isinstance(ref, list):
        if not ref:
            raise ConfigError(f"{where}: empty product reference")
        for part in ref:
            _check_ref(cfg, part, where)
        return
    if not isinstance(ref, str) or (ref not in RESERVED_IDEALS and ref not in cfg.ideals):
        raise ConfigError(f"{where}: unknown ideal reference {ref!r}")


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_task_scalars(params: dict, where: str) -> None:
    k = params.get("k")
    if k is not None and (not _is_int(k) or k < 0):
        raise ConfigError(f"{where}.k: expected a non-negative integer, got {k!r}")
    if "part" in params and (not _is_int(params["part"]) or params["part"] not in (1, 2)):
        raise ConfigError(f"{where}.part: expected 1 or 2, got {params['part']!r}")
    if "seed" in params and not _is_int(params["seed"]):
        raise ConfigError(f"{where}.seed: expected an integer, got {params['seed']!r}")
    if "exponent" in params:
        exponent = params["exponent"]
        if not isinstance(exponent, list) or not all(_is_int(c) for c in exponent):
            raise ConfigError(f"{where}.exponent: expected a list of integers, got {exponent!r}")


def _parse_task(raw, where: str) -> TaskSpec:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    kind = _require(raw, "kind", str, where)
    if kind not in (COMPUTE, VERIFY):
        raise ConfigError(f"{where}.kind: expected 'compute' or 'verify', got {kind!r}")
    target = raw.get("target")
    if kind == COMPUTE and target not in COMPUTE_TARGETS:
        raise ConfigError(f"{where}.target: unknown compute target {raw.get('target')!r}")
    if kind == VERIFY and target not in VERIFY_TARGETS:
        raise ConfigError(f"{where}.target: unknown verify target {raw.get('target')!r}")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{where}.params: expected an object")
    _check_task_scalars(params, f"{where}.params")
    return TaskSpec(kind, target, params, raw.get("expect"))


def _check_task_refs(cfg: InstanceConfig, task: TaskSpec, where: str) -> None:
    for key in IDEAL_PARAMS:
        if key in task.params:
            _check_ref(cfg, task.params[key], f"{where}.params.{key}")
    filtration = task.params.get("filtration")
    if filtration is not None:
        if not isinstance(filtration, dict) or filtration.get("kind") not in FILTRATION_KINDS:
            raise ConfigError(f"{where}.params.filtration: expected {{'kind': one of {list(FILTRATION_KINDS)}, 'base': ref}}")
        _check_ref(cfg, filtration.get("base"), f"{where}.params.filtration.base")


def parse_config(raw, source: str = "<config>") -> InstanceConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level must be an object")
    version = raw.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"{source}.schemaVersion: expected {SCHEMA_VERSION}, got {version!r}")
    name = raw.get("name", source)
    ambient = _parse_ambient(raw.get("ambient"), f"{source}.ambient")
    ideals_raw = raw.get("ideals", {})
    if not isinstance(ideals_raw, dict):
        raise ConfigError(f"{source}.ideals: expected an object")
    ideals = {}
    for ideal_name, gens in ideals_raw.items():
        if ideal_name in RESERVED_IDEALS:
            raise ConfigError(f"{source}.ideals.{ideal_name}: '{ideal_name}' is a reserved name")
        if not isinstance(gens, list):
            raise ConfigError(f"{source}.ideals.{ideal_name}: expected a list of exponent vectors")
        try:
            ideals[ideal_name] = minimalize(ambient, gens)
        except (AlgebraError, TypeError, ValueError) as e:
            raise ConfigError(f"{source}.ideals.{ideal_name}: {e}")
    seed = raw.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ConfigError(f"{source}.seed: expected an integer")
    tasks_raw = raw.get("tasks", [])
    if not isinstance(tasks_raw, list):
        raise ConfigError(f"{source}.tasks: expected a list")
    tasks = tuple(_parse_task(t, f"{source}.tasks[{i}]") for i, t in enumerate(tasks_raw))
    cfg = InstanceConfig(str(name), ambient, ideals, tasks, _parse_bounds(raw.get("bounds"), f"{source}.bounds"), seed)
    for i, task in enumerate(tasks):
        _check_task_refs(cfg, task, f"{source}.tasks[{i}]")
    return cfg


def load_config(path) -> InstanceConfig:
    return parse_config(load_json_file(path), str(path))


def config_to_dict(cfg: InstanceConfig) -> dict:
    out = {
        "schemaVersion": SCHEMA_VERSION,
        "name": cfg.name,
        "ambient": cfg.ambient.to_config(),
        "ideals": {name: ideal.to_config() for name, ideal in cfg.ideals.items()},
        "bounds": cfg.bounds.to_config(),
        "tasks": [t.to_config() for t in cfg.tasks],
    }
    if cfg.seed is not None:
        out["seed"] = cfg.seed
    return out


def _power_ref(base: str, times: int) -> List[str]:
    return ["Q"] + [base] * times


def generate_veronese_family(n: int, part: int) -> InstanceConfig:
    """
    Veronese(n) image of the determinantal family, with x_i -> (n-i, i).
    part 1: I = (x_0, x_1, x_n), Q = (x_0, x_n), rn = n-1, nu(m/I) = n-2
    part 2: I = (x_0, x_1, x_{n-1}), Q = (x_0, x_{n-1}), J = (x_0..x_{n-1}),
            J^2 = QJ, nu(J/I) = n-3, rn = n-2
    """
    if part not in (1, 2):
        raise ConfigError(f"part must be 1 or 2, got {part}")
    if part == 1 and n < 3:
        raise ConfigError(f"part 1 needs n >= 3, got {n}")
    if part == 2 and n < 4:
        raise ConfigError(f"part 2 needs n >= 4 so that nu(J/I) >= 1, got {n}")
    A = AmbientRing.veronese(n)

    def x(i):
        return (n - i, i)

    if part == 1:
        ideals = {"I": minimalize(A, [x(0), x(1), x(n)]), "Q": minimalize(A, [x(0), x(n)])}
        gap, rn, nu = "m", n - 1, n - 2
        power = n - 1
    else:
        ideals = {
            "I": minimalize(A, [x(0), x(1), x(n - 1)]),
            "Q": minimalize(A, [x(0), x(n - 1)]),
            "J": minimalize(A, [x(i) for i in range(n)]),
        }
        gap, rn, nu = "J", n - 2, n - 3
        power = n - 2
    filtration = {"kind": "powers", "base": gap}
    x1_power = [(n - 1) * power, power]
    tasks = (
        TaskSpec(COMPUTE, "reduction_number", {"Q": "Q", "I": "I"}, rn),
        TaskSpec(COMPUTE, "nu", {"F": gap, "G": "I"}, nu),
        TaskSpec(COMPUTE, "equality", {"left": [gap, gap], "right": ["Q", gap]}, True),
        TaskSpec(COMPUTE, "membership", {"exponent": x1_power, "ideal": _power_ref("I", power - 1)}, False),
        TaskSpec(VERIFY, "ideal_gap_bound", {"I": "I", "Q": "Q", "J": gap}, {"rn": rn, "nu": nu, "tight": True}),
        TaskSpec(VERIFY, "filtration_bound", {"I": "I", "Q": "Q", "a": "0", "filtration": filtration},
                 {"k": 1, "v": nu}),
        TaskSpec(VERIFY, "generator_bound", {"I": "I", "Q": "Q", "filtration": filtration},
                 {"rn": rn, "bound1": rn, "tight": True}),
        TaskSpec(VERIFY, "determinant_trick", {"I": "I", "Q": "Q", "a": "0", "filtration": filtration}),
    )
    return InstanceConfig(f"veronese-{n}-part{part}", A, ideals, tasks)


def _draw_free2(rng: random.Random) -> Tuple[MonomialIdeal, MonomialIdeal]:
    A = AmbientRing.free(2)
    a, b = rng.randint(2, 6), rng.randint(2, 6)
    # under the staircase of Q but on or above the segment from (a,0) to (0,b)
    candidates = [(x, y) for x in range(a) for y in range(b) if b * x + a * y >= a * b]
    picked = rng.sample(candidates, rng.randint(0, min(4, len(candidates))))
    Q = minimalize(A, [(a, 0), (0, b)])
    return Q, minimalize(A, [(a, 0), (0, b)] + picked)


def _corpus_tasks(I: MonomialIdeal, closure: MonomialIdeal) -> Tuple[TaskSpec, ...]:
    pair = {"I": "I", "Q": "Q"}
    tasks = [
        TaskSpec(COMPUTE, "is_reduction", pair, YES),
        TaskSpec(COMPUTE, "ratliff_rush", {"I": "I"}),
        TaskSpec(VERIFY, "filtration_bound", dict(pair, a="0", filtration={"kind": "adic", "base": "I"})),
        TaskSpec(VERIFY, "filtration_bound", dict(pair, a="0", filtration={"kind": "powers", "base": "Ibar"})),
        TaskSpec(VERIFY, "filtration_bound",
                 dict(pair, a="0", filtration={"kind": "integral_closure", "base": "I"})),
        TaskSpec(VERIFY, "generator_bound", dict(pair, filtration={"kind": "integral_closure", "base": "I"})),
        TaskSpec(VERIFY, "closure_gap_bound", pair),
        TaskSpec(VERIFY, "ideal_gap_bound", dict(pair, J="Ibar")),
        TaskSpec(VERIFY, "hilbert_bound", dict(pair, part=1)),
        TaskSpec(VERIFY, "hilbert_bound", dict(pair, part=2)),
    ]
    if closure != I:
        tasks.append(TaskSpec(VERIFY, "determinant_trick",
                              dict(pair, a="0", filtration={"kind": "integral_closure", "base": "I"})))
    return tuple(tasks)


def generate_random_corpus(seed: int, count: int, profile: str = "free2-mprimary") -> List[InstanceConfig]:
    if profile not in CORPUS_PROFILES:
        raise ConfigError(f"unknown corpus profile '{profile}', expected one of {', '.join(CORPUS_PROFILES)}")
    if count < 0:
        raise ConfigError(f"count must be >= 0, got {count}")
    rng = random.Random(seed)
    corpus = []
    for index in range(count):
        while True:
            Q, I = _draw_free2(rng)
            if is_reduction(Q, I).status == YES:
                break
            logger.debug("redrawing corpus instance %d", index)
        closure = integral_closure(I)
        cfg = InstanceConfig(
            f"free2-{seed}-{index:04d}", I.ambient, {"I": I, "Ibar": closure, "Q": Q},
            _corpus_tasks(I, closure), Bounds(), seed)
        corpus.append(cfg)
    return corpus
