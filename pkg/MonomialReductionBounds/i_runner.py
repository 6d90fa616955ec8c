"""
i_runner.py

Executes the tasks of instance configs and assembles VerificationReports.

Each instance runs its tasks in declaration order. Several instances fan out
to a ThreadPoolExecutor behind a tqdm bar; log lines are routed through the
bar, and per-task problems are collected and logged once the bar completes.
The report is assembled in instance-key order whatever the completion order.
"""

import concurrent.futures
import dataclasses
import logging
import time
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from tqdm import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from .a_exponent_core import as_exponent
from .b_ideal_engine import ideal_contains_monomial
from .c_closures import integral_closure, is_reduction, ratliff_rush
from .d_invariants import hilbert_coefficients, length_quotient, nu_quotient, reduction_number
from .e_filtrations import Filtration, BoundInstance
from .f_verify_bounds import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    UNRESOLVED,
    VerificationRecord,
    json_number,
    verify_closure_gap_bound,
    verify_filtration_bound,
    verify_generator_bound,
    verify_hilbert_bound,
    verify_ideal_gap_bound,
)
from .g_determinant_trick import certificate_for_instance
from .h_instances import COMPUTE, IDEAL_PARAMS, InstanceConfig, TaskSpec, load_config
from .helpers import AlgebraError, ConfigError, HypothesisNotMet, UnresolvedBound
from .j_report import InstanceResult, VerificationReport

logger = logging.getLogger(__name__)


def _param(params: dict, key: str):
    if key not in params:
        raise ConfigError(f"task parameter '{key}' is required")
    return params[key]


def _filtration(cfg: InstanceConfig, params: dict) -> Filtration:
    spec = params.get("filtration") or {"kind": "adic", "base": _param(params, "I")}
    return Filtration(spec["kind"], cfg.resolve(spec["base"]))


def _bound_instance(cfg: InstanceConfig, params: dict, a_default: str = "0") -> BoundInstance:
    return BoundInstance(
        cfg.resolve(_param(params, "I")),
        cfg.resolve(_param(params, "Q")),
        cfg.resolve(params.get("a", a_default)),
        _filtration(cfg, params),
        k_search=cfg.bounds.k,
        v_search=cfg.bounds.v,
        rn_bound=cfg.bounds.rn,
        k=params.get("k"),
    )


def _pair(cfg: InstanceConfig, params: dict):
    return cfg.resolve(_param(params, "Q")), cfg.resolve(_param(params, "I"))


def _task_inputs(cfg: InstanceConfig, params: dict) -> dict:
    """Task parameters with every ideal reference resolved to its generators."""
    inputs = {}
    for key, value in sorted(params.items()):
        if key in IDEAL_PARAMS:
            inputs[key] = cfg.resolve(value).to_config()
        elif key == "filtration":
            inputs[key] = Filtration(value["kind"], cfg.resolve(value["base"])).describe()
        else:
            inputs[key] = value
    return inputs


# compute targets return (value, extra quantities)

def _compute_reduction_number(cfg, params):
    Q, I = _pair(cfg, params)
    return json_number(reduction_number(Q, I, cfg.bounds.rn)), {}


def _compute_ratliff_rush(cfg, params):
    result = ratliff_rush(cfg.resolve(_param(params, "I")))
    return result.closure.to_config(), {"steps": result.steps, "window": result.window}


def _compute_integral_closure(cfg, params):
    return integral_closure(cfg.resolve(_param(params, "I"))).to_config(), {}


def _compute_length(cfg, params):
    return json_number(length_quotient(cfg.ambient, cfg.resolve(_param(params, "I")))), {}


def _compute_nu(cfg, params):
    return nu_quotient(cfg.resolve(_param(params, "F")), cfg.resolve(_param(params, "G"))), {}


def _compute_hilbert(cfg, params):
    data = hilbert_coefficients(_filtration(cfg, params))
    return list(data.fitted), {"stabilizationIndex": data.stabilization_index, "terms": len(data.lengths)}


def _compute_is_reduction(cfg, params):
    Q, I = _pair(cfg, params)
    test = is_reduction(Q, I, cfg.bounds.rn)
    return test.status, {"n": test.n, "bound": test.bound}


def _compute_equality(cfg, params):
    return cfg.resolve(_param(params, "left")) == cfg.resolve(_param(params, "right")), {}


def _compute_membership(cfg, params):
    try:
        e = as_exponent(_param(params, "exponent"), cfg.ambient.dim)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad exponent: {err}")
    return ideal_contains_monomial(cfg.resolve(_param(params, "ideal")), e), {}


COMPUTERS: Dict[str, Callable] = {
    "reduction_number": _compute_reduction_number,
    "ratliff_rush": _compute_ratliff_rush,
    "integral_closure": _compute_integral_closure,
    "length": _compute_length,
    "nu": _compute_nu,
    "hilbert": _compute_hilbert,
    "is_reduction": _compute_is_reduction,
    "equality": _compute_equality,
    "membership": _compute_membership,
}


def _verify_determinant_trick(cfg, params) -> VerificationRecord:
    inst = _bound_instance(cfg, params)
    seed = params.get("seed", cfg.seed if cfg.seed is not None else 0)
    certificate = certificate_for_instance(inst, seed=seed)
    quantities = {"v": certificate.v, "blockIndices": list(certificate.block_indices),
                  "certificate": certificate.to_report()}
    return VerificationRecord("determinant_trick", PASS, quantities,
                              {"I": inst.I.to_config(), "Q": inst.Q.to_config(), "filtration": inst.F.describe()})


VERIFIERS: Dict[str, Callable] = {
    "filtration_bound": lambda cfg, p: verify_filtration_bound(_bound_instance(cfg, p)),
    "generator_bound": lambda cfg, p: verify_generator_bound(_bound_instance(cfg, p, a_default="m")),
    "ideal_gap_bound": lambda cfg, p: verify_ideal_gap_bound(
        cfg.resolve(_param(p, "I")), cfg.resolve(_param(p, "Q")), cfg.resolve(_param(p, "J")), cfg.bounds.rn),
    "closure_gap_bound": lambda cfg, p: verify_closure_gap_bound(
        cfg.resolve(_param(p, "I")), cfg.resolve(_param(p, "Q")), cfg.bounds.rn),
    "hilbert_bound": lambda cfg, p: verify_hilbert_bound(
        cfg.resolve(_param(p, "I")), cfg.resolve(_param(p, "Q")),
        cfg.resolve(p["J"]) if "J" in p else None, p.get("part", 1), cfg.bounds.rn, cfg.bounds.v),
    "determinant_trick": _verify_determinant_trick,
}


def _apply_expect(record: VerificationRecord, expect) -> None:
    if expect is None or record.verdict != PASS:
        return
    if "value" in record.quantities:
        if record.quantities["value"] != expect:
            record.verdict = FAIL
            record.detail = f"expected {expect!r}, got {record.quantities['value']!r}"
        return
    if not isinstance(expect, dict):
        raise ConfigError(f"expectations of '{record.target}' must be an object of quantities")
    mismatched = [f"{key}: expected {want!r}, got {record.quantities.get(key)!r}"
                  for key, want in sorted(expect.items()) if record.quantities.get(key) != want]
    if mismatched:
        record.verdict = FAIL
        record.detail = "; ".join(mismatched)


def run_task(cfg: InstanceConfig, task: TaskSpec) -> VerificationRecord:
    """Run one task. ConfigError escapes; every other engine error becomes a record."""
    started = time.perf_counter()
    try:
        if task.kind == COMPUTE:
            value, extra = COMPUTERS[task.target](cfg, task.params)
            record = VerificationRecord(task.target, PASS, dict(extra, value=value))
        else:
            record = VERIFIERS[task.target](cfg, task.params)
    except ConfigError:
        raise
    except HypothesisNotMet as e:
        record = VerificationRecord(task.target, HYPOTHESIS_NOT_MET, detail=str(e))
    except UnresolvedBound as e:
        record = VerificationRecord(task.target, UNRESOLVED, {"bound": e.bound}, detail=str(e))
    except AlgebraError as e:
        record = VerificationRecord(task.target, FAIL, detail=f"{type(e).__name__}: {e}")
    if not record.inputs:
        record.inputs = _task_inputs(cfg, task.params)
    _apply_expect(record, task.expect)
    record.elapsed = time.perf_counter() - started
    return record


def run_instance(cfg: InstanceConfig, kinds: Optional[Iterable[str]] = None) -> InstanceResult:
    kinds = set(kinds) if kinds is not None else None
    records = []
    for task in cfg.tasks:
        if kinds is not None and task.kind not in kinds:
            continue
        logger.debug("%s: %s %s", cfg.name, task.kind, task.target)
        records.append(run_task(cfg, task))
    return InstanceResult(cfg.name, tuple(records))


def run_instances(configs: Sequence[InstanceConfig], workers: int = 1, kinds: Optional[Iterable[str]] = None,
                  progress: bool = True) -> VerificationReport:
    names = [cfg.name for cfg in configs]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ConfigError(f"instance names must be unique, repeated: {', '.join(duplicates)}")
    results: Dict[str, InstanceResult] = {}
    # collected while the bar runs, logged afterwards
    problems: List[str] = []
    with logging_redirect_tqdm():
        with tqdm(total=len(configs), desc="Running instances", unit="instance", disable=not progress) as pbar:
            with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
                future_to_name = {executor.submit(run_instance, cfg, kinds): cfg.name for cfg in configs}
                for future in concurrent.futures.as_completed(future_to_name):
                    result = future.result()
                    results[result.name] = result
                    for record in result.records:
                        if record.verdict != PASS:
                            problems.append(f"{result.name}: {record.target} -> {record.verdict} {record.detail}".rstrip())
                    pbar.update(1)
    logger.info("Completed %d instance(s).", len(results))
    if problems:
        logger.warning("The following tasks did not pass:")
        for line in problems:
            logger.warning("  - %s", line)
    return VerificationReport(tuple(results[name] for name in sorted(results)))


def apply_overrides(cfg: InstanceConfig, rn: Optional[int] = None, k: Optional[int] = None,
                    v: Optional[int] = None, seed: Optional[int] = None) -> InstanceConfig:
    """Command-line bounds and seed take precedence over the file."""
    changes = {key: value for key, value in (("rn", rn), ("k", k), ("v", v)) if value is not None}
    for key, value in changes.items():
        if value <= 0:
            raise ConfigError(f"--bound-{key} must be positive, got {value}")
    cfg = dataclasses.replace(cfg, bounds=dataclasses.replace(cfg.bounds, **changes))
    if seed is not None:
        cfg = dataclasses.replace(cfg, seed=seed)
    return cfg


def run_config(path, kinds: Optional[Iterable[str]] = None, **overrides) -> VerificationReport:
    cfg = apply_overrides(load_config(path), **overrides)
    logger.info("Running %d task(s) of %s", len(cfg.tasks), cfg.name)
    return VerificationReport((run_instance(cfg, kinds),))
