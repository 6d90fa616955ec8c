from __future__ import annotations

import json
from pathlib import Path

import pytest

from MonomialReductionBounds.b_ideal_engine import ideal_leq, ideal_product
from MonomialReductionBounds.c_closures import YES, is_reduction
from MonomialReductionBounds.h_instances import (
    COMPUTE,
    config_to_dict,
    generate_random_corpus,
    generate_veronese_family,
    load_config,
    parse_config,
)
from MonomialReductionBounds.helpers import ConfigError, dumps_stable


def _raw(**overrides):
    raw = {
        "schemaVersion": 1,
        "name": "desk",
        "ambient": {"kind": "free", "dim": 2},
        "ideals": {"I": [[2, 0], [1, 1], [0, 2]], "Q": [[2, 0], [0, 2]]},
        "tasks": [{"kind": "compute", "target": "reduction_number", "params": {"Q": "Q", "I": "I"}, "expect": 1}],
    }
    raw.update(overrides)
    return raw


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def test_parse_minimal_config():
    cfg = parse_config(_raw())
    assert cfg.name == "desk"
    assert cfg.ideals["I"].gens == ((2, 0), (1, 1), (0, 2))
    assert cfg.tasks[0].kind == COMPUTE
    assert cfg.tasks[0].expect == 1
    assert cfg.bounds.k == 24 and cfg.bounds.rn is None


def test_config_round_trips_through_dict():
    cfg = parse_config(_raw(bounds={"rn": 5}, seed=3))
    again = parse_config(config_to_dict(cfg))
    assert again == cfg
    assert config_to_dict(again)["bounds"] == {"k": 24, "rn": 5, "v": 24}


def test_ideals_are_minimalized():
    cfg = parse_config(_raw(ideals={"I": [[2, 2], [2, 0], [0, 3]]}, tasks=[]))
    assert cfg.ideals["I"].gens == ((2, 0), (0, 3))


def test_resolve_references():
    cfg = parse_config(_raw())
    I, Q = cfg.ideals["I"], cfg.ideals["Q"]
    assert cfg.resolve(["Q", "I"]) == ideal_product(Q, I)
    assert cfg.resolve("m").gens == ((1, 0), (0, 1))
    assert cfg.resolve("0").is_zero
    assert cfg.resolve("A").is_unit
    with pytest.raises(ConfigError):
        cfg.resolve("J")


@pytest.mark.parametrize("overrides", [
    {"schemaVersion": 2},
    {"ambient": {"kind": "toric"}},
    {"ambient": {"kind": "veronese"}},
    {"ideals": {"m": [[1, 0]]}},
    {"ideals": {"I": [[1, 0, 0]]}},
    {"ideals": {"I": "x^2"}},
    {"bounds": {"rn": 0}},
    {"bounds": {"k": -3}},
    {"seed": "abc"},
    {"tasks": [{"kind": "compute", "target": "filtration_bound"}]},
    {"tasks": [{"kind": "verify", "target": "length"}]},
    {"tasks": [{"kind": "prove", "target": "length"}]},
    {"tasks": [{"kind": "compute", "target": "length", "params": {"I": "J"}}]},
    {"tasks": [{"kind": "verify", "target": "filtration_bound",
                "params": {"I": "I", "Q": "Q", "filtration": {"kind": "symbolic", "base": "I"}}}]},
    {"tasks": [{"kind": "verify", "target": "filtration_bound", "params": {"I": "I", "Q": "Q", "k": "1"}}]},
    {"tasks": [{"kind": "verify", "target": "filtration_bound", "params": {"I": "I", "Q": "Q", "k": -1}}]},
    {"tasks": [{"kind": "verify", "target": "hilbert_bound", "params": {"I": "I", "Q": "Q", "part": "2"}}]},
    {"tasks": [{"kind": "verify", "target": "hilbert_bound", "params": {"I": "I", "Q": "Q", "part": 3}}]},
    {"tasks": [{"kind": "verify", "target": "determinant_trick", "params": {"I": "I", "Q": "Q", "seed": 1.5}}]},
    {"tasks": [{"kind": "compute", "target": "membership", "params": {"exponent": ["x", 1], "ideal": "Q"}}]},
    {"tasks": [{"kind": "compute", "target": "membership", "params": {"exponent": "11", "ideal": "Q"}}]},
])
def test_invalid_configs_are_rejected(overrides):
    with pytest.raises(ConfigError):
        parse_config(_raw(**overrides))


def test_veronese_ideals_must_be_members():
    with pytest.raises(ConfigError):
        parse_config(_raw(ambient={"kind": "veronese", "degree": 3}, ideals={"I": [[1, 0]]}, tasks=[]))


def test_load_config_reports_position(tmp_path: Path):
    path = tmp_path / "broken.json"
    path.write_text('{"schemaVersion": 1,\n  "name": }\n', encoding="utf-8")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "line 2" in str(err.value)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")


def test_load_config_from_file(tmp_path: Path):
    path = tmp_path / "desk.json"
    _write_json(path, _raw())
    assert load_config(path) == parse_config(_raw())


@pytest.mark.parametrize("n,part", [(3, 1), (5, 1), (4, 2), (6, 2)])
def test_family_instances(n, part):
    cfg = generate_veronese_family(n, part)
    assert cfg.name == f"veronese-{n}-part{part}"
    assert cfg.ambient.degree == n
    rn = n - 1 if part == 1 else n - 2
    assert cfg.tasks[0].target == "reduction_number"
    assert cfg.tasks[0].expect == rn
    assert ideal_leq(cfg.resolve("Q"), cfg.resolve("I"))
    assert parse_config(config_to_dict(cfg)) == cfg


def test_family_generator_ideals():
    cfg = generate_veronese_family(3, 1)
    assert cfg.ideals["I"].gens == ((3, 0), (2, 1), (0, 3))
    assert cfg.ideals["Q"].gens == ((3, 0), (0, 3))
    cfg = generate_veronese_family(4, 2)
    assert cfg.ideals["J"].gens == ((4, 0), (3, 1), (2, 2), (1, 3))


@pytest.mark.parametrize("n,part", [(2, 1), (3, 2), (5, 3)])
def test_family_rejects_small_degrees(n, part):
    with pytest.raises(ConfigError):
        generate_veronese_family(n, part)


def test_corpus_is_deterministic():
    first = [dumps_stable(config_to_dict(cfg)) for cfg in generate_random_corpus(5, 8)]
    second = [dumps_stable(config_to_dict(cfg)) for cfg in generate_random_corpus(5, 8)]
    assert first == second
    assert first != [dumps_stable(config_to_dict(cfg)) for cfg in generate_random_corpus(6, 8)]


def test_corpus_instances_are_reductions_in_the_sampling_region():
    corpus = generate_random_corpus(1, 15)
    assert [cfg.name for cfg in corpus] == [f"free2-1-{i:04d}" for i in range(15)]
    for cfg in corpus:
        I, Q = cfg.resolve("I"), cfg.resolve("Q")
        a = max(g[0] for g in Q.gens)
        b = max(g[1] for g in Q.gens)
        assert set(Q.gens) == {(a, 0), (0, b)}
        assert is_reduction(Q, I).status == YES
        for x, y in I.gens:
            if (x, y) not in Q.gens:
                assert x < a and y < b
                assert b * x + a * y >= a * b
        assert cfg.seed == 1


def test_corpus_rejects_bad_arguments():
    with pytest.raises(ConfigError):
        generate_random_corpus(0, 3, "affine")
    with pytest.raises(ConfigError):
        generate_random_corpus(0, -1)
    assert generate_random_corpus(0, 0) == []
