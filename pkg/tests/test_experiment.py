import json
import math

import pytest

import hypermatch.experiment as exp
from hypermatch import check_perfect_matching
from hypermatch.rng import substream


def small_config(**overrides):
    base = dict(n=6, k=3, p=1.0, epsilon=0.1, trials=3, base_seed=11,
                partition_retries=5, pi_budget=10)
    base.update(overrides)
    return exp.ExperimentConfig(**base)


def test_validation_rejects_bad_configs():
    with pytest.raises(ValueError):
        small_config(n=7).validate()
    with pytest.raises(ValueError):
        small_config(p=1.5).validate()
    with pytest.raises(ValueError):
        small_config(trials=0).validate()
    with pytest.raises(ValueError):
        small_config(adversary="chaos").validate()
    with pytest.raises(ValueError):
        small_config(v1_size=2).validate()
    with pytest.raises(ValueError):
        small_config(epsilon=-0.1).validate()


def test_threshold_rule():
    cfg = small_config(n=60, p=0.5, epsilon=0.2, adversary="greedy")
    assert cfg.resolved_threshold() == math.ceil(0.7 * 60 * 0.5) == 21
    assert small_config(adversary="greedy", greedy_threshold=5).resolved_threshold() == 5


def test_config_json_round_trip():
    cfg = small_config(adversary="greedy", greedy_threshold=4)
    assert exp.ExperimentConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        exp.ExperimentConfig.from_json(json.dumps({"n": 6, "bogus": 1}))


def test_complete_instance_all_match():
    outs = exp.run_experiment(small_config())
    assert len(outs) == 3
    for o in outs:
        assert o.record.matched and o.record.verified
        assert o.record.failure_stage == ""
        assert o.matching is not None


def test_parity_adversary_never_matches():
    outs = exp.run_experiment(small_config(adversary="parity", p=0.9, trials=4))
    for o in outs:
        assert not o.record.matched and not o.record.verified
        assert o.record.failure_stage == "pi-search"
        assert o.certificate is not None
        assert o.record.edges_after < o.record.edges_before


def test_trial_seed_derivation_and_hermeticity():
    cfg = small_config(trials=4)
    outs = exp.run_experiment(cfg)
    for t, o in enumerate(outs):
        assert o.record.trial == t
        assert o.record.seed == substream(cfg.base_seed, t)
    # single trial rerun reproduces the full-run record
    solo = exp.run_trial(cfg, 2)
    assert solo.record == outs[2].record


def test_matchings_verify_against_rederived_hypergraph():
    cfg = small_config(n=12, p=0.8, adversary="greedy", greedy_threshold=3, trials=4)
    for o in exp.run_experiment(cfg):
        if o.record.matched:
            _, resisted = exp.derive_trial_hypergraphs(cfg, o.record.trial)
            assert check_perfect_matching(resisted, o.matching).ok


def test_records_deterministic_and_schedule_independent():
    cfg = small_config(n=12, p=0.7, trials=6, adversary="greedy", greedy_threshold=2)
    serial = exp.records(exp.run_experiment(cfg))
    again = exp.records(exp.run_experiment(cfg))
    threaded = exp.records(exp.run_experiment(cfg, workers=3))
    assert serial == again == threaded


def test_csv_header_and_round_trip(tmp_path):
    cfg = small_config(trials=3)
    recs = exp.records(exp.run_experiment(cfg))
    text = exp.records_to_csv(recs)
    assert text.splitlines()[0] == ",".join(exp.CSV_COLUMNS)
    path = tmp_path / "runs.csv"
    exp.write_records_csv(path, recs)
    assert exp.read_records_csv(path) == recs


def test_csv_byte_identical_across_runs(tmp_path):
    cfg = small_config(n=12, p=0.8, trials=5, adversary="parity")
    a = exp.records_to_csv(exp.records(exp.run_experiment(cfg)))
    b = exp.records_to_csv(exp.records(exp.run_experiment(cfg)))
    assert a.encode() == b.encode()


def test_timing_flag_populates_runtime(tmp_path):
    silent = exp.records(exp.run_experiment(small_config()))
    assert all(r.runtime_ms == 0 for r in silent)
    timed = exp.records(exp.run_experiment(small_config(record_timing=True)))
    assert all(r.runtime_ms >= 0 for r in timed)


def test_summarize_counts():
    cfg = small_config(trials=3)
    recs = exp.records(exp.run_experiment(cfg))
    summary = exp.summarize(recs)
    assert summary.trials == 3 and summary.matched == 3
    assert summary.success_rate == 1.0
    mixed = recs + exp.records(exp.run_experiment(small_config(adversary="parity", p=0.9, trials=7)))
    assert exp.summarize(mixed).success_rate == 0.3
    with pytest.raises(ValueError):
        exp.summarize([])


def test_summary_round_trips_through_csv(tmp_path):
    cfg = small_config(n=12, p=0.8, trials=6, adversary="greedy", greedy_threshold=2)
    recs = exp.records(exp.run_experiment(cfg))
    path = tmp_path / "r.csv"
    exp.write_records_csv(path, recs)
    assert exp.summarize(exp.read_records_csv(path)) == exp.summarize(recs)


def test_json_superset_of_csv(tmp_path):
    cfg = small_config(adversary="parity", p=0.9, trials=2)
    outs = exp.run_experiment(cfg)
    payload = json.loads(exp.outcomes_to_json(cfg, outs))
    assert set(payload) == {"config", "records", "summary"}
    for rec in payload["records"]:
        assert set(exp.CSV_COLUMNS) <= set(rec)
        assert rec["certificate"] is not None  # parity trials always fail
    path = tmp_path / "r.json"
    exp.write_outcomes_json(path, cfg, outs)
    assert json.loads(path.read_text()) == payload
