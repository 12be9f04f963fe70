"""Command line flows: output shape, exit codes, env plumbing."""

import random

import pytest

from sedsgo.cli import _build_parser, dispatch
from sedsgo.goboard import Color
from sedsgo.sgf import GameRecord, emit_sgf
from positions import (
    WALLED_RACE_BLACK,
    WALLED_RACE_SIZE,
    WALLED_RACE_WHITE,
    go_coords,
    walled_race_point,
)
from test_bench import _random_game


@pytest.fixture()
def race_sgf(tmp_path):
    rec = GameRecord(
        WALLED_RACE_SIZE,
        tuple(go_coords(WALLED_RACE_BLACK, WALLED_RACE_SIZE)),
        tuple(go_coords(WALLED_RACE_WHITE, WALLED_RACE_SIZE)),
        (),
        {},
    )
    path = tmp_path / "race.sgf"
    path.write_bytes(emit_sgf(rec))
    return path


@pytest.fixture()
def mini_corpus(tmp_path):
    rng = random.Random(31)
    for n in range(2):
        (tmp_path / f"g{n}.sgf").write_bytes(emit_sgf(_random_game(9, 10, rng)))
    return tmp_path


def test_eval_prints_board_and_score(race_sgf, capsys):
    assert dispatch(["eval", str(race_sgf)]) == 0
    out = capsys.readouterr().out
    assert "size 7, after 0 moves" in out
    assert "block survival s:" in out
    assert "statically-alive" in out
    assert "score: black" in out
    assert "converged:" in out
    # go column footer skips I
    assert " A " in out and " J " not in out


def test_eval_move_prefix(tmp_path, capsys):
    rec = _random_game(9, 6, random.Random(12))
    path = tmp_path / "g.sgf"
    path.write_bytes(emit_sgf(rec))
    assert dispatch(["eval", str(path), "--move", "2"]) == 0
    assert "after 2 moves" in capsys.readouterr().out
    assert dispatch(["eval", str(path), "--move", "99"]) == 1


def test_rank_top_list(race_sgf, capsys):
    code = dispatch(
        ["rank", str(race_sgf), "--top", "3", "--atari-adjustment", "off",
         "--stop-value", "1e-6", "--max-iter", "1000"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "black to play" in out
    lines = [l for l in out.splitlines() if ". " in l]
    assert len(lines) == 3
    # the capture leads the list; D1 in go labels
    assert "D1" in lines[0]
    assert lines[0].strip().startswith("1.")
    assert "p9" in lines[0]  # percentile 90+


def test_bench_summary_and_csv(mini_corpus, tmp_path, capsys):
    out_dir = tmp_path / "csv"
    code = dispatch(
        ["bench", str(mini_corpus), "--moves", "2,4", "--out", str(out_dir)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "games 2, positions 4" in out
    assert "R(80)" in out
    assert (out_dir / "histogram.csv").exists()
    assert (out_dir / "survival.csv").exists()


def test_bench_empty_corpus_fails(tmp_path, capsys):
    assert dispatch(["bench", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err


def test_bench_bad_moves_list(mini_corpus, capsys):
    assert dispatch(["bench", str(mini_corpus), "--moves", "a,b"]) == 1
    assert dispatch(["bench", str(mini_corpus), "--moves", "0"]) == 1


def test_timing_csv_output(mini_corpus, tmp_path, capsys):
    out_dir = tmp_path / "csv"
    code = dispatch(["timing", str(mini_corpus), "--moves", "3", "--out", str(out_dir)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("move_number,eval_us,rank_ms")
    assert (out_dir / "timing.csv").exists()


def test_timing_requires_moves(mini_corpus, capsys):
    assert dispatch(["timing", str(mini_corpus)]) == 1
    assert "usage" in capsys.readouterr().err


def test_no_subcommand_is_usage_error(capsys):
    assert dispatch([]) == 1
    assert "usage" in capsys.readouterr().err


def test_missing_file_is_input_error(capsys):
    assert dispatch(["eval", "no-such-game.sgf"]) == 1
    assert "error" in capsys.readouterr().err


def test_bad_config_value_is_input_error(race_sgf, capsys):
    assert dispatch(["eval", str(race_sgf), "--stop-value", "0"]) == 1


def test_internal_failure_exits_2(mini_corpus, monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("sedsgo.cli.run_corpus", boom)
    assert dispatch(["bench", str(mini_corpus)]) == 2
    assert "internal" in capsys.readouterr().err


def test_env_variables_set_solver_defaults(monkeypatch):
    monkeypatch.setenv("SEDS_STOP_VALUE", "1e-6")
    monkeypatch.setenv("SEDS_MAX_ITER", "50")
    args = _build_parser().parse_args(["eval", "x.sgf"])
    assert args.stop_value == 1e-6
    assert args.max_iter == 50
    # explicit flags still win
    args = _build_parser().parse_args(["eval", "x.sgf", "--stop-value", "1e-2"])
    assert args.stop_value == 1e-2


def test_oracle_check_has_tight_defaults():
    args = _build_parser().parse_args(["oracle-check"])
    assert args.stop_value == 1e-5
    assert args.max_iter == 1000
    args = _build_parser().parse_args(["oracle-check", "--stop-value", "1e-4"])
    assert args.stop_value == 1e-4


def test_oracle_check_small_run(capsys):
    code = dispatch(["oracle-check", "--positions", "2", "--size", "7", "--seed", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "max deviation" in out
    assert "2 random 7x7 positions" in out


def test_serve_passes_host_and_port(monkeypatch):
    calls = {}

    def fake_run(app, host=None, port=None):
        calls["app"] = app
        calls["host"] = host
        calls["port"] = port

    monkeypatch.setattr("uvicorn.run", fake_run)
    assert dispatch(["serve", "--port", "9999"]) == 0
    assert calls == {"app": "sedsgo.service:app", "host": "127.0.0.1", "port": 9999}


def test_serve_port_env_default(monkeypatch):
    monkeypatch.setenv("SEDS_PORT", "7777")
    args = _build_parser().parse_args(["serve"])
    assert args.port == 7777
