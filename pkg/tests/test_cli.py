import json
import logging

import pytest

from twisted_hurwitz.main import (EXIT_CAP, EXIT_INVALID, EXIT_OK, main,
                                  parse_partition)


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return status, out


def test_count_with_both_engines(no_config, capsys):
    status, out = run(capsys, "count", "--g", "0", "--mu", "2", "--nu", "2",
                      "--engine", "both")
    assert status == EXIT_OK
    assert out == ["1/2 == 1/2 OK"]


def test_count_of_the_trivial_cover(no_config, capsys):
    status, out = run(capsys, "count", "--g", "0", "--mu", "1", "--nu", "1")
    assert status == EXIT_OK
    assert out == ["0"]


def test_count_json(no_config, capsys):
    status, out = run(capsys, "count", "--g", "0", "--mu", "2", "--nu", "1,1",
                      "--engine", "both", "--format", "json")
    report = json.loads(out[0])
    assert report["brute"] == report["tropical"] == "1"
    assert report["agree"] is True


def test_count_cap(no_config, capsys):
    status, _ = run(capsys, "count", "--g", "0", "--mu", "2", "--nu", "2",
                    "--engine", "brute", "--max-points", "2")
    assert status == EXIT_CAP


def test_count_mismatched_sizes(no_config, capsys):
    status, _ = run(capsys, "count", "--g", "0", "--mu", "3", "--nu", "1,1")
    assert status == EXIT_INVALID


def test_disconnected_needs_brute(no_config, capsys):
    status, _ = run(capsys, "count", "--g", "0", "--mu", "2", "--nu", "2",
                    "--disconnected", "--engine", "tropical")
    assert status == EXIT_INVALID


def test_count_uses_the_cache(no_config, capsys):
    cache = no_config / "cache.json"
    for _ in range(2):
        status, out = run(capsys, "count", "--g", "1", "--mu", "3",
                          "--nu", "3", "--labeled", "--cache", str(cache))
        assert out == ["10"]
    assert cache.is_file()


def test_partition_reordered(caplog):
    with caplog.at_level(logging.WARNING):
        assert parse_partition("1,3", "mu") == (3, 1)
    assert "reordered" in caplog.text


def test_graphs_text(no_config, capsys):
    status, out = run(capsys, "graphs", "--g", "1", "--mu", "4", "--nu", "2,2",
                      "--prune-zero")
    assert status == EXIT_OK
    assert out[-1] == "8 graphs, total 160"
    assert "multiplicity 72" in "\n".join(out)


def test_graphs_json(no_config, capsys):
    _, out = run(capsys, "graphs", "--g", "1", "--mu", "4", "--nu", "2,2",
                 "--prune-zero", "--format", "json")
    assert len(out) == 9
    assert json.loads(out[-1]) == {"graphs": 8, "total": "160"}


def test_graphs_dot_files(no_config, capsys):
    folder = no_config / "dot"
    status, _ = run(capsys, "graphs", "--g", "1", "--mu", "4", "--nu", "2,2",
                    "--prune-zero", "--format", "dot", "--out", str(folder))
    assert status == EXIT_OK
    assert len(list(folder.glob("*.gv"))) == 8


def test_poly(no_config, capsys):
    status, out = run(capsys, "poly", "--g", "1", "--shape", "1,1")
    assert status == EXIT_OK
    assert out == ["2/3*mu1^3 - mu1^2 + 1/3*mu1; degrees {3,2,1}"]


def test_btilde(no_config, capsys):
    status, out = run(capsys, "btilde", "--mu", "2,1")
    assert status == EXIT_OK
    assert out[-1] == "6 elements, expected 6"


def test_tuples(no_config, capsys):
    status, out = run(capsys, "tuples", "--g", "0", "--mu", "2", "--nu", "2")
    assert status == EXIT_OK
    assert len(out) == 4
    assert all("sigma1" in json.loads(line) for line in out)


def test_missing_arguments():
    with pytest.raises(SystemExit) as error:
        main(["count"])
    assert error.value.code == 2


def test_invalid_workers(no_config, capsys):
    status, _ = run(capsys, "count", "--mu", "2", "--nu", "2",
                    "--workers", "0")
    assert status == 2


@pytest.mark.slow
def test_wallcross(no_config, capsys):
    status, out = run(capsys, "wallcross", "--shape", "2,2",
                      "--wall", "I=1:J=1", "--points", "3")
    assert status == EXIT_OK
    assert out[-1] == "3/3 points: LHS == RHS"


@pytest.mark.parametrize("points", ["0", "-2", "x"])
def test_wallcross_needs_points(points, capsys):
    with pytest.raises(SystemExit) as error:
        main(["wallcross", "--shape", "2,2", "--wall", "I=1:J=1",
              "--points", points])
    assert error.value.code == 2
    assert "--points" in capsys.readouterr().err
