"""Pinned CLI scenarios: stored outputs must reproduce byte for byte."""

from pathlib import Path

from c4lab.cli import main

GOLDEN = Path(__file__).parent / "golden"

SCENARIOS = [
    ("heawood.g6", "heawood_cert.json",
     ["--s", "2", "--k", "3", "--seed", "7", "--retries", "10",
      "--attempts", "4"]),
    ("gnp24.g6", "gnp24_cert.json",
     ["--s", "2", "--k", "2", "--seed", "42", "--retries", "10",
      "--attempts", "4"]),
]


def test_cli_extract_reproduces_golden_certificates(tmp_path, capsys):
    for graph_file, cert_file, flags in SCENARIOS:
        out = tmp_path / cert_file
        code = main(["extract", "--input", str(GOLDEN / graph_file),
                     *flags, "--out", str(out)])
        capsys.readouterr()
        assert code in (0, 2)
        assert out.read_bytes() == (GOLDEN / cert_file).read_bytes()


def test_cli_golden_certificates_verify(capsys):
    for graph_file, cert_file, _ in SCENARIOS:
        code = main(["verify", "--input", str(GOLDEN / graph_file),
                     "--cert", str(GOLDEN / cert_file)])
        out = capsys.readouterr().out
        assert code == 0 and "verified" in out


def test_cli_gen_reproduces_golden_graph(tmp_path, capsys):
    out = tmp_path / "gnp18.g6"
    code = main(["gen", "--kind", "gnp", "--n", "18", "--p", "0.3",
                 "--seed", "99", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    assert out.read_bytes() == (GOLDEN / "gnp18.g6").read_bytes()


def test_lb_experiment_reproduces_golden_row():
    from c4lab.lowerbounds import lb_experiment

    rep = lb_experiment(9, 0.4, 2, 4, trials=40, seed=21)
    expected = (GOLDEN / "lb_row.csv").read_text().splitlines()[1]
    assert rep.csv_row() == expected


def test_cli_golden_across_thread_counts(tmp_path, capsys):
    for threads in ("1", "8"):
        out = tmp_path / f"cert_t{threads}.json"
        code = main(["extract", "--input", str(GOLDEN / "gnp24.g6"),
                     "--s", "2", "--k", "2", "--seed", "42", "--retries", "10",
                     "--attempts", "4", "--threads", threads,
                     "--out", str(out)])
        capsys.readouterr()
        assert code in (0, 2)
        assert out.read_bytes() == (GOLDEN / "gnp24_cert.json").read_bytes()
