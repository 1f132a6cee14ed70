import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest
from main import attach_number_lists, main
from utils.channel import LlrVector
from utils.codes import hamming_7_4
from utils.decoders import decode_oracle

# Lightest valid TEP is 0000001 at 0.9; the runner-up 0101010 weighs 0.95.
LLR = ["0.8", "-0.3", "1.1", "0.45", "-1.6", "0.2", "0.9"]


def test_decode_prints_outcome(capsys):
    assert main(["decode", "--code", "hamming74", "--decoder", "gcd", "--llr", *LLR]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("codeword=")
    assert "termination=" in out and "ml_certified=true" in out
    assert out.split()[-1].startswith("operations=")


def test_decode_gnd_and_gcd_agree(capsys):
    assert decode_oracle(hamming_7_4(), LlrVector([float(x) for x in LLR])).ties == 1
    main(["decode", "--code", "hamming74", "--decoder", "gnd", "--llr", *LLR])
    gnd = capsys.readouterr().out.split()[0]
    main(["decode", "--code", "hamming74", "--decoder", "gcd", "--llr", ",".join(LLR)])
    gcd = capsys.readouterr().out.split()[0]
    assert gnd == gcd == "codeword=0100101"


def test_decode_leading_negative_comma_list(capsys):
    values = ["-0.8", "0.3", "1.1", "0.4", "-1.6", "0.2", "0.9"]
    assert main(["decode", "--code", "hamming74", "--llr", ",".join(values)]) == 0
    comma = capsys.readouterr().out
    assert main(["decode", "--code", "hamming74", "--llr", *values]) == 0
    assert capsys.readouterr().out == comma
    assert main(["decode", "--code", "hamming74", "--llr=" + ",".join(values)]) == 0
    assert capsys.readouterr().out == comma


def test_attach_number_lists():
    assert attach_number_lists(["decode", "--llr", "-1e-3,2", "--decoder", "gnd"]) == [
        "decode", "--llr=-1e-3,2", "--decoder", "gnd",
    ]
    assert attach_number_lists(["sweep", "--snr-db", "-2", "0", "--quiet"]) == ["sweep", "--snr-db=-2,0", "--quiet"]
    assert attach_number_lists(["decode", "--llr", "0.1,abc"]) == ["decode", "--llr", "0.1,abc"]


def test_decode_from_llr_file(tmp_path, capsys):
    path = tmp_path / "rx.txt"
    path.write_text("0.8 -0.3\n1.1,0.45 -1.6 0.2 0.9\n")
    assert main(["decode", "--code", "hamming74", "--llr-file", str(path)]) == 0
    from_file = capsys.readouterr().out
    assert main(["decode", "--code", "hamming74", "--llr", *LLR]) == 0
    assert capsys.readouterr().out == from_file


def test_decode_llr_file_errors(tmp_path, capsys):
    malformed = tmp_path / "bad.txt"
    malformed.write_text("0.8 -0.3 x\n")
    assert main(["decode", "--code", "hamming74", "--llr-file", str(malformed)]) == 2
    assert "must be a list of numbers" in capsys.readouterr().err

    short = tmp_path / "short.txt"
    short.write_text(" ".join(LLR[:6]))
    assert main(["decode", "--code", "hamming74", "--llr-file", str(short)]) == 2
    assert "code length is 7" in capsys.readouterr().err

    assert main(["decode", "--code", "hamming74", "--llr-file", str(tmp_path / "missing.txt")]) == 2


def test_decode_llr_sources_are_exclusive(tmp_path):
    path = tmp_path / "rx.txt"
    path.write_text(" ".join(LLR))
    assert main(["decode", "--code", "hamming74", "--llr", *LLR, "--llr-file", str(path)]) == 2
    assert main(["decode", "--code", "hamming74"]) == 2


def test_decode_wrong_length(capsys):
    assert main(["decode", "--code", "hamming74", "--llr", *LLR[:6]]) == 2
    assert "code length is 7" in capsys.readouterr().err


def test_decode_malformed_llr(capsys):
    assert main(["decode", "--code", "hamming74", "--llr", "0.1,abc"]) == 2


def test_unknown_flag_is_usage_error():
    assert main(["simulate", "--bogus"]) == 2
    assert main([]) == 2


def test_compare_reports_zero_violations(capsys):
    argv = ["compare", "--code", "rm", "--m", "4", "--r", "1", "--channel", "awgn",
            "--snr-db", "4", "--frames", "300", "--seed", "7", "--quiet"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("code,n,k,channel,param,decoder")
    assert lines[1].split(",")[5] == "gnd"
    assert lines[2].split(",")[5] == "gcd"
    assert lines[-1] == "violations,0"


def test_simulate_same_output_for_any_jobs(capsys):
    argv = ["simulate", "--code", "hamming74", "--channel", "bsc", "--p", "0.05",
            "--decoder", "gcd", "--frames", "600", "--seed", "1", "--quiet"]
    assert main(argv + ["--jobs", "1"]) == 0
    first = capsys.readouterr().out
    assert main(argv + ["--jobs", "2"]) == 0
    assert capsys.readouterr().out == first


def test_sweep_is_deterministic(capsys):
    argv = ["sweep", "--code", "random", "--n", "10", "--k", "5", "--code-seed", "3",
            "--channel", "awgn", "--snr-db", "1,3", "--decoder", "gnd", "--decoder", "osd",
            "--frames", "200", "--seed", "4", "--quiet"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert len(first.strip().splitlines()) == 5
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_simulate_rejects_grid():
    argv = ["simulate", "--channel", "bsc", "--p", "0.01,0.02", "--frames", "10", "--quiet"]
    assert main(argv) == 2


def test_missing_channel_value():
    assert main(["compare", "--channel", "awgn", "--frames", "10", "--quiet"]) == 2


def test_missing_code_parameters():
    assert main(["simulate", "--code", "rm", "--snr-db", "2", "--frames", "10", "--quiet"]) == 2


def test_strict_mode_exit_code(monkeypatch, capsys):
    import utils.sim as sim

    original = sim._Reducer.fold

    def fold_with_violation(self, frame_index, record):
        self._violation(f"frame {frame_index}: injected")
        return original(self, frame_index, record)

    monkeypatch.setattr(sim._Reducer, "fold", fold_with_violation)
    argv = ["compare", "--channel", "bsc", "--p", "0.1", "--frames", "5", "--strict", "--quiet"]
    assert main(argv) == 1
    assert "injected" in capsys.readouterr().err


if __name__ == "__main__":
    sys.exit(pytest.main(["-v", __file__]))
