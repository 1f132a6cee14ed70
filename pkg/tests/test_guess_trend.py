import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'benchmarks')))

import pytest
from guess_trend import gap, render_record, trend_checks
from utils.data_types import ChannelSpec, DecoderStats, SimResult


def _result(name, k, snr, gnd_guesses, gcd_guesses, errors=250, certified=1000):
    stats = {
        "gnd": DecoderStats("gnd", frames_run=1000, errors=errors, total_guesses=gnd_guesses,
                            total_operations=4 * gnd_guesses, certified=certified),
        "gcd": DecoderStats("gcd", frames_run=1000, errors=errors, total_guesses=gcd_guesses,
                            total_operations=2 * gcd_guesses, certified=1000),
    }
    return SimResult(name, 32, k, ChannelSpec("awgn", snr_db=snr), 0, stats, frames_run=1000)

# --- Unit Tests (Known Values) ---

def test_gap_and_passing_checks():
    low = _result("rm-r1-m5", 6, 3.5, 90000, 2000)
    high = _result("rm-r3-m5", 26, 5.0, 4000, 3000)
    assert gap(low) == pytest.approx(88.0)
    checks = trend_checks([low, high], min_errors=200)
    assert all(ok for _, ok in checks)
    assert checks[0][0] == "gap rm-r1-m5 > gap rm-r3-m5"


def test_checks_flag_each_failure():
    low = _result("rm-r1-m5", 6, 3.5, 3000, 2000, errors=150, certified=980)
    high = _result("rm-r3-m5", 26, 5.0, 4000, 3000)
    failed = {name for name, ok in trend_checks([low, high], min_errors=200) if not ok}
    assert failed == {
        "gap rm-r1-m5 > gap rm-r3-m5",
        "rm-r1-m5: >= 200 errors per decoder",
        "rm-r1-m5: gnd ml_certified_frac >= 0.99",
    }


def test_render_record_holds_command_csv_and_checks():
    results = [_result("rm-r1-m5", 6, 3.5, 90000, 2000), _result("rm-r3-m5", 26, 5.0, 4000, 3000)]
    text = render_record(results, trend_checks(results, 200), "python benchmarks/guess_trend.py --jobs 8")
    assert "python benchmarks/guess_trend.py --jobs 8" in text
    assert "code,n,k,channel,param,decoder,frames,errors" in text
    assert "| rm-r1-m5 | 3.500 | 88.00 | 360.0 | 4.0 | 1.0000 |" in text
    assert "- [x] gap rm-r1-m5 > gap rm-r3-m5" in text
