import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import argparse
import asyncio
import logging
import pytest
from hypothesis import given, strategies as st
from utils.data_types import ChannelSpec, CodeSpec, SimConfig
from utils.metrics import Stopwatch, latency_summary, set_quiet, time_execution

# --- Unit Tests (Known Values) ---

def test_time_execution_sync_and_async(caplog):
    @time_execution
    def add(a, b):
        return a + b

    @time_execution
    async def double(x):
        return 2 * x

    set_quiet(False)
    with caplog.at_level(logging.INFO, logger="metrics"):
        assert add(2, 3) == 5
        assert asyncio.run(double(4)) == 8
    messages = [rec.getMessage() for rec in caplog.records if rec.name == "metrics"]
    assert any(m.startswith("add finished in") for m in messages)
    assert any(m.startswith("double finished in") for m in messages)


def test_time_execution_names_command_and_config(caplog):
    @time_execution
    def cmd(args):
        return 0

    @time_execution
    def run(config):
        return None

    config = SimConfig(CodeSpec("hamming74"), ChannelSpec("bsc", p=0.1), ("gnd", "gcd"), frames=10, seed=0)
    set_quiet(False)
    with caplog.at_level(logging.INFO, logger="metrics"):
        cmd(argparse.Namespace(command="decode", code="hamming74", decoder="gnd"))
        run(config)
    messages = [rec.getMessage() for rec in caplog.records if rec.name == "metrics"]
    assert any(m.startswith("decode code=hamming74 decoders=gnd finished in") for m in messages)
    assert any(m.startswith("run code=hamming74 decoders=gnd,gcd finished in") for m in messages)


def test_time_execution_logs_failures(caplog):
    @time_execution
    def broken():
        raise ValueError("bad input")

    set_quiet(False)
    with caplog.at_level(logging.INFO, logger="metrics"):
        with pytest.raises(ValueError, match="bad input"):
            broken()
    assert any(rec.getMessage().startswith("broken failed after") for rec in caplog.records)


def test_set_quiet_raises_level():
    set_quiet(True)
    assert logging.getLogger().level == logging.WARNING
    set_quiet(False)
    assert logging.getLogger().level == logging.INFO


def test_stopwatch():
    with Stopwatch() as sw:
        sum(range(1000))
    assert sw.elapsed >= 0.0


def test_latency_summary_known_values():
    stats = latency_summary([float(i) for i in range(100, 0, -1)])
    assert stats["min"] == 1.0 and stats["max"] == 100.0
    assert stats["p50"] == 51.0
    assert stats["p99"] == 100.0


def test_latency_summary_empty():
    with pytest.raises(ValueError, match="at least one sample"):
        latency_summary([])

# --- Property-Based Testing (Hypothesis) ---

@given(st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=1, max_size=200))
def test_percentiles_are_ordered(times):
    stats = latency_summary(times)
    assert stats["min"] <= stats["p50"] <= stats["p95"] <= stats["p99"] <= stats["max"]
