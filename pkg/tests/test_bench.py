import csv
import io
import random

import pytest

from ckde.baselines.des import DES
from ckde.baselines.idea import IDEA
from ckde.bench import (
    CSV_COLUMNS,
    HISTORICAL_MS,
    MIN_ITERS,
    _summarize,
    bench_run,
    des_unit_op,
    idea_unit_op,
    improved_unit_op,
    modexp_inputs,
    signature_unit_op,
)
from ckde.curve import INFINITY, _add, is_on_curve


def square_and_multiply(b, e, n):
    acc = 1
    for bit in bin(e)[2:]:
        acc = acc * acc % n
        if bit == "1":
            acc = acc * b % n
    return acc


def test_modexp_matches_oracle():
    rng = random.Random(0)
    for bits in (64, 256, 1024):
        for _ in range(10):
            b, e, n = modexp_inputs(rng, bits)
            assert n.bit_length() == bits and n % 2 == 1 and e.bit_length() == bits
            assert pow(b, e, n) == square_and_multiply(b, e, n)
    small = random.Random(1)
    for _ in range(200):
        b, e, n = modexp_inputs(small, 12)
        acc = 1
        for _ in range(e):
            acc = acc * b % n
        assert pow(b, e, n) == acc


def test_signature_unit_op_result():
    a, b = random.Random(7), random.Random(7)
    t = signature_unit_op(a, 512)
    base, exp, mod = modexp_inputs(b, 512)
    assert t.result == square_and_multiply(base, exp, mod)
    assert t.elapsed_ns >= 0


def test_cipher_unit_ops():
    assert des_unit_op(DES(0), 0).result == 0x8CA64DE9C1B123A7
    assert idea_unit_op(IDEA(0), 0).result == 0x0001000100000000


def test_improved_unit_op_matches_repeated_addition(desk):
    rng = random.Random(3)
    for _ in range(20):
        seed = rng.getrandbits(32)
        t = improved_unit_op(desk, random.Random(seed))
        k = random.Random(seed).randrange(1, desk.q)
        acc = INFINITY
        for _ in range(k):
            acc = _add(desk.curve, acc, desk.G)
        assert t.result == acc and is_on_curve(desk.curve, t.result)


def test_summarize():
    mean, std = _summarize([1_000_000] * 30)
    assert mean == 1.0 and std == 0.0
    # one huge outlier moves a single group mean; the median of means ignores it
    mean, _ = _summarize([1_000_000] * 29 + [10**12])
    assert mean == 1.0


@pytest.fixture(scope="module")
def report():
    return bench_run(iters=MIN_ITERS, seed=0, ec_bits=64)


def test_report_rows(report):
    assert [r.algorithm for r in report.rows] == [name for name, _ in HISTORICAL_MS]
    assert all(r.iters >= MIN_ITERS and r.mean_ms > 0 and r.std_ms >= 0 for r in report.rows)
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r["algorithm"] for r in rows] == ["DES", "Signature", "IDEA", "Improved"]
    assert all(int(r["iters"]) >= 30 for r in rows)
    assert "64-bit p" in rows[3]["param_note"]


def test_report_render_annotates_history(report):
    text = report.render()
    for name, ms in HISTORICAL_MS:
        assert f"{ms:.2f}" in text
    assert "context only" in text
    # historical values are not in the CSV
    assert "16.25" not in report.to_csv()


def test_bench_rejects_few_iters():
    with pytest.raises(ValueError):
        bench_run(iters=29)


def test_historical_order():
    assert HISTORICAL_MS == (("DES", 16.25), ("Signature", 20.42), ("IDEA", 9.76), ("Improved", 2.31))
