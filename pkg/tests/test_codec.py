import itertools
import json

import pytest

from nnecap.codec import (ZeroErrorCode, corruption_patterns, decode, decode_symbol, dump_jsonl,
                          encode, neighbors, run_trials, transmit)
from nnecap.core import Symbol, l1_distance
from nnecap.errors import CorruptInputError, ParameterError
from nnecap.lee import lower_bound_set


def S(*c, n=3):
    return Symbol(c, n)


V23 = (S(0, 1), S(2, 2))


def test_encode_examples():
    code = ZeroErrorCode(V23, 2)
    assert encode(0, code) == [S(0, 1), S(0, 1)]
    assert encode(1, code) == [S(0, 1), S(2, 2)]
    with pytest.raises(ParameterError):
        encode(4, code)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_round_trip_noiseless(k):
    code = ZeroErrorCode(V23, k)
    for m in range(code.size):
        assert decode(encode(m, code), code) == m


def test_decode_examples():
    code = ZeroErrorCode(V23, 1)
    assert l1_distance(S(1, 1), S(2, 2)) == 2
    assert decode([S(1, 1)], code) == 0
    assert l1_distance(S(2, 0), S(0, 1)) == 3 and l1_distance(S(2, 0), S(2, 2)) == 2
    with pytest.raises(CorruptInputError):
        decode([S(2, 0)], code)


def test_code_rejects_confusable_base():
    with pytest.raises(ParameterError):
        ZeroErrorCode((S(0, 0), S(1, 1)), 1)


def test_transmit_examples():
    sent = [S(0, 0), S(1, 1), S(2, 2)]
    assert transmit(sent, 0.0, 1).received == tuple(sent)
    for seed in range(50):
        (y,) = transmit([S(0, 0)], 1.0, seed).received
        assert y.coords in {(0, 1), (1, 0)}
    assert transmit(sent, 0.5, 9) == transmit(sent, 0.5, 9)
    with pytest.raises(ParameterError):
        transmit(sent, 1.5, 0)


def test_transmit_stays_in_ball():
    sent = [Symbol(c, 4) for c in itertools.product(range(4), repeat=3)]
    t = transmit(sent, 0.7, 3)
    assert all(l1_distance(x, y) <= 1 for x, y in zip(t.sent, t.received))
    assert sorted(neighbors(Symbol((0, 0, 0), 4))) == [Symbol(c, 4) for c in [(0, 0, 1), (0, 1, 0), (1, 0, 0)]]


def test_transmit_n1_passthrough():
    assert transmit([Symbol((0, 0), 1)], 1.0, 0).received == (Symbol((0, 0), 1),)


@pytest.mark.parametrize("k", [1, 2])
def test_zero_error_exhaustive(k):
    code = ZeroErrorCode.from_window(lower_bound_set(2, 3), k)
    for m in range(code.size):
        sent = encode(m, code)
        for rec in corruption_patterns(sent):
            assert decode(list(rec), code) == m


@pytest.mark.parametrize("d,n", [(2, 3), (2, 5), (3, 4), (1, 7)])
def test_per_symbol_uniqueness(d, n):
    code = ZeroErrorCode.from_window(lower_bound_set(d, n), 1)
    for y in itertools.product(range(n), repeat=d):
        assert sum(l1_distance(s, y) <= 1 for s in code.base_set) <= 1


def test_rate():
    code = ZeroErrorCode.from_window(lower_bound_set(2, 5), 1)
    assert len(code.base_set) == 5
    assert code.rate == pytest.approx(2.321928, abs=1e-6)


def test_run_trials_and_trace():
    code = ZeroErrorCode.from_window(lower_bound_set(2, 4), 3)
    s = run_trials(code, 500, 0.8, 11, keep_records=True)
    assert s.failures == 0 and len(s.records) == 500
    again = run_trials(code, 500, 0.8, 11, keep_records=True)
    assert again.records == s.records
    line = dump_jsonl(s.records[:1])
    obj = json.loads(line)
    assert set(obj) == {"seed", "message", "sent", "received", "decoded", "ok"}
    assert obj["ok"] is True and line.endswith("\n")
    assert run_trials(code, 0, 0.5, 1).trials == 0


def test_decode_symbol_accepts_tuples():
    code = ZeroErrorCode(V23, 1)
    assert decode_symbol((2, 1), code) == 1
