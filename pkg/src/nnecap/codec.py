"""Zero-error block codes over the NNE channel and a seeded channel simulator.

Random draws use numpy's PCG64 generator; a trace is reproducible from its seed.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import log2
from typing import Sequence

import numpy as np

from .core import Symbol, l1_distance
from .errors import CorruptInputError, ParameterError
from .graph import build_channel


@dataclass(frozen=True)
class ZeroErrorCode:
    """k-fold Cartesian power of a base set with pairwise L1 distance >= 3."""

    base_set: tuple[Symbol, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"block length must be positive, got {self.k}")
        if not self.base_set:
            raise ParameterError("empty base set")
        base = tuple(sorted(self.base_set, key=lambda s: s.coords))
        object.__setattr__(self, "base_set", base)
        d, n = base[0].d, base[0].n
        if any(s.d != d or s.n != n for s in base):
            raise ParameterError("base symbols disagree on (d, n)")
        for a, b in itertools.combinations(base, 2):
            if l1_distance(a, b) < 3:
                raise ParameterError(f"{a.coords} and {b.coords} are confusable")

    @property
    def d(self) -> int:
        return self.base_set[0].d

    @property
    def n(self) -> int:
        return self.base_set[0].n

    @property
    def size(self) -> int:
        return len(self.base_set) ** self.k

    @property
    def rate(self) -> float:
        """Bits per channel use."""
        return log2(len(self.base_set))

    @classmethod
    def from_window(cls, window, k: int) -> "ZeroErrorCode":
        return cls(tuple(window.members_mapped), k)


def encode(message: int, code: ZeroErrorCode) -> list[Symbol]:
    """Base-|V| digits of ``message``, most significant first."""
    if not 0 <= message < code.size:
        raise ParameterError(f"message {message} outside [0, {code.size - 1}]")
    m = len(code.base_set)
    digits = []
    for _ in range(code.k):
        message, r = divmod(message, m)
        digits.append(r)
    return [code.base_set[r] for r in reversed(digits)]


def decode_symbol(y: Symbol | Sequence[int], code: ZeroErrorCode) -> int:
    hits = [i for i, s in enumerate(code.base_set) if l1_distance(s, y) <= 1]
    if not hits:
        raise CorruptInputError(f"no code symbol within distance 1 of {tuple(y)}")
    return hits[0]


def decode(received: Sequence, code: ZeroErrorCode) -> int:
    if len(received) != code.k:
        raise CorruptInputError(f"expected a block of {code.k} symbols, got {len(received)}")
    m = len(code.base_set)
    message = 0
    for y in received:
        message = message * m + decode_symbol(y, code)
    return message


@dataclass(frozen=True)
class ChannelTrace:
    sent: tuple[Symbol, ...]
    received: tuple[Symbol, ...]
    seed: int


def neighbors(x: Symbol) -> list[Symbol]:
    """Symbols at L1 distance exactly 1 from ``x`` inside the box, sorted."""
    return [y for y in build_channel(x.d, x.n).outputs(x) if y != x]


def transmit(sent: Sequence[Symbol], error_rate: float, seed: int) -> ChannelTrace:
    """Each symbol is, with probability ``error_rate``, moved to a uniform in-box neighbour."""
    if not 0.0 <= error_rate <= 1.0:
        raise ParameterError(f"error rate must be in [0, 1], got {error_rate}")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for x in sent:
        hit = rng.random() < error_rate
        nb = neighbors(x) if hit else []
        out.append(nb[int(rng.integers(len(nb)))] if nb else x)
    return ChannelTrace(tuple(sent), tuple(out), seed)


def corruption_patterns(sent: Sequence[Symbol]):
    """Every block the channel can deliver for ``sent``."""
    balls = [build_channel(x.d, x.n).outputs(x) for x in sent]
    return itertools.product(*balls)


def trial_seed(seed: int, trial: int) -> int:
    """Per-trial seed derived from the run seed; independent of execution order."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0])


@dataclass
class TrialSummary:
    trials: int
    failures: int
    rate: float
    records: list


def run_trials(code: ZeroErrorCode, trials: int, error_rate: float, seed: int,
               keep_records: bool = False) -> TrialSummary:
    rng = np.random.Generator(np.random.PCG64(seed))
    failures = 0
    records = []
    for t in range(trials):
        tseed = trial_seed(seed, t)
        message = int(rng.integers(code.size))
        sent = encode(message, code)
        trace = transmit(sent, error_rate, tseed)
        try:
            decoded = decode(trace.received, code)
        except CorruptInputError:
            decoded = None
        ok = decoded == message
        failures += not ok
        if keep_records:
            records.append(trace_record(trace, message, decoded, ok))
    return TrialSummary(trials, failures, code.rate, records)


def trace_record(trace: ChannelTrace, message: int, decoded, ok: bool) -> dict:
    return {
        "seed": trace.seed,
        "message": message,
        "sent": [list(s.coords) for s in trace.sent],
        "received": [list(s.coords) for s in trace.received],
        "decoded": decoded,
        "ok": ok,
    }


def dump_jsonl(records) -> str:
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
