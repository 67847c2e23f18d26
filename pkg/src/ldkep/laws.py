"""Law-verification campaigns over a configured platform."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import ConfigurationError
from .laver import exhaustive_ld_violations, laver_apply, successor
from .magma import Violation, check_mutual_ld
from .platforms import GROUP_PLATFORMS, PlatformConfig, make_carrier

DEFAULT_SAMPLES = {"laver": 1000, "group": 1000, "braid": 200}


@dataclass
class LawResult:
    law: str
    checked: int
    violations: list = field(default_factory=list)
    exhaustive: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def _default_samples(cfg: PlatformConfig) -> int:
    if cfg.platform == "laver":
        return DEFAULT_SAMPLES["laver"]
    if cfg.platform in GROUP_PLATFORMS:
        return DEFAULT_SAMPLES["group"]
    return DEFAULT_SAMPLES["braid"]


def random_triples(sample, count: int, rng: random.Random) -> list[tuple]:
    return [(sample(rng), sample(rng), sample(rng)) for _ in range(count)]


def laver_laws(cfg: PlatformConfig, samples: int, rng: random.Random, exhaustive_max: int) -> list[LawResult]:
    carrier = make_carrier(cfg)
    table = carrier.info["table"]
    bad_succ = [k for k in table.elements() if laver_apply(table, k, 1) != successor(table, k)]
    results = [LawResult("k*1 = k+1 (wrapping)", table.size, bad_succ, True)]
    if cfg.laver_n <= exhaustive_max:
        bad = [Violation("LD", *t) for t in exhaustive_ld_violations(table)]
        results.append(LawResult("LD(laver)", table.size**3, bad, True))
    else:
        triples = random_triples(carrier.sample, samples, rng)
        op = carrier.ops["laver"]
        results.append(LawResult("LD(laver)", samples, check_mutual_ld(op, op, triples)))
    return results


def verify_laws(
    cfg: PlatformConfig,
    samples: int | None = None,
    seed: int = 0,
    exhaustive_max: int = 4,
    stop_after: int | None = None,
) -> list[LawResult]:
    """Check the distributivity laws for every pair of requested operations.

    Unlike :func:`~ldkep.platforms.make_pools` this does not refuse
    unsupported combinations: it measures them.
    """
    rng = random.Random(seed)
    samples = _default_samples(cfg) if samples is None else samples
    if samples < 1:
        raise ConfigurationError("samples must be positive")
    if cfg.platform == "laver":
        return laver_laws(cfg, samples, rng, exhaustive_max)
    carrier = make_carrier(cfg)
    ops_a = tuple(cfg.ops_a) if cfg.ops_a else carrier.default_pools[0]
    ops_b = tuple(cfg.ops_b) if cfg.ops_b else carrier.default_pools[1]
    unknown = [o for o in ops_a + ops_b if o not in carrier.ops]
    if unknown:
        raise ConfigurationError(f"unknown operation(s) {unknown}; available: {', '.join(carrier.ops)}")
    triples = random_triples(carrier.sample, samples, rng)
    results = []
    seen = set()
    for a, b in product(ops_a, ops_b):
        key = frozenset((a, b))
        if key in seen:
            continue
        seen.add(key)
        name = f"LD({a})" if a == b else f"mutual-LD({a}, {b})"
        fa, fb = carrier.ops[a], carrier.ops[b]
        if a == b:
            fb = fa
        results.append(LawResult(name, samples, check_mutual_ld(fa, fb, triples, carrier.equal, stop_after)))
    return results
