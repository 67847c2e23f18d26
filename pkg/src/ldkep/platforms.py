"""Concrete platforms: a carrier, its element sampler and encoding, and pools O_A, O_B.

A :class:`PlatformConfig` names one of the platforms below plus its options.
:func:`make_pools` only accepts operation combinations whose mutual left
distributivity is established; anything else raises
:class:`~ldkep.errors.ConfigurationError` listing the supported sets.

==========================  =====================================  ========================
platform                    operations                             default pools (A / B)
==========================  =====================================  ========================
laver                       laver                                  laver / laver
conjugacy                   conj                                   conj / conj
conjugacy-rev               conj-rev                               conj-rev / conj-rev
symmetric-conjugacy         symmetric                              symmetric / symmetric
ld-conjugacy                ld-conj                                ld-conj / ld-conj
f-symmetric-conjugacy       f-symmetric                            f-symmetric / f-symmetric
braid-shifted               shifted, shifted-bar                   both / both
braid-gen-shifted           gen1, gen2                             gen1 / gen2
==========================  =====================================  ========================
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from functools import partial
from itertools import combinations
from typing import Any, Callable

from . import braid as br
from . import groups as gr
from .errors import ConfigurationError
from .laver import build_laver_table, laver_apply
from .magma import OperationPool, PoolPair

GROUP_PLATFORMS = {
    "conjugacy": "conj",
    "conjugacy-rev": "conj-rev",
    "symmetric-conjugacy": "symmetric",
    "ld-conjugacy": "ld-conj",
    "f-symmetric-conjugacy": "f-symmetric",
}
GROUP_OPS = ("conj", "conj-rev", "symmetric", "ld-conj", "f-symmetric")
PLATFORMS = ("laver", *GROUP_PLATFORMS, "braid-shifted", "braid-gen-shifted")


@dataclass(frozen=True)
class PlatformConfig:
    platform: str = "laver"
    ops_a: tuple[str, ...] | None = None
    ops_b: tuple[str, ...] | None = None
    # laver
    laver_n: int = 4
    # finite groups
    group: str = "sym"  # sym | gl2
    degree: int = 8
    prime: int = 1009
    endo: str | None = None  # identity | inner | project
    # braids
    word_len: int = 6
    max_index: int = 4
    gen_p: int = 3
    gen_sign: int = 1
    a1p: tuple[int, ...] = (1,)
    a1pp: tuple[int, ...] = ()
    a2p: tuple[int, ...] = (1, 1)
    a2pp: tuple[int, ...] = ()

    def to_record(self) -> dict:
        rec = asdict(self)
        for k, v in rec.items():
            if isinstance(v, tuple):
                rec[k] = list(v)
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> PlatformConfig:
        rec = dict(rec)
        for k in ("ops_a", "ops_b", "a1p", "a1pp", "a2p", "a2pp"):
            if rec.get(k) is not None:
                rec[k] = tuple(rec[k])
        return cls(**rec)

    def gen_params(self) -> br.GenShiftedConjParams:
        return br.GenShiftedConjParams(self.gen_p, self.gen_sign, self.a1p, self.a1pp, self.a2p, self.a2pp)


@dataclass(frozen=True, eq=False)
class Carrier:
    """Everything about a platform except the choice of pools."""

    ops: dict[str, Callable[[Any, Any], Any]]
    equal: Callable[[Any, Any], bool]
    sample: Callable[[random.Random], Any]
    to_json: Callable[[Any], Any]
    from_json: Callable[[Any], Any]
    encode: Callable[[Any], bytes]
    default_pools: tuple[tuple[str, ...], tuple[str, ...]]
    supported: tuple[tuple[frozenset, frozenset], ...]
    info: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Platform:
    config: PlatformConfig
    carrier: Carrier
    pools: PoolPair

    @property
    def name(self) -> str:
        return self.config.platform

    def sample(self, rng: random.Random):
        return self.carrier.sample(rng)

    def equal(self, x, y) -> bool:
        return self.carrier.equal(x, y)

    def encode(self, x) -> bytes:
        return self.carrier.encode(x)

    def to_json(self, x):
        return self.carrier.to_json(x)

    def from_json(self, obj):
        return self.carrier.from_json(obj)


def _compact(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":")).encode()


def _single_op_sets(names) -> tuple:
    return tuple((frozenset({n}), frozenset({n})) for n in names)


def _all_subset_pairs(names) -> tuple:
    subsets = [frozenset(c) for r in range(1, len(names) + 1) for c in combinations(names, r)]
    return tuple((a, b) for a in subsets for b in subsets)


def _laver_carrier(cfg: PlatformConfig) -> Carrier:
    table = build_laver_table(cfg.laver_n)
    width = (cfg.laver_n + 8) // 8

    def from_json(v):
        if not isinstance(v, int) or not 1 <= v <= table.size:
            raise ConfigurationError(f"{v!r} is not an element of L_{cfg.laver_n}")
        return v

    return Carrier(
        ops={"laver": partial(laver_apply, table)},
        equal=lambda x, y: x == y,
        sample=lambda rng: rng.randint(1, table.size),
        to_json=lambda x: x,
        from_json=from_json,
        encode=lambda x: x.to_bytes(width, "big"),
        default_pools=(("laver",), ("laver",)),
        supported=_single_op_sets(["laver"]),
        info={"table": table},
    )


def _base_group(cfg: PlatformConfig):
    if cfg.group == "sym":
        return gr.SymmetricGroup(cfg.degree)
    if cfg.group == "gl2":
        return gr.GL2(cfg.prime)
    raise ConfigurationError(f"unknown group kind {cfg.group!r}; choose sym or gl2")


def _special_element(group):
    if isinstance(group, gr.SymmetricGroup):
        return group.long_cycle()
    if isinstance(group, gr.GL2):
        return group.unipotent()
    return gr.Pair(_special_element(group.left), _special_element(group.right))


def _group_carrier(cfg: PlatformConfig) -> Carrier:
    op_name = GROUP_PLATFORMS[cfg.platform]
    base = _base_group(cfg)
    endo_kind = cfg.endo or ("project" if op_name == "f-symmetric" else "identity")
    group = gr.DirectProduct(base, base) if endo_kind == "project" else base
    if endo_kind == "identity":
        f = gr.IdentityEndo()
    elif endo_kind == "inner":
        f = gr.InnerEndo(_special_element(group))
    elif endo_kind == "project":
        f = gr.ProjectionEndo(group, 1)
    else:
        raise ConfigurationError(f"unknown endomorphism {endo_kind!r}; choose identity, inner or project")
    ops = {
        "conj": gr.conjugation,
        "conj-rev": gr.conjugation_rev,
        "symmetric": gr.symmetric_conjugacy,
        "ld-conj": partial(gr.ld_conjugacy, f),
    }
    if gr.is_projector(f, group):
        ops["f-symmetric"] = partial(gr.f_symmetric_conjugacy, f)
    elif op_name == "f-symmetric":
        raise ConfigurationError(f"endomorphism {f!r} is not a projector (f o f != f)")
    return Carrier(
        ops=ops,
        equal=lambda x, y: x == y,
        sample=group.random,
        to_json=group.to_json,
        from_json=group.from_json,
        encode=partial(gr.encode_element, group),
        default_pools=((op_name,), (op_name,)),
        supported=_single_op_sets(ops),
        info={"group": group, "endomorphism": f},
    )


def _braid_sampler(cfg: PlatformConfig):
    n = cfg.max_index + 1

    def sample(rng):
        return br.BraidNormalForm.from_word(br.random_word(cfg.word_len, cfg.max_index, rng), n)

    return sample


def _braid_json(x: br.BraidNormalForm):
    return x.to_record()


def _braid_common(cfg: PlatformConfig) -> dict:
    if cfg.word_len < 0 or cfg.max_index < 1:
        raise ConfigurationError("braid platforms need word_len >= 0 and max_index >= 1")
    return dict(
        equal=lambda x, y: x == y,
        sample=_braid_sampler(cfg),
        to_json=_braid_json,
        from_json=br.BraidNormalForm.from_record,
        encode=lambda x: _compact(x.to_record()),
    )


def _braid_shifted_carrier(cfg: PlatformConfig) -> Carrier:
    ops = {
        "shifted": partial(br.nf_shifted_conjugacy, variant="plain"),
        "shifted-bar": partial(br.nf_shifted_conjugacy, variant="bar"),
    }
    return Carrier(
        ops=ops,
        default_pools=(("shifted", "shifted-bar"), ("shifted", "shifted-bar")),
        supported=_all_subset_pairs(list(ops)),
        **_braid_common(cfg),
    )


def _braid_gen_carrier(cfg: PlatformConfig) -> Carrier:
    params = cfg.gen_params()
    report = br.check_abc_conditions(params)
    a1 = br.normal_form(params.a(1))
    a2 = br.normal_form(params.a(2))
    ops = {
        "gen1": partial(br.nf_gen_shifted_conjugacy, a1, params.p),
        "gen2": partial(br.nf_gen_shifted_conjugacy, a2, params.p),
    }
    if report.bi_ld:
        supported = _all_subset_pairs(list(ops))
    elif report.mutual:
        supported = ((frozenset({"gen1"}), frozenset({"gen2"})), (frozenset({"gen2"}), frozenset({"gen1"})))
    else:
        supported = ()
    return Carrier(
        ops=ops,
        default_pools=(("gen1",), ("gen2",)),
        supported=supported,
        info={"params": params, "conditions": report},
        **_braid_common(cfg),
    )


def make_carrier(cfg: PlatformConfig) -> Carrier:
    if cfg.platform == "laver":
        return _laver_carrier(cfg)
    if cfg.platform in GROUP_PLATFORMS:
        return _group_carrier(cfg)
    if cfg.platform == "braid-shifted":
        return _braid_shifted_carrier(cfg)
    if cfg.platform == "braid-gen-shifted":
        return _braid_gen_carrier(cfg)
    raise ConfigurationError(f"unknown platform {cfg.platform!r}; choose one of {', '.join(PLATFORMS)}")


def _describe(supported) -> str:
    if not supported:
        return "none (parameters fail the commutator conditions)"
    return "; ".join(f"A={{{','.join(sorted(a))}}} B={{{','.join(sorted(b))}}}" for a, b in supported)


def make_pools(cfg: PlatformConfig, carrier: Carrier | None = None) -> PoolPair:
    carrier = carrier or make_carrier(cfg)
    ops_a = tuple(cfg.ops_a) if cfg.ops_a else carrier.default_pools[0]
    ops_b = tuple(cfg.ops_b) if cfg.ops_b else carrier.default_pools[1]
    unknown = [o for o in ops_a + ops_b if o not in carrier.ops]
    if unknown:
        raise ConfigurationError(
            f"unknown operation(s) {unknown} for {cfg.platform}; available: {', '.join(carrier.ops)}"
        )
    if len(set(ops_a)) != len(ops_a) or len(set(ops_b)) != len(ops_b):
        raise ConfigurationError("repeated operation in a pool")
    if (frozenset(ops_a), frozenset(ops_b)) not in carrier.supported:
        raise ConfigurationError(
            f"pools A={{{','.join(ops_a)}}} B={{{','.join(ops_b)}}} are not a supported combination for "
            f"{cfg.platform}; supported: {_describe(carrier.supported)}"
        )
    return PoolPair(
        OperationPool("A", ops_a, tuple(carrier.ops[o] for o in ops_a), carrier.equal),
        OperationPool("B", ops_b, tuple(carrier.ops[o] for o in ops_b), carrier.equal),
    )


def make_platform(cfg: PlatformConfig) -> Platform:
    carrier = make_carrier(cfg)
    return Platform(cfg, carrier, make_pools(cfg, carrier))
