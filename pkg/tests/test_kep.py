from __future__ import annotations

import random

import pytest

from ldkep.errors import ConfigurationError, ProtocolError
from ldkep.kep import (
    ProtocolSizes,
    PublicParameters,
    generate_private_alice,
    generate_private_bob,
    generate_public_alice,
    generate_public_bob,
    generate_public_parameters,
    run_exchange,
    shared_key_alice,
    shared_key_bob,
)
from ldkep.magma import iterated_left_mul
from ldkep.platforms import PlatformConfig, make_platform
from ldkep.trees import evaluate_tree, is_valid_tree_vector

LAVER = PlatformConfig("laver", laver_n=4)
CONJ16 = PlatformConfig("conjugacy", degree=16)


def params_for(cfg, sizes=ProtocolSizes(), seed=0):
    return generate_public_parameters(make_platform(cfg), sizes, random.Random(seed))


def test_sizes_validated():
    with pytest.raises(ConfigurationError):
        ProtocolSizes(m_a=0)
    with pytest.raises(ConfigurationError):
        ProtocolSizes(k_b=-1)
    plat = make_platform(LAVER)
    with pytest.raises(ConfigurationError):
        PublicParameters(plat, (1, 2), (3,), ProtocolSizes(m_a=2, m_b=2))


def test_alice_degenerate_sizes():
    params = params_for(CONJ16, ProtocolSizes(n_a0=0, k_a=0))
    sk = generate_private_alice(params, random.Random(1))
    assert len(sk.ia0) == 1 and sk.a == () and sk.oa == ()
    assert sk.a0 == params.generators_a[sk.ia0[0] - 1]
    pub, p0 = generate_public_alice(sk, params)
    assert pub == params.generators_b and p0 == sk.a0
    bob = generate_private_bob(params, random.Random(2))
    bob_pub = generate_public_bob(bob, params)
    assert shared_key_alice(sk, bob_pub, params).value == bob_pub[sk.ia0[0] - 1]


def test_bob_degenerate_sizes():
    params = params_for(CONJ16, ProtocolSizes(k_b=0))
    bob = generate_private_bob(params, random.Random(2))
    assert generate_public_bob(bob, params) == params.generators_a
    alice = generate_private_alice(params, random.Random(1))
    pub, p0 = generate_public_alice(alice, params)
    assert shared_key_bob(bob, pub, p0, params).value == p0

    params = params_for(CONJ16, ProtocolSizes(k_b=1, n_b=0))
    bob = generate_private_bob(params, random.Random(2))
    assert len(bob.b) == 1 and bob.b[0] == params.generators_b[bob.ib[0][0] - 1]


def test_single_step_bob_key():
    params = params_for(CONJ16, ProtocolSizes(k_b=1))
    alice = generate_private_alice(params, random.Random(5))
    bob = generate_private_bob(params, random.Random(6))
    pub, p0 = generate_public_alice(alice, params)
    alpha = lambda y: iterated_left_mul(alice.a, alice.oa, y, params.pools)
    op = params.pools.resolve(bob.ob_chain[0])
    assert shared_key_bob(bob, pub, p0, params).value == op(alpha(bob.b[0]), alpha(alice.a0))


def test_conjugacy_public_key_definition():
    params = params_for(CONJ16, ProtocolSizes(k_a=1))
    alice = generate_private_alice(params, random.Random(9))
    pub, _ = generate_public_alice(alice, params)
    a1 = alice.a[0]
    assert pub == tuple(a1.inverse() * t * a1 for t in params.generators_b)


def test_determinism_seed_42():
    params = params_for(LAVER)
    k1 = generate_private_alice(params, random.Random(42))
    k2 = generate_private_alice(params, random.Random(42))
    assert (k1.ia0, k1.ta0, k1.oa0, k1.a0, k1.a, k1.oa) == (k2.ia0, k2.ta0, k2.oa0, k2.a0, k2.a, k2.oa)


@pytest.mark.parametrize("cfg", [LAVER, CONJ16, PlatformConfig("symmetric-conjugacy", group="gl2")], ids=lambda c: f"{c.platform}-{c.group}")
def test_private_key_invariants(cfg):
    params = params_for(cfg)
    s = params.sizes
    for seed in range(100):
        a = generate_private_alice(params, random.Random(seed))
        assert len(a.ia0) == s.n_a0 + 1 and all(1 <= i <= s.m_a for i in a.ia0)
        assert is_valid_tree_vector(a.ta0) and len(a.ta0) == s.n_a0
        assert all(o.pool == "A" for o in a.oa0 + a.oa) and len(a.a) == len(a.oa) == s.k_a
        assert a.a0 == evaluate_tree(a.ta0, a.oa0, [params.generators_a[i - 1] for i in a.ia0], params.pools)
        assert a.a0_word.evaluate(params.generators_a, params.pools) == a.a0
        b = generate_private_bob(params, random.Random(seed))
        assert len(b.b) == len(b.ob_chain) == s.k_b
        for word, value, ops in zip(b.b_words(), b.b, b.ob):
            assert all(o.pool == "B" for o in ops)
            assert word.evaluate(params.generators_b, params.pools) == value
        assert all(o.pool == "B" for o in b.ob_chain)


@pytest.mark.parametrize("cfg", [LAVER, CONJ16, PlatformConfig("braid-shifted")], ids=lambda c: f"{c.platform}-{c.group}")
def test_alpha_of_tree_word_computed_two_ways(cfg):
    params = params_for(cfg)
    for seed in range(5 if cfg.platform.startswith("braid") else 50):
        alice = generate_private_alice(params, random.Random(seed))
        bob = generate_private_bob(params, random.Random(seed + 1000))
        pub, _ = generate_public_alice(alice, params)
        for word, b in zip(bob.b_words(), bob.b):
            direct = iterated_left_mul(alice.a, alice.oa, b, params.pools)
            assert params.platform.equal(word.evaluate(pub, params.pools), direct)


ROUND_TRIP = [
    LAVER,
    CONJ16,
    PlatformConfig("conjugacy-rev", group="gl2"),
    PlatformConfig("symmetric-conjugacy", group="gl2"),
    PlatformConfig("ld-conjugacy", endo="inner"),
    PlatformConfig("f-symmetric-conjugacy"),
    PlatformConfig("braid-shifted"),
    PlatformConfig("braid-gen-shifted"),
    PlatformConfig("braid-gen-shifted", a1p=(1,), a1pp=(2,), a2p=(), ops_a=("gen2",), ops_b=("gen1",)),
]


@pytest.mark.parametrize("cfg", ROUND_TRIP, ids=lambda c: c.platform)
def test_round_trip(cfg):
    params = params_for(cfg, seed=3)
    for seed in range(2 if cfg.platform.startswith("braid") else 20):
        tr = run_exchange(params, seed, seed + 1)
        assert tr.verdict and tr.encodings_match
        assert tr.key_a.digest() == tr.key_b.digest()


def test_key_material_not_published():
    params = params_for(CONJ16)
    for seed in range(50):
        tr = run_exchange(params, seed, seed + 7)
        secrets = (tr.alice_key.a0, *tr.alice_key.a)
        assert not any(v == s for v in tr.alice_public for s in secrets)


def test_corrupted_exchange_on_conjugacy():
    params = params_for(CONJ16)
    alice = generate_private_alice(params, random.Random(1))
    tr = run_exchange(params, 1, 2, corrupt=alice.ia0[0])
    assert tr.corrupted == alice.ia0[0]
    assert tr.bob_public != generate_public_bob(tr.bob_key, params)
    assert not tr.verdict and not tr.encodings_match


def test_protocol_errors():
    params = params_for(CONJ16)
    alice = generate_private_alice(params, random.Random(1))
    bob = generate_private_bob(params, random.Random(2))
    pub, p0 = generate_public_alice(alice, params)
    with pytest.raises(ProtocolError):
        shared_key_alice(alice, generate_public_bob(bob, params)[:-1], params)
    with pytest.raises(ProtocolError):
        shared_key_bob(bob, pub + pub[:1], p0, params)
    with pytest.raises(ProtocolError):
        run_exchange(params, 1, 2, corrupt=5)


def test_run_exchange_deterministic():
    params = params_for(PlatformConfig("braid-shifted"))
    t1, t2 = run_exchange(params, 4, 5), run_exchange(params, 4, 5)
    assert t1.key_a.encoding == t2.key_a.encoding
    assert [params.platform.encode(x) for x in t1.alice_public] == [params.platform.encode(x) for x in t2.alice_public]
    assert set(t1.timings) == {"alice_keygen", "bob_keygen", "alice_shared", "bob_shared"}
