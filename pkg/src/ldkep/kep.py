"""Key establishment over a pair of mutually left distributive pools.

Alice's secret is a tree word ``a0`` over the public generators ``s_j`` and
pool A, plus a chain ``(a, oA)`` defining ``alpha(y) = a_k *(...(a_1 * y))``.
Bob's secret is ``k_B`` tree words ``b_k`` over the ``t_i`` and pool B, plus
``oB``.  Because ``alpha`` is an endomorphism for pool B and ``beta`` one for
pool A, each side can finish the other's computation from the images of the
generators alone::

    Alice -> Bob : alpha(t_1..t_mB), p0 = alpha(a0)
    Bob -> Alice : beta(s_1..s_mA)
    K_A = alpha(T_a0(beta(s_r)...))       = alpha(beta(a0))
    K_B = alpha(b_kB) *(... (alpha(b_1) * p0)) = alpha(beta(a0))
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import ConfigurationError, ProtocolError
from .magma import OpId, iterated_left_mul
from .platforms import Platform
from .trees import TreeWord, evaluate_tree, random_tree_vector


@dataclass(frozen=True)
class ProtocolSizes:
    m_a: int = 4
    m_b: int = 4
    n_a0: int = 4
    n_b: int = 4
    k_a: int = 3
    k_b: int = 3

    def __post_init__(self):
        if self.m_a < 1 or self.m_b < 1:
            raise ConfigurationError("m_A and m_B must be at least 1")
        if min(self.n_a0, self.n_b, self.k_a, self.k_b) < 0:
            raise ConfigurationError("tree and chain sizes must be non-negative")


@dataclass(frozen=True, eq=False)
class PublicParameters:
    platform: Platform
    generators_a: tuple  # s_1 .. s_mA
    generators_b: tuple  # t_1 .. t_mB
    sizes: ProtocolSizes

    def __post_init__(self):
        if len(self.generators_a) != self.sizes.m_a or len(self.generators_b) != self.sizes.m_b:
            raise ConfigurationError("generator vectors do not match m_A / m_B")

    @property
    def pools(self):
        return self.platform.pools


def generate_public_parameters(platform: Platform, sizes: ProtocolSizes, rng: random.Random) -> PublicParameters:
    gens_a = tuple(platform.sample(rng) for _ in range(sizes.m_a))
    gens_b = tuple(platform.sample(rng) for _ in range(sizes.m_b))
    return PublicParameters(platform, gens_a, gens_b, sizes)


@dataclass(frozen=True, eq=False)
class AlicePrivateKey:
    ia0: tuple[int, ...]  # 1-based indices into generators_a
    ta0: tuple[int, ...]
    oa0: tuple[OpId, ...]
    a0: Any
    a: tuple
    oa: tuple[OpId, ...]

    @property
    def a0_word(self) -> TreeWord:
        return TreeWord(self.ta0, self.oa0, self.ia0)


@dataclass(frozen=True, eq=False)
class BobPrivateKey:
    ib: tuple[tuple[int, ...], ...]
    tb: tuple[tuple[int, ...], ...]
    ob: tuple[tuple[OpId, ...], ...]
    b: tuple
    ob_chain: tuple[OpId, ...]  # oB

    def b_words(self) -> list[TreeWord]:
        return [TreeWord(t, o, i) for t, o, i in zip(self.tb, self.ob, self.ib)]


@dataclass(frozen=True, eq=False)
class SharedKey:
    value: Any
    encoding: bytes

    def digest(self) -> str:
        """SHA-256 of the canonical encoding, as a convenience session key."""
        return hashlib.sha256(self.encoding).hexdigest()


def _random_ops(pool, count: int, rng: random.Random) -> tuple[OpId, ...]:
    return tuple(OpId(pool.name, rng.randrange(len(pool))) for _ in range(count))


def generate_private_alice(params: PublicParameters, rng: random.Random) -> AlicePrivateKey:
    s, pool = params.sizes, params.pools.a
    ia0 = tuple(rng.randint(1, s.m_a) for _ in range(s.n_a0 + 1))
    leaves = [params.generators_a[i - 1] for i in ia0]
    ta0 = random_tree_vector(s.n_a0, rng)
    oa0 = _random_ops(pool, s.n_a0, rng)
    a0 = evaluate_tree(ta0, oa0, leaves, params.pools)
    a = tuple(params.platform.sample(rng) for _ in range(s.k_a))
    oa = _random_ops(pool, s.k_a, rng)
    return AlicePrivateKey(ia0, ta0, oa0, a0, a, oa)


def generate_private_bob(params: PublicParameters, rng: random.Random) -> BobPrivateKey:
    s, pool = params.sizes, params.pools.b
    ib, tb, ob, b = [], [], [], []
    for _ in range(s.k_b):
        idx = tuple(rng.randint(1, s.m_b) for _ in range(s.n_b + 1))
        leaves = [params.generators_b[i - 1] for i in idx]
        tree = random_tree_vector(s.n_b, rng)
        ops = _random_ops(pool, s.n_b, rng)
        ib.append(idx)
        tb.append(tree)
        ob.append(ops)
        b.append(evaluate_tree(tree, ops, leaves, params.pools))
    ob_chain = _random_ops(pool, s.k_b, rng)
    return BobPrivateKey(tuple(ib), tuple(tb), tuple(ob), tuple(b), ob_chain)


def generate_public_alice(sk: AlicePrivateKey, params: PublicParameters) -> tuple[tuple, Any]:
    alpha = lambda y: iterated_left_mul(sk.a, sk.oa, y, params.pools)
    return tuple(alpha(t) for t in params.generators_b), alpha(sk.a0)


def generate_public_bob(sk: BobPrivateKey, params: PublicParameters) -> tuple:
    return tuple(iterated_left_mul(sk.b, sk.ob_chain, s, params.pools) for s in params.generators_a)


def _check_len(name: str, seq: Sequence, expected: int):
    if len(seq) != expected:
        raise ProtocolError(f"{name} has {len(seq)} entries, expected {expected}")


def shared_key_alice(sk: AlicePrivateKey, bob_public: Sequence, params: PublicParameters) -> SharedKey:
    _check_len("bob_public", bob_public, params.sizes.m_a)
    beta_a0 = evaluate_tree(sk.ta0, sk.oa0, [bob_public[i - 1] for i in sk.ia0], params.pools)
    k = iterated_left_mul(sk.a, sk.oa, beta_a0, params.pools)
    return SharedKey(k, params.platform.encode(k))


def shared_key_bob(sk: BobPrivateKey, alice_public: Sequence, p0: Any, params: PublicParameters) -> SharedKey:
    _check_len("alice_public", alice_public, params.sizes.m_b)
    k = p0
    for idx, tree, ops, op in zip(sk.ib, sk.tb, sk.ob, sk.ob_chain):
        alpha_b = evaluate_tree(tree, ops, [alice_public[i - 1] for i in idx], params.pools)
        k = params.pools.resolve(op)(alpha_b, k)
    return SharedKey(k, params.platform.encode(k))


def corrupt_entry(values: Sequence, index: int, platform: Platform, rng: random.Random) -> tuple:
    """Replace the 1-based ``index`` entry with a freshly sampled, different element."""
    values = list(values)
    for _ in range(1000):
        fresh = platform.sample(rng)
        if not platform.equal(fresh, values[index - 1]):
            values[index - 1] = fresh
            return tuple(values)
    raise ProtocolError("could not sample a distinct replacement element")


@dataclass(frozen=True, eq=False)
class Transcript:
    params: PublicParameters
    seed_a: int
    seed_b: int
    alice_key: AlicePrivateKey
    bob_key: BobPrivateKey
    alice_public: tuple
    p0: Any
    bob_public: tuple
    key_a: SharedKey
    key_b: SharedKey
    corrupted: int | None = None
    timings: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.params.platform.equal(self.key_a.value, self.key_b.value)

    @property
    def encodings_match(self) -> bool:
        return self.key_a.encoding == self.key_b.encoding


def run_exchange(params: PublicParameters, seed_a: int, seed_b: int, corrupt: int | None = None) -> Transcript:
    """Run both roles in-process.

    ``corrupt`` (1-based) replaces that entry of Bob's public vector before
    Alice reads it, simulating a tampered message.
    """
    clock = time.perf_counter
    timings = {}
    rng_a, rng_b = random.Random(seed_a), random.Random(seed_b)

    t = clock()
    sk_a = generate_private_alice(params, rng_a)
    alice_public, p0 = generate_public_alice(sk_a, params)
    timings["alice_keygen"] = clock() - t

    t = clock()
    sk_b = generate_private_bob(params, rng_b)
    bob_public = generate_public_bob(sk_b, params)
    timings["bob_keygen"] = clock() - t

    received = bob_public
    if corrupt is not None:
        if not 1 <= corrupt <= len(bob_public):
            raise ProtocolError(f"corrupt index {corrupt} outside 1..{len(bob_public)}")
        received = corrupt_entry(bob_public, corrupt, params.platform, random.Random(f"corrupt:{seed_b}"))

    t = clock()
    key_a = shared_key_alice(sk_a, received, params)
    timings["alice_shared"] = clock() - t
    t = clock()
    key_b = shared_key_bob(sk_b, alice_public, p0, params)
    timings["bob_shared"] = clock() - t

    return Transcript(
        params, seed_a, seed_b, sk_a, sk_b, alice_public, p0, received, key_a, key_b, corrupt, timings
    )
