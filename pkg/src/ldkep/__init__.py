"""Non-associative key establishment over left distributive systems."""

from .errors import (
    ConfigurationError,
    DomainError,
    LdkepError,
    PoolError,
    ProtocolError,
    SizeLimitError,
    StructureError,
)
from .kep import (
    AlicePrivateKey,
    BobPrivateKey,
    ProtocolSizes,
    PublicParameters,
    SharedKey,
    Transcript,
    generate_private_alice,
    generate_private_bob,
    generate_public_alice,
    generate_public_bob,
    generate_public_parameters,
    run_exchange,
    shared_key_alice,
    shared_key_bob,
)
from .magma import OperationPool, OpId, PoolPair, check_ld, check_mutual_ld, iterated_left_mul
from .platforms import PlatformConfig, make_platform, make_pools
from .trees import TreeWord, enumerate_tree_vectors, evaluate_tree, is_valid_tree_vector, random_tree_vector

__version__ = "0.1.0"
