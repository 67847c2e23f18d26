from __future__ import annotations

import json
import random

import pytest

from ldkep.kep import ProtocolSizes, generate_public_parameters, run_exchange
from ldkep.magma import OpId
from ldkep.platforms import PlatformConfig, make_platform
from ldkep.transcript import FORMAT_NAME, dumps, loads, render_text, write_atomic
from ldkep.trees import TreeWord

ORDER = ["header", "params", "alice_public", "p0", "bob_public", "K_A", "K_B", "verdict"]


def exchange(cfg, seed_a=1, seed_b=2, corrupt=None):
    plat = make_platform(cfg)
    params = generate_public_parameters(plat, ProtocolSizes(), random.Random(0))
    return run_exchange(params, seed_a, seed_b, corrupt)


@pytest.mark.parametrize(
    "cfg", [PlatformConfig("laver"), PlatformConfig("conjugacy", group="gl2"), PlatformConfig("braid-gen-shifted")],
    ids=lambda c: c.platform,
)
def test_record_layout_and_values(cfg):
    tr = exchange(cfg)
    text = dumps(tr)
    lines = text.splitlines()
    assert [json.loads(l)["record"] for l in lines] == ORDER
    assert all(l == json.dumps(json.loads(l), sort_keys=True, separators=(",", ":"), ensure_ascii=False) for l in lines)
    doc = loads(text)
    plat = tr.params.platform
    assert doc["header"] == {"record": "header", "format": FORMAT_NAME, "version": 1}
    assert PlatformConfig.from_record(doc["params"]["platform"]) == cfg
    assert doc["K_A"]["encoding"] == tr.key_a.encoding.hex()
    assert bytes.fromhex(doc["K_B"]["encoding"]) == plat.encode(plat.from_json(doc["K_B"]["value"]))
    assert [plat.from_json(v) for v in doc["alice_public"]["values"]] == list(tr.alice_public)
    assert doc["verdict"] == {"record": "verdict", "keys_equal": True, "encodings_equal": True}


def test_optional_records():
    tr = exchange(PlatformConfig("laver"))
    doc = loads(dumps(tr, include_private=True, include_timing=True))
    assert {"alice_private", "bob_private", "timing"} <= set(doc)
    word = TreeWord.from_record(doc["alice_private"]["a0_word"])
    assert word == tr.alice_key.a0_word
    assert [OpId.parse(o) for o in doc["bob_private"]["oB"]] == list(tr.bob_key.ob_chain)
    assert "timing" not in loads(dumps(tr))


def test_byte_identical_repeats():
    for cfg in (PlatformConfig("laver"), PlatformConfig("braid-shifted")):
        a = dumps(exchange(cfg, 3, 4), include_private=True)
        b = dumps(exchange(cfg, 3, 4), include_private=True)
        assert a == b
        assert a != dumps(exchange(cfg, 3, 5), include_private=True)


def test_corruption_flagged():
    tr = exchange(PlatformConfig("conjugacy", degree=16), corrupt=2)
    doc = loads(dumps(tr))
    assert doc["bob_public"]["corrupted"] == 2
    assert "(entry 2 corrupted)" in render_text(tr)


def test_loads_rejects_other_documents():
    with pytest.raises(ValueError):
        loads('{"record":"header","format":"other","version":1}\n')
    with pytest.raises(ValueError):
        loads('{"record":"header","format":"ldkep-transcript","version":2}\n')


def test_write_atomic(tmp_path):
    target = tmp_path / "t.jsonl"
    write_atomic(target, "one\n")
    write_atomic(target, "two\n")
    assert target.read_text() == "two\n"
    assert [p.name for p in tmp_path.iterdir()] == ["t.jsonl"]
