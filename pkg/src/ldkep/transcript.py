"""Line-delimited JSON transcripts of an exchange (format version 1).

Every line is one JSON object with a ``record`` field; keys are sorted and no
insignificant whitespace is written, so equal transcripts are byte-identical.
Record order: ``header``, ``params``, ``alice_public``, ``p0``,
``bob_public``, ``K_A``, ``K_B``, ``verdict``, then the optional
``alice_private``, ``bob_private`` and ``timing`` records.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Iterable

from .kep import Transcript

FORMAT_NAME = "ldkep-transcript"
FORMAT_VERSION = 1


def _line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def transcript_records(tr: Transcript, include_private: bool = False, include_timing: bool = False) -> list[dict]:
    plat = tr.params.platform
    enc = plat.to_json
    records = [
        {"record": "header", "format": FORMAT_NAME, "version": FORMAT_VERSION},
        {
            "record": "params",
            "platform": plat.config.to_record(),
            "pools": {"A": list(plat.pools.a.labels), "B": list(plat.pools.b.labels)},
            "sizes": asdict(tr.params.sizes),
            "generators_a": [enc(x) for x in tr.params.generators_a],
            "generators_b": [enc(x) for x in tr.params.generators_b],
            "seed_a": tr.seed_a,
            "seed_b": tr.seed_b,
        },
        {"record": "alice_public", "values": [enc(x) for x in tr.alice_public]},
        {"record": "p0", "value": enc(tr.p0)},
        {"record": "bob_public", "values": [enc(x) for x in tr.bob_public], "corrupted": tr.corrupted},
        {"record": "K_A", "value": enc(tr.key_a.value), "encoding": tr.key_a.encoding.hex()},
        {"record": "K_B", "value": enc(tr.key_b.value), "encoding": tr.key_b.encoding.hex()},
        {"record": "verdict", "keys_equal": tr.verdict, "encodings_equal": tr.encodings_match},
    ]
    if include_private:
        a, b = tr.alice_key, tr.bob_key
        records.append(
            {
                "record": "alice_private",
                "a0_word": a.a0_word.to_record(),
                "a0": enc(a.a0),
                "a": [enc(x) for x in a.a],
                "oA": [str(o) for o in a.oa],
            }
        )
        records.append(
            {
                "record": "bob_private",
                "b_words": [w.to_record() for w in b.b_words()],
                "b": [enc(x) for x in b.b],
                "oB": [str(o) for o in b.ob_chain],
            }
        )
    if include_timing:
        records.append({"record": "timing", "seconds": tr.timings})
    return records


def dumps(tr: Transcript, **kwargs) -> str:
    return "".join(_line(r) + "\n" for r in transcript_records(tr, **kwargs))


def loads(text: str) -> dict[str, dict]:
    """Parse a transcript into a mapping from record name to record."""
    out: dict[str, dict] = {}
    for raw in text.splitlines():
        if not raw.strip():
            continue
        rec = json.loads(raw)
        out[rec["record"]] = rec
    header = out.get("header", {})
    if header.get("format") != FORMAT_NAME or header.get("version") != FORMAT_VERSION:
        raise ValueError(f"not a {FORMAT_NAME} v{FORMAT_VERSION} document")
    return out


def render_text(tr: Transcript) -> str:
    """Human-readable summary of an exchange."""
    plat = tr.params.platform
    show = lambda x: json.dumps(plat.to_json(x), separators=(",", ":"))
    lines = [
        f"platform   {plat.name}  pools A={{{','.join(plat.pools.a.labels)}}} B={{{','.join(plat.pools.b.labels)}}}",
        f"sizes      {asdict(tr.params.sizes)}",
        f"seeds      alice={tr.seed_a} bob={tr.seed_b}",
        "alice -> bob",
    ]
    lines += [f"  alpha(t_{i}) = {show(x)}" for i, x in enumerate(tr.alice_public, 1)]
    lines.append(f"  p0 = alpha(a0) = {show(tr.p0)}")
    lines.append("bob -> alice" + (f"  (entry {tr.corrupted} corrupted)" if tr.corrupted else ""))
    lines += [f"  beta(s_{j}) = {show(x)}" for j, x in enumerate(tr.bob_public, 1)]
    lines.append(f"K_A = {show(tr.key_a.value)}")
    lines.append(f"K_B = {show(tr.key_b.value)}")
    lines.append(f"keys agree: {tr.verdict}  (encodings identical: {tr.encodings_match})")
    return "\n".join(lines) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_records(records: Iterable[dict]) -> str:
    return "".join(_line(r) + "\n" for r in records)
