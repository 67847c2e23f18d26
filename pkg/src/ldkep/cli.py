"""Command-line front end.

Exit codes: 0 success, 1 a law or key-agreement failure, 2 a configuration error.
"""

from __future__ import annotations

import argparse
import random
import sys

from .braid import check_abc_conditions
from .errors import LdkepError
from .kep import ProtocolSizes, generate_public_parameters, run_exchange
from .laver import build_laver_table
from .laws import verify_laws
from .platforms import PLATFORMS, PlatformConfig, make_platform
from .transcript import dump_records, dumps, render_text, write_atomic
from .trees import catalan, enumerate_tree_vectors, is_valid_tree_vector, random_tree_vector

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> tuple[int, ...]:
    text = text.replace(",", " ").strip().strip("[]")
    try:
        return tuple(int(t) for t in text.split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def _names(text: str) -> tuple[str, ...]:
    return tuple(t for t in text.replace(",", " ").split() if t)


def _add_platform_args(p: argparse.ArgumentParser, default_platform="laver"):
    g = p.add_argument_group("platform")
    g.add_argument("--platform", choices=PLATFORMS, default=default_platform)
    g.add_argument("--ops-a", type=_names, help="comma-separated operations for pool A")
    g.add_argument("--ops-b", type=_names, help="comma-separated operations for pool B")
    g.add_argument("--n", type=int, default=4, help="Laver table level")
    g.add_argument("--group", choices=("sym", "gl2"), default="sym")
    g.add_argument("--degree", type=int, default=8, help="points of the symmetric group")
    g.add_argument("--prime", type=int, default=1009, help="modulus of GL(2, p)")
    g.add_argument("--endo", choices=("identity", "inner", "project"))
    g.add_argument("--word-len", type=int, default=6, help="length of random braid words")
    g.add_argument("--max-index", type=int, default=4, help="largest generator index in random braid words")
    g.add_argument("--gen-p", type=int, default=3)
    g.add_argument("--gen-sign", type=int, choices=(1, -1), default=1)
    g.add_argument("--a1p", type=_ints, default=(1,), help='braid word such as "1 -2"')
    g.add_argument("--a1pp", type=_ints, default=())
    g.add_argument("--a2p", type=_ints, default=(1, 1))
    g.add_argument("--a2pp", type=_ints, default=())


def _config(args) -> PlatformConfig:
    return PlatformConfig(
        platform=args.platform,
        ops_a=args.ops_a or None,
        ops_b=args.ops_b or None,
        laver_n=args.n,
        group=args.group,
        degree=args.degree,
        prime=args.prime,
        endo=args.endo,
        word_len=args.word_len,
        max_index=args.max_index,
        gen_p=args.gen_p,
        gen_sign=args.gen_sign,
        a1p=args.a1p,
        a1pp=args.a1pp,
        a2p=args.a2p,
        a2pp=args.a2pp,
    )


def _emit(args, text: str):
    if getattr(args, "output", None):
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_exchange(args) -> int:
    cfg = _config(args)
    platform = make_platform(cfg)
    sizes = ProtocolSizes(args.m_a, args.m_b, args.n_a0, args.n_b, args.k_a, args.k_b)
    params = generate_public_parameters(platform, sizes, random.Random(args.seed_params))
    tr = run_exchange(params, args.seed_a, args.seed_b, corrupt=args.corrupt)
    if args.format == "structured":
        text = dumps(tr, include_private=args.include_private, include_timing=args.timing)
    else:
        text = render_text(tr)
        if args.timing:
            text += "".join(f"{k:14s} {v:.4f}s\n" for k, v in tr.timings.items())
    _emit(args, text)
    return EXIT_OK if tr.verdict else EXIT_FAIL


def cmd_laver(args) -> int:
    table = build_laver_table(args.n)
    if args.format == "structured":
        text = dump_records([{"record": "laver", "n": table.n, "rows": [list(r) for r in table.rows]}])
    else:
        text = table.to_text() + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_trees(args) -> int:
    if args.validate is not None:
        ok = is_valid_tree_vector(list(args.validate))
        if args.format == "structured":
            text = dump_records([{"record": "tree", "entries": list(args.validate), "valid": ok}])
        else:
            text = f"{list(args.validate)} {'valid' if ok else 'invalid'}\n"
        _emit(args, text)
        return EXIT_OK if ok else EXIT_FAIL
    if args.n is None:
        raise LdkepError("give --n or --validate")
    if args.random:
        rng = random.Random(args.seed)
        trees = [random_tree_vector(args.n, rng) for _ in range(args.random)]
    else:
        trees = enumerate_tree_vectors(args.n)
    if args.format == "structured":
        recs = [{"record": "tree", "entries": list(t)} for t in trees] if args.list else []
        recs.append({"record": "count", "n": args.n, "count": len(trees), "catalan": catalan(args.n)})
        text = dump_records(recs)
    else:
        text = "".join(f"{list(t)}\n" for t in trees) if args.list else ""
        text += f"count {len(trees)}\n"
    _emit(args, text)
    return EXIT_OK


def cmd_verify_laws(args) -> int:
    cfg = _config(args)
    results = verify_laws(cfg, samples=args.samples, seed=args.seed, exhaustive_max=args.exhaustive_max)
    failed = any(not r.ok for r in results)
    if args.format == "structured":
        recs = [
            {
                "record": "law",
                "law": r.law,
                "checked": r.checked,
                "exhaustive": r.exhaustive,
                "violations": len(r.violations),
            }
            for r in results
        ]
        recs.append({"record": "summary", "platform": cfg.platform, "ok": not failed})
        text = dump_records(recs)
    else:
        lines = []
        for r in results:
            mode = "exhaustive" if r.exhaustive else "random"
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.law:32s} {r.checked:8d} {mode:10s} violations={len(r.violations)}")
        if cfg.platform == "braid-gen-shifted":
            rep = check_abc_conditions(cfg.gen_params())
            lines.append(f"commutator conditions: mutual={rep.mutual} bi-LD={rep.bi_ld}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ldkep", description="Non-associative key establishment over left distributive systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exchange", help="run one seeded key exchange")
    _add_platform_args(p)
    for name, default in (("m-a", 4), ("m-b", 4), ("n-a0", 4), ("n-b", 4), ("k-a", 3), ("k-b", 3)):
        p.add_argument(f"--{name}", type=int, default=default)
    p.add_argument("--seed-a", type=int, default=1)
    p.add_argument("--seed-b", type=int, default=2)
    p.add_argument("--seed-params", type=int, default=0)
    p.add_argument("--corrupt", type=int, help="replace this 1-based entry of Bob's public key in transit")
    p.add_argument("--include-private", action="store_true")
    p.add_argument("--timing", action="store_true", help="also report timings (breaks byte-identity)")
    p.set_defaults(func=cmd_exchange)

    p = sub.add_parser("laver", help="print a Laver table")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_laver)

    p = sub.add_parser("trees", help="enumerate, sample or validate tree vectors")
    p.add_argument("--n", type=int)
    p.add_argument("--list", action="store_true", help="print the vectors, not just the count")
    p.add_argument("--random", type=int, default=0, metavar="K", help="draw K uniform trees instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--validate", type=_ints, metavar="ENTRIES")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("verify-laws", help="check distributivity laws on a platform")
    _add_platform_args(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive-max", type=int, default=4, help="largest Laver level checked exhaustively")
    p.set_defaults(func=cmd_verify_laws)

    for p in sub.choices.values():
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--output", help="write to this file (atomically) instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LdkepError as exc:
        print(f"ldkep: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
