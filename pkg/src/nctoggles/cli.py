"""Command-line driver: every operation as a reproducible, scriptable run.

Exit codes: 0 = verified / holds, 1 = falsified / counterexample found,
2 = precondition unmet (including enumeration ceilings), 3 = usage or
parse error.  JSON output is byte-identical across identical invocations
and embeds the invocation config, tool version, and seed.

The enumeration ceiling defaults to 16 and can be raised per invocation
with ``--max-n`` or globally with the NCTOGGLES_MAX_ENUM environment
variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .dynamics import check_homomesy, orbits, parse_statistic
from .indsets import (
    GraphSizeError,
    Multigraph,
    SimpleGraph,
    check_cliquish_with,
    enumerate_2cliquish_from_skeletal,
    is_2_cliquish,
    multigraph_to_skeletal,
    skeletal_to_multigraph,
    skeletalize,
)
from .kreweras import (
    circular_dot,
    circular_text,
    kreweras,
    kreweras_oracle,
    kreweras_power,
    kreweras_prime,
    kreweras_prime_oracle,
    simion_ullman,
)
from .ncpartition import (
    DEFAULT_ENUM_LIMIT,
    BlockPartition,
    EnumerationLimitError,
    NCPartition,
    catalan,
    enumerate_nc,
    parse_arcs,
)
from .toggles import toggle
from .verify import DEFAULT_SEED, DEFAULT_WORDS, run_all
from .words import ToggleWord, WordParseError

OK, FALSIFIED, PRECONDITION, USAGE = 0, 1, 2, 3

ENV_LIMIT = "NCTOGGLES_MAX_ENUM"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _enum_limit(args) -> int:
    if getattr(args, "max_n", None) is not None:
        return args.max_n
    env = os.environ.get(ENV_LIMIT)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{ENV_LIMIT} must be an integer, got {env!r}")
    return DEFAULT_ENUM_LIMIT


def _emit(args, text_fn, payload: dict) -> None:
    if args.format == "json":
        envelope = {
            "config": {
                k: v for k, v in sorted(vars(args).items()) if k != "func"
            },
            "version": __version__,
            "seed": getattr(args, "seed", None),
            "result": payload,
        }
        print(json.dumps(envelope, sort_keys=True, separators=(",", ":")))
    else:
        print(text_fn())


def _parse_partition(n: int, text: str) -> NCPartition:
    text = text.strip()
    if not text:
        return NCPartition.empty(n)
    if text.startswith("{"):
        return BlockPartition.from_text(text, n).to_arcs()
    if ";" in text:
        partition = NCPartition.from_text(text)
        if partition.n != n:
            raise _UsageError(
                f"partition declares n={partition.n} but the command says n={n}"
            )
        return partition
    return NCPartition(n, parse_arcs(text))


def _load_word(args) -> ToggleWord:
    if getattr(args, "word_file", None):
        with open(args.word_file, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = args.word
    if text is None:
        raise _UsageError("a word is required (--word or --word-file)")
    return ToggleWord.from_text(args.n, text)


def _cmd_enumerate(args) -> int:
    limit = _enum_limit(args)
    partitions = enumerate_nc(args.n, limit)
    count = len(partitions)
    payload: dict = {"n": args.n, "count": count, "catalan": catalan(args.n)}
    if args.count_only:
        _emit(args, lambda: str(count), payload)
        return OK
    if args.blocks:
        lines = [p.block_partition().to_text() for p in partitions]
    else:
        lines = [p.to_text() for p in partitions]
    payload["partitions"] = [p.to_json_dict() for p in partitions]
    _emit(args, lambda: "\n".join(lines), payload)
    return OK


def _cmd_toggle(args) -> int:
    partition = _parse_partition(args.n, args.partition)
    if args.arc:
        arcs = parse_arcs(args.arc)
        if len(arcs) != 1:
            raise _UsageError(f"--arc expects one arc, got {args.arc!r}")
        result = toggle(partition, arcs[0])
    else:
        result = _load_word(args).apply(partition)
    payload = {"input": partition.to_json_dict(), "output": result.to_json_dict()}
    _emit(args, result.to_text, payload)
    return OK


def _cmd_orbits(args) -> int:
    word = _load_word(args)
    orbit_list = orbits(word, _enum_limit(args), threads=args.threads)
    sizes = sorted(o.size for o in orbit_list)
    payload = {
        "n": args.n,
        "word": word.to_text(),
        "orbit_count": len(orbit_list),
        "sizes": sizes,
        "orbits": [[p.to_json_dict()["arcs"] for p in o.elements] for o in orbit_list],
    }
    if args.sizes_only:
        payload.pop("orbits")
        _emit(args, lambda: " ".join(map(str, sizes)), payload)
        return OK

    def render() -> str:
        lines = [f"word: {word.to_text()}", f"orbits: {len(orbit_list)}"]
        for idx, orbit in enumerate(orbit_list):
            chain = " -> ".join(
                "(" + " ".join(f"{i},{j}" for i, j in p.arcs()) + ")"
                for p in orbit.elements
            )
            lines.append(f"orbit {idx} (size {orbit.size}): {chain}")
        return "\n".join(lines)

    _emit(args, render, payload)
    return OK


def _cmd_homomesy(args) -> int:
    word = _load_word(args)
    stat = parse_statistic(args.stat)
    report = check_homomesy(word, stat, _enum_limit(args), threads=args.threads)
    _emit(args, report.to_text_table, report.to_json_dict())
    return OK if report.homomesic else FALSIFIED


def _cmd_kreweras(args) -> int:
    partition = _parse_partition(args.n, args.partition)
    if args.simion_ullman:
        result = simion_ullman(partition)
        label = "simion-ullman"
    elif args.prime:
        result = (kreweras_prime_oracle if args.oracle else kreweras_prime)(partition)
        label = "prime"
    elif args.power is not None:
        result = kreweras_power(partition, args.power)
        label = f"power {args.power}"
    else:
        result = (kreweras_oracle if args.oracle else kreweras)(partition)
        label = "complement"

    payload = {
        "input": partition.to_json_dict(),
        "operation": label,
        "output": result.to_json_dict(),
        "blocks": result.block_partition().to_text(),
    }

    def render() -> str:
        lines = [result.to_text(), result.block_partition().to_text()]
        if args.circular:
            lines.append(circular_text(result))
        if args.dot:
            lines.append(circular_dot(result))
        return "\n".join(lines)

    _emit(args, render, payload)
    return OK


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _resolve_uset(graph: SimpleGraph, args):
    if args.uset:
        by_name = {str(v): v for v in graph.vertices}
        u_set = frozenset(by_name[tok] for tok in args.uset.split() if tok in by_name)
        missing = [tok for tok in args.uset.split() if tok not in by_name]
        if missing:
            raise _UsageError(f"--uset names unknown vertices {missing}")
        if check_cliquish_with(graph, u_set) is None:
            raise _UsageError("--uset is not a valid 2-cliquish witness")
        return u_set
    cert = is_2_cliquish(graph)
    if cert is None:
        return None
    return cert.u_set


def _cmd_graph(args) -> int:
    if args.action == "gen":
        if not args.from_skeletal:
            raise _UsageError("gen requires --from-skeletal FILE")
        graph = SimpleGraph.from_text(_read_text(args.from_skeletal))
    else:
        if not args.file:
            raise _UsageError(f"{args.action} requires a graph file")
        if args.action == "from-multigraph":
            multigraph = Multigraph.from_text(_read_text(args.file))
        else:
            graph = SimpleGraph.from_text(_read_text(args.file))

    if args.action == "check-cliquish":
        cert = is_2_cliquish(graph)
        if cert is None:
            _emit(args, lambda: "not 2-cliquish", {"cliquish": False})
            return FALSIFIED
        u_names = sorted(str(u) for u in cert.u_set)
        payload = {
            "cliquish": True,
            "U": u_names,
            "A": cert.A,
            "two_u_neighbors": {
                str(v): sorted(map(str, pair)) for v, pair in cert.u_neighbors.items()
            },
        }
        _emit(args, lambda: "2-cliquish with U = {" + " ".join(u_names) + "}", payload)
        return OK

    u_set = _resolve_uset(graph, args) if args.action != "from-multigraph" else None
    if args.action != "from-multigraph" and u_set is None:
        _emit(args, lambda: "not 2-cliquish", {"cliquish": False})
        return PRECONDITION

    if args.action == "skeletalize":
        result = skeletalize(graph, u_set)
        _emit(args, result.to_text, {"graph": result.to_text()})
        return OK
    if args.action == "to-multigraph":
        multigraph = skeletal_to_multigraph(skeletalize(graph, u_set), u_set)
        summary = (
            f"|V| = {multigraph.n_vertices}, |E| = {multigraph.n_edges}, "
            f"|V|+|E| = {multigraph.n_vertices + multigraph.n_edges}"
        )
        payload = {
            "multigraph": multigraph.to_text(),
            "vertices": multigraph.n_vertices,
            "edges": multigraph.n_edges,
        }
        _emit(args, lambda: multigraph.to_text() + "\n" + summary, payload)
        return OK
    if args.action == "from-multigraph":
        graph, u_set = multigraph_to_skeletal(multigraph)
        u_names = sorted(str(u) for u in u_set)
        payload = {"graph": graph.to_text(), "U": u_names}
        _emit(
            args,
            lambda: graph.to_text() + "\nU = {" + " ".join(u_names) + "}",
            payload,
        )
        return OK
    if args.action == "gen":
        graphs = enumerate_2cliquish_from_skeletal(graph, u_set)
        payload = {"count": len(graphs), "graphs": [g.to_text() for g in graphs]}
        _emit(
            args,
            lambda: f"{len(graphs)} graphs up to isomorphism\n\n"
            + "\n\n".join(g.to_text() for g in graphs),
            payload,
        )
        return OK
    raise _UsageError(f"unknown graph action {args.action!r}")


def _cmd_verify_all(args) -> int:
    results = run_all(max_n=args.max_n, num_words=args.words, seed=args.seed)
    payload = {
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": round(r.seconds, 3),
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    _emit(args, lambda: "\n".join(r.line() for r in results), payload)
    return OK if payload["all_passed"] else FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nctoggles", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_default=None, with_max_n=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=seed_default)
        if with_max_n:
            p.add_argument(
                "--max-n", type=int, default=None,
                help="enumeration ceiling override (env NCTOGGLES_MAX_ENUM)",
            )

    p = sub.add_parser("enumerate", help="list noncrossing partitions of [n]")
    p.add_argument("n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--blocks", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("toggle", help="apply one toggle or a word to a partition")
    p.add_argument("n", type=int)
    p.add_argument("--partition", default="")
    p.add_argument("--arc")
    p.add_argument("--word")
    p.add_argument("--word-file")
    common(p)
    p.set_defaults(func=_cmd_toggle)

    p = sub.add_parser("orbits", help="orbit decomposition of a toggle word")
    p.add_argument("n", type=int)
    p.add_argument("--word")
    p.add_argument("--word-file")
    p.add_argument("--sizes-only", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("homomesy", help="check a statistic for homomesy")
    p.add_argument("n", type=int)
    p.add_argument("--word")
    p.add_argument("--word-file")
    p.add_argument("--stat", required=True, help="alpha|beta|card|chi:i,j|psi:k")
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_homomesy)

    p = sub.add_parser("kreweras", help="Kreweras complement and relatives")
    p.add_argument("n", type=int)
    p.add_argument("--partition", default="")
    p.add_argument("--prime", action="store_true")
    p.add_argument("--simion-ullman", action="store_true")
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--oracle", action="store_true", help="use the geometric search")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--dot", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_kreweras)

    p = sub.add_parser("graph", help="2-cliquish and skeletal graph tools")
    p.add_argument(
        "action",
        choices=(
            "check-cliquish", "skeletalize", "to-multigraph",
            "from-multigraph", "gen",
        ),
    )
    p.add_argument("file", nargs="?")
    p.add_argument("--from-skeletal")
    p.add_argument("--uset", help="pin the independent set U (space-separated labels)")
    common(p)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("verify-all", help="run the full verification suite")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--words", type=int, default=DEFAULT_WORDS)
    common(p, seed_default=DEFAULT_SEED, with_max_n=False)
    p.set_defaults(func=_cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse --help/--version
        return int(exc.code or 0)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (WordParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (EnumerationLimitError, GraphSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
