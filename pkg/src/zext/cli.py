"""Command-line surface: enumerate, spectrum, index, extremal, verify, table1, hillclimb.

Exit codes are a stable contract for CI: 0 success, 1 verification or internal
failure, 2 usage/config error.  Text output prints log-scale values because
raw values like e**81 are unprintable as decimals; JSON carries exact term
maps losslessly.  All flags can also come from a TOML config file via
``--config`` (explicit flags win).  ``ZEXT_CACHE_DIR`` overrides the cache
directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .enumeration import (
    DEFAULT_GENERATOR_CAP,
    free_tree_count,
    free_tree_sequences,
    write_cache_file,
)
from .errors import (
    AlreadyBalanced,
    InvalidArms,
    InvalidShape,
    NotADoubleStar,
    NotATree,
    NOutOfRange,
    UnknownIndex,
    ZextError,
)
from .indices import (
    DEFAULT_PREC_CAP,
    DEFAULT_PREC_START,
    approx_log,
    exp_vdb_index,
    get_index,
    vdb_index,
)
from .search import (
    CSV_HEADER,
    Direction,
    extremal,
    hill_climb,
    table1_report,
    verify_theorem_max,
)
from .trees import edge_spectrum, parse_tree

_USAGE_ERRORS = (
    NOutOfRange, UnknownIndex, InvalidArms, InvalidShape, NotATree,
    NotADoubleStar, AlreadyBalanced, ValueError,
)


@dataclass
class RunConfig:
    n_lo: int | None = None
    n_hi: int | None = None
    indices: list[str] | None = None
    direction: str | None = None
    workers: int = 0  # 0: use available parallelism
    prec_start: int = DEFAULT_PREC_START
    prec_cap: int = DEFAULT_PREC_CAP
    cache_dir: str | None = None
    fmt: str = "text"
    cap: int = DEFAULT_GENERATOR_CAP
    tree_format: str = "auto"

    def validate(self) -> None:
        if self.prec_start > self.prec_cap:
            raise ValueError(
                f"precision start {self.prec_start} exceeds cap {self.prec_cap}"
            )
        if self.workers < 0:
            raise ValueError("workers must be >= 1")
        if self.fmt not in ("json", "csv", "text"):
            raise ValueError(f"format must be json, csv, or text, got {self.fmt!r}")
        if self.n_lo is not None and self.n_hi is not None and self.n_lo > self.n_hi:
            raise ValueError(f"empty range {self.n_lo}..{self.n_hi}")

    @property
    def effective_workers(self) -> int:
        return self.workers if self.workers >= 1 else (os.cpu_count() or 1)


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _load_config_file(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _resolve(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_cfg:
            return file_cfg[key]
        return default

    cfg = RunConfig()
    n_text = pick(getattr(args, "n", None), "n", None)
    if n_text is not None:
        cfg.n_lo, cfg.n_hi = _parse_n_range(str(n_text))
    index_value = pick(getattr(args, "index", None), "index", None)
    if index_value is not None:
        if isinstance(index_value, str):
            index_value = index_value.replace(",", " ").split()
        cfg.indices = [get_index(name).name for name in index_value]
    direction = pick(getattr(args, "direction", None), "direction", None)
    if direction is not None:
        cfg.direction = Direction.parse(direction).value
    cfg.workers = int(pick(getattr(args, "workers", None), "workers", 0))
    cfg.prec_start = int(pick(
        getattr(args, "precision_start", None), "precision_start", DEFAULT_PREC_START))
    cfg.prec_cap = int(pick(
        getattr(args, "precision_cap", None), "precision_cap", DEFAULT_PREC_CAP))
    cfg.cap = int(pick(getattr(args, "cap", None), "cap", DEFAULT_GENERATOR_CAP))
    cfg.fmt = str(pick(getattr(args, "format", None), "format", "text"))
    cfg.tree_format = str(pick(
        getattr(args, "tree_format", None), "tree_format", "auto"))
    cache = pick(getattr(args, "cache_dir", None), "cache_dir", None)
    if cache is None:
        cache = os.environ.get("ZEXT_CACHE_DIR")
    cfg.cache_dir = str(cache) if cache else None
    cfg.validate()
    return cfg


def _read_tree_file(path: str, fmt: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_tree(text, fmt)


def _emit_reports(reports, fmt: str, out) -> None:
    if fmt == "json":
        json.dump([r.to_json_dict() for r in reports], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in reports:
            writer.writerow(r.csv_row())
    else:
        for r in reports:
            matches = "open" if r.matches_paper is None else str(r.matches_paper).lower()
            out.write(
                f"n={r.n} {r.index} {r.direction}: log value {r.log_value:.12f} "
                f"witnesses={len(r.witnesses)} shapes={','.join(sorted(set(r.witness_shapes)))} "
                f"matches={matches} scanned={r.tree_count_scanned}\n"
            )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig, args) -> int:
    if cfg.n_lo is None or cfg.n_lo != cfg.n_hi:
        raise ValueError("enumerate needs a single --n")
    n = cfg.n_lo
    if not 1 <= n <= cfg.cap:
        raise NOutOfRange(f"need 1 <= n <= {cfg.cap}, got {n}")
    if args.write_cache:
        if not cfg.cache_dir:
            raise ValueError("--write-cache needs --cache-dir or ZEXT_CACHE_DIR")
        path = write_cache_file(n, cfg.cache_dir, cfg.cap)
        count = free_tree_count(n)
        print(f"# n={n} count={count} cache={path}")
        return 0
    count = free_tree_count(n)
    print(f"# n={n} count={count}")
    emitted = 0
    for seq in free_tree_sequences(n, cfg.cap):
        print(" ".join(map(str, seq)))
        emitted += 1
    if emitted != count:
        print(f"enumeration mismatch: emitted {emitted}, oracle {count}",
              file=sys.stderr)
        return 1
    return 0


def cmd_spectrum(cfg: RunConfig, args) -> int:
    t = _read_tree_file(args.tree_file, cfg.tree_format)
    spec = edge_spectrum(t)
    if cfg.fmt == "json":
        payload = {
            "n": spec.n,
            "entries": {f"{i},{j}": c for (i, j), c in sorted(spec.entries.items())},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for (i, j), c in sorted(spec.entries.items()):
            print(f"{i} {j} {c}")
    return 0


def cmd_index(cfg: RunConfig, args) -> int:
    t = _read_tree_file(args.tree_file, cfg.tree_format)
    names = cfg.indices or ["M2"]
    if len(names) != 1:
        raise ValueError("index command takes exactly one --index")
    name = names[0]
    if args.exp:
        value = exp_vdb_index(t, name)
        if cfg.fmt == "json":
            payload = value.to_json_dict()
            payload["log_value"] = approx_log(value)
            print(json.dumps(payload, sort_keys=True))
        else:
            print(f"log e^{name}({t.canonical_key}) = {approx_log(value):.12f}")
    else:
        value = vdb_index(t, name)
        if cfg.fmt == "json":
            print(json.dumps({"index": name, "value": value}))
        else:
            print(f"{name}({t.canonical_key}) = {value}")
    return 0


def cmd_extremal(cfg: RunConfig, args) -> int:
    if cfg.n_lo is None:
        raise ValueError("extremal needs --n")
    if cfg.direction is None:
        raise ValueError("extremal needs --direction min|max")
    names = cfg.indices or ["M2"]
    reports = []
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        for name in names:
            reports.append(extremal(
                n, name, cfg.direction, cfg.effective_workers,
                cfg.prec_start, cfg.prec_cap, cfg.cache_dir, cfg.cap,
            ))
    _emit_reports(reports, cfg.fmt, sys.stdout)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    if cfg.n_lo is None:
        raise ValueError("verify needs --n A..B")
    if not 4 <= cfg.n_lo <= cfg.n_hi <= cfg.cap:
        raise NOutOfRange(
            f"verify supports 4 <= n <= {cfg.cap}, got {cfg.n_lo}..{cfg.n_hi}"
        )
    all_ok = True
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        ok, report = verify_theorem_max(
            n, cfg.effective_workers, cfg.prec_start, cfg.prec_cap,
            cfg.cache_dir, cfg.cap,
        )
        note = ""
        if n == 4:
            note = "  (coincidence: the balanced double star on 4 vertices is the path)"
        if ok:
            print(f"n={n}: ok  unique maximizer {report.witnesses[0]!r} "
                  f"log value {report.log_value:.12f}{note}")
        else:
            all_ok = False
            from .enumeration import balanced_double_star

            expected = balanced_double_star(n).canonical_key
            print(f"n={n}: FAIL  expected witness set [{expected!r}], "
                  f"got {report.witnesses!r}")
    return 0 if all_ok else 1


def cmd_table1(cfg: RunConfig, args) -> int:
    if cfg.n_lo is None:
        raise ValueError("table1 needs --n A..B")
    reports = table1_report(
        cfg.n_lo, cfg.n_hi, cfg.effective_workers, cfg.prec_start,
        cfg.prec_cap, cfg.cache_dir, cfg.cap, cfg.indices,
    )
    _emit_reports(reports, cfg.fmt, sys.stdout)
    bad = [r for r in reports if r.matches_paper is False]
    if bad:
        for r in bad:
            print(f"mismatch: n={r.n} {r.index} {r.direction} "
                  f"witnesses={r.witnesses}", file=sys.stderr)
        return 1
    return 0


def cmd_hillclimb(cfg: RunConfig, args) -> int:
    t = _read_tree_file(args.tree_file, cfg.tree_format)
    receipts = hill_climb(t)
    if cfg.fmt == "json":
        print(json.dumps([r.to_json_dict() for r in receipts], indent=2))
    else:
        cur_key = t.canonical_key
        print(f"start: {cur_key}")
        for i, r in enumerate(receipts, 1):
            print(f"step {i}: {r.move} -> {r.after.canonical_key} "
                  f"[{r.ordering.value}]")
        final = receipts[-1].after if receipts else t
        print(f"final: {final.canonical_key} "
              f"(log value {approx_log(exp_vdb_index(final, 'M2')):.12f})")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=None,
                   help="worker count (default: available parallelism)")
    p.add_argument("--precision-start", type=int, default=None,
                   help="starting interval precision in bits (default 128)")
    p.add_argument("--precision-cap", type=int, default=None,
                   help="precision cap in bits (default 65536)")
    p.add_argument("--cache-dir", default=None,
                   help="tree cache directory (or ZEXT_CACHE_DIR)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--cap", type=int, default=None,
                   help=f"generator cap on n (default {DEFAULT_GENERATOR_CAP})")
    p.add_argument("--config", default=None, help="TOML config file")
    p.add_argument("--tree-format", choices=("auto", "edges", "levels", "prufer"),
                   default=None, help="format of tree file arguments")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zext",
        description="Exact extremal search for exponential degree-based tree indices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all trees on n vertices")
    p.add_argument("--n", default=None)
    p.add_argument("--write-cache", action="store_true",
                   help="write the cache file instead of printing sequences")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("spectrum", help="edge-degree spectrum of a tree file")
    p.add_argument("tree_file")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("index", help="index value of a tree file")
    p.add_argument("tree_file")
    p.add_argument("--index", default=None)
    p.add_argument("--exp", action="store_true", help="exponential variant")
    _add_common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("extremal", help="extremal trees for an index")
    p.add_argument("--n", default=None)
    p.add_argument("--index", default=None)
    p.add_argument("--direction", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", help="check the unique-maximizer result over a range")
    p.add_argument("--n", default=None, help="range A..B")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", help="full extremal grid over all indices")
    p.add_argument("--n", default=None, help="range A..B")
    p.add_argument("--index", default=None, help="restrict to these indices")
    _add_common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("hillclimb", help="improving-move chain from a tree file")
    p.add_argument("tree_file")
    _add_common(p)
    p.set_defaults(func=cmd_hillclimb)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
    except _USAGE_ERRORS as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(cfg, args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZextError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
