"""Command-line front end.

Exit status: 0 when every check passes, 1 on any FAIL or REFUTED, 2 when a
budget cut a report short, 64 on usage errors (nothing is written then).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
from pathlib import Path

from . import __version__
from .cache import ResultCache
from .decomp import classify
from .errors import BudgetExceeded, GrassError
from .extalg import ExteriorVector, exterior_subspace
from .gf import FieldSpec, field_from_q
from .grasscode import (
    GrassParams,
    build_code,
    conjecture_scan,
    hierarchy_entry,
    verify_closed_forms,
)
from .lincode import Codeword, WeightReport, delta_r, dump_generator, parse_generator, weight_report
from .search import DEFAULT_BUDGET_CODEWORDS, DEFAULT_BUDGET_SUBSPACES, SearchConfig

EXIT_OK, EXIT_FAIL, EXIT_PARTIAL, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """'1..3', '5' or '1,3,6..7' -> sorted distinct integers."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                a, b = part.split("..", 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise UsageError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError as exc:
            raise UsageError(f"bad range {text!r}") from exc
    return sorted(out)


def _positive(text: str) -> int:
    try:
        v = int(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget-subspaces", type=_positive, default=DEFAULT_BUDGET_SUBSPACES)
    p.add_argument("--budget-codewords", type=_positive, default=DEFAULT_BUDGET_CODEWORDS)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--cache-dir", default=None, help="defaults to $GRASSWT_CACHE or ~/.cache/grasswt")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-prune", action="store_true", help="plain exhaustive search (oracle runs)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return p


def _grass(p: argparse.ArgumentParser, *, need_l: bool = True):
    if need_l:
        p.add_argument("--l", type=int, required=True, dest="ell")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grasswt", description="Weight hierarchies of Grassmann codes.")
    parser.add_argument("--version", action="version", version=f"grasswt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("classify", parents=[common], help="decide whether a subspace is decomposable")
    _grass(p)
    p.add_argument("--basis", help="rows of coordinates separated by ';', entries by spaces")
    p.add_argument("--input", help="JSON file with a 'basis' list of coordinate rows")

    code = sub.add_parser("code", help="build codes and compute their weights")
    csub = code.add_subparsers(dest="code_command", required=True, parser_class=_Parser)
    p = csub.add_parser("build", parents=[common], help="write the generator matrix of C(l, m)")
    _grass(p)
    p = csub.add_parser("weights", parents=[common], help="hierarchy, spectrum and bounds")
    p.add_argument("--l", type=int, dest="ell")
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--code", help="generator matrix file instead of --l/--m/--q")
    p.add_argument("--r", default=None, help="hierarchy indices, e.g. 1..3")
    p.add_argument("--delta", default=None, help="indices r for Delta_r")
    p.add_argument("--side", choices=("auto", "primal", "dual"), default="auto")

    p = sub.add_parser("verify", parents=[common], help="check closed forms of the hierarchy")
    _grass(p)
    p.add_argument("--r", default=None)
    p.add_argument("--side", choices=("auto", "primal", "dual"), default="auto")

    p = sub.add_parser("conjecture", parents=[common], help="scan the conjectured middle of C(2, m)")
    _grass(p, need_l=False)
    p.add_argument("--l", type=int, dest="ell", default=2, choices=(2,))
    p.add_argument("--r", default=None)

    p = sub.add_parser("cache", help="inspect or clear the result cache")
    p.add_argument("action", choices=("list", "purge"))
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--format", choices=("json", "md"), default="json")
    return parser


def _config(args) -> SearchConfig:
    return SearchConfig(budget_subspaces=args.budget_subspaces, budget_codewords=args.budget_codewords,
                        prune=not args.no_prune, workers=args.workers)


def _cache(args):
    return None if getattr(args, "no_cache", False) else ResultCache(args.cache_dir)


def _field(q: int) -> FieldSpec:
    try:
        return field_from_q(q)
    except (GrassError, ValueError) as exc:
        raise UsageError(f"--q {q}: {exc}") from exc


def _check_grass(ell: int, m: int, q: int) -> FieldSpec:
    if m is None or q is None or ell is None:
        raise UsageError("need --l, --m and --q (or --code)")
    if not 1 <= ell < m:
        raise UsageError(f"need 1 <= l < m, got l={ell}, m={m}")
    return _field(q)


def provenance(args, command: str) -> dict:
    skip = {"func", "out", "format", "cache_dir", "no_cache", "command", "code_command",
            "budget_subspaces", "budget_codewords", "seed"}
    config = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {
        "tool": "grasswt",
        "version": __version__,
        "command": command,
        "config": config,
        "seed": args.seed,
        "budgets": {"subspaces": args.budget_subspaces, "codewords": args.budget_codewords},
    }


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _md_table(header: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join("" if v is None else str(v) for v in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


_CHECK_COLS = ["name", "r", "expected", "computed", "status", "runtime_ms"]


def render_checks(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _json(doc)
    rows = [[c.get(k) for k in _CHECK_COLS] for c in doc["checks"]]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_CHECK_COLS)
        w.writerows(rows)
        return buf.getvalue()
    params = ", ".join(f"{k}={v}" for k, v in doc["params"].items() if not isinstance(v, (dict, list)))
    text = f"**{doc['provenance']['command']}** ({params})\n\n" + _md_table(_CHECK_COLS, rows)
    for note in doc.get("notes", []):
        text += f"\n{note}\n"
    return text


def render_weights(doc: dict, rep: WeightReport, fmt: str) -> str:
    if fmt == "json":
        return _json(doc)
    if fmt == "csv":
        return rep.to_csv()
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    return _md_table(rows[0], rows[1:])


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _status(checks: list[dict]) -> int:
    states = {c["status"] for c in checks}
    if states & {"FAIL", "REFUTED"}:
        return EXIT_FAIL
    if states & {"SKIPPED", "UNRESOLVED"}:
        return EXIT_PARTIAL
    return EXIT_OK


def _parse_rows(text: str, F: FieldSpec, k: int) -> list[tuple[int, ...]]:
    rows = []
    for chunk in text.split(";"):
        toks = chunk.split()
        if not toks:
            continue
        if len(toks) != k:
            raise UsageError(f"basis row has {len(toks)} entries, expected {k}")
        try:
            rows.append(tuple(F.parse(t) for t in toks))
        except (GrassError, ValueError) as exc:
            raise UsageError(f"bad field element in {chunk.strip()!r}: {exc}") from exc
    return rows


def cmd_classify(args) -> int:
    F = _check_grass(args.ell, args.m, args.q)
    k = GrassParams.of(args.ell, args.m, F.q).k
    if bool(args.basis) == bool(args.input):
        raise UsageError("give exactly one of --basis or --input")
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
        rows = [tuple(F.parse(t) for t in row) for row in data["basis"]]
        if any(len(r) != k for r in rows):
            raise UsageError(f"basis rows must have {k} entries")
    else:
        rows = _parse_rows(args.basis, F, k)
    E = exterior_subspace([ExteriorVector(F, args.m, args.ell, r) for r in rows], F, args.ell, args.m)
    w = classify(E, rng=random.Random(args.seed))
    doc = {"provenance": provenance(args, "classify"), "dim": E.dim, "witness": w.to_json(F)}
    if args.format == "json":
        text = _json(doc)
    else:
        row = [E.dim, w.kind.value, w.exact]
        text = (_md_table if args.format == "md" else _csv_rows)(["dim", "kind", "exact"], [row])
    _write(text, args.out)
    return EXIT_OK


def _csv_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_code_build(args) -> int:
    F = _check_grass(args.ell, args.m, args.q)
    C = build_code(args.ell, args.m, F, _config(args))
    _write(dump_generator(C), args.out)
    return EXIT_OK


def cmd_code_weights(args) -> int:
    config = _config(args)
    if args.code:
        if args.ell is not None or args.m is not None:
            raise UsageError("--code excludes --l/--m/--q")
        try:
            C = parse_generator(Path(args.code).read_text())
        except (OSError, ValueError, GrassError) as exc:
            raise UsageError(f"cannot load {args.code}: {exc}") from exc
        grass = False
    else:
        F = _check_grass(args.ell, args.m, args.q)
        C = build_code(args.ell, args.m, F, config)
        grass = True
    rs = parse_range(args.r) if args.r else list(range(1, C.k + 1))
    deltas = parse_range(args.delta) if args.delta else []
    if any(not 1 <= r <= C.k for r in rs + deltas):
        raise UsageError(f"indices must lie in 1..{C.k}")
    if grass:
        rep = weight_report(C, [], config=config)
        cache = _cache(args)
        for r in rs:
            try:
                e = hierarchy_entry(C, r, side=args.side, config=config, cache=cache)
            except BudgetExceeded as exc:
                rep.skipped[r] = str(exc)
                continue
            rep.hierarchy[r] = e.value
            rep.witnesses[r] = [Codeword.from_coords(c) for c in e.witness]
        for r in deltas:
            try:
                rep.delta_r[r] = delta_r(C, r, config)
            except BudgetExceeded as exc:
                rep.skipped.setdefault(r, str(exc))
    else:
        rep = weight_report(C, rs, deltas=deltas, config=config)
    doc = {"provenance": provenance(args, "code weights"), **rep.to_json()}
    _write(render_weights(doc, rep, args.format), args.out)
    return EXIT_PARTIAL if rep.partial else EXIT_OK


def cmd_verify(args) -> int:
    F = _check_grass(args.ell, args.m, args.q)
    rs = parse_range(args.r) if args.r else None
    rep = verify_closed_forms(args.ell, args.m, F, rs=rs, side=args.side, config=_config(args),
                              cache=_cache(args))
    doc = {"provenance": provenance(args, "verify"), **rep.to_json()}
    _write(render_checks(doc, args.format), args.out)
    return _status(doc["checks"])


def cmd_conjecture(args) -> int:
    F = _check_grass(2, args.m, args.q)
    if args.m <= 4:
        raise UsageError("the conjecture scan needs m > 4")
    rs = parse_range(args.r) if args.r else None
    p = GrassParams.of(2, args.m, F.q)
    if rs and any(not p.mu + 1 <= r <= p.k - 1 for r in rs):
        raise UsageError(f"--r must lie in {p.mu + 1}..{p.k - 1}")
    rep = conjecture_scan(args.m, F, rs, config=_config(args), cache=_cache(args))
    doc = {"provenance": provenance(args, "conjecture"), **rep.to_json()}
    _write(render_checks(doc, args.format), args.out)
    return _status(doc["checks"])


def cmd_cache(args) -> int:
    cache = ResultCache(args.cache_dir)
    if args.action == "purge":
        n = cache.purge()
        print(_json({"purged": n, "dir": str(cache.root)}), end="")
        return EXIT_OK
    entries = cache.entries()
    if args.format == "md":
        print(_md_table(["id", "key", "bytes"],
                        [[e["id"][:12], json.dumps(e["key"], sort_keys=True), e["bytes"]] for e in entries]), end="")
    else:
        print(_json({"dir": str(cache.root), "entries": entries}), end="")
    return EXIT_OK


_COMMANDS = {
    ("classify", None): cmd_classify,
    ("code", "build"): cmd_code_build,
    ("code", "weights"): cmd_code_weights,
    ("verify", None): cmd_verify,
    ("conjecture", None): cmd_conjecture,
    ("cache", None): cmd_cache,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = _COMMANDS[(args.command, getattr(args, "code_command", None))]
    try:
        return fn(args)
    except UsageError as exc:
        print(f"grasswt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"grasswt: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
