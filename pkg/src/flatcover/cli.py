"""Command-line entry point: ``flatcover <subcommand> ...`` or ``python -m flatcover``.

Exit codes: 0 success, 1 usage or failed check, 2 I/O error, 3 invalid
certificate, matroid or input set, 4 computation too large.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import bits, bounds, census, codec, johnson, kw
from .errors import FlatCoverError, MatroidError, PreconditionViolated, SideConditionUnmet, TooLarge
from .matroid import read_matroid, write_matroid
from .verify import DEFAULT_SEED, run_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVALID = 3
EXIT_TOO_LARGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(f"{self.prog}: error: {message}")


def _out(text: str) -> None:
    sys.stdout.write(text)


# census


def cmd_census(args: argparse.Namespace) -> int:
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    ranks = [args.rank] if args.rank is not None else list(range(n + 1))
    if any(not 0 <= r <= n for r in ranks):
        raise UsageError("--rank must lie in 0..n")
    if n > census.MAX_CENSUS_N:
        raise TooLarge(f"census capped at n <= {census.MAX_CENSUS_N}")
    classes = args.classes if args.classes is not None else n <= 6
    lines = [f"{'n':>3} {'r':>3} {'m_nr':>10} {'s_nr':>10} {'classes':>8}"]
    tot_m = tot_s = tot_c = 0
    emit_dir = Path(args.emit_matroids) if args.emit_matroids else None
    if emit_dir is not None:
        emit_dir.mkdir(parents=True, exist_ok=True)
    counts: dict[int, int] = {}
    for r in ranks:
        ms = census.enumerate_matroids(n, r, jobs=args.jobs)
        counts[r] = len(ms)
        s = sum(1 for m in ms if m.is_sparse_paving())
        c = census.count_isomorphism_classes(ms, n) if classes else None
        tot_m, tot_s = tot_m + len(ms), tot_s + s
        tot_c = tot_c + c if c is not None else tot_c
        lines.append(f"{n:>3} {r:>3} {len(ms):>10} {s:>10} {c if c is not None else '-':>8}")
        if emit_dir is not None:
            for i, m in enumerate(ms):
                write_matroid(m, emit_dir / f"n{n}_r{r}_{i:06d}.matroid")
    if args.rank is None:
        lines.append(f"{'total':>7} {tot_m:>10} {tot_s:>10} {tot_c if classes else '-':>8}")
        if any(counts[r] != counts[n - r] for r in ranks):
            lines.append("duality check FAILED")
            _out("\n".join(lines) + "\n")
            return EXIT_USAGE
    _out("\n".join(lines) + "\n")
    return EXIT_OK


# johnson


def _vertex_lines(masks) -> str:
    return "".join(bits.format_set(x) + "\n" for x in masks)


def cmd_johnson(args: argparse.Namespace) -> int:
    n, r = args.n, args.r
    if not 0 < r < n <= bits.MAX_N:
        raise UsageError("need 0 < r < n <= 63")
    g = johnson.johnson(n, r)
    if args.what == "info":
        p = g.params()
        _out(
            f"J({n},{r})\n"
            f"N={p.N} d={p.d} lambda={p.lam} alpha={p.alpha}\n"
            f"sigma={p.sigma:.12g} ceil_sigma_N={p.ceil_sigma_n} floor_alpha_N={p.floor_alpha_n}\n"
        )
    elif args.what == "gs-stable":
        cls = johnson.graham_sloane_stable_set(n, r)
        colour = johnson.graham_sloane_color(n, cls[0])
        _out(f"# colour {colour}, size {len(cls)}\n" + _vertex_lines(cls))
    elif args.what == "dominating":
        dom = johnson.greedy_dominating_set(g)
        bound = johnson.dominating_set_bound(g.N, g.d)
        _out(f"# size {len(dom)}, bound {bound:.6f}\n" + _vertex_lines(dom))
    elif args.what == "max-stable":
        _out(f"{johnson.brute_max_stable_set(g)}\n")
    elif args.what == "count-stable":
        _out(f"{johnson.brute_count_stable_sets(g)}\n")
    return EXIT_OK


# kw


def _read_vertex_file(path: str, n: int, r: int) -> list[int]:
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        try:
            x = bits.parse_set(ln)
        except ValueError as exc:
            raise PreconditionViolated(f"bad vertex line {ln!r}: {exc}") from exc
        if x >> n or bits.popcount(x) != r:
            raise PreconditionViolated(f"{ln!r} is not an {r}-subset of 0..{n - 1}")
        out.append(x)
    return out


def cmd_kw(args: argparse.Namespace) -> int:
    n, r = args.n, args.r
    if not 0 < r < n <= bits.MAX_N:
        raise UsageError("need 0 < r < n <= 63")
    g = johnson.johnson(n, r)
    k = _read_vertex_file(args.k, n, r)
    enc = kw.kw_encode(g, k)
    lines = [f"# J({n},{r}) |K|={len(set(k))} |S|={len(enc.selected)} |A|={len(enc.available)}"]
    lines += ["S " + bits.format_set(x) for x in enc.selected]
    lines += ["A " + bits.format_set(x) for x in sorted(enc.available)]
    problems = kw.audit(g, k, enc)
    lines += ["audit: ok"] if not problems else [f"audit: {p}" for p in problems]
    _out("\n".join(lines) + "\n")
    return EXIT_OK if not problems else EXIT_INVALID


# encode / decode


def cmd_encode(args: argparse.Namespace) -> int:
    m = read_matroid(args.inp)
    e = codec.encode(m, args.method)
    codec.write_encoded(e, args.out)
    _out(
        f"flats={len(e.cover)} residual={len(e.residual)} dualized={int(e.dualized)} "
        f"certificate_bits={codec.certificate_bits(e)} listing_bits={codec.listing_bits(m)}\n"
    )
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    e = codec.read_encoded(args.inp)
    m = codec.decode(e)
    write_matroid(m, args.out)
    _out(f"n={m.n} r={m.r} bases={len(m.bases)}\n")
    return EXIT_OK


# bounds


def cmd_bounds(args: argparse.Namespace) -> int:
    if not 2 <= args.n_max <= bounds.MAX_BOUNDS_N:
        raise UsageError(f"--n-max must lie in 2..{bounds.MAX_BOUNDS_N}")
    table = {}
    for n in range(2, min(args.n_max, args.census_max) + 1):
        res = census.count_matroids(n, isomorphism=False)
        table[n] = (res.total_matroids, res.total_sparse_paving)
    rows = bounds.headline_table(args.n_max, table)
    if args.json:
        _out(bounds.table_json(rows))
    else:
        _out(bounds.format_table(rows))
    bad = [row.n for row in rows if row.sandwich and not all(row.sandwich.values())]
    return EXIT_OK if not bad else EXIT_USAGE


# verify


def cmd_verify(args: argparse.Namespace) -> int:
    ok = run_all(args.level, args.seed, emit=lambda s: _out(s + "\n"))
    return EXIT_OK if ok else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flatcover", description="Matroid flat covers, Johnson graph encodings and counting bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("census", help="exhaustive matroid counts")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--rank", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--emit-matroids", metavar="DIR")
    c.add_argument("--classes", action=argparse.BooleanOptionalAction, default=None,
                   help="isomorphism-class column (default on for n <= 6)")
    c.set_defaults(func=cmd_census)

    j = sub.add_parser("johnson", help="Johnson graph structure")
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--r", type=int, required=True)
    j.add_argument("what", choices=["info", "gs-stable", "dominating", "max-stable", "count-stable"])
    j.set_defaults(func=cmd_johnson)

    k = sub.add_parser("kw", help="encode a vertex set of J(n,r)")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--r", type=int, required=True)
    k.add_argument("--k", required=True, metavar="FILE")
    k.set_defaults(func=cmd_kw)

    e = sub.add_parser("encode", help="matroid file -> certificate")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--method", choices=codec.METHODS, default="kw")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="certificate -> matroid file")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_decode)

    b = sub.add_parser("bounds", help="finite-n bound table")
    b.add_argument("--n-max", type=int, required=True)
    b.add_argument("--json", action="store_true")
    b.add_argument("--census-max", type=int, default=7, help="largest n compared against the census")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--level", choices=["quick", "full"], default="quick")
    v.add_argument("--seed", type=int, default=None)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", 0) is None:
            args.seed = DEFAULT_SEED
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"flatcover: {exc}", file=sys.stderr)
        return EXIT_IO
    except (MatroidError, PreconditionViolated, ValueError) as exc:
        print(f"flatcover: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TooLarge as exc:
        print(f"flatcover: too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (SideConditionUnmet, FlatCoverError) as exc:
        print(f"flatcover: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
