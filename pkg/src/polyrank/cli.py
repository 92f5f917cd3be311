"""Command-line entry point ``polyrank``.

Exit codes: 0 success or valid certificate, 1 invalid certificate,
2 usage error, 3 a search hit its node or time budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from . import bounds as B
from .boolfact import BooleanFactorization, trivial_padding, verify_boolean
from .cyclesearch import default_budget, find_cycle, hom_boolean_rank
from .johnson import cycle_to_factorization
from .psdmin import (
    GaussianRootCertificate,
    hexagon_certificate,
    psd_minimality_report,
    real_root_certificate,
    scan_trinomial_obstructions,
    symbolic_minors,
    verify_hadamard_certificate,
)
from .slack import EXACT_SIZES, regular_gon_slack, symbolic_slack

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_ABORT = 0, 1, 2, 3

log = logging.getLogger("polyrank")


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    tool_version: str
    wall_time: float = 0.0
    verdicts: list = field(default_factory=list)
    certificates: list[str] = field(default_factory=list)

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2) + "\n")


# --- output --------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def render(rows: list[dict], fmt: str, doc=None) -> str:
    """JSON prints ``doc`` (default: rows); CSV and Markdown print ``rows``."""
    if fmt == "json":
        return json.dumps(rows if doc is None else doc, indent=2)
    cols: list[str] = []
    for r in rows:
        for c in r:
            if c not in cols:
                cols.append(c)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in cols) + " |")
    return "\n".join(lines)


def _save_bool_cert(fact: BooleanFactorization, path: str, homogeneous: bool = True) -> str:
    """Write a certificate, read it back and re-verify before reporting it."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    fact.save(p)
    back = BooleanFactorization.load(p)
    bad = verify_boolean(back, homogeneous=homogeneous)
    if bad or back != fact:
        p.unlink()
        raise RuntimeError(f"certificate {p} failed re-verification: {bad[:3]}")
    return str(p)


# --- subcommands -------------------------------------------------------------------


def _parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def cmd_bounds(args, man: RunManifest):
    if args.asymptotic:
        if args.powers:
            lo, sep, hi = args.powers.partition("..")
            try:
                exps = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
            except ValueError:
                raise UsageError(f"bad --powers {args.powers!r}, expected a..b") from None
        else:
            exps = args.exponents or list(range(10, 21, 2))
        if not exps or min(exps) < 2:
            raise UsageError("exponents must be at least 2")
        rows = [
            {"n": f"2^{e}", "t": t, "ratio": round(r, 6)}
            for e, (n, t, r) in zip(exps, B.asymptotic_report([2**e for e in exps]))
        ]
        return rows, None, EXIT_OK
    if not args.n:
        raise UsageError("bounds needs --n or --asymptotic")
    ns = [x for spec in args.n for x in _parse_range(spec)]
    if args.all:
        ns = list(range(3, max(ns) + 1))
    rows = [B.bound_report(n).to_dict() for n in ns]
    doc = rows[0] if len(rows) == 1 else rows
    return rows, doc, EXIT_OK


def cmd_slack(args, man):
    n = args.n
    if args.symbolic:
        S = symbolic_slack(n, normalized=args.normalized)
        if args.layout == "printed":
            S = S.printed_layout()
        rows = [{f"c{j + 1}": e for j, e in enumerate(r)} for r in S.entries]
        return rows, S.to_json(), EXIT_OK
    S = regular_gon_slack(n, exact=args.exact)
    entries = S.printed_layout() if args.layout == "printed" else S.entries
    fmt = (lambda x: str(x)) if S.exact else (lambda x: round(float(x), 12))
    rows = [{f"c{j + 1}": fmt(x) for j, x in enumerate(r)} for r in entries]
    doc = {"n": n, "field": S.field, "rank": S.rank(), "entries": [[fmt(x) for x in r] for r in entries]}
    return rows, doc, EXIT_OK


def _progress(nodes: int, elapsed: float) -> None:
    log.info("%d nodes, %.1f s", nodes, elapsed)


def cmd_cycles(args, man):
    out = find_cycle(args.k, args.n, args.budget, args.time_limit, args.jobs, progress=_progress)
    doc = out.to_dict()
    if out.found and args.emit:
        path = _save_bool_cert(cycle_to_factorization(out.cycle), args.emit)
        man.certificates.append(path)
        doc["certificate"] = path
    man.verdicts.append(doc)
    row = {k: v for k, v in doc.items() if k != "cycle"}
    return [row], doc, EXIT_ABORT if out.verdict == "aborted" else EXIT_OK


def _rank_row(res) -> dict:
    aborted = any(o.verdict == "aborted" for o in res.outcomes)
    rank = str(res.lower) if res.exact else f"{res.lower}-{res.upper}"
    return {"n": res.n, "rank": rank, "exact": res.exact, "aborted": aborted}


def cmd_boolrank(args, man):
    res = hom_boolean_rank(args.n, args.kmax, args.budget, args.time_limit, args.jobs)
    doc = res.to_dict()
    if args.emit and res.certificate is not None:
        path = _save_bool_cert(res.certificate, args.emit)
        man.certificates.append(path)
        doc["certificate"] = path
    man.verdicts.append({k: v for k, v in doc.items() if k != "searches"})
    aborted = any(o.verdict == "aborted" for o in res.outcomes)
    return [_rank_row(res)], doc, EXIT_ABORT if aborted else EXIT_OK


def table1(kmax: int, budget=None, time_limit=None, jobs: int = 1, cert_dir=None):
    """Ranks for n = 3, 4, ... until no cycle with k <= kmax is found.

    Returns (per-n results, grouped rows, stopping result).
    """
    results = []
    n = 3
    while True:
        res = hom_boolean_rank(n, kmax, budget, time_limit, jobs)
        if res.upper > kmax:
            return results, _group(results), res
        if cert_dir is not None:
            _save_bool_cert(res.certificate, Path(cert_dir) / f"n{n}_k{res.upper}.json")
        results.append(res)
        n += 1


def _group(results) -> list[dict]:
    rows: list[dict] = []
    for r in results:
        rank = str(r.upper) if r.exact else f"{r.upper}*"
        if rows and rows[-1]["rank"] == rank and rows[-1]["_hi"] == r.n - 1:
            rows[-1]["_hi"] = r.n
        else:
            rows.append({"_lo": r.n, "_hi": r.n, "rank": rank})
    out = []
    for row in rows:
        lo, hi = row["_lo"], row["_hi"]
        out.append({"n": str(lo) if lo == hi else f"{lo}-{hi}", "hom_boolean_rank": row["rank"]})
    return out


def cmd_table1(args, man):
    cert_dir = Path(args.out_dir) / "certificates"
    results, rows, stop = table1(args.kmax, args.budget, args.time_limit, args.jobs, cert_dir)
    for r in results:
        man.certificates.append(str(cert_dir / f"n{r.n}_k{r.upper}.json"))
        man.verdicts.append({"n": r.n, "lower": r.lower, "upper": r.upper, "exact": r.exact})
    stop_row = _rank_row(stop)
    man.verdicts.append({"stop": stop_row})
    doc = {"kmax": args.kmax, "rows": rows, "per_n": [_rank_row(r) for r in results], "stopped_at": stop_row}
    md = render(rows, "md") + "\n\n" + (
        f"Stopped at n={stop.n}: no factorizing cycle with k <= {args.kmax}"
        + (" (a search hit its budget)" if stop_row["aborted"] else "")
        + ". A star marks an upper bound whose minimality was not proved.\n"
    )
    Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    (Path(args.out_dir) / "table1.md").write_text(md)
    aborted = stop_row["aborted"] or any(not r.exact for r in results)
    code = EXIT_ABORT if aborted else EXIT_OK
    if args.format == "md":
        return None, md.rstrip("\n"), code
    return rows, doc, code


def cmd_pad(args, man):
    path = _save_bool_cert(trivial_padding(args.n), args.out)
    man.certificates.append(path)
    return [{"n": args.n, "k": 2 * args.n - 3, "certificate": path}], None, EXIT_OK


def cmd_verify_bool(args, man):
    try:
        fact = BooleanFactorization.load(args.cert)
        bad = verify_boolean(fact, homogeneous=args.homogeneous)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read certificate: {e}") from None
    doc = {
        "n": fact.n,
        "k": fact.k,
        "homogeneous": args.homogeneous,
        "valid": not bad,
        "violations": [v.to_dict() for v in bad],
    }
    man.verdicts.append({"valid": not bad})
    row = {k: v for k, v in doc.items() if k != "violations"}
    row["violations"] = len(bad)
    return [row], doc, EXIT_OK if not bad else EXIT_INVALID


def _load_psd_cert(spec: str, n: int) -> GaussianRootCertificate:
    if spec == "builtin":
        if n == 6:
            return hexagon_certificate()
        if n in (3, 4):
            return real_root_certificate(n)
        raise UsageError(f"no builtin certificate for n={n}")
    try:
        return GaussianRootCertificate.load(spec)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read certificate: {e}") from None


def cmd_verify_psd(args, man):
    cert = _load_psd_cert(args.cert, args.n)
    if cert.n != args.n:
        raise UsageError(f"certificate is for n={cert.n}, not n={args.n}")
    if args.n not in EXACT_SIZES:
        raise UsageError(f"exact slack matrices exist for n in {EXACT_SIZES}")
    try:
        check = verify_hadamard_certificate(cert, regular_gon_slack(args.n, exact=True))
    except ValueError as e:
        raise UsageError(str(e)) from None
    doc = {"n": args.n, **check.to_dict()}
    if args.emit and check.valid:
        cert.save(args.emit)
        again = verify_hadamard_certificate(GaussianRootCertificate.load(args.emit), regular_gon_slack(args.n, exact=True))
        if not again.valid:
            raise RuntimeError("emitted certificate failed re-verification")
        man.certificates.append(args.emit)
        doc["certificate"] = args.emit
    man.verdicts.append({"valid": check.valid, "rank": check.rank})
    row = {"n": args.n, "valid": check.valid, "rank": check.rank, "reason": check.reason}
    return [row], doc, EXIT_OK if check.valid else EXIT_INVALID


def cmd_psd_obstruct(args, man):
    n = args.n
    if not args.report:
        S = symbolic_slack(n, normalized=True).printed_layout()
        st = scan_trinomial_obstructions(symbolic_minors(S, 4), S.var_count)
        doc = {"n": n, **st.to_dict()}
        rows = [{"step": i + 1, **d.to_dict()} for i, d in enumerate(st.chain)]
        man.verdicts.append({"verdict": st.verdict})
        return rows, doc, EXIT_OK
    rep = psd_minimality_report(n)
    man.verdicts.append({"verdict": rep.verdict})
    return [{"n": n, "verdict": rep.verdict, "lower_bound": rep.lower_bound}], rep.to_dict(), EXIT_OK


# --- parser ------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "md"], default="json")
    common.add_argument("--manifest", help="write a JSON run manifest to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=_positive, default=None, help="node budget (default POLYRANK_BUDGET or 1e9)")
    search.add_argument("--time-limit", type=float, default=None, help="seconds per search")
    search.add_argument("--jobs", type=_positive, default=1)

    p = argparse.ArgumentParser(prog="polyrank", description="Rank bounds and certificates for polygons.")
    p.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", parents=[common], help="lower bounds S, S+, T")
    b.add_argument("--n", action="append", help="n, a range a-b, or a comma list; repeatable")
    b.add_argument("--asymptotic", action="store_true", help="T(2^e)/log2(2^e) table")
    b.add_argument("--exponents", type=int, nargs="+")
    b.add_argument("--powers", help="exponent range a..b for --asymptotic (every exponent)")
    b.add_argument("--all", action="store_true", help="report every n from 3 up to the largest --n")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("slack", parents=[common], help="slack matrix of the regular n-gon")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--normalized", action="store_true")
    s.add_argument("--layout", choices=["canonical", "printed"], default="canonical")
    s.set_defaults(func=cmd_slack)

    c = sub.add_parser("cycles", parents=[common, search], help="search a factorizing cycle")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--emit", help="certificate path for a found cycle")
    c.set_defaults(func=cmd_cycles)

    r = sub.add_parser("boolrank", parents=[common, search], help="homogeneous boolean rank")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--kmax", type=int, default=None)
    r.add_argument("--emit", help="certificate path")
    r.set_defaults(func=cmd_boolrank)

    t = sub.add_parser("table1", parents=[common, search], help="rank table for all n reachable with k <= kmax")
    t.add_argument("--kmax", type=int, required=True)
    t.add_argument("--out-dir", default="table1_out")
    t.set_defaults(func=cmd_table1)

    pad = sub.add_parser("pad", parents=[common], help="write the size 2n-3 padding certificate")
    pad.add_argument("--n", type=int, required=True)
    pad.add_argument("--out", required=True)
    pad.set_defaults(func=cmd_pad)

    v = sub.add_parser("verify", help="verify a certificate file")
    vs = v.add_subparsers(dest="kind", required=True)
    vb = vs.add_parser("bool", parents=[common])
    vb.add_argument("--cert", required=True)
    vb.add_argument("--homogeneous", action="store_true")
    vb.set_defaults(func=cmd_verify_bool)
    vp = vs.add_parser("psd", parents=[common])
    vp.add_argument("--n", type=int, required=True)
    vp.add_argument("--cert", required=True, help="'builtin' or a JSON file")
    vp.add_argument("--emit")
    vp.set_defaults(func=cmd_verify_psd)

    q = sub.add_parser("psd", help="complex psd-minimality tools")
    qs = q.add_subparsers(dest="kind", required=True)
    qo = qs.add_parser("obstruct", parents=[common])
    qo.add_argument("--n", type=int, required=True)
    qo.add_argument("--report", action="store_true", help="full minimality report instead of the derivation")
    qo.set_defaults(func=cmd_psd_obstruct)
    qv = qs.add_parser("verify-cert", parents=[common])
    qv.add_argument("--n", type=int, required=True)
    qv.add_argument("--cert", default="builtin")
    qv.add_argument("--emit")
    qv.set_defaults(func=cmd_verify_psd)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest", "verbose")}
    if "budget" in params and params["budget"] is None:
        try:
            params["budget"] = default_budget()
        except ValueError as e:
            print(f"polyrank: error: {e}", file=sys.stderr)
            return EXIT_USAGE
    if args.command == "table1" and not args.manifest:
        args.manifest = str(Path(args.out_dir) / "manifest.json")
    man = RunManifest(args.command, params, tool_version())
    t0 = time.monotonic()
    try:
        rows, doc, code = args.func(args, man)
    except (UsageError, ValueError) as e:
        print(f"polyrank: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    man.wall_time = round(time.monotonic() - t0, 3)
    if rows is None:
        print(doc)
    else:
        print(render(rows, args.format, doc))
    if args.manifest:
        man.write(args.manifest)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
