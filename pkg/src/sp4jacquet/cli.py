"""Command-line front end: verification suites, table dumps and orbit data,
with deterministic JSON/CSV/text reports.

Exit codes: 0 every selected check passed, 1 a verification failed,
2 invalid configuration.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .ff import SUPPORTED_Q
from .chars import (
    gl2_irr_table,
    l_irr_table,
    o2_irr_table,
    sl2_irr_table,
    t2_irr_table,
    verify_orthogonality,
)
from .cosets import (
    GroupHandle,
    decomposability_suite,
    double_coset_reps,
    same_double_coset,
    verify_stabilizer,
)
from .jacquet import PsiSpec
from .matgrp import identity, mmul, named_subgroup, sigma1, sigma2, symp_inv, tau1

SUITES = ("orbits", "decomposability", "tables", "siegel", "klingen", "all")


@dataclass
class RunConfig:
    q: int = 3
    gamma: int = 1
    suite: str = "all"
    out: str = None
    fmt: str = "json"
    deep: bool = False
    seed: int = 0
    command: str = "verify"


# ---------------------------------------------------------------------------
# suite runners


def _orbits_section(q):
    """Double-coset counts and representative verification."""
    t1, s1, s2 = tau1(q), sigma1(q), sigma2(q)
    inv = lambda g: symp_inv(g, q)
    reference = {
        "P\\Sp4/P": ("lambda2", GroupHandle("P", q),
                     [identity(4), inv(s1), inv(s2)], 3),
        "Q\\Sp4/P": ("lambda1", GroupHandle("P", q),
                     [identity(4), inv(s1)], 2),
        "P\\Sp4/Spsi": ("lambda2", GroupHandle("Spsi", q),
                        [identity(4), inv(s1), inv(mmul(t1, s1, q)), inv(s2)], 4),
        "Q\\Sp4/Spsi": ("lambda1", GroupHandle("Spsi", q),
                        [identity(4), inv(t1), inv(s1), inv(mmul(t1, s1, q))], 4),
        "Bbar\\GL2/O2": ("projline", named_subgroup("O2C", q),
                         [identity(2), ((0, 1), (1, 0))], 2),
    }
    out, all_ok = {}, True
    for name, (model, right, refs, want) in reference.items():
        rep = double_coset_reps(model, right)
        got = len(rep.representatives)
        # each returned representative must match exactly one reference element
        matched = []
        for r in rep.representatives:
            hits = [
                i
                for i, ref in enumerate(refs)
                if same_double_coset(model, r, ref, right)
            ]
            matched.append(hits)
        ok = (
            got == want
            and all(len(h) == 1 for h in matched)
            and sorted(h[0] for h in matched) == list(range(want))
        )
        all_ok = all_ok and ok
        out[name] = {
            "count": got,
            "expected": want,
            "sizes": rep.sizes,
            "representative_match": [h[0] if len(h) == 1 else None for h in matched],
            "verdict": "pass" if ok else "fail",
        }
    if q <= 5:
        stab = {}
        for j in range(3):
            stab[f"siegel[{j}]"] = verify_stabilizer(j, "siegel", q)
        for j in range(2):
            stab[f"klingen[{j}]"] = verify_stabilizer(j, "klingen", q)
        all_ok = all_ok and all(stab.values())
        out["stabilizers"] = {k: ("pass" if v else "fail") for k, v in stab.items()}
    return out, all_ok


def _decomposability_section(q):
    out, all_ok = [], True
    for parabolic in ("siegel", "klingen"):
        for rec in decomposability_suite(parabolic, q):
            all_ok = all_ok and rec["holds"]
            out.append(
                {
                    "parabolic": rec["parabolic"],
                    "w": rec["w"],
                    "condition": rec["condition"],
                    "statement": rec["statement"],
                    "verdict": "pass" if rec["holds"] else "fail",
                    "witness": rec["witness"],
                }
            )
    return out, all_ok


def _tables_section(q):
    out, all_ok = {}, True
    tables = {
        "GL2": gl2_irr_table(q),
        "SL2": sl2_irr_table(q),
        "O2C": o2_irr_table(q),
        "T2C": t2_irr_table(q),
        "L": l_irr_table(q),
    }
    for name, tab in tables.items():
        ok, info = verify_orthogonality(tab)
        all_ok = all_ok and ok
        out[name] = {
            "rows": len(tab.rows),
            "classes": tab.classes.n_classes,
            "orthogonality": "pass" if ok else f"fail: {info}",
        }
    return out, all_ok


def _theorem_section(q, gamma, parabolic):
    reports = []
    spec = PsiSpec(q=q, gamma=gamma)
    from .jacquet import _verify_one

    if parabolic == "siegel":
        for lab, _ in gl2_irr_table(q).rows:
            reports.append(_verify_one("siegel", lab, spec))
    else:
        for j in range(q - 1):
            for lab, _ in sl2_irr_table(q).rows:
                reports.append(_verify_one("klingen", (j, lab), spec))
    ok = all(r.verdict == "pass" for r in reports)
    return [r.as_json() for r in reports], ok


def build_report(config: RunConfig):
    q, gamma, suite = config.q, config.gamma, config.suite
    report = {
        "meta": {
            "tool": "sp4jacquet",
            "version": __version__,
            "q": q,
            "gamma": gamma,
            "suite": suite,
            "timings": {},
        }
    }
    overall = True
    chosen = SUITES[:-1] if suite == "all" else (suite,)
    for s in chosen:
        t0 = time.time()
        if s == "orbits":
            report["orbits"], ok = _orbits_section(q)
        elif s == "decomposability":
            report["decomposability"], ok = _decomposability_section(q)
        elif s == "tables":
            report["tables"], ok = _tables_section(q)
        elif s == "siegel":
            report["siegel"], ok = _theorem_section(q, gamma, "siegel")
        elif s == "klingen":
            report["klingen"], ok = _theorem_section(q, gamma, "klingen")
        overall = overall and ok
        report["meta"]["timings"][s] = round(time.time() - t0, 3)
    report["meta"]["verdict"] = "pass" if overall else "fail"
    return report, overall


# ---------------------------------------------------------------------------
# table dump


def dump_tables_csv(q):
    """One CSV block per table: rows are irreducibles, columns are class
    representatives as packed-entry hex strings."""
    buf = io.StringIO()
    tables = {
        "GL2": gl2_irr_table(q),
        "SL2": sl2_irr_table(q),
        "O2C": o2_irr_table(q),
        "T2C": t2_irr_table(q),
        "L": l_irr_table(q),
    }
    for name, tab in tables.items():
        reps = tab.classes.class_reps
        heads = ["".join(f"{e:x}" for row in g for e in row) for g in reps]
        buf.write(f"# {name}(q={q})\n")
        buf.write("label," + ",".join(heads) + "\n")
        for lab, chi in tab.rows:
            cells = []
            for v in chi.values:
                z = complex(v)
                cells.append(f"{round(z.real, 10):+.10g}{round(z.imag, 10):+.10g}j")
            buf.write(f"{lab}," + ",".join(cells) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# rendering and entry point


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2, default=str) + "\n"
    if fmt == "csv":
        lines = ["section,item,verdict"]
        for section, body in report.items():
            if section == "meta":
                continue
            if isinstance(body, dict):
                items = body.items()
            else:
                items = ((f"{r.get('parabolic', '')}:{r.get('inducing', r.get('w', ''))}"
                          f":{r.get('condition', '')}", r) for r in body)
            for key, rec in items:
                verdict = rec.get("verdict", "") if isinstance(rec, dict) else rec
                lines.append(f"{section},{key},{verdict}")
        lines.append(f"meta,overall,{report['meta']['verdict']}")
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = [
            f"sp4jacquet {report['meta']['version']}  q={report['meta']['q']} "
            f"gamma={report['meta']['gamma']} suite={report['meta']['suite']}"
        ]
        for section, body in report.items():
            if section == "meta":
                continue
            lines.append(f"[{section}]")
            records = body.items() if isinstance(body, dict) else enumerate(body)
            for key, rec in records:
                if isinstance(rec, dict) and "verdict" in rec:
                    name = rec.get("inducing") or rec.get("statement") or str(key)
                    lines.append(f"  {name}: {rec['verdict']}")
                else:
                    lines.append(f"  {key}: {rec}")
        lines.append(f"overall: {report['meta']['verdict']}")
        return "\n".join(lines) + "\n"
    raise ValueError(fmt)


def _write_out(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run(config: RunConfig) -> int:
    if config.q not in SUPPORTED_Q:
        print(f"error: q must be one of {SUPPORTED_Q}", file=sys.stderr)
        return 2
    if not 1 <= config.gamma < config.q:
        print("error: gamma must satisfy 1 <= gamma < q", file=sys.stderr)
        return 2
    if config.suite not in SUITES:
        print(f"error: unknown suite {config.suite}", file=sys.stderr)
        return 2
    if (
        config.q == 11
        and config.suite in ("siegel", "klingen", "all", "tables")
        and not config.deep
    ):
        print(
            "error: q=11 runs only the orbits/decomposability suites by default;"
            " pass --deep for the theorem suites (expect several minutes)",
            file=sys.stderr,
        )
        return 2
    if config.command == "tables":
        _write_out(dump_tables_csv(config.q), config.out)
        return 0
    report, ok = build_report(config)
    _write_out(render(report, config.fmt), config.out)
    return 0 if ok else 1


def _add_common(p):
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--gamma", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"),
                   default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--deep", action="store_true",
                   help="allow the expensive theorem suites at q=11")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampled checks at large q")


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="sp4jacquet",
        description="verify twisted Jacquet module structure for Sp4(F_q)",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", choices=SUITES, default="all")
    _add_common(pv)
    pt = sub.add_parser("tables", help="dump the character tables as CSV")
    _add_common(pt)
    po = sub.add_parser("orbits", help="run only the orbit/double-coset suite")
    _add_common(po)
    args = ap.parse_args(argv)
    config = RunConfig(
        q=args.q,
        gamma=args.gamma,
        suite=getattr(args, "suite", "orbits" if args.command == "orbits" else "all"),
        out=args.out,
        fmt=args.fmt,
        deep=args.deep,
        seed=args.seed,
        command=args.command,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
