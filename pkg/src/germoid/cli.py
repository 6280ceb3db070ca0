"""Command line front end: fixture generation, analysis, groupoid
construction, verification suites, and DOT export.

Reports go to stdout as JSON (one object per line for ``verify``); the
human summary goes to stderr.  Exit codes: 0 all checks pass, 1 at least
one failure, 2 input/parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import errors
from .fixtures import generate_fixture
from .semigroups import InvSemigroup, semigroup_from_json
from .verify import analyze, groupoid_variant, run_suite


def _load(path: str) -> InvSemigroup:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SystemExit2(f"cannot read {path}: {exc}")
    try:
        return semigroup_from_json(text, name=Path(path).stem)
    except (json.JSONDecodeError, KeyError) as exc:
        raise SystemExit2(f"cannot parse {path}: {exc}")
    except errors.ValidationError as exc:
        raise SystemExit2(f"invalid semigroup in {path}: {exc}")


class SystemExit2(Exception):
    """Signals exit code 2 (IO / parse problems)."""


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    params = {}
    if args.kind == "direct-product":
        params = {"left": _load(args.left), "right": _load(args.right)}
    elif args.kind == "adjoin-zero":
        params = {"semigroup": _load(args.infile)}
    else:
        if args.n is not None:
            params["n"] = args.n
        if args.group_n is not None:
            params["group_n"] = args.group_n
        if args.preset is not None:
            params["preset" if args.kind == "semidirect" else "name"] = args.preset
    S = generate_fixture(args.kind, **params)
    _emit(S.to_json(), args.out)
    print(f"{S.name}: {len(S)} elements", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    S = _load(args.file)
    report = analyze(S)
    _emit(json.dumps(report, sort_keys=True), None)
    f = report["filters"]
    print(f"{S.name}: |S|={report['elements']} |E|={report['idempotents']} "
          f"zero={report['zero']} E-unitary={report['e_unitary']} "
          f"0-E-unitary={report['zero_e_unitary']} |G|={report['group_order']} "
          f"filters={f['plain']}/{f['contracted']}/{f['tight']}",
          file=sys.stderr)
    return 0


def cmd_groupoid(args) -> int:
    S = _load(args.file)
    g = groupoid_variant(S, args.variant)
    _emit(g.to_json(), args.out)
    if args.dot:
        Path(args.dot).write_text(g.to_dot() + "\n")
    iso = ",".join(map(str, g.isotropy_orders()))
    print(f"{g.name}: {g.n_units} units, {g.n_arrows} arrows, "
          f"isotropy orders [{iso}]", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    fixtures = [_load(f) for f in args.files]
    reports = run_suite(args.suite, fixtures)
    failed = 0
    for rep in reports:
        print(rep.to_json())
        if not rep.passed:
            failed += 1
    ran = sum(1 for r in reports if not r.skipped)
    skipped = len(reports) - ran
    print(f"suite {args.suite}: {ran - failed}/{ran} passed, "
          f"{skipped} skipped, {failed} failed", file=sys.stderr)
    return 1 if failed else 0


def cmd_export_dot(args) -> int:
    from .groupoids import groupoid_from_json
    try:
        g = groupoid_from_json(Path(args.file).read_text(),
                               name=Path(args.file).stem)
    except OSError as exc:
        raise SystemExit2(f"cannot read {args.file}: {exc}")
    except (json.JSONDecodeError, KeyError) as exc:
        raise SystemExit2(f"cannot parse {args.file}: {exc}")
    _emit(g.to_dot(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="germoid")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a fixture semigroup as JSON")
    g.add_argument("kind", choices=[
        "chain", "group", "brandt", "symmetric-inverse", "semidirect",
        "direct-product", "adjoin-zero", "preset"])
    g.add_argument("--n", type=int)
    g.add_argument("--group-n", type=int, dest="group_n")
    g.add_argument("--preset")
    g.add_argument("--left")
    g.add_argument("--right")
    g.add_argument("--in", dest="infile")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    a = sub.add_parser("analyze", help="summary facts about a semigroup file")
    a.add_argument("file")
    a.set_defaults(fn=cmd_analyze)

    go = sub.add_parser("groupoid", help="build a groupoid of a semigroup")
    go.add_argument("file")
    go.add_argument("--variant", required=True,
                    choices=["universal", "contracted", "tight", "partial"])
    go.add_argument("--out")
    go.add_argument("--dot")
    go.set_defaults(fn=cmd_groupoid)

    v = sub.add_parser("verify", help="run a verification suite over fixtures")
    v.add_argument("--suite", required=True,
                   choices=["main1", "main1reduced", "reduction", "equiv",
                            "envelope", "ks", "all"])
    v.add_argument("files", nargs="+")
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("export-dot", help="groupoid JSON to DOT")
    d.add_argument("file")
    d.add_argument("--out")
    d.set_defaults(fn=cmd_export_dot)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except errors.GermoidError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
