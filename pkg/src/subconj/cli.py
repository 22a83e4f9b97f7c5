"""Command-line surface.

Exit codes: 0 when everything passes, 1 when a registered check fails, 2 for
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .harness import (
    CHECK_IDS,
    CorpusEntry,
    CorpusManifest,
    GroupRecord,
    _serialize_witness,
    analyze_corpus,
    analyze_entry,
    emit_report,
    run_checks,
    witness_search,
)
from .perms import ParseError
from .predicates import ClassId, UNDECIDED, decide, hierarchy_report
from .structure import is_solvable, prime_factors, sylow_shape, sylow_subgroup
from .zoo import construct, format_group_file, ingest


def _load_group_record(target, classes):
    """Analyze one group given by name or file path; returns a GroupRecord."""
    if os.path.exists(target) or os.sep in target:
        group = ingest(target)
        name = os.path.basename(target)
        if classes == "pi":
            return _pi_only_record(name, group)
        report = hierarchy_report(group, group_id=name)
        shapes = []
        for p in prime_factors(group.order()):
            s = sylow_shape(sylow_subgroup(group, p))
            shapes.append({"p": p, "tag": s.tag, "order": s.order, "rank": s.rank})
        return GroupRecord(
            name=name,
            order=group.order(),
            solvable=is_solvable(group),
            sylow_shapes=shapes,
            verdicts={cid.value: report.verdicts[cid] for cid in ClassId},
            witnesses=[
                _serialize_witness(report.witnesses[cid])
                for cid in ClassId
                if cid in report.witnesses
            ],
        )
    if classes == "pi":
        return _pi_only_record(target, construct(target))
    return analyze_entry(CorpusEntry(target))


def _pi_only_record(name, group):
    verdicts = {}
    witnesses = []
    for cid in ClassId:
        if not cid.is_pi:
            verdicts[cid.value] = UNDECIDED
            continue
        v, w = decide(group, cid)
        verdicts[cid.value] = v
        if w is not None:
            witnesses.append(_serialize_witness(w))
    shapes = []
    for p in prime_factors(group.order()):
        s = sylow_shape(sylow_subgroup(group, p))
        shapes.append({"p": p, "tag": s.tag, "order": s.order, "rank": s.rank})
    return GroupRecord(
        name=name,
        order=group.order(),
        solvable=is_solvable(group),
        sylow_shapes=shapes,
        verdicts=verdicts,
        witnesses=witnesses,
    )


def _print_record(record):
    print(f"group   {record.name}")
    print(f"order   {record.order}")
    print(f"solvable {'yes' if record.solvable else 'no'}")
    shapes = ", ".join(
        f"p={s['p']}: {s['tag']}({s['order']})" for s in record.sylow_shapes
    )
    print(f"sylow   {shapes or '-'}")
    print("classes " + " ".join(f"{k}={v}" for k, v in record.verdicts.items()))
    for w in record.witnesses:
        print(
            f"witness {w['class']}: two {w['kind']} subgroups of order {w['order']}"
            + (f" (p={w['prime']})" if w["prime"] else "")
        )
        print(f"        a: {' '.join(w['subgroup_a'])}")
        print(f"        b: {' '.join(w['subgroup_b'])}")


def cmd_analyze(args):
    record = _load_group_record(args.group, args.classes)
    _print_record(record)
    if args.json:
        doc = {
            "groups": [
                {
                    "id": record.name,
                    "order": record.order,
                    "solvable": record.solvable,
                    "sylow_shapes": [
                        {"p": s["p"], "tag": s["tag"], "order": s["order"]}
                        for s in record.sylow_shapes
                    ],
                    "classes": record.verdicts,
                    "witnesses": record.witnesses,
                }
            ],
            "checks": [],
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_corpus_run(args):
    manifest = (
        CorpusManifest.from_json(args.manifest)
        if args.manifest
        else CorpusManifest.default()
    )
    records = analyze_corpus(manifest, jobs=args.jobs)
    results = run_checks(records)
    out = emit_report(records, results, fmt="markdown" if args.markdown else "json")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(emit_report(records, results, fmt="json"))
        for c in results:
            print(f"{c.check_id}: {c.status}")
    else:
        print(out, end="")
    return 1 if any(c.status == "fail" for c in results) else 0


def cmd_theorems(args):
    manifest = CorpusManifest.default()
    only = None
    if args.only:
        only = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [cid for cid in only if cid not in CHECK_IDS]
        if unknown:
            print(f"unknown check ids: {', '.join(unknown)}", file=sys.stderr)
            print(f"known: {', '.join(CHECK_IDS)}", file=sys.stderr)
            return 2
    records = analyze_corpus(manifest, jobs=args.jobs)
    results = run_checks(records, only=only)
    for c in results:
        print(f"{c.check_id}: {c.status}")
        if c.details:
            print(f"    {c.details}")
    return 1 if any(c.status == "fail" for c in results) else 0


def cmd_witness(args):
    try:
        class_in = ClassId(args.class_in)
        class_out = ClassId(args.class_out)
    except ValueError:
        print(
            f"unknown class id; known: {', '.join(c.value for c in ClassId)}",
            file=sys.stderr,
        )
        return 2
    records = analyze_corpus(CorpusManifest.default(), jobs=args.jobs)
    hit = witness_search(records, class_in, class_out)
    if hit is None:
        print(f"none in corpus: every {class_in.value} member is in {class_out.value}")
    else:
        print(f"{hit.name} (order {hit.order}): in {class_in.value}, not in {class_out.value}")
    return 0


def cmd_construct(args):
    group = construct(args.name)
    text = format_group_file(group, comment=args.name)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="subconj",
        description="Exact conjugacy-class predicates and structure checks "
        "for finite permutation groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one group by name or group file")
    p.add_argument("group", help="group id (e.g. 'SL2(5)') or path to a group file")
    p.add_argument("--classes", choices=("all", "pi"), default="all")
    p.add_argument("--json", metavar="OUT", help="also write a JSON report")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("corpus", help="corpus operations")
    corpus_sub = p.add_subparsers(dest="corpus_command", required=True)
    pr = corpus_sub.add_parser("run", help="analyze the corpus and run all checks")
    pr.add_argument("--manifest", help="JSON manifest overriding the default corpus")
    pr.add_argument("--jobs", type=int, default=1)
    pr.add_argument("--json", metavar="OUT", help="write the JSON report to a file")
    pr.add_argument("--markdown", action="store_true", help="print markdown instead")
    pr.set_defaults(fn=cmd_corpus_run)

    p = sub.add_parser("theorems", help="run registered checks on the default corpus")
    p.add_argument("--only", help="comma-separated check ids")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_theorems)

    p = sub.add_parser("witness", help="smallest corpus member of classA minus classB")
    p.add_argument("class_in", metavar="classA")
    p.add_argument("class_out", metavar="classB")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("construct", help="build a named group and emit its group file")
    p.add_argument("name")
    p.add_argument("--emit", metavar="FILE")
    p.set_defaults(fn=cmd_construct)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
