"""Command-line frontend.

Exit codes: 0 for an affirmative result, 1 for a negative verdict or a
comparison mismatch, 2 for input errors and failed cross-checks.  With
`--json` every command prints one canonical JSON object (sorted keys, compact
separators), byte-identical for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cech import (
    cech_cohomology,
    cech_ordered_complex,
    compare_report,
    random_presheaf,
    topos_cohomology,
)
from .cuts import criterion, enumerate_cuts
from .diagrams import derived_limit, full_complex_truncated
from .documents import (
    DocumentError,
    load_presheaf,
    render_group,
    render_presheaf,
    skeleton,
)
from .poset import (
    IntersectionPoset,
    chains,
    parse_poset,
    random_poset,
    serialize_poset,
)
from .complexes import simplicial_homology


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise DocumentError("cannot read %s: %s" % (path, exc.strerror or exc))
    except json.JSONDecodeError as exc:
        raise DocumentError("%s is not valid JSON: %s" % (path, exc))


def _load_poset(path):
    return parse_poset(_read_json(path))


def _load_presheaf(args):
    space = _load_poset(args.poset)
    return space, load_presheaf(_read_json(args.presheaf), space=space)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _machine(args, payload):
    _emit(args, json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _document(args, doc):
    _emit(args, json.dumps(doc, indent=2))


def _degree_window(args, default_top):
    window = getattr(args, "degrees", None)
    if window is None:
        return 0, default_top
    parts = window.split("..")
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    try:
        low, high = int(parts[0]), int(parts[1])
    except ValueError:
        raise DocumentError("--degrees expects A..B with integers")
    if low < 0 or high < low:
        raise DocumentError("--degrees window must satisfy 0 <= A <= B")
    return low, high


def _order_list(args, space):
    if getattr(args, "order", None) is None:
        return None
    names = [part for part in args.order.split(",") if part]
    for name in names:
        if name not in space.index:
            raise DocumentError("--order names unknown element %r" % name)
    return names


def _group_payload(group):
    return render_group(group)


def cmd_validate(args):
    P = _load_poset(args.poset)
    covers = P.covers()
    longest = P.height() + 1
    if args.json:
        _machine(
            args,
            {
                "elements": len(P.elements),
                "cover_relations": len(covers),
                "longest_chain": longest,
            },
        )
    else:
        _emit(
            args,
            "%d elements, %d cover relations, longest chain %d"
            % (len(P.elements), len(covers), longest),
        )
    return 0


def cmd_cuts(args):
    P = _load_poset(args.poset)
    cuts = enumerate_cuts(P)
    if args.json:
        payload = [
            {
                "lower": cut.lower.names(),
                "upper": cut.upper.names(),
                "witness": sorted(P.elements[i] for i in cut.witness),
            }
            for cut in cuts
        ]
        _machine(args, {"cuts": payload})
    else:
        lines = ["%d cuts with nonempty lower half" % len(cuts)]
        for cut in cuts:
            lines.append(
                "cut <%s, %s> witness %s"
                % (
                    cut.lower.canonical_name(),
                    cut.upper.canonical_name(),
                    "{%s}" % ",".join(sorted(P.elements[i] for i in cut.witness)),
                )
            )
        _emit(args, "\n".join(lines))
    return 0


def cmd_criterion(args):
    P = _load_poset(args.poset)
    report = criterion(P, shortcuts=not args.no_shortcut)
    if args.json:
        payload = {
            "verdict": report.verdict,
            "cuts_examined": report.cuts_examined,
            "shortcut": report.shortcut,
            "failures": [
                {
                    "lower": cut.lower.names(),
                    "upper": cut.upper.names(),
                    "degree": degree,
                    "group": _group_payload(group),
                }
                for cut, degree, group in report.failures
            ],
        }
        _machine(args, payload)
    elif report.verdict == "PASS":
        _emit(
            args,
            "PASS: all tested upper sections are acyclic"
            " (cuts examined: %d, shortcut: %s)"
            % (report.cuts_examined, report.shortcut),
        )
    else:
        lines = [
            "FAIL: %d of %d cuts have non-acyclic upper sections"
            % (len(report.failures), report.cuts_examined)
        ]
        for cut, degree, group in report.failures:
            lines.append(
                "cut <%s, %s>: H_%d = %s"
                % (
                    cut.lower.canonical_name(),
                    cut.upper.canonical_name(),
                    degree,
                    group.render(),
                )
            )
        _emit(args, "\n".join(lines))
    return 0 if report.verdict == "PASS" else 1


def cmd_skeleton(args):
    P = _load_poset(args.poset)
    _document(args, skeleton(P))
    return 0


def _cohomology_rows(args, space, value_at):
    low, high = _degree_window(args, space.height())
    return [(n, value_at(n)) for n in range(low, high + 1)]


def _print_groups(args, fmt, rows):
    if args.json:
        _machine(
            args,
            {
                "groups": [
                    {"degree": n, "group": _group_payload(g)} for n, g in rows
                ]
            },
        )
    else:
        _emit(args, "\n".join(fmt % (n, g.render()) for n, g in rows))


def _check_ordered_route(ps, order, degrees):
    ordered = cech_ordered_complex(ps, order)
    for n in degrees:
        direct = cech_cohomology(ps, n)
        routed = ordered.homology_group(n)
        if direct != routed:
            return "ordered route disagrees at degree %d: %s vs %s" % (
                n,
                direct.render(),
                routed.render(),
            )
    return None


def _check_full_route(diagram, degrees):
    cap = max(degrees)
    full = full_complex_truncated(diagram, cap)
    for n in degrees:
        direct = derived_limit(diagram, n)
        routed = full.homology_group(n)
        if direct != routed:
            return "unreduced route disagrees at degree %d: %s vs %s" % (
                n,
                direct.render(),
                routed.render(),
            )
    return None


def cmd_cech(args):
    space, ps = _load_presheaf(args)
    rows = _cohomology_rows(args, space, lambda n: cech_cohomology(ps, n))
    if args.oracle:
        problem = _check_ordered_route(
            ps, _order_list(args, space), [n for n, _ in rows]
        )
        if problem:
            print("oracle mismatch: %s" % problem, file=sys.stderr)
            return 2
    _print_groups(args, "H^%d = %s", rows)
    return 0


def cmd_topos(args):
    space, ps = _load_presheaf(args)
    rows = _cohomology_rows(args, space, lambda n: topos_cohomology(ps, n))
    if args.oracle:
        problem = _check_full_route(ps.pulled_diagram(), [n for n, _ in rows])
        if problem:
            print("oracle mismatch: %s" % problem, file=sys.stderr)
            return 2
    _print_groups(args, "H^%d = %s", rows)
    return 0


def cmd_compare(args):
    space, ps = _load_presheaf(args)
    low, high = _degree_window(args, space.height())
    report = compare_report(ps, cap=high)
    rows = [row for row in report.rows if low <= row.degree <= high]
    if args.oracle:
        degrees = [row.degree for row in rows]
        problem = _check_ordered_route(ps, _order_list(args, space), degrees)
        if problem is None:
            problem = _check_full_route(ps.diagram, degrees)
        if problem is None:
            problem = _check_full_route(ps.pulled_diagram(), degrees)
        if problem:
            print("oracle mismatch: %s" % problem, file=sys.stderr)
            return 2
    all_iso = all(row.iso for row in rows)
    if args.json:
        payload = {
            "cap": high,
            "all_isomorphic": all_iso,
            "degrees": [
                {
                    "degree": row.degree,
                    "cech": _group_payload(row.cech),
                    "topos": _group_payload(row.topos),
                    "map": [list(r) for r in row.map.matrix.entries],
                    "isomorphism": row.iso,
                }
                for row in rows
            ],
        }
        _machine(args, payload)
    else:
        lines = []
        for row in rows:
            lines.append(
                "degree %d: cech %s | topos %s | %s"
                % (
                    row.degree,
                    row.cech.render(),
                    row.topos.render(),
                    "isomorphic" if row.iso else "NOT isomorphic",
                )
            )
        lines.append(
            "comparison map is an isomorphism in every listed degree"
            if all_iso
            else "comparison fails at degrees %s"
            % ",".join(str(row.degree) for row in rows if not row.iso)
        )
        _emit(args, "\n".join(lines))
    return 0 if all_iso else 1


def cmd_homology(args):
    P = _load_poset(args.poset)
    complex_chains = [chains(P, k) for k in range(P.height() + 1)]
    low, high = _degree_window(args, P.height())
    rows = [(n, simplicial_homology(complex_chains, n)) for n in range(low, high + 1)]
    _print_groups(args, "H_%d = %s", rows)
    return 0


def cmd_random_poset(args):
    if args.elements < 1:
        raise DocumentError("element count must be positive")
    if not 0.0 <= args.density <= 1.0:
        raise DocumentError("density must lie in [0, 1]")
    P = random_poset(args.elements, args.density, args.seed)
    _document(args, serialize_poset(P))
    return 0


def cmd_fuzz(args):
    rng = random.Random(args.seed)
    passes = 0
    comparisons = 0
    violations = []
    for _ in range(args.count):
        size = rng.randint(1, args.max_elements)
        density = rng.random()
        poset_seed = rng.randrange(1 << 30)
        P = random_poset(size, density, poset_seed)
        report = criterion(P)
        if report.verdict != "PASS":
            continue
        passes += 1
        intersection = IntersectionPoset(P)
        for _ in range(args.presheaves):
            presheaf_seed = rng.randrange(1 << 30)
            ps = random_presheaf(intersection, presheaf_seed)
            comparisons += 1
            outcome = compare_report(ps)
            if not outcome.all_iso:
                violations.append((P, ps, presheaf_seed, outcome))
    if violations:
        P, ps, presheaf_seed, outcome = violations[0]
        bundle = {
            "poset": serialize_poset(P),
            "presheaf": render_presheaf(ps),
            "presheaf_seed": presheaf_seed,
            "failing_degrees": [row.degree for row in outcome.rows if not row.iso],
        }
        path = args.out or "fuzz-repro.json"
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(bundle, indent=2) + "\n")
        print(
            "violation: criterion PASS but comparison failed; bundle written to %s"
            % path,
            file=sys.stderr,
        )
        return 1
    summary = {
        "posets": args.count,
        "criterion_passes": passes,
        "comparisons": comparisons,
        "violations": 0,
    }
    if args.json:
        _machine(args, summary)
    else:
        _emit(
            args,
            "%d posets, %d criterion passes, %d comparisons, 0 violations"
            % (args.count, passes, comparisons),
        )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="posetcoh",
        description=(
            "Exact Cech and topos cohomology on finite posets, with the"
            " cut-acyclicity criterion for their agreement."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, poset=True, presheaf=False):
        cmd = sub.add_parser(name, help=help_text)
        if poset:
            cmd.add_argument("poset", help="path to a poset JSON document")
        if presheaf:
            cmd.add_argument("presheaf", help="path to a presheaf JSON document")
        cmd.add_argument("--json", action="store_true", help="machine output")
        cmd.add_argument("--out", help="write output to a file instead of stdout")
        cmd.set_defaults(func=func)
        return cmd

    add("validate", cmd_validate, "parse a poset and report its shape")
    add("cuts", cmd_cuts, "list all cuts with nonempty lower half")
    crit = add("criterion", cmd_criterion, "decide the acyclicity criterion")
    crit.add_argument(
        "--no-shortcut",
        action="store_true",
        help="skip the structural fast paths and test every cut",
    )
    add("skeleton", cmd_skeleton, "emit a presheaf authoring template")
    cech = add("cech", cmd_cech, "Cech cohomology of a presheaf", presheaf=True)
    cech.add_argument("--degrees", help="degree window A..B")
    cech.add_argument("--order", help="total order for the oracle route, comma list")
    cech.add_argument(
        "--oracle", action="store_true", help="cross-check via the ordered complex"
    )
    topos = add(
        "topos", cmd_topos, "topos cohomology of the generated sheaf", presheaf=True
    )
    topos.add_argument("--degrees", help="degree window A..B")
    topos.add_argument(
        "--oracle", action="store_true", help="cross-check via the unreduced complex"
    )
    comp = add(
        "compare",
        cmd_compare,
        "compare both cohomologies through the canonical map",
        presheaf=True,
    )
    comp.add_argument("--degrees", help="degree window A..B")
    comp.add_argument("--order", help="total order for the oracle route, comma list")
    comp.add_argument(
        "--oracle", action="store_true", help="cross-check both routes independently"
    )
    hom = add("homology", cmd_homology, "integer homology of the order complex")
    hom.add_argument("--degrees", help="degree window A..B")
    rand = add("random-poset", cmd_random_poset, "emit a reproducible random poset", poset=False)
    rand.add_argument("elements", type=int, help="number of elements")
    rand.add_argument("--density", type=float, default=0.35, help="relation density")
    rand.add_argument("--seed", type=int, required=True, help="random seed")
    fuzz = add("fuzz", cmd_fuzz, "random agreement check at sample scale", poset=False)
    fuzz.add_argument("--count", type=int, default=100, help="number of posets")
    fuzz.add_argument(
        "--max-elements", type=int, default=8, help="largest poset size drawn"
    )
    fuzz.add_argument(
        "--presheaves", type=int, default=5, help="presheaves per passing poset"
    )
    fuzz.add_argument("--seed", type=int, required=True, help="random seed")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def entry():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
