"""Command-line front end.

Exit status: 0 when every checked inequality holds, 1 when a violation is
found (the witness is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .documents import dump_document, graph_doc, load_document
from .graph_core import GraphError, as_tree, is_tree, parse_graph
from .hoffman import MatrixError, hoffman_check, parse_matrix
from .hom_engine import GuardExceeded, hom_count
from .order_explorer import (
    dot_export,
    empirical_order,
    enumerate_free_trees,
    filter_by_leaves,
    hasse,
    image_suite,
    relation_to_text,
)
from .sidorenko import (
    STRATEGIES,
    broom,
    broom_chain_check,
    certificate_to_dict,
    certificate_to_text,
    check_certificate,
    default_rtol,
    phi_profile,
    transform_chain,
    verify_theorem,
)

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, human: str, payload: dict) -> None:
    text = dump_document(payload) if args.format == "text" else human
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args) -> int:
    g, h = _graph(args.source), _graph(args.image)
    method = "tree-dp" if is_tree(g) else "bruteforce"
    value = hom_count(g, h)
    payload = {
        "schema": "treehom.count/1",
        "source": graph_doc(g),
        "image": graph_doc(h),
        "method": method,
        "hom": str(value),
    }
    _emit(args, f"{value}\n", payload)
    return OK


def cmd_verify(args) -> int:
    g, h = _graph(args.source), _graph(args.image)
    report = verify_theorem(g, h, args.strategy)
    cert_doc = certificate_to_dict(report.certificate)
    problems = check_certificate(cert_doc, args.rtol)
    if args.certify:
        _write(args.certify, certificate_to_text(report.certificate))
    relation = "=" if report.equality else ("<=" if report.holds else ">")
    human = [
        f"k = {report.k}",
        f"hom(source, image)        = {report.hom_source}",
        f"hom(spanning tree, image) = {report.hom_spanning_tree}",
        f"hom(star, image)          = {report.star}",
        f"{report.hom_source} {relation} {report.star} {'PASS' if report.holds else 'FAIL'}",
        f"certificate: {len(report.certificate.steps)} steps, "
        + ("verified" if not problems else "INVALID"),
    ]
    human += [f"  {p}" for p in problems]
    payload = {
        "schema": "treehom.verify/1",
        "k": report.k,
        "hom_source": str(report.hom_source),
        "hom_spanning_tree": str(report.hom_spanning_tree),
        "star_count": str(report.star),
        "holds": report.holds,
        "equality": report.equality,
        "certificate_problems": problems,
    }
    _emit(args, "\n".join(human) + "\n", payload)
    return OK if report.holds and not problems else VIOLATION


def cmd_transform(args) -> int:
    g, h = _graph(args.tree), _graph(args.image)
    try:
        t = as_tree(g)
    except GraphError as exc:
        raise UsageError(f"{args.tree}: {exc}") from None
    cert = transform_chain(t, h, args.strategy)
    problems = check_certificate(certificate_to_dict(cert), args.rtol)
    if args.format == "text":
        text = certificate_to_text(cert)
    else:
        lines = [f"leaves {t.leaves} -> {cert.end.leaves}, {len(cert.steps)} steps"]
        for i, s in enumerate(cert.steps):
            lines.append(
                f"step {i}: b1={s.b1} b2={s.b2} d1={s.d1} d2={s.d2}"
                f"{' (swapped)' if s.swapped else ''}: {s.hom_before} -> {s.hom_after}"
            )
        lines.append("certificate " + ("verified" if not problems else "INVALID"))
        lines += [f"  {p}" for p in problems]
        text = "\n".join(lines) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return OK if not problems else VIOLATION


def cmd_trees(args) -> int:
    trees = enumerate_free_trees(args.k)
    if args.leaves is not None:
        trees = filter_by_leaves(trees, args.leaves)
    human = "".join(f"{ct.code} leaves={ct.leaf_count}\n" for ct in trees)
    payload = {
        "schema": "treehom.trees/1",
        "k": args.k,
        "leaves": args.leaves,
        "trees": [{"code": ct.code, "leaves": ct.leaf_count, "graph": graph_doc(ct.tree.graph)} for ct in trees],
    }
    _emit(args, human, payload)
    return OK


def cmd_order(args) -> int:
    if args.suite.startswith("random") and args.seed is None:
        raise UsageError("random suites need --seed")
    suite = image_suite(args.suite, args.seed)
    trees = enumerate_free_trees(args.k)
    rel = empirical_order(trees, suite, jobs=args.jobs)
    diagram = hasse(rel)
    if args.dot:
        _write(args.dot, dot_export(diagram))
    star = next(i for i, ct in enumerate(trees) if ct.leaf_count == args.k)
    refuted = [(b, rel.witnesses[(star, b)]) for b in range(len(trees)) if not rel.consistent(star, b)]
    human = [
        f"{len(trees)} trees, {len(suite)} image graphs, "
        f"{len(diagram.nodes)} classes, {len(diagram.arcs)} Hasse arcs (suite-relative)"
    ]
    for b, j in refuted:
        human.append(f"VIOLATION: star below {trees[b].code} on H{j} {graph_doc(suite[j])}")
    if args.format == "text":
        text = relation_to_text(rel)
    else:
        text = "\n".join(human) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return VIOLATION if refuted else OK


def cmd_brooms(args) -> int:
    h = _graph(args.image)
    report = broom_chain_check(args.k, h)
    D = args.k - 1
    lines = [f"k = {args.k}, star count = {report.star}"]
    payload = {
        "schema": "treehom.brooms/1",
        "k": args.k,
        "image": graph_doc(h),
        "star_count": str(report.star),
        "brooms": [{"d1": d1, "d2": d2, "hom": str(c)} for d1, d2, c in report.entries],
        "monotone": report.monotone,
        "below_star": report.below_star,
    }
    ok = report.ok
    if report.entries[0][2] > 0:
        # phi depends on d1 + d2 only; each broom reads it off at p = d1 / (d1 + d2)
        grid = [i / args.grid for i in range(args.grid + 1)]
        prof = phi_profile(broom(args.k, args.k - 2, 1).tree, 0, 1, h, grid)
        phi_ok = prof.symmetric(args.rtol) and prof.convex(args.rtol) and prof.max_at_endpoint
        ok = ok and phi_ok
        for d1, d2, c in report.entries:
            lines.append(f"B({d1},{d2}): p = {d1}/{D}, hom = {c}")
        lines.append(
            f"phi: pruned count {prof.base}, minimum at p = {prof.argmin:g}, "
            f"symmetry defect {prof.symmetry_defect:.3g}, convex {prof.convex(args.rtol)}"
        )
        lines.append(f"{'p':>8} {'phi(p)':>16}")
        lines += [f"{p:8.4f} {v:16.10g}" for p, v in zip(grid, prof.values)]
        payload["phi"] = {
            "grid": [repr(p) for p in grid],
            "values": [repr(v) for v in prof.values],
            "pruned_count": str(prof.base),
            "symmetry_defect": repr(prof.symmetry_defect),
            "min_second_difference": repr(prof.min_second_difference),
            "argmin": repr(prof.argmin),
            "ok": phi_ok,
        }
    else:
        lines += [f"B({d1},{d2}): hom = {c}" for d1, d2, c in report.entries]
    chain = " <= ".join(str(c) for _, _, c in report.entries) + f" <= {report.star}"
    lines.append(f"{chain} {'PASS' if ok else 'FAIL'}")
    _emit(args, "\n".join(lines) + "\n", payload)
    return OK if ok else VIOLATION


def cmd_hoffman(args) -> int:
    try:
        a = parse_matrix(_read(args.matrix))
    except MatrixError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    r = hoffman_check(a, args.k, args.rtol)
    human = [
        f"{r.walk:.12g} <= {r.rows:.12g} {'PASS' if r.holds else 'FAIL'}",
        f"weighted path = {r.weighted_path:.12g}, weighted star = {r.weighted_star:.12g}, "
        f"cross-check {'PASS' if r.cross_checks else 'FAIL'}",
    ]
    payload = {
        "schema": "treehom.hoffman/1",
        "n": a.n,
        "k": r.k,
        "walk_sum": repr(r.walk),
        "row_power_sum": repr(r.rows),
        "weighted_path": repr(r.weighted_path),
        "weighted_star": repr(r.weighted_star),
        "holds": r.holds,
        "cross_checks": r.cross_checks,
    }
    _emit(args, "\n".join(human) + "\n", payload)
    return OK if r.ok else VIOLATION


def cmd_check(args) -> int:
    try:
        doc = load_document(_read(args.cert))
    except ValueError as exc:
        raise UsageError(f"{args.cert}: {exc}") from None
    problems = check_certificate(doc, args.rtol)
    for p in problems:
        print(f"VIOLATION: {p}")
    if not problems:
        print(f"certificate verified: {len(doc['steps'])} steps")
    return VIOLATION if problems else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "text"), default="human",
                        help="'text' emits the versioned structured document")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--rtol", type=float, default=None,
                        help="relative tolerance for float comparisons (env TREEHOM_RTOL)")

    parser = argparse.ArgumentParser(prog="treehom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count homomorphisms source -> image")
    p.add_argument("--source", required=True)
    p.add_argument("--image", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="check hom(G, H) <= hom(star, H) with a certificate")
    p.add_argument("--source", required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--certify", help="write the transformation certificate here")
    p.add_argument("--strategy", choices=STRATEGIES, default="first-pair")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", parents=[common], help="leaf-migration chain from a tree to the star")
    p.add_argument("--tree", required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="first-pair")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("trees", parents=[common], help="enumerate free trees with k edges")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--leaves", type=int)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("order", parents=[common], help="empirical order on k-edge trees")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--suite", required=True, help="all:N or random:count,n,p")
    p.add_argument("--seed", type=int)
    p.add_argument("--dot", help="write the Hasse diagram as DOT here")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("brooms", parents=[common], help="broom chain and phi profiles")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--grid", type=int, default=100, help="number of grid intervals on [0, 1]")
    p.set_defaults(func=cmd_brooms)

    p = sub.add_parser("hoffman", parents=[common], help="walk sum versus row-sum powers")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_hoffman)

    p = sub.add_parser("check", parents=[common], help="re-verify a certificate file")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.rtol is None:
        args.rtol = default_rtol()
    try:
        return args.func(args)
    except (UsageError, GraphError, MatrixError, GuardExceeded, ValueError) as exc:
        print(f"treehom {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
