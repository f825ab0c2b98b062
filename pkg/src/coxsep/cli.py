"""Command-line front end.

Every verb prints human-readable text, or a JSON document with ``--json``.
Hypothesis failures exit with status 2, other errors with status 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
import time
from pathlib import Path

from . import analysis, separability
from .completion import CompletionError
from .graph import GraphError
from .presentation import (CoxeterPresentation, PresentationError, check_reduction_hypothesis,
                           check_separability_condition, find_cover, parse_presentation)
from .reduction import ReductionError
from .rewriting import (build_normal_form_recognizer, dehn_reduce, format_word, is_shortlex_normal,
                        normal_form, parse_word)
from .surface import SurfaceError, SurfacePresentation, surface_build

SCHEMA = 1
EXIT_HYPOTHESIS = 2


class HypothesisFailure(Exception):
    pass


def _read_presentation(args) -> CoxeterPresentation:
    if args.presentation is None:
        raise SystemExit("--presentation is required")
    path = Path(args.presentation)
    text = path.read_text() if path.exists() else args.presentation
    return parse_presentation(text)


def _read_gens(args, parse) -> list[tuple]:
    words = []
    for src in args.gens or []:
        path = Path(src)
        if path.exists():
            lines = path.read_text().splitlines()
        else:
            lines = src.split(",")
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                words.append(parse(line))
    return words


def _cover(args):
    if not args.cover:
        return None
    return frozenset(int(t) for t in args.cover.replace(" ", "").split(",") if t)


def _build(args, p):
    gens = _read_gens(args, lambda s: parse_word(s, p.n))
    try:
        return analysis.build(p, gens, _cover(args), checked=not args.unchecked, budget=args.budget)
    except ReductionError as e:
        if "Hypothesis" in str(e):
            raise HypothesisFailure(str(e)) from e
        raise


def _export(args, g) -> None:
    if args.export_dot:
        Path(args.export_dot).write_text(g.to_dot())
    if args.export_graph:
        Path(args.export_graph).write_text(g.to_json())


def _word(args, p) -> tuple:
    if args.word is None:
        raise SystemExit("--word is required")
    return parse_word(args.word, p.n)


def cmd_check(args) -> dict:
    p = _read_presentation(args)
    cover = _cover(args) or p.cover or find_cover(p)
    red = check_reduction_hypothesis(p, cover)
    sep = check_separability_condition(p)
    out = {"extra_large": p.is_extra_large(), "cover": sorted(cover) if cover is not None else None,
           "reduction": {"passed": red.passed, "violations": red.violations},
           "separability": {"passed": sep.passed, "violations": sep.violations},
           "k_G": p.k_g()}
    out["_text"] = [f"reduction hypothesis: {'pass' if red else 'FAIL'} (C = {out['cover']})"]
    out["_text"] += ["  " + v for v in red.violations]
    out["_text"] += [f"separability condition: {'pass' if sep else 'fail'}"] + ["  " + v for v in sep.violations]
    if not red:
        out["_exit"] = EXIT_HYPOTHESIS
    return out


def _build_summary(b) -> dict:
    return {"vertices": {"delta0": b.delta0.vertex_count(), "delta1": b.delta1.vertex_count(),
                         "delta2": b.delta2.vertex_count()},
            "edges": {"delta0": b.delta0.edge_count(), "delta1": b.delta1.edge_count(),
                      "delta2": b.delta2.edge_count()},
            "edge_bound": b.config.edge_bound, "max_edges": b.trace.max_edges,
            "steps": len(b.trace.steps), "critical": sorted(b.delta2.critical),
            "timings": b.timings}


def cmd_build(args) -> dict:
    p = _read_presentation(args)
    b = _build(args, p)
    _export(args, b.delta2)
    out = _build_summary(b)
    text = [f"delta0: {b.delta0.vertex_count()} vertices, {b.delta0.edge_count()} edges",
            f"delta1: {b.delta1.vertex_count()} vertices, {b.delta1.edge_count()} edges",
            f"delta2: {b.delta2.vertex_count()} vertices, {b.delta2.edge_count()} edges "
            f"({len(b.delta2.critical)} critical)",
            f"time: {b.timings['total']:.3f} s"]
    if args.trace:
        out["trace"] = b.trace.lines()
        text += b.trace.lines()
    out["_text"] = text
    return out


def cmd_member(args) -> dict:
    p = _read_presentation(args)
    b = _build(args, p)
    _export(args, b.delta2)
    m = analysis.membership(b.delta2, _word(args, p))
    path = " ".join(map(str, m.path))
    return {"member": m.member, "reduced": format_word(m.reduced), "path": m.path, "end": m.end,
            "_text": [f"{'member' if m.member else 'not a member'}: {format_word(m.reduced)} reads {path}"]}


def cmd_index(args) -> dict:
    p = _read_presentation(args)
    b = _build(args, p)
    _export(args, b.delta2)
    r = analysis.is_finite_index(b.delta2)
    text = [f"full: {r.full}", f"vertices: {r.vertex_count}"]
    if r.full:
        text.append(f"coset-count estimate: {r.coset_estimate}")
    return {"full": r.full, "vertices": r.vertex_count, "coset_estimate": r.coset_estimate,
            "missing": {str(v): xs for v, xs in r.missing.items()}, "_text": text}


def cmd_qc(args) -> dict:
    p = _read_presentation(args)
    b = _build(args, p)
    d = b.delta2.distances()
    return {"diameter": max(d.values()), "distances": {str(v): k for v, k in sorted(d.items())},
            "_text": [f"diameter: {max(d.values())}"]}


def cmd_witness(args) -> dict:
    p = _read_presentation(args)
    b = _build(args, p)
    z = analysis.infinite_index_witness(b.delta2)
    return {"witness": format_word(z), "_text": [f"z = {format_word(z)}"]}


def cmd_intersect(args) -> dict:
    p = _read_presentation(args)
    h = _build(args, p).delta2
    other = argparse.Namespace(**vars(args))
    other.gens = args.gens2
    k = _build(other, p).delta2
    a = analysis.intersection_acceptor(h, k)
    _export(args, a)
    out = {"vertices": a.vertex_count(), "edges": a.edge_count(),
           "_text": [f"acceptor: {a.vertex_count()} vertices, {a.edge_count()} edges"]}
    if args.word is not None:
        w = dehn_reduce(p.relators(), _word(args, p))
        accepted = a.trace(a.basepoint, w) == a.basepoint
        out["accepted"] = accepted
        out["_text"].append(f"{format_word(w)}: {'accepted' if accepted else 'rejected'}")
    return out


def _quotient_out(q) -> dict:
    out = q.to_dict()
    out["_text"] = q.lines()
    return out


def cmd_separate(args) -> dict:
    p = _read_presentation(args)
    if not check_separability_condition(p):
        raise HypothesisFailure("separability condition fails")
    gens = _read_gens(args, lambda s: parse_word(s, p.n))
    return _quotient_out(separability.separate(p, gens, _word(args, p), _cover(args)))


def cmd_rf(args) -> dict:
    p = _read_presentation(args)
    if not check_separability_condition(p):
        raise HypothesisFailure("separability condition fails")
    return _quotient_out(separability.residual_witness(p, _word(args, p)))


def cmd_nf(args) -> dict:
    p = _read_presentation(args)
    w = normal_form(p.relators(), _word(args, p))
    return {"normal_form": format_word(w), "_text": [format_word(w)]}


def cmd_isnf(args) -> dict:
    p = _read_presentation(args)
    rs = p.relators()
    w = _word(args, p)
    ref = is_shortlex_normal(rs, w, "reference")
    rec = build_normal_form_recognizer(rs)
    at = rec.run(w)
    out = {"normal": ref, "streaming": at is None, "rejected_at": at}
    text = [f"{format_word(w)}: {'normal' if ref else 'not normal'}"]
    if at is not None:
        text.append(f"recognizer rejects at letter {at}")
    out["_text"] = text
    return out


def cmd_surface(args) -> dict:
    sp = SurfacePresentation(args.genus, not args.nonorientable)
    gens = _read_gens(args, sp.parse_word)
    b = surface_build(sp, gens, checked=not args.unchecked)
    g = b.delta2
    _export(args, g)
    r = analysis.is_finite_index(g)
    d = analysis.quasiconvexity_constant(g)
    out = {"vertices": g.vertex_count(), "edges": g.edge_count(), "full": r.full, "diameter": d,
           "_text": [f"delta2: {g.vertex_count()} vertices, {g.edge_count()} edges",
                     f"full: {r.full}", f"diameter: {d}"]}
    if args.word is not None:
        m = analysis.membership(g, sp.parse_word(args.word))
        out["member"] = m.member
        out["_text"].append(f"{sp.format_word(m.reduced)}: {'member' if m.member else 'not a member'}")
    if args.trace:
        out["_text"] += b.trace.lines()
    return out


def random_reduced_word(rs, length: int, rng: random.Random) -> tuple:
    """Random walk of the given length that is Dehn reduced, built letter by letter."""
    w: list = []
    while len(w) < length:
        choices = [x for x in rs.letters if dehn_reduce(rs, w[-12:] + [x]) == tuple(w[-12:] + [x])]
        w.append(rng.choice(choices))
    return tuple(w)


def random_generators(rs, total: int, rng: random.Random, length: int = 10) -> list[tuple]:
    gens = []
    left = total
    while left > 0:
        k = min(length, left)
        gens.append(random_reduced_word(rs, k, rng))
        left -= k
    return gens


def bench(sizes, seed: int = 0, m: int = 6, word_length: int = 50) -> dict:
    """Build times over a size sweep of random subgroups of the uniform triangle group."""
    p = CoxeterPresentation.uniform(3, m)
    rs = p.relators()
    rows = []
    for s in sizes:
        rng = random.Random(seed * 100003 + s)
        gens = random_generators(rs, s, rng, word_length)
        t0 = time.perf_counter()
        b = analysis.build(p, gens)
        dt = time.perf_counter() - t0
        rows.append({"s_H": s, "seconds": dt, "edges": b.delta2.edge_count(), "vertices": b.delta2.vertex_count()})
    pts = [(math.log(r["s_H"]), math.log(max(r["seconds"], 1e-6))) for r in rows if r["s_H"] > 0]
    exponent = None
    if len(pts) >= 2:
        mx = sum(x for x, _ in pts) / len(pts)
        my = sum(y for _, y in pts) / len(pts)
        exponent = sum((x - mx) * (y - my) for x, y in pts) / sum((x - mx) ** 2 for x, _ in pts)
    return {"rows": rows, "exponent": exponent}


def cmd_bench(args) -> dict:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else list(range(100, 1501, 100))
    res = bench(sizes, args.seed)
    text = [f"{'s_H':>6} {'seconds':>9} {'edges':>7}"]
    text += [f"{r['s_H']:>6} {r['seconds']:>9.3f} {r['edges']:>7}" for r in res["rows"]]
    if res["exponent"] is not None:
        text.append(f"fitted exponent: {res['exponent']:.2f}")
    res["_text"] = text
    return res


VERBS = {"check": cmd_check, "build": cmd_build, "member": cmd_member, "index": cmd_index, "qc": cmd_qc,
         "witness": cmd_witness, "intersect": cmd_intersect, "separate": cmd_separate, "rf": cmd_rf,
         "nf": cmd_nf, "isnf": cmd_isnf, "surface": cmd_surface, "bench": cmd_bench}


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxsep", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("--presentation", help="presentation file, or the text itself (e.g. 'gens 3 / m 1 2 4 / ...')")
    ap.add_argument("--gens", action="append",
                    help="file with one generator word per line, or comma-separated words; repeatable")
    ap.add_argument("--gens2", action="append", help="second subgroup for intersect")
    ap.add_argument("--word")
    ap.add_argument("--cover", help="comma-separated generator indices")
    ap.add_argument("--export-dot")
    ap.add_argument("--export-graph")
    ap.add_argument("--trace", action="store_true")
    ap.add_argument("--unchecked", action="store_true", help="skip the hypothesis check (bounded by --budget)")
    ap.add_argument("--budget", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sizes", help="bench: comma-separated s_H values")
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--nonorientable", action="store_true")
    ap.add_argument("--json", action="store_true", help="print the structured result")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.unchecked and args.budget is None:
        args.budget = 10_000
    try:
        out = VERBS[args.verb](args)
    except HypothesisFailure as e:
        print(f"hypothesis failure: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (PresentationError, SurfaceError, ValueError, ReductionError, CompletionError, GraphError,
            separability.SeparationError, analysis.AnalysisError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    status = out.pop("_exit", 0)
    text = out.pop("_text", [])
    if args.json:
        out = {"schema": SCHEMA, "verb": args.verb, **out}
        print(json.dumps(out, indent=2, default=str))
    else:
        print("\n".join(text))
    return status


if __name__ == "__main__":
    sys.exit(main())
