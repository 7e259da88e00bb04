"""Command-line interface: ``dp6 <subcommand> ...``.

Exit codes: 0 success, 1 check failures, 2 usage or input errors.
All output is UTF-8.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import buildspec, checks, classify, fibrations, geometry, surfaces, trace
from .chow import ChowError
from .expr import ExprSyntaxError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERTEX_CHOICES = {
    "disjoint": classify.VertexRelation.DISJOINT,
    "simple": classify.VertexRelation.SIMPLE,
    "double": classify.VertexRelation.DOUBLE,
    "triple": classify.VertexRelation.TRIPLE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _out(text: str | bytes):
    data = text if isinstance(text, bytes) else text.encode("utf-8")
    if not data.endswith(b"\n"):
        data += b"\n"
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _emit(payload: dict, as_json: bool, lines: list[str]):
    if as_json:
        _out(json.dumps(_jsonable(payload), ensure_ascii=False, indent=2))
    else:
        _out("\n".join(lines))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify(a) -> int:
    results, code = checks.run_verify(a.filter)
    _out(checks.emit_report(results, "json" if a.json else "text"))
    return code


def cmd_invariants(a) -> int:
    ci = fibrations.CoveringInvariants(a.gb, a.gt, a.gc, a.kx_c0)
    kx3 = fibrations.anticanonical_degree(ci)
    payload = {
        "g_B": ci.g_B,
        "g_T": ci.g_T,
        "g_C": ci.g_C,
        "deg_R_B": ci.deg_R_B,
        "deg_R_T": ci.deg_R_T,
        "anticanonical_degree": kx3,
        "h12": fibrations.hodge_h21(ci),
        "relative_degree": fibrations.relative_degree(ci),
    }
    lines = [
        f"(g_B, g_T, g_C) = ({ci.g_B}, {ci.g_T}, {ci.g_C})",
        f"deg R_B = {ci.deg_R_B}, deg R_T = {ci.deg_R_T}",
        f"(-K_X)^3 = {kx3}",
        f"h^(1,2) = {payload['h12']}",
        f"(-K_X/C)^3 = {payload['relative_degree']}",
    ]
    if a.kx_c0 is not None:
        o = fibrations.double_projection(kx3, ci.g_T, ci.g_C, a.kx_c0)
        payload["double_projection"] = {"kq3": o.kq3, "kq_dot_T": o.kq_dot_T, "deg_alpha": o.deg_alpha}
        lines.append(f"double projection: (-K_Q)^3 = {o.kq3}, -K_Q.T = {o.kq_dot_T}, deg alpha = {o.deg_alpha}")
    _emit(payload, a.json, lines)
    return EXIT_OK


def cmd_classify(a) -> int:
    if a.t_red is None:
        raise UsageError("classify: --t-red is required")
    if a.b_red is not None:
        if a.q_singular or a.vertex:
            raise UsageError("classify: --b-red cannot be combined with --q-singular or --vertex")
        row = classify.classify_from_counts(a.b_red, a.t_red)
        payload = {
            "mode": "counts",
            "b_red": row.b_red,
            "t_red": row.t_red,
            "possible_types": [t.value for t in row.x_types],
            "Y_t": row.y_type,
            "Z_t": row.z_type,
            "reference": "fiber table by reduced counts",
        }
        lines = [
            f"(b_red, t_red) = ({row.b_red}, {row.t_red})",
            f"X_t in {{{', '.join(t.value for t in row.x_types)}}}",
            f"Y_t = {row.y_type}",
            f"Z_t = {row.z_type}",
        ]
        _emit(payload, a.json, lines)
        return EXIT_OK
    if a.q_singular != bool(a.vertex):
        raise UsageError("classify: --vertex is required exactly when --q-singular is given")
    rel = VERTEX_CHOICES[a.vertex] if a.vertex else classify.VertexRelation.NOT_APPLICABLE
    d = classify.FiberDescriptor(a.q_singular, a.t_red, rel)
    t = classify.classify_exact(d)
    card = classify.fiber_card(t)
    payload = {
        "mode": "exact",
        "descriptor": {"q_singular": d.q_singular, "t_red": d.t_red, "vertex_relation": d.vertex_relation.value},
        "type": t.value,
        "normal": card.normal,
        "lines": card.lines,
        "singularity": card.singularity,
        "reference": "exact classification of special fibers",
    }
    lines = [f"X_t type {t.value}", f"lines: {card.lines}", f"singularity: {card.singularity}"]
    if card.normalization is not None:
        n = card.normalization
        payload["normalization"] = {
            "surface": n.surface,
            "pullback_anticanonical": list(n.pullback_anticanonical),
            "anticanonical_degree": n.anticanonical_degree(),
            "conductor": n.conductor,
            "conductor_map": n.conductor_map,
        }
        lines.append(f"normalization: {n.surface}, degree {n.anticanonical_degree()}, conductor {n.conductor}")
    _emit(payload, a.json, lines)
    return EXIT_OK


def cmd_example(a) -> int:
    t = classify.FiberType.parse(a.type)
    scene = geometry.build_example(t)
    d = scene.to_dict()
    lines = [
        f"type {d['kind']} (classified {d['classified']})",
        f"curve T: {d['curve']['text']}",
        f"special hyperplane: {d['special_hyperplane']}",
        f"other hyperplane: {d['other_hyperplane']}",
        f"fiber rank: {d['fiber_rank']}",
        f"vertex: {d['vertex']}",
        f"T_t: {d['T_t']} multiplicities {d['T_t_multiplicities']}",
        f"discriminant: {d['discriminant']}",
        "checks: " + ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in d["checks"].items()),
    ]
    _emit(d, a.json, lines)
    return EXIT_OK if all(d["checks"].values()) and d["classified"] == d["kind"] else EXIT_FAIL


def cmd_chow(a) -> int:
    try:
        with open(a.build, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"chow: cannot read {a.build}: {e.strerror}") from None
    ring = buildspec.build_ring(text)
    p = ring.expr(a.expr)
    if p.is_zero() or p.degrees() == {ring.dimension}:
        value = ring.integrate(p)
        payload = {"dimension": ring.dimension, "expr": a.expr, "degree": value}
        lines = [str(value)]
    else:
        nf = ring.normal_form(p)
        payload = {"dimension": ring.dimension, "expr": a.expr, "normal_form": str(nf)}
        lines = [str(nf)]
    _emit(payload, a.json, lines)
    return EXIT_OK


def cmd_lines(a) -> int:
    configs = surfaces.ALL_CONFIGS if a.all else [surfaces.DelPezzoConfig.parse(a.config)]
    rows = []
    for c in configs:
        lat, _ = surfaces.build_config(c)
        ls = surfaces.lines_of(c)
        rows.append({
            "config": str(c),
            "fiber_type": c.fiber_type,
            "lines": len(ls),
            "line_classes": [lat.format(x) for x in ls],
            "singularity": surfaces.singularity_of(c),
        })
    lines = [f"{r['fiber_type']:<6} {r['config']:<28} lines={r['lines']:<2} {r['singularity']}" for r in rows]
    _emit(rows if a.all else rows[0], a.json, lines)
    return EXIT_OK


def cmd_trace(a) -> int:
    if a.poly is not None:
        f = trace.parse_poly(a.poly)
        if f.lead != 1:
            f = f.monic()
        B = trace.FiniteAlgebra.from_poly(f)
    else:
        B = trace.FiniteAlgebra.split(a.split)
    r = trace.verify_prop_a4(B)
    payload = {
        "algebra": r.label,
        "n": r.n,
        "rank_c": r.rank_c,
        "surjective": r.surjective,
        "preimage_value": [str(v) for v in r.preimage_value],
        "preimage_ok": r.preimage_ok,
    }
    lines = [
        f"B = {r.label}, n = {r.n}",
        f"rank c_B = {r.rank_c} (surjective: {r.surjective})",
        f"c_B(preimage) = ({', '.join(str(v) for v in r.preimage_value)}) (equals 1^v: {r.preimage_ok})",
    ]
    _emit(payload, a.json, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dp6", description="Exact invariants of sextic del Pezzo fibrations.", allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, allow_abbrev=False)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    v = add("verify", cmd_verify, "run the check suite")
    v.add_argument("--filter", help="substring of check ids to run")

    i = add("invariants", cmd_invariants, "degree and Hodge number from covering genera")
    i.add_argument("--gb", type=int, required=True)
    i.add_argument("--gt", type=int, required=True)
    i.add_argument("--gc", type=int, required=True)
    i.add_argument("--kx-c0", type=int, help="-K_X.C0 for the double projection")

    c = add("classify", cmd_classify, "special fiber type")
    c.add_argument("--b-red", type=int, choices=(1, 2))
    c.add_argument("--t-red", type=int, choices=(1, 2, 3))
    c.add_argument("--q-singular", action="store_true")
    c.add_argument("--vertex", choices=sorted(VERTEX_CHOICES))

    e = add("example", cmd_example, "explicit rational scene for a fiber type")
    e.add_argument("--type", required=True, help="one of " + ", ".join(t.value for t in classify.FiberType))

    ch = add("chow", cmd_chow, "evaluate a cycle expression on a built ring")
    ch.add_argument("--build", required=True, metavar="FILE")
    ch.add_argument("--expr", required=True)

    ln = add("lines", cmd_lines, "lines and singularities of a sextic del Pezzo")
    g = ln.add_mutually_exclusive_group(required=True)
    g.add_argument("--config", help="e.g. chains=2+1,colinear=true")
    g.add_argument("--all", action="store_true")

    t = add("trace", cmd_trace, "trace duality for Q[x]/(f) or Q^n")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="e.g. x^2")
    g.add_argument("--split", type=int)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        return a.func(a)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (ValueError, ExprSyntaxError, ChowError) as e:
        print(f"dp6: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
