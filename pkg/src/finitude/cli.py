"""Command-line interface: ``finitude <area> <command> [files] [flags]``.

Every command prints one JSON report.  Exit status is 0 on success, 2 when
the input is rejected and 1 when an internal verification fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .algebra import (
    element_from_json,
    groupoid_algebra,
    iso_semigroup_to_groupoid,
    semigroup_algebra,
    sup_norm_sq,
    witness_check,
)
from .errors import FinitudeError, InputError, NotInverseError, VerificationError
from .groupoid import (
    DEFAULT_MAX_BISECTION_ARROWS,
    FiniteGroupoid,
    orbits_and_isotropy,
    universal_groupoid,
    validate_groupoid,
)
from .leavitt import (
    CohnContext,
    DirectedGraph,
    PathGroupoid,
    graph_verdict,
    verify_cohn_groupoid_iso,
)
from .mean_trace import (
    DEFAULT_MAX_LP_ARROWS,
    InvariantMean,
    canonical_mean,
    contractivity_check,
    ell1_bounds,
    ell1_representation,
    is_invariant_mean,
    trace_from_mean,
    verify_trace,
)
from .scalars import Gaussian
from .schutz import appendix_verdict, kernel_check_sweep, schutzenberger_rep
from .semigroup import (
    DEFAULT_MAX_SIZE,
    FiniteInverseSemigroup,
    d_class_report,
    green,
    is_stable,
    j_class_classify,
    semigroup_from_json,
    validate_inverse,
)


# ---------------------------------------------------------------------------
# input


class _Inputs:
    """Reads input files and keeps a digest of every byte read."""

    def __init__(self):
        self.digest = hashlib.sha256()

    def read(self, path: str):
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
        self.digest.update(raw)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None

    def resolve(self, ref, base: str):
        """An inline JSON object, or a path relative to the referring file."""
        if isinstance(ref, dict):
            return ref
        if not isinstance(ref, str):
            raise InputError("expected an inline object or a file path")
        if base != "-" and not os.path.isabs(ref):
            ref = os.path.join(os.path.dirname(base), ref)
        return self.read(ref)


def _semigroup(data, args):
    return semigroup_from_json(data, max_size=args.max_size)


def _inverse(data, args) -> FiniteInverseSemigroup:
    S = _semigroup(data, args)
    if isinstance(S, FiniteInverseSemigroup):
        return S
    return validate_inverse(S)


def _groupoid(data, args) -> FiniteGroupoid:
    """Groupoid JSON, or semigroup JSON for the universal groupoid of an inverse semigroup."""
    if "kind" in data:
        return universal_groupoid(_inverse(data, args))
    return validate_groupoid(data)


def _gate_arrows(G: FiniteGroupoid, limit: int) -> None:
    if G.n_arrows > limit:
        raise InputError(f"groupoid has {G.n_arrows} arrows; the limit is {limit} (raise it with --max-arrows)")


# ---------------------------------------------------------------------------
# JSON output


def _plain(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, Gaussian):
        return x.to_json()
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_semigroup_analyze(args, inp):
    S = _semigroup(inp.read(args.file), args)
    G = green(S)
    out = {
        "size": S.size,
        "idempotents": len(S.idempotents),
        "j_classes": len(G.j_classes),
        "d_equals_j": G.d_classes == G.j_classes,
        "stable": bool(is_stable(S, G)),
        "j_class_tags": [c.tag for c in j_class_classify(S, G)],
    }
    try:
        Si = S if isinstance(S, FiniteInverseSemigroup) else validate_inverse(S)
    except NotInverseError as exc:
        out["inverse"] = False
        out["inverse_failure"] = str(exc)
        out["appendix"] = appendix_verdict(S).to_json(S)
    else:
        out["inverse"] = True
        out.update(d_class_report(Si, G).to_json(Si))
    return out


def cmd_semigroup_groupoid(args, inp):
    S = _inverse(inp.read(args.file), args)
    G = universal_groupoid(S)
    dec = orbits_and_isotropy(G)
    out = G.to_json()
    out["object_labels"] = [S.labels[e] for e in S.idempotents]
    out["orbits"] = [list(o) for o in dec.orbits]
    out["isotropy_orders"] = [H.size for H in dec.isotropy]
    return out


def cmd_verify_iso(args, inp):
    S = _inverse(inp.read(args.file), args)
    iso = iso_semigroup_to_groupoid(S)
    return iso.to_json()


def cmd_graph_analyze(args, inp):
    E = DirectedGraph.from_json(inp.read(args.file))
    return graph_verdict(E).to_json()


def cmd_graph_cohn(args, inp):
    data = inp.read(args.file)
    E = DirectedGraph.from_json(data)
    ctx = CohnContext(E, data.get("gamma"))
    mons = ctx.normal_monomials(args.max_len)
    by_len = [0] * (args.max_len + 1)
    for m in mons:
        by_len[m.length] += 1
    out = {
        "X": sorted(E.vertices[v] for v in E.X),
        "gamma": {E.vertices[v]: E.edges[e] for v, e in sorted(ctx.gamma.items())},
        "max_len": args.max_len,
        "normal_monomials_by_length": by_len,
        "normal_monomials": [m.text(E) for m in mons],
    }
    if "expression" in data:
        x = ctx.parse(data["expression"])
        out["normal_form"] = x.to_text()
    return out


def cmd_graph_groupoid(args, inp):
    E = DirectedGraph.from_json(inp.read(args.file))
    return PathGroupoid(E).to_json()


def cmd_graph_verify_iso(args, inp):
    E = DirectedGraph.from_json(inp.read(args.file))
    return verify_cohn_groupoid_iso(E, args.max_len).to_json()


def _trace_report(G, mu, args):
    inv = is_invariant_mean(mu, G, max_arrows=min(args.max_arrows, DEFAULT_MAX_BISECTION_ARROWS))
    out = {"mean": mu.to_json(), "invariant": inv.invariant,
           "invariance_by_bisections": inv.by_bisections, "invariance_by_orbits": inv.by_orbits}
    if inv.certificate:
        out["invariance_certificate"] = inv.certificate
    tau = trace_from_mean(mu, G, check=False)
    rep = verify_trace(tau, n_random=args.samples, seed=args.seed)
    out["trace"] = rep.to_json()
    if rep.is_trace:
        spanning = "bisections" if G.n_arrows <= args.max_arrows else "arrows"
        c = contractivity_check(tau, spanning=spanning, seed=args.seed, max_arrows=args.max_arrows)
        out["contractivity"] = {"holds": c.holds, "spanning": spanning,
                                "elements": c.checked_elements, "sampled_pairs": c.sampled_pairs,
                                "exact_form_test": True}
        if c.certificate:
            out["contractivity"]["certificate"] = c.certificate
    return out


def cmd_trace_build(args, inp):
    G = _groupoid(inp.read(args.file), args)
    if args.mean == "canonical":
        mu = canonical_mean(G)
    else:
        mu = InvariantMean.from_json(inp.read(args.mean), G.n_objects)
    return _trace_report(G, mu, args)


def cmd_trace_verify(args, inp):
    G = _groupoid(inp.read(args.file), args)
    mu = InvariantMean.from_json(inp.read(args.trace), G.n_objects)
    return _trace_report(G, mu, args)


def cmd_norm_ell1(args, inp):
    data = inp.read(args.file)
    if "algebra" not in data:
        raise InputError("element JSON needs an 'algebra' entry (groupoid file or inline groupoid)")
    G = _groupoid(inp.resolve(data["algebra"], args.file), args)
    _gate_arrows(G, args.max_arrows)
    a = element_from_json(groupoid_algebra(G), data)
    b = ell1_bounds(a, max_arrows=args.max_arrows)
    out = {"exact": b.exact, "sup_norm_sq": sup_norm_sq(a)}
    if b.exact:
        out["ell1"] = b.lower
        out["ell1_sq"] = b.lower * b.lower
        rep = ell1_representation(a, max_arrows=args.max_arrows)
        out["representation"] = [[[G.labels[g] for g in sorted(U)], c]
                                 for U, c in sorted(rep.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    else:
        out["ell1_lower"] = b.lower
        out["ell1_upper"] = b.upper
    return out


def cmd_schutz(args, inp):
    S = _semigroup(inp.read(args.file), args)
    out = appendix_verdict(S).to_json(S)
    if args.idempotent is not None:
        rep = schutzenberger_rep(S, args.idempotent)
        out["representation"] = rep.to_json()
        out["kernel_checks"] = kernel_check_sweep(rep, n_random=args.samples, seed=args.seed)
    return out


def _witness_elements(data, inp, path, args):
    alg = data.get("algebra")
    if not isinstance(alg, dict) or len(alg) != 1:
        raise InputError("witness 'algebra' must be one of {semigroup: ...}, {groupoid: ...}, {graph: ...}")
    (kind, ref), = alg.items()
    source = inp.resolve(ref, path)
    if kind == "graph":
        E = DirectedGraph.from_json(source)
        ctx = CohnContext(E, source.get("gamma"))
        return [ctx.parse(data[k]) for k in ("e", "a", "b")]
    if kind == "semigroup":
        A = semigroup_algebra(_semigroup(source, args))
    elif kind == "groupoid":
        A = groupoid_algebra(_groupoid(source, args))
    else:
        raise InputError(f"unknown algebra kind {kind!r}")
    return [element_from_json(A, data[k]) for k in ("e", "a", "b")]


def cmd_algebra_witness(args, inp):
    data = inp.read(args.file)
    e, a, b = _witness_elements(data, inp, args.file, args)
    return witness_check(e, a, b).to_json()


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized sampling")
    common.add_argument("--samples", type=int, default=1000, help="random elements per sampled check")
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, help="semigroup size gate")
    common.add_argument("--max-arrows", type=int, default=DEFAULT_MAX_LP_ARROWS,
                        help="arrow gate for bisection enumeration and the l1 LP")
    common.add_argument("--max-len", type=int, default=4, help="path length bound for graph commands")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-determinism)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="finitude", description="Exact finiteness checks for semigroup, groupoid and path algebras.")
    p.add_argument("--version", action="version", version=f"finitude {__version__}")
    areas = p.add_subparsers(dest="area", required=True)

    def add(sub, name, func, help_, files=("file",)):
        q = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            q.add_argument(f)
        q.set_defaults(func=func)
        return q

    sg = areas.add_parser("semigroup", help="finite semigroups").add_subparsers(dest="command", required=True)
    add(sg, "analyze", cmd_semigroup_analyze, "Green structure and maximal subgroups")
    add(sg, "groupoid", cmd_semigroup_groupoid, "universal groupoid of an inverse semigroup")
    add(sg, "verify-iso", cmd_verify_iso, "check KS = KG(S) exhaustively")

    gr = areas.add_parser("graph", help="directed graphs and path algebras").add_subparsers(dest="command", required=True)
    add(gr, "analyze", cmd_graph_analyze, "no-exit test and stable finiteness verdict")
    add(gr, "cohn", cmd_graph_cohn, "normal-form monomials of the relative Cohn algebra")
    add(gr, "groupoid", cmd_graph_groupoid, "path groupoid of a no-exit graph")
    add(gr, "verify-iso", cmd_graph_verify_iso, "check the Cohn algebra against the path groupoid algebra")

    tr = areas.add_parser("trace", help="means and traces on groupoid algebras").add_subparsers(dest="command", required=True)
    b = add(tr, "build", cmd_trace_build, "trace from a mean, with the full verification report")
    b.add_argument("--mean", default="canonical", help="'canonical' or a weights JSON file")
    add(tr, "verify", cmd_trace_verify, "verify a trace given by weights", files=("file", "trace"))

    nm = areas.add_parser("norm", help="seminorms").add_subparsers(dest="command", required=True)
    add(nm, "ell1", cmd_norm_ell1, "exact l1 seminorm by linear programming")

    sz = areas.add_parser("schutz", parents=[common], help="Schutzenberger representations")
    sz.add_argument("file")
    sz.add_argument("--idempotent", help="label of an idempotent whose representation is reported")
    sz.set_defaults(func=cmd_schutz, command=None)

    al = areas.add_parser("algebra", help="algebra-level checks").add_subparsers(dest="command", required=True)
    add(al, "verify-iso", cmd_verify_iso, "check KS = KG(S) exhaustively")
    add(al, "witness", cmd_algebra_witness, "check a Dedekind-infiniteness witness")
    return p


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    inp = _Inputs()
    start = time.perf_counter()
    report = {"command": ["finitude"] + argv}
    try:
        result = args.func(args, inp)
        code = 0
        report["status"] = "ok"
        report["result"] = result
    except VerificationError as exc:
        code = 1
        report["status"] = "verification_failed"
        report["error"] = str(exc)
    except (InputError, ValueError, KeyError, TypeError, OSError) as exc:
        code = 2
        report["status"] = "input_rejected"
        report["error"] = f"{type(exc).__name__}: {exc}"
    except FinitudeError as exc:
        code = 2
        report["status"] = "input_rejected"
        report["error"] = str(exc)
    report["input_sha256"] = inp.digest.hexdigest()
    report["seed"] = args.seed
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    text = dumps(report)
    if args.output and code == 0:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        print(f"finitude: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
