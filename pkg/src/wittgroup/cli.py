"""Command-line front end: ``wittgroup <command> ...`` with JSON (or CSV/text) reports.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import CapExceeded, CocycleInvalid, ParseError, SizeExceeded, UnsupportedSize, WittGroupError
from .galois_ring import parse_ring

SCHEMA = 1


# ---------------------------------------------------------------------------
# spec parsing


@dataclass(frozen=True)
class GroupSpec:
    n: int
    ring_text: str

    @property
    def ring(self):
        return parse_ring(self.ring_text)


@dataclass(frozen=True)
class ModuleSpec:
    kind: str  # m, m0, s, v or trivial
    dim: int = 1
    power: int = 1


_GROUP_RE = re.compile(r"sl(\d+):(.+)$")
_MODULE_RE = re.compile(r"(m0|m|s|v|trivial:(\d+))(?:\^(\d+))?$")


def parse_spec(text: str):
    """Ring (``gr:p,m,d``, ``dual:p,d``, ``zmod:N``, ``gf:p,d``), group ``sl<n>:<ring>`` or module spec."""
    t = text.strip().lower()
    m = _GROUP_RE.match(t)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError("matrix size must be positive", position=2)
        try:
            parse_ring(m.group(2))
        except ParseError as e:
            raise ParseError(e.message, position=m.start(2) + (e.position or 0)) from None
        return GroupSpec(n, m.group(2))
    if t.startswith(("gr:", "dual:", "zmod:", "gf:")):
        return parse_ring(t)
    m = _MODULE_RE.match(t)
    if m:
        kind = "trivial" if m.group(2) else m.group(1)
        return ModuleSpec(kind, int(m.group(2) or 1), int(m.group(3) or 1))
    pos = next((i for i, (a, b) in enumerate(zip(t, "sl")) if a != b), min(len(t), 2))
    raise ParseError(f"cannot parse spec {text!r}", position=pos)


def build_module(G, spec: ModuleSpec):
    from .gmodule import MatrixModules, direct_power, trivial_module

    if spec.kind == "trivial":
        M = trivial_module(G, G.ring.p, dim=spec.dim)
    else:
        M = MatrixModules(G).get({"m": "M", "m0": "M0", "s": "S", "v": "V"}[spec.kind])
    return direct_power(M, spec.power) if spec.power > 1 else M


def _group(text, cap):
    from .matgroup import sl_group

    spec = parse_spec(text)
    if not isinstance(spec, GroupSpec):
        raise ParseError(f"expected a group spec sl<n>:<ring>, got {text!r}", position=0)
    return sl_group(spec.n, spec.ring, cap=cap)


def _module_spec(text):
    spec = parse_spec(text)
    if not isinstance(spec, ModuleSpec):
        raise ParseError(f"expected a module spec, got {text!r}", position=0)
    return spec


# ---------------------------------------------------------------------------
# commands; each returns a list of records plus an optional payload


def _field(text):
    ring = parse_ring(text)
    if ring.size != ring.residue_field.size:
        raise ParseError(f"{text!r} is not a field", position=0)
    return ring.residue_field


def _rec(name, anchor, expected, computed, ok=None):
    from .suites import record

    return record(name, anchor, expected, computed, ok)


def cmd_group_order(args):
    from .galois_ring import GaloisRing, gr_create
    from .matgroup import sl_group

    ring = parse_ring(args.ring)
    G = sl_group(args.n, ring, cap=args.cap)
    layers = []
    if isinstance(ring, GaloisRing):
        prev = 1
        for j in range(1, ring.m + 1):
            size = len(sl_group(args.n, gr_create(ring.p, j, ring.d), cap=args.cap))
            layers.append(round(np.log(size // prev) / np.log(ring.p)) if j > 1 else None)
            prev = size
        layers = layers[1:]
    payload = {"order": len(G), "generator_count": len(G.generators), "kernel_dims_by_layer": layers}
    return [_rec(f"|SL_{args.n}({args.ring})|", "group order", None, len(G), ok=True)], payload


def cmd_module_classify(args):
    from .gmodule import MatrixModules, classify_submodules
    from .matgroup import sl_group

    k = _field(args.k)
    r = classify_submodules(MatrixModules(sl_group(args.n, k)))
    payload = {"dims": r["dims"], "submodule_count": r["submodule_count"], "lemma_holds": r["lemma_holds"]}
    if r.get("witness") is not None:
        payload["witness"] = r["witness"]
    ok = r["lemma_holds"] or not r["lemma_applies"]
    return [_rec("submodule classification", "submodules of M_0", True, ok)], payload


def cmd_cohomology(args):
    from .cohomology import h1, h2

    G = _group(args.group, args.cap)
    M = build_module(G, _module_spec(args.module))
    H = h1(M) if args.degree == "h1" else h2(M)
    payload = H.summary()
    payload["field_degree"] = M.field_degree
    if args.basis:
        payload["basis"] = H.basis.tolist()
    return [_rec(f"{args.degree} of {args.module} over {args.group}", "cohomology", None, H.dim_H, ok=True)], payload


def _extension(args):
    from .extensions import matrix_extension, quotient_extension
    from .galois_ring import surjection
    from .gmodule import MatrixModules
    from .matgroup import sl_group

    a_text, sep, b_text = args.ext.partition("->")
    if not sep:
        raise ParseError("extension spec must look like <ringA>-><ringB>", position=len(args.ext))
    pi = surjection(parse_ring(a_text), parse_ring(b_text))
    G = sl_group(args.n, pi.target, cap=args.cap)
    ext = matrix_extension(G, pi, "M" if args.kernel == "m" else "M0", MatrixModules(G))
    return quotient_extension(ext) if args.kernel == "v" else ext


def cmd_extension_split(args):
    from .cohomology import split_check

    E = _extension(args)
    r = split_check(E, seed=args.seed, brute_force=not args.no_brute_force)
    payload = r.to_json()
    return [_rec(f"split-check {args.ext} kernel {args.kernel}", "extension splitting", None, payload["verdict"],
                 ok=True)], payload


def _read_cocycle(path, G, M):
    from .cohomology import Cocycle2

    with open(path) as fh:
        header = fh.readline().split()
        vals = np.array([int(t) for t in fh.read().split()], dtype=np.int64)
    order, D, p = (int(h) for h in header)
    if (order, D, p) != (len(G), M.dim, M.p) or vals.size != order * order * D:
        raise ParseError("cocycle header does not match the group and module", position=0)
    table = vals.reshape(order, order, D) % p
    x = Cocycle2.from_function(M, lambda g, h: table[g, h], check=True)
    if not np.array_equal(x.table, table):
        raise CocycleInvalid("cocycle table is not determined by its generator values")
    return x


def _write_cocycle(path, x):
    tab = x.table
    with open(path, "w") as fh:
        fh.write(f"{tab.shape[0]} {tab.shape[2]} {x.module.p}\n")
        fh.write(" ".join(str(int(v)) for v in tab.reshape(-1)))
        fh.write("\n")


def cmd_extension_build(args):
    from .cohomology import extension_cocycle, h2
    from .extensions import TwistedProduct, matrix_extension
    from .galois_ring import gr_create, surjection
    from .gmodule import MatrixModules

    G = _group(args.group, args.cap)
    spec = _module_spec(args.module)
    M = build_module(G, spec)
    if args.cocycle == "derived":
        k = G.ring
        if spec.kind != "m0" or spec.power != 1 or k.size != k.residue_field.size:
            raise ParseError("derived cocycles exist for m0 over a field", position=0)
        A = gr_create(k.p, 2, k.residue_field.d)
        mods = MatrixModules(G)
        x = extension_cocycle(matrix_extension(G, surjection(A, k), "M0", mods))
        M = mods.M0
    else:
        x = _read_cocycle(args.cocycle, G, M)
    T = TwistedProduct(x)
    E = T.as_group()
    H = h2(M)
    payload = {"order": len(E), "expected_order": T.order, "class_coords": H.class_coords(x).tolist(),
               "h2_dim": H.dim_H}
    if args.dump_cocycle:
        _write_cocycle(args.dump_cocycle, x)
    return [_rec("twisted product order", "M x_x G has order |M||G|", T.order, len(E))], payload


def cmd_verify_theorem(args):
    from . import structure_theorem as st
    from .galois_ring import surjection
    from .gmodule import MatrixModules
    from .matgroup import sl_group

    pi = surjection(parse_ring(args.ring_a), parse_ring(args.ring_b))
    G = sl_group(args.n, pi.target, cap=args.cap)
    mods = MatrixModules(G)
    certs, fails = [], 0
    for t in range(args.trials):
        inst = st.perturbed_lift_instance(pi, n=args.n, seed=args.seed * 1000 + t)
        cert = st.verify_main_theorem(inst, mods=mods, base=G)
        fails += not cert.ok
        certs.append(cert.to_json())
    rec = _rec(f"{args.trials} instances {args.ring_a} -> {args.ring_b}, n={args.n}",
               "u H u^-1 contains SL_n(W_A) for some u with pi(u) = I", 0, fails)
    return [rec], {"certificates": certs if args.trials <= 5 else certs[:5], "failures": fails}


def cmd_counterexample(args):
    from . import structure_theorem as st

    r = st.counterexample_f5()
    return [_rec("F_5 obstruction", "the main theorem fails for n = 2, k = F_5", True, r["pass"])], r


def cmd_nonsplit(args):
    from .suites import nonsplit

    return nonsplit(), None


def cmd_formula1(args):
    from . import structure_theorem as st

    k = _field(args.k)
    cfg = [(args.n, (k.p, k.d), args.m)]
    out = st.formula1_suite(trials=args.trials, seed=args.seed, configs=cfg)
    return [_rec(f"power formula n={r['n']} k={r['k']} m={r['m']}", "the p^m-th power formula", r["trials"],
                 r["passed"]) for r in out], None


def cmd_suite(args):
    from .suites import run_suite

    return run_suite(args.name), None


# ---------------------------------------------------------------------------
# plumbing


def build_parser():
    def common(parser, suppress):
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        parser.add_argument("--format", choices=["json", "csv", "text"], **(kw or {"default": "json"}))
        parser.add_argument("--output", help="write the report here instead of stdout", **kw)
        parser.add_argument("--seed", type=int, **(kw or {"default": 7}))
        parser.add_argument("--cap", type=int, help="override the group enumeration cap", **kw)
        parser.add_argument("--compare", action="store_true", help="omit the timestamp field (for byte comparison)",
                            **kw)

    shared = argparse.ArgumentParser(add_help=False)
    common(shared, True)
    p = argparse.ArgumentParser(prog="wittgroup", description=__doc__.splitlines()[0])
    common(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(subs, *a, **k):
        return subs.add_parser(*a, parents=[shared], **k)

    g = add_parser(sub, "group", help="matrix group facts").add_subparsers(dest="action", required=True)
    go = add_parser(g, "order", help="order of SL_n(ring)")
    go.add_argument("--ring", required=True)
    go.add_argument("--n", type=int, default=2)
    go.set_defaults(fn=cmd_group_order)

    m = add_parser(sub, "module", help="module operations").add_subparsers(dest="action", required=True)
    mc = add_parser(m, "classify", help="submodules of M_0(k)")
    mc.add_argument("--n", type=int, default=2)
    mc.add_argument("--k", required=True)
    mc.set_defaults(fn=cmd_module_classify)

    c = add_parser(sub, "cohomology", help="H^1 / H^2 dimensions")
    c.add_argument("degree", choices=["h1", "h2"])
    c.add_argument("--group", required=True)
    c.add_argument("--module", required=True)
    c.add_argument("--basis", action="store_true")
    c.set_defaults(fn=cmd_cohomology)

    e = add_parser(sub, "extension", help="extensions").add_subparsers(dest="action", required=True)
    es = add_parser(e, "split-check", help="Split/NonSplit for SL_n(A) -> SL_n(B)")
    es.add_argument("--ext", required=True, help="<ringA>-><ringB>, e.g. gr:2,2,2->gf:2,2")
    es.add_argument("--n", type=int, default=2)
    es.add_argument("--kernel", choices=["m0", "m", "v"], default="m0")
    es.add_argument("--no-brute-force", action="store_true")
    es.set_defaults(fn=cmd_extension_split)
    eb = add_parser(e, "build", help="twisted product M x_x G from a cocycle")
    eb.add_argument("--module", required=True)
    eb.add_argument("--group", required=True)
    eb.add_argument("--cocycle", default="derived", help="file with header '|G| D p' and x(g,h) values, or 'derived'")
    eb.add_argument("--dump-cocycle", help="write the cocycle in file format")
    eb.set_defaults(fn=cmd_extension_build)

    v = add_parser(sub, "verify-theorem", help="conjugate perturbed-lift subgroups onto SL_n(W_A)")
    v.add_argument("--ring-a", required=True)
    v.add_argument("--ring-b", required=True)
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--trials", type=int, default=100)
    v.set_defaults(fn=cmd_verify_theorem)

    ce = add_parser(sub, "counterexample", help="the F_5 counterexample")
    ce.add_argument("which", choices=["f5"])
    ce.set_defaults(fn=cmd_counterexample)

    ns = add_parser(sub, "nonsplit-suite", help="non-splitting checks")
    ns.set_defaults(fn=cmd_nonsplit)

    f = add_parser(sub, "formula1", help="the p^m-th power formula against literal multiplication")
    f.add_argument("--n", type=int, default=2)
    f.add_argument("--k", required=True)
    f.add_argument("--m", type=int, default=1)
    f.add_argument("--trials", type=int, default=100)
    f.set_defaults(fn=cmd_formula1)

    s = add_parser(sub, "suite", help="run a named batch of checks")
    s.add_argument("name", choices=["paper-tables", "nonsplit", "theorem", "counterexamples", "all"])
    s.set_defaults(fn=cmd_suite)
    return p


def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    return o


def render(report, fmt):
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["name", "paper_anchor", "expected", "computed", "pass"])
        for r in report["records"]:
            w.writerow([r["name"], r["paper_anchor"], json.dumps(_jsonable(r["expected"])),
                        json.dumps(_jsonable(r["computed"])), r["pass"]])
        return buf.getvalue()
    lines = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}: expected {r['expected']}, computed {r['computed']}"
             + ("" if r["pass"] else f"  [{r['paper_anchor']}]") for r in report["records"]]
    return "\n".join(lines) + "\n"


def _command_echo(argv):
    """The invocation minus the output destination, so reports differ only by content."""
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
        elif tok == "--output":
            skip = True
        elif not tok.startswith("--output="):
            out.append(tok)
    return out


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.cap is None:
        from .matgroup import DEFAULT_CAP

        args.cap = DEFAULT_CAP
    started = time.time()
    try:
        records, payload = args.fn(args)
        code = 0 if all(r["pass"] for r in records) else 1
    except ParseError as e:
        print(f"wittgroup: {e}", file=sys.stderr)
        return 2
    except (CapExceeded, SizeExceeded, UnsupportedSize) as e:
        print(f"wittgroup: resource cap: {e}", file=sys.stderr)
        return 3
    except (WittGroupError, ValueError) as e:
        print(f"wittgroup: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, "version": __version__, "command": _command_echo(argv), "seed": args.seed,
              "records": records, "pass": code == 0}
    if payload is not None:
        report["result"] = payload
    if not args.compare:
        report["timestamp"] = {"started": datetime.fromtimestamp(started, timezone.utc).isoformat(),
                               "wall_time_s": round(time.time() - started, 3)}
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
