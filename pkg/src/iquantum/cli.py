"""Command line front end: JSON config ingestion and subcommand dispatch.

A config is a JSON document::

    {
      "nodes": ["1", "2"],
      "cartan": [[2, -1], [-1, 2]],
      "d": [1, 1],
      "tau": {"1": "2", "2": "1"},
      "varsigma": {"1": 1, "2": 0},
      "orientation": {"1 2": 1},            # optional, arrow counts
      "weights": {"L0": {"lam": {}, "parity": {}}},
      "sign_convention": "body",            # optional, "body" or "intro"
      "N": 20                               # optional truncation order
    }

Words on the command line are whitespace-separated node names with an
optional divided-power suffix, e.g. ``"1^(2) 2"``.  --config takes a file
path or one of the built-in names (split_a1, diag_a1a1, qs_a2, qs_a3,
split_a2).  Exit codes: 0 all checks passed, 1 a computed mismatch,
2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import iuea, klr, selftest, shapes
from .qring import RatQ, qfact
from .satake import (
    IWeight,
    SatakeDatum,
    format_dpword,
    make_datum,
    make_iweight,
    parse_dpword,
    to_word,
    validate,
)


class ConfigError(Exception):
    """A schema or invariant violation, located by a dotted field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"config error at {path}: {message}" if path else f"config error: {message}")


@dataclass
class Config:
    datum: SatakeDatum
    weights: dict[str, IWeight]
    orientation: dict[tuple[str, str], int] | None
    sign_convention: str
    order: int
    warnings: tuple[str, ...]


_TOP_KEYS = {"nodes", "cartan", "d", "tau", "varsigma", "orientation", "weights", "sign_convention", "N"}


def _need(obj, key, kind, path):
    if key not in obj:
        raise ConfigError(path, f"missing required key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise ConfigError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return val


def _node_map(obj, nodes, path, kind):
    out = {}
    for k, v in obj.items():
        if k not in nodes:
            raise ConfigError(f"{path}.{k}", "not a declared node")
        if not isinstance(v, kind) or isinstance(v, bool):
            raise ConfigError(f"{path}.{k}", f"expected {kind.__name__}")
        out[k] = v
    return out


def parse_config(text: str) -> Config:
    """Parse and validate a JSON config; errors carry dotted field paths."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("", "top level must be an object")
    for key in raw:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown key")

    nodes_raw = _need(raw, "nodes", list, "")
    if not nodes_raw:
        raise ConfigError("nodes", "must not be empty")
    nodes = []
    for k, n in enumerate(nodes_raw):
        if not isinstance(n, str) or not n:
            raise ConfigError(f"nodes[{k}]", "node names are nonempty strings")
        if n in nodes:
            raise ConfigError(f"nodes[{k}]", f"duplicate node {n!r}")
        nodes.append(n)

    cartan = _need(raw, "cartan", list, "")
    if len(cartan) != len(nodes):
        raise ConfigError("cartan", f"need {len(nodes)} rows")
    for r, row in enumerate(cartan):
        if not isinstance(row, list) or len(row) != len(nodes):
            raise ConfigError(f"cartan[{r}]", f"need a row of {len(nodes)} integers")
        for c, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"cartan[{r}][{c}]", "expected int")

    d = _need(raw, "d", list, "")
    if len(d) != len(nodes) or any(not isinstance(v, int) or isinstance(v, bool) for v in d):
        raise ConfigError("d", f"need {len(nodes)} integers")

    tau = _node_map(_need(raw, "tau", dict, ""), nodes, "tau", str)
    for i in nodes:
        if i not in tau:
            raise ConfigError(f"tau.{i}", "missing entry")
        if tau[i] not in nodes:
            raise ConfigError(f"tau.{i}", f"{tau[i]!r} is not a declared node")
    varsigma = _node_map(_need(raw, "varsigma", dict, ""), nodes, "varsigma", int)
    for i in nodes:
        if i not in varsigma:
            raise ConfigError(f"varsigma.{i}", "missing entry")

    orientation = None
    if "orientation" in raw:
        if not isinstance(raw["orientation"], dict):
            raise ConfigError("orientation", "expected object")
        orientation = {}
        for key, count in raw["orientation"].items():
            parts = key.split()
            if len(parts) != 2 or parts[0] not in nodes or parts[1] not in nodes:
                raise ConfigError(f"orientation.{key}", 'keys are "i j" node pairs')
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ConfigError(f"orientation.{key}", "arrow count must be a nonnegative int")
            orientation[(parts[0], parts[1])] = count

    convention = raw.get("sign_convention", "body")
    if convention not in ("body", "intro"):
        raise ConfigError("sign_convention", 'must be "body" or "intro"')
    order = raw.get("N", 20)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ConfigError("N", "truncation order must be a positive int")

    try:
        datum = make_datum(nodes, cartan, d, tau, varsigma)
    except (ValueError, TypeError) as exc:
        raise ConfigError("datum", str(exc)) from None
    diags = validate(datum)
    problems = [m for m in diags if not m.startswith("warning:")]
    if problems:
        raise ConfigError("datum", "; ".join(problems))

    weights_raw = _need(raw, "weights", dict, "")
    weights = {}
    for name, entry in weights_raw.items():
        path = f"weights.{name}"
        if not isinstance(entry, dict) or set(entry) - {"lam", "parity"}:
            raise ConfigError(path, 'expected an object with keys "lam" and "parity"')
        lam = _node_map(entry.get("lam", {}), nodes, f"{path}.lam", int)
        par = _node_map(entry.get("parity", {}), nodes, f"{path}.parity", int)
        try:
            weights[name] = make_iweight(datum, lam, par)
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None

    return Config(
        datum=datum,
        weights=weights,
        orientation=orientation,
        sign_convention=convention,
        order=order,
        warnings=tuple(m for m in diags if m.startswith("warning:")),
    )


def _builtin_config(name: str) -> str | None:
    base = {
        "split_a1": dict(
            nodes=["1"], cartan=[[2]], d=[1], tau={"1": "1"}, varsigma={"1": -1}
        ),
        "diag_a1a1": dict(
            nodes=["1", "2"], cartan=[[2, 0], [0, 2]], d=[1, 1],
            tau={"1": "2", "2": "1"}, varsigma={"1": 0, "2": 0},
        ),
        "qs_a2": dict(
            nodes=["1", "2"], cartan=[[2, -1], [-1, 2]], d=[1, 1],
            tau={"1": "2", "2": "1"}, varsigma={"1": 1, "2": 0},
        ),
        "qs_a3": dict(
            nodes=["1", "2", "3"],
            cartan=[[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
            d=[1, 1, 1],
            tau={"1": "3", "2": "2", "3": "1"},
            varsigma={"1": 0, "2": -1, "3": 0},
            sign_convention="intro",
        ),
        "split_a2": dict(
            nodes=["1", "2"], cartan=[[2, -1], [-1, 2]], d=[1, 1],
            tau={"1": "1", "2": "2"}, varsigma={"1": -1, "2": -1},
        ),
    }.get(name)
    if base is None:
        return None
    tau = base["tau"]
    fixed = [i for i in base["nodes"] if tau[i] == i]
    reps = [i for i in base["nodes"] if tau[i] != i and i <= tau[i]]
    base["weights"] = {
        "L0": {"lam": {}, "parity": {i: 0 for i in fixed}},
        "L1": {"lam": {i: 1 for i in reps}, "parity": {i: 1 for i in fixed}},
    }
    return json.dumps(base)


def load_config(arg: str) -> Config:
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except FileNotFoundError:
        builtin = _builtin_config(arg)
        if builtin is None:
            raise ConfigError(
                "", f"{arg!r} is neither a readable file nor a built-in config name"
            ) from None
        return parse_config(builtin)
    except OSError as exc:
        raise ConfigError("", f"cannot read {arg!r}: {exc}") from None


def _weight(cfg: Config, name: str) -> IWeight:
    if name not in cfg.weights:
        raise ConfigError(f"weights.{name}", "no weight of that name in the config")
    return cfg.weights[name]


def _fmt_iweight(lw: IWeight) -> str:
    parts = [f"{i}={v}" for i, v in lw.lam] + [f"par({i})={p}" for i, p in lw.par]
    return "{" + ", ".join(parts) + "}" if parts else "{zero}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _pair_normalizer(datum: SatakeDatum, dp) -> RatQ:
    """Product of the q-factorials that relate a divided-power word to its
    plain expansion.  Only defined away from involution-fixed nodes; the
    factorials are bar-invariant, so the correction is the same on either
    side of the sesquilinear pairing."""
    c = RatQ.one()
    for i, n in dp:
        if n > 1:
            if datum.tau[i] == i:
                raise ValueError(
                    f"the shape route needs plain letters at the involution-fixed "
                    f"node {i!r}; rewrite {i}^({n}) without a suffix"
                )
            c = c * RatQ.from_laurent(qfact(n, datum.qi(i)))
    return c


def _cmd_pair(cfg: Config, args) -> int:
    datum = cfg.datum
    dp_i = parse_dpword(args.i, datum)
    dp_j = parse_dpword(args.j, datum)
    lw = _weight(cfg, args.lam)
    norm = _pair_normalizer(datum, dp_i) * _pair_normalizer(datum, dp_j)
    shape_val = shapes.pair_b(datum, to_word(dp_i), to_word(dp_j), lw) / norm
    rec_val = iuea.ipair(
        datum, iuea.b_word(datum, dp_i, lw), iuea.b_word(datum, dp_j, lw)
    )
    match = shape_val == rec_val
    if args.json:
        _emit(
            {
                "i": format_dpword(dp_i),
                "j": format_dpword(dp_j),
                "lambda": args.lam,
                "shape_sum": str(shape_val),
                "recursion": str(rec_val),
                "match": match,
            }
        )
    else:
        print(f"i = {format_dpword(dp_i)}")
        print(f"j = {format_dpword(dp_j)}")
        print(f"shape sum = {shape_val}")
        print(f"recursion = {rec_val}")
        print(f"match = {_fmt_bool(match)}")
    return 0 if match else 1


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if not m:
        raise ConfigError("", f"range must look like -3..3, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConfigError("", f"empty range {text!r}")
    return lo, hi


def _cmd_iserre(cfg: Config, args) -> int:
    datum = cfg.datum
    if args.all:
        jobs = [(i, j) for i in datum.nodes for j in datum.nodes if i != j]
    else:
        if not args.i or not args.j:
            raise ConfigError("", "iserre needs --all or both --i and --j")
        for n in (args.i, args.j):
            if n not in datum.nodes:
                raise ConfigError("", f"unknown node {n!r}")
        jobs = [(args.i, args.j)]
    if args.lambda_range:
        lo, hi = _parse_range(args.lambda_range)
        sweep = selftest.weight_sweep(datum, lo, hi)
    elif args.lam:
        sweep = [_weight(cfg, args.lam)]
    else:
        raise ConfigError("", "iserre needs --lambda NAME or --lambda-range LO..HI")
    rows = []
    ok_all = True
    for i, j in jobs:
        for lw in sweep:
            res = iuea.iserre_check(datum, i, j, lw)
            ok_all = ok_all and res.equal
            rows.append((i, j, lw, res.equal))
    if args.json:
        _emit(
            {
                "rows": [
                    {"i": i, "j": j, "lambda": _fmt_iweight(lw), "equal": eq}
                    for i, j, lw, eq in rows
                ],
                "all_equal": ok_all,
            }
        )
    else:
        for i, j, lw, eq in rows:
            print(f"i={i} j={j} lambda={_fmt_iweight(lw)} equal={_fmt_bool(eq)}")
        print(f"all equal = {_fmt_bool(ok_all)}")
    return 0 if ok_all else 1


def _cmd_bkl(cfg: Config, args) -> int:
    datum = cfg.datum
    i = args.i
    if i not in datum.nodes:
        raise ConfigError("", f"unknown node {i!r}")
    if datum.tau[i] == i:
        raise ConfigError("", f"node {i!r} is fixed by the involution; pick a moved node")
    lw = _weight(cfg, args.lam)
    m = 1 - datum.a[(i, datum.tau[i])]
    coeffs = [(n, iuea.f_coeff(datum, n, m, i, lw)) for n in range(m + 1)]
    total = iuea.bkl_sum(datum, i, lw)
    closed = selftest.bkl_product_form(datum, i, lw)
    match = total == closed
    if args.json:
        _emit(
            {
                "i": i,
                "lambda": args.lam,
                "m": m,
                "f": [{"n": n, "value": str(v)} for n, v in coeffs],
                "alternating_sum": str(total),
                "product_form": str(closed),
                "match": match,
            }
        )
    else:
        for n, v in coeffs:
            print(f"f[{n},{m}] = {v}")
        print(f"alternating sum = {total}")
        print(f"product form = {closed}")
        print(f"match = {_fmt_bool(match)}")
    return 0 if match else 1


def _cmd_grdim(cfg: Config, args) -> int:
    datum = cfg.datum
    order = args.N if args.N is not None else cfg.order
    if args.end:
        series = shapes.end_grdim(datum, order)
        if args.json:
            _emit({"end_series": str(series), "order": order})
        else:
            print(f"end series = {series}")
        return 0
    if args.lam is None:
        raise ConfigError("", "grdim needs --lambda NAME (or --end)")
    lw = _weight(cfg, args.lam)
    top = to_word(parse_dpword(args.i, datum))
    bottom = to_word(parse_dpword(args.j, datum))
    try:
        series = shapes.hom_rank(datum, top, bottom, lw, order)
    except ValueError as exc:
        print(f"rank series rejected: {exc}", file=sys.stderr)
        return 1
    if args.json:
        _emit(
            {
                "i": " ".join(top),
                "j": " ".join(bottom),
                "lambda": args.lam,
                "order": order,
                "series": str(series),
            }
        )
    else:
        print(f"rank series = {series}")
    return 0


def _fmt_arcs(arcs) -> str:
    return " ".join(f"{p}:{q}" for p, q in arcs) if arcs else "-"


def _cmd_shapes(cfg: Config, args) -> int:
    datum = cfg.datum
    top = to_word(parse_dpword(args.i, datum))
    bottom = to_word(parse_dpword(args.j, datum))
    lw = _weight(cfg, args.lam)
    found = shapes.enumerate_shapes(datum, top, bottom, args.mode)
    rows = [
        (sh, shapes.degree(datum, sh, lw))
        for sh in sorted(found, key=lambda s: (s.cups, s.caps, s.props))
    ]
    if args.json:
        _emit(
            {
                "count": len(rows),
                "shapes": [
                    {
                        "cups": [list(a) for a in sh.cups],
                        "caps": [list(a) for a in sh.caps],
                        "props": [list(a) for a in sh.props],
                        "degree": deg,
                    }
                    for sh, deg in rows
                ],
            }
        )
    else:
        for k, (sh, deg) in enumerate(rows):
            print(
                f"[{k}] cups={_fmt_arcs(sh.cups)} caps={_fmt_arcs(sh.caps)} "
                f"props={_fmt_arcs(sh.props)} degree={deg}"
            )
        print(f"count = {len(rows)}")
    return 0


def _parse_klr_expr(text: str, qt) -> klr.KLRElem:
    """Parse 'e(1 2) ; x1 ; s1' style products, multiplying downward."""
    factors = [f.strip() for f in text.split(";")]
    head = re.fullmatch(r"e\(([^)]*)\)", factors[0]) if factors else None
    if head is None:
        raise ValueError("expression must start with an idempotent e(word)")
    word = tuple(head.group(1).split())
    for tok in word:
        if tok not in qt.datum.nodes:
            raise ValueError(f"unknown node {tok!r} in e(...)")
    cur = klr.e(word)
    for tok in factors[1:]:
        m = re.fullmatch(r"e\(([^)]*)\)", tok)
        if m:
            nxt = klr.e(tuple(m.group(1).split()))
        elif re.fullmatch(r"x\d+", tok):
            cur_word = cur.bottom
            nxt = klr.dot(cur_word, int(tok[1:]))
        elif re.fullmatch(r"s\d+", tok):
            r = int(tok[1:])
            w2 = list(cur.bottom)
            if not 1 <= r <= len(w2) - 1:
                raise ValueError(f"crossing position {r} outside word of length {len(w2)}")
            w2[r - 1], w2[r] = w2[r], w2[r - 1]
            nxt = klr.crossing(tuple(w2), r)
        else:
            raise ValueError(f"unrecognized factor {tok!r}; use e(word), xK, or sK")
        cur = klr.mul(qt, cur, nxt)
    return cur


def _cmd_klr(cfg: Config, args) -> int:
    qt = klr.geometric_qtable(
        cfg.datum, orientation=cfg.orientation, sign_convention=cfg.sign_convention
    )
    elem = _parse_klr_expr(args.expr, qt)
    degs = sorted(elem.degrees(cfg.datum))
    if args.json:
        terms = [
            {"perm": list(b.perm), "dots": list(b.dots), "coeff": c}
            for b, c in sorted(elem.terms.items(), key=lambda it: (it[0].perm, it[0].dots))
        ]
        _emit(
            {
                "top": list(elem.top),
                "bottom": list(elem.bottom),
                "terms": terms,
                "degrees": degs,
            }
        )
    else:
        print(f"top = {' '.join(elem.top) or '-'}")
        print(f"bottom = {' '.join(elem.bottom) or '-'}")
        print(f"normal form = {elem}")
        print(f"degrees = {' '.join(str(d) for d in degs) if degs else '-'}")
    return 0


def _cmd_selftest(cfg, args) -> int:
    if args.json:
        results = []
        ok_all = True
        for title, fn in selftest.CRITERIA:
            ok, detail = fn()
            ok_all = ok_all and ok
            results.append({"title": title, "ok": ok, "detail": detail})
        _emit({"checks": results, "ok": ok_all})
        return 0 if ok_all else 1
    return 0 if selftest.run_all() else 1


_HANDLERS = {
    "pair": _cmd_pair,
    "iserre": _cmd_iserre,
    "bkl": _cmd_bkl,
    "grdim": _cmd_grdim,
    "shapes": _cmd_shapes,
    "klr": _cmd_klr,
    "selftest": _cmd_selftest,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iquantum",
        description="Exact computations for quasi-split iquantum groups.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, config_required=True):
        p.add_argument(
            "--config",
            required=config_required,
            default=None,
            help="config file path or a built-in name (split_a1, qs_a2, ...)",
        )
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("pair", help="pairing of two words by both algorithms")
    common(p)
    p.add_argument("--i", default="", help="top word, e.g. '2 1' or '1^(2)'")
    p.add_argument("--j", default="", help="bottom word")
    p.add_argument("--lambda", dest="lam", required=True, help="weight name from the config")

    p = sub.add_parser("iserre", help="sweep the straightening relation")
    common(p)
    p.add_argument("--i", default=None)
    p.add_argument("--j", default=None)
    p.add_argument("--all", action="store_true", help="all ordered node pairs")
    p.add_argument("--lambda", dest="lam", default=None, help="weight name from the config")
    p.add_argument("--lambda-range", default=None, help="orbit coordinate range, e.g. -3..3")

    p = sub.add_parser("bkl", help="straightening coefficients and their closed form")
    common(p)
    p.add_argument("--i", required=True, help="a node moved by the involution")
    p.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("grdim", help="graded rank series")
    common(p)
    p.add_argument("--i", default="", help="top word")
    p.add_argument("--j", default="", help="bottom word")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--end", action="store_true", help="empty-word endomorphism series")
    p.add_argument("--N", type=int, default=None, help="truncation order (default from config)")

    p = sub.add_parser("shapes", help="list boundary matchings with degrees")
    common(p)
    p.add_argument("--i", default="", help="top word")
    p.add_argument("--j", default="", help="bottom word")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mode", choices=shapes.MODES, default="all")

    p = sub.add_parser("klr", help="normal form of a diagram product")
    common(p)
    p.add_argument(
        "--expr", required=True, help="product such as 'e(1 2) ; x1 ; s1', applied downward"
    )

    p = sub.add_parser("selftest", help="run the full cross-check suite")
    common(p, config_required=False)
    return parser


def run(argv=None) -> int:
    """Parse arguments, dispatch, and return the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    # keep "--lambda-range -3..3" parseable despite the leading dash
    for k, tok in enumerate(argv[:-1]):
        if tok == "--lambda-range":
            argv[k : k + 2] = [f"--lambda-range={argv[k + 1]}"]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config) if args.config else None
        for line in cfg.warnings if cfg else ():
            print(line, file=sys.stderr)
        return _HANDLERS[args.cmd](cfg, args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
