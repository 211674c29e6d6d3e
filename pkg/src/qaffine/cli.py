"""Command-line front end.

Exit codes: 0 success, 1 a reported mismatch, 2 invalid input, 3 depth error,
4 resource guard, 5 inconsistent level-rank row.

Weights are written as integer combinations of ``L0..Lr`` (fundamental weights),
``a0..ar`` (simple roots) and ``d`` (the null root), e.g. ``2L0+a1-d``.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import re
import sys
from dataclasses import dataclass

from .brylinski import construct_slice, principal_filtration
from .errors import DepthError, PreconditionError, ResourceError
from .kostant import q_multiplicity
from .levelrank import LevelRankError, QuiverDims, duality_row, duality_sweep
from .rootsystem import AffineWeight, CartanData, CartanError, build_affine_data, build_finite_data

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_DEPTH, EXIT_RESOURCE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4, 5
FORMATS = ("text", "json", "csv")


class InputError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>L\d+|a\d+|d)|(?P<op>[+\-*]))")


def parse_weight(text: str, data: CartanData) -> AffineWeight:
    """Parse ``term (('+'|'-') term)*`` with ``term := ['-'] [INT ['*']] SYMBOL``."""
    src = text.replace("−", "-").strip()
    if not src:
        raise InputError("empty weight expression")
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse weight {text!r} at position {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(src) and src[pos].isspace():
            pos += 1

    index = 0

    def peek():
        return tokens[index] if index < len(tokens) else (None, None)

    def term(sign: int) -> AffineWeight:
        nonlocal index
        kind, val = peek()
        if kind == "op" and val == "-":
            index += 1
            sign = -sign
            kind, val = peek()
        coeff = 1
        if kind == "num":
            coeff = int(val)
            index += 1
            kind, val = peek()
            if kind == "op" and val == "*":
                index += 1
                kind, val = peek()
        if kind != "sym":
            raise InputError(f"expected L<i>, a<i> or d in {text!r}")
        index += 1
        return (sign * coeff) * symbol(val)

    def symbol(name: str) -> AffineWeight:
        if name == "d":
            if not data.affine:
                raise InputError("d is only defined for affine algebras")
            return data.delta
        i = int(name[1:])
        if i not in data.nodes:
            raise InputError(f"{name} is not a node of {data.label}")
        return data.fundamental_weight(i) if name[0] == "L" else data.simple_root(i)

    total = term(1)
    while index < len(tokens):
        kind, val = peek()
        if kind != "op" or val not in "+-":
            raise InputError(f"expected + or - in {text!r}")
        index += 1
        total = total + term(-1 if val == "-" else 1)
    return total


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


@dataclass
class RunConfig:
    command: str
    data: CartanData | None
    lam: AffineWeight | None
    mu: AffineWeight | None
    depth: int
    fmt: str
    out: str | None


def _algebra(args) -> CartanData:
    if args.finite:
        return build_finite_data(args.type, args.rank)
    return build_affine_data(args.type, args.rank, dual=args.dual)


def _config(args) -> RunConfig:
    data = _algebra(args)
    lam = parse_weight(args.weight_lambda, data) if args.weight_lambda else None
    if lam is None:
        if data.affine:
            lam = (args.level if args.level is not None else 1) * data.fundamental_weight(0)
    elif data.affine and args.level is not None and lam.level != args.level:
        raise InputError(f"lambda has level {lam.level}, --level says {args.level}")
    mu = parse_weight(args.weight_mu, data) if args.weight_mu else None
    if lam is not None and not data.is_dominant(lam):
        raise InputError(f"lambda {lam} is not dominant")
    return RunConfig(args.command, data, lam, mu, args.depth, args.format, args.out)


def _weight_json(x: AffineWeight) -> list:
    return [x.level, list(x.finite), x.energy]


def _render(fmt: str, header: list[str], rows: list[list], payload: dict) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def cmd_qkostant(cfg: RunConfig) -> tuple[str, int]:
    data = cfg.data
    if cfg.lam is None:
        raise InputError("--lambda is required for finite algebras")
    top = cfg.mu if cfg.mu is not None else cfg.lam
    if not data.is_dominant(top):
        raise InputError(f"mu {top} is not dominant")
    steps = range(cfg.depth + 1) if data.affine else range(1)
    rows, out = [], []
    for n in steps:
        mu = top.shift_energy(-n)
        c = q_multiplicity(data, cfg.lam, mu)
        rows.append([n, str(mu), str(c)])
        out.append({"n": n, "mu": _weight_json(mu), "coeffs": c.to_json(), "value": str(c)})
    payload = {"command": "qkostant", "algebra": data.label, "lambda": _weight_json(cfg.lam), "rows": out}
    return _render(cfg.fmt, ["n", "mu", "C(q)"], rows, payload), EXIT_OK


def finite_sweep(data: CartanData, max_height: int) -> list[AffineWeight]:
    """Dominant weights with ``<lambda, rho-check> <= max_height``.

    The pairing is the sum of the simple-root coordinates ``A^-1 labels``; every
    fundamental weight has height at least 1/2, so labels stay below ``2 max_height``.
    """
    adj, det = data._adj_det
    r = data.rank
    out = []
    for labels in itertools.product(range(2 * max_height + 1), repeat=r):
        height = sum(adj[i][j] * labels[j] for i in range(r) for j in range(r))
        if height <= max_height * det:
            out.append(data.weight(0, labels))
    return out


def cmd_brylinski(cfg: RunConfig, max_height: int | None = None) -> tuple[str, int]:
    data = cfg.data
    if cfg.lam is not None:
        lams = [cfg.lam]
    elif max_height is not None and not data.affine:
        lams = finite_sweep(data, max_height)
    else:
        raise InputError("--lambda is required (or --max-height for a finite sweep)")
    rows, out = [], []
    all_match = True
    for lam in lams:
        sl = construct_slice(data, lam, cfg.depth if data.affine else None)
        for mu in sl.weights():
            if not data.is_dominant(mu):
                continue
            ec = principal_filtration(sl, mu)
            c = q_multiplicity(data, lam, mu)
            verdict = "MATCH" if ec == c else "MISMATCH"
            all_match &= ec == c
            rows.append([str(lam), str(mu), str(ec), str(c), verdict])
            out.append({"lambda": _weight_json(lam), "mu": _weight_json(mu), "eC": ec.to_json(),
                        "C": c.to_json(), "verdict": verdict})
    payload = {"command": "brylinski", "algebra": data.label, "depth": cfg.depth, "rows": out,
               "all_match": all_match}
    text = _render(cfg.fmt, ["lambda", "mu", "eC(q)", "C(q)", "verdict"], rows, payload)
    return text, EXIT_OK if all_match else EXIT_MISMATCH


def cmd_levelrank(N: int, k: int, bound: int, v, w, fmt: str) -> tuple[str, int]:
    if v is not None or w is not None:
        if v is None or w is None:
            raise InputError("--v and --w must be given together")
        try:
            dims = QuiverDims(v, w)
        except LevelRankError as exc:
            raise InputError(str(exc)) from None
        if dims.k != k or dims.N != N:
            raise InputError(f"w={w} is not a {k}-vector summing to N={N}")
        table = [duality_row(dims)]
    else:
        table = duality_sweep(N, k, bound)
    rows = []
    for r in table:
        rows.append([
            ",".join(map(str, r.v)), ",".join(map(str, r.w)),
            "" if r.lam is None else str(r.lam), "" if r.mu is None else str(r.mu),
            "" if r.a is None else r.a, "" if r.lhs is None else r.lhs,
            "" if r.rhs is None else r.rhs, "" if r.nakaj is None else str(r.nakaj).lower(), r.status,
        ])
    payload = {"command": "levelrank", "N": N, "k": k, "bound": bound, "rows": [r.as_dict() for r in table]}
    text = _render(fmt, ["v", "w", "lambda", "mu", "a", "lhs", "rhs", "nakaj", "status"], rows, payload)
    if any(r.status == "inconsistent" for r in table):
        return text, EXIT_INCONSISTENT
    if any(r.status != "ok" for r in table):
        return text, EXIT_MISMATCH
    return text, EXIT_OK


def cmd_cartan(cfg: RunConfig) -> tuple[str, int]:
    return json.dumps(cfg.data.to_json(), sort_keys=True, indent=2) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qaffine", description="q-analogs of weight multiplicity for affine algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, depth_default=2):
        sp.add_argument("--type", required=True, help="finite type symbol, e.g. A1, B2, G2")
        sp.add_argument("--rank", type=int, default=None)
        sp.add_argument("--dual", type=_bool, default=False, help="Langlands dual of the untwisted algebra")
        sp.add_argument("--finite", action="store_true", help="use the finite-dimensional algebra")
        sp.add_argument("--level", type=int, default=None)
        sp.add_argument("--lambda", dest="weight_lambda", default=None)
        sp.add_argument("--mu", dest="weight_mu", default=None)
        sp.add_argument("--depth", type=_nonneg, default=depth_default)
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--out", default=None)

    common(sub.add_parser("qkostant", help="C(q) along a string mu - n d"))
    b = sub.add_parser("brylinski", help="compare the principal filtration with C(q)")
    common(b)
    b.add_argument("--max-height", type=_nonneg, default=None,
                   help="finite sweep over dominant lambda with <lambda, rho-check> <= this")
    common(sub.add_parser("cartan", help="dump Cartan data as JSON"), depth_default=0)
    lr = sub.add_parser("levelrank", help="level-rank duality table")
    lr.add_argument("--N", type=int, required=True)
    lr.add_argument("--k", type=int, required=True)
    lr.add_argument("--bound", type=_nonneg, default=2)
    lr.add_argument("--v", type=_vector, default=None)
    lr.add_argument("--w", type=_vector, default=None)
    lr.add_argument("--format", choices=FORMATS, default="text")
    lr.add_argument("--out", default=None)
    return p


def run(args) -> tuple[str, int]:
    if args.command == "levelrank":
        if args.N < 2 or args.k < 2:
            raise InputError("levelrank needs N >= 2 and k >= 2")
        return cmd_levelrank(args.N, args.k, args.bound, args.v, args.w, args.format)
    cfg = _config(args)
    if args.command == "qkostant":
        return cmd_qkostant(cfg)
    if args.command == "brylinski":
        return cmd_brylinski(cfg, args.max_height)
    return cmd_cartan(cfg)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2, --help with 0
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT
    try:
        text, code = run(args)
    except (InputError, CartanError, PreconditionError, LevelRankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DepthError as exc:
        print(f"depth error: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
