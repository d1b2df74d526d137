"""Command line front end: code files in, verified reports out.

The code file format is three header lines followed by the generator
rows, decimal entries, single spaces::

    # comment lines start with '#'
    field 5^1
    n 4
    k 2
    1 2 0 0
    0 0 1 2

The declared k must equal the rank of the rows; the writer always emits
the canonical reduced row echelon form, so write(parse(text)) == text
for canonical files.

Exit codes: 0 success with the verification checklist passing, 2 for a
violated hypothesis or malformed input, 3 for an honest negative answer
(the input was fine, the math said no).  Reports go to stdout, as JSON
with --json ("schema": 1, fixed key order).  Identical input file,
flags, and seed always produce byte-identical output.

The SOXPAND_CAP environment variable overrides both enumeration caps
(expansion search and codeword scans).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .code import DEFAULT_DISTANCE_CAP, LinearCode
from .errors import NoExpansionError, PreconditionError
from .expand import (
    DEFAULT_ORACLE_CAP,
    best_expansion,
    enumerate_expansions,
    expand_euclidean,
    expand_hermitian,
    random_self_orthogonal,
    selfdual_obstruction,
    tower,
    try_expand_boundary,
)
from .gf import make_field, parse_field_name
from .linalg import FORMS, VecF, inner

SCHEMA = 1


# ---------------------------------------------------------------------------
# code file format


def parse_code_file(text: str) -> LinearCode:
    """Parse header plus generator rows into a code.

    Blank lines and lines starting with '#' are ignored.  The declared
    k is a claim, not a hint: the rows must have exactly that rank.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 3:
        raise PreconditionError("code file needs 'field', 'n' and 'k' header lines")
    head = {}
    for expect, ln in zip(("field", "n", "k"), lines[:3]):
        key, _, val = ln.partition(" ")
        if key != expect or not val.strip():
            raise PreconditionError(
                f"malformed header line {ln!r}, expected '{expect} <value>'"
            )
        head[expect] = val.strip()
    p, m = parse_field_name(head["field"])
    F = make_field(p, m)
    try:
        n, k = int(head["n"]), int(head["k"])
    except ValueError:
        raise PreconditionError("header n and k must be integers") from None
    if n < 1 or k < 0:
        raise PreconditionError(f"bad declared parameters [{n},{k}]")
    body = lines[3:]
    if len(body) != k:
        raise PreconditionError(f"declared k={k} but found {len(body)} generator rows")
    rows = []
    for ln in body:
        try:
            row = tuple(int(tok) for tok in ln.split())
        except ValueError:
            raise PreconditionError(f"non-integer entry in row {ln!r}") from None
        if len(row) != n:
            raise PreconditionError(f"row {ln!r} has {len(row)} entries, expected {n}")
        for e in row:
            if not 0 <= e < F.q:
                raise PreconditionError(f"entry {e} outside [0, {F.q})")
        rows.append(row)
    C = LinearCode.from_rows(F, rows, n=n)
    if C.k != k:
        raise PreconditionError(f"declared k={k} but the rows have rank {C.k}")
    return C


def write_code_file(C: LinearCode) -> str:
    """Canonical text form of a code; inverse of parse on its own output."""
    F = C.field
    out = [f"field {F.p}^{F.m}", f"n {C.n}", f"k {C.k}"]
    out.extend(" ".join(str(e) for e in row) for row in C.gen.rows)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# report plumbing


def _caps() -> tuple[int, int]:
    """(search cap, codeword cap), both overridable via SOXPAND_CAP."""
    raw = os.environ.get("SOXPAND_CAP")
    if raw is None:
        return DEFAULT_ORACLE_CAP, DEFAULT_DISTANCE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise PreconditionError(f"SOXPAND_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise PreconditionError("SOXPAND_CAP must be positive")
    return cap, cap


def _load(path: str) -> LinearCode:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from None
    return parse_code_file(text)


def _write_out(args, C: LinearCode) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(write_code_file(C))


def _code_dict(C: LinearCode) -> dict:
    return {
        "n": C.n,
        "k": C.k,
        "rows": [" ".join(str(e) for e in row) for row in C.gen.rows],
    }


def _vec_str(v: VecF) -> str:
    return " ".join(str(e) for e in v.entries)


def _report(args, argv: list[str], F) -> dict:
    rep = {
        "schema": SCHEMA,
        "command": args.command,
        "argv": list(argv),
        "field": f"{F.p}^{F.m}",
        "modulus": F.modulus_str(),
    }
    if hasattr(args, "inner"):
        rep["form"] = args.inner
    if getattr(args, "seed", None) is not None:
        rep["seed"] = args.seed
    return rep


def _render_value(key: str, val, lines: list[str], indent: int) -> None:
    pad = "  " * indent
    if isinstance(val, bool):
        lines.append(f"{pad}{key}: {'true' if val else 'false'}")
    elif isinstance(val, dict):
        lines.append(f"{pad}{key}:")
        for k2, v2 in val.items():
            _render_value(k2, v2, lines, indent + 1)
    elif isinstance(val, list):
        if not val:
            lines.append(f"{pad}{key}:")
        elif all(isinstance(x, int) and not isinstance(x, bool) for x in val):
            lines.append(f"{pad}{key}: " + " ".join(str(x) for x in val))
        else:
            lines.append(f"{pad}{key}:")
            for i, x in enumerate(val):
                if isinstance(x, (dict, list)):
                    _render_value(str(i), x, lines, indent + 1)
                else:
                    lines.append(f"{pad}  {x}")
    elif val is None:
        lines.append(f"{pad}{key}: -")
    else:
        lines.append(f"{pad}{key}: {val}")


def _render_text(report: dict) -> str:
    lines: list[str] = []
    for key, val in report.items():
        if key in ("schema", "argv"):
            continue
        _render_value(key, val, lines, 0)
    return "\n".join(lines) + "\n"


def _expand_once(C: LinearCode, form: str, seed):
    if form == "hermitian":
        return expand_hermitian(C, seed)
    return expand_euclidean(C, seed)


def _expansion_checklist(C: LinearCode, out: LinearCode, form: str, gamma: VecF) -> dict:
    # recomputed from the output alone, never copied from solver state
    return {
        "self_orthogonal": out.is_self_orthogonal(form),
        "contains_input": C.is_subcode_of(out),
        "dimension": out.k == C.k + 1,
        "new_vector_in_dual": C.dual(form).contains(gamma),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_dual(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    D = C.dual(args.inner)
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    rep["output"] = _code_dict(D)
    rep["checklist"] = {
        "dimension": D.k == C.n - C.k,
        "orthogonal": all(
            inner(u, v, args.inner) == 0
            for u in C.gen.row_vecs()
            for v in D.gen.row_vecs()
        ),
        "involution": D.dual(args.inner) == C,
    }
    _write_out(args, D)
    return rep, 0


def cmd_verify(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    ok = C.is_self_orthogonal(args.inner)
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    rep["self_orthogonal"] = ok
    rep["checklist"] = {"self_orthogonal": ok}
    return rep, 0 if ok else 3


def cmd_expand(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    step = _expand_once(C, args.inner, args.seed)
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    rep["output"] = _code_dict(step.output)
    rep["branch"] = step.branch
    rep["witness"] = list(step.witness)
    rep["new_vector"] = _vec_str(step.new_vector)
    rep["checklist"] = _expansion_checklist(C, step.output, args.inner, step.new_vector)
    _write_out(args, step.output)
    return rep, 0


def _terminal_dim(C: LinearCode, form: str, boundary_ok: bool) -> int:
    n = C.n
    if n % 2 == 1:
        return (n - 1) // 2
    if form == "hermitian" or C.field.p == 2:
        return n // 2
    return n // 2 if boundary_ok else n // 2 - 1


def cmd_tower(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    tw = tower(C, args.inner, args.seed, args.attempt_boundary)
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    rep["steps"] = [
        {"branch": s.branch, "k": s.output.k, "new_vector": _vec_str(s.new_vector)}
        for s in tw.steps
    ]
    rep["r_steps"] = tw.r_steps
    rep["l"] = tw.l
    if tw.boundary_attempt is not None:
        rep["boundary"] = {
            "expandable": tw.boundary_attempt.expandable,
            "witness": tw.boundary_attempt.square_class_witness,
        }
    rep["terminal"] = _code_dict(tw.terminal)
    ok_boundary = tw.boundary_attempt is not None and tw.boundary_attempt.expandable
    chain = True
    prev = tw.start
    for s in tw.steps:
        chain = chain and prev.is_subcode_of(s.output) and s.output.k == prev.k + 1
        prev = s.output
    rep["checklist"] = {
        "terminal_self_orthogonal": tw.terminal.is_self_orthogonal(args.inner),
        "terminal_dimension": tw.terminal.k == _terminal_dim(C, args.inner, ok_boundary),
        "chain": chain and prev == tw.terminal,
    }
    _write_out(args, tw.terminal)
    if args.plot:
        from .plotting import plot_tower_profile

        plot_tower_profile(tw, args.plot)
    return rep, 0


def cmd_mindist(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    _, word_cap = _caps()
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    if C.k == 0:
        rep["distance"] = None
        rep["checklist"] = {"zero_code": True}
        return rep, 0
    d = C.min_distance(word_cap, args.threads)
    rep["distance"] = d
    achieved = any(v.weight() == d for v in C.codewords(word_cap))
    rep["checklist"] = {"positive": d >= 1, "achieved": achieved}
    if args.plot:
        from .plotting import plot_weight_distribution

        dist = C.weight_distribution(word_cap)
        plot_weight_distribution(dist, args.plot, title=f"{C!r}, d={d}")
    return rep, 0


def cmd_enumerate(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    search_cap, word_cap = _caps()
    cands = enumerate_expansions(C, args.inner, search_cap)
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    rep["count"] = len(cands)
    rep["expansions"] = [_code_dict(E) for E in cands]
    rep["checklist"] = {
        "all_self_orthogonal": all(E.is_self_orthogonal(args.inner) for E in cands),
        "all_contain_input": all(C.is_subcode_of(E) for E in cands),
        "all_dimension": all(E.k == C.k + 1 for E in cands),
    }
    if args.plot and cands:
        from .plotting import plot_distance_histogram

        plot_distance_histogram([E.min_distance(word_cap) for E in cands], args.plot)
    return rep, 0 if cands else 3


def cmd_best(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    search_cap, word_cap = _caps()
    rep = _report(args, argv, C.field)
    rep["input"] = _code_dict(C)
    try:
        E, d = best_expansion(C, args.inner, search_cap, word_cap, args.threads)
    except NoExpansionError:
        rep["count"] = 0
        rep["checklist"] = {"no_expansion": True}
        return rep, 3
    rep["output"] = _code_dict(E)
    rep["distance"] = d
    rep["checklist"] = {
        "self_orthogonal": E.is_self_orthogonal(args.inner),
        "contains_input": C.is_subcode_of(E),
        "dimension": E.k == C.k + 1,
        "distance_verified": E.min_distance(word_cap) == d,
    }
    _write_out(args, E)
    if args.plot:
        from .plotting import plot_distance_histogram

        dists = [
            X.min_distance(word_cap)
            for X in enumerate_expansions(C, args.inner, search_cap)
        ]
        plot_distance_histogram(dists, args.plot, best=d)
    return rep, 0


def cmd_random(args, argv) -> tuple[dict, int]:
    p, m = parse_field_name(args.field)
    F = make_field(p, m)
    C = random_self_orthogonal(F, args.n, args.k, args.inner, args.seed)
    rep = _report(args, argv, F)
    rep["output"] = _code_dict(C)
    rep["checklist"] = {
        "self_orthogonal": C.is_self_orthogonal(args.inner),
        "length": C.n == args.n,
        "dimension": C.k == args.k,
    }
    _write_out(args, C)
    return rep, 0


def cmd_boundary(args, argv) -> tuple[dict, int]:
    C = _load(args.infile)
    verdict = try_expand_boundary(C, args.seed)
    F = C.field
    rep = _report(args, argv, F)
    rep["input"] = _code_dict(C)
    rep["witness"] = verdict.square_class_witness
    rep["witness_is_square"] = F.is_square(verdict.square_class_witness)
    rep["expandable"] = verdict.expandable
    if not verdict.expandable:
        rep["checklist"] = {
            "witness_nonsquare": not F.is_square(verdict.square_class_witness)
        }
        return rep, 3
    out = verdict.result
    rep["output"] = _code_dict(out)
    rep["branch"] = verdict.report.branch
    rep["checklist"] = {
        "self_dual": out.is_self_dual("euclidean"),
        "contains_input": C.is_subcode_of(out),
        "witness_square": F.is_square(verdict.square_class_witness),
    }
    _write_out(args, out)
    return rep, 0


def cmd_obstruction(args, argv) -> tuple[dict, int]:
    p, m = parse_field_name(args.field)
    q = p**m
    obstructed = selfdual_obstruction(q, args.k)
    F = make_field(p, m)
    rep = _report(args, argv, F)
    rep["q"] = q
    rep["k"] = args.k
    rep["obstructed"] = obstructed
    rep["checklist"] = {
        "consistent": obstructed == (q % 4 == 3 and args.k % 2 == 0),
    }
    return rep, 0


# ---------------------------------------------------------------------------
# dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soxpand",
        description="grow self-orthogonal linear codes one dimension at a time",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help, infile=True, inner=True, seed=False, out=False,
            plot=False, threads=False):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(handler=handler)
        if infile:
            sp.add_argument("--in", dest="infile", required=True, metavar="FILE",
                            help="input code file")
        if inner:
            sp.add_argument("--inner", choices=FORMS, default="euclidean",
                            help="which inner product (default euclidean)")
        if seed:
            sp.add_argument("--seed", type=int, default=None,
                            help="seed for the randomized basis choices")
        if out:
            sp.add_argument("--out", metavar="FILE", help="write the resulting code here")
        if plot:
            sp.add_argument("--plot", metavar="FILE.png", help="render a figure to this file")
        if threads:
            sp.add_argument("--threads", type=int, default=1,
                            help="worker threads for codeword scans (default 1)")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    add("dual", cmd_dual, "orthogonal complement of a code", out=True)
    add("verify", cmd_verify, "check self-orthogonality")
    add("expand", cmd_expand, "grow the code by one dimension", seed=True, out=True)
    tw = add("tower", cmd_tower, "expand until no step applies",
             seed=True, out=True, plot=True)
    tw.add_argument("--attempt-boundary", action="store_true",
                    help="also try the odd-characteristic n = 2k+2 edge at the top")
    add("mindist", cmd_mindist, "exact minimum distance",
        inner=False, plot=True, threads=True)
    add("enumerate", cmd_enumerate, "every one-step expansion", plot=True)
    add("best", cmd_best, "the one-step expansion with the largest distance",
        out=True, plot=True, threads=True)
    rd = add("random", cmd_random, "a reproducible random self-orthogonal code",
             infile=False, seed=True, out=True)
    rd.add_argument("--field", required=True, metavar="P^M", help="field as p^m")
    rd.add_argument("--n", type=int, required=True, help="code length")
    rd.add_argument("--k", type=int, required=True, help="code dimension")
    add("boundary", cmd_boundary, "decide the odd-characteristic n = 2k+2 edge",
        inner=False, seed=True, out=True)
    ob = add("obstruction", cmd_obstruction,
             "whether self-dual codes of a given even length cannot exist",
             infile=False, inner=False)
    ob.add_argument("--field", required=True, metavar="P^M", help="field as p^m")
    ob.add_argument("--k", type=int, required=True,
                    help="tested dimension; the self-dual target is [2k+2, k+1]")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help; keep its code
        return int(exc.code or 0)
    try:
        report, code = args.handler(args, argv)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoExpansionError as exc:
        print(f"negative: {exc}", file=sys.stderr)
        return 3
    if code == 0 and not all(report["checklist"].values()):
        # a success exit must never carry a failed verification
        print("error: verification checklist failed", file=sys.stderr)
        return 1
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
