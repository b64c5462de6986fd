"""Algebra file format and the ``nlie`` command-line tool.

An algebra file is a JSON document::

    {
      "n": 3,
      "dim": 4,
      "basis": ["e1", "e2", "e3", "e4"],
      "brackets": [{"args": ["e1", "e2", "e3"], "value": {"e4": "1"}}, ...],
      "form": [["1", "0", ...], ...],
      "levi": [{"e1": "1"}, ...]
    }

``form`` (a Gram matrix) and ``levi`` (spanning vectors of a Levi factor)
are optional.  Rationals are strings ``"p"`` or ``"p/q"``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import catalog as _catalog
from .audit import audit, summarize
from .exact_linalg import Matrix, Subspace, format_scalar, scalar
from .metric import BilinearForm, invariance_defect, metric_dimension
from .nlie_core import NLieAlgebra, check_axioms
from .structure import (
    DEFAULT_SEED,
    NotSplitError,
    b_irreducible_decomposition,
    find_minimal_ideals,
    radical_with_certificate,
    socle,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_NOT_SPLIT = 3
EXIT_AUDIT_FAIL = 4


class ParseError(ValueError):
    """Malformed algebra file."""


class ValidationError(ValueError):
    """Well-formed file whose data violates the axioms or invariance."""


@dataclass(frozen=True)
class AlgebraFile:
    n: int
    dim: int
    basis: tuple[str, ...]
    brackets: dict = field(default_factory=dict)
    form: Matrix | None = None
    levi: tuple | None = None
    name: str | None = None

    def algebra(self, validate: bool = True) -> NLieAlgebra:
        A = NLieAlgebra(self.n, self.dim, self.brackets, self.basis, validate=False)
        if validate:
            report = check_axioms(A)
            if not report.ok:
                raise ValidationError(report.describe())
        return A

    def bilinear_form(self, A: NLieAlgebra, validate: bool = True) -> BilinearForm | None:
        if self.form is None:
            return None
        B = BilinearForm(self.form)
        if validate:
            bad = invariance_defect(A, B)
            if bad is not None:
                J, i, j = bad
                names = ", ".join(A.basis_names[k] for k in J)
                raise ValidationError(
                    f"form is not invariant: ad({names}) is not skew, entry ({i + 1}, {j + 1})")
            if not B.is_nondegenerate():
                raise ValidationError("form is degenerate")
        return B

    def levi_space(self) -> Subspace | None:
        if self.levi is None:
            return None
        return Subspace.span(self.levi, self.dim)


# ---------------------------------------------------------------------------
# parsing and emitting
# ---------------------------------------------------------------------------

def _rational(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: expected a rational string, got {x!r}")
    try:
        return scalar(x)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _vector(mapping, index: dict, dim: int, where: str) -> tuple:
    if not isinstance(mapping, dict):
        raise ParseError(f"{where}: expected a map from basis names to rationals")
    out = [scalar(0)] * dim
    for name, c in mapping.items():
        if name not in index:
            raise ParseError(f"{where}: unknown basis name {name!r}")
        out[index[name]] = _rational(c, f"{where}[{name}]")
    return tuple(out)


def parse(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("n", "dim", "basis", "brackets"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    n, dim, basis = doc["n"], doc["dim"], doc["basis"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ParseError("n must be an integer >= 2")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim must be a positive integer")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must be a list of names")
    if len(basis) != dim:
        raise ParseError(f"basis has {len(basis)} names but dim is {dim}")
    if len(set(basis)) != dim:
        raise ParseError("basis names must be distinct")
    index = {b: i for i, b in enumerate(basis)}
    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets must be a list")
    brackets = {}
    for k, entry in enumerate(doc["brackets"]):
        where = f"brackets[{k}]"
        if not isinstance(entry, dict) or "args" not in entry or "value" not in entry:
            raise ParseError(f"{where}: expected an object with args and value")
        args = entry["args"]
        if not isinstance(args, list) or len(args) != n:
            raise ParseError(f"{where}: args must list {n} basis names")
        for a in args:
            if a not in index:
                raise ParseError(f"{where}: unknown basis name {a!r}")
        idx = tuple(index[a] for a in args)
        if any(idx[i] >= idx[i + 1] for i in range(n - 1)):
            raise ParseError(f"{where}: non-increasing tuple {args}")
        if idx in brackets:
            raise ParseError(f"{where}: duplicate tuple {args}")
        brackets[idx] = _vector(entry["value"], index, dim, f"{where}.value")
    form = None
    if doc.get("form") is not None:
        rows = doc["form"]
        if not isinstance(rows, list) or len(rows) != dim or \
                not all(isinstance(r, list) and len(r) == dim for r in rows):
            raise ParseError(f"form must be a {dim}x{dim} array")
        form = Matrix([[_rational(x, f"form[{i}][{j}]") for j, x in enumerate(r)]
                       for i, r in enumerate(rows)])
        if not form.is_symmetric():
            raise ParseError("form must be symmetric")
    levi = None
    if doc.get("levi") is not None:
        if not isinstance(doc["levi"], list):
            raise ParseError("levi must be a list of vectors")
        levi = tuple(_vector(v, index, dim, f"levi[{k}]") for k, v in enumerate(doc["levi"]))
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    return AlgebraFile(n, dim, tuple(basis), brackets, form, levi, name)


def _vector_map(v, names) -> dict:
    return {names[i]: format_scalar(c) for i, c in enumerate(v) if c}


def emit(f: AlgebraFile) -> str:
    """Canonical text: brackets and value keys in basis order, two-space indent."""
    doc = {}
    if f.name is not None:
        doc["name"] = f.name
    doc["n"] = f.n
    doc["dim"] = f.dim
    doc["basis"] = list(f.basis)
    doc["brackets"] = [{"args": [f.basis[i] for i in idx],
                        "value": _vector_map(f.brackets[idx], f.basis)}
                       for idx in sorted(f.brackets) if any(f.brackets[idx])]
    if f.form is not None:
        doc["form"] = f.form.to_strings()
    if f.levi is not None:
        doc["levi"] = [_vector_map(v, f.basis) for v in Subspace.span(f.levi, f.dim).basis]
    return json.dumps(doc, indent=2) + "\n"


def to_file(A: NLieAlgebra, form: BilinearForm | None = None, levi: Subspace | None = None,
            name: str | None = None) -> AlgebraFile:
    return AlgebraFile(A.n, A.dim, A.basis_names, dict(A.structure_constants),
                       form.gram if form is not None else None,
                       levi.basis if levi is not None else None, name)


# ---------------------------------------------------------------------------
# rendering helpers
# ---------------------------------------------------------------------------

def format_vector(v, names) -> str:
    terms = []
    for c, name in zip(v, names):
        if not c:
            continue
        mag = -c if c < 0 else c
        coef = "" if mag == 1 else f"{format_scalar(mag)}*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{coef}{name}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out


def _space_lines(V: Subspace, names) -> list[str]:
    return [f"  {format_vector(b, names)}" for b in V.basis]


def _space_json(V: Subspace, names) -> list[dict]:
    return [_vector_map(b, names) for b in V.basis]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _load(args):
    path = args.file
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    f = parse(text)
    validate = not args.skip_validate
    A = f.algebra(validate)
    return f, A, f.bilinear_form(A, validate)


def _need_form(B):
    if B is None:
        raise ParseError("this command needs a form in the input file")
    return B


def cmd_validate(args, out) -> int:
    f, A, B = _load(args)
    report = check_axioms(A)
    print(f"ok: {A.n}-Lie algebra of dimension {A.dim}; {report.describe()}", file=out)
    if B is not None:
        print("form: invariant and nondegenerate", file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    f, A, B = _load(args)
    summary = summarize(A, B, args.seed)
    keys = ["dim", "center_dim", "derived_dim", "radical_dim", "socle_dim", "m_count",
            "centroid_dim", "form_space_dim", "simple", "strong_semisimple_dim"]
    if B is not None:
        keys += ["metric_dim", "b_irreducible", "decomposition"]
    data = {k: summary[k] for k in keys}
    if args.json:
        data["decomposition"] = list(data.get("decomposition", ())) if B is not None else None
        if B is None:
            del data["decomposition"]
        print(json.dumps(data, indent=2), file=out)
    else:
        for k in keys:
            v = data[k]
            if isinstance(v, tuple):
                v = " ".join(str(x) for x in v)
            print(f"{k:<24}{v}", file=out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    f, A, B = _load(args)
    dec = b_irreducible_decomposition(A, _need_form(B), args.seed)
    if not dec.fully_split:
        raise NotSplitError("decomposition undecided over Q")
    for k, c in enumerate(dec, 1):
        print(f"component {k}: dim {c.space.dim}", file=out)
        for line in _space_lines(c.space, A.basis_names):
            print(line, file=out)
    return EXIT_OK


def cmd_radical(args, out) -> int:
    f, A, B = _load(args)
    res = radical_with_certificate(A, args.seed)
    if not res.certified:
        raise AssertionError("radical certificate failed")
    print(f"radical: dim {res.space.dim}", file=out)
    for line in _space_lines(res.space, A.basis_names):
        print(line, file=out)
    return EXIT_OK


def cmd_socle(args, out) -> int:
    f, A, B = _load(args)
    soc = socle(A, B, args.seed)
    if not soc.certified:
        raise NotSplitError("simplicity undecided over Q")
    mins = find_minimal_ideals(A, soc.space, args.seed)
    if not mins.fully_split:
        raise NotSplitError("socle does not split into minimal ideals over Q")
    print(f"socle: dim {soc.space.dim}, {len(mins)} minimal ideals", file=out)
    for k, r in enumerate(mins, 1):
        print(f"minimal ideal {k}: dim {r.dim}, {r.kind}"
              f"{', central' if r.in_center else ''}", file=out)
        for line in _space_lines(r.space, A.basis_names):
            print(line, file=out)
    return EXIT_OK


def cmd_metricdim(args, out) -> int:
    f, A, B = _load(args)
    md = metric_dimension(A, _need_form(B))
    print(md.value, file=out)
    if md.warning:
        print(f"warning: {md.warning}", file=sys.stderr)
        if md.det_polynomial:
            print(f"determinant polynomial: {md.det_polynomial}", file=sys.stderr)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    f, A, B = _load(args)
    report = audit(A, _need_form(B), args.seed, levi=f.levi_space())
    print(report.to_json() if args.json else report.to_table(), file=out)
    if report.failed:
        return EXIT_AUDIT_FAIL
    return EXIT_NOT_SPLIT if report.not_split else EXIT_OK


def cmd_catalog(args, out) -> int:
    try:
        entry = _catalog.builtin(args.name)
    except KeyError as exc:
        raise ParseError(exc.args[0]) from None
    if not 0 <= args.form < len(entry.forms):
        raise ParseError(f"{entry.name} has {len(entry.forms)} forms")
    out.write(emit(to_file(entry.algebra, entry.forms[args.form], entry.levi, entry.name)))
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("NLIE_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"NLIE_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    def options(suppress: bool) -> argparse.ArgumentParser:
        # subcommands must not overwrite options given before the command name
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--seed", type=int,
                       default=argparse.SUPPRESS if suppress else None,
                       help="seed for randomized splitting (default: $NLIE_SEED or 0)")
        p.add_argument("--skip-validate", action="store_true",
                       default=argparse.SUPPRESS if suppress else False,
                       help="skip the Jacobi and invariance checks on input")
        return p

    common = options(True)
    parser = argparse.ArgumentParser(
        prog="nlie", parents=[options(False)],
        description="Exact structure theory of n-Lie algebras with invariant forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file_arg=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file_arg:
            p.add_argument("file", help="algebra file, or - for stdin")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check the Jacobi identity and form invariance")
    add("analyze", cmd_analyze, "print the main invariants").add_argument(
        "--json", action="store_true", help="machine-readable output")
    add("decompose", cmd_decompose, "orthogonal decomposition into B-irreducible ideals")
    add("radical", cmd_radical, "maximal solvable ideal")
    add("socle", cmd_socle, "socle and its minimal ideals")
    add("metricdim", cmd_metricdim, "dimension of the space of invariant forms")
    add("audit", cmd_audit, "run all structural checks").add_argument(
        "--json", action="store_true", help="machine-readable output")
    cat = add("catalog", cmd_catalog, "emit a built-in example", file_arg=False)
    cat.add_argument("name", help="one of: " + ", ".join(_catalog.NAMES))
    cat.add_argument("--form", type=int, default=0, help="index of the form to emit")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotSplitError as exc:
        print(f"not split: {exc}", file=sys.stderr)
        return EXIT_NOT_SPLIT


if __name__ == "__main__":
    sys.exit(main())
