"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 size cap exceeded,
3 input/output or parse error.
"""

import argparse
import os
import sys

from . import groups
from ._util import format_rational
from .cardinality import (
    family_cardinality,
    groupoid_cardinality,
    pairing,
    presheaf_cardinality,
    span_matrix,
    truncated_cardinality,
)
from .errors import HLQError, LoadError, MismatchError, NotInvertibleError, SizeCapError, ValidationError
from .groupoid import equivalent, skeletalize
from .incidence import (
    coassociativity_matrices,
    comultiplication_matrix,
    counit_function,
    counit_law_matrices,
    fat_nerve,
    identity_on_X1,
    mobius_numeric,
    zeta_function,
)
from .io import (
    Loader,
    dumps,
    from_json_id,
    functor_to_json,
    groupoid_to_json,
    label_json,
    label_key,
    skeletal_to_json,
    span_to_json,
)
from .pullback import homotopy_fibre, homotopy_pullback
from .qbinomial import qbinomial_check
from .span import apply_span, compose_spans, transpose

EXIT_VALIDATION, EXIT_SIZE_CAP, EXIT_IO = 1, 2, 3


class Output:
    """Collects either a JSON document or TSV rows."""

    def __init__(self, fmt):
        self.fmt = fmt

    def scalar(self, text):
        return text + "\n"

    def doc(self, obj, rows):
        if self.fmt == "json":
            return dumps(obj)
        return "".join("\t".join(str(c) for c in r) + "\n" for r in rows)


def _group_cap(args):
    """``--size-cap`` wins over HLQ_SIZE_CAP, which wins over the default."""
    if args.size_cap is not None:
        return args.size_cap
    env = os.environ.get("HLQ_SIZE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise LoadError(f"HLQ_SIZE_CAP must be an integer, got {env!r}") from None
    return groups.DEFAULT_GROUP_CAP


def _key(x):
    return label_key(x)


def _vector_rows(v):
    return [(_key(k), format_rational(q)) for k, q in v.items()]


def _matrix_rows(A):
    return [(_key(r), _key(c), format_rational(v)) for r, c, v in A.triples()]


def _skeleton_rows(g):
    return [(_key(c.representative), c.aut_order) for c in g.components]


# -- subcommands --------------------------------------------------------------


def cmd_card(args, out, ld):
    return out.scalar(format_rational(groupoid_cardinality(ld.groupoid(args.groupoid))))


def cmd_tcard(args, out, ld):
    return out.scalar(format_rational(truncated_cardinality(ld.truncated(args.space))))


def cmd_skeleton(args, out, ld):
    g = ld.groupoid(args.groupoid)
    return out.doc(skeletal_to_json(skeletalize(g)), _skeleton_rows(g))


def cmd_equiv(args, out, ld):
    a, b = ld.groupoid(args.a), ld.groupoid(args.b)
    return out.scalar("true" if equivalent(a, b, _group_cap(args)) else "false")


def _groupoid_doc(out, g):
    return out.doc(groupoid_to_json(g), _skeleton_rows(g))


def cmd_fibre(args, out, ld):
    F = ld.functor(args.functor)
    b = _parse_point(args.point, F.target)
    return _groupoid_doc(out, homotopy_fibre(F, b))


def cmd_pullback(args, out, ld):
    F, G = ld.functor(args.f), ld.functor(args.g)
    if F.target != G.target:
        raise MismatchError("the two functors have different targets")
    P, _, _ = homotopy_pullback(F, G)
    return _groupoid_doc(out, P)


def _parse_point(text, G):
    import json

    table = {label_key(x): x for x in G.objects}
    if text in table:
        return table[text]
    try:
        x = from_json_id(json.loads(text))
    except ValueError:
        x = text
    if not G.has_object(x):
        raise MismatchError(f"{text!r} is not an object of the base")
    return x


def _span_doc(out, L):
    rows = [(_key(c.representative), c.aut_order) for c in L.apex.components]
    return out.doc(span_to_json(L), rows)


def cmd_span(args, out, ld):
    if args.span_cmd == "compose":
        L, L2 = ld.span(args.first), ld.span(args.second)
        return _span_doc(out, compose_spans(L, L2))
    if args.span_cmd == "transpose":
        return _span_doc(out, transpose(ld.span(args.span)))
    if args.span_cmd == "matrix":
        A = span_matrix(ld.span(args.span), convention=args.normalization)
        return out.doc(A.to_json(), _matrix_rows(A))
    if args.span_cmd == "apply":
        L, x = ld.span(args.span), ld.family(args.family)
        y = apply_span(L, x)
        v = family_cardinality(y)
        return out.doc(
            {"family": functor_to_json(y), "cardinality": v.to_json()}, _vector_rows(v)
        )
    raise AssertionError(args.span_cmd)


def cmd_family(args, out, ld):
    v = family_cardinality(ld.family(args.family))
    return out.doc(v.to_json(), _vector_rows(v))


def cmd_presheaf(args, out, ld):
    f = presheaf_cardinality(ld.presheaf(args.presheaf))
    return out.doc(f.to_json(), _vector_rows(f))


def cmd_pair(args, out, ld):
    return out.scalar(format_rational(pairing(ld.family(args.family), ld.presheaf(args.presheaf))))


def cmd_incidence(args, out, ld):
    n = fat_nerve(ld.incidence_input(args.input))
    wanted = {k for k in ("comult", "counit", "zeta", "mobius", "coassoc") if getattr(args, k)}
    if not wanted:
        wanted = {"comult", "counit", "zeta", "mobius", "coassoc"}
    doc, rows = {}, []
    doc["components"] = [
        {"label": label_json(c.representative), "aut_order": c.aut_order} for c in n.X1.components
    ]
    if "comult" in wanted:
        A = comultiplication_matrix(n)
        doc["comultiplication"] = A.to_json()
        rows += [("comult",) + r for r in _matrix_rows(A)]
    for name, fn in (("counit", counit_function), ("zeta", zeta_function)):
        if name in wanted:
            f = fn(n)
            doc[name] = f.to_json()
            rows += [(name,) + r for r in _vector_rows(f)]
    if "mobius" in wanted:
        try:
            mu = mobius_numeric(n)
            doc["mobius"] = mu.to_json()
            rows += [("mobius",) + r for r in _vector_rows(mu)]
        except NotInvertibleError as e:
            doc["mobius"] = {"error": str(e)}
            rows.append(("mobius", "error", str(e)))
    if "coassoc" in wanted:
        A, B = coassociativity_matrices(n)
        left, right = counit_law_matrices(n)
        ident = identity_on_X1(n)
        checks = {
            "coassociativity": A == B,
            "left_counit": left == ident,
            "right_counit": right == ident,
        }
        doc["laws"] = checks
        rows += [("law", k, "pass" if v else "fail") for k, v in sorted(checks.items())]
    return out.doc(doc, rows)


def cmd_qbinomial(args, out, ld):
    r = qbinomial_check(args.max_dim)
    doc = {
        "field_size": r["field_size"],
        "max_dim": r["max_dim"],
        "consistent": r["consistent"],
        "pass": r["pass"],
        "entries": [
            {
                "n": e["n"],
                "split": list(e["split"]),
                "value": format_rational(e["value"]),
                "expected": format_rational(e["expected"]),
                "pass": e["pass"],
            }
            for e in r["entries"]
        ],
    }
    rows = [
        (e["n"], e["split"][0], e["split"][1], format_rational(e["value"]),
         format_rational(e["expected"]), "pass" if e["pass"] else "fail")
        for e in r["entries"]
    ]
    return out.doc(doc, rows)


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_IO)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--normalization", choices=("target", "source"), default="target")
    common.add_argument("--size-cap", type=int, default=None, help="overrides HLQ_SIZE_CAP")

    p = _Parser(prog="hlq", description="Exact homotopy cardinality toolkit.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_text, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    add("card", cmd_card, "cardinality of a groupoid", "groupoid")
    add("tcard", cmd_tcard, "cardinality of a truncated space", "space")
    add("skeleton", cmd_skeleton, "skeleton of a groupoid", "groupoid")
    add("equiv", cmd_equiv, "decide equivalence of two groupoids", "a", "b")
    fib = add("fibre", cmd_fibre, "homotopy fibre of a functor", "functor")
    fib.add_argument("--point", required=True, help="object of the target")
    add("pullback", cmd_pullback, "homotopy pullback of a cospan", "f", "g")

    sp = sub.add_parser("span", help="span operations")
    ssub = sp.add_subparsers(dest="span_cmd", required=True)
    for name, pos in (
        ("compose", ("first", "second")),
        ("matrix", ("span",)),
        ("apply", ("span", "family")),
        ("transpose", ("span",)),
    ):
        q = ssub.add_parser(name, parents=[common])
        for a in pos:
            q.add_argument(a)
        q.set_defaults(fn=cmd_span)

    fp = sub.add_parser("family", help="family operations")
    fsub = fp.add_subparsers(dest="family_cmd", required=True)
    q = fsub.add_parser("card", parents=[common])
    q.add_argument("family")
    q.set_defaults(fn=cmd_family)

    pp = sub.add_parser("presheaf", help="presheaf operations")
    psub = pp.add_subparsers(dest="presheaf_cmd", required=True)
    q = psub.add_parser("card", parents=[common])
    q.add_argument("presheaf")
    q.set_defaults(fn=cmd_presheaf)

    add("pair", cmd_pair, "pairing of a family with a presheaf", "family", "presheaf")

    inc = add("incidence", cmd_incidence, "incidence coalgebra of a poset or category", "input")
    for flag in ("comult", "counit", "zeta", "mobius", "coassoc"):
        inc.add_argument(f"--{flag}", action="store_true")

    qb = add("qbinomial", cmd_qbinomial, "q-binomial check over F_2")
    qb.add_argument("--max-dim", type=int, default=2, choices=(1, 2, 3))
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.fn(args, Output(args.format), Loader())
    except ValidationError as e:
        stderr.write(f"{e}\n")
        return EXIT_VALIDATION
    except SizeCapError as e:
        stderr.write(f"size cap: {e}\n")
        return EXIT_SIZE_CAP
    except LoadError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_IO
    except (MismatchError, NotInvertibleError) as e:
        stderr.write(f"invalid input: {e}\n")
        return EXIT_VALIDATION
    except HLQError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_VALIDATION
    stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
