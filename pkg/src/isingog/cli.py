"""Command-line front end.

Every verb reads JSON files and prints one JSON document.  Exact values are
"p/q" strings; floating values are rounded to 15 significant digits and the
document that holds them carries ``"approx": true``.

Exit codes: 0 on success, 1 for malformed input, 2 when the input is well
formed but mathematically inconsistent.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from fractions import Fraction

from . import __version__
from .alt_flows import flow_sums
from .errors import IsingOGError, MathError, NotTNN, ParseError, ValidationError
from .grassmann_exact import (GrassmannPoint, check_og_tnn, correlations_from_minors,
                              cyclic_shift, doubled_matrix, positroid_necklace_perm,
                              subset_key, x0_point)
from .griffiths import griffiths_check, griffiths_from_matrix, parse_subset
from .inverse_solver import reconstruct
from .ising_exact import CorrelationMatrix, correlation_matrix
from .planar_core import (PlanarNetwork, dual_network, format_rational, medial_graph,
                          medial_pairing, uncrossing_poset, validate_network,
                          xing_and_reduced)

POSET_LIMIT = 4


def approx(v: float) -> float:
    return float(f"{v:.15g}")


def _read(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object at the top level")
    return doc


def parse_input(path: str):
    """A network, correlation matrix or Grassmann point, told apart by their fields."""
    doc = _read(path)
    if "vertices" in doc:
        return validate_network(doc)
    if "entries" in doc:
        return CorrelationMatrix.from_json(doc)
    if "matrix" in doc:
        return GrassmannPoint.from_json(doc)
    raise ParseError(f"{path}: not a network, matrix or point document")


def _expect(obj, *kinds, what="input"):
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise ValidationError(f"{what} must be a {names} document")
    return obj


def _point(obj) -> GrassmannPoint:
    if isinstance(obj, PlanarNetwork):
        obj = correlation_matrix(obj)
    if isinstance(obj, CorrelationMatrix):
        return doubled_matrix(obj)
    return obj


def _projective_equal(X: GrassmannPoint, Y: GrassmannPoint) -> bool:
    if (X.k, X.N) != (Y.k, Y.N):
        return False
    px, py = X.pluecker, Y.pluecker
    ratios = {py[I] / v for I, v in px.items() if v}
    return len(ratios) == 1 and all(not py[I] for I, v in px.items() if not v)


# verbs

def cmd_correlations(args):
    net = _expect(parse_input(args.network), PlanarNetwork)
    return correlation_matrix(net).to_json()


def cmd_embed(args):
    X = _point(_expect(parse_input(args.input), PlanarNetwork, CorrelationMatrix))
    doc = X.to_json()
    doc["pluecker"] = {subset_key(I): format_rational(v) for I, v in X.pluecker.items()}
    return doc


def cmd_check(args):
    X = _point(parse_input(args.input))
    if args.recover:
        return correlations_from_minors(X).to_json()
    cert = check_og_tnn(X)
    doc = cert.to_json()
    doc["cell"] = None
    if cert.tnn:
        try:
            positroid, necklace, pi = positroid_necklace_perm(X)
        except NotTNN:
            pass
        else:
            doc["cell"] = {"permutation": pi.to_json(),
                           "necklace": [list(I) for I in necklace],
                           "positroid_size": len(positroid)}
            if pi.is_fixed_point_free_involution():
                doc["cell"]["pairing"] = pi.as_pairing().to_json()
    return doc


def cmd_dual(args):
    net = _expect(parse_input(args.network), PlanarNetwork)
    dual = dual_network(net)
    X = doubled_matrix(correlation_matrix(net))
    Y = doubled_matrix(correlation_matrix(dual))
    return {"network": dual.to_json(), "cyclic_shift_match": _projective_equal(cyclic_shift(X), Y)}


def cmd_inverse(args):
    net = _expect(parse_input(args.network), PlanarNetwork, what="first input")
    m = _expect(parse_input(args.matrix), CorrelationMatrix, what="second input")
    rng = random.Random(args.seed) if args.seed is not None else None
    values, trace = reconstruct(net, m, rng=rng, exact=not args.approx)
    if args.approx:
        edges = {str(k): approx(float(v)) for k, v in sorted(values.items())}
        steps = [{k: (approx(float(Fraction(v))) if k in "scx" else v)
                  for k, v in s.to_json().items()} for s in trace]
        return {"approx": True, "edges": edges, "trace": steps}
    return {"edges": {str(k): format_rational(v) for k, v in sorted(values.items())},
            "trace": [s.to_json() for s in trace]}


def cmd_griffiths(args):
    obj = _expect(parse_input(args.input), PlanarNetwork, CorrelationMatrix)
    A, B = parse_subset(args.A), parse_subset(args.B)
    if isinstance(obj, PlanarNetwork):
        report = griffiths_check(obj, A, B)
    else:
        report = griffiths_from_matrix(obj, A, B)
    return report.to_json()


def cmd_flows(args):
    net = _expect(parse_input(args.network), PlanarNetwork)
    n = net.n
    if (args.a is None) != (args.b is None):
        raise ValidationError("give both --a and --b, or neither")
    pairs = [(args.a, args.b)] if args.a is not None else [
        (a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    out = []
    for a, b in pairs:
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ValidationError(f"need two distinct boundary indices in [1..{n}]")
        num, den = flow_sums(net, a, b)
        out.append({"a": a, "b": b, "numerator": format_rational(num),
                    "denominator": format_rational(den), "correlation": format_rational(num / den)})
    return {"weights": "scaled by prod(1 - x_e^2)", "pairs": out}


def cmd_cell(args):
    obj = parse_input(args.input)
    if isinstance(obj, PlanarNetwork):
        tau = medial_pairing(medial_graph(obj))
        xing, reduced = xing_and_reduced(obj)
        return {"pairing": tau.to_json(), "xing": xing, "reduced": reduced}
    _, _, pi = positroid_necklace_perm(_point(obj))
    tau = pi.as_pairing()
    return {"pairing": tau.to_json(), "xing": tau.xing(), "reduced": None}


def cmd_x0(args):
    if args.n < 1:
        raise ValidationError("n must be positive")
    pl, M = x0_point(args.n)
    return {"approx": True, "n": args.n,
            "correlations": [[approx(v) for v in row] for row in M.tolist()],
            "pluecker": {subset_key(I): approx(v) for I, v in pl.items()}}


def cmd_poset(args):
    if not 1 <= args.n <= POSET_LIMIT:
        raise ValidationError(f"poset is enumerated for 1 <= n <= {POSET_LIMIT}")
    elements, covers = uncrossing_poset(args.n)
    index = {tau: i for i, tau in enumerate(elements)}
    ranks = Counter(tau.xing() for tau in elements)
    return {"n": args.n, "size": len(elements),
            "elements": [{"pairing": t.to_json(), "xing": t.xing()} for t in elements],
            "covers": [[index[lo], index[hi]] for lo, hi in covers],
            "rank_sizes": {str(k): ranks[k] for k in sorted(ranks)}}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isingog", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("correlations", help="boundary correlation matrix of a network")
    s.add_argument("network")
    s.set_defaults(func=cmd_correlations)

    s = sub.add_parser("embed", help="doubled matrix and Pluecker coordinates")
    s.add_argument("input", help="network or matrix file")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("check", help="OG / TNN certificate and cell of a point")
    s.add_argument("input", help="point, matrix or network file")
    s.add_argument("--recover", action="store_true", help="print the correlation matrix instead")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dual", help="Kramers-Wannier dual network")
    s.add_argument("network")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("inverse", help="recover couplings from correlations")
    s.add_argument("network", help="reduced graph; its couplings are ignored")
    s.add_argument("matrix")
    s.add_argument("--seed", type=int, help="choose peels at random with this seed")
    s.add_argument("--approx", action="store_true", help="allow irrational square roots")
    s.set_defaults(func=cmd_inverse)

    s = sub.add_parser("griffiths", help="Griffiths identities as sums of minors")
    s.add_argument("input", help="network or matrix file")
    s.add_argument("--A", default="", help="comma-separated boundary indices")
    s.add_argument("--B", default="", help="comma-separated boundary indices")
    s.set_defaults(func=cmd_griffiths)

    s = sub.add_parser("flows", help="two-point functions from alternating flows")
    s.add_argument("network")
    s.add_argument("--a", type=int)
    s.add_argument("--b", type=int)
    s.set_defaults(func=cmd_flows)

    s = sub.add_parser("cell", help="medial pairing, crossings and reducedness")
    s.add_argument("input")
    s.set_defaults(func=cmd_cell)

    s = sub.add_parser("x0", help="the cyclically symmetric point (floating point)")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_x0)

    s = sub.add_parser("poset", help="uncrossing order on matchings of [2n]")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_poset)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except MathError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except (IsingOGError, ValueError) as exc:
        name = type(exc).__name__ if isinstance(exc, IsingOGError) else "ValidationError"
        print(json.dumps({"error": name, "message": str(exc)}), file=sys.stderr)
        return 1
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
