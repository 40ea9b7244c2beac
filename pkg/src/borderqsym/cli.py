"""Command-line front end: construction, products, decomposition, verifiers.

Family members are written as KIND:n:set, e.g. ``K:2:1,2``, ``L:3:2``,
or ``K:2:`` for the empty set.  Default output is a human-readable
sorted term list; ``--json`` switches to canonical JSON (stable key
order, so parsing and re-serializing is byte-identical).  Exit codes:
0 success, 1 domain error or bad flags, 2 internal invariant violation.
Set BORDERQSYM_VERBOSE=1 for progress detail on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from typing import Callable, Optional, Sequence

from .basis import (
    NonzeroResidualError,
    NotDivisibleError,
    decompose_k,
    decompose_l,
    k_from_l,
    l_from_k,
    rational_solve,
    reconstruct,
)
from .core import Series
from .families import SubsetSpec, all_subsets, k_series, k_series_q, l_series
from .oracle import check_spreading, k1_coefficient
from .shuffle import gp, k1_product, multiset_counts, multiset_json_obj


def _verbose() -> bool:
    return os.environ.get("BORDERQSYM_VERBOSE", "") not in ("", "0")


def _note(msg: str) -> None:
    if _verbose():
        print(msg, file=sys.stderr)


def dump_json(obj) -> str:
    """Canonical JSON used by every --json emitter."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # bad flags are a domain error (exit 1), not an internal failure
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


def parse_factor(text: str) -> tuple[str, SubsetSpec]:
    parts = text.split(":")
    if len(parts) != 3 or parts[0] not in ("K", "L"):
        raise ValueError(f"bad factor {text!r}; expected KIND:n:set, e.g. K:2:1,2 or L:3: for the empty set")
    try:
        n = int(parts[1])
    except ValueError:
        raise ValueError(f"bad factor {text!r}; n must be an integer") from None
    return parts[0], SubsetSpec.parse(n, parts[2])


def _factor_series(kind: str, spec: SubsetSpec, trunc: int) -> Series:
    return k_series(spec, trunc) if kind == "K" else l_series(spec, trunc)


def _series_json_obj(series: Series) -> dict:
    return {
        "degree": series.degree,
        "vars": series.trunc,
        "terms": [{"monomial": str(m), "coeff": c} for m, c in series.sorted_terms()],
    }


def _emit_series(series: Series, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(dump_json(_series_json_obj(series)))
        return
    for m, c in series.sorted_terms():
        print(f"{c} {m}")


def _cmd_kseries(args) -> int:
    spec = SubsetSpec.parse(args.n, args.set)
    trunc = args.vars if args.vars is not None else max(args.n, 1)
    _emit_series(k_series_q(spec, trunc, args.q), args.json)
    return 0


def _cmd_lseries(args) -> int:
    spec = SubsetSpec.parse(args.n, args.set)
    trunc = args.vars if args.vars is not None else max(args.n, 1)
    _emit_series(l_series(spec, trunc), args.json)
    return 0


def _product(args, extra_vars: int = 0) -> Series:
    kind_l, spec_l = parse_factor(args.left)
    kind_r, spec_r = parse_factor(args.right)
    trunc = args.vars if args.vars is not None else max(spec_l.n + spec_r.n + extra_vars, 1)
    return _factor_series(kind_l, spec_l, trunc) * _factor_series(kind_r, spec_r, trunc)


def _cmd_multiply(args) -> int:
    _emit_series(_product(args), args.json)
    return 0


def _cmd_decompose(args) -> int:
    product = _product(args)
    dec = decompose_k(product) if args.basis == "K" else decompose_l(product)
    if args.json:
        sys.stdout.write(dump_json(dec.to_json_obj()))
        return 0
    for spec, c in dec.sorted_items():
        print(f"{c:+d} {dec.basis}:{dec.degree}:{spec.member_text()}")
    return 0


def _cmd_shuffle_formula(args) -> int:
    spec = SubsetSpec.parse(args.m, args.set)
    specs = k1_product(spec)
    if args.json:
        sys.stdout.write(dump_json(multiset_json_obj(specs)))
        return 0
    for out_spec, mult in multiset_counts(specs):
        print(f"{mult} K:{out_spec.n}:{out_spec.member_text()}")
    return 0


def _cmd_gp(args) -> int:
    spec = gp(args.string)
    if args.json:
        sys.stdout.write(dump_json({"n": spec.n, "set": list(spec.members_sorted())}))
        return 0
    print("{" + spec.member_text() + "}")
    return 0


def _cmd_check_spreading(args) -> int:
    product = _product(args, extra_vars=1)
    ok = check_spreading(product)
    if args.json:
        sys.stdout.write(dump_json({"degree": product.degree, "vars": product.trunc, "spreading": ok}))
    else:
        state = "holds" if ok else "violated"
        print(f"spreading {state}: degree {product.degree}, vars {product.trunc}")
    return 0 if ok else 1


def _cmd_check_q(args) -> int:
    if args.q == 0:
        raise ValueError("q must be nonzero")
    one = SubsetSpec(1)
    square = k_series_q(one, 2, args.q) * k_series_q(one, 2, args.q)
    columns = [k_series_q(spec, 2, args.q) for spec in all_subsets(2)]
    solution = rational_solve(columns, square)
    in_span = solution is not None
    if args.json:
        sys.stdout.write(dump_json({"q": args.q, "in_span": in_span}))
    elif in_span:
        print(f"q={args.q}: the degree-1 square lies in the span of the degree-2 family")
    else:
        print(f"q={args.q}: the degree-1 square is outside the span of the degree-2 family")
    return 0 if in_span else 1


def _suite_closure(max_degree: int = 5) -> tuple[bool, str]:
    count = 0
    for d in range(max_degree + 1):
        trunc = max(d, 1)
        for n in range(d + 1):
            for lam in all_subsets(n):
                for om in all_subsets(d - n):
                    pairs = (
                        (l_series(lam, trunc) * l_series(om, trunc), decompose_l),
                        (k_series(lam, trunc) * k_series(om, trunc), decompose_k),
                    )
                    for target, decompose in pairs:
                        try:
                            dec = decompose(target)
                        except (NotDivisibleError, NonzeroResidualError) as exc:
                            return False, f"{lam!r} x {om!r}: {exc}"
                        if reconstruct(dec, trunc) != target:
                            return False, f"{lam!r} x {om!r}: reconstruction mismatch"
                        count += 1
        _note(f"closure: degree {d} done")
    return True, f"{count} products decomposed and reconstructed exactly"


def _suite_mobius(max_n: int = 6) -> tuple[bool, str]:
    count = 0
    for n in range(max_n + 1):
        for spec in all_subsets(n):
            for outer, inner in ((k_from_l, l_from_k), (l_from_k, k_from_l)):
                acc: dict[SubsetSpec, int] = {}
                for mid, c1 in outer(spec).coeffs.items():
                    for leaf, c2 in inner(mid).coeffs.items():
                        acc[leaf] = acc.get(leaf, 0) + c1 * c2
                if {s: c for s, c in acc.items() if c} != {spec: 1}:
                    return False, f"round trip broke at {spec!r}"
                count += 1
    return True, f"{count} round trips are identities"


def _suite_degree1_rule(max_m: int = 4) -> tuple[bool, str]:
    count = 0
    for m in range(max_m + 1):
        trunc = m + 1
        for om in all_subsets(m):
            total = Series.zero(m + 1, trunc)
            for out_spec in k1_product(om):
                total = total + k_series(out_spec, trunc)
            for left in (SubsetSpec(1), SubsetSpec(1, frozenset({1}))):
                if total != k_series(left, trunc) * k_series(om, trunc):
                    return False, f"expansion mismatch at {om!r} (left {left!r})"
                count += 1
    return True, f"{count} products match their peak-set expansions"


def _suite_case_rule(max_m: int = 4) -> tuple[bool, str]:
    from .core import all_monomials

    count = 0
    for m in range(max_m + 1):
        trunc = m + 1
        one = k_series(SubsetSpec(1), trunc)
        for om in all_subsets(m):
            product = one * k_series(om, trunc)
            for mono in all_monomials(m + 1, trunc):
                if k1_coefficient(mono, om) != product.coefficient(mono):
                    return False, f"case rule disagrees at {mono} for {om!r}"
                count += 1
    return True, f"{count} coefficients match the case rule"


def _suite_q_rigidity() -> tuple[bool, str]:
    one = SubsetSpec(1)
    for q, expect_in_span in ((2, True), (3, False)):
        square = k_series_q(one, 2, q) * k_series_q(one, 2, q)
        columns = [k_series_q(spec, 2, q) for spec in all_subsets(2)]
        if (rational_solve(columns, square) is not None) != expect_in_span:
            return False, f"unexpected span result for q={q}"
    return True, "q=2 representable, q=3 outside the span"


_SUITES: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("closure (n+m <= 5, both bases)", _suite_closure),
    ("inclusion-exclusion round trips (n <= 6)", _suite_mobius),
    ("degree-1 product rule (m <= 4)", _suite_degree1_rule),
    ("case-rule coefficients (m <= 4)", _suite_case_rule),
    ("base-2 rigidity (q = 3 fails, q = 2 works)", _suite_q_rigidity),
]


def _cmd_selftest(args) -> int:
    results = []
    all_ok = True
    for name, suite in _SUITES:
        ok, detail = suite()
        all_ok = all_ok and ok
        results.append({"name": name, "ok": ok, "detail": detail})
        if not args.json:
            print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
    if args.json:
        sys.stdout.write(dump_json({"ok": all_ok, "results": results}))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="borderqsym", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit canonical JSON")
        return p

    p = add("kseries", _cmd_kseries, "construct a K family member")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", default="", help="comma-separated ascending members, empty for {}")
    p.add_argument("--vars", type=int, help="naturals kept (default: max(n, 1))")
    p.add_argument("--q", type=int, default=2, help="coefficient base (default 2)")

    p = add("lseries", _cmd_lseries, "construct an L family member")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", default="")
    p.add_argument("--vars", type=int)

    p = add("multiply", _cmd_multiply, "multiply two family members")
    p.add_argument("--left", required=True, help="factor as KIND:n:set")
    p.add_argument("--right", required=True)
    p.add_argument("--vars", type=int, help="default: total degree")

    p = add("decompose", _cmd_decompose, "decompose a product onto the K or L family")
    p.add_argument("--basis", choices=("K", "L"), default="L")
    p.add_argument("--left", required=True)
    p.add_argument("--right", default="K:0:", help="default: the unit factor K:0:")
    p.add_argument("--vars", type=int, help="default: total degree")

    p = add("shuffle-formula", _cmd_shuffle_formula, "expand the degree-1 K product by peak sets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--set", default="")

    p = add("gp", _cmd_gp, "generalized peak set of an ABCD string")
    p.add_argument("--string", required=True)

    p = add("check-spreading", _cmd_check_spreading, "verify coefficient doubling under resolutions")
    p.add_argument("--left", required=True)
    p.add_argument("--right", default="L:0:", help="default: the unit factor L:0:")
    p.add_argument("--vars", type=int, help="default: total degree + 1")

    p = add("check-q", _cmd_check_q, "test whether the degree-1 square stays in the span for base q")
    p.add_argument("--q", type=int, default=3)

    add("selftest", _cmd_selftest, "run the exhaustive small-degree verification suites")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError:
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (None, 0) else 1
    try:
        return args.func(args)
    except (NotDivisibleError, NonzeroResidualError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        if _verbose():
            traceback.print_exc()
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
