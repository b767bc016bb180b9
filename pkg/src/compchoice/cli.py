"""Command-line surface: verify, convert, enumerate, search, fixtures.

Exit codes are stable: 0 when everything requested holds, 1 for a semantic
failure (a refuted expectation or an unmet route precondition, with a
witness in the report), 2 for unusable input, 3 for a breach of an
invariant the mathematics guarantees (never a warning).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import documents, enumeration, fixtures
from .choicefn import AXIOMS, ChoiceFunction, Witness, analyze, ideal_cf
from .core import (
    FiniteLattice,
    GroundSet,
    Preorder,
    SetFamily,
    Subset,
    is_intersection_closed,
    is_union_closed,
    powerset_limit,
    set_powerset_limit,
    union_closure,
)
from .errors import (
    CompChoiceError,
    DocumentError,
    InternalInvariantError,
    LiftVerificationError,
    PowersetLimitError,
    PreconditionError,
)
from .latticecf import (
    LatticeCF,
    LatticeFunction,
    analyze_lattice,
    argmax_downset,
    classify_lattice,
    induce_lattice_cf,
)
from .latticecf import synthesize as synthesize_lattice
from .pretop import (
    NeighborhoodSystem,
    cf_from_neighborhood_system,
    decompose,
    interior_cf,
    neighborhood_system_of,
    open_sets,
    preorder_from_cf,
)
from .supermod import (
    SetFunction,
    argmax_family,
    classify,
    default_epsilon,
    induce_cf,
    is_supermodular_order,
    order_from_setfn,
    perturb,
    synthesize,
)
from .transport import Lift, direct_image, economical_lift, full_lift

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

DEFAULT_SEED = 20110

_EXPECT_ALIASES = {
    "substitutable": "substitutable_heredity",
    "heredity": "substitutable_heredity",
    "union-closed": "union_closed",
    "intersection-closed": "intersection_closed",
}


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by the subcommands."""

    max_n: int | None = None
    epsilon: Fraction | None = None
    seed: int = DEFAULT_SEED
    output: str | None = None
    format: str = "human"

    def __post_init__(self) -> None:
        if self.max_n is not None and self.max_n < 1:
            raise ValueError("--max-n must be at least 1")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("--epsilon must be positive")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _witness_json(w: Any) -> Any:
    if isinstance(w, Witness):
        out: dict[str, Any] = {
            "kind": w.kind,
            "menus": [m.sorted_names() for m in w.menus],
        }
        if w.element is not None:
            out["element"] = w.element
        return out
    if hasattr(w, "elements"):  # LatticeWitness
        return {"kind": w.kind, "elements": list(w.elements)}
    if isinstance(w, tuple):
        return [x.sorted_names() if isinstance(x, Subset) else x for x in w]
    return str(w)


def _witness_text(w: Any) -> str:
    if isinstance(w, Witness) or hasattr(w, "describe"):
        return w.describe()
    if isinstance(w, tuple):
        return " ".join(
            f"{l}={x!r}" for l, x in zip("AB", w)
        )
    return str(w)


# ---------------------------------------------------------------------------
# verify


def _inspect(obj: Any) -> tuple[str, dict[str, bool], dict[str, Any]]:
    """Kind name, property flags, and witnesses for whatever was loaded."""
    if isinstance(obj, ChoiceFunction):
        rep = analyze(obj)
        return "choice_function", rep.flags(), dict(rep.witnesses)
    if isinstance(obj, SetFunction):
        cls = classify(obj)
        order_ok, order_wit = is_supermodular_order(order_from_setfn(obj))
        flags = {
            "supermodular": cls.is_supermodular,
            "submodular": cls.is_submodular,
            "modular": cls.is_modular,
            "neither": cls.kind == "neither",
            "monotone": obj.is_monotone(),
            "supermodular_order": order_ok,
        }
        wits: dict[str, Any] = {}
        if cls.not_supermodular:
            wits["supermodular"] = cls.not_supermodular
        if cls.not_submodular:
            wits["submodular"] = cls.not_submodular
        if order_wit:
            wits["supermodular_order"] = order_wit
        return "set_function", flags, wits
    if isinstance(obj, LatticeCF):
        rep = analyze_lattice(obj)
        return "lattice_cf", rep.flags(), dict(rep.witnesses)
    if isinstance(obj, LatticeFunction):
        cls = classify_lattice(obj)
        flags = {
            "supermodular": cls.is_supermodular,
            "submodular": cls.is_submodular,
            "modular": cls.is_modular,
            "neither": cls.kind == "neither",
        }
        wits = {}
        if cls.not_supermodular:
            wits["supermodular"] = cls.not_supermodular
        if cls.not_submodular:
            wits["submodular"] = cls.not_submodular
        return "lattice_function", flags, wits
    if isinstance(obj, SetFamily):
        return (
            "family",
            {
                "union_closed": is_union_closed(obj),
                "intersection_closed": is_intersection_closed(obj),
                "contains_empty": 0 in obj.masks,
            },
            {},
        )
    if isinstance(obj, Preorder):
        return "preorder", {"valid": True}, {}
    if isinstance(obj, FiniteLattice):
        return "lattice", {"valid": True}, {}
    if isinstance(obj, NeighborhoodSystem):
        return (
            "neighborhood_system",
            {"point_membership": True, "antichain": True, "refinement": True},
            {},
        )
    if isinstance(obj, Lift):
        return "lift", {"verified": True}, {}
    raise InternalInvariantError(f"no inspection for {type(obj).__name__}")


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    lift_failure: str | None = None
    try:
        obj = documents.load_path(args.input)
    except LiftVerificationError as exc:
        lift_failure = str(exc)
        obj = documents.load_path(args.input, verify=False)
    kind, flags, wits = _inspect(obj)
    claim_refuted = lift_failure is not None
    if claim_refuted:
        # the document itself asserts verified status, so a failed
        # re-verification is a semantic failure even with nothing expected
        flags = {"verified": False}
        wits = {"verified": lift_failure}
    expects = []
    for raw in args.expect or []:
        for token in raw.split(","):
            token = token.strip()
            if token:
                expects.append(token)
    normalized = []
    for e in expects:
        key = _EXPECT_ALIASES.get(e, e.replace("-", "_"))
        if key not in flags:
            _emit(f"error: nothing named {e!r} is checked for a {kind} document")
            return EXIT_INPUT
        normalized.append(key)
    expect_ok = all(flags[k] for k in normalized)
    if config.format == "json":
        payload = {
            "kind": "verify_report",
            "input_kind": kind,
            "flags": flags,
            "witnesses": {k: _witness_json(w) for k, w in wits.items()},
            "expect": normalized,
            "expect_ok": expect_ok,
        }
        _emit(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        _emit(f"input kind: {kind}")
        width = max(len(k) for k in flags)
        for k, v in flags.items():
            line = f"  {k.ljust(width)}  {'yes' if v else 'NO'}"
            if not v and k in wits:
                line += f"   witness: {_witness_text(wits[k])}"
            _emit(line)
        for k in normalized:
            _emit(f"expected {k}: {'holds' if flags[k] else 'REFUTED'}")
    return EXIT_OK if expect_ok and not claim_refuted else EXIT_SEMANTIC


# ---------------------------------------------------------------------------
# convert


def _check(name: str, ok: bool) -> dict[str, Any]:
    return {"name": name, "ok": bool(ok)}


def _route_cf_to_family(f: ChoiceFunction, config: RunConfig) -> tuple[Any, list[dict]]:
    fam = decompose(f)
    checks = [_check("interior of the open sets reproduces the input", interior_cf(fam).table == f.table)]
    return fam, checks


def _route_family_to_cf(fam: SetFamily, config: RunConfig) -> tuple[Any, list[dict]]:
    f = interior_cf(fam)
    checks = [
        _check(
            "open sets of the interior equal the union closure of the input",
            open_sets(f).masks == union_closure(fam).masks,
        )
    ]
    return f, checks


def _route_cf_to_setfn(f: ChoiceFunction, config: RunConfig, do_perturb: bool = False) -> tuple[Any, list[dict]]:
    u = synthesize(f)
    checks = [
        _check("synthesized function is supermodular", classify(u).is_supermodular),
        _check("induced choice reproduces the input", induce_cf(u).table == f.table),
    ]
    if do_perturb:
        eps = config.epsilon if config.epsilon is not None else default_epsilon(f.ground)
        u = perturb(u, eps)
        singleton = all(
            argmax_family(u, Subset(f.ground, m)).masks == frozenset((f.table[m],))
            for m in range(f.ground.n_masks)
        )
        checks.append(_check("perturbed maximizer is unique and equals the choice", singleton))
        checks.append(_check("perturbed function is supermodular", classify(u).is_supermodular))
    return u, checks


def _route_setfn_to_cf(u: SetFunction, config: RunConfig) -> tuple[Any, list[dict]]:
    f = induce_cf(u)
    ok = True
    for m in range(u.ground.n_masks):
        fam = argmax_family(u, Subset(u.ground, m)).masks
        if f.table[m] not in fam or any(f.table[m] & ~other for other in fam):
            ok = False
            break
    checks = [_check("choice is the least maximizer on every menu", ok)]
    return f, checks


def _route_cf_to_preorder(f: ChoiceFunction, config: RunConfig) -> tuple[Any, list[dict]]:
    p = preorder_from_cf(f)
    checks = [_check("largest-ideal chooser reproduces the input", ideal_cf(p).table == f.table)]
    return p, checks


def _route_preorder_to_cf(p: Preorder, config: RunConfig) -> tuple[Any, list[dict]]:
    f = ideal_cf(p)
    checks = [
        _check(
            "preorder extracted back from the chooser matches the input",
            preorder_from_cf(f).ideal_masks == p.ideal_masks,
        )
    ]
    return f, checks


def _route_cf_to_lift(kind: str) -> Callable:
    def route(f: ChoiceFunction, config: RunConfig) -> tuple[Any, list[dict]]:
        lift = full_lift(f) if kind == "full" else economical_lift(f)
        checks = [
            _check(
                "pair chooser is completely complementary",
                lift.g.analysis.completely_complementary,
            ),
            _check(
                "direct image reproduces the input",
                direct_image(lift.phi, lift.g).table == f.table,
            ),
        ]
        return lift, checks

    return route


def _route_cf_to_neighborhoods(f: ChoiceFunction, config: RunConfig) -> tuple[Any, list[dict]]:
    system = neighborhood_system_of(f)
    checks = [
        _check(
            "choice rebuilt from the system reproduces the input",
            cf_from_neighborhood_system(system).table == f.table,
        )
    ]
    return system, checks


def _route_neighborhoods_to_cf(system: NeighborhoodSystem, config: RunConfig) -> tuple[Any, list[dict]]:
    f = cf_from_neighborhood_system(system)
    checks = [
        _check(
            "minimal neighborhoods of the choice recover the system",
            neighborhood_system_of(f).minimal == system.minimal,
        )
    ]
    return f, checks


def _route_lattice_cf_to_fn(f: LatticeCF, config: RunConfig) -> tuple[Any, list[dict]]:
    u = synthesize_lattice(f)
    checks = [
        _check("synthesized function is supermodular", classify_lattice(u).is_supermodular),
        _check("induced choice reproduces the input", induce_lattice_cf(u).table == f.table),
    ]
    return u, checks


def _route_lattice_fn_to_cf(u: LatticeFunction, config: RunConfig) -> tuple[Any, list[dict]]:
    f = induce_lattice_cf(u)
    ok = True
    for x in u.lattice.elems:
        args = argmax_downset(u, x)
        fx = f.apply(x)
        if fx not in args or any(not u.lattice.leq(fx, y) for y in args):
            ok = False
            break
    checks = [_check("choice is the least maximizer below every element", ok)]
    return f, checks


_ROUTES: dict[tuple[type, str], Callable] = {
    (ChoiceFunction, "family"): _route_cf_to_family,
    (ChoiceFunction, "pretopology"): _route_cf_to_family,
    (SetFamily, "cf"): _route_family_to_cf,
    (ChoiceFunction, "setfn"): _route_cf_to_setfn,
    (SetFunction, "cf"): _route_setfn_to_cf,
    (ChoiceFunction, "preorder"): _route_cf_to_preorder,
    (Preorder, "cf"): _route_preorder_to_cf,
    (ChoiceFunction, "lift"): _route_cf_to_lift("full"),
    (ChoiceFunction, "lift-economical"): _route_cf_to_lift("economical"),
    (ChoiceFunction, "neighborhoods"): _route_cf_to_neighborhoods,
    (NeighborhoodSystem, "cf"): _route_neighborhoods_to_cf,
    (LatticeCF, "lattice-fn"): _route_lattice_cf_to_fn,
    (LatticeFunction, "lattice-cf"): _route_lattice_fn_to_cf,
}


def cmd_convert(args: argparse.Namespace, config: RunConfig) -> int:
    obj = documents.load_path(args.input)
    target = args.to
    route = _ROUTES.get((type(obj), target))
    if route is None:
        kinds = sorted(t for cls, t in _ROUTES if isinstance(obj, cls))
        _emit(
            f"error: no conversion from this input to {target!r}; "
            f"valid targets here: {', '.join(kinds) or 'none'}"
        )
        return EXIT_INPUT
    try:
        if route is _route_cf_to_setfn:
            out, checks = route(obj, config, do_perturb=args.perturb)
        else:
            out, checks = route(obj, config)
    except PreconditionError as exc:
        _emit(f"conversion refused: {exc}")
        return EXIT_SEMANTIC
    stamp = {
        "route": f"{documents.to_document(obj)['kind']} -> {target}",
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
    }
    doc = documents.to_document(out)
    if not stamp["ok"]:
        _emit(f"re-verification FAILED on route {stamp['route']}:")
        for c in checks:
            _emit(f"  [{'ok' if c['ok'] else 'FAILED'}] {c['name']}")
        return EXIT_INTERNAL
    if config.output:
        documents.dump_path(doc, config.output)
        if config.format == "json":
            _emit(json.dumps({"stamp": stamp, "output": config.output}, ensure_ascii=False))
        else:
            _emit(f"wrote {config.output}")
            for c in checks:
                _emit(f"  [ok] {c['name']}")
    else:
        if config.format == "json":
            _emit(json.dumps({"document": doc, "stamp": stamp}, ensure_ascii=False, indent=2))
        else:
            for c in checks:
                _emit(f"  [ok] {c['name']}")
            _emit(documents.dumps(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args: argparse.Namespace, config: RunConfig) -> int:
    n = args.n
    if n < 0 or n > enumeration.MAX_FAMILY_N:
        _emit(f"error: enumeration supports 0 <= n <= {enumeration.MAX_FAMILY_N}")
        return EXIT_INPUT
    ground = GroundSet(tuple(f"x{i}" for i in range(n)))
    if args.stream:
        for fam in enumeration.iter_union_closed_families(ground):
            _emit(json.dumps(documents.family_to_doc(fam), ensure_ascii=False))
    filter_count, family_count = enumeration.dual_enumeration_counts(n)
    if filter_count is not None and filter_count != family_count:
        raise InternalInvariantError(
            f"enumeration routes disagree at n={n}: "
            f"table filter {filter_count} vs families {family_count}"
        )
    if config.format == "json":
        _emit(
            json.dumps(
                {
                    "kind": "enumeration_report",
                    "n": n,
                    "contracting_filter_count": filter_count,
                    "union_closed_family_count": family_count,
                    "agree": filter_count is None or filter_count == family_count,
                },
                ensure_ascii=False,
            )
        )
    else:
        if filter_count is None:
            _emit(
                f"n={n}: union-closed families {family_count} "
                f"(table filter skipped above n={enumeration.MAX_FILTER_N})"
            )
        else:
            _emit(
                f"n={n}: table filter {filter_count}, union-closed families "
                f"{family_count} -> agree"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _search_ground(n: int) -> GroundSet:
    return GroundSet(tuple("abcdefgh"[:n]))


def _induce_ints(vals: Sequence[int], n_masks: int) -> list[int] | None:
    table = []
    for m in range(n_masks):
        best = None
        inter = None
        sub = m
        while True:
            v = vals[sub]
            if best is None or v > best:
                best = v
                inter = sub
            elif v == best:
                inter &= sub
            if sub == 0:
                break
            sub = (sub - 1) & m
        if vals[inter] != best:
            return None
        table.append(inter)
    return table


def _first_heredity_violation(table: Sequence[int], n_masks: int) -> tuple[int, int] | None:
    for a in range(n_masks):
        for b in range(n_masks):
            if a & ~b == 0 and table[b] & a & ~table[a]:
                return a, b
    return None


def _search_submodular_not_substitutable(
    n: int, vmax: int, limit: int | None
) -> tuple[int, list[dict]]:
    ground = _search_ground(n)
    n_masks = 1 << n
    base = vmax + 1
    total = base**n_masks
    idx = np.arange(total, dtype=np.int64)
    table = np.stack(
        [(idx // base**m) % base for m in range(n_masks)], axis=1
    ).astype(np.int16)
    viol = np.zeros(total, dtype=bool)
    for a in range(n_masks):
        for b in range(a + 1, n_masks):
            lo, hi = a & b, a | b
            if lo == a or lo == b:  # comparable menus force equality
                continue
            viol |= table[:, a] + table[:, b] < table[:, lo] + table[:, hi]
    matches: list[dict] = []
    found = 0
    for t in np.nonzero(~viol)[0]:
        vals = [int(v) for v in table[t]]
        induced = _induce_ints(vals, n_masks)
        if induced is None:
            continue
        wit = _first_heredity_violation(induced, n_masks)
        if wit is None:
            continue
        found += 1
        if limit is None or len(matches) < limit:
            u = SetFunction(ground, tuple(Fraction(v) for v in vals))
            a, b = wit
            offending = induced[b] & a & ~induced[a]
            matches.append(
                {
                    "set_function": documents.setfn_to_doc(u),
                    "heredity_witness": {
                        "A": Subset(ground, a).sorted_names(),
                        "B": Subset(ground, b).sorted_names(),
                        "element": ground.elements[
                            (offending & -offending).bit_length() - 1
                        ],
                    },
                }
            )
        if limit is not None and found >= limit:
            break
    return found, matches


def _search_order_violations(n: int, limit: int | None) -> tuple[int, list[dict]]:
    ground = _search_ground(n)
    found = 0
    matches: list[dict] = []
    for f in enumeration.iter_complementary_by_families(ground):
        ok, wit = is_supermodular_order(order_from_setfn(synthesize(f)))
        if ok:
            continue
        found += 1
        if limit is None or len(matches) < limit:
            matches.append(
                {
                    "choice_function": documents.cf_to_doc(f),
                    "order_witness": [wit[0].sorted_names(), wit[1].sorted_names()],
                }
            )
        if limit is not None and found >= limit:
            break
    return found, matches


def _search_custom(n: int, predicate: str, limit: int | None) -> tuple[int, list[dict]]:
    terms = []
    for token in predicate.split("&"):
        token = token.strip()
        negate = token.startswith("!")
        name = token[1:].strip() if negate else token
        name = _EXPECT_ALIASES.get(name, name.replace("-", "_"))
        if name not in AXIOMS:
            raise DocumentError(
                f"unknown axiom {name!r} in predicate; choose from {', '.join(AXIOMS)}"
            )
        terms.append((name, negate))
    ground = _search_ground(n)
    found = 0
    matches: list[dict] = []
    for f in enumeration.iter_contracting_tables(ground):
        rep = f.analysis
        if all(rep.flag(name) != negate for name, negate in terms):
            found += 1
            if limit is None or len(matches) < limit:
                matches.append({"choice_function": documents.cf_to_doc(f)})
            if limit is not None and found >= limit:
                break
    return found, matches


def cmd_search(args: argparse.Namespace, config: RunConfig) -> int:
    n = args.n
    if n < 1 or n > enumeration.MAX_FILTER_N:
        _emit(f"error: search supports 1 <= n <= {enumeration.MAX_FILTER_N}")
        return EXIT_INPUT
    limit = args.limit
    if args.pattern == "submodular-not-substitutable":
        found, matches = _search_submodular_not_substitutable(n, args.value_max, limit)
    elif args.pattern == "supermodular-order-violation":
        found, matches = _search_order_violations(n, limit)
    elif args.pattern == "custom-predicate":
        if not args.predicate:
            _emit("error: --predicate is required with the custom-predicate pattern")
            return EXIT_INPUT
        found, matches = _search_custom(n, args.predicate, limit)
    else:
        _emit(f"error: unknown pattern {args.pattern!r}")
        return EXIT_INPUT
    truncated = limit is not None and found >= limit
    if config.format == "json":
        _emit(
            json.dumps(
                {
                    "kind": "search_report",
                    "pattern": args.pattern,
                    "n": n,
                    "seed": config.seed,
                    "found": found,
                    "stopped_at_limit": truncated,
                    "matches": matches,
                },
                ensure_ascii=False,
                indent=2,
            )
        )
    else:
        for m in matches:
            _emit(json.dumps(m, ensure_ascii=False))
        tail = " (stopped at limit)" if truncated else ""
        _emit(f"pattern {args.pattern} at n={n}: {found} match(es){tail} [seed {config.seed}]")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fixtures


def cmd_fixtures(args: argparse.Namespace, config: RunConfig) -> int:
    if not args.name:
        for name, desc in fixtures.list_fixtures():
            _emit(f"{name}: {desc}")
        return EXIT_OK
    try:
        doc = fixtures.get_fixture_document(args.name)
    except ValueError as exc:
        _emit(f"error: {exc}")
        return EXIT_INPUT
    if config.output:
        documents.dump_path(doc, config.output)
        _emit(f"wrote {config.output}")
    else:
        _emit(documents.dumps(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compchoice",
        description=(
            "Construct, verify and inter-convert complementary choice functions "
            "on finite powersets and lattices."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("human", "json"), default="human", help="output style"
    )
    common.add_argument(
        "--max-n", type=int, default=None, help="override the powerset-table cap"
    )
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="seed for randomized runs"
    )
    common.add_argument("-o", "--output", default=None, help="write the result here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="analyze a document's axioms")
    p.add_argument("input", help="path to a JSON document")
    p.add_argument(
        "--expect",
        action="append",
        help="comma-separated properties that must hold (exit 1 otherwise)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "convert", parents=[common], help="convert between representations"
    )
    p.add_argument("input", help="path to a JSON document")
    p.add_argument(
        "--to",
        required=True,
        choices=sorted({t for _, t in _ROUTES}),
        help="target representation",
    )
    p.add_argument(
        "--perturb",
        action="store_true",
        help="after synthesizing a set function, sharpen maximizers to singletons",
    )
    p.add_argument(
        "--epsilon", default=None, help="perturbation rate (rational, default 1/(n+1))"
    )
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser(
        "enumerate",
        parents=[common],
        help="count complementary choice functions along both enumeration routes",
    )
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument(
        "--stream", action="store_true", help="also emit every family, one per line"
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser(
        "search", parents=[common], help="hunt instances matching a pattern"
    )
    p.add_argument(
        "--pattern",
        required=True,
        choices=(
            "submodular-not-substitutable",
            "supermodular-order-violation",
            "custom-predicate",
        ),
    )
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument(
        "--value-max",
        type=int,
        default=4,
        help="largest table value for the exhaustive set-function scan",
    )
    p.add_argument("--limit", type=int, default=None, help="stop after this many matches")
    p.add_argument("--predicate", default=None, help="axiom expression like 'monotone&!consistent'")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fixtures", parents=[common], help="list or print built-in instances")
    p.add_argument("--name", default=None, help="fixture to print (omit to list)")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        epsilon = Fraction(args.epsilon) if getattr(args, "epsilon", None) else None
    except (ValueError, ZeroDivisionError):
        _emit(f"error: --epsilon must be a rational like 1/4, got {args.epsilon!r}")
        return EXIT_INPUT
    try:
        config = RunConfig(
            max_n=args.max_n,
            epsilon=epsilon,
            seed=args.seed,
            output=args.output,
            format=args.format,
        )
    except ValueError as exc:
        _emit(f"error: {exc}")
        return EXIT_INPUT
    previous_limit = powerset_limit()
    if config.max_n is not None:
        set_powerset_limit(config.max_n)
    try:
        return args.func(args, config)
    except DocumentError as exc:
        _emit(f"input error: {exc}")
        return EXIT_INPUT
    except PowersetLimitError as exc:
        _emit(f"input error: {exc}")
        return EXIT_INPUT
    except InternalInvariantError as exc:
        _emit(f"internal invariant breached: {exc}")
        return EXIT_INTERNAL
    except CompChoiceError as exc:
        _emit(f"semantic failure: {exc}")
        return EXIT_SEMANTIC
    finally:
        set_powerset_limit(previous_limit)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
