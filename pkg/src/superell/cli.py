"""Command-line interface.

Subcommands: census, seed-check, family, density, lpoly.  Reports are JSON
(default) or CSV where a tabular form exists; exit code 0 on success, 2 on a
violated invariant or bad input (the report names the invariant), 3 when a
resource guard refused the computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import family_experiment, run_census, seed_check
from .characters import DirichletChar
from .curves import SuperellipticModel
from .density import empirical_density, product_form, truncated_density
from .errors import InputError, InvariantViolation, ResourceLimit
from .ffield import make_field
from .lfunction import central_value_is_zero, l_polynomial, strip_trivial_factor
from .polyring import poly_from_json


def _write_out(payload, out_path: "str | None", csv_text: "str | None" = None) -> None:
    if out_path is None:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return
    if out_path.endswith(".csv"):
        if csv_text is None:
            raise InputError("this report has no CSV form")
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        return
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_caps(raw: "str | None"):
    if raw is None:
        return None
    if raw.startswith("{"):
        return {int(k): v for k, v in json.loads(raw).items()}
    return int(raw)


def _model_from_args(args) -> SuperellipticModel:
    F = make_field(args.p, args.e)
    if getattr(args, "base", None):
        raw = args.base
        if raw.startswith("@"):
            with open(raw[1:], encoding="utf-8") as fh:
                raw = fh.read()
        return SuperellipticModel.from_json(F, json.loads(raw))
    if args.components is None or args.ell is None:
        raise InputError("density needs either --base or both --ell and --components")
    comps = [poly_from_json(F, c) for c in json.loads(args.components)]
    twist = F.from_int(args.twist)
    return SuperellipticModel(args.ell, F, twist, comps)


def main(argv: "list[str] | None" = None) -> int:
    parser = argparse.ArgumentParser(prog="superell")
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", help="full order-ell character census with vanishing decisions")
    p_census.add_argument("--p", type=int, required=True)
    p_census.add_argument("--e", type=int, default=1)
    p_census.add_argument("--ell", type=int, required=True)
    p_census.add_argument("--max-degree", type=int, required=True)
    p_census.add_argument("--sample-decomp", type=int, default=25)
    p_census.add_argument("--cache", default=None)
    p_census.add_argument("--out", default=None)

    p_seed = sub.add_parser("seed-check", help="verify a supersingular seed construction")
    p_seed.add_argument("--kind", choices=["thm41", "thm42", "f25twist"], required=True)
    p_seed.add_argument("--p", type=int, required=True)
    p_seed.add_argument("--ell", type=int, default=None)

    p_family = sub.add_parser("family", help="generate and verify a vanishing family")
    p_family.add_argument("--seed-kind", choices=["f25twist", "thm41"], required=True)
    p_family.add_argument("--p", type=int, required=True)
    p_family.add_argument("--n", type=int, required=True)
    p_family.add_argument("--verify-vanishing", action="store_true")
    p_family.add_argument("--max-pairs-per-degree", default=None,
                          help="int, or JSON dict keyed by deg h")
    p_family.add_argument("--max-members-per-degree", default=None,
                          help="int, or JSON dict keyed by deg h")
    p_family.add_argument("--out", default=None)

    p_density = sub.add_parser("density", help="squarefree sieve density for a base model")
    p_density.add_argument("--base", default=None,
                           help="model JSON (inline, or @path to a file); overrides --components")
    p_density.add_argument("--p", type=int, required=True)
    p_density.add_argument("--e", type=int, default=1)
    p_density.add_argument("--ell", type=int, default=None)
    p_density.add_argument("--twist", type=int, default=1)
    p_density.add_argument("--components", default=None,
                           help='JSON list of coefficient lists, e.g. \'[[0,6,0,1],[1]]\'')
    p_density.add_argument("--deg-max", type=int, required=True)
    p_density.add_argument("--samples", type=int, default=0)
    p_density.add_argument("--seed", type=int, default=0)
    p_density.add_argument("--h-deg", type=int, default=2)
    p_density.add_argument("--coprime-only", action="store_true")
    p_density.add_argument("--out", default=None)

    p_lpoly = sub.add_parser("lpoly", help="inspect one character's L-polynomial")
    p_lpoly.add_argument("--p", type=int, required=True)
    p_lpoly.add_argument("--e", type=int, default=1)
    p_lpoly.add_argument("--ell", type=int, required=True)
    p_lpoly.add_argument("--conductor-factors", required=True,
                         help='JSON [[poly, exponent], ...], e.g. \'[[[0,1],1],[[6,1],2]]\'')
    p_lpoly.add_argument("--out", default=None)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except InvariantViolation as exc:
        json.dump(
            {"error": "invariant_violation", "invariant": exc.invariant, "detail": exc.detail},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 2
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except ResourceLimit as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return 3


def _dispatch(args) -> int:
    if args.command == "census":
        rep = run_census(
            args.p,
            args.e,
            args.ell,
            args.max_degree,
            sample_decomp=args.sample_decomp,
            cache_path=args.cache,
        )
        _write_out(rep.to_json(), args.out, csv_text=rep.per_degree_csv())
        return 0

    if args.command == "seed-check":
        rep = seed_check(args.kind, args.p, args.ell)
        _write_out(rep.to_json(), None)
        return 0

    if args.command == "family":
        out = family_experiment(
            args.seed_kind,
            args.n,
            p=args.p,
            verify_vanishing=args.verify_vanishing,
            max_pairs_per_degree=_parse_caps(args.max_pairs_per_degree),
            max_members_per_degree=_parse_caps(args.max_members_per_degree),
        )
        _write_out(out, args.out)
        return 0

    if args.command == "density":
        model = _model_from_args(args)
        form = product_form(model)
        emp = None
        if args.samples:
            emp = empirical_density(
                model, args.h_deg, args.samples, args.seed, coprime_only=args.coprime_only
            )
        rep = truncated_density(form, args.deg_max, empirical=emp)
        _write_out(rep.to_json(), args.out)
        return 0

    if args.command == "lpoly":
        F = make_field(args.p, args.e)
        pairs = [
            (poly_from_json(F, pj), int(e)) for pj, e in json.loads(args.conductor_factors)
        ]
        chi = DirichletChar(F, args.ell, pairs)
        L = l_polynomial(chi)
        stripped, k = strip_trivial_factor(L, chi)
        payload = {
            "schema_version": 1,
            "kind": "lpoly",
            "char": chi.to_json(),
            "even": chi.even,
            "L": L.to_json(),
            "stripped": stripped.to_json(),
            "trivial_factor_exponent": k,
            "central_value_is_zero": central_value_is_zero(stripped),
        }
        _write_out(payload, args.out)
        return 0

    raise InputError(f"unknown command {args.command!r}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
