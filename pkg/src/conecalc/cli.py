"""conecalc command line.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .indicators import REGISTRY, IdentityContext, Sampler, verify_identity, verify_sigma_norm_bound


def _seed(args) -> int:
    env = os.environ.get("CONECALC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise io.InputError(f"CONECALC_SEED must be an integer, got {env!r}") from None
    return args.seed


def _emit(text: str | bytes, path: str | None = None) -> None:
    if path:
        Path(path).write_bytes(text if isinstance(text, bytes) else text.encode())
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
    else:
        sys.stdout.write(text)


def _fan(spec: str):
    from .relative import BUILTIN_CONFIGS, EmbeddingConfig, build_relative_fan, builtin_config

    if spec in BUILTIN_CONFIGS:
        return build_relative_fan(builtin_config(spec))
    if not Path(spec).exists():
        raise io.InputError(f"{spec!r} is neither a built-in config ({', '.join(BUILTIN_CONFIGS)}) "
                            "nor a readable file")
    try:
        return build_relative_fan(EmbeddingConfig.from_json(io.load_json(spec)))
    except io.InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise io.InputError(f"{spec}: invalid embedding config: {exc}") from None


# subcommands ----------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cone = io.cone_from_json(io.load_json(args.cone))
    fan = io.fan_from_json(io.load_json(args.fan)) if args.fan else None
    if args.identity != "sigma_norm_bound" and args.identity not in REGISTRY:
        known = sorted(REGISTRY) + ["sigma_norm_bound"]
        raise io.InputError(f"unknown identity {args.identity!r}; known: {', '.join(known)}")
    sampler = Sampler(_seed(args), args.max_coord)
    ctx = IdentityContext(cone=cone, fan=fan)
    try:
        if args.identity == "sigma_norm_bound":
            report = verify_sigma_norm_bound(ctx, sampler, args.samples)
        else:
            report = verify_identity(args.identity, ctx, sampler, args.samples)
    except ValueError as exc:
        # e.g. an invalid fan decomposition
        raise io.InputError(str(exc)) from None
    _emit(io.dumps(report.to_json()))
    return 0 if report.passed else 1


def cmd_transform(args) -> int:
    from .transforms import laplace_cone, laplace_gamma, monte_carlo_cross_check

    cone = io.cone_from_json(io.load_json(args.cone))
    q = io.polynomial(args.q, cone.n)
    out = {"cone": cone.to_json(), "q": q.to_string()}
    lam = io.complex_vector(args.lam) if args.lam else None
    if lam is not None and len(lam) != cone.n:
        raise io.InputError(f"--lambda needs {cone.n} components")
    try:
        tr = laplace_cone(cone, q)
        out["transform"] = tr.to_json()
        if lam is not None:
            out["lambda"] = [io.scalar_str(x) for x in lam]
            out["value"] = io.scalar_str(tr.evaluate(lam))
        if args.gamma:
            if lam is None:
                raise io.InputError("--gamma needs --lambda")
            pe = laplace_gamma(cone, q, lam)
            out["gamma_transform"] = pe.to_json()
            out["purely_polynomial_part"] = pe.purely_polynomial_part().to_string()
            if args.T:
                tv = io.vector(args.T)
                if len(tv) != cone.n:
                    raise io.InputError(f"--T needs {cone.n} components")
                out["T"] = [str(x) for x in tv]
                exact = not any(any(k) for k in pe.parts)
                out["gamma_value"] = io.scalar_str(pe.evaluate_exact(tv) if exact else pe.evaluate(tv))
        if args.mc:
            if lam is None:
                raise io.InputError("--mc needs --lambda")
            est = monte_carlo_cross_check(cone, q, lam, samples=args.samples, seed=_seed(args))
            out["monte_carlo"] = est.to_json()
    except io.InputError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise io.InputError(str(exc)) from None
    _emit(io.dumps(out))
    return 0


def cmd_fan(args) -> int:
    from .figures import fan_figure

    fan = _fan(args.config)
    data = io.dumps(fan.to_json())
    if args.emit_json:
        _emit(data, args.emit_json)
    if args.emit_svg:
        try:
            _emit(fan_figure(fan, io.vector(args.T) if args.T else None), args.emit_svg)
        except ValueError as exc:
            raise io.InputError(str(exc)) from None
    if args.output == "svg" and not args.emit_svg:
        _emit(fan_figure(fan, io.vector(args.T) if args.T else None))
    elif not args.emit_json:
        _emit(data)
    return 0


def cmd_period(args) -> int:
    from .periods import (Character, integrability, is_xi_regular, regularized_period,
                          truncated_period_expansion)

    fan = _fan(args.config)
    form = io.form_from_json(io.load_json(args.form), fan)
    xi = Character(io.complex_vector(args.xi)) if args.xi else Character.zero(fan.dim)
    if len(xi.xi) != fan.dim:
        raise io.InputError(f"--xi needs {fan.dim} components")
    tp = io.vector(args.Tprime) if args.Tprime else None
    regular, bad = is_xi_regular(fan, form, xi)
    out = {"config": fan.config.name, "xi_regular": regular, "irregular": bad}
    if args.check_integrability:
        out["integrable"] = integrability(fan, form, xi)
    if regular:
        out["regularized_period"] = io.scalar_str(regularized_period(fan, form, xi, tp))
        if args.expansion:
            out["expansion"] = truncated_period_expansion(fan, form, xi, tp).to_json()
    _emit(io.dumps(out))
    return 0 if regular else 1


def cmd_eisenstein(args) -> int:
    from .periods import eisenstein_correction_terms, solve_pole

    fan = _fan(args.config)
    c_q = None
    if args.cq:
        raw = io.load_json(args.cq)
        if not isinstance(raw, dict):
            raise io.InputError("--cq must be a JSON object mapping cells to rationals")
        c_q = {fan.cell(k).id: io.rational(v) for k, v in raw.items()}
    t = io.vector(args.T) if args.T else None
    try:
        terms, poles = eisenstein_correction_terms(fan, io.rational(args.c), c_q, t)
    except ValueError as exc:
        raise io.InputError(str(exc)) from None
    roots = sorted({r for term in terms for r in solve_pole(term)})
    out = {"config": fan.config.name, "c": args.c, "terms": [x.to_json() for x in terms],
           "poles": [str(p) for p in poles], "poles_match_roots": roots == poles}
    _emit(io.dumps(out))
    return 0 if roots == poles else 1


def cmd_figure(args) -> int:
    from .figures import FIGURES, emit_figure

    if args.name not in FIGURES:
        raise io.InputError(f"unknown figure {args.name!r}; known: {', '.join(FIGURES)}")
    params = {}
    if args.cone:
        params["cone"] = io.cone_from_json(io.load_json(args.cone))
    if args.T:
        params["T"] = io.vector(args.T)
    if args.config:
        params["config"] = args.config
    try:
        svg = emit_figure(args.name, params)
    except ValueError as exc:
        raise io.InputError(str(exc)) from None
    _emit(svg, args.out)
    return 0


def cmd_suite(args) -> int:
    from .suites import SUITES, SuiteConfig, run_suite

    if args.name not in SUITES:
        raise io.InputError(f"unknown suite {args.name!r}; known: {', '.join(SUITES)}")
    cfg = SuiteConfig(args.name, seed=_seed(args), out_dir=args.out_dir)
    if args.samples is not None:
        cfg.samples = args.samples
    if args.cones is not None:
        cfg.cones = args.cones
    if args.forms is not None:
        cfg.forms = args.forms
    code, report = run_suite(cfg)
    _emit(io.dumps(report), args.report)
    return code


# parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conecalc", description="Exact cone truncation calculus")
    ap.add_argument("--output", choices=("json", "svg"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check an identity at random rational points")
    v.add_argument("--identity", required=True)
    v.add_argument("--cone", required=True)
    v.add_argument("--fan")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-coord", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", help="Laplace transform of a cone or of Γ")
    t.add_argument("--cone", required=True)
    t.add_argument("--q")
    t.add_argument("--lambda", dest="lam")
    t.add_argument("--gamma", action="store_true")
    t.add_argument("--T")
    t.add_argument("--mc", action="store_true")
    t.add_argument("--samples", type=int, default=10 ** 6)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_transform)

    f = sub.add_parser("fan", help="relative fan of an embedding")
    f.add_argument("--config", required=True)
    f.add_argument("--emit-svg")
    f.add_argument("--emit-json")
    f.add_argument("--T")
    f.set_defaults(func=cmd_fan)

    p = sub.add_parser("period", help="regularized period of a toy automorphic form")
    p.add_argument("--config", required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--xi")
    p.add_argument("--Tprime")
    p.add_argument("--expansion", action="store_true")
    p.add_argument("--check-integrability", action="store_true")
    p.set_defaults(func=cmd_period)

    e = sub.add_parser("eisenstein", help="Eisenstein correction terms and poles")
    e.add_argument("--config", required=True)
    e.add_argument("--c", required=True)
    e.add_argument("--cq")
    e.add_argument("--T")
    e.set_defaults(func=cmd_eisenstein)

    g = sub.add_parser("figure", help="write an SVG figure")
    g.add_argument("name")
    g.add_argument("--cone")
    g.add_argument("--T")
    g.add_argument("--config")
    g.add_argument("--out")
    g.set_defaults(func=cmd_figure)

    s = sub.add_parser("suite", help="run a bundled verification suite")
    s.add_argument("name")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int)
    s.add_argument("--cones", type=int)
    s.add_argument("--forms", type=int)
    s.add_argument("--out-dir", default=".")
    s.add_argument("--report")
    s.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.InputError as exc:
        print(f"conecalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
