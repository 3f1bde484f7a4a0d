"""Command-line interface.

Every command prints one JSON object, except the tabular commands
(``identity``, ``compare``) which print CSV by default. Floats carry 12
significant digits. Exit status is 0 on success and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .asymptotics import AsymptoticCoefficient, conjunction_probability_asymptotic, theorem1_coefficient
from .ec import b_constants, ec_densities, ec_prediction, ec_volume_term_coefficient, identity_check
from .exceptions import ConjprobError, UnsupportedCaseError
from .geometry import (
    MAX_ND,
    BallConfiguration,
    DomainSpec,
    intersection_volume_closed,
    intersection_volume_mc,
    intersection_volume_polynomial,
    intersection_volume_special,
)
from .montecarlo import default_workers
from .simulation import (
    PickandsPlan,
    SimulationPlan,
    compare_asymptotic,
    estimate_conjunction_probability,
    estimate_pickands,
    pickands_claimed_value,
)

TABULAR = {"identity", "compare"}


class FlagError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _num(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            return None
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _floats(flag: str, text: str | None) -> list[float]:
    if text is None:
        raise FlagError(flag, "is required")
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise FlagError(flag, f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise FlagError(flag, "needs at least one value")
    return vals


def _need(args, name: str, flag: str):
    val = getattr(args, name)
    if val is None:
        raise FlagError(flag, "is required")
    return val


def _positive(flag: str, val, allow_zero=False):
    if val < 0 or (val == 0 and not allow_zero) or (isinstance(val, float) and not math.isfinite(val)):
        raise FlagError(flag, f"must be positive, got {val}")
    return val


def _nd(args) -> tuple[int, int]:
    n = _positive("--n", _need(args, "n", "--n"))
    d = _positive("--d", _need(args, "d", "--d"))
    if n * d > MAX_ND:
        raise FlagError("--n", f"n*d must be <= {MAX_ND}")
    return n, d


def _domain(args, d: int | None) -> DomainSpec:
    if args.sides is not None:
        sides = _floats("--sides", args.sides)
        if any(s <= 0 for s in sides):
            raise FlagError("--sides", "side lengths must be positive")
        if d is not None and len(sides) != d:
            raise FlagError("--sides", f"expected {d} side lengths, got {len(sides)}")
        return DomainSpec.box(sides)
    if args.radii is not None:
        radii = _floats("--radii", args.radii)
        if len(radii) != 1 or radii[0] <= 0:
            raise FlagError("--radii", "a ball domain takes one positive radius")
        if d is None:
            raise FlagError("--d", "is required for a ball domain")
        return DomainSpec.ball(d, radii[0])
    raise FlagError("--sides", "a domain is required (--sides for a box, or --radii with one radius for a ball)")


def _radii_config(args) -> BallConfiguration:
    d = _positive("--d", _need(args, "d", "--d"))
    radii = _floats("--radii", args.radii)
    if any(r <= 0 for r in radii):
        raise FlagError("--radii", "radii must be positive")
    if len(radii) * d > MAX_ND:
        raise FlagError("--radii", f"n*d must be <= {MAX_ND}")
    return BallConfiguration(d, tuple(radii))


def _seed(args) -> int:
    if args.seed < 0:
        raise FlagError("--seed", "must be a non-negative integer")
    return args.seed


def _workers(args) -> int:
    w = default_workers() if args.workers is None else args.workers
    return _positive("--workers", w)


def cmd_coeff(args):
    n, d = _nd(args)
    return {"command": "coeff", "n": n, "d": d, "leading_constant": theorem1_coefficient(n, d),
            "u_power": d - n, "phi_power": n}


def cmd_volume(args):
    cfg = _radii_config(args)
    try:
        special = intersection_volume_special(cfg)
    except UnsupportedCaseError:
        special = None
    return {"command": "volume", "n": cfg.n, "d": cfg.d, "radii": list(cfg.radii),
            "closed_form": intersection_volume_closed(cfg), "special_form": special,
            "n_terms": len(intersection_volume_polynomial(cfg.n, cfg.d))}


def cmd_oracle(args):
    cfg = _radii_config(args)
    samples = args.samples if args.samples is not None else 1_000_000
    if samples < 10_000:
        raise FlagError("--samples", "must be >= 10000")
    seed = _seed(args)
    est = intersection_volume_mc(cfg, samples, seed, _workers(args))
    closed = intersection_volume_closed(cfg)
    z = (est.mean - closed) / est.std_error if est.std_error > 0 else 0.0
    return {"command": "oracle", "n": cfg.n, "d": cfg.d, "radii": list(cfg.radii), "samples": samples,
            "seed": seed, "estimate": est.mean, "std_error": est.std_error, "hits": est.hits,
            "closed_form": closed, "z_score": z}


def _u(args) -> float:
    u = _need(args, "u", "--u")
    if not math.isfinite(u):
        raise FlagError("--u", "must be finite")
    return u


def cmd_ec(args):
    n, d = _nd(args)
    u = _u(args)
    domain = _domain(args, d)
    return {"command": "ec", "n": n, "d": d, "u": u, "domain": domain.kind,
            "minkowski": list(domain.minkowski), "rho": ec_densities(d, u).rho.tolist(),
            "b": b_constants(d).tolist(), "prediction": ec_prediction(n, d, u, domain),
            "volume_term_coefficient": ec_volume_term_coefficient(n, d)}


def cmd_asym(args):
    n, d = _nd(args)
    u = _positive("--u", _u(args))
    domain = _domain(args, d)
    coef = AsymptoticCoefficient.for_fields(n, d)
    return {"command": "asym", "n": n, "d": d, "u": u, "volume": domain.volume,
            "leading_constant": coef.leading_constant, "u_power": coef.power_of_u,
            "phi_power": coef.phi_power, "probability": coef.probability(u, domain.volume)}


def cmd_identity(args):
    n_max = _positive("--n-max", args.n_max if args.n_max is not None else 6)
    d_max = _positive("--d-max", args.d_max if args.d_max is not None else 8)
    if n_max * d_max > MAX_ND:
        raise FlagError("--n-max", f"n_max*d_max must be <= {MAX_ND}")
    rows = []
    for n in range(1, n_max + 1):
        for d in range(1, d_max + 1):
            rows.append({"n": n, "d": d, "theorem1_coefficient": theorem1_coefficient(n, d),
                         "ec_volume_term_coefficient": ec_volume_term_coefficient(n, d),
                         "relative_error": identity_check(n, d)})
    return rows


def cmd_pickands(args):
    n = _positive("--n", _need(args, "n", "--n"))
    a = args.a if args.a is not None else 0.02
    t_max = args.t_max if args.t_max is not None else 12.0
    samples = args.samples if args.samples is not None else 1_000_000
    if not 0 < a <= 0.1:
        raise FlagError("--a", "must lie in (0, 0.1]")
    if not t_max ** 2 > math.sqrt(2.0) * 6.0 * t_max + 10.0:
        raise FlagError("--t-max", "too small: need t^2 > 6 sqrt(2) t + 10")
    _positive("--samples", samples)
    seed = _seed(args)
    est = estimate_pickands(PickandsPlan(n, a, t_max, samples, seed), _workers(args))
    return {"command": "pickands", "n": n, "a": a, "t_max": t_max, "samples": samples, "seed": seed,
            "estimate": est.mean, "std_error": est.std_error, "hits": est.hits,
            "claimed_constant": pickands_claimed_value(n),
            "rescaled_estimate": est.mean / math.sqrt(2.0)}


def _plan(args, u: float) -> SimulationPlan:
    n = _positive("--n", _need(args, "n", "--n"))
    if args.sides is None:
        raise FlagError("--sides", "is required")
    domain = _domain(args, args.d)
    step = args.grid_step if args.grid_step is not None else 0.02
    if not 0 < step <= 0.1:
        raise FlagError("--grid-step", "must lie in (0, 0.1]")
    replicates = args.replicates if args.replicates is not None else 10_000
    if replicates < 1000:
        raise FlagError("--replicates", "must be >= 1000")
    if any(s > 100 for s in domain.sides):
        raise FlagError("--sides", "side lengths must be <= 100")
    return SimulationPlan(n, domain, step, u, replicates, _seed(args))


def cmd_simulate(args):
    u = _u(args)
    plan = _plan(args, u)
    est = estimate_conjunction_probability(plan, _workers(args))
    d = plan.domain.d
    asym = conjunction_probability_asymptotic(plan.n, d, u, plan.domain.volume) if u > 0 else None
    return {"command": "simulate", "n": plan.n, "d": d, "sides": list(plan.domain.sides),
            "grid_step": plan.grid_step, "u": u, "replicates": plan.replicates, "seed": plan.seed,
            "estimate": est.mean, "std_error": est.std_error, "hits": est.hits,
            "asymptotic": asym, "ec_prediction": ec_prediction(plan.n, d, u, plan.domain)}


def cmd_compare(args):
    u_grid = _floats("--u-grid", args.u_grid) if args.u_grid is not None else []
    if any(u <= 0 for u in u_grid):
        raise FlagError("--u-grid", "thresholds must be positive")
    plan = _plan(args, u_grid[0] if u_grid else 1.0)
    return compare_asymptotic(plan, u_grid, _workers(args))


COMMANDS = {
    "coeff": cmd_coeff,
    "volume": cmd_volume,
    "oracle": cmd_oracle,
    "ec": cmd_ec,
    "asym": cmd_asym,
    "identity": cmd_identity,
    "pickands": cmd_pickands,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
}

CSV_COLUMNS = {
    "identity": ["n", "d", "theorem1_coefficient", "ec_volume_term_coefficient", "relative_error"],
    "compare": ["u", "empirical", "std_error", "asymptotic", "ratio", "ratio_std_error", "ec_prediction", "hits"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conjprob", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--radii")
    parser.add_argument("--sides")
    parser.add_argument("--u", type=float)
    parser.add_argument("--u-grid")
    parser.add_argument("--grid-step", type=float)
    parser.add_argument("--replicates", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--a", type=float)
    parser.add_argument("--t-max", type=float)
    parser.add_argument("--n-max", type=int)
    parser.add_argument("--d-max", type=int)
    parser.add_argument("--format", choices=["json", "csv"])
    return parser


def _render(command: str, result, fmt: str) -> str:
    if command in TABULAR:
        if fmt == "json":
            return json.dumps({"command": command, "rows": _num(result)}) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = CSV_COLUMNS[command]
        writer.writerow(cols)
        for row in result:
            writer.writerow([f"{row[c]:.12g}" if isinstance(row[c], float) else row[c] for c in cols])
        return buf.getvalue()
    return json.dumps(_num(result)) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command in TABULAR else "json")
    try:
        if fmt == "csv" and args.command not in TABULAR:
            raise FlagError("--format", f"csv output is only available for {sorted(TABULAR)}")
        _seed(args)
        if args.workers is not None:
            _workers(args)
        result = COMMANDS[args.command](args)
    except FlagError as exc:
        print(f"conjprob {args.command}: invalid {exc}", file=sys.stderr)
        return 2
    except ConjprobError as exc:
        print(f"conjprob {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(args.command, result, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
