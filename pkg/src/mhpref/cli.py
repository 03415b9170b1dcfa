"""Command-line front end.

Subcommands wrap the library operations one to one: contract valuation,
standard-model reduction, identification, axiom checking, confidence and
optimism comparisons, FOSD and up-shift queries, level sets, absolute
assessment, figure-data emission, the acceptance suite, and witness
re-verification.

Reports are deterministic for a fixed argv and seed: no timestamps, keys
sorted.  Machine-readable JSON goes to the path given by --json (or to
stdout when the path is "-"); human-readable text goes to stdout; all
diagnostics go to stderr.  Exit codes: 0 pass/holds, 1 violation/fails,
2 input error, 3 inconclusive.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import certify as certify_mod
from . import comparators as cmp
from . import serialize as ser
from .axioms import Axiom, SamplerConfig, check_axiom, reverify_witness
from .config import IdentificationError
from .core import CostFunction, SimplexPoint, fosd, simplex_grid
from .identification import IdentificationConfig, default_f_grid, recover_c, recover_u
from .models import PreferenceOracle, argmax_efforts, certainty_equivalent, value
from .reduction import reduce_standard
from .serialize import ModelFormatError

INF = math.inf


def _fail_input(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def _load_json_file(path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        _fail_input(f"{what} file not found: {path}")
    except json.JSONDecodeError as exc:
        _fail_input(f"{what} file {path}: invalid JSON at line {exc.lineno}, column {exc.colno}")


def _load_model(path: str) -> PreferenceOracle:
    try:
        return ser.decode_model(_load_json_file(path, "model"), "model")
    except ModelFormatError as exc:
        _fail_input(str(exc))


def _parse_cost(spec: str, name: str) -> CostFunction:
    if spec.startswith("quad:"):
        parts = spec[5:].split(",")
        if len(parts) != 2:
            _fail_input(f"{name}: expected quad:ALPHA,BETA")
        try:
            return CostFunction.quadratic1d(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            _fail_input(f"{name}: {exc}")
    obj = _load_json_file(spec, name)
    try:
        if "cost" in obj:
            return ser.decode_cost(obj["cost"], f"{name}.cost")
        return ser.decode_cost(obj, name)
    except ModelFormatError as exc:
        _fail_input(str(exc))


def _parse_point(text: str, name: str) -> SimplexPoint:
    try:
        return SimplexPoint(tuple(float(x) for x in text.split(",")))
    except ValueError as exc:
        _fail_input(f"{name}: {exc}")


def _parse_sweep(text: str, name: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        _fail_input(f"{name}: expected START:STEP:COUNT")
    try:
        start, step, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        _fail_input(f"{name}: expected numbers in START:STEP:COUNT")
    if count < 1:
        _fail_input(f"{name}: COUNT must be at least 1")
    return [start + i * step for i in range(count)]


def _emit(report: dict, human: list[str], json_to: str | None, code: int):
    report["exit_code"] = code
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    if json_to == "-":
        click.echo(text)
    else:
        for line in human:
            click.echo(line)
        if json_to:
            with open(json_to, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    sys.exit(code)


def _jsonsafe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf"
    return x


@click.group()
@click.version_option(package_name="mhpref")
def main():
    """Moral-hazard preference toolkit."""


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


@main.command("eval")
@click.option("--model", "model_path", required=True, help="model JSON file")
@click.option("--contract", "contract_path", required=True, help="contract JSON file")
@click.option("--argmax/--no-argmax", default=True, help="report maximising output distributions")
@click.option("--json", "json_to", default=None, help="write JSON report to PATH (- for stdout)")
def eval_cmd(model_path, contract_path, argmax, json_to):
    """Value, certainty equivalent and maximisers of a contract."""
    oracle = _load_model(model_path)
    try:
        w = ser.decode_contract(_load_json_file(contract_path, "contract"), oracle.space)
    except ModelFormatError as exc:
        _fail_input(str(exc))
    v = value(oracle, w)
    human = [f"value: {v!r}"]
    results = {"value": v}
    try:
        ce = certainty_equivalent(oracle, w)
        results["certainty_equivalent"] = ce
        human.append(f"certainty equivalent: {ce!r}")
    except Exception as exc:  # bounded utility ranges
        results["certainty_equivalent_error"] = str(exc)
        human.append(f"certainty equivalent: unavailable ({exc})")
    if argmax and oracle.kind == "moral_hazard":
        pts = sorted(p.probs for p in argmax_efforts(oracle, w))
        results["argmax_efforts"] = [list(p) for p in pts]
        human.append("maximising distributions: " + "; ".join(str(list(p)) for p in pts))
    report = {
        "command": "eval",
        "models": {"model": ser.encode_model(oracle)},
        "contract": ser.encode_contract(w),
        "results": results,
        "witnesses": [],
    }
    _emit(report, human, json_to, 0)


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


@main.command("reduce")
@click.option("--model", "model_path", required=True, help="standard-model JSON file")
@click.option("--resolution", default=20, show_default=True, help="simplex grid resolution")
@click.option("--out", "out_path", default=None, help="write the reduced cost JSON to PATH")
@click.option("--json", "json_to", default=None)
def reduce_cmd(model_path, resolution, out_path, json_to):
    """Reduce a standard effort model to its output-distribution cost."""
    try:
        model, space = ser.decode_standard_model(_load_json_file(model_path, "model"))
    except ModelFormatError as exc:
        _fail_input(str(exc))
    grid = simplex_grid(space.n, resolution)
    red = reduce_standard(model, grid)
    cost_json = ser.encode_cost(red)
    finite = [v for _, v in red.points if v < INF]
    human = [
        f"reduced cost on {len(red.points)} grid points "
        f"({len(finite)} finite, min {min(finite)!r}, max {max(finite)!r})"
    ]
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump({"cost": cost_json, "output_space": list(space.levels)}, fh, sort_keys=True, indent=2)
        human.append(f"wrote {out_path}")
    report = {
        "command": "reduce",
        "params": {"resolution": resolution},
        "models": {"model": ser.encode_standard_model(model, space)},
        "results": {"cost": cost_json},
        "witnesses": [],
    }
    _emit(report, human, json_to, 0)


# ---------------------------------------------------------------------------
# identify
# ---------------------------------------------------------------------------


@main.command("identify")
@click.option("--model", "model_path", required=True)
@click.option("--prizes", default=None, help="prize grid START:STEP:COUNT (default: around the references)")
@click.option("--f-reach", default=8.0, show_default=True)
@click.option("--f-coarse", default=1.0, show_default=True)
@click.option("--f-fine", default=0.25, show_default=True)
@click.option("--p-resolution", default=20, show_default=True)
@click.option("--out", "out_path", default=None, help="write recovered utility and cost JSON to PATH")
@click.option("--json", "json_to", default=None)
def identify_cmd(model_path, prizes, f_reach, f_coarse, f_fine, p_resolution, out_path, json_to):
    """Recover the utility and cost pair from a model treated as an oracle."""
    oracle = _load_model(model_path)
    ref0, ref1 = oracle.utility.reference
    if prizes:
        prize_grid = np.array(_parse_sweep(prizes, "--prizes"))
    else:
        span = ref1 - ref0
        prize_grid = np.linspace(ref0 - span, ref1 + span, 21)
    cfg = IdentificationConfig(
        prize_grid=prize_grid,
        f_grid=default_f_grid(oracle.space.n, f_reach, f_coarse, f_fine),
        p_grid=simplex_grid(oracle.space.n, p_resolution),
    )
    try:
        u_hat = recover_u(oracle, cfg)
        c_hat = recover_c(oracle, u_hat, cfg)
    except IdentificationError as exc:
        report = {
            "command": "identify",
            "models": {"model": ser.encode_model(oracle)},
            "results": {"error": str(exc), "witness_data": repr(exc.witness)},
            "witnesses": [],
        }
        _emit(report, [f"identification failed: {exc}"], json_to, 1)
    recovered = {"utility": ser.encode_utility(u_hat), "cost": ser.encode_cost(c_hat)}
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            json.dump(recovered, fh, sort_keys=True, indent=2)
    human = [
        f"recovered utility: piecewise linear on {len(u_hat.knots)} knots",
        f"recovered cost: grid form on {len(c_hat.points)} points",
    ]
    if out_path:
        human.append(f"wrote {out_path}")
    report = {
        "command": "identify",
        "params": {
            "f_reach": f_reach,
            "f_coarse": f_coarse,
            "f_fine": f_fine,
            "p_resolution": p_resolution,
        },
        "models": {"model": ser.encode_model(oracle)},
        "results": recovered,
        "witnesses": [],
    }
    _emit(report, human, json_to, 0)


# ---------------------------------------------------------------------------
# check-axioms
# ---------------------------------------------------------------------------


@main.command("check-axioms")
@click.option("--model", "model_path", required=True)
@click.option("--seed", required=True, type=int, help="sampler seed (reports are reproducible)")
@click.option("--axiom", "axiom_name", default=None,
              type=click.Choice([a.value for a in Axiom]), help="check one axiom only")
@click.option("--n-samples", default=10_000, show_default=True)
@click.option("--jobs", default=1, show_default=True, help="parallel sample batches")
@click.option("--json", "json_to", default=None)
def check_axioms_cmd(model_path, seed, axiom_name, n_samples, jobs, json_to):
    """Run the axiom falsifiers against a model."""
    oracle = _load_model(model_path)
    cfg = SamplerConfig(seed=seed, n_samples=n_samples)
    which = [Axiom(axiom_name)] if axiom_name else list(Axiom)
    human = []
    verdicts = []
    witnesses = []
    any_fail = False
    for ax in which:
        v = check_axiom(oracle, ax, cfg, jobs)
        verdicts.append(ser.encode_axiom_verdict(v))
        status = "pass" if v.passed else "FAIL"
        human.append(f"{ax.value:22s} {status}  ({v.n_samples} samples)"
                     + (f"  margin {v.witness.margin:.3g}" if v.witness else ""))
        if not v.passed:
            any_fail = True
            witnesses.append(ser.encode_witness(v.witness))
    report = {
        "command": "check-axioms",
        "seed": seed,
        "params": {"n_samples": n_samples, "axiom": axiom_name},
        "models": {"model": ser.encode_model(oracle)},
        "results": {"verdicts": verdicts},
        "witnesses": witnesses,
    }
    _emit(report, human, json_to, 1 if any_fail else 0)


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


@main.group("compare")
def compare_group():
    """Behavioral and parametric comparisons between two models."""


def _load_pair(path_a, path_b):
    a = _load_model(path_a)
    b = _load_model(path_b)
    if a.space != b.space:
        _fail_input("models live on different output spaces")
    return a, b


@compare_group.command("confidence")
@click.option("--model-a", required=True, help="the (claimed) more confident model")
@click.option("--model-b", required=True)
@click.option("--seed", required=True, type=int)
@click.option("--n-samples", default=10_000, show_default=True)
@click.option("--resolution", default=20, show_default=True)
@click.option("--jobs", default=1, show_default=True)
@click.option("--json", "json_to", default=None)
def compare_confidence(model_a, model_b, seed, n_samples, resolution, jobs, json_to):
    """Is model A more confident than model B?"""
    a, b = _load_pair(model_a, model_b)
    grid = simplex_grid(a.space.n, resolution)
    beh = cmp.more_confident_behavioral(a, b, SamplerConfig(seed=seed, n_samples=n_samples), jobs)
    par = cmp.more_confident_parametric(a.cost, a.utility, b.cost, b.utility, grid)
    human = [
        f"behavioral: {_verdict_word(beh.holds)} ({beh.n_samples} samples, "
        f"{beh.n_hypothesis} hypothesis-satisfying)",
        f"parametric: {_verdict_word(par.holds)}",
    ]
    witnesses = []
    for v, label in ((beh, "behavioral"), (par, "parametric")):
        if v.witness is not None:
            witnesses.append(ser.encode_witness(v.witness))
            human.append(f"{label} witness margin {v.witness.margin:.3g}: {v.witness.detail}")
    report = {
        "command": "compare confidence",
        "seed": seed,
        "params": {"n_samples": n_samples, "resolution": resolution},
        "models": {"model_a": ser.encode_model(a), "model_b": ser.encode_model(b)},
        "results": {
            "behavioral": ser.encode_order_verdict(beh),
            "parametric": ser.encode_order_verdict(par),
        },
        "witnesses": witnesses,
    }
    if beh.holds is None:
        code = 3
    elif beh.holds and par.holds:
        code = 0
    else:
        code = 1
    _emit(report, human, json_to, code)


@compare_group.command("optimism")
@click.option("--model-a", required=True, help="the (claimed) more optimistic model")
@click.option("--model-b", required=True)
@click.option("--seed", required=True, type=int)
@click.option("--n-samples", default=10_000, show_default=True)
@click.option("--resolution", default=20, show_default=True)
@click.option("--jobs", default=1, show_default=True)
@click.option("--json", "json_to", default=None)
def compare_optimism(model_a, model_b, seed, n_samples, resolution, jobs, json_to):
    """Is model A more optimistic than model B?"""
    a, b = _load_pair(model_a, model_b)
    grid = simplex_grid(a.space.n, resolution)
    beh = cmp.more_optimistic_behavioral(a, b, SamplerConfig(seed=seed, n_samples=n_samples), jobs)
    up = cmp.is_upshifted(a.cost, b.cost, grid)
    lem = cmp.lemma_b_check(a.cost, b.cost, SamplerConfig(seed=seed, n_samples=n_samples), jobs)
    human = [
        f"behavioral: {_verdict_word(beh.holds)} ({beh.n_samples} samples, "
        f"{beh.n_hypothesis} hypothesis-satisfying)",
        f"up-shift:   {_verdict_word(up.holds)} ({up.n_samples} grid pairs)",
        f"conjugate-order: {_verdict_word(lem.holds)}",
    ]
    if beh.note:
        human.append(f"note: {beh.note}")
    witnesses = []
    for v, label in ((beh, "behavioral"), (up, "up-shift"), (lem, "conjugate-order")):
        if v.witness is not None:
            witnesses.append(ser.encode_witness(v.witness))
            human.append(f"{label} witness margin {v.witness.margin:.3g}: {v.witness.detail}")
    report = {
        "command": "compare optimism",
        "seed": seed,
        "params": {"n_samples": n_samples, "resolution": resolution},
        "models": {"model_a": ser.encode_model(a), "model_b": ser.encode_model(b)},
        "results": {
            "behavioral": ser.encode_order_verdict(beh),
            "upshift": ser.encode_order_verdict(up),
            "conjugate_order": ser.encode_order_verdict(lem),
        },
        "witnesses": witnesses,
    }
    if beh.holds is None or lem.holds is None:
        code = 3
    elif beh.holds and up.holds and lem.holds:
        code = 0
    else:
        code = 1
    _emit(report, human, json_to, code)


def _verdict_word(holds):
    if holds is None:
        return "inconclusive"
    return "holds" if holds else "fails"


# ---------------------------------------------------------------------------
# fosd / upshift / levelsets / assess-absolute
# ---------------------------------------------------------------------------


@main.command("fosd")
@click.option("--p", "p_text", required=True, help="comma-separated probabilities")
@click.option("--q", "q_text", required=True)
@click.option("--json", "json_to", default=None)
def fosd_cmd(p_text, q_text, json_to):
    """Does p first-order stochastically dominate q?"""
    p = _parse_point(p_text, "--p")
    q = _parse_point(q_text, "--q")
    if p.n != q.n:
        _fail_input("p and q have different lengths")
    holds = fosd(p, q)
    report = {
        "command": "fosd",
        "params": {"p": list(p.probs), "q": list(q.probs)},
        "results": {"holds": holds},
        "witnesses": [],
    }
    _emit(report, ["holds" if holds else "fails"], json_to, 0 if holds else 1)


@main.command("upshift")
@click.option("--cost-a", required=True, help="cost JSON file or quad:ALPHA,BETA")
@click.option("--cost-b", required=True)
@click.option("--p", "p_text", default=None, help="check one pair instead of the grid")
@click.option("--p-prime", "pp_text", default=None)
@click.option("--resolution", default=20, show_default=True)
@click.option("--json", "json_to", default=None)
def upshift_cmd(cost_a, cost_b, p_text, pp_text, resolution, json_to):
    """Is cost A up-shifted from cost B?"""
    ca = _parse_cost(cost_a, "--cost-a")
    cb = _parse_cost(cost_b, "--cost-b")
    witnesses = []
    if (p_text is None) != (pp_text is None):
        _fail_input("--p and --p-prime must be given together")
    if p_text is not None:
        p = _parse_point(p_text, "--p")
        pp = _parse_point(pp_text, "--p-prime")
        res = cmp.upshift_pair(ca, cb, p, pp)
        human = [
            ("holds" if res.holds else "fails")
            + f": best total {_jsonsafe(res.total)!r} vs reference {_jsonsafe(res.reference)!r}"
        ]
        if res.holds:
            human.append(f"witness q={list(res.q.probs)}, q'={list(res.q_prime.probs)}")
        results = {
            "holds": res.holds,
            "best_total": _jsonsafe(res.total),
            "reference_total": _jsonsafe(res.reference),
            "q": list(res.q.probs) if res.q else None,
            "q_prime": list(res.q_prime.probs) if res.q_prime else None,
        }
        code = 0 if res.holds else 1
    else:
        grid = simplex_grid(ca.n, resolution)
        v = cmp.is_upshifted(ca, cb, grid)
        human = [("holds" if v.holds else "fails") + f" over {v.n_samples} grid pairs"]
        if v.witness:
            witnesses.append(ser.encode_witness(v.witness))
            human.append(f"witness pair p={list(v.witness.vectors['p'])}, "
                         f"p'={list(v.witness.vectors['p_prime'])} (gap {v.witness.margin:.3g})")
        results = {"holds": v.holds, "n_pairs": v.n_samples}
        code = 0 if v.holds else 1
    report = {
        "command": "upshift",
        "params": {"resolution": resolution},
        "models": {"cost_a": ser.encode_cost(ca), "cost_b": ser.encode_cost(cb)},
        "results": results,
        "witnesses": witnesses,
    }
    _emit(report, human, json_to, code)


@main.command("levelsets")
@click.option("--cost-a", required=True)
@click.option("--cost-b", required=True)
@click.option("--k", required=True, type=float, help="cost threshold")
@click.option("--resolution", default=100, show_default=True)
@click.option("--json", "json_to", default=None)
def levelsets_cmd(cost_a, cost_b, k, resolution, json_to):
    """Weak set order (FOSD) between the two k-level sets."""
    ca = _parse_cost(cost_a, "--cost-a")
    cb = _parse_cost(cost_b, "--cost-b")
    if k < 0:
        _fail_input("--k must be nonnegative")
    grid = simplex_grid(ca.n, resolution)
    holds = cmp.level_set_weak_order(ca, cb, k, grid)
    La = cmp.LevelSet.of(ca, k, grid)
    Lb = cmp.LevelSet.of(cb, k, grid)
    human = [
        ("holds" if holds else "fails")
        + f": |L_a| = {len(La.points)}, |L_b| = {len(Lb.points)} at k = {k}"
    ]
    report = {
        "command": "levelsets",
        "params": {"k": k, "resolution": resolution},
        "models": {"cost_a": ser.encode_cost(ca), "cost_b": ser.encode_cost(cb)},
        "results": {
            "holds": holds,
            "level_set_a": [list(p.probs) for p in La.points],
            "level_set_b": [list(p.probs) for p in Lb.points],
        },
        "witnesses": [],
    }
    _emit(report, human, json_to, 0 if holds else 1)


@main.command("assess-absolute")
@click.option("--cost", "cost_spec", required=True, help="subjective cost")
@click.option("--cost-star", required=True, help="objective benchmark cost")
@click.option("--resolution", default=20, show_default=True)
@click.option("--json", "json_to", default=None)
def assess_absolute_cmd(cost_spec, cost_star, resolution, json_to):
    """Overconfidence and optimism against an objective cost."""
    c = _parse_cost(cost_spec, "--cost")
    cs = _parse_cost(cost_star, "--cost-star")
    grid = simplex_grid(c.n, resolution)
    res = cmp.absolute_assess(c, cs, grid)
    human = [
        f"overconfident: {res.overconfident}",
        f"optimistic:    {res.optimistic}",
    ]
    witnesses = [
        ser.encode_witness(w)
        for w in (res.confidence_witness, res.optimism_witness)
        if w is not None
    ]
    report = {
        "command": "assess-absolute",
        "params": {"resolution": resolution},
        "models": {"cost_a": ser.encode_cost(c), "cost_b": ser.encode_cost(cs)},
        "results": {"overconfident": res.overconfident, "optimistic": res.optimistic},
        "witnesses": witnesses,
    }
    _emit(report, human, json_to, 0 if (res.overconfident and res.optimistic) else 1)


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


@main.command("figures")
@click.option("--alpha-sweep", default=None, help="START:STEP:COUNT for the vertical-shift family")
@click.option("--beta", default=0.5, show_default=True, type=float)
@click.option("--beta-sweep", default=None, help="START:STEP:COUNT for the horizontal-shift family")
@click.option("--alpha", default=1.0, show_default=True, type=float)
@click.option("--points", default=101, show_default=True)
@click.option("--out", "out_path", default=None, help="write CSV to PATH instead of stdout")
def figures_cmd(alpha_sweep, beta, beta_sweep, alpha, points, out_path):
    """CSV of the cost-curve families (vertical and horizontal shifts)."""
    if (alpha_sweep is None) == (beta_sweep is None):
        _fail_input("give exactly one of --alpha-sweep or --beta-sweep")
    if alpha_sweep:
        alphas = _parse_sweep(alpha_sweep, "--alpha-sweep")
        if any(a < 0 for a in alphas):
            _fail_input("--alpha-sweep: alpha values must be nonnegative")
        header, rows = certify_mod.figure_family(alphas=alphas, beta=beta, n_points=points)
    else:
        betas = _parse_sweep(beta_sweep, "--beta-sweep")
        if any(not 0 <= b <= 1 for b in betas):
            _fail_input("--beta-sweep: beta values must lie in [0, 1]")
        header, rows = certify_mod.figure_family(betas=betas, alpha=alpha, n_points=points)
    lines = [",".join(header)]
    lines += [",".join(repr(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {out_path}")
    else:
        click.echo(text, nl=False)
    sys.exit(0)


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


@main.command("certify")
@click.option("--criterion", default=None, type=int, help="run a single criterion (1-8)")
@click.option("--jobs", default=1, show_default=True)
@click.option("--json", "json_to", default=None)
def certify_cmd(criterion, jobs, json_to):
    """Run the acceptance suite (one pass/fail line per criterion)."""
    lines = []

    def emit(s):
        lines.append(s)

    if criterion is not None:
        if not 1 <= criterion <= 8:
            _fail_input("--criterion must be between 1 and 8")
        res = certify_mod.run_criterion(criterion, jobs)
        ok = res.passed
        emit(f"criterion {res.number}: {res.title} ... {'PASS' if ok else 'FAIL'}")
        for line in res.lines:
            emit("    " + line)
        results = [certify_result_json(res)]
    else:
        ok, all_res, elapsed = certify_mod.run_all(jobs, emit)
        results = [certify_result_json(r) for r in all_res]
    report = {
        "command": "certify",
        "params": {"criterion": criterion, "jobs": jobs},
        "results": {"criteria": results, "all_passed": ok},
        "witnesses": [],
    }
    _emit(report, lines, json_to, 0 if ok else 1)


def certify_result_json(r):
    return {"number": r.number, "title": r.title, "passed": r.passed, "lines": r.lines}


# ---------------------------------------------------------------------------
# verify-witness
# ---------------------------------------------------------------------------


@main.command("verify-witness")
@click.option("--report", "report_path", required=True, help="a JSON report emitted by this tool")
@click.option("--json", "json_to", default=None)
def verify_witness_cmd(report_path, json_to):
    """Re-verify every witness embedded in a report."""
    obj = _load_json_file(report_path, "report")
    if not isinstance(obj, dict) or "witnesses" not in obj:
        _fail_input("report has no witnesses section")
    models = obj.get("models", {})

    def model_of(key):
        if key not in models:
            _fail_input(f"report lacks the {key} entry needed for this witness")
        return ser.decode_model(models[key], f"models.{key}")

    def cost_of(key):
        if key not in models:
            _fail_input(f"report lacks the {key} entry needed for this witness")
        entry = models[key]
        if "form" in entry:
            return ser.decode_cost(entry, f"models.{key}")
        return ser.decode_model(entry, f"models.{key}").cost

    human = []
    outcomes = []
    all_ok = True
    axiom_kinds = {
        "transitivity",
        "monotonicity",
        "dominance",
        "continuity_surrogate",
        "quasiconvexity",
        "vnm_independence",
        "mmr_independence",
    }
    try:
        for i, wjson in enumerate(obj["witnesses"]):
            kind = wjson.get("kind", "?")
            if kind in axiom_kinds:
                oracle = model_of("model")
                wit = ser.decode_witness(wjson, oracle.space, f"witnesses[{i}]")
                ok, margin = reverify_witness(oracle, wit)
            elif kind in ("confidence", "optimism"):
                a = model_of("model_a")
                b = model_of("model_b")
                wit = ser.decode_witness(wjson, a.space, f"witnesses[{i}]")
                ok, margin = cmp.reverify_order_witness(wit, a=a, b=b)
            elif kind in ("conjugate_order", "upshift", "confidence_parametric"):
                ca = cost_of("model_a") if "model_a" in models else cost_of("cost_a")
                cb = cost_of("model_b") if "model_b" in models else cost_of("cost_b")
                wit = ser.decode_witness(wjson, None, f"witnesses[{i}]")
                ok, margin = cmp.reverify_order_witness(wit, c=ca, cp=cb)
            else:
                _fail_input(f"witnesses[{i}]: unknown kind {kind!r}")
            drift = abs(margin - wit.margin)
            ok = bool(ok) and drift <= 1e-9
            all_ok &= ok
            outcomes.append({"index": i, "kind": kind, "verified": ok, "margin": _jsonsafe(margin)})
            human.append(f"witness {i} ({kind}): {'verified' if ok else 'MISMATCH'} "
                         f"(margin {margin:.6g}, recorded {wit.margin:.6g})")
    except ModelFormatError as exc:
        _fail_input(str(exc))
    if not obj["witnesses"]:
        human.append("report contains no witnesses; nothing to verify")
    report = {
        "command": "verify-witness",
        "params": {"report": report_path},
        "results": {"outcomes": outcomes, "all_verified": all_ok},
        "witnesses": [],
    }
    _emit(report, human, json_to, 0 if all_ok else 1)


if __name__ == "__main__":
    main()
