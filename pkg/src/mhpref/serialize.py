"""JSON encoding/decoding for the CLI: model files, contracts, standard
models, witnesses and verdicts.

Infinity is encoded as the string "inf".  Decoding errors carry a dotted
field path so a bad file is rejected with a usable diagnostic.
"""

from __future__ import annotations

import math
from typing import Any

from .axioms import AxiomVerdict, Witness
from .comparators import OrderVerdict
from .core import Contract, CostFunction, Lottery, OutputSpace, SimplexPoint, UtilityFunction
from .models import PreferenceOracle
from .reduction import StandardModel

INF = math.inf


class ModelFormatError(ValueError):
    """A model/contract/report file failed validation; message carries the path."""


def _expect(obj: Any, path: str, types) -> Any:
    if not isinstance(obj, types):
        names = types.__name__ if isinstance(types, type) else "/".join(t.__name__ for t in types)
        raise ModelFormatError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _field(d: dict, key: str, path: str, types=None, default=_expect):
    if key not in d:
        if default is not _expect:
            return default
        raise ModelFormatError(f"{path}.{key}: missing required field")
    v = d[key]
    if types is not None:
        _expect(v, f"{path}.{key}", types)
    return v


def _num(x, path: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ModelFormatError(f"{path}: expected a number, got {type(x).__name__}")
    return float(x)


def _value_or_inf(x, path: str) -> float:
    if x == "inf":
        return INF
    if x == "-inf":
        return -INF
    return _num(x, path)


def _encode_value(x: float):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return float(x)


# ---------------------------------------------------------------------------
# lotteries / contracts
# ---------------------------------------------------------------------------


def encode_lottery(lot: Lottery):
    if lot.is_degenerate:
        return lot.support[0][0]
    return [[p, q] for p, q in lot.support]


def decode_lottery(obj, path: str) -> Lottery:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return Lottery.degenerate(float(obj))
    _expect(obj, path, list)
    pairs = []
    for i, pair in enumerate(obj):
        _expect(pair, f"{path}[{i}]", list)
        if len(pair) != 2:
            raise ModelFormatError(f"{path}[{i}]: expected [prize, prob]")
        pairs.append((_num(pair[0], f"{path}[{i}][0]"), _num(pair[1], f"{path}[{i}][1]")))
    try:
        return Lottery(tuple(pairs))
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}")


def encode_contract(w: Contract):
    return {"payoffs": [encode_lottery(lot) for lot in w.payoffs]}


def decode_contract(obj, space: OutputSpace, path: str = "contract") -> Contract:
    _expect(obj, path, dict)
    payoffs = _field(obj, "payoffs", path, list)
    if len(payoffs) != space.n:
        raise ModelFormatError(
            f"{path}.payoffs: {len(payoffs)} entries for {space.n} output levels"
        )
    return Contract(
        space, tuple(decode_lottery(x, f"{path}.payoffs[{i}]") for i, x in enumerate(payoffs))
    )


# ---------------------------------------------------------------------------
# utilities / costs / oracles
# ---------------------------------------------------------------------------


def encode_utility(u: UtilityFunction):
    out = {"kind": u.kind, "reference": list(u.reference)}
    if u.kind == "cara":
        out["a"] = u.a
    if u.kind == "piecewise_linear":
        out["knots"] = [[x, y] for x, y in u.knots]
    return out


def decode_utility(obj, path: str = "utility") -> UtilityFunction:
    _expect(obj, path, dict)
    kind = _field(obj, "kind", path, str)
    ref = _field(obj, "reference", path, list, default=[0.0, 1.0])
    if len(ref) != 2:
        raise ModelFormatError(f"{path}.reference: expected [pi0, pi1]")
    reference = (_num(ref[0], f"{path}.reference[0]"), _num(ref[1], f"{path}.reference[1]"))
    try:
        if kind == "linear":
            return UtilityFunction.linear(reference)
        if kind == "cara":
            return UtilityFunction.cara(_num(_field(obj, "a", path), f"{path}.a"), reference)
        if kind == "piecewise_linear":
            knots = _field(obj, "knots", path, list)
            pairs = []
            for i, pair in enumerate(knots):
                _expect(pair, f"{path}.knots[{i}]", list)
                pairs.append(
                    (_num(pair[0], f"{path}.knots[{i}][0]"), _num(pair[1], f"{path}.knots[{i}][1]"))
                )
            return UtilityFunction.piecewise_linear(pairs, reference)
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}")
    raise ModelFormatError(f"{path}.kind: unknown utility kind {kind!r}")


def encode_cost(c: CostFunction):
    if c.form == "quadratic1d":
        return {"form": "quadratic1d", "alpha": c.alpha, "beta": c.beta}
    return {
        "form": "grid",
        "points": [
            {"probs": list(pt.probs), "value": _encode_value(v)} for pt, v in c.points
        ],
    }


def decode_cost(obj, path: str = "cost") -> CostFunction:
    _expect(obj, path, dict)
    form = _field(obj, "form", path, str)
    try:
        if form == "quadratic1d":
            return CostFunction.quadratic1d(
                _num(_field(obj, "alpha", path), f"{path}.alpha"),
                _num(_field(obj, "beta", path), f"{path}.beta"),
            )
        if form == "grid":
            raw = _field(obj, "points", path, list)
            points = []
            for i, entry in enumerate(raw):
                _expect(entry, f"{path}.points[{i}]", dict)
                probs = _field(entry, "probs", f"{path}.points[{i}]", list)
                pt = SimplexPoint(tuple(_num(x, f"{path}.points[{i}].probs") for x in probs))
                points.append(
                    (pt, _value_or_inf(_field(entry, "value", f"{path}.points[{i}]"), f"{path}.points[{i}].value"))
                )
            return CostFunction.grid(points)
    except (ValueError, ModelFormatError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"{path}: {exc}")
    raise ModelFormatError(f"{path}.form: unknown cost form {form!r}")


def encode_model(o: PreferenceOracle):
    out = {
        "output_space": list(o.space.levels),
        "oracle_kind": o.kind,
        "utility": encode_utility(o.utility),
        "cost": encode_cost(o.cost),
    }
    if o.kind == "income_effects":
        out["lambda"] = o.income_slope
    return out


def decode_model(obj, path: str = "model") -> PreferenceOracle:
    _expect(obj, path, dict)
    levels = _field(obj, "output_space", path, list)
    try:
        space = OutputSpace(tuple(_num(x, f"{path}.output_space") for x in levels))
    except ValueError as exc:
        raise ModelFormatError(f"{path}.output_space: {exc}")
    kind = _field(obj, "oracle_kind", path, str, default="moral_hazard")
    u = decode_utility(_field(obj, "utility", path, dict), f"{path}.utility")
    c = decode_cost(_field(obj, "cost", path, dict), f"{path}.cost")
    try:
        if kind == "income_effects":
            lam = _num(_field(obj, "lambda", path), f"{path}.lambda")
            return PreferenceOracle.income_effects(space, c, u, lam)
        if kind in ("moral_hazard", "malevolent"):
            return PreferenceOracle(kind, space, c, u)
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}")
    raise ModelFormatError(f"{path}.oracle_kind: unknown kind {kind!r}")


def encode_standard_model(m: StandardModel, space: OutputSpace):
    return {
        "output_space": list(space.levels),
        "efforts": list(m.efforts),
        "costs": list(m.costs),
        "beliefs": [list(b.probs) for b in m.beliefs],
    }


def decode_standard_model(obj, path: str = "model") -> tuple[StandardModel, OutputSpace]:
    _expect(obj, path, dict)
    levels = _field(obj, "output_space", path, list)
    try:
        space = OutputSpace(tuple(_num(x, f"{path}.output_space") for x in levels))
        beliefs_raw = _field(obj, "beliefs", path, list)
        beliefs = tuple(
            SimplexPoint(tuple(_num(x, f"{path}.beliefs[{i}]") for x in row))
            for i, row in enumerate(beliefs_raw)
        )
        costs = tuple(_num(x, f"{path}.costs") for x in _field(obj, "costs", path, list))
        efforts = _field(obj, "efforts", path, list, default=None)
        if efforts is None:
            efforts = tuple(f"e{i}" for i in range(len(costs)))
        model = StandardModel(tuple(str(e) for e in efforts), costs, beliefs)
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}")
    if any(b.n != space.n for b in beliefs):
        raise ModelFormatError(f"{path}.beliefs: dimension differs from output_space")
    return model, space


# ---------------------------------------------------------------------------
# witnesses / verdicts
# ---------------------------------------------------------------------------


def encode_witness(w: Witness):
    return {
        "kind": w.kind,
        "contracts": {k: encode_contract(v) for k, v in w.contracts.items()},
        "lotteries": {k: encode_lottery(v) for k, v in w.lotteries.items()},
        "vectors": {k: list(v) for k, v in w.vectors.items()},
        "alpha": w.alpha,
        "values": {k: _encode_value(v) for k, v in w.values.items()},
        "margin": _encode_value(w.margin),
        "detail": w.detail,
    }


def decode_witness(obj, space: OutputSpace | None, path: str = "witness") -> Witness:
    _expect(obj, path, dict)
    kind = _field(obj, "kind", path, str)
    contracts = {}
    for k, v in _field(obj, "contracts", path, dict, default={}).items():
        if space is None:
            raise ModelFormatError(f"{path}.contracts: no output space available")
        contracts[k] = decode_contract(v, space, f"{path}.contracts.{k}")
    lotteries = {
        k: decode_lottery(v, f"{path}.lotteries.{k}")
        for k, v in _field(obj, "lotteries", path, dict, default={}).items()
    }
    vectors = {
        k: tuple(_num(x, f"{path}.vectors.{k}") for x in _expect(v, f"{path}.vectors.{k}", list))
        for k, v in _field(obj, "vectors", path, dict, default={}).items()
    }
    alpha = _field(obj, "alpha", path, default=None)
    if alpha is not None:
        alpha = _num(alpha, f"{path}.alpha")
    values = {
        k: _value_or_inf(v, f"{path}.values.{k}")
        for k, v in _field(obj, "values", path, dict, default={}).items()
    }
    return Witness(
        kind=kind,
        contracts=contracts,
        lotteries=lotteries,
        vectors=vectors,
        alpha=alpha,
        values=values,
        margin=_value_or_inf(_field(obj, "margin", path, default=0.0), f"{path}.margin"),
        detail=str(_field(obj, "detail", path, default="")),
    )


def encode_axiom_verdict(v: AxiomVerdict):
    return {
        "axiom": v.axiom.value,
        "passed": v.passed,
        "n_samples": v.n_samples,
        "witness": encode_witness(v.witness) if v.witness else None,
        "note": v.note,
    }


def encode_order_verdict(v: OrderVerdict):
    return {
        "holds": v.holds,
        "n_samples": v.n_samples,
        "n_hypothesis": v.n_hypothesis,
        "witness": encode_witness(v.witness) if v.witness else None,
        "note": v.note,
    }
