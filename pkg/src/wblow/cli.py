"""Command-line front end.

Parses singularity/weight-system notation, dispatches to the library, and
emits reports as human-readable text or deterministic JSON (stable key
order, rationals as "p/q" strings, schema_version pinned).  Exit codes:
0 success, 1 domain error (bad input, enumeration cap), 2 verification
failure (a checker reported fail), 3 internal-consistency failure.

The environment variable WBLOW_MAX_ENUM caps enumeration box sizes
(default 50 million lattice points); exceeding the cap exits 1 with a clear
message.  Batch files are JSON lists of run specifications; batch results
are emitted in input order and the aggregate exit code is the maximum of
the individual ones.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import blowup, lifting, quotient, wideal
from .errors import (
    InternalConsistencyError,
    InvalidInstanceError,
    NotationError,
    WblowError,
    exit_code_for,
)
from .notation import (
    format_rational,
    parse_polynomial,
    parse_rational,
    parse_singularity,
    parse_weight_system,
)

SCHEMA_VERSION = 1

#: Published envelope schema for JSON reports (validated in the test suite).
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema_version",
        "command",
        "input",
        "status",
        "exit_code",
        "result",
        "error",
        "provenance",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "input": {"type": "object"},
        "status": {"enum": ["ok", "verification-failed", "error"]},
        "exit_code": {"type": "integer", "minimum": 0, "maximum": 3},
        "result": {"type": ["object", "null"]},
        "error": {
            "type": ["object", "null"],
            "properties": {
                "kind": {"type": "string"},
                "message": {"type": "string"},
                "position": {"type": "integer"},
            },
            "required": ["kind", "message"],
        },
        "provenance": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class RunSpec:
    """One validated command invocation."""

    command: str
    target: str | None
    parameters: dict
    output_format: str = "text"


@dataclass
class Report:
    command: str
    input: dict
    status: str = "ok"
    exit_code: int = 0
    result: dict | None = None
    error: dict | None = None
    provenance: list = field(default_factory=list)

    def to_payload(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "input": self.input,
            "status": self.status,
            "exit_code": self.exit_code,
            "result": self.result,
            "error": self.error,
            "provenance": list(self.provenance),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key in sorted(self.input):
            lines.append(f"input.{key}: {self.input[key]}")
        lines.append(f"status: {self.status}")
        if self.error is not None:
            lines.append(f"error[{self.error['kind']}]: {self.error['message']}")
        if self.result is not None:
            lines.extend(_render_text(self.result, ""))
        for note in self.provenance:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def _render_text(value, prefix: str):
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            out.extend(_render_text(value[key], f"{prefix}{key}."))
        return out
    if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        out = []
        for i, item in enumerate(value):
            out.extend(_render_text(item, f"{prefix}{i}."))
        return out
    return [f"{prefix[:-1]}: {value}"]


# ---------------------------------------------------------------------------
# JSON-friendly conversions (deterministic, rationals as "p/q")


def _frac(value) -> str:
    return format_rational(Fraction(value))


def _vec(values) -> list:
    return [int(v) for v in values]


def _fracvec(values) -> list:
    return [_frac(v) for v in values]


def _system_dict(system: wideal.WeightSystem) -> dict:
    return {
        "notation": system.notation(),
        "weights": _vec(system.weights),
        "m": system.m,
        "lcm": system.lcm,
    }


def _quotient_dict(q: quotient.CyclicQuotientType) -> dict:
    return {"notation": q.notation(), "m": q.m, "weights": _vec(q.weights)}


def _instance_dict(inst: lifting.LiftInstance) -> dict:
    return {
        "base_weights": _vec(inst.base_weights),
        "m": inst.m,
        "multiplier": inst.multiplier,
        "normalization_factor": inst.normalization_factor,
        "base_lcm": inst.base_lcm,
        "lifted_weight": inst.lifted_weight,
        "weights": _vec(inst.weights),
        "step": inst.step,
    }


def _check_dict(report: lifting.CheckReport) -> dict:
    payload = {
        "d_range": [int(d) for d in report.d_range],
        "status": report.status,
        "counterexample": None,
    }
    if report.counterexample is not None:
        v = report.counterexample
        payload["counterexample"] = {
            "d": v.d,
            "monomial": _vec(v.monomial),
            "explanation": v.explanation,
        }
    return payload


# ---------------------------------------------------------------------------
# Parameter schemas: commands validate their parameters before dispatch.

_INT = ("int",)
_STR = ("str",)
_BOOL = ("bool",)

PARAMETER_SCHEMAS = {
    "charts": {"target": True, "required": {}, "optional": {"chart": _INT}},
    "fan": {"target": True, "required": {}, "optional": {"grid": _INT}},
    "ideal": {"target": True, "required": {"k": _STR}, "optional": {}},
    "wt": {"target": True, "required": {"poly": _STR}, "optional": {}},
    "pushforward": {"target": True, "required": {"f": _STR}, "optional": {"a_max": _INT}},
    "transform": {"target": True, "required": {"g": _STR, "chart": _INT}, "optional": {}},
    "lift-check": {
        "target": False,
        "required": {"sigma_prime": _STR, "m": _INT, "a": _INT},
        "optional": {"dmax": _INT, "degree_bound": _INT, "mutate": _INT, "threads": _INT},
    },
    "chain": {"target": True, "required": {"a_sequence": _STR}, "optional": {"dmax": _INT}},
    "invariants": {"target": True, "required": {}, "optional": {"degree_bound": _INT}},
    "example33": {
        "target": False,
        "required": {"r": _INT, "m": _INT, "a": _INT},
        "optional": {"exponent_n": _INT},
    },
    "truncation": {
        "target": True,
        "required": {},
        "optional": {"b": _STR, "d": _INT, "find_stable": _BOOL, "dmax": _INT, "limit": _INT},
    },
}

_TYPE_CHECKS = {
    "int": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "str": lambda v: isinstance(v, str),
    "bool": lambda v: isinstance(v, bool),
}


def validate_spec(spec: RunSpec) -> None:
    """Check the command name and parameter names/types against the schema."""
    schema = PARAMETER_SCHEMAS.get(spec.command)
    if schema is None:
        raise InvalidInstanceError(f"unknown command {spec.command!r}")
    if spec.output_format not in ("text", "json"):
        raise InvalidInstanceError(f"unknown output format {spec.output_format!r}")
    if schema["target"] and not spec.target:
        raise InvalidInstanceError(f"command {spec.command!r} requires a target")
    if not schema["target"] and spec.target:
        raise InvalidInstanceError(f"command {spec.command!r} takes no target")
    allowed = {**schema["required"], **schema["optional"]}
    for name, value in spec.parameters.items():
        if name not in allowed:
            raise InvalidInstanceError(f"unknown parameter {name!r} for {spec.command!r}")
        (type_name,) = allowed[name]
        if not _TYPE_CHECKS[type_name](value):
            raise InvalidInstanceError(
                f"parameter {name!r} of {spec.command!r} must be {type_name}, got {value!r}"
            )
    for name in schema["required"]:
        if name not in spec.parameters:
            raise InvalidInstanceError(f"missing parameter {name!r} for {spec.command!r}")


def _csv_ints(text: str, what: str) -> tuple:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise InvalidInstanceError(f"{what} must be comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# Command handlers: each returns (result, provenance, verification_ok)


def _cmd_charts(spec: RunSpec):
    system = parse_weight_system(spec.target)
    indices = [spec.parameters["chart"]] if "chart" in spec.parameters else list(
        range(1, system.n + 1)
    )
    fan = blowup.build_fan(system)
    charts = []
    for i in indices:
        ch = blowup.chart(system, i)
        charts.append(
            {
                "index": ch.index,
                "order": ch.quotient_type.m,
                "quotient_type": _quotient_dict(ch.quotient_type),
                "substitution": [_fracvec(row) for row in ch.substitution],
                "cone_index": blowup.cone_index(fan, i),
            }
        )
    result = {"system": _system_dict(system), "charts": charts}
    return result, ["charts and cone indices computed exactly from the weight data"], True


def _cmd_fan(spec: RunSpec):
    system = parse_weight_system(spec.target)
    fan = blowup.build_fan(system)
    grid = spec.parameters.get("grid", blowup.SUBDIVISION_GRID)
    ok = blowup.fan_is_subdivision(fan, grid)
    if not ok:
        raise InternalConsistencyError(
            "the constructed fan failed its own subdivision check"
        )
    result = {
        "system": _system_dict(system),
        "rays": [_fracvec(ray) for ray in fan.rays],
        "cones": [_vec(cone) for cone in fan.cones],
        "subdivision_check": {"grid": grid, "ok": True},
        "cone_indices": [blowup.cone_index(fan, i) for i in range(1, fan.n + 1)],
    }
    return result, ["subdivision verified on the deterministic sample grid"], True


def _cmd_ideal(spec: RunSpec):
    system = parse_weight_system(spec.target)
    k = parse_rational(spec.parameters["k"])
    ideal = wideal.ideal_generators(system, k)
    result = {
        "system": _system_dict(system),
        "k": _frac(ideal.k),
        "threshold_numerator": _frac(ideal.threshold_numerator),
        "generators": [_vec(g) for g in ideal.gens],
        "monomials_below": wideal.count_below(system, k),
    }
    return result, [], True


def _cmd_wt(spec: RunSpec):
    system = parse_weight_system(spec.target)
    f = parse_polynomial(spec.parameters["poly"], nvars=system.n)
    weight = wideal.polynomial_weight(f, system)
    per_monomial = [
        {"exponents": _vec(s), "weight": _frac(wideal.monomial_weight(s, system))}
        for s in f.support()
    ]
    result = {
        "system": _system_dict(system),
        "polynomial": f.text(),
        "weight": _frac(weight),
        "per_monomial": per_monomial,
    }
    return result, [], True


def _cmd_pushforward(spec: RunSpec):
    system = parse_weight_system(spec.target)
    f = parse_polynomial(spec.parameters["f"], nvars=system.n)
    report = blowup.pushforward_decomposition(f, system, spec.parameters.get("a_max"))
    result = {
        "system": _system_dict(system),
        "polynomial": f.text(),
        "multiplicity": _frac(report.multiplicity),
        "eigenvalue_class": report.eigenvalue_class,
        "levels": [
            {"a": rec.a, "generators": [_vec(g) for g in rec.ideal.gens]}
            for rec in report.records
        ],
    }
    notes = [
        "the pullback splits as strict transform plus multiplicity times the divisor"
        " (computed); level ideals computed by bounded enumeration",
        blowup.exceptional_info(system).vanishing_fact,
    ]
    return result, notes, True


def _cmd_transform(spec: RunSpec):
    system = parse_weight_system(spec.target)
    g = parse_polynomial(spec.parameters["g"], nvars=system.n)
    teq = blowup.strict_transform_in_chart(g, system, spec.parameters["chart"])
    def terms_payload(terms):
        return [
            {"exponents": _fracvec(e), "coefficient": _frac(c)} for e, c in terms
        ]
    result = {
        "system": _system_dict(system),
        "chart": teq.chart_index,
        "factored_exponent": _frac(teq.factored_exponent),
        "residual": terms_payload(teq.terms),
        "divisor_restriction": terms_payload(teq.divisor_restriction()),
    }
    return result, ["exponents are exact rationals in the chart coordinate"], True


def _cmd_lift_check(spec: RunSpec):
    base = _csv_ints(spec.parameters["sigma_prime"], "sigma-prime")
    inst = lifting.make_lift_instance(base, spec.parameters["m"], spec.parameters["a"])
    mutate = spec.parameters.get("mutate")
    if mutate is not None:
        inst = lifting.mutated_instance(inst, mutate)
    d_max = spec.parameters.get("dmax", 6)
    degree_bound = spec.parameters.get("degree_bound")
    threads = spec.parameters.get("threads", 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            report = lifting.verify_decomposition_range(
                inst, d_max, degree_bound, map_fn=pool.map
            )
    else:
        report = lifting.verify_decomposition_range(inst, d_max, degree_bound)
    result = {
        "instance": _instance_dict(inst),
        "mutated": mutate is not None,
        "check": _check_dict(report),
    }
    notes = []
    if mutate is not None:
        notes.append(
            f"lifted weight deliberately offset by {mutate} from its forced value"
        )
    return result, notes, report.passed


def _cmd_chain(spec: RunSpec):
    start = parse_singularity(spec.target)
    if isinstance(start, quotient.CyclicQuotientType):
        start = quotient.HyperquotientType(start, quotient.Polynomial.zero(start.n), 0)
    a_sequence = _csv_ints(spec.parameters["a_sequence"], "a-sequence")
    report = lifting.chain_report(start, a_sequence, spec.parameters.get("dmax", 4))
    result = {
        "start": start.notation(),
        "initial_type": _quotient_dict(report.initial_type),
        "initial_weights": _vec(report.initial_weights),
        "d_max": report.d_max,
        "status": report.status,
        "halted_at": report.halted_at,
        "stages": [
            {
                "index": st.index,
                "multiplier": st.multiplier,
                "instance": _instance_dict(st.instance),
                "lifted_type": _quotient_dict(st.lifted_type),
                "check": _check_dict(st.check),
            }
            for st in report.stages
        ],
    }
    return result, list(report.notes), report.status == "pass"


def _cmd_invariants(spec: RunSpec):
    target = parse_singularity(spec.target)
    if not isinstance(target, quotient.CyclicQuotientType):
        raise InvalidInstanceError("invariants takes a cyclic quotient type")
    bound = spec.parameters.get("degree_bound", target.n * target.m)
    basis = quotient.invariant_monoid_basis(target, bound)
    result = {
        "type": _quotient_dict(target),
        "degree_bound": basis.degree_bound,
        "complete": basis.complete,
        "basis": [_vec(g) for g in basis.generators],
        "relation": None,
    }
    notes = []
    if target.n == 2:
        try:
            rel = quotient.binomial_relation_2d(target)
            result["relation"] = {
                "basis": [_vec(v) for v in rel.basis],
                "exponents": _vec(rel.exponents),
            }
        except WblowError as exc:
            notes.append(f"no binomial relation: {exc}")
    return result, notes, True


def _cmd_example33(spec: RunSpec):
    r, m, a = spec.parameters["r"], spec.parameters["m"], spec.parameters["a"]
    exp_n = spec.parameters.get("exponent_n", 2)
    if exp_n < 2:
        raise InvalidInstanceError("the last-variable exponent must be at least 2")
    rm = r * m
    surface = quotient.CyclicQuotientType(rm, (1, rm - 1))
    basis = quotient.invariant_monoid_basis(surface, 2 * rm)
    expected_basis = sorted([(rm, 0), (0, rm), (1, 1)], key=lambda e: (sum(e), e))
    basis_ok = list(basis.generators) == expected_basis and basis.complete

    relation_ok = False
    relation_payload = None
    try:
        rel = quotient.binomial_relation_2d(surface)
        relation_payload = {
            "basis": [_vec(v) for v in rel.basis],
            "exponents": _vec(rel.exponents),
        }
        relation_ok = rel.basis[2] == (1, 1) and rel.exponents == (1, 1, rm)
    except WblowError:
        pass

    action = quotient.action_lift_check(r, m, a)

    ambient = quotient.CyclicQuotientType(r, (a, -a, 1, 0))
    g = (
        quotient.Polynomial(4, {(1, 1, 0, 0): 1, (0, 0, rm, 0): 1, (0, 0, 0, exp_n): 1})
    )
    eig = quotient.semi_invariant_class(g, ambient)
    eig_ok = eig == 0

    ok = basis_ok and relation_ok and action.ok and eig_ok
    result = {
        "r": r,
        "m": m,
        "a": a,
        "surface_type": _quotient_dict(surface),
        "surface_basis": [_vec(g_) for g_ in basis.generators],
        "basis_ok": basis_ok,
        "relation": relation_payload,
        "relation_ok": relation_ok,
        "action_lift": {
            "ok": action.ok,
            "group_order": action.group_order,
            "induced_weights": _vec(action.induced),
            "expected_weights": _vec(action.expected),
        },
        "equation": g.text(),
        "eigenvalue_class": eig,
        "eigenvalue_ok": eig_ok,
        "checks_passed": ok,
    }
    notes = [
        "verifies exponent and weight bookkeeping only: invariant basis,"
        " binomial relation, lifted-action weights, eigenvalue class"
    ]
    return result, notes, ok


def _cmd_truncation(spec: RunSpec):
    system = parse_weight_system(spec.target)
    if spec.parameters.get("find_stable", False):
        d_max = spec.parameters.get("dmax", 3)
        limit = spec.parameters.get("limit", 8)
        found = wideal.find_stable_b(system, d_max, limit)
        result = {
            "system": _system_dict(system),
            "mode": "find-stable",
            "d_max": d_max,
            "search_limit": limit,
            "stable_b": None if found is None else _frac(found),
        }
        return result, [], True
    if "b" not in spec.parameters or "d" not in spec.parameters:
        raise InvalidInstanceError(
            "truncation needs either --find-stable or both --b and --d"
        )
    b = parse_rational(spec.parameters["b"])
    report = wideal.product_vs_truncation(system, b, spec.parameters["d"])
    result = {
        "system": _system_dict(system),
        "mode": "compare",
        "b": _frac(report.b),
        "d": report.d,
        "equal": report.equal,
        "containment_ok": report.containment_ok,
        "witness": None if report.witness is None else _vec(report.witness),
        "truncation_generators": [_vec(g) for g in report.truncation.gens],
        "power_generators": [_vec(g) for g in report.power_gens],
    }
    if not report.containment_ok:
        raise InternalConsistencyError(
            "the power ideal escaped the truncation ideal; weights must add"
        )
    return result, [], True


_HANDLERS = {
    "charts": _cmd_charts,
    "fan": _cmd_fan,
    "ideal": _cmd_ideal,
    "wt": _cmd_wt,
    "pushforward": _cmd_pushforward,
    "transform": _cmd_transform,
    "lift-check": _cmd_lift_check,
    "chain": _cmd_chain,
    "invariants": _cmd_invariants,
    "example33": _cmd_example33,
    "truncation": _cmd_truncation,
}


def run(spec: RunSpec) -> Report:
    """Validate, dispatch, and wrap the outcome in a Report with an exit code."""
    # threads is an execution knob, not an input: keep it out of the echo so
    # reports are byte-identical across thread-count settings
    input_echo = {
        "target": spec.target,
        "parameters": {k: v for k, v in sorted(spec.parameters.items()) if k != "threads"},
    }
    try:
        validate_spec(spec)
        result, provenance, ok = _HANDLERS[spec.command](spec)
    except WblowError as exc:
        error = {"kind": exc.kind, "message": str(exc)}
        if isinstance(exc, NotationError):
            error["position"] = exc.position
        return Report(
            command=spec.command,
            input=input_echo,
            status="error",
            exit_code=exit_code_for(exc),
            error=error,
        )
    status = "ok" if ok else "verification-failed"
    return Report(
        command=spec.command,
        input=input_echo,
        status=status,
        exit_code=0 if ok else 2,
        result=result,
        provenance=provenance,
    )


def run_batch(path: str, threads: int = 1) -> tuple[dict, int]:
    """Run every spec in a JSON batch file; results in input order, exit = max code."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "batch",
            "input": {"path": path},
            "status": "error",
            "exit_code": 1,
            "result": None,
            "error": {"kind": "batch-unreadable", "message": str(exc)},
            "provenance": [],
        }
        return payload, 1
    if not isinstance(raw, list):
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "batch",
            "input": {"path": path},
            "status": "error",
            "exit_code": 1,
            "result": None,
            "error": {"kind": "batch-unreadable", "message": "batch file must hold a JSON list"},
            "provenance": [],
        }
        return payload, 1

    def spec_of(entry) -> RunSpec:
        if not isinstance(entry, dict):
            raise InvalidInstanceError("each batch entry must be an object")
        unknown = set(entry) - {"command", "target", "parameters"}
        if unknown:
            raise InvalidInstanceError(f"unknown batch entry keys: {sorted(unknown)}")
        return RunSpec(
            command=entry.get("command", ""),
            target=entry.get("target"),
            parameters=entry.get("parameters", {}),
            output_format="json",
        )

    def run_entry(entry):
        try:
            return run(spec_of(entry))
        except WblowError as exc:
            return Report(
                command="batch-entry",
                input={"entry": repr(entry)},
                status="error",
                exit_code=exit_code_for(exc),
                error={"kind": exc.kind, "message": str(exc)},
            )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run_entry, raw))
    else:
        reports = [run_entry(entry) for entry in raw]

    exit_code = max((r.exit_code for r in reports), default=0)
    status = "ok"
    if any(r.status == "error" for r in reports):
        status = "error"
    elif any(r.status == "verification-failed" for r in reports):
        status = "verification-failed"
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "batch",
        "input": {"path": path},
        "status": status,
        "exit_code": exit_code,
        "result": {"results": [r.to_payload() for r in reports]},
        "error": None,
        "provenance": [],
    }
    return payload, exit_code


# ---------------------------------------------------------------------------
# argparse wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wblow",
        description="Exact computations for weighted blow-ups of quotient singularities.",
        epilog=(
            "Notation: '1/m(a1,...,an)' for weight systems and cyclic quotients;"
            " '1/m(a0,...,an;e){g=<poly>}' for hyperquotients."
            " WBLOW_MAX_ENUM caps enumeration box sizes."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charts", parents=[common], help="chart types and substitutions")
    p.add_argument("target")
    p.add_argument("--chart", type=int)

    p = sub.add_parser("fan", parents=[common], help="subdivision fan and its checks")
    p.add_argument("target")
    p.add_argument("--grid", type=int)

    p = sub.add_parser("ideal", parents=[common], help="minimal generators at a threshold")
    p.add_argument("target")
    p.add_argument("--k", required=True, help="threshold, as 'p/q' or an integer")

    p = sub.add_parser("wt", parents=[common], help="weight of a polynomial")
    p.add_argument("target")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("pushforward", parents=[common], help="divisor pullback decomposition")
    p.add_argument("target")
    p.add_argument("--f", required=True, help="semi-invariant equation")
    p.add_argument("--a-max", dest="a_max", type=int)

    p = sub.add_parser("transform", parents=[common], help="strict transform in one chart")
    p.add_argument("target")
    p.add_argument("--g", required=True)
    p.add_argument("--chart", type=int, required=True)

    p = sub.add_parser("lift-check", parents=[common], help="decomposition identity sweep")
    p.add_argument("--sigma-prime", dest="sigma_prime", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--dmax", type=int)
    p.add_argument("--degree-bound", dest="degree_bound", type=int)
    p.add_argument("--mutate", type=int)
    p.add_argument("--threads", type=int)

    p = sub.add_parser("chain", parents=[common], help="iterated lifting chain")
    p.add_argument("target")
    p.add_argument("--a-sequence", dest="a_sequence", required=True)
    p.add_argument("--dmax", type=int)

    p = sub.add_parser("invariants", parents=[common], help="invariant monomial basis")
    p.add_argument("target")
    p.add_argument("--degree-bound", dest="degree_bound", type=int)

    p = sub.add_parser("example33", parents=[common], help="bundled worked surface example")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--exponent-n", dest="exponent_n", type=int)

    p = sub.add_parser("truncation", parents=[common], help="power vs truncation ideals")
    p.add_argument("target")
    p.add_argument("--b", help="threshold step multiple, as 'p/q'")
    p.add_argument("--d", type=int)
    p.add_argument("--find-stable", dest="find_stable", action="store_true")
    p.add_argument("--dmax", type=int)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("batch", parents=[common], help="run a JSON list of specs")
    p.add_argument("path")
    p.add_argument("--threads", type=int)

    return parser


_ARG_PARAMS = {
    "charts": ("chart",),
    "fan": ("grid",),
    "ideal": ("k",),
    "wt": ("poly",),
    "pushforward": ("f", "a_max"),
    "transform": ("g", "chart"),
    "lift-check": ("sigma_prime", "m", "a", "dmax", "degree_bound", "mutate", "threads"),
    "chain": ("a_sequence", "dmax"),
    "invariants": ("degree_bound",),
    "example33": ("r", "m", "a", "exponent_n"),
    "truncation": ("b", "d", "find_stable", "dmax", "limit"),
}


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    params = {}
    for name in _ARG_PARAMS[args.command]:
        value = getattr(args, name, None)
        if value is None or (name == "find_stable" and value is False):
            continue
        params[name] = value
    return RunSpec(
        command=args.command,
        target=getattr(args, "target", None),
        parameters=params,
        output_format=args.format,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        payload, code = run_batch(args.path, threads=args.threads or 1)
        text = json.dumps(payload, indent=2, sort_keys=True)
        stream = sys.stdout if code == 0 or payload["status"] != "error" else sys.stderr
        if args.format == "text":
            lines = [f"batch: {args.path}", f"status: {payload['status']}"]
            results = (payload.get("result") or {}).get("results", [])
            for i, rep in enumerate(results):
                lines.append(f"[{i}] {rep['command']}: {rep['status']} (exit {rep['exit_code']})")
            if payload.get("error"):
                lines.append(f"error: {payload['error']['message']}")
            print("\n".join(lines), file=stream)
        else:
            print(text, file=stream)
        return code

    report = run(spec_from_args(args))
    rendered = report.to_json() if args.format == "json" else report.to_text()
    print(rendered, file=sys.stderr if report.status == "error" else sys.stdout)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
