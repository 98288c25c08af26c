"""Command line front end: classification checks, verification suites, the zoo.

JSON is the contract; the text format is rendered from the JSON report.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__, zoo
from .caps import get_caps, reset_caps
from .errors import (BadParams, ConfigError, InvalidStructure, LimitExceeded, MissingPullbacks,
                     TranspensionError, UnknownEntry, UnsupportedCell, WindowEscape)
from .multiplier import check_drop_iso, property_report
from .presheaf import sample_presheaves
from .report import FAIL, FRONTIER, INFO, PASS, SKIP, WINDOW_NEGATIVE, CheckReport, jsonable

SUITES = ("classification", "poles", "boundary", "kernel", "quantification", "exchange",
          "elimination", "adjunctions", "commutation", "modalities", "spooky", "composite")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_CAPS = 0, 1, 2, 3


@dataclass
class RunConfig:
    suites: tuple = ()
    zoo: str = None
    params: dict = field(default_factory=dict)
    window: int = None
    seed: int = 0
    samples: int = 5
    format: str = "json"
    output: str = None

    def validate(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(SUITES)}", "--suite")
        if self.format not in ("json", "text"):
            raise ConfigError("format must be json or text", "--format")
        if self.window is not None and self.window < 0:
            raise ConfigError("window must be non-negative", "--window")
        if self.samples < 1:
            raise ConfigError("samples must be positive", "--samples")
        if self.suites and set(self.suites) - {"commutation", "modalities"} and self.zoo is None:
            raise ConfigError("these suites need a zoo entry", "--zoo")
        self.suites = tuple(s for s in SUITES if s in self.suites)
        return self

    def to_json(self):
        return {"suites": list(self.suites), "zoo": self.zoo, "params": dict(sorted(self.params.items())),
                "window": self.window, "seed": self.seed, "samples": self.samples}


@dataclass
class RunReport:
    config: dict
    windows: dict
    reports: list

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def counts(self):
        out = {s: 0 for s in (PASS, FAIL, WINDOW_NEGATIVE, FRONTIER, SKIP, INFO)}
        for r in self.reports:
            for e in r.entries:
                out[e.status] = out.get(e.status, 0) + 1
        return out

    def to_json(self):
        return {
            "tool": "transpension",
            "version": __version__,
            "config": self.config,
            "windows": self.windows,
            "passed": self.passed,
            "counts": self.counts(),
            "reports": [r.to_json() for r in self.reports],
        }


def dumps(data):
    return json.dumps(jsonable(data), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def render_text(data):
    lines = [f"transpension {data['version']}: {'PASS' if data['passed'] else 'FAIL'}"]
    cfg = data["config"]
    if cfg.get("zoo"):
        params = ",".join(f"{k}={v}" for k, v in cfg["params"].items())
        lines.append(f"zoo {cfg['zoo']}{'(' + params + ')' if params else ''}, window {cfg['window']}, "
                     f"seed {cfg['seed']}")
    for name, w in sorted(data["windows"].items()):
        lines.append(f"  {name}: {w['objects']} objects, {w['morphisms']} morphisms")
    for rep in data["reports"]:
        lines.append(f"{rep['name']}: {'PASS' if rep['passed'] else 'FAIL'}")
        for e in rep["entries"]:
            line = f"  [{e['status']}] {e['check']}"
            if e.get("detail"):
                line += f": {e['detail']}"
            if "witness" in e:
                line += f" (witness: {json.dumps(e['witness'], ensure_ascii=False, sort_keys=True)})"
            lines.append(line)
    c = data["counts"]
    lines.append("totals: " + ", ".join(f"{k} {c[k]}" for k in sorted(c)))
    return "\n".join(lines) + "\n"


# suites

def _contexts(M):
    from .transpension import FourFunctors, psi_choices
    out = []
    for label, Psi, PV in psi_choices(M):
        out.append(FourFunctors(M, Psi_V=PV) if PV is not None else FourFunctors(M, Psi))
    return out


def _samples(FF, cfg):
    sw = sample_presheaves(FF.EW, cfg.seed, cfg.samples, prefix="Δ")
    sv = sample_presheaves(FF.EV, cfg.seed + 1, cfg.samples, prefix="Γ")
    return sw, sv


def _suite_classification(M, entry, cfg, state):
    return [classification_report(M, entry.expected, entry.name)]


def _suite_poles(M, entry, cfg, state):
    from .transpension import check_poles
    return [check_poles(FF, _samples(FF, cfg)[0]) for FF in state.contexts()]


def _suite_boundary(M, entry, cfg, state):
    from .multiplier import boundary_presheaf
    from .transpension import check_boundary_general, check_boundary_theorem, check_interval_boundary
    top = state.contexts()[0]
    r = CheckReport(f"boundary-theorem[{M.name}]")
    r.extend(check_boundary_theorem(top))
    sentinel = check_boundary_theorem(top, mutate=True)
    r.expect("mutated boundary is rejected", not sentinel.passed)
    out = [r]
    B = boundary_presheaf(M)
    sizes = CheckReport(f"boundary-sizes[{M.name}]")
    for v in range(M.V.n_objects):
        if M.interior[v]:
            sizes.add(f"|∂U({M.V.objects[v]!r})|", INFO, str(len(B.cells[v])))
    out.append(sizes)
    if _binary_interval(entry):
        out.append(check_interval_boundary(M))
    for FF in state.contexts()[1:]:
        out.append(check_boundary_general(M, FF.Psi))
    return out


def _binary_interval(entry):
    if entry.name in ("affine-cubes", "cartesian-cubes"):
        return int(entry.params["k"]) == 2
    return entry.name == "twisted-cubes"


def _suite_kernel(M, entry, cfg, state):
    from .transpension import check_kernel
    return [check_kernel(FF) for FF in state.contexts()]


def _suite_quantification(M, entry, cfg, state):
    from .transpension import check_psh_quantification
    out = [check_drop_iso(M)]
    for FF in state.contexts():
        sw, sv = _samples(FF, cfg)
        out.append(check_psh_quantification(FF, sw[:3], sv[:3]))
    return out


def _suite_exchange(M, entry, cfg, state):
    from .transpension import check_fresh_exchange
    return [check_fresh_exchange(FF, _samples(FF, cfg)[0]) for FF in state.contexts()]


def _suite_elimination(M, entry, cfg, state):
    from .transpension import check_elimination_support
    return [check_elimination_support(FF) for FF in state.contexts()]


def _suite_adjunctions(M, entry, cfg, state):
    from .transpension import check_adjunction_chain
    FF = state.contexts()[0]
    sw, sv = _samples(FF, cfg)
    return [check_adjunction_chain(FF, sw[:3], sv[:3])]


def _suite_commutation(M, entry, cfg, state):
    from .transpension import COMMUTATION_FIXTURES, check_commutation_instance
    out = []
    for cell in COMMUTATION_FIXTURES:
        if entry is not None and (cell.fixture != entry.name or dict(cell.params) != _loose(entry.params)):
            continue
        try:
            out.append(check_commutation_instance(cell, seed=cfg.seed,
                                                  M=M if entry is not None else None))
        except UnsupportedCell as exc:
            out.append(CheckReport(f"commutation[{cell.name}]").add(cell.statement or cell.name, SKIP, str(exc)))
    return out


def _loose(params):
    return {k: v for k, v in params.items() if not (k == "involution" and v == 0)}


def _suite_modalities(M, entry, cfg, state):
    from .modalities import check_piped_adjunction
    out = []
    if entry is None or entry.name == "embargo":
        k = 2 if entry is None else int(entry.params["k"])
        for adj in zoo.embargo_adjunctions(k, bound=2):
            out.append(check_piped_adjunction(adj, seed=cfg.seed))
    if entry is None or entry.name == "erasure":
        d = 2 if entry is None else int(entry.params["d"])
        i = 0 if entry is None else int(entry.params["i"])
        out.append(check_piped_adjunction(zoo.erasure_adjunction(d, i), seed=cfg.seed))
    if not out:
        out.append(CheckReport("modalities").add("piped adjunctions", SKIP,
                                                 "no adjunction fixture for this zoo entry"))
    return out


def _suite_spooky(M, entry, cfg, state):
    from .transpension import check_spooky_example
    return [check_spooky_example(M)]


def _suite_composite(M, entry, cfg, state):
    from .transpension import check_composite_sum
    if cfg.window is not None and cfg.window < 1:
        return [CheckReport("composite").add("composite", SKIP, "needs a window of at least 1")]
    bound = max(0, entry.window - 1 if cfg.window is None else cfg.window - 1)
    M1, M2 = entry.multiplier(bound), entry.multiplier(bound + 1)
    if M1.V is not M2.W:
        return [CheckReport("composite").add("composite", SKIP, "multiplier is not an endofunctor of windows")]
    return [check_composite_sum(M1, M2)]


SUITE_FUNCS = {
    "classification": _suite_classification,
    "poles": _suite_poles,
    "boundary": _suite_boundary,
    "kernel": _suite_kernel,
    "quantification": _suite_quantification,
    "exchange": _suite_exchange,
    "elimination": _suite_elimination,
    "adjunctions": _suite_adjunctions,
    "commutation": _suite_commutation,
    "modalities": _suite_modalities,
    "spooky": _suite_spooky,
    "composite": _suite_composite,
}


# Report-name prefixes whose theorems assume classification properties.  When a
# property fails the outcome is still computed, but a failure is only information.
HYPOTHESES = {
    "kernel[": ("affine", "connection_free"),
    "elimination[": ("affine", "connection_free"),
    "drop[": ("affine",),
    "spooky[": ("cartesian",),
}


def _apply_hypotheses(rep, state):
    needs = next((v for k, v in HYPOTHESES.items() if rep.name.startswith(k)), ())
    unmet = [p for p in needs if state.summary().get(p) is not True]
    if not unmet:
        return rep
    reason = "hypothesis not met (" + ", ".join(f"{p}={state.summary().get(p)}" for p in unmet) + ")"
    for e in rep.entries:
        if e.status == FAIL:
            e.status = INFO
            e.detail = f"{reason}; {e.detail}" if e.detail else reason
    return rep


class _State:
    def __init__(self, M):
        self.M = M
        self._contexts = None
        self._summary = None

    def summary(self):
        if self._summary is None:
            self._summary = property_report(self.M).summary()
        return self._summary

    def contexts(self):
        if self._contexts is None:
            self._contexts = _contexts(self.M)
        return self._contexts


def classification_report(M, expected, name=None):
    """Compare the computed classification with an expectation (None entries are not compared)."""
    r = CheckReport(f"classification[{name or M.name}]")
    r.extend(M.check(), "laws")
    rep = property_report(M)
    got = rep.summary()
    for key in sorted(expected):
        want = expected[key]
        if key not in got:
            raise ConfigError(f"unknown property {key!r}", "--expect")
        if want is None:
            r.add(key, INFO, f"computed {got[key]}")
        else:
            r.expect(key, got[key] == want, f"expected {want}",
                     witness={"computed": got[key], "detail": rep.to_json().get(key)})
    if rep.frontier:
        r.add("slices at the window edge", FRONTIER, f"{rep.frontier} without Σ")
    return r


def _window_meta(M):
    if M is None:
        return {}
    return {"source": {"name": M.W.name, "objects": M.W.n_objects, "morphisms": M.W.n_morphisms},
            "target": {"name": M.V.name, "objects": M.V.n_objects, "morphisms": M.V.n_morphisms}}


def run(config):
    """Execute the selected suites in a fixed order and assemble the report."""
    config.validate()
    get_caps()
    M = entry = None
    if config.zoo is not None:
        _, entry, _ = zoo.build(config.zoo, config.params)
        window = entry.window if config.window is None else config.window
        M = entry.multiplier(window)
        config.window = window
        config.params = dict(entry.params)
    state = _State(M)
    reports = []
    for suite in config.suites:
        try:
            got = SUITE_FUNCS[suite](M, entry, config, state)
        except MissingPullbacks as exc:
            got = [CheckReport(suite).add(suite, WINDOW_NEGATIVE, str(exc))]
        except InvalidStructure as exc:
            got = [CheckReport(suite).add(suite, SKIP, f"construction does not apply: {exc}")]
        for rep in got:
            if M is not None:
                _apply_hypotheses(rep, state)
            rep.name = f"{suite}/{rep.name}"
        reports.extend(got)
    return RunReport(config.to_json(), _window_meta(M), reports)


# schema

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "transpension run report",
    "type": "object",
    "required": ["tool", "version", "config", "windows", "passed", "counts", "reports"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "transpension"},
        "version": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["suites", "zoo", "params", "window", "seed", "samples"],
            "properties": {
                "suites": {"type": "array", "items": {"enum": list(SUITES)}},
                "zoo": {"type": ["string", "null"]},
                "params": {"type": "object"},
                "window": {"type": ["integer", "null"]},
                "seed": {"type": "integer"},
                "samples": {"type": "integer", "minimum": 1},
            },
        },
        "windows": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["name", "objects", "morphisms"],
                "properties": {"name": {"type": "string"}, "objects": {"type": "integer"},
                               "morphisms": {"type": "integer"}},
            },
        },
        "passed": {"type": "boolean"},
        "counts": {"type": "object", "additionalProperties": {"type": "integer"}},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "entries"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "entries": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["check", "status"],
                            "additionalProperties": False,
                            "properties": {
                                "check": {"type": "string"},
                                "status": {"enum": [PASS, FAIL, WINDOW_NEGATIVE, FRONTIER, SKIP, INFO]},
                                "detail": {"type": "string"},
                                "witness": {},
                            },
                        },
                    },
                },
            },
        },
    },
}


def validate_report(data):
    import jsonschema
    jsonschema.validate(data, REPORT_SCHEMA)


# argument handling

def _parse_params(items):
    out = {}
    for item in items or ():
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ConfigError(f"expected key=value, got {part!r}", "--params")
            k, v = part.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _parser():
    p = argparse.ArgumentParser(prog="transpension", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--zoo", help="zoo entry name")
        q.add_argument("--params", action="append", help="entry parameters, e.g. k=2 (repeatable)")
        q.add_argument("--window", type=int, help="source window bound")
        q.add_argument("--format", default="json", choices=("json", "text"))
        q.add_argument("--output", help="write the report to this file")

    check = sub.add_parser("check", help="compare a multiplier classification with an expectation")
    check.add_argument("what", choices=("multiplier",))
    common(check)
    check.add_argument("--expect", help="JSON file mapping properties to true/false/null")

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append", default=[], help=f"one of {', '.join(SUITES)}")
    common(verify)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--samples", type=int, default=5)

    z = sub.add_parser("zoo", help="list or describe zoo entries")
    z.add_argument("action", choices=("list", "describe"))
    z.add_argument("name", nargs="?")
    z.add_argument("--params", action="append")
    z.add_argument("--format", default="text", choices=("json", "text"))

    sub.add_parser("schema", help="print the JSON schema of run reports")
    return p


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_expect(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(str(exc), "--expect") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad JSON: {exc}", "--expect") from None
    if not isinstance(data, dict):
        raise ConfigError("expectation must be a JSON object", "--expect")
    data = data.get("expected", data)
    if any(v not in (True, False, None) for v in data.values()):
        raise ConfigError("expected values must be true, false or null", "--expect")
    return data


def _report_output(report, fmt, output):
    data = report.to_json()
    text = dumps(data) if fmt == "json" else render_text(json.loads(dumps(data)))
    _emit(text, output)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _zoo_command(args):
    if args.action == "list":
        rows = []
        for name in zoo.names():
            _, entry, _ = zoo.build(name)
            rows.append({"name": name, "description": entry.description, "params": entry.params,
                         "window": entry.window})
        if args.format == "json":
            _emit(dumps(rows), None)
        else:
            _emit("".join(f"{r['name']:18} {r['description']}\n" for r in rows), None)
        return EXIT_PASS
    if not args.name:
        raise ConfigError("zoo describe needs a name", "zoo")
    _, entry, spec = zoo.build(args.name, _parse_params(args.params))
    data = {"name": entry.name, "description": entry.description, "params": entry.params,
            "window": entry.window, "expected": entry.expected, "notes": entry.notes,
            "shift": spec.shift, "endo": spec.endo}
    if args.format == "json":
        _emit(dumps(data), None)
    else:
        lines = [f"{entry.name}: {entry.description}",
                 f"  params: {', '.join(f'{k}={v}' for k, v in sorted(entry.params.items())) or '-'}",
                 f"  recommended window: {entry.window}",
                 "  expected: " + ", ".join(f"{k}={v}" for k, v in entry.expected.items())]
        if entry.notes:
            lines.append(f"  notes: {entry.notes}")
        _emit("\n".join(lines) + "\n", None)
    return EXIT_PASS


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_PASS
    try:
        reset_caps()
        get_caps()
        if args.command == "schema":
            _emit(dumps(REPORT_SCHEMA), None)
            return EXIT_PASS
        if args.command == "zoo":
            return _zoo_command(args)
        params = _parse_params(args.params)
        if args.command == "check":
            if args.zoo is None:
                raise ConfigError("check multiplier needs --zoo", "--zoo")
            _, entry, _ = zoo.build(args.zoo, params)
            expected = _load_expect(args.expect) if args.expect else entry.expected
            window = entry.window if args.window is None else args.window
            M = entry.multiplier(window)
            cfg = RunConfig(("classification",), args.zoo, dict(entry.params), window)
            report = RunReport(cfg.to_json(), _window_meta(M),
                               [classification_report(M, expected, entry.name)])
            return _report_output(report, args.format, args.output)
        cfg = RunConfig(tuple(args.suite), args.zoo, params, args.window, args.seed, args.samples,
                        args.format, args.output)
        report = run(cfg)
        return _report_output(report, cfg.format, cfg.output)
    except (ConfigError, BadParams, UnknownEntry) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LimitExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except WindowEscape as exc:
        print(f"window error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TranspensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
