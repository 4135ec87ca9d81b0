"""Command-line interface: ``gbfp <subcommand> [options]``.

Options may also come from a JSON file given with ``--config``; flags given
on the command line override it. Exit codes:

    0  success
    2  usage or configuration error (bad cutoff, unknown format, ...)
    3  input file missing or unreadable
    4  input parse error
    5  citation cycle

Failures print one JSON object on stderr:
``{"error": <kind>, "exit_code": <n>, "message": <text>}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

from gbfp.analysis import ComparisonReport, SynthParams, compare_networks, generate_synthetic
from gbfp.baseline import baseline_forward_paths, spc_weights, write_link_weights
from gbfp.errors import CycleError, ParameterError, ParseError
from gbfp.export import dumps_json, export_graph, serial_numbers
from gbfp.graph import CitationNetwork, load_citation_pairs, load_metadata, validate, write_citation_pairs
from gbfp.kernels import default_workers
from gbfp.layering import LayerAssignment, assign_layers, write_layers
from gbfp.mainpath import Cutoffs, HppSet, MainPathNetwork, build_main_paths, select_hpps
from gbfp.persistence import PersistenceScores, compute_all_persistence, write_scores

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_CYCLE = 0, 2, 3, 4, 5

SUBCOMMANDS = ("validate", "layers", "persistence", "hpps", "gbfp", "baseline", "compare", "generate")
ALLOWED_FORMATS = {
    "validate": ("json",),
    "layers": ("csv",),
    "persistence": ("csv",),
    "hpps": ("csv",),
    "gbfp": ("json", "dot", "graphml", "csv"),
    "baseline": ("json", "dot", "graphml", "csv"),
    "compare": ("json", "csv"),
    "generate": ("csv",),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    citations_path: str | None = None
    metadata_path: str | None = None
    gp_cutoff: float = 0.3
    lp_cutoff: float = 0.8
    strict_cutoffs: bool = False
    baseline_scheme: str = "GP"
    output_format: str | None = None
    output_path: str | None = None
    weights_path: str | None = None
    worker_count: int = field(default_factory=default_workers)
    serials: bool = False
    synth: dict = field(default_factory=dict)

    def check(self, command: str) -> None:
        for name in ("gp_cutoff", "lp_cutoff"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise UsageError(f"{name} must be in [0, 1], got {value!r}")
        if self.baseline_scheme not in ("GP", "SPC"):
            raise UsageError(f"unknown baseline scheme {self.baseline_scheme!r}")
        allowed = ALLOWED_FORMATS[command]
        if self.output_format is None:
            self.output_format = allowed[0]
        if self.output_format not in allowed:
            raise UsageError(f"format {self.output_format!r} not supported by {command}; choose from {allowed}")
        if not isinstance(self.worker_count, int) or self.worker_count < 1:
            raise UsageError("worker_count must be a positive integer")
        if command != "generate" and not self.citations_path:
            raise UsageError(f"{command} needs --citations")

    @property
    def cutoffs(self) -> Cutoffs:
        return Cutoffs(self.gp_cutoff, self.lp_cutoff, inclusive=not self.strict_cutoffs)

    def meta(self, scheme: str) -> dict:
        return {"gp_cutoff": self.gp_cutoff, "lp_cutoff": self.lp_cutoff, "scheme": scheme}


@dataclass
class Pipeline:
    """Lazily computed stages for one configuration; every subcommand reads from here."""

    config: RunConfig
    _cache: dict = field(default_factory=dict)

    def _get(self, name, fn):
        if name not in self._cache:
            self._cache[name] = fn()
        return self._cache[name]

    @property
    def network(self) -> CitationNetwork:
        def load():
            net = load_citation_pairs(Path(self.config.citations_path))
            if self.config.metadata_path:
                net = load_metadata(net, Path(self.config.metadata_path))
            return net
        return self._get("network", load)

    @property
    def layers(self) -> LayerAssignment:
        return self._get("layers", lambda: assign_layers(self.network))

    @property
    def scores(self) -> PersistenceScores:
        return self._get("scores", lambda: compute_all_persistence(
            self.network, self.layers, workers=self.config.worker_count))

    @property
    def hpps(self) -> HppSet:
        return self._get("hpps", lambda: select_hpps(self.scores, self.config.cutoffs))

    @property
    def gbfp(self) -> MainPathNetwork:
        return self._get("gbfp", lambda: build_main_paths(self.network, self.scores, self.hpps))

    @property
    def spc(self):
        return self._get("spc", lambda: spc_weights(self.network))

    @property
    def baseline(self) -> MainPathNetwork:
        def run():
            scheme = self.config.baseline_scheme
            weights = self.spc if scheme == "SPC" else None
            return baseline_forward_paths(self.network, self.scores, weights, scheme, self.hpps)
        return self._get("baseline", run)

    @property
    def comparison(self) -> ComparisonReport:
        return self._get("comparison", lambda: compare_networks(self.gbfp, self.baseline, self.hpps))


def _hpp_csv(p: Pipeline) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("patent_id", "patent_number", "layer", "application_date", "kp", "gp", "lp",
                     "forward_citations", "title", "gp_cutoff", "lp_cutoff"))
    net, s, cfg = p.network, p.scores, p.config
    for ident in p.hpps:
        rec = net.records[ident]
        writer.writerow((
            ident, rec.patent_number or "", s.layer[ident],
            rec.application_date.isoformat() if rec.application_date else "",
            repr(s.kp[ident]), f"{s.gp[ident]:.5f}", f"{s.lp[ident]:.5f}",
            net.forward_degree(ident), rec.title or "", cfg.gp_cutoff, cfg.lp_cutoff,
        ))
    return buf.getvalue()


def _graph_output(p: Pipeline, net: MainPathNetwork, scheme: str) -> str:
    cfg = p.config
    buf = io.StringIO()
    if cfg.output_format == "csv":
        write_citation_pairs(net.edges.keys(), buf)
    else:
        serials = serial_numbers(p.network) if cfg.serials else None
        export_graph(net, cfg.output_format, buf, meta=cfg.meta(scheme), serials=serials)
    return buf.getvalue()


def render(command: str, config: RunConfig) -> str:
    """Text a subcommand emits for ``config`` (already checked)."""
    p = Pipeline(config)
    buf = io.StringIO()
    if command == "validate":
        return dumps_json(validate(p.network).to_dict())
    if command == "layers":
        write_layers(p.layers, buf)
        return buf.getvalue()
    if command == "persistence":
        write_scores(p.scores, buf)
        return buf.getvalue()
    if command == "hpps":
        return _hpp_csv(p)
    if command == "gbfp":
        return _graph_output(p, p.gbfp, "GBFP")
    if command == "baseline":
        text = _graph_output(p, p.baseline, config.baseline_scheme)
        if config.weights_path:
            wbuf = io.StringIO()
            write_link_weights(p.spc, wbuf)
            _write(config.weights_path, wbuf.getvalue())
        return text
    if command == "compare":
        report = p.comparison
        if config.output_format == "csv":
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(ComparisonReport.CSV_FIELDS)
            writer.writerow(report.csv_row())
            return buf.getvalue()
        return dumps_json({"meta": config.meta(config.baseline_scheme), "comparison": report.to_dict()})
    if command == "generate":
        try:
            params = SynthParams(**config.synth)
        except TypeError as exc:
            raise UsageError(str(exc)) from None
        write_citation_pairs(generate_synthetic(params).edges(), buf)
        return buf.getvalue()
    raise UsageError(f"unknown subcommand {command!r}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("usage", EXIT_USAGE, message)


def _fail(kind: str, code: int, message: str):
    sys.stderr.write(json.dumps({"error": kind, "exit_code": code, "message": message}) + "\n")
    raise SystemExit(code)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gbfp", description="Main-path mining on patent citation networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON file with RunConfig fields")
        sp.add_argument("-o", "--output", dest="output_path")
        sp.add_argument("--format", dest="output_format")
        if name == "generate":
            sp.add_argument("--layers", dest="layer_count", type=int)
            sp.add_argument("--per-layer", dest="nodes_per_layer", type=int)
            sp.add_argument("--mean-citations", dest="mean_backward_citations", type=float)
            sp.add_argument("--bias", dest="attachment_bias", type=float)
            sp.add_argument("--seed", dest="rng_seed", type=int)
            continue
        sp.add_argument("-c", "--citations", dest="citations_path")
        sp.add_argument("-m", "--metadata", dest="metadata_path")
        sp.add_argument("--workers", dest="worker_count", type=int)
        sp.add_argument("--gp-cutoff", type=float)
        sp.add_argument("--lp-cutoff", type=float)
        sp.add_argument("--strict-cutoffs", action="store_true", default=None,
                        help="require GP/LP strictly above the cutoffs")
        sp.add_argument("--scheme", dest="baseline_scheme", choices=("GP", "SPC"))
        sp.add_argument("--serials", action="store_true", default=None,
                        help="add serial numbers ordered by patent number to graph exports")
        if name == "baseline":
            sp.add_argument("--weights-output", dest="weights_path",
                            help="also write SPC link weights as CSV")
    return parser


_SYNTH_KEYS = ("layer_count", "nodes_per_layer", "mean_backward_citations", "attachment_bias", "rng_seed")


def make_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values = json.load(fh)
        except OSError as exc:
            raise FileNotFoundError(str(exc)) from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = set(values) - known
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
    synth = dict(values.get("synth", {}))
    for key in _SYNTH_KEYS:
        if getattr(args, key, None) is not None:
            synth[key] = getattr(args, key)
    values["synth"] = synth
    for f in fields(RunConfig):
        if f.name != "synth" and getattr(args, f.name, None) is not None:
            values[f.name] = getattr(args, f.name)
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        # a shared config file may name a format this subcommand cannot emit; only a flag is binding
        if args.output_format is None and config.output_format not in ALLOWED_FORMATS[args.command]:
            config.output_format = None
        config.check(args.command)
        text = render(args.command, config)
        _write(config.output_path, text)
    except (UsageError, ParameterError) as exc:
        _fail("usage", EXIT_USAGE, str(exc))
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        _fail("io", EXIT_IO, str(exc))
    except (ParseError, UnicodeDecodeError) as exc:
        _fail("parse", EXIT_PARSE, str(exc))
    except CycleError as exc:
        _fail("cycle", EXIT_CYCLE, str(exc))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
