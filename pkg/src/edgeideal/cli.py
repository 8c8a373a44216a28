"""Command-line entry point.

Every output starts with a provenance header: tool version, the resolved
configuration as JSON, the field characteristic and a SHA-256 digest of each
input.  Feeding the echoed configuration back through ``--config``
reproduces the output byte for byte.

Exit codes: 1 usage, 2 budget/capacity, 3 parse, 4 precondition, 5 I/O.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import asdict, dataclass, field as dc_field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .betti import DEFAULT_BUDGET, betti_table_quotient, persistent_betti_table, shift_to_ideal
from .complexes import MonomialIdeal, independence_complex, parse_input
from .covers import DEFAULT_COVER_CAP, cover_barcode
from .errors import EdgeIdealError, ParseError, PreconditionError
from .linalg import Field
from .pipelines import genome, molecule
from .splitting import (check_betti_splitting, check_persistent_splitting, check_vertex_splitting,
                        vertex_split_filtration)

log = logging.getLogger("edgeideal")

EXIT_USAGE, EXIT_BUDGET, EXIT_PARSE, EXIT_PRECONDITION, EXIT_IO = 1, 2, 3, 4, 5

SUBCOMMANDS = ("betti", "persistent-betti", "covers", "split-check",
               "genome-featurize", "genome-classify", "molecule-curves")

# execution details that never change results; kept out of the echoed config
NOT_ECHOED = ("threads", "out", "verbose")


@dataclass
class RunConfig:
    subcommand: str | None = None
    inputs: list[str] = dc_field(default_factory=list)
    out: str | None = None
    field: int = 2
    imax: int | None = None
    jmax: int | None = None
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    mode: str = "quotient"
    side: str = "ideal"
    multigraded: bool = False
    pivot: int | None = None
    k: int = 4
    radii: list[float] = dc_field(default_factory=lambda: list(genome.DEFAULT_RADII))
    labels: str | None = None
    vr_range: list[float] = dc_field(default_factory=lambda: list(molecule.DEFAULT_VR_RANGE))
    vr_steps: int = molecule.DEFAULT_VR_STEPS
    diagonals: list[int] = dc_field(default_factory=lambda: [2, 3])
    persistent: bool = False
    verbose: bool = False

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown or missing subcommand {self.subcommand!r}")
        if not self.inputs:
            raise UsageError("no input files given")
        try:
            Field(self.field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for name in ("budget", "threads", "k", "vr_steps"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
        for name in ("imax", "jmax"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"--{name} must be >= 0")
        if self.mode not in ("quotient", "ideal") or self.side not in ("quotient", "ideal"):
            raise UsageError("mode/side must be 'quotient' or 'ideal'")
        if len(self.vr_range) != 2:
            raise UsageError("--vr-range takes two values")
        if list(self.radii) != sorted(set(self.radii)) or any(r < 0 for r in self.radii) or not self.radii:
            raise UsageError("--radii must be strictly increasing and nonnegative")
        if self.subcommand == "genome-classify" and not self.labels:
            raise UsageError("genome-classify needs --labels")

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k not in NOT_ECHOED}


class UsageError(EdgeIdealError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--config", help="JSON config file (flags take precedence)")
    p.add_argument("--field", type=int, help="coefficient field: 2 (default), 0 for QQ, or a prime p")
    p.add_argument("--imax", type=int, help="largest homological degree")
    p.add_argument("--jmax", type=int, help="largest internal degree")
    p.add_argument("--budget", type=int, help=f"vertex-subset ceiling (default {DEFAULT_BUDGET})")
    p.add_argument("--threads", type=int, help="worker processes")
    p.add_argument("--out", help="output path prefix; stdout when omitted")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging (dumps boundary matrices)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="edgeideal", parents=[common], argument_default=argparse.SUPPRESS,
                     description="Persistent Betti numbers and minimal-prime barcodes of edge ideals.")
    parser.add_argument("--version", action="version", version=f"edgeideal {__version__}")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, argument_default=argparse.SUPPRESS)
        sp.add_argument("inputs", nargs="*", help="input file(s)")
        return sp

    sp = add("betti", "graded Betti table of S/I or I")
    sp.add_argument("--mode", choices=["quotient", "ideal"])
    sp.add_argument("--multigraded", action="store_true")

    sp = add("persistent-betti", "persistent Betti cells of an edge-ideal filtration")
    sp.add_argument("--side", choices=["ideal", "quotient"])
    sp.add_argument("--multigraded", action="store_true")

    add("covers", "minimal-cover barcode and persistent prime counts")

    sp = add("split-check", "verify a Betti splitting (vertex pivot or explicit I, J, K)")
    sp.add_argument("--pivot", type=int, help="1-based pivot vertex for the vertex splitting")

    sp = add("genome-featurize", "k-mer persistent Betti curve features from FASTA")
    sp.add_argument("--k", type=int)
    sp.add_argument("--radii", type=float, nargs="+")

    sp = add("genome-classify", "leave-one-out 1-NN evaluation of genome features")
    sp.add_argument("--k", type=int)
    sp.add_argument("--radii", type=float, nargs="+")
    sp.add_argument("--labels", help="CSV with id,label rows")

    sp = add("molecule-curves", "β_{i,i+d} curves of Vietoris-Rips edge ideals from XYZ files")
    sp.add_argument("--vr-range", dest="vr_range", type=float, nargs=2)
    sp.add_argument("--vr-steps", dest="vr_steps", type=int)
    sp.add_argument("--diagonals", type=int, nargs="+")
    sp.add_argument("--persistent", action="store_true", help="also emit adjacent-level persistent cells")
    return parser


def resolve_config(argv: list[str] | None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    cfg = RunConfig()
    names = {f.name for f in fields(RunConfig)}
    if "config" in args:
        try:
            doc = json.loads(Path(args.pop("config")).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from None
        unknown = set(doc) - names
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for k, v in doc.items():
            setattr(cfg, k, v)
    if not args.get("inputs"):
        args.pop("inputs", None)
    if args.get("subcommand") is None:
        args.pop("subcommand", None)
    for k, v in args.items():
        setattr(cfg, k, v)
    cfg.validate()
    return cfg


# --------------------------------------------------------------------------
# I/O helpers


def _read(path: str) -> bytes:
    if path.startswith("builtin:"):
        from importlib import resources

        res = resources.files("edgeideal") / "data" / f"{path[len('builtin:'):]}.xyz"
        try:
            return res.read_bytes()
        except FileNotFoundError:
            raise UsageError(f"unknown builtin {path!r}") from None
    return Path(path).read_bytes()


class Run:
    """Resolved config plus loaded inputs and the output sink."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.data = {p: _read(p) for p in cfg.inputs}
        if cfg.labels and cfg.subcommand == "genome-classify":
            self.data.setdefault(cfg.labels, Path(cfg.labels).read_bytes())
        self.field = Field(cfg.field)

    def header_lines(self) -> list[str]:
        lines = [f"tool: edgeideal {__version__}",
                 "config: " + json.dumps(self.cfg.echo(), sort_keys=True),
                 f"field: {self.cfg.field}"]
        for p, raw in self.data.items():
            lines.append(f"input {p}: sha256={hashlib.sha256(raw).hexdigest()}")
        return lines

    def header_dict(self) -> dict:
        return {"tool": f"edgeideal {__version__}", "config": self.cfg.echo(), "field": self.cfg.field,
                "inputs": {p: hashlib.sha256(raw).hexdigest() for p, raw in self.data.items()}}

    def text(self, body: str) -> str:
        return "".join(f"# {h}\n" for h in self.header_lines()) + body

    def json(self, doc: dict) -> str:
        return json.dumps({"header": self.header_dict(), **doc}, indent=2, sort_keys=False) + "\n"

    def emit(self, outputs: dict[str, str | bytes], primary: str) -> None:
        """Write ``suffix -> content``; without ``--out`` print the primary output."""
        if self.cfg.out is None:
            sys.stdout.write(outputs[primary])
            return
        for suffix, content in outputs.items():
            path = Path(self.cfg.out + suffix)
            if isinstance(content, bytes):
                path.write_bytes(content)
            else:
                path.write_text(content)


def _decode(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError("input is not UTF-8 text") from None


# --------------------------------------------------------------------------
# Subcommands


def cmd_betti(run: Run) -> None:
    cfg = run.cfg
    parsed = parse_input(_decode(run.data[cfg.inputs[0]]))
    delta = parsed.complex if parsed.complex is not None else independence_complex(parsed.hypergraph)
    imax = cfg.imax
    if cfg.mode == "ideal" and imax is not None:
        imax += 1
    table = betti_table_quotient(delta, run.field, imax, cfg.jmax, multigraded=cfg.multigraded,
                                 budget=cfg.budget, threads=cfg.threads)
    if cfg.mode == "ideal":
        table = shift_to_ideal(table)
    run.emit({".csv": run.text(table.to_csv()), ".json": run.json(table.to_json())}, ".csv")


def cmd_persistent_betti(run: Run) -> None:
    cfg = run.cfg
    parsed = parse_input(_decode(run.data[cfg.inputs[0]]))
    if parsed.filtration is None:
        raise PreconditionError("persistent-betti needs a graph or hypergraph filtration")
    table = persistent_betti_table(parsed.filtration, run.field, cfg.imax, cfg.jmax, side=cfg.side,
                                   multigraded=cfg.multigraded, budget=cfg.budget, threads=cfg.threads)
    run.emit({".csv": run.text(table.to_csv()), ".json": run.json(table.to_json())}, ".csv")


def cmd_covers(run: Run) -> None:
    cfg = run.cfg
    parsed = parse_input(_decode(run.data[cfg.inputs[0]]))
    if parsed.filtration is None:
        raise PreconditionError("covers needs a graph or hypergraph filtration")
    cap = cfg.budget if cfg.budget != DEFAULT_BUDGET else DEFAULT_COVER_CAP
    bc = cover_barcode(parsed.filtration, cap)
    run.emit({".csv": run.text(bc.to_csv()), ".json": run.json(bc.to_json()),
              ".pi.csv": run.text(bc.pi_csv())}, ".csv")


def _ideal(doc, n, key) -> MonomialIdeal:
    try:
        return MonomialIdeal(n, tuple(tuple(g) for g in doc[key]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ideal {key!r}: {exc}") from None


def cmd_split_check(run: Run) -> None:
    cfg = run.cfg
    text = _decode(run.data[cfg.inputs[0]])
    doc = None
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if doc is not None and "J" in doc:
        n = doc["n"]
        I, J, K = (_ideal(doc, n, key) for key in ("I", "J", "K"))
        report = check_betti_splitting(I, J, K, run.field, cfg.imax, cfg.jmax, budget=cfg.budget)
    else:
        parsed = parse_input(text)
        if parsed.filtration is None:
            raise PreconditionError("split-check needs a graph, a graph filtration or explicit I, J, K")
        if cfg.pivot is None:
            raise UsageError("split-check on a graph needs --pivot")
        filt = parsed.filtration
        if len(filt) == 1:
            report = check_vertex_splitting(filt.levels[0], cfg.pivot, run.field, cfg.imax, cfg.jmax,
                                            budget=cfg.budget)
        else:
            Is, Js, Ks = vertex_split_filtration(filt, cfg.pivot)
            report = check_persistent_splitting(Is, Js, Ks, run.field, i_max=cfg.imax, j_max=cfg.jmax,
                                                budget=cfg.budget)
    run.emit({".txt": run.text(report.to_text()), ".json": run.json(report.to_json())}, ".txt")


def _genome_records(run: Run):
    records = []
    for p in run.cfg.inputs:
        records.extend(genome.parse_fasta(run.data[p]))
    ids = [r[0] for r in records]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate FASTA record ids")
    return records


def _feature_outputs(run: Run, records, mat: np.ndarray) -> dict[str, str | bytes]:
    cfg = run.cfg
    kmers = genome.all_kmers(cfg.k)
    cols = [f"{x}@{r:g}" for x in kmers for r in cfg.radii]
    lines = ["id," + ",".join(cols)]
    for (rid, _), row in zip(records, mat):
        lines.append(rid + "," + ",".join(str(int(v)) for v in row))
    sidecar = {"header": run.header_dict(), "k": cfg.k, "radii": list(cfg.radii),
               "rows": [r[0] for r in records], "shape": list(mat.shape), "dtype": "<i8",
               "layout": "row-major; per row, k-mers in lexicographic order, radii in grid order"}
    return {".features.csv": run.text("\n".join(lines) + "\n"),
            ".features.bin": mat.astype("<i8").tobytes(order="C"),
            ".features.bin.json": json.dumps(sidecar, indent=2) + "\n"}


def cmd_genome_featurize(run: Run) -> None:
    cfg = run.cfg
    records = _genome_records(run)
    mat = genome.featurize(records, cfg.k, cfg.radii, cfg.threads)
    run.emit(_feature_outputs(run, records, mat), ".features.csv")


def cmd_genome_classify(run: Run) -> None:
    cfg = run.cfg
    records = _genome_records(run)
    labels_by_id = genome.read_labels_csv(_decode(run.data[cfg.labels]))
    missing = [rid for rid, _ in records if rid not in labels_by_id]
    if missing:
        raise PreconditionError(f"no label for records {missing[:5]}")
    labels = [labels_by_id[rid] for rid, _ in records]
    mat = genome.featurize(records, cfg.k, cfg.radii, cfg.threads)
    dist = genome.pairwise_distances(mat)
    scores = genome.nn_evaluate(labels, dist)
    nn = genome.nearest_neighbors(dist)
    ids = [r[0] for r in records]
    dlines = ["id," + ",".join(ids)]
    for rid, row in zip(ids, dist):
        dlines.append(rid + "," + ",".join(repr(float(v)) for v in row))
    plines = ["id,label,nearest,predicted"]
    for a, b in enumerate(nn):
        plines.append(f"{ids[a]},{labels[a]},{ids[b]},{labels[b]}")
    outputs = _feature_outputs(run, records, mat)
    outputs[".distances.csv"] = run.text("\n".join(dlines) + "\n")
    outputs[".predictions.csv"] = run.text("\n".join(plines) + "\n")
    outputs[".metrics.json"] = run.json({"metrics": scores.as_dict(), "items": len(records)})
    run.emit(outputs, ".metrics.json")


def cmd_molecule_curves(run: Run) -> None:
    cfg = run.cfg
    body = ["entity,i,j,r,value"]
    pbody = ["entity,i,j,r_a,r_b,value"]
    for p in cfg.inputs:
        cloud = molecule.parse_xyz(run.data[p])
        entity = Path(p.split(":", 1)[-1]).stem
        filt = molecule.vr_graph_filtration(cloud, cfg.vr_range[0], cfg.vr_range[1], cfg.vr_steps)
        curves = molecule.molecule_betti_curves(filt, cfg.diagonals, run.field, cfg.budget)
        body.append(molecule.curves_csv(entity, filt.grid, curves, header=False).rstrip("\n"))
        if cfg.persistent:
            cells = molecule.adjacent_persistent_cells(filt, cfg.diagonals, run.field, cfg.budget)
            for (i, d), vals in sorted(cells.items()):
                for t, v in enumerate(vals):
                    pbody.append(f"{entity},{i},{i + d},{filt.grid[t]!r},{filt.grid[t + 1]!r},{v}")
    outputs = {".csv": run.text("\n".join(body) + "\n")}
    if cfg.persistent:
        outputs[".persistent.csv"] = run.text("\n".join(pbody) + "\n")
    run.emit(outputs, ".csv")


COMMANDS = {
    "betti": cmd_betti,
    "persistent-betti": cmd_persistent_betti,
    "covers": cmd_covers,
    "split-check": cmd_split_check,
    "genome-featurize": cmd_genome_featurize,
    "genome-classify": cmd_genome_classify,
    "molecule-curves": cmd_molecule_curves,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = resolve_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"edgeideal: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        run = Run(cfg)
        COMMANDS[cfg.subcommand](run)
    except EdgeIdealError as exc:
        print(f"edgeideal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"edgeideal: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
