"""Command-line frontend for the census.

Subcommands: enumerate, orbits, fields, equations, verify, atlas and
report.  All inputs come from flags, never the environment, so a run is
reproducible from its command line alone.  File writes are atomic (a
temporary file is renamed into place) and repeated runs are byte
identical regardless of worker count.

Exit codes: 0 success, 1 invalid parameters, 2 verification failure,
3 input/output failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .checks import run_all_suites
from .classify import (
    CSV_COLUMNS,
    Atlas,
    atlas_csv_rows,
    build_atlas,
    enumerate_classes,
    lift_epi,
)
from .equations import full_model, model_to_dict, render, render_weil, weil_quotient
from .errors import CensusError, OracleFailure, ParameterError
from .group import group_params
from .hypermap import build as build_dessin

TABLE_FORMATS = ("plain", "json", "csv")


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    e: int | None = None
    f: int | None = None
    format: str = "plain"
    output: str | None = None
    oracle_bound: int | None = None
    workers: int | None = None
    dump_rotation: str | None = None
    with_equations: bool = False
    outdir: str = "report"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knncensus",
        description=(
            "Census of the regular complete-bipartite dessins of odd prime "
            "power order n = p**e and of the curves carrying them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(sp, required: bool) -> None:
        sp.add_argument("--p", type=int, required=required, help="odd prime p")
        sp.add_argument("--e", type=int, required=required, help="exponent e, n = p**e")
        sp.add_argument("--f", type=int, required=required, help="twist level f in [1, e]")

    for name, docline in (
        ("enumerate", "list the isomorphism classes"),
        ("orbits", "group the classes into Galois orbits"),
        ("fields", "classes with their minimal fields of definition"),
        ("equations", "explicit models per class where available"),
        ("atlas", "write the full census"),
    ):
        sp = sub.add_parser(name, help=docline)
        add_params(sp, required=True)
        default_fmt = "json" if name == "atlas" else "plain"
        sp.add_argument("--format", default=default_fmt, help="output format")
        sp.add_argument("--output", default=None, help="write to this path instead of stdout")
        if name == "atlas":
            sp.add_argument("--with-equations", action="store_true", dest="with_equations")
            sp.add_argument("--workers", type=int, default=None)
            sp.add_argument(
                "--dump-rotation",
                dest="dump_rotation",
                default=None,
                help="also write the rotation systems of all class dessins here",
            )

    sp = sub.add_parser("verify", help="run the oracle suites")
    add_params(sp, required=False)
    sp.add_argument("--format", default="plain", choices=("plain", "json"))
    sp.add_argument("--oracle-bound", dest="oracle_bound", type=int, default=None)

    sp = sub.add_parser("report", help="write census table and summary figures")
    add_params(sp, required=True)
    sp.add_argument("--outdir", default="report", help="output directory")
    sp.add_argument("--workers", type=int, default=None)

    return parser


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".knncensus-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        _write_atomic(output, text)


def _csv_text(atlas: Atlas) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(atlas_csv_rows(atlas))
    return buffer.getvalue()


def _triple_text(triple) -> str:
    return ",".join(str(t) for t in triple)


def _enumerate_text(atlas: Atlas) -> str:
    return "".join(_triple_text(e.triple) + "\n" for e in atlas.entries)


def _orbits_text(atlas: Atlas) -> str:
    lines = []
    for rep, members in sorted(atlas.orbits().items()):
        joined = " | ".join(_triple_text(m.triple) for m in members)
        lines.append(f"orbit {_triple_text(rep)}: {joined}")
    return "\n".join(lines) + "\n"


def _fields_text(atlas: Atlas) -> str:
    lines = []
    for e in atlas.entries:
        lines.append(
            f"{_triple_text(e.triple)}: {e.field.kind} degree {e.field.degree} "
            f"({e.field.description})"
        )
    return "\n".join(lines) + "\n"


def _table_json(atlas: Atlas, command: str) -> str:
    data = atlas.to_dict()
    if command == "enumerate":
        payload = {"params": data["params"], "classes": [c["triple"] for c in data["classes"]]}
    elif command == "orbits":
        orbits = {}
        for c in data["classes"]:
            orbits.setdefault(_triple_text(c["orbit"]), []).append(c["triple"])
        payload = {"params": data["params"], "orbits": orbits}
    else:
        payload = {
            "params": data["params"],
            "classes": [
                {"triple": c["triple"], "field": c["field"]} for c in data["classes"]
            ],
        }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _equations_text(gp, fmt: str) -> str:
    chunks = []
    payload = []
    for c in enumerate_classes(gp):
        weil = weil_quotient(gp, c)
        head = f"class {_triple_text(c.triple)}"
        if 2 * gp.f >= gp.pp.e:
            model = full_model(gp, c)
            if fmt == "json":
                payload.append({"triple": list(c.triple), "model": model_to_dict(model)})
            else:
                chunks.append(f"{head}:\n{render(model, fmt)}")
        else:
            note = f"no full model: the hypothesis 2f >= e fails (2*{gp.f} < {gp.pp.e})"
            if fmt == "json":
                payload.append(
                    {
                        "triple": list(c.triple),
                        "note": note,
                        "weil": json.loads(render_weil(weil, "json")),
                    }
                )
            else:
                chunks.append(f"{head}: {note}\n{render_weil(weil, fmt)}")
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return "\n".join(chunks)


def _rotation_dump_text(gp, atlas: Atlas) -> str:
    chunks = []
    for entry in atlas.entries:
        c = next(c for c in enumerate_classes(gp) if c.triple == entry.triple)
        epi = lift_epi(gp, c)
        dessin = build_dessin(gp, epi)
        chunks.append(
            f"# class {_triple_text(entry.triple)} lift u={epi.u} v={epi.v} w={epi.w}\n"
            + dessin.rotation_system_text()
        )
    return "".join(chunks)


def run(config: RunConfig) -> int:
    try:
        return _dispatch(config)
    except ParameterError as exc:
        sys.stderr.write(f"invalid parameters: {exc}\n")
        return 1
    except OracleFailure as exc:
        sys.stderr.write(f"internal cross-check failed ({exc.code}): {exc}\n")
        return 2
    except CensusError as exc:
        sys.stderr.write(f"error ({exc.code}): {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return 3


def _require_params(config: RunConfig):
    if config.p is None or config.e is None or config.f is None:
        raise ParameterError("this command needs --p, --e and --f")
    return group_params(config.p, config.e, config.f)


def _dispatch(config: RunConfig) -> int:
    command = config.command

    if command == "verify":
        scoped = None
        if config.p is not None or config.e is not None or config.f is not None:
            gp = _require_params(config)
            scoped = (gp.pp.p, gp.pp.e, gp.f)
        bound = config.oracle_bound if config.oracle_bound is not None else 27
        results = run_all_suites(scoped=scoped, bound=bound)
        if config.format == "json":
            payload = [
                {"suite": r.name, "passed": r.passed, "detail": r.lines} for r in results
            ]
            sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        else:
            for r in results:
                sys.stdout.write(f"{r.name}: {'pass' if r.passed else 'FAIL'}\n")
                for line in r.lines:
                    sys.stdout.write(f"  {line}\n")
        failed = [r.name for r in results if not r.passed]
        if failed:
            sys.stderr.write(f"verification failed: {', '.join(failed)}\n")
            return 2
        return 0

    gp = _require_params(config)

    if command == "report":
        from .report import write_report

        atlas = build_atlas(gp, workers=config.workers)
        paths = write_report(atlas, config.outdir)
        for path in paths:
            sys.stdout.write(f"{path}\n")
        return 0

    if command == "atlas":
        atlas = build_atlas(gp, with_equations=config.with_equations, workers=config.workers)
        if config.format == "json":
            _emit(atlas.to_json(), config.output)
        elif config.format == "csv":
            _emit(_csv_text(atlas), config.output)
        else:
            raise ParameterError(f"atlas supports json or csv, not {config.format!r}")
        if config.dump_rotation is not None:
            _write_atomic(config.dump_rotation, _rotation_dump_text(gp, atlas))
        return 0

    if command == "equations":
        if config.format not in ("plain", "json", "latex"):
            raise ParameterError(f"equations supports plain, json or latex, not {config.format!r}")
        _emit(_equations_text(gp, config.format), config.output)
        return 0

    if command in ("enumerate", "orbits", "fields"):
        if config.format not in TABLE_FORMATS:
            raise ParameterError(
                f"{command} supports plain, json or csv, not {config.format!r}"
            )
        atlas = build_atlas(gp, workers=config.workers)
        if config.format == "csv":
            text = _csv_text(atlas)
        elif config.format == "json":
            text = _table_json(atlas, command)
        elif command == "enumerate":
            text = _enumerate_text(atlas)
        elif command == "orbits":
            text = _orbits_text(atlas)
        else:
            text = _fields_text(atlas)
        _emit(text, config.output)
        return 0

    raise ParameterError(f"unknown command {command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    namespace = parser.parse_args(argv)
    config = RunConfig(
        command=namespace.command,
        p=getattr(namespace, "p", None),
        e=getattr(namespace, "e", None),
        f=getattr(namespace, "f", None),
        format=getattr(namespace, "format", "plain"),
        output=getattr(namespace, "output", None),
        oracle_bound=getattr(namespace, "oracle_bound", None),
        workers=getattr(namespace, "workers", None),
        dump_rotation=getattr(namespace, "dump_rotation", None),
        with_equations=getattr(namespace, "with_equations", False),
        outdir=getattr(namespace, "outdir", "report"),
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
