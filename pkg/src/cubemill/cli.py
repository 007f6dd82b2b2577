"""Command line front end.

Every subcommand prints one canonical JSON report to stdout; ``--out`` writes
the subcommand's artifact (a complex, folding, or certificate file) next to
it. Reports are byte-deterministic: payloads are dumped with sorted keys and
all listings use canonical order. Exit codes: 0 clean, 1 property failure or
honest refusal, 2 usage or parse error.
"""

import random
import sys
from pathlib import Path

import click

from . import formats
from .complexes import barsub, link, verify_cw
from .curvature import check_npc, check_special, hyperplane_coordinate, hyperplanes
from .curvature import is_flag
from .decomposition import build_all_trees
from .dual import build_dual, verify_dual_axioms
from .errors import (
    CellNotFound,
    CubemillError,
    FormatError,
    NotAdmissible,
    NotFoldable,
    UnlabeledVertex,
)
from .fixtures import FIXTURE_NAMES, fixture
from .folding import assert_folding, find_folding, mirror_separates, mirrors
from .gromov import gromov_hyperbolize, verify_gromov_properties
from .surgery import (
    check_edge_path,
    contract_loop,
    crossings,
    random_loop,
    verify_certificate,
)

USAGE_ERRORS = (FormatError, CellNotFound, UnlabeledVertex)


def _emit(payload, code=0, out=None, artifact=None):
    if out is not None and artifact is not None:
        Path(out).write_text(artifact)
    click.echo(formats.dumps_json(payload), nl=False)
    sys.exit(code)


def _run(fn):
    try:
        fn()
    except click.UsageError:
        raise
    except USAGE_ERRORS as e:
        _emit({"error": type(e).__name__, "detail": str(e)}, code=2)
    except CubemillError as e:
        _emit({"error": type(e).__name__, "detail": str(e)}, code=1)


def _fixture(name):
    try:
        return fixture(name)
    except KeyError as e:
        raise click.UsageError(str(e)) from None


def _load_complex(fixture_name, in_path):
    """Resolve the input complex and the folding labels that came with it."""
    if (fixture_name is None) == (in_path is None):
        raise click.UsageError("provide exactly one of --fixture or --in")
    if fixture_name is not None:
        f = _fixture(fixture_name)
        return f.complex, f.labels
    return formats.parse_complex(Path(in_path).read_text()), None


def _resolve_labels(X, own_labels, folding_path):
    """A verified folding for ``X``: an explicit file wins, then the labels
    shipped with the input, then a fresh search."""
    if folding_path is not None:
        labels = formats.parse_folding(Path(folding_path).read_text())
        assert_folding(X, labels)
        return labels, "file"
    if own_labels is not None:
        return own_labels, "fixture"
    return find_folding(X), "computed"


def _parse_loop(text):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise click.UsageError(f"--loop wants comma-separated integers, got {text!r}")


def _labels_payload(labels):
    return [
        [v, list(lab) if isinstance(lab, (tuple, list)) else lab]
        for v, lab in sorted(labels.items())
    ]


_fixture_opt = click.option("--fixture", "fixture_name", type=str, default=None)
_in_opt = click.option(
    "--in", "in_path", type=click.Path(exists=True, dir_okay=False), default=None
)
_folding_opt = click.option(
    "--folding", "folding_path", type=click.Path(exists=True, dir_okay=False), default=None
)
_out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None)


@click.group()
def main():
    """Foldable cubical complexes, hyperbolization, duals, and loop surgery."""


@main.command()
@_fixture_opt
@_in_opt
def validate(fixture_name, in_path):
    """Check admissibility of a complex and report the findings."""

    def go():
        try:
            X, _labels = _load_complex(fixture_name, in_path)
        except NotAdmissible as e:
            report = e.args[0]
            findings = [
                {"kind": f.kind, "cells": list(f.cells), "detail": f.detail}
                for f in getattr(report, "findings", ())
            ] or [{"kind": "NotAdmissible", "cells": [], "detail": str(report)}]
            _emit({"ok": False, "findings": findings}, code=1)
            return
        report = verify_cw(X)
        findings = [
            {"kind": f.kind, "cells": list(f.cells), "detail": f.detail}
            for f in report.findings
        ]
        payload = {
            "ok": report.ok,
            "kind": X.kind,
            "counts": {str(d): n for d, n in X.counts().items()},
            "findings": findings,
        }
        _emit(payload, code=0 if report.ok else 1)

    _run(go)


@main.command("barsub")
@_fixture_opt
@_in_opt
@_out_opt
def barsub_cmd(fixture_name, in_path, out):
    """Barycentric subdivision; the artifact is a simplicial complex file."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        B = barsub(X)
        artifact = formats.serialize_complex(B)
        payload = {
            "counts": {str(d): n for d, n in B.counts().items()},
            "dim": B.dim,
        }
        _emit(payload, out=out, artifact=artifact)

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
@_folding_opt
@_out_opt
def fold(fixture_name, in_path, folding_path, out):
    """Find a folding, or verify one supplied with --folding."""

    def go():
        X, own = _load_complex(fixture_name, in_path)
        labels, source = _resolve_labels(X, own, folding_path)
        artifact = formats.serialize_folding(labels)
        payload = {
            "ok": True,
            "source": source,
            "labels": _labels_payload(labels),
        }
        _emit(payload, out=out, artifact=artifact)

    _run(go)


@main.command()
@_in_opt
@_folding_opt
@click.option("--verify", "do_verify", is_flag=True, default=False)
@_out_opt
def gromov(in_path, folding_path, do_verify, out):
    """Hyperbolize a simplicial complex; the artifact is the result complex."""

    def go():
        if in_path is None:
            raise click.UsageError("gromov wants --in with a simplicial complex file")
        K = formats.parse_complex(Path(in_path).read_text())
        labels = None
        if folding_path is not None:
            labels = formats.parse_folding(Path(folding_path).read_text())
        r = gromov_hyperbolize(K, labels)
        payload = {
            "counts": {str(d): n for d, n in r.complex.counts().items()},
            "folding": _labels_payload(r.folding),
            "tiles": len(r.tiles),
        }
        code = 0
        if do_verify:
            report = verify_gromov_properties(r)
            payload["checks"] = [
                {"name": n, "status": s, "detail": d} for n, s, d in report.checks
            ]
            code = 0 if report.ok else 1
        _emit(payload, code=code, out=out, artifact=formats.serialize_complex(r.complex))

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
def links(fixture_name, in_path):
    """Per-vertex link report: simplicial and flag verdicts."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        rows = []
        clean = True
        for v in X.vertices:
            lk = link(X, v)
            flag_ok, witness = is_flag(lk.complex)
            clean = clean and lk.simplicial and flag_ok
            rows.append(
                {
                    "vertex": v,
                    "simplicial": lk.simplicial,
                    "flag": flag_ok,
                    "witness": sorted(witness) if witness else [],
                    "counts": {str(d): n for d, n in lk.complex.counts().items()},
                }
            )
        _emit({"ok": clean, "links": rows}, code=0 if clean else 1)

    _run(go)


@main.command("check-npc")
@_fixture_opt
@_in_opt
def check_npc_cmd(fixture_name, in_path):
    """Link condition for nonpositive curvature."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        report = check_npc(X)
        _emit(report.to_payload(), code=0 if report.ok else 1)

    _run(go)


@main.command("hyperplanes")
@_fixture_opt
@_in_opt
@_folding_opt
def hyperplanes_cmd(fixture_name, in_path, folding_path):
    """Edge classes under square opposition, with folding coordinates."""

    def go():
        X, own = _load_complex(fixture_name, in_path)
        labels, _source = _resolve_labels(X, own, folding_path)
        rows = []
        ok = True
        for hp in hyperplanes(X):
            row = hp.to_payload()
            try:
                row["coordinate"] = hyperplane_coordinate(X, labels, hp)
            except ValueError as e:
                row["coordinate"] = None
                row["error"] = str(e)
                ok = False
            rows.append(row)
        _emit({"ok": ok, "hyperplanes": rows}, code=0 if ok else 1)

    _run(go)


@main.command("special-check")
@_fixture_opt
@_in_opt
def special_check(fixture_name, in_path):
    """Hyperplane pathology scan: self-intersection and osculation."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        report = check_special(X)
        _emit(report.to_payload(), code=0 if report.ok else 1)

    _run(go)


@main.command("mirrors")
@_fixture_opt
@_in_opt
@_folding_opt
def mirrors_cmd(fixture_name, in_path, folding_path):
    """Mirror listing with separation verdicts."""

    def go():
        X, own = _load_complex(fixture_name, in_path)
        labels, _source = _resolve_labels(X, own, folding_path)
        rows = []
        for M in mirrors(X, labels):
            sep = mirror_separates(X, M)
            row = M.to_payload()
            row["separates"] = sep.separates
            row["components"] = sep.n_components
            row["framings"] = sep.framing_count
            rows.append(row)
        _emit({"mirrors": rows})

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
@_out_opt
def dual(fixture_name, in_path, out):
    """Dual complex with height axioms; the artifact is the dual complex."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        D = build_dual(X)
        report = verify_dual_axioms(D)
        payload = D.to_payload()
        payload["checks"] = [
            {"name": n, "status": s, "detail": d} for n, s, d in report.checks
        ]
        payload["ok"] = report.ok
        _emit(
            payload,
            code=0 if report.ok else 1,
            out=out,
            artifact=formats.serialize_complex(D.complex),
        )

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
@_folding_opt
@click.option("--loop", "loop_text", type=str, default=None)
@click.option("--verify", "do_verify", is_flag=True, default=False)
@click.option("--seed", type=int, default=0)
@_out_opt
def contract(fixture_name, in_path, folding_path, loop_text, do_verify, seed, out):
    """Contract a loop in the dual complex, emitting a certificate.

    Without --loop, runs a seeded suite of 100 random loops and reports the
    aggregate outcome.
    """

    def go():
        X, own = _load_complex(fixture_name, in_path)
        labels, _source = _resolve_labels(X, own, folding_path)
        D = build_dual(X)
        loop = _parse_loop(loop_text)
        if loop is None:
            rng = random.Random(seed)
            depth_max = 0
            for _ in range(100):
                p = random_loop(D, rng)
                cert = contract_loop(D, p, labels)
                if not verify_certificate(D, p, cert):
                    _emit({"ok": False, "seed": seed, "loop": list(p)}, code=1)
                    return

                def depth(c):
                    if hasattr(c, "left"):
                        return 1 + max(depth(c.left), depth(c.right))
                    return 0

                depth_max = max(depth_max, depth(cert))
            _emit({"ok": True, "loops": 100, "seed": seed, "max_split_depth": depth_max})
            return
        try:
            p = check_edge_path(D, loop)
        except ValueError as e:
            _emit({"error": "BadLoop", "detail": str(e)}, code=2)
            return
        cert = contract_loop(D, p, labels)
        mu = sum(crossings(D, p, M).count for M in mirrors(X, labels))
        payload = {
            "ok": True,
            "loop": list(p),
            "length": len(p) - 1,
            "crossings": mu,
        }
        if do_verify:
            payload["verified"] = verify_certificate(D, p, cert)
            if not payload["verified"]:
                _emit(payload, code=1)
                return
        _emit(payload, out=out, artifact=formats.serialize_certificate(cert))

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
@click.option("--loop", "loop_text", type=str, required=True)
@click.option(
    "--cert", "cert_path", type=click.Path(exists=True, dir_okay=False), required=True
)
def verify(fixture_name, in_path, loop_text, cert_path):
    """Replay a contraction certificate without trusting its producer."""

    def go():
        X, _labels = _load_complex(fixture_name, in_path)
        D = build_dual(X)
        loop = _parse_loop(loop_text)
        cert = formats.parse_certificate(Path(cert_path).read_text())
        valid = verify_certificate(D, loop, cert)
        _emit({"valid": valid}, code=0 if valid else 1)

    _run(go)


@main.command()
@_fixture_opt
@_in_opt
@_folding_opt
def tree(fixture_name, in_path, folding_path):
    """Mirror/chamber decomposition per folding coordinate, with verdicts."""

    def go():
        X, own = _load_complex(fixture_name, in_path)
        labels, _source = _resolve_labels(X, own, folding_path)
        payload = {"trees": [t.to_payload() for t in build_all_trees(X, labels)]}
        _emit(payload)

    _run(go)


@main.command("fixture")
@click.argument("name", required=False)
@_out_opt
def fixture_cmd(name, out):
    """Describe a built-in fixture, or list them all."""

    def go():
        if name is None:
            rows = []
            for n in FIXTURE_NAMES:
                f = fixture(n)
                rows.append(
                    {
                        "name": n,
                        "description": f.description,
                        "dim": f.complex.dim,
                        "counts": {str(d): c for d, c in f.complex.counts().items()},
                        "simply_connected": f.simply_connected,
                    }
                )
            _emit({"fixtures": rows})
            return
        f = _fixture(name)
        payload = {
            "name": f.name,
            "description": f.description,
            "dim": f.complex.dim,
            "counts": {str(d): c for d, c in f.complex.counts().items()},
            "simply_connected": f.simply_connected,
            "labels": _labels_payload(f.labels),
        }
        _emit(payload, out=out, artifact=formats.serialize_complex(f.complex))

    _run(go)


if __name__ == "__main__":
    main()
