"""Command-line frontend.

Exit codes: 0 for a certificate or plain report, 2 for an obstruction or
degenerate certificate, 1 for any error.  Reports are byte-stable for
identical inputs: keys sorted, floats at 12 significant digits, rationals
as exact strings.
"""

from __future__ import annotations

import sys

import click

# exit code 2 is reserved for obstruction/degenerate certificates; click's
# own usage errors must land on the generic error code instead
click.exceptions.UsageError.exit_code = 1

from . import errors
from .flats import CommutingFamily, flat_certificate
from .linalg import block_decompose
from .manifold import InvalidGraphRep, gluing_covariance, npc_certificate, validate
from .places import classify as classify_element
from .places import direction_profile, drift_profile
from .report import (
    classification_dict,
    direction_dict,
    flat_dict,
    npc_dict,
    places_dict,
    profile_dict,
    render_json,
    render_text,
)
from .session import fraction_str, parse_graph, parse_session
from .words import parse_word, word_eval

_ERROR_MODULE = {
    errors.NotMonic: "exact",
    errors.NotIrreducible: "exact",
    errors.DivideByZero: "exact",
    errors.FieldMismatch: "exact",
    errors.ToleranceNotReached: "exact",
    errors.ZeroConstantTerm: "exact",
    errors.DeterminantNotOne: "linalg",
    errors.DimensionMismatch: "linalg",
    errors.UnknownGenerator: "linalg",
    errors.NotCommuting: "flats",
    errors.NumericalInconclusive: "flats",
    errors.NotBallistic: "places",
    errors.PlaceSetIncomplete: "places",
    errors.ParseError: "cli",
    InvalidGraphRep: "manifold",
}


class Options:
    def __init__(self, input_path, tolerance, pd_epsilon, as_json):
        self.input_path = input_path
        self.tolerance = tolerance
        self.pd_epsilon = pd_epsilon
        self.as_json = as_json

    def session(self):
        if not self.input_path:
            raise click.UsageError("this command needs a session file: --input FILE")
        with open(self.input_path, "r", encoding="utf-8") as fh:
            return parse_session(fh.read())

    def emit(self, report: dict, code: int = 0):
        text = render_json(report) if self.as_json else render_text(report)
        click.echo(text)
        sys.exit(code)

    def fail(self, exc: Exception):
        module = "internal"
        for klass, mod in _ERROR_MODULE.items():
            if isinstance(exc, klass):
                module = mod
                break
        report = {
            "error": {
                "type": type(exc).__name__,
                "module": module,
                "message": str(exc),
            }
        }
        text = render_json(report) if self.as_json else render_text(report)
        click.echo(text, err=True)
        sys.exit(1)


@click.group()
@click.option("--input", "-i", "input_path", type=click.Path(), default=None,
              help="Session JSON file with named det-1 generators.")
@click.option("--tolerance", type=float, default=1e-12, show_default=True,
              help="Root-isolation tolerance for archimedean drift.")
@click.option("--pd-epsilon", type=float, default=1e-8, show_default=True,
              help="Relative eigenvalue threshold for positive definiteness.")
@click.option("--json/--text", "as_json", default=True,
              help="Report format (default JSON).")
@click.pass_context
def main(ctx, input_path, tolerance, pd_epsilon, as_json):
    """Exact certificates for matrix groups: element classification, drift,
    thick-flat lattices, and graph-manifold NPC checks."""
    ctx.obj = Options(input_path, tolerance, pd_epsilon, as_json)


@main.command()
@click.pass_obj
def places(opts: Options):
    """Discovered places of the session's generator family."""
    try:
        spec = opts.session()
        opts.emit(places_dict(spec.places))
    except errors.FlatcertError as e:
        opts.fail(e)


@main.command()
@click.argument("word")
@click.option("--direction", is_flag=True, help="Include the per-place direction profile.")
@click.pass_obj
def classify(opts: Options, word, direction):
    """Classify the element given by WORD in the session generators."""
    try:
        spec = opts.session()
        expr = parse_word(word)
        m = word_eval(expr, spec.embedded)
        cls = classify_element(m, spec.places, label=word, tol=opts.tolerance)
        profile = drift_profile(m, spec.places, label=word, tol=opts.tolerance)
        report = {"word": word, **classification_dict(cls), **profile_dict(profile)}
        if direction:
            report["direction"] = direction_dict(
                direction_profile(m, spec.places, label=word, tol=opts.tolerance)
            )
        opts.emit(report)
    except errors.FlatcertError as e:
        opts.fail(e)


@main.command()
@click.argument("names", nargs=-1, required=True)
@click.pass_obj
def decompose(opts: Options, names):
    """Simultaneous block decomposition of the named commuting generators."""
    try:
        spec = opts.session()
        gens = []
        for n in names:
            if n not in spec.embedded:
                raise errors.UnknownGenerator(n)
            gens.append((n, spec.embedded[n]))
        d = block_decompose(gens)
        report = {
            "conjugator": _matrix_dict(d.conjugator),
            "blocks": [
                {
                    "size": size,
                    "charpolys": {
                        name: [fraction_str(c) for c in cp.coeffs]
                        for name, cp in zip(names, d.block_charpolys[k])
                    },
                    "matrices": {
                        name: _matrix_dict(mat) for name, mat in zip(names, mats)
                    },
                }
                for k, (size, mats) in enumerate(d.blocks)
            ],
        }
        opts.emit(report)
    except errors.FlatcertError as e:
        opts.fail(e)


@main.command()
@click.argument("names", nargs=-1, required=True)
@click.pass_obj
def flat(opts: Options, names):
    """Thick-flat lattice certificate for the named commuting generators."""
    try:
        spec = opts.session()
        gens = []
        for n in names:
            if n not in spec.embedded:
                raise errors.UnknownGenerator(n)
            gens.append((n, spec.embedded[n]))
        family = CommutingFamily.build(gens, places=spec.places)
        cert = flat_certificate(family, opts.pd_epsilon, tol=opts.tolerance)
        opts.emit(flat_dict(cert), code=0 if cert.tag == "Lattice" else 2)
    except errors.FlatcertError as e:
        opts.fail(e)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def graph(opts: Options, file):
    """NPC certificate or unipotent obstruction for a graph-manifold
    representation file."""
    try:
        with open(file, "r", encoding="utf-8") as fh:
            rep = parse_graph(fh.read())
        violations = validate(rep)
        if violations:
            opts.emit(
                {
                    "tag": "Invalid",
                    "violations": [
                        {"torus": v.torus, "kind": v.kind, "detail": v.detail}
                        for v in violations
                    ],
                },
                code=1,
            )
        result = npc_certificate(rep, opts.pd_epsilon, tol=opts.tolerance)
        reports = gluing_covariance(rep, tol=opts.tolerance)
        opts.emit(
            npc_dict(result, reports),
            code=0 if result.tag == "NPC" else 2,
        )
    except errors.FlatcertError as e:
        opts.fail(e)


def _matrix_dict(m) -> list[list[str]]:
    return [[fraction_str(x) for x in row] for row in m.rows]


if __name__ == "__main__":
    main()
