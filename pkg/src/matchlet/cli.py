"""``matchlet`` command line.

Exit codes: 0 accepted, 1 mathematically rejected, 2 input or usage error.
"""
import sys
import warnings

import click
import numpy as np

from . import __version__
from .cardinal import SHANNON
from .formats import (
    DesignArtifact,
    ProblemSpec,
    SpecError,
    atomic_write,
    dump_json,
    lattice_residuals,
    load_artifact,
    load_json,
    load_spec,
    now_iso,
    read_samples,
    samples_csv,
)
from .matched import DesignRejected, MatchedWavelet, design_matched, eval_time
from .meyer import (
    BellCoefficients,
    Gam3Warning,
    InadmissibleError,
    SingularSystemError,
    build_meyer,
    eval_psi_time,
    project_feasible,
    solve_h_coefficients,
)
from .sequence import (
    DataSequence,
    RootFindingError,
    SymbolPolynomial,
    compute_frame_bounds,
    perturb_roots,
)
from .verification import QuadratureSpec, VerificationReport
from .verification.suites import (
    matched_suite,
    meyer_suite,
    rejected_matched,
    rejected_meyer,
)

EXIT_OK, EXIT_REJECTED, EXIT_USAGE = 0, 1, 2


class InputError(click.ClickException):
    exit_code = EXIT_USAGE


def _load(loader, path):
    try:
        return loader(path)
    except SpecError as exc:
        raise InputError(str(exc)) from exc


def _emit(text, out):
    if out:
        atomic_write(out, text)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# artifact <-> model
# ---------------------------------------------------------------------------

def _quad_dict(spec):
    return {"panels": spec.panels, "nodes": spec.nodes}


def make_artifact(problem, model):
    """DesignArtifact for an accepted model."""
    common = dict(problem=problem.to_dict(), quadrature=_quad_dict(model.spec),
                  created=now_iso())
    if isinstance(model, MatchedWavelet):
        sym = model.symbol
        return DesignArtifact(
            lattice="half-integer",
            gamma_values=np.asarray(sym.coeffs),
            gamma_offset=int(sym.offset),
            truncation_error=float(sym.truncation_error),
            bounds={k: v for k, v in model.bounds.to_dict().items()},
            **common,
        )
    c = model.coeffs
    from .meyer import check_admissibility
    adm = check_admissibility(problem.meyer_sequence(), n_max=problem.n_max or 1024)
    return DesignArtifact(
        lattice="meyer3",
        gamma_values=np.asarray(c.gamma),
        h_coefficients=np.asarray(c.coef),
        tail_bound=float(c.tail_bound),
        admissibility=adm.to_dict(),
        **common,
    )


def model_from_artifact(art):
    """Rebuild the model exactly as it was designed (stored quadrature)."""
    try:
        problem = ProblemSpec.from_dict(art.problem)
        spec = QuadratureSpec(**art.quadrature) if art.quadrature else problem.quadrature_spec()
        if art.lattice == "half-integer":
            symbol = SymbolPolynomial(art.gamma_values, art.gamma_offset, art.truncation_error)
            bounds = compute_frame_bounds(symbol)
            gamma = (problem.data_sequence() if not problem.is_finite
                     else DataSequence.finite(art.gamma_values, art.gamma_offset))
            return problem, MatchedWavelet(gamma, symbol, bounds, SHANNON, spec)
        coeffs = BellCoefficients(art.h_coefficients, art.gamma_values, art.tail_bound)
        return problem, build_meyer(coeffs, spec=spec)
    except (TypeError, ValueError) as exc:
        raise InputError(f"artifact cannot be rebuilt: {exc}") from exc


def verify_artifact(art):
    problem, model = model_from_artifact(art)
    if isinstance(model, MatchedWavelet):
        return matched_suite(model, VerificationReport("matched"))
    return meyer_suite(model, problem.meyer_sequence(), VerificationReport("meyer"))


def _report_text(rep):
    return dump_json(rep.to_dict())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@click.group()
@click.version_option(__version__, prog_name="matchlet")
def main():
    """Design and verify wavelets that interpolate lattice data."""


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(dir_okay=False),
              help="Problem spec JSON.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="Artifact path (default: spec outputs.artifact).")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Report path (default: spec outputs.report, else stdout).")
def design(spec_path, out, report_path):
    """Design the wavelet for a spec and run its default suite."""
    problem = _load(load_spec, spec_path)
    out = out or problem.outputs.get("artifact")
    report_path = report_path or problem.outputs.get("report")
    qspec = problem.quadrature_spec()
    tol = problem.tolerances
    try:
        if problem.lattice == "half-integer":
            seq = problem.data_sequence()
            try:
                model = design_matched(seq, positivity_tol=tol.get("positivity", 1e-10),
                                       spec=qspec, symbol_tol=tol.get("symbol", 1e-12))
            except DesignRejected as exc:
                model, rep = None, rejected_matched(exc)
        else:
            seq = problem.meyer_sequence()
            try:
                coeffs = solve_h_coefficients(seq, problem.n_max)
                model = build_meyer(coeffs, tol=tol.get("bell", 1e-10), spec=qspec)
            except InadmissibleError as exc:
                model, rep = None, rejected_meyer(exc, seq)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (DesignRejected, InadmissibleError)):
            raise
        raise InputError(str(exc)) from exc

    if model is not None:
        art = make_artifact(problem, model)
        if out:
            atomic_write(out, art.to_json())
        rep = verify_artifact(art)
    _emit(_report_text(rep), report_path)
    for line in rep.summary_lines():
        click.echo(line, err=True)
    sys.exit(EXIT_OK if rep.passed else EXIT_REJECTED)


@main.command()
@click.option("--artifact", "artifact_path", required=True, type=click.Path(dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Report path (default stdout).")
def verify(artifact_path, report_path):
    """Re-run the default suite on a stored artifact."""
    art = _load(load_artifact, artifact_path)
    rep = verify_artifact(art)
    _emit(_report_text(rep), report_path)
    sys.exit(EXIT_OK if rep.passed else EXIT_REJECTED)


@main.command()
@click.option("--artifact", "artifact_path", required=True, type=click.Path(dir_okay=False))
@click.option("--t-min", type=float, required=True)
@click.option("--t-max", type=float, required=True)
@click.option("--n-points", type=click.IntRange(min=0), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="CSV path (default stdout).")
def sample(artifact_path, t_min, t_max, n_points, out):
    """Sample the designed wavelet on a uniform grid (endpoints included)."""
    art = _load(load_artifact, artifact_path)
    _, model = model_from_artifact(art)
    t = np.linspace(t_min, t_max, n_points)
    if n_points == 0:
        vals = np.zeros(0, dtype=complex if art.gamma_values.dtype.kind == "c" else float)
    elif isinstance(model, MatchedWavelet):
        vals = np.asarray(eval_time(model, t))
    else:
        vals = np.asarray(eval_psi_time(model, t))
    _emit(samples_csv(t, vals), out)


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(dir_okay=False))
@click.option("--delta", type=float, required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="New spec path (default stdout).")
def perturb(spec_path, delta, out):
    """Move symbol roots off the unit circle (half-integer lattice only)."""
    problem = _load(load_spec, spec_path)
    if problem.lattice != "half-integer":
        raise InputError("perturb applies to the half-integer lattice only")
    if not problem.is_finite:
        raise InputError("perturb needs finite gamma")
    seq = problem.data_sequence()
    try:
        new = perturb_roots(seq, delta)
    except (ValueError, RootFindingError) as exc:
        raise InputError(str(exc)) from exc
    if new is seq:
        note = f"no on-circle roots within delta={delta:g}; gamma unchanged"
        values, start = seq.values, seq.start
    else:
        values, start = new.values, new.start
        diff = float(np.max(np.abs(new.values - seq.values))) if (
            new.values.size == seq.values.size and new.start == seq.start) else float("nan")
        note = f"roots moved to modulus {1 + delta:g}; max |gamma' - gamma| = {diff:.6g}"
    click.echo(note, err=True)
    _emit(dump_json(problem.with_values(values, start, notes=note).to_dict()), out)


def _parse_pair(text):
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"--free expects 'i,j', got {text!r}") from exc
    return i, j


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(dir_okay=False))
@click.option("--free", "free", required=True, help="Two free indices, e.g. 0,1.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="New spec path (default stdout).")
def feasible(spec_path, free, out):
    """Adjust two gamma entries so the bell conditions hold exactly (meyer3)."""
    problem = _load(load_spec, spec_path)
    if problem.lattice != "meyer3":
        raise InputError("feasible applies to the meyer3 lattice only")
    if not problem.is_finite:
        raise InputError("feasible needs finite gamma")
    pair = _parse_pair(free)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", Gam3Warning)
        try:
            new = project_feasible(problem.meyer_sequence(), pair)
        except SingularSystemError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_REJECTED)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)
    note = f"free indices {pair[0]},{pair[1]} adjusted"
    _emit(dump_json(problem.with_values(new.values, 0, notes=note).to_dict()), out)


@main.command()
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Report JSON to summarize.")
@click.option("--samples", "samples_path", type=click.Path(dir_okay=False), default=None,
              help="Samples CSV to check against the lattice data.")
@click.option("--artifact", "artifact_path", type=click.Path(dir_okay=False), default=None,
              help="Artifact supplying the lattice data for --samples.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def report(report_path, samples_path, artifact_path, out):
    """Summarize a report, or recompute lattice residuals from samples."""
    if not report_path and not samples_path:
        raise InputError("give --report and/or --samples with --artifact")
    if report_path:
        d = _load(load_json, report_path)
        try:
            rep = VerificationReport.from_dict(d)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed report: {exc}") from exc
        for line in rep.summary_lines():
            click.echo(line)
    if samples_path:
        if not artifact_path:
            raise InputError("--samples needs --artifact")
        art = _load(load_artifact, artifact_path)
        try:
            t, v = read_samples(samples_path)
        except (OSError, ValueError, IndexError) as exc:
            raise InputError(f"cannot read samples: {exc}") from exc
        res = lattice_residuals(art.lattice, art.gamma_values, art.gamma_offset, t, v)
        res = {"schema": "matchlet/1", "kind": "lattice_residuals", **res}
        _emit(dump_json(res), out)


if __name__ == "__main__":
    main()
