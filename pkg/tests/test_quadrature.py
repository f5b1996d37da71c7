import numpy as np
import pytest

from matchlet import SHANNON, QuadratureSpec, gram_matrix, integrate
from matchlet.verification import QuadratureError, default_spec, periodization


@pytest.mark.parametrize("f, interval, want, tol", [
    (np.cos, (0.0, 2 * np.pi), 0.0, 1e-14),
    (lambda x: np.cos(3 * x) ** 2, (-np.pi / 3, np.pi / 3), np.pi / 3, 1e-14),
    (np.ones_like, (np.pi, 2 * np.pi), np.pi, 1e-14),
])
def test_integrate_examples(f, interval, want, tol):
    assert integrate(f, interval).value == pytest.approx(want, abs=tol)


def test_integrate_with_breakpoint_kink():
    r = integrate(np.abs, (-1.0, 2.0), breakpoints=(0.0,))
    assert r.value == pytest.approx(2.5, abs=1e-14)


def test_refinement_gives_up_on_discontinuity():
    spec = QuadratureSpec(panels=1, nodes=4, max_refinements=1, tol=1e-14)
    with pytest.raises(QuadratureError):
        integrate(lambda x: (x > 0.3).astype(float), (0.0, 1.0), spec)


@pytest.mark.parametrize("kwargs", [dict(panels=0), dict(nodes=0), dict(tol=0.0),
                                    dict(max_refinements=0)])
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        QuadratureSpec(**kwargs)


def test_env_override(monkeypatch):
    monkeypatch.setenv("MATCHLET_QUADRATURE", "4x16")
    s = default_spec()
    assert (s.panels, s.nodes) == (4, 16)
    monkeypatch.setenv("MATCHLET_QUADRATURE", "bogus")
    with pytest.raises(ValueError):
        default_spec()


def test_cardinal_gram_identity():
    G = gram_matrix(SHANNON, 8).value
    assert np.max(np.abs(G - np.eye(17))) < 1e-10


def test_cardinal_cross_scale():
    assert np.max(np.abs(gram_matrix(SHANNON, 4, (0, 1)).value)) < 1e-10


def test_meyer_cross_scale(meyer_two):
    assert np.max(np.abs(gram_matrix(meyer_two, 8, (0, 1)).value)) < 1e-7


def test_periodization_constant_for_cardinal():
    xi = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    p = periodization(SHANNON.hat, xi, breakpoints=SHANNON.breakpoints)
    assert np.max(np.abs(p - 1)) < 1e-14
