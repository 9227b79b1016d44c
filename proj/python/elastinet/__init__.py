"""Elastic energy of planar curves and curve networks.

Networks are plain dicts in the JSON layout used by the command line tool.
"""

import json

from . import _elastinet as _core
from ._elastinet import (
    ElastinetError,
    __version__,
    double_bubble_energy_constant,
    generalized_bubble_energy,
    optimal_bubble_radius,
)

__all__ = [
    "ElastinetError",
    "__version__",
    "circle",
    "ellipse",
    "teardrop",
    "double_bubble",
    "generalized_bubble",
    "figure_eight",
    "optimal_bubble_radius",
    "double_bubble_energy_constant",
    "generalized_bubble_energy",
    "validate",
    "energy",
    "scaling_identity_check",
    "optimal_rescale",
    "discrete_gradient",
    "theta_lower_bound",
    "gauss_bonnet",
    "junction_residuals",
    "minimize",
    "recovery_sequence",
    "render_svg",
]


def _dump(network):
    return network if isinstance(network, str) else json.dumps(network)


def circle(radius=1.0, n=200):
    return json.loads(_core.make_circle(radius, n))


def ellipse(a, b, n=200):
    return json.loads(_core.make_ellipse(a, b, n))


def teardrop(n=300):
    return json.loads(_core.make_teardrop(n))


def double_bubble(r=None, n=400):
    return json.loads(_core.make_standard_double_bubble(optimal_bubble_radius() if r is None else r, n))


def generalized_bubble(alpha1, alpha2, chord=1.0, n=200):
    return json.loads(_core.make_generalized_bubble(alpha1, alpha2, chord, n))


def figure_eight(n_half=60):
    return json.loads(_core.make_figure_eight_degenerate(n_half))


def validate(network):
    return _core.validate(_dump(network))


def energy(network, alpha=1.0):
    return _core.energy(_dump(network), alpha)


def scaling_identity_check(network, alpha):
    return _core.scaling_identity_check(_dump(network), alpha)


def optimal_rescale(network):
    factor, rescaled = _core.optimal_rescale(_dump(network))
    return factor, json.loads(rescaled)


def discrete_gradient(network):
    return _core.discrete_gradient(_dump(network))


def theta_lower_bound(network):
    return _core.theta_lower_bound(_dump(network))


def gauss_bonnet(network):
    return _core.gauss_bonnet(_dump(network))


def junction_residuals(network):
    return _core.junction_residuals(_dump(network))


def minimize(network, config=None, symmetric=False):
    result = _core.minimize(_dump(network), json.dumps(config or {}), symmetric)
    result["network"] = json.loads(result["network"])
    return result


def recovery_sequence(network, n):
    result = _core.recovery_sequence(_dump(network), n)
    result["network"] = json.loads(result["network"])
    return result


def render_svg(network, title=""):
    return _core.render_svg(_dump(network), title)
