"""Bethe subalgebras of twisted Yangians and Gelfand-Tsetlin patterns of type D.

Weights may be given as text ("0,-1,-3/2") or as a sequence of ints,
Fractions or strings. Reports come back as plain dicts and lists.
"""

import json
from fractions import Fraction

from . import _core

UsageError = _core.UsageError

__all__ = [
    "UsageError",
    "run",
    "weyl_dim",
    "branch",
    "branching_params",
    "patterns",
    "centralizer_dim_principal",
    "pfaffian_invariant",
    "bethe_operators",
    "verify_relations",
    "flow",
    "full_labeling",
]


def _weight(w):
    if isinstance(w, str):
        return w
    return ",".join(str(Fraction(x)) for x in w)


def _rationals(xs):
    return [str(Fraction(x)) for x in xs]


def run(command, subcommand="", **options):
    """Runs a tool command, e.g. run("verify", "lie", n=3)."""
    for key in ("weight", "mu"):
        if key in options:
            options[key] = _weight(options[key])
    return json.loads(_core.run(command, subcommand, options))


def weyl_dim(weight, half=False):
    return int(_core.weyl_dim(_weight(weight), half))


def branch(weight, half=False):
    """List of (mu, multiplicity) in the restriction to o_2n-2."""
    return [(mu, int(m)) for mu, m in _core.branch(_weight(weight), half)]


def branching_params(weight, mu, half=False):
    return json.loads(_core.branching_params(_weight(weight), _weight(mu), half))


def patterns(weight, half=False):
    return json.loads(_core.patterns(_weight(weight), half))


def centralizer_dim_principal(n):
    return _core.centralizer_dim_principal(n)


def pfaffian_invariant(k, n):
    return _core.pfaffian_invariant(k, n)


def bethe_operators(alpha, beta, z, delta, count=4, t=0.0):
    """Bethe generators on L(alpha_1, beta_1) x ... x W(delta) as numpy arrays."""
    return _core.bethe_operators(_rationals(alpha), _rationals(beta), [float(x) for x in z], float(delta), count, t)


def verify_relations(alpha, beta, z, delta, samples=25, seed=1):
    return json.loads(
        _core.verify_relations(_rationals(alpha), _rationals(beta), _rationals(z), str(Fraction(delta)), samples, seed)
    )


def flow(weight, mu, u, seed=1, half=False, t_max=1e6, q=1.3, gap_tol=1e-9):
    return json.loads(_core.flow(_weight(weight), _weight(mu), list(u), seed, half, t_max, q, gap_tol))


def full_labeling(weight, u, seed=1, jobs=1, half=False):
    return json.loads(_core.full_labeling(_weight(weight), list(u), seed, jobs, half))
