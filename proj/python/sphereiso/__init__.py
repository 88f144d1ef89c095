"""Based and free isotopy decisions for embedded 2-spheres in 5-manifolds.

Every function speaks the same JSON wire formats as the ``sphereiso`` CLI:
group ring elements are ``[[coef, "word"], ...]``, tracks are
``{"core": "word", "points": [[sign, "word", "num/den"], ...]}``, classes are
``{"int_part": [[coef, "word"], ...], "mod2_part": ["word", ...]}``.
"""

from ._core import (
    SphereisoError,
    example_names,
    example_scenario,
    fq_based,
    is_based_isotopic,
    is_free_isotopic,
    mu3,
    orbit,
    realize,
    reduce,
    run,
    validate,
    whitney,
)

__all__ = [
    "SphereisoError",
    "example_names",
    "example_scenario",
    "fq_based",
    "is_based_isotopic",
    "is_free_isotopic",
    "mu3",
    "orbit",
    "realize",
    "reduce",
    "run",
    "validate",
    "whitney",
]
