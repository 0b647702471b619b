import json

from ._core import (
    CobcalcError,
    FormalGroupLaw,
    LazardModel,
    Series,
    cf_pushforwards,
    chern_classes,
    decompose,
    hrr_projective_space,
    pb_coefficients,
    run_cli,
    todd_series,
    universal_fgl,
)
from ._core import selftest as _selftest


def selftest(profile="quick", seed=None, threads=1):
    """Run the invariant suites and return the report as a dict."""
    args = {"profile": profile, "threads": threads}
    if seed is not None:
        args["seed"] = seed
    return json.loads(_selftest(**args))
