"""Resonances of the cubic anharmonic oscillator.

Thin wrapper over the compiled ``_core`` extension. The WKB correction table
ships inside the package; its location is exported before first use unless
``CUBICVPE_DATA_DIR`` is already set.
"""

import os as _os

_data = _os.path.join(_os.path.dirname(__file__), "data")
if "CUBICVPE_DATA_DIR" not in _os.environ and _os.path.isfile(_os.path.join(_data, "wkb_coefficients.txt")):
    _os.environ["CUBICVPE_DATA_DIR"] = _data

from ._core import (  # noqa: E402
    ConvergenceError,
    SingularExpansion,
    eps_wkb,
    find_resonance,
    first_order_coalescence,
    im_energy_wkb,
    k_coefficient,
    parse_lambda_grid,
    rs_coefficients,
    rs_partial_sum,
    strong_coupling_kappa,
    table1,
    table1_csv,
    variational_wkb,
    vpe,
    vpe_energy,
)

__all__ = [
    "ConvergenceError",
    "SingularExpansion",
    "eps_wkb",
    "find_resonance",
    "first_order_coalescence",
    "im_energy_wkb",
    "k_coefficient",
    "parse_lambda_grid",
    "rs_coefficients",
    "rs_partial_sum",
    "strong_coupling_kappa",
    "table1",
    "table1_csv",
    "variational_wkb",
    "vpe",
    "vpe_energy",
]
