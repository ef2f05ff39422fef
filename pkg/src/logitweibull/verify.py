"""Assembles the full verification report: every audited formula at a grid point.

Deviations are findings, not failures; the record list is data for the report
front end and for the acceptance suite.
"""

from __future__ import annotations

import numpy as np

from .family import as_theta
from .fisher import compare_metrics, integrability_residual, verify_inverse
from .logit import (
    dual_potential,
    logit_information,
    potential_closed,
    potential_integral,
    solve_constraint,
)
from .family import score
from .oracles import BracketError, QuadratureConfig
from .records import VerificationRecord, make_record

# Fixed list of audited formulas per grid point; order is the report order.
AUDITED_FORMULAS = (
    "g11",
    "g12",
    "g22",
    "E[x^b]",
    "E[log x]",
    "E[x^b log x]",
    "E[x^b log^2 x]",
    "G_times_printed_inverse_minus_identity",
    "integrability_residual",
    "Phi_closed_vs_integral",
    "I_times_inverse_minus_identity",
    "legendre_residual",
    "logit_score_component_gap",
)


def verification_records(theta, cfg: QuadratureConfig | None = None, potential_x: float = 1.0) -> list[VerificationRecord]:
    """All audit records at one grid point, in AUDITED_FORMULAS order."""
    th = as_theta(theta)
    records = compare_metrics(th, cfg)
    records.append(verify_inverse(th))
    records.append(
        make_record(
            "integrability_residual",
            0.0,
            integrability_residual(th),
            "a vanishing value would be necessary for the metric to admit a potential" ,
        )
    )
    records.append(
        make_record(
            "Phi_closed_vs_integral",
            potential_closed(th, potential_x),
            potential_integral(th, potential_x),
            f"closed form vs exact double integral of the link at x={potential_x:g}",
        )
    )
    info = logit_information(th, potential_x, "fixed_x")
    records.append(
        make_record(
            "I_times_inverse_minus_identity",
            0.0,
            float(np.max(np.abs(info.matrix @ info.inverse - np.eye(2)))),
        )
    )
    ev = dual_potential(th, potential_x, "fixed_x")
    records.append(make_record("legendre_residual", 0.0, ev.legendre_residual))
    try:
        root = solve_constraint(th)
        s = score(th, root.x)
        records.append(
            make_record(
                "logit_score_component_gap",
                0.0,
                s.d_a - s.d_b,
                f"score components at the constraint root x*={root.x:.12g}",
            )
        )
    except BracketError as exc:
        records.append(make_record("logit_score_component_gap", 0.0, float("nan"), f"no root: {exc}"))
    return records
