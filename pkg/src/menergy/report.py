"""Per-graph analysis combining exact energy, moment bounds, and classification."""

from __future__ import annotations

from dataclasses import dataclass

from .extremal import EqualityClass, TIGHTNESS_RTOL, classify_equality
from .graphs import Graph, is_connected, is_regular
from .moments import MomentSummary, ScaledMoments, moment_summary, scaled_moments
from .quartic import best_quartic_bound, optimal_tangency, van_dam_bound
from .spectral import Spectrum, eigenvalues

SOUNDNESS_RTOL = 1e-7


@dataclass(frozen=True)
class BoundReport:
    """Everything the reporting layer knows about one graph."""

    summary: MomentSummary
    scaled: ScaledMoments | None
    energy: float
    quartic_bound: float
    van_dam_bound: float | None
    tangency: float
    tangency_clamped: bool
    lp_upper: float | None
    lp_lower: float | None
    tightness: float
    classification: EqualityClass
    connected: bool


def analyze_graph(
    g: Graph, tol_scale: float = 1.0, spectrum: Spectrum | None = None
) -> BoundReport:
    """Full analysis of one graph.

    Edgeless graphs short-circuit: energy and bound are both zero and the
    scaled moments stay unset.  ``tol_scale`` widens (or narrows) the
    tightness tolerance used for equality classification.
    """
    summary = moment_summary(g)
    connected = is_connected(g)
    if summary.m == 0:
        return BoundReport(
            summary=summary,
            scaled=None,
            energy=0.0,
            quartic_bound=0.0,
            van_dam_bound=None,
            tangency=1.0,
            tangency_clamped=True,
            lp_upper=None,
            lp_lower=None,
            tightness=1.0,
            classification=EqualityClass("TightUnclassified"),
            connected=connected,
        )
    spec = spectrum if spectrum is not None else eigenvalues(g)
    energy_value = float(sum(abs(v) for v in spec.eigenvalues))
    scaled = scaled_moments(summary)
    tangency, clamped = optimal_tangency(scaled)
    bound = best_quartic_bound(scaled)
    degree = is_regular(g)
    vd = van_dam_bound(g.n, degree) if degree is not None and degree >= 1 and g.n >= 2 else None
    classification = classify_equality(
        g, scaled, energy_value, bound, tol=TIGHTNESS_RTOL * tol_scale, spectrum=spec
    )
    return BoundReport(
        summary=summary,
        scaled=scaled,
        energy=energy_value,
        quartic_bound=bound,
        van_dam_bound=vd,
        tangency=tangency,
        tangency_clamped=clamped,
        lp_upper=None,
        lp_lower=None,
        tightness=bound / energy_value,
        classification=classification,
        connected=connected,
    )


def soundness_ok(report: BoundReport, tol_scale: float = 1.0) -> bool:
    """The non-negotiable invariant: the upper bound may not undercut the energy."""
    slack = SOUNDNESS_RTOL * tol_scale * max(1.0, report.energy)
    return report.quartic_bound >= report.energy - slack
