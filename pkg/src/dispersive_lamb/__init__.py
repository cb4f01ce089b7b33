"""Spectral solutions of one-dimensional dispersive media driven by a Lamb oscillator."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CATALOG,
    FIGURE_ONE,
    DispersionRelation,
    OscillatorParams,
    UnderdampingError,
    classical_prefactor,
    classify_regularity,
    dispersion_eval,
    make_relation,
    oscillator_displacement,
    oscillator_from_physical,
)
from .modal import (  # noqa: E402
    ModalCoefficients,
    a0_bidirectional,
    a0_unidirectional,
    ak_bidirectional,
    modal_coefficients,
    modal_unidirectional,
)
from .periodic import (  # noqa: E402
    SolutionProfile,
    dalembert_periodic,
    eval_bidirectional,
    eval_unidirectional,
    uniform_grid,
)
from .line import lamb_line_closed_form, line_profile_quadrature, to_classical  # noqa: E402
from .analysis import (  # noqa: E402
    FractalEstimate,
    box_counting_dimension,
    convergence_report,
    log_singularity_sum,
    partial_fraction_terms,
)
from .estimators import BoxCountingDimension, LineLambSolver, PeriodicLambSolver  # noqa: E402
