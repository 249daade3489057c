"""Stability of homogeneous minimal hypersurfaces in the Page space and Y^{p,q}.

Closed-form spectra of the Jacobi operators, cross-checked against an
exact-derivative curvature engine and a finite-volume eigensolver.
"""
__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DegenerateMetricError,
    DomainError,
    MinstabError,
    OracleFailure,
    ParameterError,
)
from .oracle import (
    OracleSpectrum,
    SturmLiouvilleProblem,
    hypergeometric_truncation_check,
    page_oracle_spectrum,
    solve_sturm_liouville,
    ypq_oracle_spectrum,
)
from .page import (
    PageModel,
    find_minimal_level,
    page_chart,
    page_foliation,
    page_laplace_eigenvalue,
    page_mean_curvature,
    page_model,
    page_stability_report,
    solve_nu,
)
from .stability import PageLabel, StabilityEigenvalue, StabilityReport, YpqLabel
from .tensor import (
    FoliationChart,
    MetricChart,
    christoffel,
    mean_curvature,
    ricci,
    second_fundamental_form,
    verify_einstein,
)
from .ypq import (
    YpqModel,
    exceptional_scan,
    find_ybar,
    lambda_tilde,
    ybar_curve,
    ypq_chart,
    ypq_foliation,
    ypq_model,
    ypq_stability_report,
)
