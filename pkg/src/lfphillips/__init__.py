"""Labor-force-driven Phillips curve estimation and long-horizon forecasting."""

from .errors import (
    DomainError,
    EstimationError,
    InputError,
    LfphillipsError,
    ParseError,
    RetrievalError,
)
from .series import AnnualSeries, align, cumulate, log_growth, moving_average_3, shift
from .estimate import (
    FitResult,
    LinkSpec,
    Predictor,
    cumulative_fit,
    fit,
    fit_piecewise,
    ols_fit,
    original_phillips,
    predict,
    scan_break,
    scan_lag,
)
from .diagnose import AdfResult, adf_test, r_squared, residual_sigma, t_pvalue
from .forecast import (
    MODEL_REGISTRY,
    ForecastResult,
    ModelRegistryEntry,
    Scenario,
    build_scenario,
    forecast_inflation,
    forecast_report,
    forecast_unemployment,
)
from .ingest import (
    DatasetManifest,
    RemoteDescriptor,
    fetch_remote,
    load_manifest,
    load_series,
    participation_labor_force,
    read_csv_series,
)

__version__ = "0.1.0"
