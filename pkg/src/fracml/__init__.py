"""fracml: Mittag-Leffler machinery, one-sided stable laws, and
subordination solvers for the fractional Fokker-Planck equation.

The package evaluates the Mittag-Leffler function by series, integral
and moment-substitution routes, the one-sided stable density by three
cross-validated representations, the deformed convolution calculus that
governs products of ML functions, and closed-form/numeric solutions and
moments for a catalog of Fokker-Planck generators under fractional time.
"""

from .config import RunConfig, load_config
from .convolve import (
    GCoeff,
    alpha_power_by_moments,
    alpha_power_half_closed,
    alpha_power_sum,
    ml_product_kernel,
    product_identity_residual,
)
from .errors import (
    BlowUpError,
    CancellationError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    FracmlError,
    IntegrandError,
    MissingMomentError,
    PoleError,
    QuadratureError,
    RangeOverflowError,
    RegimeError,
    SubdivisionLimitError,
    TailError,
)
from .mlf import (
    MLParams,
    MLResult,
    fractional_ode_residual,
    laplace_identity_residual,
    ml_integral,
    ml_point,
    ml_series,
    ml_umbral,
    ml_value,
)
from .moments import (
    TruncationWarning,
    frac_heat_poly,
    heat_poly,
    moment_diffusion,
    moment_diffusion_damping,
    moment_dilation,
    moment_squared_dilation,
    moment_squeeze_ratio,
    numeric_moment,
)
from .quadrature import QuadSpec, integrate_finite, integrate_semi_infinite
from .solver import (
    Advection,
    DiffusionDamping,
    Diffusion,
    Dilation,
    DriftReaction,
    FieldSlice,
    InitialCondition,
    SquaredDilation,
    Squeeze,
    evaluate_slice,
    flow_integrate,
    solve_advection,
    solve_diffusion_direct,
    solve_fractional,
    solve_ordinary,
)
from .specfun import (
    HypArgs,
    SeriesSum,
    alpha_binomial,
    delta_sequence,
    erf,
    erfc,
    gamma,
    gamma_reflection,
    hyp_pfq,
)
from .stable import (
    RationalAlpha,
    StieltjesMoment,
    density,
    density_angular,
    density_rational,
    density_series,
    sample_levy,
    stieltjes_moment,
    subordination_kernel,
)

__version__ = "0.1.0"
