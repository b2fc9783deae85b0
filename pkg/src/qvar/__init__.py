"""qvar: exact variational principles on finite and catalog quasi-uniform spaces."""

from .extended import INF, Infinity, to_ext
from .spaces import (
    DimensionError,
    FQuasiGauge,
    HypothesisError,
    PointSet,
    QuasiPseudometric,
    QVarError,
    validate_f_quasi_gauge,
    validate_quasi_pseudometric,
)
from .instance import Bivariate, Instance, Objective, SetValuedMap, make_instance
from .order import PhiOrder, leq_phi, lower_section, minimal_element
from .topology import (
    LassoSequence,
    classify_semicontinuity,
    converges_to,
    is_left_k_cauchy,
    is_right_k_cauchy,
    limit_set,
    separation_class,
)
from .certificates import Certificate, DanglingReference
from .principles import (
    ScalingSpec,
    arutyunov_minimize,
    caristi_fixed_point,
    ekeland_point,
    ekeland_scaled,
    equivalence_witness,
    oettli_thera,
    takahashi_minimize,
)
from .iteration import EtaSpec, eta_iterate, gelman_reduce
from .oracle import verify_certificate
from .generate import generate_random_instance, twin_instance

__version__ = "0.1.0"
