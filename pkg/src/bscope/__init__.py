"""bscope: exact boundary probes on Cayley-graph windows.

Library layout follows the pipeline: groups (specs, word metrics, balls),
metric (windows, products, horofunctions, hyperbolicity defect), rays
(truncations and the three ray clauses), boundary (divergence certificates,
profiles, equivalences, quotient, continuity), action (translations,
means, amenability defects), cli (report front end).
"""

__version__ = "0.1.0"

from .action import (
    DefectScan,
    EquivarianceReport,
    MeanFamily,
    ProbabilityMeasure,
    act_on_sample,
    defect_decay_scan,
    equivariance_check,
    mean_defect,
    pushforward,
    tv_distance,
)
from .boundary import (
    BoundarySample,
    ContinuityReport,
    DivergenceCertificate,
    ExtendedProductReport,
    HorofunctionProfile,
    HorofunctionWitness,
    MetricEquivalenceReport,
    QuotientPartition,
    continuity_probe,
    converges_to_infinity,
    default_probes,
    extended_product,
    gromov_equiv,
    horofunction_profile,
    metric_equiv,
    quotient_partition,
    witness_large_horofunction,
)
from .errors import (
    BscopeError,
    ConstructionError,
    DomainError,
    InconclusiveError,
    OutOfWindowError,
    ParseError,
    ResourceCapError,
    UnsupportedRayError,
)
from .groups import (
    CayleyBall,
    FreeGroupSpec,
    GroupElement,
    GroupSpec,
    LatticeSpec,
    act,
    build_ball,
    element_norm,
    on_geodesic,
    parse_group_spec,
    sphere,
    word_distance,
    word_norm,
)
from .halfexact import HalfExact
from .metric import (
    DeltaReport,
    MetricWindow,
    gromov_product,
    horofunction,
    min_delta,
    product_horofunction_gap,
)
from .rays import (
    ClassificationReport,
    ExplicitTable,
    FreeTail,
    LatticePath,
    RayTruncation,
    check_almost_geodesic,
    check_geodesic,
    check_weakly_geodesic,
    format_ray_spec,
    materialize_ray,
    parse_ray_spec,
)
