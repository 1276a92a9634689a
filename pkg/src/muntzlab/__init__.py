"""
muntzlab
========

Numerical toolkit for Muntz polynomials on lacunary and quasi-lacunary
spectra: spectrum validation, weighted quadrature, measures with power-law
tails, empirical inequality brackets and embedding diagnostics.
"""

from .embeddings import (
    EmbeddingProblem,
    double_integral_condition,
    embedding_constant_search,
    embedding_ratio,
    moment_series,
    schur_kernel_sums,
)
from .errors import (
    AccuracyError,
    BlockTooLargeError,
    DegenerateFitError,
    DegenerateInputError,
    DomainError,
    DuplicateExponentError,
    InputError,
    MembershipError,
    MuntzLabError,
    NotIncreasingError,
    PreconditionError,
    RatioCollapseError,
    SpectrumError,
    TruncationError,
    UnsupportedMeasureError,
)
from .measure import (
    Atomic,
    CantorSelfSimilar,
    JacobiWeight,
    PowerWeight,
    TailEnvelope,
    beta_class_fit,
    moment,
    tail,
)
from .poly import MuntzPolynomial, block_decompose, sup_norm
from .quad import DEFAULT_CONFIG, QuadratureConfig, beta_function, integrate_weighted
from .reports import Bracket, CheckReport, RatioReport, SeriesDiagnosis
from .spectrum import BlockSpectrum, generate_lacunary, generate_quasi_lacunary, validate
from .typing import Verdict


__title__ = "muntzlab"
__version__ = "1.0.0"
__license__ = "MIT"
__all__ = (
    "DEFAULT_CONFIG",
    "AccuracyError",
    "Atomic",
    "BlockSpectrum",
    "BlockTooLargeError",
    "Bracket",
    "CantorSelfSimilar",
    "CheckReport",
    "DegenerateFitError",
    "DegenerateInputError",
    "DomainError",
    "DuplicateExponentError",
    "EmbeddingProblem",
    "InputError",
    "JacobiWeight",
    "MembershipError",
    "MuntzLabError",
    "MuntzPolynomial",
    "NotIncreasingError",
    "PowerWeight",
    "PreconditionError",
    "QuadratureConfig",
    "RatioCollapseError",
    "RatioReport",
    "SeriesDiagnosis",
    "SpectrumError",
    "TailEnvelope",
    "TruncationError",
    "UnsupportedMeasureError",
    "Verdict",
    "beta_class_fit",
    "beta_function",
    "block_decompose",
    "double_integral_condition",
    "embedding_constant_search",
    "embedding_ratio",
    "generate_lacunary",
    "generate_quasi_lacunary",
    "integrate_weighted",
    "moment",
    "moment_series",
    "schur_kernel_sums",
    "sup_norm",
    "tail",
    "validate",
)
