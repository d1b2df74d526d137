"""Self-orthogonal code expansion toolkit.

Grow a self-orthogonal linear code over GF(p^m) one dimension at a
time, under either the plain or the conjugate inner product, until the
dimension hits its forced ceiling; decide the one genuinely conditional
case; and cross-check everything against exhaustive enumeration at
small scale.
"""

from .code import (
    DEFAULT_DISTANCE_CAP,
    CodePair,
    LinearCode,
    dual_pair,
    zero_code,
)
from .errors import (
    CapExceededError,
    DistanceUndefinedError,
    GramSchmidtBreakdown,
    MixedFieldError,
    NoExpansionError,
    PreconditionError,
    SoxpandError,
)
from .expand import (
    BRANCHES,
    DEFAULT_ORACLE_CAP,
    BoundaryVerdict,
    ExpansionReport,
    Tower,
    best_expansion,
    enumerate_expansions,
    expand_euclidean,
    expand_hermitian,
    random_self_orthogonal,
    remark_quad_expand,
    selfdual_obstruction,
    tower,
    try_expand_boundary,
)
from .gf import DEFAULT_FIELD_CAP, FieldCtx, make_field, parse_field_name
from .linalg import (
    FORMS,
    Form,
    MatF,
    VecF,
    extend_basis,
    gram_schmidt,
    in_rowspace,
    inner,
    mat_from_vecs,
    nullspace,
    rref,
)
from .cli import parse_code_file, write_code_file

__version__ = "0.1.0"

__all__ = [
    "BRANCHES",
    "BoundaryVerdict",
    "CapExceededError",
    "CodePair",
    "DEFAULT_DISTANCE_CAP",
    "DEFAULT_FIELD_CAP",
    "DEFAULT_ORACLE_CAP",
    "DistanceUndefinedError",
    "ExpansionReport",
    "FORMS",
    "FieldCtx",
    "Form",
    "GramSchmidtBreakdown",
    "LinearCode",
    "MatF",
    "MixedFieldError",
    "NoExpansionError",
    "PreconditionError",
    "SoxpandError",
    "Tower",
    "VecF",
    "best_expansion",
    "dual_pair",
    "enumerate_expansions",
    "expand_euclidean",
    "expand_hermitian",
    "extend_basis",
    "gram_schmidt",
    "in_rowspace",
    "inner",
    "make_field",
    "mat_from_vecs",
    "nullspace",
    "parse_code_file",
    "parse_field_name",
    "random_self_orthogonal",
    "remark_quad_expand",
    "rref",
    "selfdual_obstruction",
    "tower",
    "try_expand_boundary",
    "write_code_file",
    "zero_code",
]
