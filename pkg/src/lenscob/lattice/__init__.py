from .search import EmbeddingResult, find_embedding
from .subsets import (
    SEED,
    ComplementBasis,
    ContractionError,
    LinearLatticeSpec,
    NotLinearError,
    VectorSubset,
    I_of,
    c_of,
    canonical_form,
    contract,
    enumerate_expansions,
    expand_minus2_final,
    expansions,
    irreducible_components,
    orthogonal_complement,
    spec_of,
    verify_dual_complements,
)
