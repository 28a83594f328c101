"""Candidate modular data from non-hyperbolic 3-manifolds.

Closed-form Chern-Simons values, adjoint torsions, and loop-operator trace
weights assemble candidate S/T data from three-fiber Seifert spaces and
Anosov torus bundles; the results are certified against independently built
premodular categories and a generic chain-complex torsion oracle.
"""

from .algebra import (
    PHASE_HALF,
    PHASE_ZERO,
    RationalPhase,
    chebyshev,
    mod2_kernel,
    mod2_rank,
    parity_exp_sum,
    phase_normalize,
)
from .catalog import (
    ModularData,
    ModularityReport,
    find_transparent,
    graded_product,
    soN2_adjoint,
    su2_level,
    tlj_data,
    verlinde_fusion,
)
from .pipeline import (
    AdmissibilityReport,
    CandidateData,
    Certificate,
    LoopOperator,
    admissibility_report,
    certify,
    sfs_candidate,
    torus_candidate,
    w_symbol,
)
from .seifert import (
    SeifertData,
    SfsCharacter,
    central_reps,
    cs_invariant,
    enumerate_characters,
    make_sfs,
    torsion,
    z2_homology_sphere,
)
from .torsion_engine import BasedChainComplex, TorsionResult, chain_torsion, multiplicativity_check
from .torus_bundle import (
    TorusCharacter,
    TorusMonodromy,
    build_adjoint_complex,
    enumerate_torus_characters,
    make_torus_bundle,
    torus_cs,
    torus_torsion,
)

__version__ = "0.1.0"
