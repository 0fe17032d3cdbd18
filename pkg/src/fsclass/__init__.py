"""Frobenius-Schur indicators and real/complex/quaternionic classification
for finite-dimensional *-algebras and their dual coalgebras."""

from .algebra import (AntiAlgebraMap, DualStructureData, FDStarAlgebra,
                      RealForm, SeparabilityIdempotent, build_algebra,
                      check_cstar, is_positive_element,
                      real_form_from_conjugation, real_form_from_S,
                      separability_idempotent)
from .coalgebra import (Corepresentation, CoseparabilityIdempotent,
                        FDStarCoalgebra, compact_decompose, corep_indicator,
                        cqg_indicator, dualize, dualize_co, gamma, phi_module)
from .constructors import (GroupTable, GroupoidData, TableAlgebraData,
                           WeakHopfData, check_involution_perm, cyclic_group,
                           disjoint_union_groupoid, drinfeld_double,
                           group_algebra, group_from_permutations,
                           group_weak_hopf, groupoid_weak_hopf, haar_integral,
                           pair_groupoid, scheme_from_matrices, table_algebra,
                           table_indicator, twisted_indicator,
                           weak_hopf_indicator)
from .errors import AgreementFailure, FSClassError
from .indicators import (IndicatorReport, canonical_g, classify_sigma,
                         endo_real_dimension, fs_indicator_formula,
                         fs_indicator_trace, full_report)
from .linalg import DEFAULT_TOL, Tolerance
from .reps import (Representation, conjugate_representation, decompose,
                   dual_representation, intertwiners, regular_representation)

__version__ = "0.1.0"
