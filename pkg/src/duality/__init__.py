from .pair import (
    PairingConvention, closed_form_pair, closed_form_check, resolve_pairing_convention,
    drt_pair, perfection_check, quantum_poisson_pair, scaled_poisson_pair, duality_gram_check
)

from .double import double_multiply, project_to_quotient, verify_cross_relation
from .forms import FormBasisMonomial, expand, membership, materialize, form_basis
from .dualform import (
    DualFunctional, nu_embed, dual_coproduct, dual_antipode, dual_counit, reconstruct_series,
    reconstruct_tensor, dual_pseudobasis, compute_structure_constants, umbral_congruence_check,
    function_form_membership
)
from .special import (
    SpecializedElement, specialize_element, classical_limit_check, poisson_cobracket,
    FrobeniusContext, frobenius_apply, frobenius_property_checks, function_frobenius_check
)
from .sl2 import SL2FunctionElement, sl2_embed_xi, sl2_series_check
