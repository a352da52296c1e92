from .errors import KernelError
from .qcoeff import (
    ONE, ZERO, q, coerce, qpow, bar, q_number, q_factorial, q_binomial,
    is_laurent, render_scalar, CyclotomicScalar, specialize_scalar
)

from .cartan import CartanDatum, build_cartan, load_datum
from .monomial import PBWMonomial
from .algebra import Algebra, AlgebraElement, get_algebra
from .hopf import TensorElement, coproduct, counit, antipode, check_hopf_axioms
from .oracle import serre_oracle_normal_form, oracle_check
