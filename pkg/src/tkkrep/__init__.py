"""Exact computations for TKK algebras of Jordan superalgebras and their Fock models."""
from .algebra import (OperatorSubalgebra, StructureSuperalgebra, check_jordan, check_lie,
                      derivations, find_unit, inner_derivations, istr_algebra, left_mult,
                      make_jgl, make_jpe, make_jq, make_rank1, str_algebra)
from .classical import make_gl, make_pe, make_pq, make_q
from .errors import (ContextMismatch, DivisionByZero, EmptyAlgebra, InvalidCharacter,
                     InvalidRank, JordanAxiomFailure, NotUnital, ParityViolation, SchemaError,
                     SingularGram, TKKError)
from .fock import (GramData, IntertwinerC, QuotientModule, ReproducingKernel, VLambda,
                   bessel_fischer, find_v_lambda, gram, pi_of_C, pi_of_C_inv, quotient_dims,
                   reproducing_kernel, sb_forward, sb_inverse, segal_bargmann,
                   sesquilinear_superhermitian_report)
from .io import dump_algebra, load_algebra
from .linalg import LinearMap, SuperVectorSpace, null_space, rref, solve_linear
from .realisation import (BesselFamily, Character, bessel, bessel_supercommute_check,
                          character_space, pi_lambda, rho_lambda, verify_homomorphism)
from .scalar import Scalar, declare_parameters, parse_scalar
from .superpoly import (DiffOperator, ExpPolynomial, SuperPolynomial, TruncatedSeries,
                        VariableContext)
from .tkk import (TKKAlgebra, cayley, tkk_construct, verify_phi_periplectic, verify_phi_queer)

__version__ = "0.1.0"
