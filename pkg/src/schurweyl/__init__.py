"""Exact verification of Schur-Weyl dualities for GL(m) and GL(m|n)."""

from .commutant_engine import (Echelon, SubspaceBasis, algebra_closure, commutant, rref,
                        subspace_contains, subspace_equal)
from .duality import CaseSpec, check_first_duality, check_second_duality, run_case, run_suite
from .matrices import OperatorMatrix
from .oracles import a_dim, a_dim_super, dim_oracles
from .scalars import GF, QQ, FieldSpec, delta_scalar, make_field, parse_field
from .tensor_action import (TensorSpaceSpec, diagram_operator, divided_power, dist_generators,
                            invariant_element, left_matrix_unit, parity, polarization_check,
                            right_generators, right_tau)
from .walled_brauer import (DiagramAlgebraElement, WalledDiagram, algebra_multiply, all_diagrams,
                            flip, multiply_diagrams, tau_generator, verify_generator_relations)

__version__ = "0.1.0"
