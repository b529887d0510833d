"""Combinatorics and homological computations for string almost gentle algebras."""
from .bondarenko import (YMatrix, YPoset, build_poset, functor_F_mor, functor_F_obj, rho,
                         rho_band, y_hom_space, y_isomorphic)
from .complexes import (IndecPoly, ProjComplex, band_complex, bottom_kernel, brutal_truncation,
                        direct_sum, string_complex, translate, verify_complex)
from .errors import (AmbiguityError, ParseError, SagError, SolverBoundError,
                     UnsupportedAlgebraError, ValidationError)
from .field import QQ, PrimeField, field_from_spec
from .fixtures import fixture
from .linhom import are_isomorphic, end_algebra, hom_space, is_indecomposable
from .quiver import BoundQuiver, Path, classify, load_bound_quiver, unique_maximal_arrow_property
from .resolutions import (cyclic_arrows_Qc, cyclic_arrows_Qc_star, cyclic_paths_Pac,
                          global_dimension, kernel_structure, min_left_annihilators, resolve,
                          special_set_membership, sufficient_infinite_gldim)
from .walks import GenWalk, Letter, enumerate_generalized_bands, enumerate_generalized_strings, parse_walk

__version__ = "0.1.0"
