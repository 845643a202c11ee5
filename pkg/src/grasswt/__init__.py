"""Weight hierarchies of Grassmann codes over finite fields."""
from .gf import FieldElement, FieldSpec, field_from_q, field_new, parse_field
from .extalg import ExteriorVector, hodge_star, is_decomposable, rank2form, wedge
from .linalg import Subspace, gaussian_binomial
from .search import BACKEND, SearchConfig
from .lincode import Codeword, LinearCode, WeightReport, higher_weight, weight_distribution
from .grasscode import GrassmannCode, build_code, grassmann_points

__version__ = "0.1.0"
