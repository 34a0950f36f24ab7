"""Iterated HRS tilting towers and right t-trees for classical tilting modules over bound quiver algebras."""
from .exactlin import GF, QQ, Field
from .quiveralg import AlgebraError, BoundQuiverAlgebra, Quiver, build_algebra, certify_finite_gldim
from .modcat import ModuleMorphism, ProjModule, Representation, ext_dim, hom_basis, simple
from .derivedcat import ChainMap, Complex, DObject, derived_hom_basis, module_object, shift
from .tilting import TiltingReport, rhom_dims, static_profile, verify_tilting
from .hrs import TStructureTower, VerificationError
from .ttree import TTree, build_ttree, serialize_tree, to_dot
from .compat import find_incompat_witness, left_compat_scan, right_compat_scan
from .formats import parse_algebra_file, parse_module, parse_module_file, parse_object
from .estimator import TTreeTransformer

__version__ = "0.1.0"
