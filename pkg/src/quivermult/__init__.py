"""Exact computations with quiver varieties with multiplicities.

Everything is computed over the Gaussian rationals, so all contracts in the
package (moment levels, orbit membership, symplectic pairings, Dynkin
classification) are decided exactly.
"""

from .cartan import (CartanData, MomentLevel, cartan_matrix, reflect_level,
                     residue_pairing)
from .dynkin import dynkin_type, quiver_type, star_quiver
from .errors import QuivermultError
from .linalg import Matrix, full_rank_factor, kernel_basis, rank
from .normalization import (NormalizedBundle, OrbitCoords,
                            assemble_orbit_element, denormalize_point,
                            extract_orbit_coords, normalize_point,
                            normalize_quiver, phi_weyl_check,
                            pole_vertex_info)
from .quiver import Arrow, Quiver
from .reflection import ReflectionResult, apply_weyl_word, reflect_vertex
from .representation import (RepPoint, check_level, gauge_act, is_stable,
                             isomorphic_points, local_principal, moment_map,
                             pole_pair, reorient_point, sample_level_point,
                             sample_point, symplectic_pair)
from .scalars import GaussianRational, Jet
from .systems import (MeromorphicSystem, PoleData, Realization, SplitType,
                      double_pole_witness, is_irreducible_system,
                      middle_convolution, minimal_realization,
                      point_to_system, scalar_shift_system, system_to_point,
                      systems_conjugate)
from .truncated import (MatPoly, PrincipalPart, coadjoint,
                        principal_projection, spectral_split, trunc_inv,
                        trunc_mul)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
