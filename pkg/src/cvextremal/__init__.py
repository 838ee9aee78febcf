"""Extremal entanglement and mixedness of continuous-variable Gaussian states."""
__version__ = "0.1.0"

from .errors import ConfigError, DomainError, InvalidMatrixError, NumericError
from .symplectic import (StandardForm, is_physical, symplectic_spectrum, to_standard_form,
                         two_mode_spectrum_closed_form, wigner_eval)
from .entropy import VON_NEUMANN, g_p, s_p, s_p_bounds_at_purity, s_renyi
from .entanglement import (EntanglementReport, classify_ppt, epr_correlation, epr_minimized,
                           log_negativity, ppt_spectrum)
from .invariants import (InvariantCoordinates, SeparabilityClass, classify_purities,
                         coords_from_state, delta_bounds, standard_form_from_coords)
from .extremal import (ExtremalStatePair, en_extremal_at_entropy, en_extremal_p2, glems,
                       gmemms, gmems)
from .nodal import NodalPoint, kappa_p, nodal_entropy, nodal_mu, np_dp_ratio
from .models import (ReservoirSpec, SqueezedThermalSpec, beam_splitter_glems,
                     dissipative_evolve, entanglement_death_time, squeezed_thermal,
                     thermal_purity_from_temperature)
from .kernels import BACKEND
