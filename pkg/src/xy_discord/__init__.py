"""Classical correlations, discord and their decoherence dynamics for
two-site states of the transverse-field XY chain."""

from .analysis import (DynamicsType, PscMethod, QCPEstimate, SuddenChange, Trajectory, classify_dynamics,
                       discord_decay_profile, psc_derivative, qcp_estimate, sudden_change_point, trajectory)
from .channels import Channel, evolve_closed_form, evolve_kraus, p_of_t
from .errors import (DegenerateState, DomainEdge, FormViolation, MultiRoot, NoPeak, PositivityViolation,
                     QuadratureFailure, UnsupportedRange, XYDiscordError)
from .xstate import (CCoeffs, XState, c_representation, classical_correlations, discord, discord_oracle,
                     eigenvalues, entropies, mutual_information, reduced_density_matrix, x_representation)
from .xy_model import (INFINITE, ModelParams, QuadratureConfig, dispersion, g_coefficient, spin_correlation,
                       transverse_magnetization)

__version__ = "0.1.0"
