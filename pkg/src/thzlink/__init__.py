"""THz in-package wireless channel modeling.

Dielectric two-ray propagation loss, molecular absorption from
spectroscopic line catalogs, link budgets, noise temperature, and
water-filling-optimal Shannon capacity, with one-axis sweep studies over
frequency, temperature, pressure, and distance.
"""

from .absorption import (AbsorptionBreakdown, Attenuation, Environment,
                         kappa_over_grid, line_absorption, lorentz_half_width,
                         maa, medium_kappa, shifted_resonance,
                         spectral_line_shape, vvw_line_shape)
from .capacity import (BandPlan, NoiseModel, PowerAllocation,
                       approx_capacity_small_antenna, channel_capacity,
                       flat_allocation_capacity, molecular_noise_temperature,
                       noise_model, noise_power, psi_coefficients,
                       water_filling)
from .errors import (ApproximationRegimeError, CatalogParseError,
                     ChannelModelError, ConfigError, DomainError,
                     TwoRayNullError, ValidationError)
from .propagation import (LinkBudget, LinkGeometry, PathLossReport,
                          dielectric_path_loss, link_budget_db,
                          phase_difference, phase_velocity, total_path_loss)
from .spectro import (Medium, SpectralLine, load_medium, parse_line_catalog,
                      serialize_line)
from .sweep import (Scenario, SweepResult, sweep_capacity_vs_distance,
                    sweep_capacity_vs_frequency, sweep_pathloss_vs_frequency,
                    sweep_vs_pressure, sweep_vs_temperature)

__version__ = "0.1.0"
