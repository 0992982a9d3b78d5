"""Physical constants and reference conditions.

All values are SI unless stated otherwise. Pressure-dependent formulas in
this package take pressure in atm and normalize by ``P_REF``.
"""

# Avogadro constant [mol^-1]
AVOGADRO = 6.0221e23

# Boltzmann constant [J/K]
BOLTZMANN = 1.3806e-23

# Gas constant [m^3 atm / K / mol]
GAS_CONSTANT_ATM = 8.2051e-5

# Planck constant [J s]
PLANCK = 6.6262e-34

# Speed of light in free space [m/s]
LIGHT_SPEED = 2.9979e8

# Temperature at standard pressure [K]
T_STP = 273.15

# Reference temperature [K]
T_REF = 296.0

# Reference pressure [atm]
P_REF = 1.0

# 1 atm in kPa
ATM_IN_KPA = 101.325

# Wavenumber [cm^-1] to frequency [Hz]; also converts cm^-1/atm widths
# and shifts to Hz/atm.
WAVENUMBER_TO_HZ = 100.0 * LIGHT_SPEED
