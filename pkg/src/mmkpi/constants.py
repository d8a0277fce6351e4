"""Physical constants. c is fixed at 2.998e8 m/s so hand checks are reproducible."""

SPEED_OF_LIGHT = 2.998e8  # m/s
BOLTZMANN = 1.380649e-23  # J/K
T0_KELVIN = 290.0
