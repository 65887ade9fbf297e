"""Electricity demand scenario engine for India.

Statistical business-as-usual daily projections downscaled to hourly
profiles, plus bottom-up cooling and electric-vehicle demand, emitted as
an 18-scenario CSV hierarchy (GDP growth x EV charging x cooling
efficiency).
"""

__version__ = "0.1.0"
