"""Physical constants and unit conventions.

All device code works in {meV, nm, ns}. The two fixed constants below are the
single source of truth for every unit conversion; manifests snapshot this
table so output files are self-describing.
"""

# Coulomb constant e^2/(4 pi eps0), vacuum value.
COULOMB_EV_NM = 1.43996
COULOMB_MEV_NM = COULOMB_EV_NM * 1e3

# Reduced Planck constant.
HBAR_EV_S = 6.582119e-16
HBAR_MEV_NS = HBAR_EV_S * 1e12  # 1 eV*s = 1e12 meV*ns

# Static relative permittivity of GaAs, the host material. Overridable per
# device; this is only the default.
GAAS_RELATIVE_PERMITTIVITY = 12.9


def constants_table() -> dict:
    """Snapshot of the constants, for run manifests."""
    return {
        "coulomb_ev_nm": COULOMB_EV_NM,
        "hbar_ev_s": HBAR_EV_S,
        "gaas_relative_permittivity": GAAS_RELATIVE_PERMITTIVITY,
    }
