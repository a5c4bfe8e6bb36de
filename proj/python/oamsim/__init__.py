"""Simulator for plasmon-assisted transmission of OAM-entangled photon pairs.

Thin Python layer over the C++ core: qutrit states and entanglement measures,
the mode-dependent lossy channel of a perforated metal plate, displaced
fork-hologram detection, dip-scan simulation, entanglement concentration, and
the JSON config/report pipeline.
"""

from ._oamsim import (  # noqa: F401
    BipartitePureState,
    BoundaryMinimumError,
    CoincidenceMatrix,
    ConfigError,
    DegenerateCurveError,
    DensityOperator,
    DetectionProjector,
    DimensionMismatchError,
    DomainError,
    EntanglementReport,
    Error,
    FilterDesign,
    LossChannel,
    ModeSpectrum,
    Photon,
    ReferenceState,
    RunConfig,
    ScanCurve,
    ScanSetup,
    UnreachableTargetError,
    ZeroNormError,
    __version__,
    apply_channel,
    apply_channel_mixed,
    bethe_baseline,
    calibrate_noise,
    canonical_config,
    coincidence_prob,
    config_hash,
    design_concentration_filter,
    displaced_projector,
    find_dip,
    locate_dip,
    make_reference_state,
    max_entangled_state,
    mix_with_white_noise,
    mode_matrix,
    mode_projector,
    normalize,
    projector_from_coefficients,
    reproduce_json,
    sample_counts,
    scan_dip,
    scan_expected,
    schmidt_decompose,
    uniform_grid,
    visibility,
    write_reproduction,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
