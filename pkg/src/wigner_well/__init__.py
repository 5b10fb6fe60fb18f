"""Wigner distributions of the infinite square well.

Closed-form eigenstate and cross-term Wigner functions, Gaussian wave packets
evolved through their eigen-expansion, quadrature oracles, benchmark
distributions and CSV/PGM export.
"""
from .core import (
    STATIONARY,
    ConfigurationError,
    ConvergenceError,
    DomainError,
    GridError,
    PacketPlacementError,
    PhaseSpaceGrid,
    ShapeError,
    TimeScales,
    TruncationError,
    WellConfig,
    WellError,
    WignerField,
    make_grid,
    make_well_config,
)
from .eigenbasis import energy, momentum_density, overlap_p, overlap_x, phi, u
from .oracle import (
    QuadratureSpec,
    SlowTailWarning,
    marginal_p,
    marginal_x,
    overlap_functional,
    wigner_quadrature_p,
    wigner_quadrature_x,
)
from .packet import (
    CoefficientSet,
    GaussianPacketSpec,
    ImaginaryResidueError,
    beat_period,
    count_lumps,
    expansion_coefficients,
    fidelity,
    phi_t,
    psi,
    time_scales,
    wigner_field_packet,
    wigner_packet,
    wigner_packet_direct,
)
from .wigner import wigner_cross, wigner_eigen, wigner_field_eigen

__version__ = "0.1.0"
