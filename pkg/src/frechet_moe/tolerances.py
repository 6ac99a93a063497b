"""Numerical tolerance constants used by the spaces and validators."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # relative Frobenius asymmetry accepted for a "symmetric" matrix
    symmetry: float = 1e-10
    # relative unit-norm slack for sphere points
    unit_norm: float = 1e-12
    # eigenvalues above -psd_clip * max|eig| are treated as zero for PSD square roots
    psd_clip: float = 1e-10
    # below this distance two points are considered coincident by the median solvers
    coincidence: float = 1e-12
    # antipodal guard on the sphere, in radians below pi
    antipodal: float = 1e-9
    # arc length of the descent probe used by the line-search polish
    probe_step: float = 1e-6
    # relative objective decrease over one probe that counts as a descent direction
    probe_decrease: float = 1e-12


TOL = Tolerances()
