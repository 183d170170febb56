"""dqchaos: generators of open quantum dynamics and their chaos diagnostics.

Subpackages by role:
  opcore       exact Lindblad/CPTP constructions, spin and bosonic operators
  ensembles    seeded samplers for all random-generator ensembles
  spectra      spacings, spacing ratios, form factors, condition numbers
  supports     analytic spectral supports (elliptic machinery included)
  symmetry     unitary/antiunitary symmetry checks and sector decomposition
  kicked_top   dissipative kicked top: map, sectors, explicit eigenvalues
  kerr_cavity  quantum-jump trajectories, waiting times, Lyapunov exponents
  serialize    CSV-with-JSON-header file formats
  cli          batch runner and figure-reproduction presets
"""

__version__ = "0.1.0"

from . import ensembles, kerr_cavity, kicked_top, opcore, serialize, spectra, supports, symmetry

__all__ = ["ensembles", "kerr_cavity", "kicked_top", "opcore", "serialize",
           "spectra", "supports", "symmetry", "__version__"]
