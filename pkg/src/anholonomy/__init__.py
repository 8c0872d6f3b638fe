"""Spectra, eigenstate permutations and geometric phases of hierarchical qubit circuits."""
from .circuits import CircuitParams, CycleSpec, QubitAxes, build_u, build_uY, build_UN
from .core import EigenFrame, Permutation, cycle_decompose, eig_unitary
from .errors import AnholonomyError, ParseError
from .holonomy import (HolonomyMatrix, HolonomyReport, gamma, holonomy_analytic,
                       holonomy_numeric, holonomy_numeric_N, invariants, winding_number)
from .spectral import (closed_form_sr, eigenangle_N, eigenvector_N, itinerary,
                       permutation_matrix, principal_number, sr_full)
from .subsetsum import SubsetSumInstance, decode, solve_subset_sum, weights

__version__ = "0.1.0"
