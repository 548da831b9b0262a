"""Complex Hadamard matrices, their spectra, and the Gauss sums behind them."""
from .exactalg import (
    CyclotomicSum,
    ExponentMatrix,
    Permutation,
    exact_product,
    fourier_matrix,
    is_dephased,
    is_hadamard,
    multiplicative_permutation,
    permutation_matrix_action,
    trace_exact,
)
from .spectra import ConvergenceError, Spectrum, eigenvalues, spectrally_equivalent, spectrum_of

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CyclotomicSum",
    "ExponentMatrix",
    "Permutation",
    "Spectrum",
    "eigenvalues",
    "exact_product",
    "fourier_matrix",
    "is_dephased",
    "is_hadamard",
    "multiplicative_permutation",
    "permutation_matrix_action",
    "spectrally_equivalent",
    "spectrum_of",
    "trace_exact",
]
