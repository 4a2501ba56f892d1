#ifndef QPSUM_FILEIO_HPP
#define QPSUM_FILEIO_HPP

// JSON file formats.
//
// Matrix input:
//   {"dim": 2, "complex": false, "data": [[1, 0], [0, 2]]}
//   {"dim": 2, "complex": true,  "data": [[[1, 0], [0, 1]], [[0, -1], [2, 0]]]}
// Spectrum input (each value stands for an eigenvalue of x (x) 1):
//   {"spectrum": [0.5, -0.1]}      or simply      [0.5, -0.1]
//
// Decomposition output: header (n, m, a, b, F labels, eigenvalues, optional
// basis rotation) and, for every pair, the block rules of Q and P. A rule is
//   {"source": [k, residue, modulus], "target": [k, residue, modulus],
//    "mat": [m11, m12, m21, m22]}.
// Doubles are written in shortest round-trip form, so a save/load cycle is
// bit-exact and equal inputs give byte-identical files.

#include "qpsum/blockops.hpp"
#include "qpsum/decomposer.hpp"
#include "qpsum/linalg.hpp"

#include <string>

namespace qpsum {

inline constexpr double kMatrixFileHermitianTol = 1e-10;

/// Parses a matrix or spectrum document into a spectral presentation.
/// Raises ErrorKind::Format on bad structure or non-Hermitian data.
SpectralPresentation parse_spectral_input(const std::string &text,
                                          double cluster_tol = 1e-10);
SpectralPresentation load_spectral_input(const std::string &path,
                                         double cluster_tol = 1e-10);

HermitianMatrix parse_matrix(const std::string &text);
std::string matrix_to_json(const CMatrix &m);

std::string decomposition_to_json(const Decomposition &d);
/// Rebuilds the decomposition and re-derives its sector plan; raises
/// ErrorKind::Format when the header disagrees with the rebuilt constants.
Decomposition decomposition_from_json(const std::string &text);

void save_decomposition(const Decomposition &d, const std::string &path);
Decomposition load_decomposition(const std::string &path);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

} // namespace qpsum

#endif
