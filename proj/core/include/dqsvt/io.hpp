#pragma once

// Line-oriented text formats. Every index in a file is one-based. Blank
// lines and anything after '#' are ignored.
//
//   matrix       M N nnz s            then nnz lines  i j re im  in ascending (i, j)
//   vector       N                    then N lines    re im
//   polynomial   EVEN 2d              then d+1 lines  a_0 a_2 ... a_2d
//                EVEN_CHEBYSHEV 2d    then d+1 lines  c_0 ... c_d  (coefficients of T_0, T_2, ..., T_2d)
//   hamiltonian  n k m                then per term a line of qubit indices and
//                                     2^j rows of 2^j  re im  pairs
//   circuit      n p m                then m gate lines  NAME w [w2]
//                                     or  MAT2 w  re im x4  /  MAT4 w1 w2  re im x16,
//                                     and optionally  OUT w  for the output wire

#include <dqsvt/access.hpp>
#include <dqsvt/hamiltonian.hpp>
#include <dqsvt/kitaev.hpp>
#include <dqsvt/polynomial.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace dqsvt {

[[nodiscard]] SparseMatrix parse_matrix(std::istream& in);
[[nodiscard]] std::vector<Complex> parse_vector(std::istream& in);
[[nodiscard]] EvenPolynomial parse_polynomial(std::istream& in);
[[nodiscard]] LocalHamiltonian parse_hamiltonian(std::istream& in);
[[nodiscard]] Circuit parse_circuit(std::istream& in);

void write_matrix(std::ostream& out, const SparseMatrix& a);
void write_vector(std::ostream& out, std::span<const Complex> v);
void write_polynomial(std::ostream& out, const EvenPolynomial& p);
void write_hamiltonian(std::ostream& out, const LocalHamiltonian& h);
void write_circuit(std::ostream& out, const Circuit& c);

/// File wrappers; InvalidInput when the file cannot be opened, ParseError
/// (with the line number) for malformed content.
[[nodiscard]] SparseMatrix load_matrix(const std::filesystem::path& path);
[[nodiscard]] std::vector<Complex> load_vector(const std::filesystem::path& path);
[[nodiscard]] EvenPolynomial load_polynomial(const std::filesystem::path& path);
[[nodiscard]] LocalHamiltonian load_hamiltonian(const std::filesystem::path& path);
[[nodiscard]] Circuit load_circuit(const std::filesystem::path& path);

void save_matrix(const std::filesystem::path& path, const SparseMatrix& a);
void save_vector(const std::filesystem::path& path, std::span<const Complex> v);
void save_polynomial(const std::filesystem::path& path, const EvenPolynomial& p);
void save_hamiltonian(const std::filesystem::path& path, const LocalHamiltonian& h);
void save_circuit(const std::filesystem::path& path, const Circuit& c);

}  // namespace dqsvt
