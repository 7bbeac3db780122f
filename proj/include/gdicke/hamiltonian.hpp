#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/model.hpp"

namespace gdicke {

enum class model_kind { dicke, tavis_cummings };

// Coupling-independent sparsity pattern: off-diagonal values are
// coupling_value * unit / sqrt(N_a), so one pattern serves a whole sweep.
struct hamiltonian_pattern {
    std::size_t dim = 0;
    model_kind kind = model_kind::dicke;
    std::uint64_t basis_id = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<std::int32_t> coupling;  // -1 on the diagonal
    std::vector<double> unit;            // diagonal energy or ladder factor
};

// Compressed-row symmetric matrix; each row stores both triangles.
struct sparse_hamiltonian {
    std::size_t dim = 0;
    model_kind kind = model_kind::dicke;
    std::uint64_t basis_id = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }
    double at(std::size_t r, std::size_t c) const;
    bool symmetric() const;
};

double diagonal_energy(std::span<const int> state, const model& m);
double transition_amplitude(std::span<const int> u, std::span<const int> v, const model& m, model_kind kind);

hamiltonian_pattern build_pattern(const basis& b, const model& m, model_kind kind);
hamiltonian_pattern build_pattern_serial(const basis& b, const model& m, model_kind kind);
sparse_hamiltonian instantiate(const hamiltonian_pattern& p, const model& m);

sparse_hamiltonian assemble(const basis& b, const model& m, model_kind kind);
sparse_hamiltonian assemble_serial(const basis& b, const model& m, model_kind kind);
// Row-major dense matrix from pairwise amplitudes; reference for small bases.
std::vector<double> assemble_dense(const basis& b, const model& m, model_kind kind);

void matvec(const sparse_hamiltonian& h, const double* x, double* y);
void matvec_serial(const sparse_hamiltonian& h, const double* x, double* y);

void write_coo(std::ostream& os, const sparse_hamiltonian& h);

}  // namespace gdicke
