#pragma once

#include <complex>
#include <vector>

#include "nonloc/common.hpp"

namespace nonloc {

using Complex = std::complex<double>;

/// Pure state of a composite system, stored as a dense amplitude vector.
///
/// Basis conventions, fixed once for the whole library:
///  - basis index 0 is the sigma_z eigenvector with eigenvalue +1 (written
///    "+"), index 1 the eigenvalue -1 eigenvector ("-");
///  - party A always owns the slow (leftmost) tensor index, so for a
///    bipartite state amplitude(a, b) lives at a * dim_b + b.
struct StateVector {
    std::vector<int> dims;           // per-party local dimensions
    std::vector<Complex> amplitudes; // length = product of dims

    int total_dim() const;
    /// Throws ValidationError unless the amplitudes are finite, of the
    /// right length, and normalized within kEpsNorm.
    void validate() const;
};

/// Dense square complex matrix, expected Hermitian.
struct Operator {
    int dim = 0;
    std::vector<Complex> entries; // row-major, dim x dim

    Complex at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
    Complex& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }

    void validate_hermitian() const;
};

/// Complete projective measurement: orthogonal projectors summing to the
/// identity. `labels[k]` is the outcome index projector k reports; labels
/// are 0-based outcome indices, with 0 standing for the +1 eigenvalue in
/// binary (+/-) scenarios.
struct ProjectiveMeasurement {
    int dim = 0;
    std::vector<Operator> projectors;
    std::vector<int> labels;

    void validate() const;
    /// Largest label plus one; the minimal outcome-set size this
    /// measurement needs.
    int max_label() const;
};

Operator identity_op(int dim);
Operator op_add(const Operator& a, const Operator& b);
Operator op_sub(const Operator& a, const Operator& b);
Operator op_mul(const Operator& a, const Operator& b);
Operator op_scale(Complex s, const Operator& a);
std::vector<Complex> op_apply(const Operator& op, const std::vector<Complex>& v);

/// Kronecker product of states; dims concatenate, party A slow.
StateVector tensor_state(const StateVector& a, const StateVector& b);

/// Kronecker product of operators under the same index convention.
Operator tensor_op(const Operator& a, const Operator& b);

// sigma_x, sigma_y, sigma_z and the 2x2 identity.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// Spin observable n . sigma for a unit direction n; eigenvalues +/-1.
Operator bloch_observable(double nx, double ny, double nz);

/// The same observable as a two-outcome measurement: projector (I + n.sigma)/2
/// labeled 0 (eigenvalue +1) and (I - n.sigma)/2 labeled 1 (eigenvalue -1).
ProjectiveMeasurement bloch_measurement(double nx, double ny, double nz);

/// Born rule: probability that each party's measurement reports the given
/// outcome label. `outcome[i]` must appear among per_party[i].labels.
double outcome_probability(const StateVector& state,
                           const std::vector<ProjectiveMeasurement>& per_party,
                           const std::vector<int>& outcome);

/// <psi| O_1 x ... x O_n |psi> for per-party observables with +/-1 spectrum.
/// The spectrum is the caller's responsibility (bloch_observable guarantees
/// it); values outside [-1, 1] are rejected.
double expectation(const StateVector& state, const std::vector<Operator>& observables);

}  // namespace nonloc
