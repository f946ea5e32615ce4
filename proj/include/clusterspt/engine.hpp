#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "clusterspt/lattice.hpp"
#include "clusterspt/operator_sum.hpp"
#include "clusterspt/pauli.hpp"

namespace clusterspt {

/// Amplitudes of an L-qubit state. Basis index bit (L - j) holds site j, so site 1 is
/// the most significant bit: |b_1 b_2 ... b_L>.
class StateVector {
public:
    StateVector() = default;
    StateVector(int length, Eigen::VectorXcd amplitudes);

    static StateVector basis_state(int length, std::uint64_t index);

    /// |+>^L.
    static StateVector plus_state(int length);

    int length() const noexcept { return length_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }

    double norm() const { return amplitudes_.norm(); }
    StateVector normalized() const;

    Complex inner(const StateVector& other) const;  // <this|other>

private:
    int length_ = 0;
    Eigen::VectorXcd amplitudes_;
};

enum class SolverMethod { dense, iterative };

std::string_view to_string(SolverMethod m);
SolverMethod parse_method(std::string_view text);

struct EngineOptions {
    /// Largest L accepted by apply and the iterative solver.
    int max_sites = 24;
    /// Largest L accepted by the dense solver.
    int dense_max_sites = 12;
    /// Eigenvalues within rtol * max(1, |E0|) of E0 form the ground cluster.
    double degeneracy_rtol = 1e-8;
    /// Reported pairs must satisfy ||Hv - Ev|| <= residual_rtol * ||H||.
    double residual_rtol = 1e-9;
    int krylov_dim = 80;
    int max_restarts = 60;
    /// Lanczos convergence target on the Ritz residual estimate, relative to ||H||.
    double lanczos_rtol = 1e-11;
    std::uint64_t seed = 20110101;
};

/// Restriction to the +1 or -1 eigenspace of a Hermitian Pauli symmetry.
struct Sector {
    PauliString symmetry;
    int eigenvalue = 1;
};

struct SpectrumResult {
    int length = 0;
    SolverMethod method = SolverMethod::dense;
    std::vector<double> eigenvalues;  // ascending
    std::vector<StateVector> eigenvectors;
    std::vector<double> residuals;    // ||Hv - Ev|| per pair
    double norm_bound = 0.0;          // sum of |coefficients| of H
    int ground_degeneracy = 0;
    /// First eigenvalue above the ground cluster minus E0; NaN when every computed
    /// eigenvalue belongs to the cluster.
    double gap = 0.0;

    double ground_energy() const { return eigenvalues.front(); }
    bool gap_resolved() const;
    std::vector<StateVector> ground_basis() const;
};

/// H|psi> by bit flips (x mask) and sign pickups (z mask); no matrix is formed.
StateVector apply(const OperatorSum& a, const StateVector& psi, const EngineOptions& options = {});

/// <psi|A|psi>.
Complex expectation(const StateVector& psi, const OperatorSum& a, const EngineOptions& options = {});

/// Normalized (Z_1)^k (Z_L)^l prod_edges CZ |+>^L. Open chains take k, l in {0, 1};
/// periodic chains close the ring and only admit k = l = 0.
StateVector build_cluster_state(const LatticeSpec& lattice, int k, int l, const EngineOptions& options = {});

/// Dense computational-basis matrix (L <= dense_max_sites).
Eigen::MatrixXcd dense_matrix(const OperatorSum& a, const EngineOptions& options = {});

/// `count` lowest eigenpairs of Hermitian H, optionally inside a symmetry sector.
/// Throws DomainError (non-Hermitian H, sector symmetry not commuting with H),
/// ResourceError (size caps) or NumericalError (residual target missed).
SpectrumResult eig_low(const OperatorSum& h, int count, SolverMethod method,
                       const EngineOptions& options = {}, const std::optional<Sector>& sector = std::nullopt);

/// d x d matrix <v_a|O|v_b> over the ground basis.
Eigen::MatrixXcd ground_projector(const SpectrumResult& spectrum, const OperatorSum& o,
                                  const EngineOptions& options = {});

/// "index real imag" rows.
void write_columns(std::ostream& out, const StateVector& psi);
void write_columns(std::ostream& out, const SpectrumResult& spectrum);

}  // namespace clusterspt
