#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clusterspt/engine.hpp"
#include "clusterspt/lattice.hpp"
#include "clusterspt/model.hpp"
#include "clusterspt/operator_sum.hpp"

namespace clusterspt {

/// One named identity and whether it held.
struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// An observation that is reported but does not decide the verdict.
struct Finding {
    std::string name;
    std::string detail;
};

struct StabilizerReport {
    LatticeSpec lattice;
    int pairs_checked = 0;
    std::vector<Check> checks;

    bool passed() const;
};

/// Pairwise commutation of all stabilizers (symbolic), and for L <= numeric_max_sites
/// the +1 eigenvalue of every stabilizer on each cluster state plus the ground-state
/// energy and degeneracy of H_C by exact diagonalization.
StabilizerReport verify_stabilizer_algebra(const LatticeSpec& lattice, const EngineOptions& options = {},
                                           int numeric_max_sites = 12);

// ---------------------------------------------------------------------------
// Symmetry protection

enum class SplitKind { zero, scalar, splits, skipped };

std::string_view to_string(SplitKind k);

struct ProbeVerdict {
    std::string name;
    std::string family;  // "bulk", "edge", "edge_pair", "sigma" or "custom"
    PauliString probe;
    bool commutes_with_h = false;
    bool commutes_with_t1 = false;
    bool commutes_with_t2 = false;
    SplitKind first_order = SplitKind::skipped;
    std::vector<double> split_eigenvalues;

    bool symmetric() const { return commutes_with_t1 && commutes_with_t2; }
};

struct AlgebraVerdict {
    bool squares_to_identity[2] = {false, false};
    bool commutes_with_h[2] = {false, false};
    bool pair_anticommutes[2] = {false, false};
    bool t1_t2_commute = false;
    /// [A_1, A_2] = [A_1, B_2] = [B_1, A_2] = [B_1, B_2] = 0.
    bool cross_pairs_commute = false;

    bool passed() const;
};

struct ProtectionReport {
    std::string model_id;
    LatticeSpec lattice;
    std::string symmetry;  // "global" or "local"
    AlgebraVerdict algebra;
    std::vector<ProbeVerdict> probes;
    /// Every bulk sigma_j^alpha fails to commute with T_s, for s = 1, 2 separately.
    bool bulk_protected_by[2] = {false, false};
    /// Every bulk sigma_j^alpha fails to commute with at least one T_s.
    bool bulk_protected_jointly = false;
    bool sigma_excluded = false;
    bool numeric_checked = false;
    int ground_degeneracy = 0;
    bool protected_ = false;
    std::vector<std::string> failures;
};

struct ProtectionOptions {
    /// Use the edge-local T^loc_s instead of the global T_s.
    bool local_only = false;
    /// Replaces the default probe set when non-empty.
    std::vector<PauliString> probes;
    /// Keep at most this many bulk single-site probes, chosen with `seed`.
    std::optional<std::size_t> sample_bulk;
    std::uint64_t seed = 0;
    /// First-order splitting matrices are computed up to this L.
    int numeric_max_sites = 12;
    SolverMethod method = SolverMethod::dense;
    EngineOptions engine;
};

/// Default probes: every sigma_j^alpha, every two-site product on sites {1, 2, L-1, L},
/// and the 15 forbidden-set elements.
std::vector<ProbeVerdict> default_probes(const LatticeSpec& lattice);

/// Reads A_s, B_s (or A_sloc, B_sloc) from the model registry, audits the Z2 x Z2
/// algebra, and classifies every probe. Throws DomainError when the registry lacks
/// the requested symmetry (periodic chain, or L not admissible for the global one).
ProtectionReport certify_protection(const ModelSpec& model, const ProtectionOptions& options = {});

// ---------------------------------------------------------------------------
// String order and the Ising scan

/// sigma^z_{a-1} (prod_{j=a,a+2,...,b} sigma^x_j) sigma^z_{b+1}, the telescoped product
/// S_a S_{a+2} ... S_b. Requires 2 <= a <= b <= L-1 and b - a even (DomainError).
PauliString string_order_operator(int length, int a, int b);

/// Longest admissible string: a = 2, b = L-1 or L-2 (whichever makes b - a even).
PauliString longest_string_order_operator(int length);

double string_order(const StateVector& psi, int a, int b, const EngineOptions& options = {});

struct ScanPoint {
    double lambda = 0.0;
    double ground_energy = 0.0;
    /// Overall gap above the (clustered) ground level.
    double gap = 0.0;
    /// E1 - E0 inside the ground state's parity sector.
    double sector_gap = 0.0;
    /// Lowest energy of the other parity sector minus E0.
    double parity_gap = 0.0;
    int ground_parity = 1;
    double parity_expectation = 0.0;
    double string_order = 0.0;
    double yy_correlator = 0.0;
    bool parity_commutes = false;
    bool time_reversal_invariant = false;
};

struct ScanResult {
    LatticeSpec lattice;
    SolverMethod method = SolverMethod::iterative;
    std::string string_probe;
    std::vector<ScanPoint> points;
    /// Indices i where the ground parity sector differs from point i-1.
    std::vector<std::size_t> sector_changes;
    /// Non-finite observables or adjacent-point jumps beyond the sanity threshold.
    std::vector<std::string> anomalies;
};

struct ScanOptions {
    SolverMethod method = SolverMethod::iterative;
    EngineOptions engine;
    /// Worker threads over lambda points; 0 picks the hardware concurrency.
    unsigned threads = 0;
    std::optional<PauliString> string_probe;
    double jump_threshold = 5.0;
};

/// Inclusive grid start, start + step, ..., stop. start == stop yields one point;
/// otherwise step must be positive and stop > start (DomainError).
std::vector<double> lambda_grid(double start, double stop, double step);

/// Ground-state observables of H_C + H_I(lambda) per grid point, resolved by the
/// parity prod_i sigma^x_i. Points are independent and computed in parallel; results
/// are ordered by lambda.
ScanResult phase_scan(const LatticeSpec& lattice, const std::vector<double>& grid, const ScanOptions& options = {});

struct TransitionEstimate {
    double lambda_star = 0.0;
    double gap_at_minimum = 0.0;
    std::size_t index = 0;
    /// The minimum sits on the grid boundary; lambda_star is that grid point.
    bool boundary = false;
};

/// Parabolic interpolation through the smallest gap and its two neighbours.
/// Needs at least 5 points (DomainError).
TransitionEstimate transition_estimate(std::span<const double> lambdas, std::span<const double> gaps);

/// Uses the in-sector gap of the scan.
TransitionEstimate transition_estimate(const ScanResult& scan);

// ---------------------------------------------------------------------------
// Full verification suite

struct VerifyOptions {
    /// Fail with DomainError unless the lattice admits the global symmetry.
    bool require_global = false;
    /// Replace one canonical global string (A1, B1, A2 or B2) by its literal block-product form.
    std::optional<std::string> tamper;
    int numeric_max_sites = 12;
    EngineOptions engine;
};

struct VerifyReport {
    LatticeSpec lattice;
    std::vector<Check> checks;
    std::vector<Finding> findings;

    bool passed() const;
};

VerifyReport run_verification(const LatticeSpec& lattice, const VerifyOptions& options = {});

/// Compares the literal sigma-basis products with the tau-canonical ones (up to sign).
std::vector<Finding> cross_check_literal(const LatticeSpec& lattice);

}  // namespace clusterspt
