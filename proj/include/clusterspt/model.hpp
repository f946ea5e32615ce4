#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clusterspt/lattice.hpp"
#include "clusterspt/operator_sum.hpp"
#include "clusterspt/pauli.hpp"

namespace clusterspt {

/// Three-site stabilizer sigma^z_{i-1} sigma^x_i sigma^z_{i+1}. Open chains only have
/// S_2 .. S_{L-1}; other sites throw DomainError.
PauliString stabilizer(int site, const LatticeSpec& lattice);

/// Sites carrying a stabilizer: 2..L-1 (open) or 1..L (periodic).
std::vector<int> stabilizer_sites(const LatticeSpec& lattice);

/// H_C = -sum_i S_i over the valid stabilizers.
OperatorSum cluster_hamiltonian(const LatticeSpec& lattice);

/// lambda * sum over bonds of sigma^y_i sigma^y_{i+1}; L-1 bonds open, L periodic.
OperatorSum ising_perturbation(const LatticeSpec& lattice, double lambda);

/// The four edge generators {Z_1, Z_L, X_1 Z_2, Z_{L-1} X_L} of the free-end algebra.
/// Throws DomainError on periodic chains.
std::vector<PauliString> edge_generators(const LatticeSpec& lattice);

/// All 15 non-identity products of subsets of the edge generators, letter form with
/// a "+1" prefix, ordered by subset bitmask (bit k selects generator k).
std::vector<PauliString> forbidden_set(const LatticeSpec& lattice);

/// A Z2 generator T = (A + B) / sqrt(2) built from two anticommuting Pauli strings.
struct SymmetryPair {
    PauliString a;
    PauliString b;

    /// (A + B) / sqrt(2).
    OperatorSum normalized() const;
    /// A + B.
    OperatorSum raw() const;
};

/// Edge-local pair (A^loc_s, B^loc_s) for s in {1, 2}. Open chains with L >= 4.
SymmetryPair local_pair(int s, const LatticeSpec& lattice);

/// T^loc_s = (A^loc_s + B^loc_s) / sqrt(2).
OperatorSum local_symmetry(int s, const LatticeSpec& lattice);

enum class Construction {
    /// Built from the periodic tau-basis patterns and conjugated back by U_cp.
    tau_canonical,
    /// The literal sigma-basis six-site block products.
    sigma_literal,
};

/// Tau-basis strings (A-bar_s, B-bar_s): blocks of four tau^x and two identities with
/// fixed edge decorations. Requires an open chain with L = 3 (mod 6), L >= 9.
SymmetryPair tau_pair(int s, const LatticeSpec& lattice);

/// Sigma-basis (A_s, B_s) from the chosen construction.
SymmetryPair global_pair(int s, const LatticeSpec& lattice, Construction construction);

/// T_s = (A_s + B_s) / sqrt(2) in the sigma basis.
OperatorSum global_symmetry(int s, const LatticeSpec& lattice,
                            Construction construction = Construction::tau_canonical);

/// Parity and its edge-decorated partner in the Z-X-Z convention used here:
/// prod_i sigma^x_i and sigma^y_1 (prod_{j=2}^{L-1} sigma^x_j) sigma^y_L. Both commute
/// with H_C; time reversal is complex conjugation (see OperatorSum::has_real_matrix).
std::pair<PauliString, PauliString> parity_and_timereversal(const LatticeSpec& lattice);

/// The same pair written with sigma^z strings, prod_i sigma^z_i and
/// sigma^y_1 (prod sigma^z_j) sigma^y_L, i.e. the X-Z-X convention. Kept for the
/// cross-check report: these anticommute with the Z-X-Z stabilizers.
std::pair<PauliString, PauliString> zstring_parity_pair(const LatticeSpec& lattice);

/// Compact site-indexed name, e.g. "Z1Z9", "X1Z2Z8X9", "-Y5"; "I" for the identity.
std::string compact_name(const PauliString& p);

/// Parses a compact name ("X5", "Z1Z9") into a string of the given length.
/// Throws ParseError on malformed names or repeated sites, IndexError on bad sites.
PauliString parse_compact(std::string_view name, int length);

enum class Basis { sigma, tau };

/// Named operators of one chain. Immutable after construction.
struct ModelSpec {
    LatticeSpec lattice;
    double lambda = 0.0;
    Basis basis = Basis::sigma;
    OperatorSum hamiltonian;
    std::map<std::string, OperatorSum> registry;

    /// Same registry conjugated by U_cp, tagged tau.
    ModelSpec to_tau() const;

    /// One "name = operator-sum text" line per registry entry, sorted by name.
    std::string manifest() const;
};

/// Registry: stabilizers S_ii, H_C, H_I, H, parity, ty_string; for open chains also
/// G_k and Sigma[...] entries, A1loc/B1loc/T1loc and the s = 2
/// counterparts (L >= 4), and for admissible lengths the
/// global A1, B1, A2, B2, T1, T2 (tau_canonical, normalized).
ModelSpec build_model(const LatticeSpec& lattice, double lambda = 0.0);

}  // namespace clusterspt
