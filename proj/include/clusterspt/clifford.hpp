#pragma once

#include <utility>
#include <vector>

#include "clusterspt/lattice.hpp"
#include "clusterspt/operator_sum.hpp"
#include "clusterspt/pauli.hpp"

namespace clusterspt {

/// Conjugation of P by CZ on sites (i, j): X_i -> X_i Z_j, X_j -> X_j Z_i, Z fixed.
/// Throws IndexError for sites outside 1..L or i == j.
PauliString conjugate_cz(const PauliString& p, int i, int j);

/// Product of CZ gates over an edge list. CZ gates commute, so the edge order is
/// irrelevant, and the circuit is Hermitian and involutive.
class CzCircuit {
public:
    CzCircuit(int length, std::vector<std::pair<int, int>> edges);

    /// The control-phase circuit U_cp of a chain: (i, i+1) for i = 1..L-1, plus (L, 1)
    /// when periodic.
    static CzCircuit control_phase(const LatticeSpec& lattice);

    int length() const noexcept { return length_; }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    PauliString conjugate(const PauliString& p) const;
    OperatorSum conjugate(const OperatorSum& a) const;

private:
    int length_;
    std::vector<std::pair<int, int>> edges_;
};

/// U_cp A U_cp for the chain's control-phase circuit (sigma basis <-> tau basis).
OperatorSum conjugate_ucp(const OperatorSum& a, const LatticeSpec& lattice);
PauliString conjugate_ucp(const PauliString& p, const LatticeSpec& lattice);

}  // namespace clusterspt
