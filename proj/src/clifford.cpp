#include "clusterspt/clifford.hpp"

#include "clusterspt/errors.hpp"

namespace clusterspt {

PauliString conjugate_cz(const PauliString& p, int i, int j) {
    check_site(p.length(), i);
    check_site(p.length(), j);
    if (i == j) throw IndexError("CZ needs two distinct sites, got " + std::to_string(i) + " twice");

    const std::uint64_t bi = std::uint64_t{1} << (i - 1);
    const std::uint64_t bj = std::uint64_t{1} << (j - 1);
    const bool xi = p.x_mask() & bi;
    const bool xj = p.x_mask() & bj;

    std::uint64_t z = p.z_mask();
    if (xi) z ^= bj;
    if (xj) z ^= bi;
    // (X_i Z_j)(X_j Z_i) = -X_i X_j Z_j Z_i
    const int phase = p.phase() + ((xi && xj) ? 2 : 0);
    return PauliString(p.length(), static_cast<std::uint8_t>(phase & 3), p.x_mask(), z);
}

CzCircuit::CzCircuit(int length, std::vector<std::pair<int, int>> edges)
    : length_(length), edges_(std::move(edges)) {
    check_length(length);
    for (const auto& [i, j] : edges_) {
        check_site(length, i);
        check_site(length, j);
        if (i == j) throw IndexError("CZ edge (" + std::to_string(i) + "," + std::to_string(j) + ") is a loop");
    }
}

CzCircuit CzCircuit::control_phase(const LatticeSpec& lattice) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < lattice.length; ++i) edges.emplace_back(i, i + 1);
    if (lattice.is_periodic()) edges.emplace_back(lattice.length, 1);
    return CzCircuit(lattice.length, std::move(edges));
}

PauliString CzCircuit::conjugate(const PauliString& p) const {
    if (p.length() != length_) {
        throw DimensionError("CZ circuit on " + std::to_string(length_) + " sites applied to length " +
                             std::to_string(p.length()));
    }
    PauliString out = p;
    for (const auto& [i, j] : edges_) out = conjugate_cz(out, i, j);
    return out;
}

OperatorSum CzCircuit::conjugate(const OperatorSum& a) const {
    if (a.length() != length_) {
        throw DimensionError("CZ circuit on " + std::to_string(length_) + " sites applied to length " +
                             std::to_string(a.length()));
    }
    OperatorSum out(length_);
    for (const auto& [key, c] : a.terms()) {
        out.add_term(conjugate(PauliString(length_, 0, key.first, key.second)), c);
    }
    return out;
}

OperatorSum conjugate_ucp(const OperatorSum& a, const LatticeSpec& lattice) {
    return CzCircuit::control_phase(lattice).conjugate(a);
}

PauliString conjugate_ucp(const PauliString& p, const LatticeSpec& lattice) {
    return CzCircuit::control_phase(lattice).conjugate(p);
}

}  // namespace clusterspt
