#include "clusterspt/lattice.hpp"

#include "clusterspt/errors.hpp"
#include "clusterspt/pauli.hpp"

namespace clusterspt {

std::string_view to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

Boundary parse_boundary(std::string_view text) {
    if (text == "open") return Boundary::open;
    if (text == "periodic") return Boundary::periodic;
    throw ParseError("boundary must be 'open' or 'periodic', got '" + std::string(text) + "'");
}

LatticeSpec::LatticeSpec(int length_, Boundary boundary_) : length(length_), boundary(boundary_) {
    if (length < 3 || length > kMaxSites) {
        throw DomainError("lattice length " + std::to_string(length) + " outside 3.." +
                          std::to_string(kMaxSites));
    }
}

int LatticeSpec::wrap(int site) const noexcept {
    if (site >= 1 && site <= length) return site;
    if (is_open()) return 0;
    return site < 1 ? site + length : site - length;
}

bool LatticeSpec::admits_global_symmetry() const noexcept {
    return is_open() && length >= 9 && length % 6 == 3;
}

std::string LatticeSpec::describe() const {
    return std::string(to_string(boundary)) + " L=" + std::to_string(length);
}

}  // namespace clusterspt
