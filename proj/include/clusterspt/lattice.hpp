#pragma once

#include <string>
#include <string_view>

namespace clusterspt {

enum class Boundary { open, periodic };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

/// Chain of `length` qubits, sites 1..L. Open chains drop the sigma_0 and sigma_{L+1}
/// factors; periodic chains wrap site 0 to L and L+1 to 1.
struct LatticeSpec {
    int length = 0;
    Boundary boundary = Boundary::open;

    /// Throws DomainError unless 3 <= length <= 64.
    LatticeSpec(int length, Boundary boundary);

    bool is_open() const noexcept { return boundary == Boundary::open; }
    bool is_periodic() const noexcept { return boundary == Boundary::periodic; }

    /// Wraps a site in 0..L+1 onto 1..L for periodic chains; returns 0 for the
    /// missing ends of an open chain.
    int wrap(int site) const noexcept;

    /// Admits the global symmetry construction: open, L = 3 (mod 6), L >= 9.
    bool admits_global_symmetry() const noexcept;

    std::string describe() const;

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

}  // namespace clusterspt
