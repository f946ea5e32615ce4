#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace clusterspt {

/// Longest chain representable by the 64-bit symplectic masks.
inline constexpr int kMaxSites = 64;

/// Element of the Pauli group on L qubits in symplectic form,
///
///     i^phase * prod_j X_j^{x_j} * prod_j Z_j^{z_j},
///
/// with Y = i X Z. Sites are 1-based; site j lives in bit (j - 1) of each mask.
class PauliString {
public:
    PauliString() = default;

    /// Identity on `length` sites.
    explicit PauliString(int length);

    PauliString(int length, std::uint8_t phase, std::uint64_t x_mask, std::uint64_t z_mask);

    /// Parses the canonical text form: optional "+1 ", "-1 ", "+i ", "-i " prefix then L letters
    /// from {I,X,Y,Z}. Throws ParseError.
    static PauliString parse(std::string_view text);

    /// Builds a string from a letter word ("ZXZIII"); the sign prefix is implicitly +1.
    static PauliString from_letters(std::string_view letters);

    /// Single-site Pauli `letter` at `site` (1-based).
    static PauliString single(int length, int site, char letter);

    int length() const noexcept { return length_; }
    std::uint8_t phase() const noexcept { return phase_; }
    std::uint64_t x_mask() const noexcept { return x_; }
    std::uint64_t z_mask() const noexcept { return z_; }

    /// Letter in {I,X,Y,Z} at 1-based `site`.
    char letter(int site) const;

    /// Number of Y factors, i.e. |x & z|.
    int y_count() const noexcept;

    bool is_hermitian() const noexcept;
    bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }

    PauliString adjoint() const;

    /// Same masks, phase reset so that the letter form carries a "+1" prefix.
    PauliString unsigned_form() const;

    /// Canonical text form, e.g. "+1 ZXZIIIIII". Round-trips through parse().
    std::string to_string() const;

    /// Letters only, without the phase prefix.
    std::string letters() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    int length_ = 0;
    std::uint8_t phase_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

/// Group product P * Q. Throws DimensionError on length mismatch.
PauliString multiply(const PauliString& p, const PauliString& q);

/// True iff P and Q commute (symplectic form vanishes mod 2). Phases are irrelevant.
bool commutes(const PauliString& p, const PauliString& q);

/// Sites where P acts non-trivially, ascending and 1-based.
std::vector<int> weight_support(const PauliString& p);

/// Mask with bits 0..length-1 set.
std::uint64_t full_mask(int length);

void check_length(int length);
void check_site(int length, int site);

}  // namespace clusterspt
