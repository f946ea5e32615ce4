#include "clusterspt/pauli.hpp"

#include <bit>

#include "clusterspt/errors.hpp"

namespace clusterspt {

namespace {

constexpr std::string_view kPrefixes[4] = {"+1", "+i", "-1", "-i"};

std::uint64_t site_bit(int site) { return std::uint64_t{1} << (site - 1); }

}  // namespace

void check_length(int length) {
    if (length < 1 || length > kMaxSites) {
        throw DimensionError("chain length " + std::to_string(length) + " outside 1.." +
                             std::to_string(kMaxSites));
    }
}

void check_site(int length, int site) {
    if (site < 1 || site > length) {
        throw IndexError("site " + std::to_string(site) + " outside 1.." + std::to_string(length));
    }
}

std::uint64_t full_mask(int length) {
    return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

PauliString::PauliString(int length) : length_(length) { check_length(length); }

PauliString::PauliString(int length, std::uint8_t phase, std::uint64_t x_mask, std::uint64_t z_mask)
    : length_(length), phase_(phase & 3u), x_(x_mask), z_(z_mask) {
    check_length(length);
    if ((x_mask | z_mask) & ~full_mask(length)) {
        throw DimensionError("mask has bits beyond site " + std::to_string(length));
    }
}

PauliString PauliString::from_letters(std::string_view letters) {
    const int length = static_cast<int>(letters.size());
    if (length < 1 || length > kMaxSites) {
        throw ParseError("Pauli word must have 1.." + std::to_string(kMaxSites) + " letters");
    }
    std::uint64_t x = 0, z = 0;
    int ys = 0;
    for (int j = 0; j < length; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        switch (letters[j]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Z': z |= bit; break;
            case 'Y':
                x |= bit;
                z |= bit;
                ++ys;
                break;
            default:
                throw ParseError(std::string("invalid Pauli letter '") + letters[j] + "'");
        }
    }
    return PauliString(length, static_cast<std::uint8_t>(ys & 3), x, z);
}

PauliString PauliString::parse(std::string_view text) {
    int prefix = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        const auto space = text.find(' ');
        if (space == std::string_view::npos) {
            throw ParseError("phase prefix must be followed by a space");
        }
        const std::string_view head = text.substr(0, space);
        prefix = -1;
        for (int e = 0; e < 4; ++e) {
            if (head == kPrefixes[e]) prefix = e;
        }
        if (prefix < 0) {
            throw ParseError("unknown phase prefix '" + std::string(head) + "'");
        }
        text.remove_prefix(space + 1);
    }
    PauliString p = from_letters(text);
    p.phase_ = static_cast<std::uint8_t>((p.phase_ + prefix) & 3);
    return p;
}

PauliString PauliString::single(int length, int site, char letter) {
    check_length(length);
    check_site(length, site);
    const std::uint64_t bit = site_bit(site);
    switch (letter) {
        case 'I': return PauliString(length);
        case 'X': return PauliString(length, 0, bit, 0);
        case 'Z': return PauliString(length, 0, 0, bit);
        case 'Y': return PauliString(length, 1, bit, bit);
        default: throw ParseError(std::string("invalid Pauli letter '") + letter + "'");
    }
}

char PauliString::letter(int site) const {
    check_site(length_, site);
    const bool x = (x_ >> (site - 1)) & 1u;
    const bool z = (z_ >> (site - 1)) & 1u;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

bool PauliString::is_hermitian() const noexcept { return ((phase_ + y_count()) & 1) == 0; }

PauliString PauliString::adjoint() const {
    // (i^e X^x Z^z)^dagger = i^{-e} Z^z X^x = i^{-e} (-1)^{|x & z|} X^x Z^z
    const int e = -static_cast<int>(phase_) + 2 * y_count();
    return PauliString(length_, static_cast<std::uint8_t>(e & 3), x_, z_);
}

PauliString PauliString::unsigned_form() const {
    return PauliString(length_, static_cast<std::uint8_t>(y_count() & 3), x_, z_);
}

std::string PauliString::letters() const {
    std::string out(static_cast<std::size_t>(length_), 'I');
    for (int j = 1; j <= length_; ++j) out[j - 1] = letter(j);
    return out;
}

std::string PauliString::to_string() const {
    const int prefix = (static_cast<int>(phase_) - y_count()) & 3;
    return std::string(kPrefixes[prefix]) + " " + letters();
}

PauliString multiply(const PauliString& p, const PauliString& q) {
    if (p.length() != q.length()) {
        throw DimensionError("multiply: lengths " + std::to_string(p.length()) + " and " +
                             std::to_string(q.length()));
    }
    // Z^{z_p} X^{x_q} = (-1)^{|z_p & x_q|} X^{x_q} Z^{z_p}
    const int e = p.phase() + q.phase() + 2 * std::popcount(p.z_mask() & q.x_mask());
    return PauliString(p.length(), static_cast<std::uint8_t>(e & 3), p.x_mask() ^ q.x_mask(),
                       p.z_mask() ^ q.z_mask());
}

bool commutes(const PauliString& p, const PauliString& q) {
    if (p.length() != q.length()) {
        throw DimensionError("commutes: lengths " + std::to_string(p.length()) + " and " +
                             std::to_string(q.length()));
    }
    const int form = std::popcount(p.x_mask() & q.z_mask()) + std::popcount(p.z_mask() & q.x_mask());
    return (form & 1) == 0;
}

std::vector<int> weight_support(const PauliString& p) {
    std::vector<int> sites;
    const std::uint64_t support = p.x_mask() | p.z_mask();
    for (int j = 1; j <= p.length(); ++j) {
        if ((support >> (j - 1)) & 1u) sites.push_back(j);
    }
    return sites;
}

}  // namespace clusterspt
