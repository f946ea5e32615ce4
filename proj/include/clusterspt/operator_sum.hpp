#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clusterspt/pauli.hpp"

namespace clusterspt {

using Complex = std::complex<double>;

/// Coefficients at or below this magnitude are dropped on canonicalization.
inline constexpr double kCoefficientCutoff = 1e-12;

/// Finite complex linear combination of Pauli strings on a fixed chain length.
///
/// Each term is keyed by its (x_mask, z_mask) pair and stores the coefficient c of
/// the bare product X^x Z^z; the i^phase of a PauliString is folded into c. Under this
/// convention every bare product is a real matrix, so the sum has a real
/// computational-basis matrix iff all coefficients are real.
class OperatorSum {
public:
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    using TermMap = std::map<Key, Complex>;

    OperatorSum() = default;
    explicit OperatorSum(int length);
    OperatorSum(const PauliString& p, Complex coefficient = 1.0);

    static OperatorSum identity(int length, Complex coefficient = 1.0);

    /// Parses " + "-separated terms of the form "(re,im) LETTERS".
    static OperatorSum parse(std::string_view text);

    int length() const noexcept { return length_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Coefficient of the bare product X^x Z^z (zero if absent).
    Complex coefficient(std::uint64_t x_mask, std::uint64_t z_mask) const;

    /// Coefficient c such that the term equals c * p (p including its phase).
    Complex coefficient_of(const PauliString& p) const;

    void add_term(const PauliString& p, Complex coefficient = 1.0);

    OperatorSum& operator+=(const OperatorSum& other);
    OperatorSum& operator-=(const OperatorSum& other);
    OperatorSum& operator*=(Complex scalar);

    OperatorSum adjoint() const;

    /// Drops terms with |c| <= cutoff.
    OperatorSum canonical(double cutoff = kCoefficientCutoff) const;

    bool is_zero(double tol = kCoefficientCutoff) const;
    bool is_hermitian(double tol = kCoefficientCutoff) const;

    /// All coefficients real: the computational-basis matrix is real, so complex
    /// conjugation (time reversal) is a symmetry of a Hermitian sum.
    bool has_real_matrix(double tol = kCoefficientCutoff) const;

    /// True iff the sum is c * identity for some c (within tol).
    bool is_scalar(double tol = kCoefficientCutoff) const;

    /// Sum of |c|, an upper bound on the spectral norm.
    double norm_bound() const;

    /// Max |c_this - c_other| over the union of terms.
    double distance(const OperatorSum& other) const;

    /// Terms as PauliStrings with their coefficients relative to the phased string's
    /// letter form (i.e. c' with term = c' * P and P carrying a "+1" prefix).
    std::vector<std::pair<PauliString, Complex>> expanded() const;

    /// Canonical text, e.g. "(-1,0) ZXZ + (-1,0) IZXZ". The empty sum prints as "0".
    std::string to_string() const;

private:
    void check_same_length(const OperatorSum& other, const char* op) const;

    int length_ = 0;
    TermMap terms_;
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);
OperatorSum operator-(OperatorSum a, const OperatorSum& b);
OperatorSum operator*(Complex s, OperatorSum a);
OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

/// AB - BA, canonicalized.
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

/// AB + BA, canonicalized.
OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b);

}  // namespace clusterspt
