#include "clusterspt/operator_sum.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "clusterspt/errors.hpp"

namespace clusterspt {

namespace {

const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Complex i_power(int e) { return kIPowers[e & 3]; }

std::string format_exact(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

OperatorSum::OperatorSum(int length) : length_(length) { check_length(length); }

OperatorSum::OperatorSum(const PauliString& p, Complex coefficient) : length_(p.length()) {
    add_term(p, coefficient);
}

OperatorSum OperatorSum::identity(int length, Complex coefficient) {
    return OperatorSum(PauliString(length), coefficient);
}

void OperatorSum::check_same_length(const OperatorSum& other, const char* op) const {
    if (length_ != other.length_) {
        throw DimensionError(std::string(op) + ": lengths " + std::to_string(length_) + " and " +
                             std::to_string(other.length_));
    }
}

Complex OperatorSum::coefficient(std::uint64_t x_mask, std::uint64_t z_mask) const {
    const auto it = terms_.find({x_mask, z_mask});
    return it == terms_.end() ? Complex{} : it->second;
}

Complex OperatorSum::coefficient_of(const PauliString& p) const {
    return coefficient(p.x_mask(), p.z_mask()) * i_power(-p.phase());
}

void OperatorSum::add_term(const PauliString& p, Complex coefficient) {
    if (p.length() != length_) {
        throw DimensionError("add_term: string length " + std::to_string(p.length()) +
                             " vs sum length " + std::to_string(length_));
    }
    const Key key{p.x_mask(), p.z_mask()};
    const Complex c = terms_[key] + coefficient * i_power(p.phase());
    if (std::abs(c) <= kCoefficientCutoff) {
        terms_.erase(key);
    } else {
        terms_[key] = c;
    }
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
    check_same_length(other, "add");
    for (const auto& [key, c] : other.terms_) {
        const Complex sum = terms_[key] + c;
        if (std::abs(sum) <= kCoefficientCutoff) {
            terms_.erase(key);
        } else {
            terms_[key] = sum;
        }
    }
    return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
    check_same_length(other, "subtract");
    return *this += Complex{-1.0} * other;
}

OperatorSum& OperatorSum::operator*=(Complex scalar) {
    for (auto& [key, c] : terms_) c *= scalar;
    *this = canonical();
    return *this;
}

OperatorSum OperatorSum::adjoint() const {
    OperatorSum out(length_);
    for (const auto& [key, c] : terms_) {
        const int ys = std::popcount(key.first & key.second);
        out.terms_[key] = std::conj(c) * ((ys & 1) ? -1.0 : 1.0);
    }
    return out;
}

OperatorSum OperatorSum::canonical(double cutoff) const {
    OperatorSum out(*this);
    std::erase_if(out.terms_, [cutoff](const auto& kv) { return std::abs(kv.second) <= cutoff; });
    return out;
}

bool OperatorSum::is_zero(double tol) const {
    for (const auto& [key, c] : terms_) {
        if (std::abs(c) > tol) return false;
    }
    return true;
}

bool OperatorSum::is_hermitian(double tol) const { return distance(adjoint()) <= tol; }

bool OperatorSum::has_real_matrix(double tol) const {
    for (const auto& [key, c] : terms_) {
        if (std::abs(c.imag()) > tol) return false;
    }
    return true;
}

bool OperatorSum::is_scalar(double tol) const {
    for (const auto& [key, c] : terms_) {
        if ((key.first | key.second) != 0 && std::abs(c) > tol) return false;
    }
    return true;
}

double OperatorSum::norm_bound() const {
    double s = 0.0;
    for (const auto& [key, c] : terms_) s += std::abs(c);
    return s;
}

double OperatorSum::distance(const OperatorSum& other) const {
    check_same_length(other, "distance");
    double d = 0.0;
    for (const auto& [key, c] : terms_) d = std::max(d, std::abs(c - other.coefficient(key.first, key.second)));
    for (const auto& [key, c] : other.terms_) {
        if (!terms_.contains(key)) d = std::max(d, std::abs(c));
    }
    return d;
}

std::vector<std::pair<PauliString, Complex>> OperatorSum::expanded() const {
    std::vector<std::pair<PauliString, Complex>> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) {
        // X^x Z^z = (-i)^{#Y} * (letter word)
        const PauliString word = PauliString(length_, 0, key.first, key.second).unsigned_form();
        out.emplace_back(word, c * i_power(-word.y_count()));
    }
    return out;
}

std::string OperatorSum::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [word, c] : expanded()) {
        if (!out.empty()) out += " + ";
        out += "(" + format_exact(c.real()) + "," + format_exact(c.imag()) + ") " + word.letters();
    }
    return out;
}

OperatorSum OperatorSum::parse(std::string_view text) {
    std::vector<std::pair<Complex, std::string>> parsed;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '(' at offset " + std::to_string(pos));
        const auto close = text.find(')', pos);
        if (close == std::string_view::npos) throw ParseError("unterminated coefficient");
        const std::string coef(text.substr(pos + 1, close - pos - 1));
        double re = 0, im = 0;
        char trailing = 0;
        if (std::sscanf(coef.c_str(), "%lf,%lf%c", &re, &im, &trailing) != 2) {
            throw ParseError("malformed coefficient '" + coef + "'");
        }
        if (close + 1 >= text.size() || text[close + 1] != ' ') throw ParseError("expected space after coefficient");
        auto end = text.find(" + ", close + 2);
        const std::string_view word = text.substr(close + 2, end == std::string_view::npos ? text.npos : end - close - 2);
        parsed.emplace_back(Complex{re, im}, std::string(word));
        pos = end == std::string_view::npos ? text.size() : end + 3;
    }
    if (parsed.empty()) throw ParseError("empty operator sum; the zero operator needs an explicit length");
    OperatorSum out(static_cast<int>(parsed.front().second.size()));
    for (const auto& [c, word] : parsed) {
        out.add_term(PauliString::from_letters(word).unsigned_form(), c);
    }
    return out;
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }

OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }

OperatorSum operator*(Complex s, OperatorSum a) { return a *= s; }

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
    if (a.length() != b.length()) {
        throw DimensionError("product: lengths " + std::to_string(a.length()) + " and " +
                             std::to_string(b.length()));
    }
    OperatorSum out(a.length());
    std::map<OperatorSum::Key, Complex> acc;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const int sign = std::popcount(ka.second & kb.first) & 1;
            acc[{ka.first ^ kb.first, ka.second ^ kb.second}] += (sign ? -1.0 : 1.0) * ca * cb;
        }
    }
    for (const auto& [key, c] : acc) {
        out.add_term(PauliString(a.length(), 0, key.first, key.second), c);
    }
    return out;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
    return (a * b - b * a).canonical();
}

OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b) {
    return (a * b + b * a).canonical();
}

}  // namespace clusterspt
