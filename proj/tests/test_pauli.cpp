#include <random>

#include <gtest/gtest.h>

#include "clusterspt/errors.hpp"
#include "clusterspt/pauli.hpp"
#include "dense_oracle.hpp"

using namespace clusterspt;

namespace {

std::vector<PauliString> all_paulis(int length) {
    std::vector<PauliString> out;
    const std::uint64_t n = std::uint64_t{1} << length;
    for (std::uint8_t e = 0; e < 4; ++e) {
        for (std::uint64_t x = 0; x < n; ++x) {
            for (std::uint64_t z = 0; z < n; ++z) out.emplace_back(length, e, x, z);
        }
    }
    return out;
}

}  // namespace

TEST(PauliString, ParseAndPrintRoundTrip) {
    for (const char* text : {"+1 ZXZIIIIII", "-1 YYI", "+i XIZ", "-i IIII", "+1 Y"}) {
        EXPECT_EQ(PauliString::parse(text).to_string(), text);
    }
    EXPECT_EQ(PauliString::parse("ZXZ").to_string(), "+1 ZXZ");
}

TEST(PauliString, ParseRejectsMalformedText) {
    EXPECT_THROW(PauliString::parse(""), ParseError);
    EXPECT_THROW(PauliString::parse("+2 XX"), ParseError);
    EXPECT_THROW(PauliString::parse("XAZ"), ParseError);
    EXPECT_THROW(PauliString::parse("+1XX"), ParseError);
    EXPECT_THROW(PauliString::parse(std::string(65, 'X')), ParseError);
}

TEST(PauliString, SingleSiteAndLetters) {
    const PauliString y = PauliString::single(4, 2, 'Y');
    EXPECT_EQ(y.letters(), "IYII");
    EXPECT_EQ(y.letter(2), 'Y');
    EXPECT_EQ(y.y_count(), 1);
    EXPECT_TRUE(y.is_hermitian());
    EXPECT_THROW(PauliString::single(4, 5, 'X'), IndexError);
    EXPECT_THROW(PauliString::single(4, 0, 'X'), IndexError);
}

TEST(PauliString, ProductOfXAndZ) {
    const auto x = PauliString::parse("X");
    const auto z = PauliString::parse("Z");
    EXPECT_EQ(multiply(x, z).to_string(), "-i Y");
    EXPECT_EQ(multiply(z, x).to_string(), "+i Y");
    EXPECT_FALSE(commutes(x, z));
    EXPECT_TRUE(commutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
}

TEST(PauliString, StabilizersCommute) {
    EXPECT_TRUE(commutes(PauliString::parse("ZXZII"), PauliString::parse("IZXZI")));
    EXPECT_TRUE(commutes(PauliString::parse("ZXZII"), PauliString::parse("IIZXZ")));
}

TEST(PauliString, LengthMismatchThrows) {
    EXPECT_THROW(multiply(PauliString(3), PauliString(4)), DimensionError);
    EXPECT_THROW(commutes(PauliString(3), PauliString(4)), DimensionError);
}

TEST(PauliString, ExhaustiveMatrixOracleSmallChains) {
    for (int L = 1; L <= 2; ++L) {
        const auto all = all_paulis(L);
        for (const auto& p : all) {
            const auto mp = oracle::pauli_matrix(p);
            EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(p.adjoint()) - mp.adjoint()), 1e-12);
            EXPECT_EQ(p.is_hermitian(), oracle::max_abs(mp - mp.adjoint()) <= 1e-12);
            EXPECT_LE(oracle::max_abs(oracle::letters_matrix(p.letters()) * oracle::i_power(0) -
                                      oracle::pauli_matrix(p.unsigned_form())),
                      1e-12);
            for (const auto& q : all) {
                const auto mq = oracle::pauli_matrix(q);
                EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(multiply(p, q)) - mp * mq), 1e-12);
                EXPECT_EQ(commutes(p, q), oracle::max_abs(mp * mq - mq * mp) <= 1e-12);
            }
        }
    }
}

TEST(PauliString, TextPrefixMatchesMatrix) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const PauliString p = oracle::random_pauli(3, rng);
        const auto parsed = PauliString::parse(p.to_string());
        EXPECT_EQ(parsed, p);
        const std::string text = p.to_string();
        const int prefix = text[0] == '+' ? (text[1] == '1' ? 0 : 1) : (text[1] == '1' ? 2 : 3);
        EXPECT_LE(oracle::max_abs(oracle::i_power(prefix) * oracle::letters_matrix(p.letters()) -
                                  oracle::pauli_matrix(p)),
                  1e-12);
    }
}

TEST(PauliString, ProductIsAssociative) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const int L = 1 + static_cast<int>(rng() % 64);
        const auto a = oracle::random_pauli(L, rng);
        const auto b = oracle::random_pauli(L, rng);
        const auto c = oracle::random_pauli(L, rng);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
        EXPECT_EQ(multiply(a, a.adjoint()), PauliString(L));
        EXPECT_EQ(multiply(a, b).adjoint(), multiply(b.adjoint(), a.adjoint()));
        // PQ = +-QP with the sign given by commutes().
        const auto ab = multiply(a, b);
        const auto ba = multiply(b, a);
        EXPECT_EQ(ab.x_mask(), ba.x_mask());
        EXPECT_EQ((ab.phase() - ba.phase()) & 3, commutes(a, b) ? 0 : 2);
    }
}

TEST(PauliString, WeightSupport) {
    EXPECT_EQ(weight_support(PauliString::parse("XIZIY")), (std::vector<int>{1, 3, 5}));
    EXPECT_TRUE(weight_support(PauliString(6)).empty());
    EXPECT_EQ(full_mask(64), ~std::uint64_t{0});
    EXPECT_EQ(full_mask(3), 7u);
}
