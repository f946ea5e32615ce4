#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "clusterspt/clifford.hpp"
#include "clusterspt/errors.hpp"
#include "clusterspt/model.hpp"
#include "dense_oracle.hpp"

using namespace clusterspt;

TEST(Clifford, CzRulesOnTwoQubits) {
    EXPECT_EQ(conjugate_cz(PauliString::parse("XI"), 1, 2).to_string(), "+1 XZ");
    EXPECT_EQ(conjugate_cz(PauliString::parse("IX"), 1, 2).to_string(), "+1 ZX");
    EXPECT_EQ(conjugate_cz(PauliString::parse("ZI"), 1, 2).to_string(), "+1 ZI");
    EXPECT_EQ(conjugate_cz(PauliString::parse("XX"), 1, 2).to_string(), "+1 YY");
    EXPECT_EQ(conjugate_cz(PauliString::parse("YI"), 1, 2).to_string(), "+1 YZ");
}

TEST(Clifford, CzRejectsBadSites) {
    const PauliString p(4);
    EXPECT_THROW(conjugate_cz(p, 0, 2), IndexError);
    EXPECT_THROW(conjugate_cz(p, 2, 5), IndexError);
    EXPECT_THROW(conjugate_cz(p, 2, 2), IndexError);
    EXPECT_THROW(CzCircuit(4, {{1, 5}}), IndexError);
}

TEST(Clifford, CzMatchesMatrixConjugation) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int L = 2 + static_cast<int>(rng() % 5);
        const int i = 1 + static_cast<int>(rng() % L);
        int j = 1 + static_cast<int>(rng() % L);
        if (j == i) j = i % L + 1;
        const PauliString p = oracle::random_pauli(L, rng);
        const auto cz = oracle::cz_matrix(L, i, j);
        const oracle::Matrix expected = cz * oracle::pauli_matrix(p) * cz;
        EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(conjugate_cz(p, i, j)) - expected), 1e-12)
            << p.to_string() << " on (" << i << "," << j << ")";
    }
}

TEST(Clifford, CircuitIsIndependentOfEdgeOrderAndInvolutive) {
    std::mt19937_64 rng(4);
    const LatticeSpec ring(8, Boundary::periodic);
    const CzCircuit u = CzCircuit::control_phase(ring);
    auto edges = u.edges();
    EXPECT_EQ(edges.size(), 8u);
    for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(edges.begin(), edges.end(), rng);
        const CzCircuit shuffled(8, edges);
        const PauliString p = oracle::random_pauli(8, rng);
        EXPECT_EQ(shuffled.conjugate(p), u.conjugate(p));
        EXPECT_EQ(u.conjugate(u.conjugate(p)), p);
    }
    EXPECT_EQ(CzCircuit::control_phase(LatticeSpec(8, Boundary::open)).edges().size(), 7u);
}

TEST(Clifford, ControlPhaseMatrixOracle) {
    std::mt19937_64 rng(8);
    for (Boundary b : {Boundary::open, Boundary::periodic}) {
        for (int L = 3; L <= 6; ++L) {
            const LatticeSpec lat(L, b);
            oracle::Matrix u = oracle::Matrix::Identity(1 << L, 1 << L);
            const CzCircuit circuit = CzCircuit::control_phase(lat);
            for (const auto& [i, j] : circuit.edges()) u = u * oracle::cz_matrix(L, i, j);
            const OperatorSum h = cluster_hamiltonian(lat) + ising_perturbation(lat, 0.7);
            EXPECT_LE(oracle::max_abs(oracle::sum_matrix(conjugate_ucp(h, lat)) - u * oracle::sum_matrix(h) * u), 1e-12);
            for (int trial = 0; trial < 20; ++trial) {
                const PauliString p = oracle::random_pauli(L, rng);
                EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(conjugate_ucp(p, lat)) -
                                          u * oracle::pauli_matrix(p) * u),
                          1e-12);
            }
        }
    }
}

TEST(Clifford, ClusterHamiltonianBecomesTransverseField) {
    for (int L = 3; L <= 21; ++L) {
        const LatticeSpec open(L, Boundary::open);
        OperatorSum field(L);
        for (int i = 2; i <= L - 1; ++i) field.add_term(PauliString::single(L, i, 'X'), -1.0);
        EXPECT_LE(conjugate_ucp(cluster_hamiltonian(open), open).distance(field), 0.0) << "L=" << L;

        const LatticeSpec ring(L, Boundary::periodic);
        OperatorSum ring_field(L);
        for (int i = 1; i <= L; ++i) ring_field.add_term(PauliString::single(L, i, 'X'), -1.0);
        EXPECT_LE(conjugate_ucp(cluster_hamiltonian(ring), ring).distance(ring_field), 0.0) << "L=" << L;
    }
}

TEST(Clifford, IsingTermsMapToThreeSiteStrings) {
    // Y_i Y_{i+1} -> X_i X_{i+1} dressed by Z on the outer neighbours.
    const LatticeSpec lat(6, Boundary::open);
    const OperatorSum yy(PauliString::parse("IIYYII"));
    EXPECT_EQ(conjugate_ucp(yy, lat).to_string(), OperatorSum(PauliString::parse("IZXXZI")).to_string());
}
