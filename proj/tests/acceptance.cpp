// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "clusterspt/analysis.hpp"
#include "clusterspt/clifford.hpp"
#include "dense_oracle.hpp"

using namespace clusterspt;

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool operators_commute(const OperatorSum& a, const OperatorSum& b) { return commutator(a, b).is_zero(); }

class CriterionPrinter : public testing::EmptyTestEventListener {
    void OnTestEnd(const testing::TestInfo& info) override {
        const std::string name = info.name();
        std::cout << "[" << name.substr(0, name.find('_')) << "] "
                  << (info.result()->Passed() ? "PASS" : "FAIL") << "  " << name.substr(name.find('_') + 1)
                  << std::endl;
    }
};

}  // namespace

TEST(Acceptance, AC1_StabilizerPairsCommute) {
    const Stopwatch clock;
    for (auto [L, b] : std::vector<std::pair<int, Boundary>>{{6, Boundary::open},
                                                             {9, Boundary::open},
                                                             {12, Boundary::open},
                                                             {15, Boundary::open},
                                                             {6, Boundary::periodic},
                                                             {8, Boundary::periodic},
                                                             {12, Boundary::periodic}}) {
        const LatticeSpec lat(L, b);
        const auto rep = verify_stabilizer_algebra(lat, {}, 0);
        const int n = static_cast<int>(stabilizer_sites(lat).size());
        EXPECT_EQ(rep.pairs_checked, n * (n - 1) / 2);
        EXPECT_TRUE(rep.passed()) << "L=" << L;
    }
    EXPECT_LT(clock.seconds(), 1.0);
}

TEST(Acceptance, AC2_GroundDegeneracyByDenseDiagonalization) {
    const Stopwatch clock;
    for (int L : {6, 9, 12}) {
        const auto spec = eig_low(cluster_hamiltonian(LatticeSpec(L, Boundary::open)), 6, SolverMethod::dense);
        EXPECT_NEAR(spec.ground_energy(), -(L - 2), 1e-9) << "open L=" << L;
        EXPECT_EQ(spec.ground_degeneracy, 4) << "open L=" << L;
        EXPECT_NEAR(spec.gap, 2.0, 1e-9) << "open L=" << L;
        for (double r : spec.residuals) EXPECT_LE(r, 1e-9 * spec.norm_bound);
    }
    for (int L : {6, 8, 12}) {
        const auto spec = eig_low(cluster_hamiltonian(LatticeSpec(L, Boundary::periodic)), 2, SolverMethod::dense);
        EXPECT_NEAR(spec.ground_energy(), -L, 1e-9) << "periodic L=" << L;
        EXPECT_EQ(spec.ground_degeneracy, 1) << "periodic L=" << L;
        for (double r : spec.residuals) EXPECT_LE(r, 1e-9 * spec.norm_bound);
    }
    EXPECT_LT(clock.seconds(), 60.0);
}

TEST(Acceptance, AC3_ControlPhaseBasisChange) {
    for (int L = 3; L <= 21; ++L) {
        const LatticeSpec lat(L, Boundary::open);
        OperatorSum field(L);
        for (int i = 2; i <= L - 1; ++i) field.add_term(PauliString::single(L, i, 'X'), -1.0);
        const OperatorSum mapped = conjugate_ucp(cluster_hamiltonian(lat), lat);
        EXPECT_TRUE((mapped - field).is_zero()) << "L=" << L;
        if (L <= 8) {
            oracle::Matrix u = oracle::Matrix::Identity(1 << L, 1 << L);
            const CzCircuit circuit = CzCircuit::control_phase(lat);
            for (const auto& [i, j] : circuit.edges()) u = u * oracle::cz_matrix(L, i, j);
            const oracle::Matrix h = oracle::sum_matrix(cluster_hamiltonian(lat));
            EXPECT_LE(oracle::max_abs(u * h * u - oracle::sum_matrix(field)), 1e-12) << "L=" << L;
        }
    }
}

TEST(Acceptance, AC4_GlobalSymmetryAlgebra) {
    const Stopwatch clock;
    for (int L : {9, 15}) {
        const LatticeSpec lat(L, Boundary::open);
        const OperatorSum hc = cluster_hamiltonian(lat);
        OperatorSum t[2];
        for (int s = 1; s <= 2; ++s) {
            const SymmetryPair pair = global_pair(s, lat, Construction::tau_canonical);
            t[s - 1] = pair.normalized();
            EXPECT_TRUE(operators_commute(hc, t[s - 1])) << "L=" << L << " s=" << s;
            EXPECT_TRUE((t[s - 1] * t[s - 1] - OperatorSum::identity(L)).is_zero()) << "L=" << L << " s=" << s;
            EXPECT_TRUE(anticommutator(OperatorSum(pair.a), OperatorSum(pair.b)).is_zero()) << "L=" << L;
        }
        EXPECT_TRUE(operators_commute(t[0], t[1])) << "L=" << L;
        for (int s = 0; s < 2; ++s) {
            for (int j = 2; j <= L - 1; ++j) {
                for (char c : {'X', 'Y', 'Z'}) {
                    EXPECT_FALSE(operators_commute(t[s], OperatorSum(PauliString::single(L, j, c))))
                        << "L=" << L << " T" << s + 1 << " " << c << j;
                }
            }
        }
        ProtectionOptions opts;
        opts.numeric_max_sites = 0;
        const auto rep = certify_protection(build_model(lat), opts);
        EXPECT_TRUE(rep.algebra.passed());
        EXPECT_TRUE(rep.bulk_protected_by[0] && rep.bulk_protected_by[1]);
    }
    EXPECT_LT(clock.seconds(), 5.0);
}

TEST(Acceptance, AC5_ForbiddenOperatorsExcluded) {
    for (int L : {9, 15}) {
        const LatticeSpec lat(L, Boundary::open);
        const OperatorSum t1 = global_symmetry(1, lat);
        const OperatorSum t2 = global_symmetry(2, lat);
        std::set<std::string> names;
        for (const auto& p : forbidden_set(lat)) {
            names.insert(compact_name(p));
            const OperatorSum op(p);
            EXPECT_FALSE(operators_commute(t1, op) && operators_commute(t2, op)) << compact_name(p);
        }
        EXPECT_EQ(names.size(), 15u);
        EXPECT_TRUE(names.count("Z1Z" + std::to_string(L)));
        EXPECT_TRUE(names.count("X1Z2Z" + std::to_string(L - 1) + "X" + std::to_string(L)));
    }
}

TEST(Acceptance, AC6_FirstOrderSplitting) {
    const LatticeSpec lat(9, Boundary::open);
    const auto spec = eig_low(cluster_hamiltonian(lat), 6, SolverMethod::dense);
    ASSERT_EQ(spec.ground_degeneracy, 4);
    for (int j = 2; j <= 8; ++j) {
        for (char c : {'X', 'Y', 'Z'}) {
            const auto m = ground_projector(spec, OperatorSum(PauliString::single(9, j, c)));
            EXPECT_LE(m.norm(), 1e-10) << c << j;
        }
    }
    const auto z1 = ground_projector(spec, OperatorSum(PauliString::single(9, 1, 'Z')));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z1);
    const double expected[4] = {-1.0, -1.0, 1.0, 1.0};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.eigenvalues()[k], expected[k], 1e-9);
}

TEST(Acceptance, AC7_ClusterStatesSpanGroundSpace) {
    const LatticeSpec lat(9, Boundary::open);
    std::vector<StateVector> states;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) states.push_back(build_cluster_state(lat, k, l));
    }
    const Eigen::Index dim = Eigen::Index{1} << 9;
    Eigen::MatrixXcd c(dim, 4);
    for (int a = 0; a < 4; ++a) c.col(a) = states[a].amplitudes();
    const Eigen::MatrixXcd gram = c.adjoint() * c;
    EXPECT_LE((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);

    for (const auto& psi : states) {
        for (int i : stabilizer_sites(lat)) {
            const StateVector s_psi = apply(OperatorSum(stabilizer(i, lat)), psi);
            EXPECT_LE((s_psi.amplitudes() - psi.amplitudes()).norm(), 1e-10) << "S_" << i;
        }
    }

    const auto spec = eig_low(cluster_hamiltonian(lat), 6, SolverMethod::dense);
    ASSERT_EQ(spec.ground_degeneracy, 4);
    Eigen::MatrixXcd g(dim, 4);
    for (int a = 0; a < 4; ++a) g.col(a) = spec.eigenvectors[a].amplitudes();
    const Eigen::MatrixXcd diff = c * c.adjoint() - g * g.adjoint();
    const double distance = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(diff, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .cwiseAbs()
                                .maxCoeff();
    EXPECT_LE(distance, 1e-8);
}

TEST(Acceptance, AC8_IsingScanTransition) {
    const Stopwatch clock;
    const std::vector<double> grid = lambda_grid(0.5, 1.5, 0.05);
    double lambda_star[3] = {0, 0, 0};
    const int sizes[3] = {8, 10, 12};
    for (int n = 0; n < 3; ++n) {
        const LatticeSpec lat(sizes[n], Boundary::periodic);
        const ScanResult scan = phase_scan(lat, grid);
        const TransitionEstimate est = transition_estimate(scan);
        lambda_star[n] = est.lambda_star;
        std::cout << "  L=" << sizes[n] << " lambda*=" << est.lambda_star << " gap=" << est.gap_at_minimum
                  << (est.boundary ? " (grid edge)" : "") << std::endl;
        for (const auto& p : scan.points) {
            EXPECT_TRUE(p.parity_commutes) << "lambda=" << p.lambda;
            EXPECT_TRUE(std::isfinite(p.ground_energy));
        }
        if (sizes[n] == 12) {
            EXPECT_GE(est.lambda_star, 0.8);
            EXPECT_LE(est.lambda_star, 1.2);
            const ScanResult origin = phase_scan(lat, {0.0});
            EXPECT_NEAR(origin.points[0].string_order, 1.0, 1e-10);
            double previous = origin.points[0].string_order;
            for (const auto& p : scan.points) {
                EXPECT_LT(p.string_order, previous) << "lambda=" << p.lambda;
                previous = p.string_order;
            }
        }
    }
    EXPECT_LT(std::abs(lambda_star[1] - 1.0), std::abs(lambda_star[0] - 1.0)) << "L=10 vs L=8";
    EXPECT_LT(std::abs(lambda_star[2] - 1.0), std::abs(lambda_star[1] - 1.0)) << "L=12 vs L=10";

    // Symbolic [H(lambda), prod X] = 0 on the grid.
    for (double lam : grid) {
        const LatticeSpec lat(12, Boundary::periodic);
        const OperatorSum h = cluster_hamiltonian(lat) + ising_perturbation(lat, lam);
        EXPECT_TRUE(operators_commute(h, OperatorSum(parity_and_timereversal(lat).first)));
    }
    EXPECT_LT(clock.seconds(), 600.0);
}

TEST(Acceptance, AC9_SymbolicAgreesWithMatrixOracle) {
    auto check = [](const PauliString& p, const PauliString& q) {
        const oracle::Matrix mp = oracle::pauli_matrix(p);
        const oracle::Matrix mq = oracle::pauli_matrix(q);
        const oracle::Matrix prod = mp * mq;
        EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(multiply(p, q)) - prod), 1e-12)
            << p.to_string() << " * " << q.to_string();
        EXPECT_EQ(commutes(p, q), oracle::max_abs(prod - mq * mp) <= 1e-12) << p.to_string() << ", " << q.to_string();
    };
    auto check_conjugation = [](const PauliString& p, int i, int j) {
        const oracle::Matrix cz = oracle::cz_matrix(p.length(), i, j);
        EXPECT_LE(oracle::max_abs(oracle::pauli_matrix(conjugate_cz(p, i, j)) - cz * oracle::pauli_matrix(p) * cz),
                  1e-12)
            << p.to_string() << " CZ(" << i << "," << j << ")";
    };

    for (int L = 1; L <= 4; ++L) {
        const std::uint64_t n = std::uint64_t{1} << L;
        std::vector<PauliString> all;
        for (std::uint64_t x = 0; x < n; ++x) {
            for (std::uint64_t z = 0; z < n; ++z) all.emplace_back(L, 0, x, z);
        }
        for (const auto& p : all) {
            for (const auto& q : all) check(p, q);
            for (int i = 1; i <= L; ++i) {
                for (int j = 1; j <= L; ++j) {
                    if (i != j) check_conjugation(p, i, j);
                }
            }
        }
    }

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        const int L = 1 + static_cast<int>(rng() % 8);
        PauliString p = oracle::random_pauli(L, rng);
        PauliString q = oracle::random_pauli(L, rng);
        check(p, q);
        if (L >= 2) {
            const int i = 1 + static_cast<int>(rng() % L);
            const int j = i % L + 1;
            check_conjugation(p, i, j);
        }
    }
}

int main(int argc, char** argv) {
    testing::InitGoogleTest(&argc, argv);
    testing::UnitTest::GetInstance()->listeners().Append(new CriterionPrinter);
    return RUN_ALL_TESTS();
}
