#include "clusterspt/model.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "clusterspt/clifford.hpp"
#include "clusterspt/errors.hpp"

namespace clusterspt {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_open(const LatticeSpec& lattice, const char* what) {
    if (!lattice.is_open()) {
        throw DomainError(std::string(what) + " requires an open chain, got " + lattice.describe());
    }
}

void require_global(const LatticeSpec& lattice) {
    if (!lattice.admits_global_symmetry()) {
        throw DomainError("global symmetry needs an open chain with L = 3 (mod 6), L >= 9; got " +
                          lattice.describe());
    }
}

void require_generator_index(int s) {
    if (s != 1 && s != 2) throw DomainError("symmetry index must be 1 or 2, got " + std::to_string(s));
}

PauliString word(int length, std::initializer_list<std::pair<int, char>> factors) {
    std::string letters(static_cast<std::size_t>(length), 'I');
    for (const auto& [site, letter] : factors) {
        check_site(length, site);
        letters[site - 1] = letter;
    }
    return PauliString::from_letters(letters);
}

// Tau-basis letter at 1-based site j for the bulk of (A-bar_s or B-bar_s).
char tau_bulk_letter(int s, bool is_a, int j) {
    const int m = (j - 1) % 6;
    if (s == 1) return (is_a ? m < 4 : m >= 2) ? 'X' : 'I';
    return (is_a ? (m >= 1 && m <= 4) : (m == 0 || m >= 3)) ? 'X' : 'I';
}

// Six-site blocks and three-site tails of the literal sigma-basis products.
struct LiteralForm {
    const char* block;
    const char* tail;
};
constexpr LiteralForm kLiteralA[2] = {{"YXXYZZ", "YXX"}, {"ZYXXYZ", "ZYX"}};
constexpr LiteralForm kLiteralB[2] = {{"ZZYXXY", "ZZY"}, {"YZXYXX", "YZZ"}};

PauliString literal(const LiteralForm& form, int length) {
    std::string letters;
    for (int n = 0; n < (length - 3) / 6; ++n) letters += form.block;
    letters += form.tail;
    return PauliString::from_letters(letters);
}

std::string padded_site(int site) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", site);
    return buf;
}

}  // namespace

PauliString stabilizer(int site, const LatticeSpec& lattice) {
    const int left = lattice.wrap(site - 1);
    const int right = lattice.wrap(site + 1);
    if (site < 1 || site > lattice.length || left == 0 || right == 0) {
        throw DomainError("stabilizer S_" + std::to_string(site) + " does not exist on " + lattice.describe());
    }
    return word(lattice.length, {{left, 'Z'}, {site, 'X'}, {right, 'Z'}});
}

std::vector<int> stabilizer_sites(const LatticeSpec& lattice) {
    std::vector<int> sites;
    const int first = lattice.is_open() ? 2 : 1;
    const int last = lattice.is_open() ? lattice.length - 1 : lattice.length;
    for (int i = first; i <= last; ++i) sites.push_back(i);
    return sites;
}

OperatorSum cluster_hamiltonian(const LatticeSpec& lattice) {
    OperatorSum h(lattice.length);
    for (int i : stabilizer_sites(lattice)) h.add_term(stabilizer(i, lattice), -1.0);
    return h;
}

OperatorSum ising_perturbation(const LatticeSpec& lattice, double lambda) {
    if (!std::isfinite(lambda)) throw DomainError("Ising coupling must be finite");
    OperatorSum h(lattice.length);
    if (lambda == 0.0) return h;
    const int bonds = lattice.is_open() ? lattice.length - 1 : lattice.length;
    for (int i = 1; i <= bonds; ++i) {
        h.add_term(word(lattice.length, {{i, 'Y'}, {lattice.wrap(i + 1), 'Y'}}), lambda);
    }
    return h;
}

std::vector<PauliString> edge_generators(const LatticeSpec& lattice) {
    require_open(lattice, "edge generators");
    const int L = lattice.length;
    return {word(L, {{1, 'Z'}}), word(L, {{L, 'Z'}}), word(L, {{1, 'X'}, {2, 'Z'}}),
            word(L, {{L - 1, 'Z'}, {L, 'X'}})};
}

std::vector<PauliString> forbidden_set(const LatticeSpec& lattice) {
    const auto gens = edge_generators(lattice);
    std::vector<PauliString> out;
    for (unsigned subset = 1; subset < 16; ++subset) {
        PauliString p(lattice.length);
        for (unsigned k = 0; k < 4; ++k) {
            if (subset & (1u << k)) p = multiply(p, gens[k]);
        }
        out.push_back(p.unsigned_form());
    }
    return out;
}

OperatorSum SymmetryPair::normalized() const { return kInvSqrt2 * raw(); }

OperatorSum SymmetryPair::raw() const {
    OperatorSum t(a);
    t.add_term(b);
    return t;
}

SymmetryPair local_pair(int s, const LatticeSpec& lattice) {
    require_generator_index(s);
    require_open(lattice, "local symmetry");
    const int L = lattice.length;
    if (L < 4) throw DomainError("local symmetry needs L >= 4, got " + std::to_string(L));
    if (s == 1) {
        return {word(L, {{1, 'X'}, {2, 'Z'}, {L - 1, 'Z'}, {L, 'Y'}}),
                word(L, {{1, 'Z'}, {L - 1, 'Z'}, {L, 'Y'}})};
    }
    return {word(L, {{L - 1, 'Z'}, {L, 'Y'}}), word(L, {{1, 'Y'}, {2, 'Z'}, {L, 'Z'}})};
}

OperatorSum local_symmetry(int s, const LatticeSpec& lattice) { return local_pair(s, lattice).normalized(); }

SymmetryPair tau_pair(int s, const LatticeSpec& lattice) {
    require_generator_index(s);
    require_global(lattice);
    const int L = lattice.length;
    std::string a(static_cast<std::size_t>(L), 'I');
    std::string b(static_cast<std::size_t>(L), 'I');
    for (int j = 1; j <= L; ++j) {
        a[j - 1] = tau_bulk_letter(s, true, j);
        b[j - 1] = tau_bulk_letter(s, false, j);
    }
    if (s == 1) {
        a[L - 1] = 'Y';
        b[0] = 'Z';
        b[L - 1] = 'Y';
    } else {
        a[L - 1] = 'Y';
        b[0] = 'Y';
        b[L - 1] = 'Z';
    }
    return {PauliString::from_letters(a), PauliString::from_letters(b)};
}

SymmetryPair global_pair(int s, const LatticeSpec& lattice, Construction construction) {
    require_generator_index(s);
    require_global(lattice);
    if (construction == Construction::sigma_literal) {
        return {literal(kLiteralA[s - 1], lattice.length), literal(kLiteralB[s - 1], lattice.length)};
    }
    const SymmetryPair tau = tau_pair(s, lattice);
    return {conjugate_ucp(tau.a, lattice), conjugate_ucp(tau.b, lattice)};
}

OperatorSum global_symmetry(int s, const LatticeSpec& lattice, Construction construction) {
    return global_pair(s, lattice, construction).normalized();
}

std::pair<PauliString, PauliString> parity_and_timereversal(const LatticeSpec& lattice) {
    const int L = lattice.length;
    std::string parity(static_cast<std::size_t>(L), 'X');
    std::string edge = parity;
    edge.front() = 'Y';
    edge.back() = 'Y';
    return {PauliString::from_letters(parity), PauliString::from_letters(edge)};
}

std::pair<PauliString, PauliString> zstring_parity_pair(const LatticeSpec& lattice) {
    const int L = lattice.length;
    std::string parity(static_cast<std::size_t>(L), 'Z');
    std::string edge = parity;
    edge.front() = 'Y';
    edge.back() = 'Y';
    return {PauliString::from_letters(parity), PauliString::from_letters(edge)};
}

std::string compact_name(const PauliString& p) {
    const std::string text = p.to_string();
    std::string out = text.substr(0, 2) == "+1" ? "" : text.substr(0, 2) == "-1" ? "-" : text.substr(0, 2);
    bool any = false;
    for (int j = 1; j <= p.length(); ++j) {
        const char c = p.letter(j);
        if (c != 'I') {
            out += c + std::to_string(j);
            any = true;
        }
    }
    return any ? out : out + "I";
}

PauliString parse_compact(std::string_view name, int length) {
    check_length(length);
    if (name.empty()) throw ParseError("empty operator name");
    std::string letters(static_cast<std::size_t>(length), 'I');
    std::size_t pos = 0;
    while (pos < name.size()) {
        const char c = name[pos];
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw ParseError("operator name '" + std::string(name) + "': expected X, Y or Z at offset " +
                             std::to_string(pos));
        }
        std::size_t end = pos + 1;
        while (end < name.size() && std::isdigit(static_cast<unsigned char>(name[end]))) ++end;
        if (end == pos + 1 || end - pos > 4) {
            throw ParseError("operator name '" + std::string(name) + "': missing site after " + c);
        }
        const int site = std::stoi(std::string(name.substr(pos + 1, end - pos - 1)));
        check_site(length, site);
        if (letters[site - 1] != 'I') {
            throw ParseError("operator name '" + std::string(name) + "' repeats site " + std::to_string(site));
        }
        letters[site - 1] = c;
        pos = end;
    }
    return PauliString::from_letters(letters);
}

ModelSpec ModelSpec::to_tau() const {
    ModelSpec out = *this;
    out.basis = Basis::tau;
    out.hamiltonian = conjugate_ucp(hamiltonian, lattice);
    for (auto& [name, op] : out.registry) op = conjugate_ucp(op, lattice);
    return out;
}

std::string ModelSpec::manifest() const {
    std::string out;
    for (const auto& [name, op] : registry) out += name + " = " + op.to_string() + "\n";
    return out;
}

ModelSpec build_model(const LatticeSpec& lattice, double lambda) {
    const OperatorSum hc = cluster_hamiltonian(lattice);
    const OperatorSum hi = ising_perturbation(lattice, lambda);
    ModelSpec model{lattice, lambda, Basis::sigma, hc + hi, {}};
    auto& reg = model.registry;

    for (int i : stabilizer_sites(lattice)) reg.emplace("S_" + padded_site(i), OperatorSum(stabilizer(i, lattice)));
    reg.emplace("H_C", hc);
    reg.emplace("H_I", hi);
    reg.emplace("H", model.hamiltonian);
    const auto [parity, edge_string] = parity_and_timereversal(lattice);
    reg.emplace("parity", OperatorSum(parity));
    reg.emplace("ty_string", OperatorSum(edge_string));

    if (lattice.is_open()) {
        const auto gens = edge_generators(lattice);
        for (std::size_t k = 0; k < gens.size(); ++k) reg.emplace("G_" + std::to_string(k + 1), OperatorSum(gens[k]));
        for (const auto& p : forbidden_set(lattice)) reg.emplace("Sigma[" + compact_name(p) + "]", OperatorSum(p));
        if (lattice.length >= 4) {
            for (int s = 1; s <= 2; ++s) {
                const SymmetryPair pair = local_pair(s, lattice);
                const std::string idx = std::to_string(s);
                reg.emplace("A" + idx + "loc", OperatorSum(pair.a));
                reg.emplace("B" + idx + "loc", OperatorSum(pair.b));
                reg.emplace("T" + idx + "loc", pair.normalized());
            }
        }
    }
    if (lattice.admits_global_symmetry()) {
        for (int s = 1; s <= 2; ++s) {
            const SymmetryPair pair = global_pair(s, lattice, Construction::tau_canonical);
            const std::string idx = std::to_string(s);
            reg.emplace("A" + idx, OperatorSum(pair.a));
            reg.emplace("B" + idx, OperatorSum(pair.b));
            reg.emplace("T" + idx, pair.normalized());
        }
    }
    return model;
}

}  // namespace clusterspt
