#include "clusterspt/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace clusterspt::report {

namespace {

Json lattice_json(const LatticeSpec& lattice) {
    return Json{{"size", lattice.length}, {"boundary", std::string(to_string(lattice.boundary))}};
}

Json numbers(const std::vector<double>& values) {
    Json out = Json::array();
    for (double v : values) out.push_back(number(v));
    return out;
}

Json checks_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

// RFC 4180 quoting for cells that need it.
std::string cell(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", round12(v));
    return buf;
}

Json envelope(Json config, Json results, Json verdict, Json timings) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    doc["verdict"] = std::move(verdict);
    doc["timings"] = std::move(timings);
    return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json results_json(const VerifyReport& report) {
    Json findings = Json::array();
    for (const auto& f : report.findings) findings.push_back(Json{{"name", f.name}, {"detail", f.detail}});
    return Json{{"lattice", lattice_json(report.lattice)},
                {"checks", checks_json(report.checks)},
                {"findings", std::move(findings)}};
}

Json verdict_json(const VerifyReport& report) {
    Json failed = Json::array();
    for (const auto& c : report.checks) {
        if (!c.passed) failed.push_back(c.name);
    }
    return Json{{"passed", report.passed()}, {"failed_checks", std::move(failed)}};
}

Json results_json(const SpectrumResult& spectrum) {
    return Json{{"size", spectrum.length},
                {"method", std::string(to_string(spectrum.method))},
                {"eigenvalues", numbers(spectrum.eigenvalues)},
                {"residuals", numbers(spectrum.residuals)},
                {"norm_bound", number(spectrum.norm_bound)},
                {"ground_energy", number(spectrum.ground_energy())},
                {"ground_degeneracy", spectrum.ground_degeneracy},
                {"gap", number(spectrum.gap)}};
}

Json verdict_json(const SpectrumResult& spectrum) {
    return Json{{"gap_resolved", spectrum.gap_resolved()}, {"ground_degeneracy", spectrum.ground_degeneracy}};
}

Json results_json(const ProtectionReport& report) {
    const auto& a = report.algebra;
    Json algebra{{"squares_to_identity", {a.squares_to_identity[0], a.squares_to_identity[1]}},
                 {"commutes_with_h", {a.commutes_with_h[0], a.commutes_with_h[1]}},
                 {"pair_anticommutes", {a.pair_anticommutes[0], a.pair_anticommutes[1]}},
                 {"t1_t2_commute", a.t1_t2_commute},
                 {"cross_pairs_commute", a.cross_pairs_commute}};
    Json probes = Json::array();
    for (const auto& p : report.probes) {
        probes.push_back(Json{{"name", p.name},
                              {"family", p.family},
                              {"commutes_with_h", p.commutes_with_h},
                              {"commutes_with_t1", p.commutes_with_t1},
                              {"commutes_with_t2", p.commutes_with_t2},
                              {"first_order", std::string(to_string(p.first_order))},
                              {"split_eigenvalues", numbers(p.split_eigenvalues)}});
    }
    return Json{{"model_id", report.model_id},
                {"lattice", lattice_json(report.lattice)},
                {"symmetry", report.symmetry},
                {"algebra", std::move(algebra)},
                {"bulk_protected_by", {report.bulk_protected_by[0], report.bulk_protected_by[1]}},
                {"bulk_protected_jointly", report.bulk_protected_jointly},
                {"sigma_excluded", report.sigma_excluded},
                {"numeric_checked", report.numeric_checked},
                {"ground_degeneracy", report.ground_degeneracy},
                {"probes", std::move(probes)}};
}

Json verdict_json(const ProtectionReport& report) {
    return Json{{"protected", report.protected_}, {"failures", report.failures}};
}

Json results_json(const ScanResult& scan, const std::optional<TransitionEstimate>& estimate) {
    Json points = Json::array();
    for (const auto& p : scan.points) {
        points.push_back(Json{{"lambda", number(p.lambda)},
                              {"ground_energy", number(p.ground_energy)},
                              {"gap", number(p.gap)},
                              {"sector_gap", number(p.sector_gap)},
                              {"parity_gap", number(p.parity_gap)},
                              {"ground_parity", p.ground_parity},
                              {"parity_expectation", number(p.parity_expectation)},
                              {"string_order", number(p.string_order)},
                              {"yy_correlator", number(p.yy_correlator)},
                              {"parity_commutes", p.parity_commutes},
                              {"time_reversal_invariant", p.time_reversal_invariant}});
    }
    Json out{{"lattice", lattice_json(scan.lattice)},
             {"method", std::string(to_string(scan.method))},
             {"string_probe", scan.string_probe},
             {"points", std::move(points)},
             {"sector_changes", scan.sector_changes}};
    if (estimate) {
        out["transition"] = Json{{"lambda_star", number(estimate->lambda_star)},
                                 {"gap_at_minimum", number(estimate->gap_at_minimum)},
                                 {"index", estimate->index},
                                 {"boundary", estimate->boundary}};
    } else {
        out["transition"] = nullptr;
    }
    return out;
}

Json verdict_json(const ScanResult& scan, const std::optional<TransitionEstimate>& estimate) {
    return Json{{"passed", scan.anomalies.empty()},
                {"anomalies", scan.anomalies},
                {"lambda_star", estimate ? number(estimate->lambda_star) : Json(nullptr)},
                {"boundary_minimum", estimate ? Json(estimate->boundary) : Json(nullptr)}};
}

void write_csv(std::ostream& out, const VerifyReport& report) {
    out << "name,passed,detail\n";
    for (const auto& c : report.checks) out << cell(c.name) << ',' << flag(c.passed) << ',' << cell(c.detail) << '\n';
}

void write_csv(std::ostream& out, const SpectrumResult& spectrum) {
    out << "index,real,imag,residual\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        out << i << ',' << format_number(spectrum.eigenvalues[i]) << ",0," << format_number(spectrum.residuals[i])
            << '\n';
    }
}

void write_csv(std::ostream& out, const ProtectionReport& report) {
    out << "name,family,commutes_with_h,commutes_with_t1,commutes_with_t2,first_order,split_eigenvalues\n";
    for (const auto& p : report.probes) {
        std::string eig;
        for (double v : p.split_eigenvalues) eig += (eig.empty() ? "" : " ") + format_number(v);
        out << cell(p.name) << ',' << p.family << ',' << flag(p.commutes_with_h) << ',' << flag(p.commutes_with_t1)
            << ',' << flag(p.commutes_with_t2) << ',' << to_string(p.first_order) << ',' << eig << '\n';
    }
}

void write_csv(std::ostream& out, const ScanResult& scan) {
    out << "lambda,ground_energy,gap,sector_gap,parity_gap,ground_parity,parity_expectation,string_order,"
           "yy_correlator,parity_commutes,time_reversal_invariant\n";
    for (const auto& p : scan.points) {
        out << format_number(p.lambda) << ',' << format_number(p.ground_energy) << ',' << format_number(p.gap) << ','
            << format_number(p.sector_gap) << ',' << format_number(p.parity_gap) << ',' << p.ground_parity << ','
            << format_number(p.parity_expectation) << ',' << format_number(p.string_order) << ','
            << format_number(p.yy_correlator) << ',' << flag(p.parity_commutes) << ','
            << flag(p.time_reversal_invariant) << '\n';
    }
}

}  // namespace clusterspt::report
