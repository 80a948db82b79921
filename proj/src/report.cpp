#include "weylgeo/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weylgeo/errors.hpp"

namespace weylgeo {

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string report_to_json(const SuiteReport& report, bool include_runtime) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema\": \"weylgeo-report-v1\",\n";
    out << "  \"suite\": \"" << escape(report.suite) << "\",\n";
    out << "  \"passed\": " << (report.passed() ? "true" : "false") << ",\n";
    const SuiteConfig& c = report.config;
    out << "  \"config\": {\n";
    out << "    \"model\": \"" << escape(c.model) << "\",\n";
    out << "    \"radius\": " << fmt_double(c.radius) << ",\n";
    out << "    \"h\": " << fmt_double(c.h) << ",\n";
    out << "    \"dt\": " << fmt_double(c.dt) << ",\n";
    out << "    \"steps\": " << c.steps << ",\n";
    out << "    \"grid\": " << c.grid << ",\n";
    out << "    \"seed\": " << c.seed << ",\n";
    out << "    \"tol\": " << fmt_double(c.tol) << ",\n";
    out << "    \"resolution\": " << c.resolution << ",\n";
    out << "    \"n_psi\": " << c.n_psi << ",\n";
    out << "    \"n_geodesics\": " << c.n_geodesics << ",\n";
    out << "    \"n_alpha\": " << c.n_alpha << "\n";
    out << "  },\n";
    out << "  \"checks\": [";
    for (size_t i = 0; i < report.checks.size(); ++i) {
        const CheckRecord& r = report.checks[i];
        out << (i ? ",\n" : "\n");
        out << "    {\"name\": \"" << escape(r.name) << "\", \"residual\": "
            << fmt_double(r.residual) << ", \"tolerance\": " << fmt_double(r.tolerance)
            << ", \"passed\": " << (r.passed ? "true" : "false");
        if (r.has_order()) out << ", \"order\": " << fmt_double(r.order);
        if (include_runtime) out << ", \"runtime_ms\": " << fmt_double(r.runtime_ms);
        out << "}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string report_to_csv(const SuiteReport& report, bool include_runtime) {
    std::ostringstream out;
    out << "suite,check,residual,tolerance,passed,order,runtime_ms\n";
    for (const CheckRecord& r : report.checks) {
        out << report.suite << ',' << r.name << ',' << fmt_double(r.residual) << ','
            << fmt_double(r.tolerance) << ',' << (r.passed ? "true" : "false") << ',';
        if (r.has_order()) out << fmt_double(r.order);
        out << ',';
        if (include_runtime) out << fmt_double(r.runtime_ms);
        out << '\n';
    }
    return out.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::io, "cannot open " + tmp);
        out << text;
        if (!out) fail(ErrorCode::io, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(ErrorCode::io, "rename failed: " + path);
}

void write_report(const SuiteReport& report, const std::string& path, const std::string& format,
                  bool include_runtime) {
    if (format == "json")
        write_text_atomic(path, report_to_json(report, include_runtime));
    else if (format == "csv")
        write_text_atomic(path, report_to_csv(report, include_runtime));
    else
        fail(ErrorCode::argument, "unknown report format: " + format);
}

SuiteReport parse_report_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::io, std::string("report parse error: ") + e.what());
    }
    SuiteReport report;
    try {
        report.suite = j.at("suite").get<std::string>();
        const auto& c = j.at("config");
        report.config.model = c.at("model").get<std::string>();
        report.config.radius = c.at("radius").get<double>();
        report.config.h = c.at("h").get<double>();
        report.config.dt = c.at("dt").get<double>();
        report.config.steps = c.at("steps").get<int>();
        report.config.grid = c.at("grid").get<int>();
        report.config.seed = c.at("seed").get<uint64_t>();
        report.config.tol = c.at("tol").get<double>();
        report.config.resolution = c.at("resolution").get<int>();
        report.config.n_psi = c.at("n_psi").get<int>();
        report.config.n_geodesics = c.at("n_geodesics").get<int>();
        report.config.n_alpha = c.at("n_alpha").get<int>();
        for (const auto& jc : j.at("checks")) {
            CheckRecord r;
            r.name = jc.at("name").get<std::string>();
            r.residual = jc.at("residual").get<double>();
            r.tolerance = jc.at("tolerance").get<double>();
            r.passed = jc.at("passed").get<bool>();
            if (jc.contains("order")) r.order = jc.at("order").get<double>();
            if (jc.contains("runtime_ms")) r.runtime_ms = jc.at("runtime_ms").get<double>();
            report.checks.push_back(std::move(r));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorCode::io, std::string("report schema error: ") + e.what());
    }
    return report;
}

SuiteReport load_report_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report_json(buf.str());
}

bool reports_equal(const SuiteReport& a, const SuiteReport& b) {
    auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
    if (a.suite != b.suite || a.checks.size() != b.checks.size()) return false;
    const SuiteConfig &ca = a.config, &cb = b.config;
    if (ca.model != cb.model || !eq(ca.radius, cb.radius) || !eq(ca.h, cb.h) ||
        !eq(ca.dt, cb.dt) || ca.steps != cb.steps || ca.grid != cb.grid || ca.seed != cb.seed ||
        !eq(ca.tol, cb.tol) || ca.resolution != cb.resolution || ca.n_psi != cb.n_psi ||
        ca.n_geodesics != cb.n_geodesics || ca.n_alpha != cb.n_alpha)
        return false;
    for (size_t i = 0; i < a.checks.size(); ++i) {
        const CheckRecord &ra = a.checks[i], &rb = b.checks[i];
        if (ra.name != rb.name || !eq(ra.residual, rb.residual) ||
            !eq(ra.tolerance, rb.tolerance) || ra.passed != rb.passed ||
            !eq(ra.order, rb.order) || !eq(ra.runtime_ms, rb.runtime_ms))
            return false;
    }
    return true;
}

} // namespace weylgeo
