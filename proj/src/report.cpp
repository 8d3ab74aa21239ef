#include "qtop/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

namespace qtop {

namespace {

// Marks a raw number inside a JSON string; dump_json strips the quotes.
constexpr char kRawTag = '\x01';

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string bound_name(Bound b) { return b == Bound::Upper ? "<=" : ">="; }

}  // namespace

bool evaluate(double residual, double tol, Bound bound) {
    if (std::isnan(residual)) return false;
    return bound == Bound::Upper ? residual <= tol : residual >= tol;
}

Report run_checks(std::vector<Check> checks, unsigned workers) {
    std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    for (std::size_t k = 1; k < checks.size(); ++k)
        if (checks[k].id == checks[k - 1].id) throw std::logic_error("duplicate check id " + checks[k].id);
    std::vector<CheckResult> results(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < checks.size(); k = next++) {
            const Check& c = checks[k];
            CheckResult& r = results[k];
            r.id = c.id;
            r.anchor = c.anchor;
            r.criterion = c.criterion;
            r.tol = c.tol;
            r.bound = c.bound;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                r.residual = c.run();
                r.pass = evaluate(*r.residual, c.tol, c.bound);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, unsigned(checks.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Report rep;
    rep.checks = std::move(results);
    for (const auto& r : rep.checks) {
        if (!r.error.empty())
            ++rep.errors;
        else if (r.pass)
            ++rep.passed;
        else
            ++rep.failed;
    }
    return rep;
}

Json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    if (x == 0) x = 0;  // drop the sign of -0
    return std::string(1, kRawTag) + format17(x);
}

std::string dump_json(const Json& j) {
    const std::string s = j.dump(2);
    const std::string open = "\"\\u0001";
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (true) {
        std::size_t k = s.find(open, pos);
        if (k == std::string::npos) break;
        std::size_t end = s.find('"', k + open.size());
        out.append(s, pos, k - pos);
        out.append(s, k + open.size(), end - k - open.size());
        pos = end + 1;
    }
    out.append(s, pos, std::string::npos);
    return out + "\n";
}

Json report_json(const Report& r, const Json& config, const std::string& suite, bool timings) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["id"] = c.id;
        e["anchor"] = c.anchor;
        e["criterion"] = c.criterion;
        e["tol"] = num(c.tol);
        e["bound"] = bound_name(c.bound);
        e["residual"] = c.residual ? num(*c.residual) : Json(nullptr);
        e["pass"] = c.pass;
        if (!c.error.empty()) e["error"] = c.error;
        if (timings) e["seconds"] = num(c.seconds);
        checks.push_back(e);
    }
    Json out;
    out["suite"] = suite;
    out["config"] = config;
    out["checks"] = checks;
    out["summary"] = {{"total", r.checks.size()},
                      {"passed", r.passed},
                      {"failed", r.failed},
                      {"errors", r.errors},
                      {"pass", r.pass()}};
    return out;
}

std::string report_text(const Report& r, bool timings) {
    std::size_t w = 2;
    for (const auto& c : r.checks) w = std::max(w, c.id.size());
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.error.empty() ? (c.pass ? "PASS " : "FAIL ") : "ERROR") << "  " << std::left << std::setw(int(w))
           << c.id << "  " << std::setw(24) << (c.residual ? format17(*c.residual) : std::string("-")) << " "
           << bound_name(c.bound) << " " << std::setw(23) << format17(c.tol);
        if (timings) os << "  " << std::fixed << std::setprecision(3) << c.seconds << "s" << std::defaultfloat;
        os << "  " << c.anchor;
        if (!c.error.empty()) os << "  [" << c.error << "]";
        os << "\n";
    }
    os << r.passed << " passed, " << r.failed << " failed, " << r.errors << " errors\n";
    return os.str();
}

Json scalar_json(const Laurent& x) { return x.str(); }
Json scalar_json(const Numeric& x) { return Json::array({num(x.real()), num(x.imag())}); }
Json scalar_json(const Rational& x) { return x.get_str(); }

}  // namespace qtop
