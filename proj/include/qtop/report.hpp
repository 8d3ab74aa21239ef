#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtop/ringmat.hpp"

namespace qtop {

using Json = nlohmann::json;

// Upper: pass iff residual <= tol. Lower: pass iff residual >= tol (negative
// controls and documented non-relations).
enum class Bound { Upper, Lower };

struct Check {
    std::string id;
    std::string anchor;
    int criterion = 0;
    double tol = 0.0;
    Bound bound = Bound::Upper;
    std::function<double()> run;
};

struct CheckResult {
    std::string id, anchor;
    int criterion = 0;
    double tol = 0.0;
    Bound bound = Bound::Upper;
    std::optional<double> residual;  // empty if the check threw
    std::string error;
    bool pass = false;
    double seconds = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;  // sorted by id
    std::size_t passed = 0, failed = 0, errors = 0;
    bool pass() const { return failed == 0 && errors == 0; }
};

bool evaluate(double residual, double tol, Bound bound);

// Runs the checks on up to `workers` threads; the result order is by id.
Report run_checks(std::vector<Check> checks, unsigned workers);

// Doubles wrapped with num() are printed with 17 significant digits by
// dump_json; NaN and infinities become null.
Json num(double x);
std::string dump_json(const Json& j);

Json report_json(const Report& r, const Json& config, const std::string& suite, bool timings);
std::string report_text(const Report& r, bool timings);

// Matrix serialization: exact entries as strings, numeric entries as [re, im].
Json scalar_json(const Laurent& x);
Json scalar_json(const Numeric& x);
Json scalar_json(const Rational& x);

template <class S>
Json matrix_json(const Matrix<S>& m, bool sparse = false) {
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["legs"] = m.leg_dims();
    if (sparse) {
        Json nz = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!ScalarTraits<S>::is_zero(m(i, j))) nz.push_back(Json::array({i, j, scalar_json(m(i, j))}));
        out["nonzeros"] = nz;
    } else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
            rows.push_back(row);
        }
        out["entries"] = rows;
    }
    return out;
}

}  // namespace qtop
