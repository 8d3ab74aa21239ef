#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtop/report.hpp"
#include "qtop/topgen.hpp"

namespace qtop {

// Resolved run configuration. Optional fields restrict the default parameter
// sets of the suites when present.
struct RunConfig {
    std::string backend = "numeric";
    bool backend_set = false;  // verify filters by backend only when set explicitly
    double q = 1.2;
    std::optional<int> n;
    std::optional<Exp> spin;
    int D = 12;
    std::optional<Exp> gamma;
    std::optional<Normalizer> normalizer;
    double tol = 1e-8;
    bool tol_set = false;  // an explicit tolerance overrides every numeric upper bound
    std::string format = "json";
    unsigned workers = 1;
    std::string out;

    // Throws std::invalid_argument on inconsistent values.
    void validate() const;
};

// Config echo used in reports (excludes output-only settings).
Json config_json(const RunConfig& cfg);

const std::vector<std::string>& suite_names();

// Checks of one suite ("all" for every suite), restricted by the config.
std::vector<Check> build_checks(const std::string& suite, const RunConfig& cfg);

}  // namespace qtop
