#include <algorithm>
#include <cstdio>
#include <map>
#include <thread>

#include "qtop/suites.hpp"

using namespace qtop;

int main() {
    const std::map<int, const char*> titles = {
        {1, "route agreement (universal, L-operator, fundamental)"},
        {2, "Yang-Baxter equation"},
        {3, "RLL relations on the model space"},
        {4, "reflection equation"},
        {5, "contravariant relations for W^(1/2)"},
        {6, "covariant relations and hat transform"},
        {7, "scalars, quantum determinant, projector ranks"},
        {8, "fusion"},
        {9, "Wigner-Eckart factorization and CG maps"},
        {10, "crossing and q-Weyl relations"},
        {11, "classical limit"},
        {12, "negative controls"},
    };
    RunConfig cfg;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    const Report r = run_checks(build_checks("all", cfg), cfg.workers);

    bool all = true;
    for (const auto& [criterion, title] : titles) {
        std::size_t total = 0, good = 0;
        for (const auto& c : r.checks)
            if (c.criterion == criterion) {
                ++total;
                if (c.pass && c.error.empty()) ++good;
            }
        const bool pass = total > 0 && good == total;
        all = all && pass;
        std::printf("%s criterion %d: %s (%zu/%zu checks)\n", pass ? "PASS" : "FAIL", criterion, title, good, total);
        for (const auto& c : r.checks)
            if (c.criterion == criterion && !(c.pass && c.error.empty())) {
                if (c.error.empty())
                    std::printf("    failed %s: residual %.17g, tol %.17g\n", c.id.c_str(), *c.residual, c.tol);
                else
                    std::printf("    error %s: %s\n", c.id.c_str(), c.error.c_str());
            }
    }
    return all ? 0 : 1;
}
