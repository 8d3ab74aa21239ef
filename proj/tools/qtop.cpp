#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qtop/classic.hpp"
#include "qtop/suites.hpp"
#include "qtop/wigner.hpp"

using namespace qtop;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCommonKeys = {"backend", "q",   "n",      "spin",    "D",  "gamma",
                                              "normalizer", "tol", "format", "workers", "out"};

// Raw string values of the common settings, collected from flags and config.
using Settings = std::map<std::string, std::string>;

Settings load_config_file() {
    Settings s;
    const char* path = std::getenv("QTOP_CONFIG");
    if (!path || !*path) return s;
    std::ifstream in(path);
    if (!in) throw UsageError(std::string("cannot read QTOP_CONFIG file '") + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("QTOP_CONFIG is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("QTOP_CONFIG must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(kCommonKeys.begin(), kCommonKeys.end(), key) == kCommonKeys.end())
            throw UsageError("unknown QTOP_CONFIG key '" + key + "'");
        if (value.is_string())
            s[key] = value.get<std::string>();
        else if (value.is_number_integer())
            s[key] = std::to_string(value.get<long long>());
        else if (value.is_number()) {
            std::ostringstream os;
            os << std::setprecision(17) << value.get<double>();
            s[key] = os.str();
        } else if (!value.is_null())
            throw UsageError("QTOP_CONFIG key '" + key + "' must be a string or a number");
    }
    return s;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw UsageError("--" + key + " expects a number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    int x = 0;
    try {
        x = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw UsageError("--" + key + " expects an integer, got '" + v + "'");
    return x;
}

Exp parse_spin(const std::string& key, const std::string& v) {
    try {
        return parse_exp(v);
    } catch (const std::exception&) {
        throw UsageError("--" + key + " expects a rational such as 1/2, got '" + v + "'");
    }
}

RunConfig resolve(const Settings& flags) {
    Settings s = load_config_file();
    for (const auto& [k, v] : flags) s[k] = v;
    RunConfig cfg;
    auto has = [&](const char* k) { return s.count(k) > 0; };
    if (has("backend")) {
        cfg.backend = s["backend"];
        if (cfg.backend == "rational") cfg.backend = "exact";
        cfg.backend_set = true;
    }
    if (has("q")) cfg.q = parse_double("q", s["q"]);
    if (has("n")) cfg.n = parse_int("n", s["n"]);
    if (has("spin")) cfg.spin = parse_spin("spin", s["spin"]);
    if (has("D")) cfg.D = parse_int("D", s["D"]);
    if (has("gamma")) cfg.gamma = parse_spin("gamma", s["gamma"]);
    if (has("normalizer")) {
        try {
            cfg.normalizer = parse_normalizer(s["normalizer"]);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (has("tol")) {
        cfg.tol = parse_double("tol", s["tol"]);
        cfg.tol_set = true;
    }
    if (has("format")) cfg.format = s["format"];
    if (has("workers")) {
        const int w = parse_int("workers", s["workers"]);
        if (w < 1) throw UsageError("--workers must be at least 1");
        cfg.workers = unsigned(w);
    }
    if (has("out")) cfg.out = s["out"];
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out);
    if (!os) throw UsageError("cannot write '" + cfg.out + "'");
    os << text;
}

void add_common(CLI::App* cmd, Settings& flags) {
    for (const auto& key : kCommonKeys) {
        auto* opt = cmd->add_option_function<std::string>(
            "--" + key, [&flags, key](const std::string& v) { flags[key] = v; });
        opt->type_name(key == "out" ? "FILE" : "VALUE");
    }
}

// ---- construct ----

struct ConstructArgs {
    std::string kind, variant = "plus", j1, j2, j;
    bool covariant = false, dense = false;
};

Variant parse_variant(const std::string& v) {
    if (v == "plus") return Variant::Plus;
    if (v == "minus") return Variant::Minus;
    throw UsageError("--variant must be plus or minus");
}

template <class S>
Json rmatrix_json(const RMatrix<S>& r) {
    Json j = matrix_json(r.m);
    j["variant"] = variant_name(r.variant);
    j["normalization"] = r.normalization;
    return j;
}

Json construct(const ConstructArgs& a, const RunConfig& cfg) {
    const bool exact = cfg.backend == "exact";
    const QContext ctx = exact ? QContext::exact(2 * cfg.n.value_or(2)) : QContext::numeric(cfg.q);
    const Variant v = parse_variant(a.variant);
    const Exp half(1, 2);
    Json out;
    out["kind"] = a.kind;
    out["config"] = config_json(cfg);
    if (a.kind == "rmatrix") {
        const int n = cfg.n.value_or(2);
        out["object"] = exact ? rmatrix_json(fundamental_R<Laurent>(n, v, ctx)) : rmatrix_json(fundamental_R<Numeric>(n, v, ctx));
    } else if (a.kind == "lop") {
        const Exp s = cfg.spin.value_or(half);
        out["object"] = exact ? rmatrix_json(lop_substituted_R<Laurent>(s, v, ctx, Basis::Integral))
                              : rmatrix_json(lop_substituted_R<Numeric>(s, v, ctx, Basis::Unitary));
        out["object"]["basis"] = exact ? "integral" : "unitary";
    } else if (a.kind == "wgen") {
        const Exp g = cfg.gamma.value_or(0);
        auto describe = [&](const auto& gm) {
            Json j = matrix_json(gm.m, !a.dense);
            j["type"] = kind_name(gm.kind);
            j["margin"] = gm.margin;
            j["gamma"] = exp_string(gm.gamma);
            j["normalizer"] = gm.normalizer;
            return j;
        };
        if (exact) {
            const Normalizer f = cfg.normalizer.value_or(Normalizer::Identity);
            if (f != Normalizer::Identity) throw UsageError("the exact backend supports only --normalizer identity");
            ModelSpace<Laurent> ms(cfg.D, g, ctx);
            auto w = build_W_half(ms, f);
            out["object"] = a.covariant ? describe(convert_contra_to_co(w, weyl_spin<Laurent>(half, ctx))) : describe(w);
        } else {
            ModelSpace<Numeric> ms(cfg.D, g, ctx);
            auto w = build_W_half(ms, cfg.normalizer.value_or(Normalizer::InverseSqrtQnum));
            out["object"] = a.covariant ? describe(convert_contra_to_co(w, weyl_spin<Numeric>(half, ctx))) : describe(w);
        }
    } else if (a.kind == "weyl") {
        if (cfg.n && cfg.spin) throw UsageError("construct weyl takes --spin or --n, not both");
        if (cfg.n)
            out["object"] = exact ? matrix_json(weyl_fundamental<Laurent>(*cfg.n, ctx))
                                  : matrix_json(weyl_fundamental<Numeric>(*cfg.n, ctx));
        else {
            const Exp s = cfg.spin.value_or(half);
            out["object"] = exact ? matrix_json(weyl_spin<Laurent>(s, ctx)) : matrix_json(weyl_spin<Numeric>(s, ctx));
        }
    } else if (a.kind == "cg") {
        if (exact) throw UsageError("construct cg is numeric only");
        if (a.j1.empty() || a.j2.empty() || a.j.empty()) throw UsageError("construct cg needs --j1, --j2 and --j");
        const Exp j1 = parse_spin("j1", a.j1), j2 = parse_spin("j2", a.j2), j = parse_spin("j", a.j);
        if (!in_cg_range(j1, j2, j)) throw UsageError("j is outside the Clebsch-Gordan range of (j1, j2)");
        auto cg = build_cg(j1, j2, j, ctx);
        out["object"] = {{"j1", exp_string(j1)}, {"j2", exp_string(j2)}, {"j", exp_string(j)}, {"c", matrix_json(cg.c)}};
    } else if (a.kind == "classical-r") {
        const Exp s1 = a.j1.empty() ? half : parse_spin("j1", a.j1);
        const Exp s2 = a.j2.empty() ? half : parse_spin("j2", a.j2);
        auto r = classical_r_sl2(classical_spin_rep<Rational>(s1), classical_spin_rep<Rational>(s2), v);
        out["object"] = matrix_json(r.m);
        out["object"]["variant"] = variant_name(v);
        out["object"]["algebra"] = r.algebra;
    } else {
        throw UsageError("unknown construct kind '" + a.kind + "'");
    }
    return out;
}

// ---- cgc-table ----

std::string cgc_text(const std::vector<CGCChannel>& channels, Exp j1, Exp j2, double q) {
    std::ostringstream os;
    os << "q-CGC (j1, j2) = (" << exp_string(j1) << ", " << exp_string(j2) << ") at q = " << std::setprecision(17) << q
       << "\n";
    for (const auto& ch : channels) {
        os << "\nj = " << exp_string(ch.j) << "  reduced " << std::setprecision(17) << ch.reduced.real()
           << (ch.reduced.imag() < 0 ? " - " : " + ") << std::abs(ch.reduced.imag()) << "i  agreement " << ch.agreement
           << "\n";
        os << std::right << std::setw(6) << "m1" << std::setw(6) << "m2" << std::setw(6) << "m" << std::setw(26)
           << "direct" << std::setw(26) << "extracted" << "\n";
        for (const auto& e : ch.entries) {
            char d[40], x[40];
            std::snprintf(d, sizeof d, "%.17g", e.direct);
            std::snprintf(x, sizeof x, "%.17g", e.extracted);
            os << std::setw(6) << exp_string(e.m1) << std::setw(6) << exp_string(e.m2) << std::setw(6)
               << exp_string(e.m) << std::setw(26) << d << std::setw(26) << x << "\n";
        }
    }
    return os.str();
}

int cgc_table_cmd(const std::string& s1, const std::string& s2, const RunConfig& cfg) {
    if (cfg.backend == "exact") throw UsageError("cgc-table is numeric only");
    const Exp j1 = parse_spin("j1", s1), j2 = parse_spin("j2", s2);
    for (Exp j : {j1, j2})
        if (j < 0 || j > 4 || (j * 2).denominator() != 1) throw UsageError("--j1 and --j2 must be half-integers in [0, 4]");
    auto channels = cgc_table(j1, j2, QContext::numeric(cfg.q));
    double worst = 0.0;
    for (const auto& ch : channels) worst = std::max(worst, ch.agreement);
    const bool pass = worst <= cfg.tol;
    if (cfg.format == "text") {
        char w[40];
        std::snprintf(w, sizeof w, "%.17g", worst);
        emit(cfg, cgc_text(channels, j1, j2, cfg.q) + (pass ? "\nPASS" : "\nFAIL") + "  max agreement " + w + "\n");
    } else {
        Json chs = Json::array();
        for (const auto& ch : channels) {
            Json entries = Json::array();
            for (const auto& e : ch.entries)
                entries.push_back({{"m1", exp_string(e.m1)},
                                   {"m2", exp_string(e.m2)},
                                   {"m", exp_string(e.m)},
                                   {"direct", num(e.direct)},
                                   {"extracted", num(e.extracted)}});
            chs.push_back({{"j", exp_string(ch.j)},
                           {"reduced", scalar_json(ch.reduced)},
                           {"agreement", num(ch.agreement)},
                           {"entries", entries}});
        }
        Json out;
        out["j1"] = exp_string(j1);
        out["j2"] = exp_string(j2);
        out["config"] = config_json(cfg);
        out["channels"] = chs;
        out["max_agreement"] = num(worst);
        out["pass"] = pass;
        emit(cfg, dump_json(out));
    }
    return pass ? kPass : kFail;
}

// ---- verify ----

int verify_cmd(const std::string& suite, bool timings, bool list, const RunConfig& cfg) {
    std::vector<Check> checks;
    try {
        checks = build_checks(suite, cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (list) {
        std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
        std::ostringstream os;
        for (const auto& c : checks) os << c.id << "  " << c.anchor << "\n";
        emit(cfg, os.str());
        return kPass;
    }
    Report r = run_checks(std::move(checks), cfg.workers);
    if (cfg.format == "text")
        emit(cfg, report_text(r, timings));
    else
        emit(cfg, dump_json(report_json(r, config_json(cfg), suite, timings)));
    if (r.errors) return kInternal;
    return r.failed ? kFail : kPass;
}

void print_error(int code, const std::string& msg) {
    Json j = {{"error", msg}, {"exit_code", code}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and verify quantum group R-matrices and tensor-operator generating matrices"};
    app.require_subcommand(1);

    Settings flags;

    ConstructArgs cargs;
    auto* construct_cmd = app.add_subcommand("construct", "Construct an object and print it as JSON");
    construct_cmd->add_option("kind", cargs.kind, "rmatrix | lop | wgen | weyl | cg | classical-r")->required();
    construct_cmd->add_option("--variant", cargs.variant, "plus | minus");
    construct_cmd->add_option("--j1", cargs.j1, "first spin (cg, classical-r)");
    construct_cmd->add_option("--j2", cargs.j2, "second spin (cg, classical-r)");
    construct_cmd->add_option("--j", cargs.j, "coupled spin (cg)");
    construct_cmd->add_flag("--covariant", cargs.covariant, "wgen: emit the covariant matrix U");
    construct_cmd->add_flag("--dense", cargs.dense, "wgen: dense entries instead of a nonzero list");
    add_common(construct_cmd, flags);

    std::string suite;
    bool timings = false, list = false;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string suites_help;
    for (const auto& s : suite_names()) suites_help += (suites_help.empty() ? "" : " | ") + s;
    verify->add_option("suite", suite, suites_help)->required();
    verify->add_flag("--timings", timings, "include wall-clock seconds per check");
    verify->add_flag("--list", list, "list the selected checks without running them");
    add_common(verify, flags);

    std::string j1, j2;
    auto* cgc = app.add_subcommand("cgc-table", "Tabulate q-Clebsch-Gordan coefficients against Wigner-Eckart ratios");
    cgc->add_option("--j1", j1, "first spin (<= 4)")->required();
    cgc->add_option("--j2", j2, "second spin (<= 4)")->required();
    add_common(cgc, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error(kUsage, e.what());
        return kUsage;
    }

    try {
        const RunConfig cfg = resolve(flags);
        if (*construct_cmd) {
            if (cfg.format != "json") throw UsageError("construct supports only --format json");
            emit(cfg, dump_json(construct(cargs, cfg)));
            return kPass;
        }
        if (*verify) return verify_cmd(suite, timings, list, cfg);
        return cgc_table_cmd(j1, j2, cfg);
    } catch (const UsageError& e) {
        print_error(kUsage, e.what());
        return kUsage;
    } catch (const std::invalid_argument& e) {
        print_error(kUsage, e.what());
        return kUsage;
    } catch (const std::out_of_range& e) {
        print_error(kUsage, e.what());
        return kUsage;
    } catch (const std::exception& e) {
        print_error(kInternal, e.what());
        return kInternal;
    }
}
