#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "estimation.hpp"
#include "inequalities.hpp"
#include "quantum.hpp"
#include "weakval.hpp"

namespace wvcalc {

using ojson = nlohmann::ordered_json;

// 17 significant digits: enough to round-trip any double losslessly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline ojson json_of(const cplx& z) { return ojson::array({z.real(), z.imag()}); }

inline ojson json_of(const SpectrumFunction& fn) {
    if (fn.is_real()) {
        ojson arr = ojson::array();
        for (const cplx& z : fn.values()) arr.push_back(z.real());
        return arr;
    }
    ojson arr = ojson::array();
    for (const cplx& z : fn.values()) arr.push_back(json_of(z));
    return arr;
}

inline ojson json_of(const MomentReport& m) {
    return ojson{{"mean_a", m.mean_a},
                 {"mean_b", m.mean_b},
                 {"var_a", m.var_a},
                 {"var_b", m.var_b},
                 {"cov", m.cov},
                 {"commutator_half", json_of(m.commutator_half)},
                 {"anticommutator_half", m.anticommutator_half}};
}

inline ojson json_of(const InequalityReport& r) {
    return ojson{{"name", r.name},
                 {"lhs", r.lhs},
                 {"rhs", r.rhs},
                 {"slack", r.slack},
                 {"saturated", r.saturated}};
}

inline ojson json_of(const IdentityReport& r) {
    return ojson{{"residual_action", r.residual_action},
                 {"residual_mean_re", r.residual_mean_re},
                 {"residual_mean_im", r.residual_mean_im},
                 {"residual_norm_split", r.residual_norm_split},
                 {"residual_pythagoras", r.residual_pythagoras},
                 {"residual_distance", r.residual_distance}};
}

inline ojson json_of(const EqualityDiagnostics& d) {
    return ojson{{"lambda", d.lambda},
                 {"mu", d.mu},
                 {"beta", json_of(d.beta)},
                 {"residual_im", d.residual_im},
                 {"residual_re", d.residual_re},
                 {"residual_beta", d.residual_beta}};
}

inline ojson json_of(const UnbiasednessCheck& c) {
    return ojson{{"mean", c.mean},
                 {"slope_fd", c.slope_fd},
                 {"slope_commutator", c.slope_commutator},
                 {"mean_residual", c.mean_residual},
                 {"slope_residual", c.slope_residual},
                 {"conjugacy_residual", c.conjugacy_residual},
                 {"slope_gap", c.slope_gap}};
}

inline ojson json_of(const FisherReport& r) {
    ojson j{{"fisher", r.fisher}, {"fisher_fd", r.fisher_fd}};
    if (!r.estimator.empty()) {
        j["estimator"] = json_of(r.estimator);
        j["cr_bound"] = r.cr_bound;
        j["variance_g"] = r.variance_g;
        j["unbiased_mean"] = r.unbiased_mean;
        j["unbiased_slope"] = r.unbiased_slope;
    }
    return j;
}

inline ojson json_of(const MonteCarloResult& r) {
    return ojson{{"n_samples", r.n_samples},
                 {"seed", r.seed},
                 {"generator", monte_carlo_generator_name},
                 {"empirical_mean", r.empirical_mean},
                 {"empirical_variance", r.empirical_variance},
                 {"standard_error_mean", r.standard_error_mean}};
}

namespace detail {

inline void flatten_csv(const ojson& node, const std::string& path, std::string& out) {
    if (node.is_object()) {
        for (const auto& item : node.items())
            flatten_csv(item.value(), path.empty() ? item.key() : path + "." + item.key(), out);
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto& item : node) {
            flatten_csv(item, path + "[" + std::to_string(i) + "]", out);
            ++i;
        }
    } else {
        out += path;
        out += ',';
        if (node.is_number_float())
            out += format_double(node.get<double>());
        else if (node.is_boolean())
            out += node.get<bool>() ? "true" : "false";
        else if (node.is_string())
            out += node.get<std::string>();
        else
            out += node.dump();
        out += '\n';
    }
}

} // namespace detail

// Two-column key,value rendering of a report document for --format csv.
inline std::string csv_flatten(const ojson& doc) {
    std::string out = "key,value\n";
    detail::flatten_csv(doc, "", out);
    return out;
}

} // namespace wvcalc
