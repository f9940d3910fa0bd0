// SPDX-License-Identifier: Apache-2.0
#include "fdedit/reports.hpp"

#include <cstdio>
#include <sstream>

namespace fdedit {

using nlohmann::json;

json to_json(const ConsistencyReport& rep) {
    return json{{"score", rep.score},
                {"residual_norm", rep.residual_norm},
                {"solver_iterations", rep.solver_iterations},
                {"color_consistent", rep.color_consistent},
                {"degenerate", rep.degenerate},
                {"mu", rep.mu},
                {"b_mean", rep.b_mean}};
}

json to_json(const TheoremReport& rep) {
    json scores = json::array();
    for (const auto& r : rep.results) {
        scores.push_back({{"trial", r.index},
                          {"raw", r.raw_score},
                          {"smoothed", r.smoothed_score},
                          {"strict", r.strict},
                          {"degenerate", r.degenerate}});
    }
    return json{{"kind", to_string(rep.kind)},
                {"seed", rep.seed},
                {"mu", rep.mu},
                {"sigma", rep.sigma},
                {"size", rep.size},
                {"trials", rep.trials},
                {"degenerate", rep.degenerate},
                {"strict", rep.strict},
                {"strict_fraction", rep.strict_fraction},
                {"violating_trials", rep.violating},
                {"scores", scores}};
}

json to_json(const ExpansionReport& rep) {
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return json{{"mu", rep.mu},
                {"error", rep.error},
                {"error_literal", rep.error_literal},
                {"leading_error", rep.leading_error},
                {"schur_direct_diff", rep.schur_direct_diff},
                {"rank_e", rep.rank_e},
                {"exact", vec(rep.exact)},
                {"approx", vec(rep.approx)},
                {"laplacian_eigenvalues", vec(rep.sigma)}};
}

std::string theorem_csv(const TheoremReport& rep) {
    std::ostringstream out;
    out << "trial,raw_score,smoothed_score,ratio,strict,degenerate\n";
    char buf[160];
    for (const auto& r : rep.results) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d,%d\n", r.index, r.raw_score, r.smoothed_score,
                      r.ratio(), r.strict ? 1 : 0, r.degenerate ? 1 : 0);
        out << buf;
    }
    return out.str();
}

}  // namespace fdedit
