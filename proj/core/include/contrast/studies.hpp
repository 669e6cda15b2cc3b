#pragma once

#include <functional>
#include <json.hpp>
#include <string>

#include "contrast/bloch.hpp"
#include "contrast/fem_pipeline.hpp"

namespace contrast {

struct TrendVerdict {
    bool monotone_decreasing = true;
    int first_violation = -1;
    bool operator==(const TrendVerdict&) const = default;
};

struct HausdorffReport {
    std::vector<double> eps_list;  // strictly decreasing
    Interval window{};
    std::vector<double> ran_eps;
    std::vector<double> distances;  // aligned with ran_eps
    std::vector<std::string> set_files;
    std::vector<std::string> skipped;
    TrendVerdict trend{};
    bool operator==(const HausdorffReport&) const = default;
};

struct StudyOptions {
    int shell_layers = 2;
    double solver_tol = 1e-9;
    std::uint64_t seed = 12345;
    std::string out_dir;  // when set, per-eps spectral sets are written there
};

using HRule = std::function<double(double)>;

/// Theorem 1 check at desk scale: per eps, the FEM spectrum in the window
/// against the semi-analytic limit set, with Hausdorff distances and a
/// monotone-decrease verdict. Default h_rule is eps/8. Epsilons failing the
/// mesh feasibility bounds are skipped and recorded.
HausdorffReport convergence_study(const ModelParams& p, const std::vector<double>& eps_list,
                                  Interval window, const HRule& h_rule = {},
                                  const StudyOptions& opts = {});

struct WitnessRow {
    double eps = 0.0;
    double witness = 0.0;
    double q_at_eps = 0.0;
    double ratio = 0.0;
};

/// Theorem 2 check: the closed-form quotient against q_eps over an eps list.
std::vector<WitnessRow> witness_study(const ModelParams& p, const std::vector<double>& eps_list);

nlohmann::json report_to_json(const HausdorffReport& r);
HausdorffReport report_from_json(const nlohmann::json& j);

/// CSV emission, 17 significant digits, '.' decimal point.
std::string format_g17(double v);
std::string spectral_set_csv(const SpectralSet& set);
std::string band_structure_csv(const BandStructure& bands);
std::string witness_csv(const std::vector<WitnessRow>& rows);

}  // namespace contrast
