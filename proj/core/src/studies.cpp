#include "contrast/studies.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "contrast/hausdorff.hpp"

namespace contrast {

HausdorffReport convergence_study(const ModelParams& p, const std::vector<double>& eps_list,
                                  Interval window, const HRule& h_rule, const StudyOptions& opts) {
    require_valid(p);
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("convergence_study: eps_list must be strictly decreasing");

    const auto lim = limits(p);
    const auto limit_set = limit_spectrum_cases(lim.q, lim.r, p.domain, window);
    const auto limit_flat = limit_set.flatten();
    if (limit_flat.empty())
        throw std::invalid_argument("convergence_study: empty limit spectrum in the window");

    HausdorffReport report;
    report.eps_list = eps_list;
    report.window = window;

    for (double eps : eps_list) {
        const double h = h_rule ? h_rule(eps) : eps / 8.0;
        try {
            SpectralSet fem;
            int k = static_cast<int>(limit_flat.size()) + 8;
            for (int attempt = 0;; ++attempt) {
                EpsOptions eo;
                eo.shell_layers = opts.shell_layers;
                eo.solver_tol = opts.solver_tol;
                eo.seed = opts.seed;
                fem = eps_spectrum(p, eps, h, k, eo);
                if (fem.points.back().first >= window.hi || attempt >= 4) break;
                k *= 2;
            }
            std::vector<double> fem_in;
            for (const auto& [v, mult] : fem.points)
                if (window.contains(v))
                    for (int i = 0; i < mult; ++i) fem_in.push_back(v);
            if (fem_in.empty()) {
                char msg[100];
                std::snprintf(msg, sizeof(msg), "eps=%.6g: no discrete eigenvalues in window", eps);
                report.skipped.push_back(msg);
                continue;
            }
            report.ran_eps.push_back(eps);
            report.distances.push_back(hausdorff(fem_in, limit_flat));
            if (!opts.out_dir.empty()) {
                char name[120];
                std::snprintf(name, sizeof(name), "%s/eps_spectrum_%.6g.csv", opts.out_dir.c_str(), eps);
                std::ofstream out(name);
                out << spectral_set_csv(fem);
                report.set_files.push_back(name);
            }
        } catch (const GeometryError& e) {
            report.skipped.push_back("eps=" + format_g17(eps) + ": " + e.what());
        }
    }

    for (std::size_t i = 1; i < report.distances.size(); ++i)
        if (!(report.distances[i] < report.distances[i - 1])) {
            report.trend.monotone_decreasing = false;
            report.trend.first_violation = static_cast<int>(i);
            break;
        }
    return report;
}

std::vector<WitnessRow> witness_study(const ModelParams& p, const std::vector<double>& eps_list) {
    require_valid(p);
    std::vector<WitnessRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        WitnessRow row;
        row.eps = eps;
        row.witness = rayleigh_witness(p, eps);
        row.q_at_eps = q_eps(p, eps);
        row.ratio = row.witness / row.q_at_eps;
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json report_to_json(const HausdorffReport& r) {
    return nlohmann::json{
        {"eps_list", r.eps_list},
        {"window", {{"lo", r.window.lo}, {"hi", r.window.hi}}},
        {"ran_eps", r.ran_eps},
        {"distances", r.distances},
        {"set_files", r.set_files},
        {"skipped", r.skipped},
        {"trend",
         {{"monotone_decreasing", r.trend.monotone_decreasing},
          {"first_violation", r.trend.first_violation}}},
    };
}

HausdorffReport report_from_json(const nlohmann::json& j) {
    HausdorffReport r;
    r.eps_list = j.at("eps_list").get<std::vector<double>>();
    r.window = {j.at("window").at("lo").get<double>(), j.at("window").at("hi").get<double>()};
    r.ran_eps = j.at("ran_eps").get<std::vector<double>>();
    r.distances = j.at("distances").get<std::vector<double>>();
    r.set_files = j.at("set_files").get<std::vector<std::string>>();
    r.skipped = j.at("skipped").get<std::vector<std::string>>();
    r.trend.monotone_decreasing = j.at("trend").at("monotone_decreasing").get<bool>();
    r.trend.first_violation = j.at("trend").at("first_violation").get<int>();
    return r;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectral_set_csv(const SpectralSet& set) {
    std::string out = "value,multiplicity,essential\n";
    for (const auto& [v, m] : set.points)
        out += format_g17(v) + "," + std::to_string(m) + ",0\n";
    for (double v : set.essential) out += format_g17(v) + ",1,1\n";
    return out;
}

std::string band_structure_csv(const BandStructure& bands) {
    std::string out = "phi,k,lambda\n";
    for (std::size_t i = 0; i < bands.phi_grid.size(); ++i)
        for (std::size_t k = 0; k < bands.values[i].size(); ++k)
            out += format_g17(bands.phi_grid[i]) + "," + std::to_string(k + 1) + "," +
                   format_g17(bands.values[i][k]) + "\n";
    return out;
}

std::string witness_csv(const std::vector<WitnessRow>& rows) {
    std::string out = "eps,witness,q_eps,ratio\n";
    for (const auto& r : rows)
        out += format_g17(r.eps) + "," + format_g17(r.witness) + "," + format_g17(r.q_at_eps) +
               "," + format_g17(r.ratio) + "\n";
    return out;
}

}  // namespace contrast
