#include "contrast/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace contrast {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("config: missing key '" + key + "'");
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + it->second);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " malformed");
        kv[key] = val;
    }
    return kv;
}

ModelParams params_from_config_text(const std::string& text) {
    const auto kv = parse_key_values(text);
    ModelParams p;
    p.n = static_cast<int>(to_double(kv, "n"));
    p.R = to_double(kv, "R");
    p.d_law = {to_double(kv, "d.coeff"), to_double(kv, "d.exp")};
    p.alpha_law = {to_double(kv, "alpha.coeff"), to_double(kv, "alpha.exp")};
    p.beta_law = {to_double(kv, "beta.coeff"), to_double(kv, "beta.exp")};

    auto it = kv.find("domain.kind");
    if (it == kv.end()) throw ConfigError("config: missing key 'domain.kind'");
    if (it->second == "bounded-rectangle")
        p.domain.kind = DomainKind::BoundedRectangle;
    else if (it->second == "waveguide")
        p.domain.kind = DomainKind::Waveguide;
    else
        throw ConfigError("config: domain.kind must be bounded-rectangle or waveguide");

    p.domain.L_x = to_double(kv, "domain.L_x");
    p.domain.d_minus = to_double(kv, "domain.d_minus");
    p.domain.d_plus = to_double(kv, "domain.d_plus");
    return p;
}

ModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return params_from_config_text(ss.str());
}

std::string config_text(const ModelParams& p) {
    std::ostringstream out;
    out << "n = " << p.n << "\n";
    out << "R = " << fmt17(p.R) << "\n";
    out << "d.coeff = " << fmt17(p.d_law.coeff) << "\n";
    out << "d.exp = " << fmt17(p.d_law.exponent) << "\n";
    out << "alpha.coeff = " << fmt17(p.alpha_law.coeff) << "\n";
    out << "alpha.exp = " << fmt17(p.alpha_law.exponent) << "\n";
    out << "beta.coeff = " << fmt17(p.beta_law.coeff) << "\n";
    out << "beta.exp = " << fmt17(p.beta_law.exponent) << "\n";
    out << "domain.kind = "
        << (p.domain.kind == DomainKind::BoundedRectangle ? "bounded-rectangle" : "waveguide") << "\n";
    out << "domain.L_x = " << fmt17(p.domain.L_x) << "\n";
    out << "domain.d_minus = " << fmt17(p.domain.d_minus) << "\n";
    out << "domain.d_plus = " << fmt17(p.domain.d_plus) << "\n";
    return out.str();
}

void save_params(const ModelParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write '" + path + "'");
    out << config_text(p);
}

}  // namespace contrast
