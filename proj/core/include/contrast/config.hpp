#pragma once

#include <map>
#include <string>

#include "contrast/params.hpp"

namespace contrast {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` file, `#` starts a comment. Recognized keys:
///   n, R, d.coeff, d.exp, alpha.coeff, alpha.exp, beta.coeff, beta.exp,
///   domain.kind (bounded-rectangle | waveguide), domain.L_x,
///   domain.d_minus, domain.d_plus
std::map<std::string, std::string> parse_key_values(const std::string& text);

ModelParams params_from_config_text(const std::string& text);
ModelParams load_params(const std::string& path);

std::string config_text(const ModelParams& p);
void save_params(const ModelParams& p, const std::string& path);

}  // namespace contrast
