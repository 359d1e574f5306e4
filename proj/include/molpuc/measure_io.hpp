#pragma once

#include <string>

#include "json.hpp"
#include "molpuc/molpuc.hpp"

namespace molpuc {

// {"m": int, "kind": "trig_poly"|"moment_list", "hermitian": bool,
//  "coeffs": {"<n>": [[[re, im], ...], ...]}}, matrices row-major
Measure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const Measure& mu);

Measure load_measure(const std::string& path);
void save_measure(const Measure& mu, const std::string& path);

// 16 hex digits of FNV-1a over the canonical JSON dump
std::string measure_fingerprint(const Measure& mu);

nlohmann::json matrix_to_json(const MatrixXc& a);
MatrixXc matrix_from_json(const nlohmann::json& j, int m);

}  // namespace molpuc
