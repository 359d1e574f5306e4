#include "molpuc/measure_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace molpuc {

using nlohmann::json;

json matrix_to_json(const MatrixXc& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < a.cols(); ++k) row.push_back({a(i, k).real(), a(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

MatrixXc matrix_from_json(const json& j, int m) {
  if (!j.is_array() || int(j.size()) != m) throw ConfigError("matrix must have m rows");
  MatrixXc a(m, m);
  for (int i = 0; i < m; ++i) {
    const json& row = j[i];
    if (!row.is_array() || int(row.size()) != m) throw ConfigError("matrix row must have m entries");
    for (int k = 0; k < m; ++k) {
      const json& e = row[k];
      if (e.is_number()) {
        a(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        a(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("matrix entries must be [re, im] pairs");
      }
    }
  }
  return a;
}

Measure measure_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("measure config must be a JSON object");
  for (const char* key : {"m", "kind", "coeffs"})
    if (!j.contains(key)) throw ConfigError(std::string("measure config lacks \"") + key + "\"");
  if (!j["m"].is_number_integer()) throw ConfigError("\"m\" must be an integer");
  const int m = j["m"].get<int>();
  if (m <= 0) throw ConfigError("block size m must be positive");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  MeasureKind mk;
  if (kind == "trig_poly") mk = MeasureKind::trig_poly;
  else if (kind == "moment_list") mk = MeasureKind::moment_list;
  else throw ConfigError("\"kind\" must be \"trig_poly\" or \"moment_list\"");
  const bool herm = j.value("hermitian", false);
  if (!j["coeffs"].is_object() || j["coeffs"].empty())
    throw ConfigError("\"coeffs\" must be a non-empty object");
  std::map<int, MatrixXc> c;
  for (const auto& [key, val] : j["coeffs"].items()) {
    size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != key.size()) throw ConfigError("coefficient key \"" + key + "\" is not an integer");
    c[n] = matrix_from_json(val, m);
  }
  if (mk == MeasureKind::moment_list && !c.count(0)) throw ConfigError("moment list needs c_0");
  return make_measure<double>(m, mk, std::move(c), herm);
}

json measure_to_json(const Measure& mu) {
  json c = json::object();
  for (const auto& [n, a] : mu.coeffs) c[std::to_string(n)] = matrix_to_json(a);
  return {{"m", mu.m},
          {"kind", mu.kind == MeasureKind::trig_poly ? "trig_poly" : "moment_list"},
          {"hermitian", mu.hermitian},
          {"coeffs", c}};
}

Measure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measure file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
  return measure_from_json(j);
}

void save_measure(const Measure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << measure_to_json(mu).dump(2) << "\n";
}

std::string measure_fingerprint(const Measure& mu) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : measure_to_json(mu).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace molpuc
