#include "molpuc/report.hpp"

#include "molpuc/measure_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace molpuc {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json items_json(const std::vector<CheckItem>& items) {
  json a = json::array();
  for (const auto& it : items)
    a.push_back({{"id", it.id}, {"indices", it.indices}, {"residual", number(it.residual)}});
  return a;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json report_json(const Report& r) {
  const double mr = r.result.max_residual();
  return {{"check", r.result.check},
          {"measure", r.measure},
          {"blocks", r.blocks},
          {"tol", r.result.tol},
          {"max_residual", number(mr)},
          {"pass", r.result.pass()},
          {"seed", r.seed},
          {"items", items_json(r.result.items)},
          {"errata", items_json(r.result.errata)},
          {"notes", r.result.notes}};
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "check,measure,blocks,tol,kind,id,indices,residual,pass\n";
  auto rows = [&](const std::vector<CheckItem>& items, const char* kind, bool judged) {
    for (const auto& it : items) {
      std::string idx;
      for (size_t k = 0; k < it.indices.size(); ++k) idx += (k ? " " : "") + std::to_string(it.indices[k]);
      out << csv_field(r.result.check) << ',' << r.measure << ',' << r.blocks << ','
          << fmt(r.result.tol) << ',' << kind << ',' << csv_field(it.id) << ',' << idx << ','
          << fmt(it.residual) << ',';
      if (judged) out << (it.residual < r.result.tol ? "true" : "false");
      out << '\n';
    }
  };
  rows(r.result.items, "item", true);
  rows(r.result.errata, "erratum", false);
  return out.str();
}

std::string first_failure(const CheckResult& r) {
  for (const auto& it : r.items)
    if (!(it.residual < r.tol)) return it.id;
  return r.items.empty() ? "(no items)" : "";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string write_report(const Report& r, const std::string& dir, const std::string& format) {
  std::filesystem::create_directories(dir);
  const bool csv = format == "csv";
  const std::string path =
      (std::filesystem::path(dir) / (r.result.check + (csv ? ".csv" : ".json"))).string();
  write_text(path, csv ? report_csv(r) : report_json(r).dump(2) + "\n");
  return path;
}

std::string trajectory_csv(const FlowTrajectory& tr) {
  std::ostringstream out;
  out << "t,l,component,row,col,re,im\n";
  for (size_t s = 0; s < tr.tables.size(); ++s) {
    const VerblunskyTable& T = tr.tables[s];
    const std::pair<const char*, const std::vector<MatrixXc>*> comps[] = {
        {"x", &T.x}, {"xr", &T.xr}, {"yl", &T.yl}, {"yr", &T.yr}, {"hL", &T.hL}, {"hR", &T.hR}};
    for (int l = 0; l < T.size(); ++l)
      for (const auto& [name, v] : comps) {
        const MatrixXc& a = v->at(l);
        for (int i = 0; i < a.rows(); ++i)
          for (int k = 0; k < a.cols(); ++k)
            out << fmt(tr.times[s]) << ',' << l << ',' << name << ',' << i << ',' << k << ','
                << fmt(a(i, k).real()) << ',' << fmt(a(i, k).imag()) << '\n';
      }
  }
  return out.str();
}

json families_json(const CmvSystem& sys) {
  auto fam = [](const std::vector<Poly>& f) {
    json a = json::array();
    for (size_t l = 0; l < f.size(); ++l) {
      json c = json::object();
      for (const auto& [p, mat] : f[l].coeffs) c[std::to_string(p)] = matrix_to_json(mat);
      a.push_back({{"l", l}, {"coeffs", c}});
    }
    return a;
  };
  return {{"phi1L", fam(sys.fam.phi1L)},
          {"phi2L", fam(sys.fam.phi2L)},
          {"phi1R", fam(sys.fam.phi1R)},
          {"phi2R", fam(sys.fam.phi2R)}};
}

json verblunsky_json(const VerblunskyTable& V) {
  json a = json::array();
  for (int l = 0; l < V.size(); ++l)
    a.push_back({{"l", l},
                 {"alpha1L", matrix_to_json(V.x[l])},
                 {"alpha1R", matrix_to_json(V.xr[l])},
                 {"alpha2L_dagger", matrix_to_json(V.yl[l])},
                 {"alpha2R_dagger", matrix_to_json(V.yr[l])},
                 {"hL", matrix_to_json(V.hL[l])},
                 {"hR", matrix_to_json(V.hR[l])}});
  return {{"table", a}, {"cross_check_residual", V.cross_check_residual}};
}

}  // namespace molpuc
