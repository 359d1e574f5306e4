#pragma once

#include <string>

#include "json.hpp"
#include "molpuc/check.hpp"
#include "molpuc/toda.hpp"

namespace molpuc {

// a CheckResult tagged with the run it came from
struct Report {
  CheckResult result;
  std::string measure;  // fingerprint
  int blocks = 0;
  unsigned seed = 42;
};

// {"check", "measure", "blocks", "tol", "max_residual", "pass", "seed", "items", "errata"};
// pass <=> max_residual < tol; non-finite residuals are written as null and fail
nlohmann::json report_json(const Report& r);
// one row per item: check,measure,blocks,tol,kind,id,indices,residual,pass
std::string report_csv(const Report& r);

// id of the first item at or above the tolerance, empty if none
std::string first_failure(const CheckResult& r);

// writes <dir>/<check>.<json|csv>; returns the path
std::string write_report(const Report& r, const std::string& dir, const std::string& format);

// t,l,component,row,col,re,im for x, xr, yl, yr, hL, hR
std::string trajectory_csv(const FlowTrajectory& tr);

// coefficients of the four families, l < N: {"phi1L": [{"l", "coeffs": {"<power>": matrix}}]}
nlohmann::json families_json(const CmvSystem& sys);
nlohmann::json verblunsky_json(const VerblunskyTable& V);

void write_text(const std::string& path, const std::string& text);

}  // namespace molpuc
