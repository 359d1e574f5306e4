#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "molpuc/types.hpp"

namespace molpuc {

struct CheckItem {
  std::string id;
  std::vector<int> indices;
  double residual = 0;
};

// a named group of residuals compared against one tolerance
struct CheckResult {
  std::string check;
  double tol = 0;
  std::vector<CheckItem> items;
  // residuals of identities in their typeset form that needed a correction
  std::vector<CheckItem> errata;
  std::vector<std::string> notes;

  double max_residual() const {
    double r = 0;
    for (const auto& it : items)
      if (!(it.residual <= r)) r = it.residual;  // NaN sticks
    return r;
  }
  bool pass() const { return !items.empty() && max_residual() < tol; }

  void add(std::string id, std::vector<int> idx, double r) {
    items.push_back({std::move(id), std::move(idx), r});
  }
  void add_erratum(std::string id, std::vector<int> idx, double r) {
    errata.push_back({std::move(id), std::move(idx), r});
  }
  // keep only the worst item per id
  void collapse();
  void merge(const CheckResult& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
    errata.insert(errata.end(), other.errata.begin(), other.errata.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

// |a - b| / max(1, |a|, |b|)
inline double rel_residual(const MatrixXc& a, const MatrixXc& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

// sample points on the circles |z| = r for each radius
std::vector<Complex> ring_samples(const std::vector<double>& radii, int per_ring,
                                  unsigned seed = 42);

}  // namespace molpuc
