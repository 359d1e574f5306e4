#include "molpuc/check.hpp"

#include <map>
#include <random>

namespace molpuc {

namespace {

std::vector<CheckItem> worst_per_id(const std::vector<CheckItem>& in) {
  std::vector<CheckItem> out;
  std::map<std::string, size_t> pos;
  for (const auto& it : in) {
    auto f = pos.find(it.id);
    if (f == pos.end()) {
      pos[it.id] = out.size();
      out.push_back(it);
    } else if (!(out[f->second].residual >= it.residual)) {
      out[f->second] = it;
    }
  }
  return out;
}

}  // namespace

void CheckResult::collapse() {
  items = worst_per_id(items);
  errata = worst_per_id(errata);
}

std::vector<Complex> ring_samples(const std::vector<double>& radii, int per_ring, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> ang(0, 6.283185307179586);
  std::vector<Complex> out;
  for (double r : radii)
    for (int k = 0; k < per_ring; ++k) out.push_back(std::polar(r, ang(gen)));
  return out;
}

}  // namespace molpuc
