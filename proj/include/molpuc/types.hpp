#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace molpuc {

template <typename Real>
using Cplx = std::complex<Real>;

template <typename Real>
using MatX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = Cplx<double>;
using MatrixXc = MatX<double>;

enum class Side { L, R };

inline char side_char(Side s) { return s == Side::L ? 'L' : 'R'; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// argument outside the domain of a function (z = 0, wrong annulus, ...)
class DomainError : public Error {
 public:
  using Error::Error;
};

// a leading block minor is numerically singular
class QuasiDefinitenessError : public Error {
 public:
  QuasiDefinitenessError(int level, const std::string& msg) : Error(msg), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

// two routes that must agree do not
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

template <typename Real>
MatX<Real> identity(int m) {
  return MatX<Real>::Identity(m, m);
}

template <typename Real>
Real fro(const MatX<Real>& a) {
  return a.norm();
}

}  // namespace molpuc
