#pragma once

#include "molpuc/types.hpp"

namespace molpuc {

// N x N grid of m x m complex blocks over dense storage.
template <typename Real>
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(int blocks, int m) : data_(MatX<Real>::Zero(blocks * m, blocks * m)), m_(m) {}
  BlockMatrix(MatX<Real> data, int m) : data_(std::move(data)), m_(m) {
    if (m <= 0 || data_.rows() % m != 0 || data_.rows() != data_.cols())
      throw Error("BlockMatrix: storage is not a square grid of m x m blocks");
  }

  int blocks() const { return m_ == 0 ? 0 : int(data_.rows()) / m_; }
  int block_size() const { return m_; }

  auto block(int i, int j) { return data_.block(i * m_, j * m_, m_, m_); }
  auto block(int i, int j) const { return data_.block(i * m_, j * m_, m_, m_); }

  MatX<Real>& dense() { return data_; }
  const MatX<Real>& dense() const { return data_; }

  // leading n x n block submatrix
  BlockMatrix leading(int n) const { return BlockMatrix(data_.topLeftCorner(n * m_, n * m_), m_); }

  static BlockMatrix identity(int blocks, int m) {
    return BlockMatrix(MatX<Real>::Identity(blocks * m, blocks * m), m);
  }

 private:
  MatX<Real> data_;
  int m_ = 0;
};

template <typename Real>
BlockMatrix<Real> operator*(const BlockMatrix<Real>& a, const BlockMatrix<Real>& b) {
  return BlockMatrix<Real>(a.dense() * b.dense(), a.block_size());
}

// max Frobenius norm of blocks (i,j) with i,j < n
template <typename Real>
Real max_block_norm(const MatX<Real>& a, int m, int n) {
  Real r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r = std::max(r, a.block(i * m, j * m, m, m).norm());
  return r;
}

// Frobenius norm of the leading n x n block corner
template <typename Real>
Real interior_norm(const MatX<Real>& a, int m, int n) {
  return a.topLeftCorner(n * m, n * m).norm();
}

// block diagonal matrix with the same m x m block repeated
template <typename Real>
MatX<Real> block_diag_repeat(const MatX<Real>& d, int blocks) {
  const int m = int(d.rows());
  MatX<Real> out = MatX<Real>::Zero(blocks * m, blocks * m);
  for (int k = 0; k < blocks; ++k) out.block(k * m, k * m, m, m) = d;
  return out;
}

}  // namespace molpuc
