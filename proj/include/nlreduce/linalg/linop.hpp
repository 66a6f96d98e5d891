#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "nlreduce/linalg/matrix.hpp"
#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::linalg {

/// Linear operator given only through its action on vectors. Square unless
/// built with distinct row and column counts (used for off-diagonal blocks).
class LinOp {
 public:
  using ApplyFn = std::function<void(const Vector& in, Vector& out)>;

  LinOp(std::size_t dim, ApplyFn apply) : LinOp(dim, dim, std::move(apply)) {}
  LinOp(std::size_t rows, std::size_t cols, ApplyFn apply);

  /// Non-owning: `m` must outlive the operator.
  static LinOp view(const SymMatrix& m);
  static LinOp owning(SymMatrix m);
  static LinOp owning(Matrix m);
  static LinOp identity(std::size_t n);

  /// Dimension of a square operator; throws std::logic_error otherwise.
  std::size_t dim() const;
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  /// out is resized to rows() if needed.
  void apply(const Vector& in, Vector& out) const;
  Vector operator()(const Vector& in) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  ApplyFn apply_;
};

}  // namespace nlreduce::linalg
