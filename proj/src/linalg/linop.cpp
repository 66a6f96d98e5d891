#include "nlreduce/linalg/linop.hpp"

#include <stdexcept>

#include "nlreduce/linalg/kernels.hpp"

namespace nlreduce::linalg {

LinOp::LinOp(std::size_t rows, std::size_t cols, ApplyFn apply)
    : rows_(rows), cols_(cols), apply_(std::move(apply)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("LinOp: dimensions must be positive");
  if (!apply_) throw std::invalid_argument("LinOp: empty apply function");
}

LinOp LinOp::view(const SymMatrix& m) {
  const Matrix* mat = &m.matrix();
  return LinOp(m.order(), [mat](const Vector& in, Vector& out) {
    kernels::parallel::gemv(mat->rows(), mat->cols(), mat->span(), in.span(), out.span());
  });
}

LinOp LinOp::owning(SymMatrix m) {
  auto held = std::make_shared<const SymMatrix>(std::move(m));
  const std::size_t n = held->order();
  return LinOp(n, [held](const Vector& in, Vector& out) {
    const Matrix& mat = held->matrix();
    kernels::parallel::gemv(mat.rows(), mat.cols(), mat.span(), in.span(), out.span());
  });
}

LinOp LinOp::owning(Matrix m) {
  auto held = std::make_shared<const Matrix>(std::move(m));
  return LinOp(held->rows(), held->cols(), [held](const Vector& in, Vector& out) {
    kernels::parallel::gemv(held->rows(), held->cols(), held->span(), in.span(), out.span());
  });
}

LinOp LinOp::identity(std::size_t n) {
  return LinOp(n, [](const Vector& in, Vector& out) { out = in; });
}

std::size_t LinOp::dim() const {
  if (rows_ != cols_) throw std::logic_error("LinOp::dim: operator is rectangular");
  return rows_;
}

void LinOp::apply(const Vector& in, Vector& out) const {
  require_size(in, cols_, "LinOp::apply");
  if (out.size() != rows_) out = Vector(rows_);
  apply_(in, out);
  require_size(out, rows_, "LinOp::apply output");
}

Vector LinOp::operator()(const Vector& in) const {
  Vector out(rows_);
  apply(in, out);
  return out;
}

}  // namespace nlreduce::linalg
