#include "nlreduce/problems/objective.hpp"

namespace nlreduce::problems {

BlockHessian Objective::block_hessian(const Vector& z, const BlockPartition& part) const {
  const Objective* self = this;
  // Each block is one full Hessian-vector product with the other block zeroed.
  auto block = [self, z, part](bool from_x, bool to_x) {
    const std::size_t in_dim = from_x ? part.n_x() : part.n_y();
    const std::size_t out_dim = to_x ? part.n_x() : part.n_y();
    return LinOp(out_dim, in_dim, [self, z, part, from_x, to_x](const Vector& in, Vector& out) {
      const Vector zero_x(part.n_x());
      const Vector zero_y(part.n_y());
      const Vector v = from_x ? part.join(in, zero_y) : part.join(zero_x, in);
      const Vector hv = self->hvp(z, v);
      out = to_x ? part.gather_x(hv) : part.gather_y(hv);
    });
  };
  return BlockHessian{block(true, true), block(false, true), block(true, false), block(false, false)};
}

SymMatrix Objective::dense_hessian(const Vector& z) const {
  const std::size_t n = dim();
  linalg::Matrix h(n, n);
  Vector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    h.set_col(j, hvp(z, e));
    e[j] = 0.0;
  }
  return SymMatrix(std::move(h));
}

std::optional<LinOp> ObjectiveFunction::hessian_op(const Vector& z) {
  const Objective* obj = &obj_;
  return LinOp(obj_.dim(), [obj, z](const Vector& in, Vector& out) { out = obj->hvp(z, in); });
}

}  // namespace nlreduce::problems
