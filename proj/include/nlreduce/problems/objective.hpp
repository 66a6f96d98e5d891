#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "nlreduce/linalg/linop.hpp"
#include "nlreduce/linalg/matrix.hpp"
#include "nlreduce/linalg/vector.hpp"
#include "nlreduce/problems/partition.hpp"

namespace nlreduce::problems {

using linalg::LinOp;
using linalg::SymMatrix;

/// Work counters accumulated by elimination maps and reduced objectives.
struct WorkStats {
  long h_evaluations = 0;     ///< evaluations of the implicit map
  long linear_solves = 0;     ///< CG solves of any kind
  long inner_iterations = 0;  ///< inner (Newton / gradient) steps
  long cg_iterations = 0;

  WorkStats& operator+=(const WorkStats& o) {
    h_evaluations += o.h_evaluations;
    linear_solves += o.linear_solves;
    inner_iterations += o.inner_iterations;
    cg_iterations += o.cg_iterations;
    return *this;
  }
  friend WorkStats operator+(WorkStats a, const WorkStats& b) { return a += b; }
};

/// Block operators of the Hessian at a point, for a given partition.
/// `xy` maps y-vectors to x-vectors, `yx` the reverse.
struct BlockHessian {
  LinOp xx;
  LinOp xy;
  LinOp yx;
  LinOp yy;
};

/// Twice differentiable J : R^n -> R. Implementations are immutable and
/// their evaluations are safe to call concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& z) const = 0;
  virtual Vector gradient(const Vector& z) const = 0;
  virtual std::pair<double, Vector> value_and_gradient(const Vector& z) const {
    return {value(z), gradient(z)};
  }
  /// Hessian-vector product at z.
  virtual Vector hvp(const Vector& z, const Vector& v) const = 0;

  /// Matrix-free block operators; the default routes through hvp().
  virtual BlockHessian block_hessian(const Vector& z, const BlockPartition& part) const;

  Vector grad_x(const Vector& z, const BlockPartition& part) const {
    return part.gather_x(gradient(z));
  }
  Vector grad_y(const Vector& z, const BlockPartition& part) const {
    return part.gather_y(gradient(z));
  }

  /// Dense Hessian assembled from hvp() on unit vectors.
  SymMatrix dense_hessian(const Vector& z) const;
};

/// Something a descent method can minimize. Evaluations may update
/// internal caches or counters, hence non-const.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& x) = 0;
  virtual Vector gradient(const Vector& x) = 0;
  virtual std::pair<double, Vector> value_and_gradient(const Vector& x) {
    return {value(x), gradient(x)};
  }
  /// Hessian at x as an operator, if the function can provide one.
  virtual std::optional<LinOp> hessian_op(const Vector& /*x*/) { return std::nullopt; }
  virtual WorkStats work() const { return {}; }
};

/// Full-space view of an Objective. `obj` must outlive the view.
class ObjectiveFunction final : public SmoothFunction {
 public:
  explicit ObjectiveFunction(const Objective& obj) : obj_(obj) {}

  std::size_t dim() const override { return obj_.dim(); }
  double value(const Vector& z) override { return obj_.value(z); }
  Vector gradient(const Vector& z) override { return obj_.gradient(z); }
  std::pair<double, Vector> value_and_gradient(const Vector& z) override {
    return obj_.value_and_gradient(z);
  }
  std::optional<LinOp> hessian_op(const Vector& z) override;

 private:
  const Objective& obj_;
};

}  // namespace nlreduce::problems
