#include "kpx/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpx/params.hpp"
#include "kpx/rng.hpp"

namespace kpx {
namespace {

// Larger than the training init so every tensor carries a non-trivial gradient.
constexpr double kCheckRange = 0.5;

template <class P>
GradCheckResult check_family(P params, const Matrix& inputs, const SequenceTargets& targets,
                             const GradCheckSpec& spec) {
  P analytic;
  loss_and_gradient(params, inputs, targets, spec.alpha, spec.loss, &analytic);
  if (spec.inject_fault) {
    P::visit(analytic, [](std::string_view, Matrix& m) {
      for (double& v : m.values()) v *= 1.01;
    });
  }

  GradCheckResult result;
  std::vector<std::string_view> names;
  P::visit(params, [&](std::string_view name, Matrix&) { names.push_back(name); });
  const auto param_tensors = tensors(params);
  const auto grad_tensors = tensors(std::as_const(analytic));

  for (std::size_t k = 0; k < param_tensors.size(); ++k) {
    auto values = param_tensors[k]->values();
    const auto grads = grad_tensors[k]->values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + spec.epsilon;
      const double plus = loss_and_gradient(params, inputs, targets, spec.alpha, spec.loss,
                                            static_cast<P*>(nullptr))
                              .total;
      values[i] = saved - spec.epsilon;
      const double minus = loss_and_gradient(params, inputs, targets, spec.alpha, spec.loss,
                                             static_cast<P*>(nullptr))
                               .total;
      values[i] = saved;

      const double numeric = (plus - minus) / (2.0 * spec.epsilon);
      const double a = grads[i];
      const double error =
          std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), 1e-12);
      if (result.entries_checked == 0 || error > result.max_relative_error) {
        result.max_relative_error = error;
        result.worst_tensor = std::string(names[k]);
        result.worst_index = i;
      }
      ++result.entries_checked;
    }
  }
  return result;
}

}  // namespace

GradCheckResult grad_check(const GradCheckSpec& spec) {
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (spec.length == 0) throw std::invalid_argument("sequence length must be positive");

  Rng rng(spec.seed);
  NetworkParams params = init_network(spec.architecture, spec.input_dim, spec.hidden1,
                                      spec.hidden2, spec.classes, spec.seed);
  std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        P::visit(p, [&](std::string_view, Matrix& m) {
          for (double& v : m.values()) v = rng.uniform(-kCheckRange, kCheckRange);
        });
      },
      params);

  Matrix inputs(spec.length, spec.input_dim);
  for (double& v : inputs.values()) v = rng.normal();
  SequenceTargets targets;
  for (std::size_t t = 0; t < spec.length; ++t) {
    targets.tags.push_back(static_cast<Label>(rng.below(spec.classes)));
    targets.importance.push_back(targets.tags.back() != 0 ? 1 : 0);
  }

  return std::visit([&](auto& p) { return check_family(p, inputs, targets, spec); }, params);
}

}  // namespace kpx
