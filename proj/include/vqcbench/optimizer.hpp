// Copyright 2026 The vqcbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Adam optimizer over a flat parameter vector.
 */
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace vqcbench {

/**
 * @brief Adam with bias-corrected first and second moments.
 *
 * Non-finite gradient entries abort the run: silently clipping them would
 * mask a diverged model.
 */
class AdamOptimizer {
  public:
    AdamOptimizer(std::size_t n_params, double learning_rate = 0.01,
                  double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8)
        : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
          m_(n_params, 0.0), v_(n_params, 0.0) {}

    double learning_rate() const { return lr_; }
    std::size_t step_count() const { return t_; }

    void step(std::span<double> params, std::span<const double> grad) {
        if (params.size() != m_.size() || grad.size() != m_.size()) {
            throw std::invalid_argument("AdamOptimizer: size mismatch");
        }
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
        for (std::size_t i = 0; i < m_.size(); ++i) {
            if (!std::isfinite(grad[i])) {
                throw std::runtime_error(
                    "AdamOptimizer: non-finite gradient encountered");
            }
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
            const double m_hat = m_[i] / bc1;
            const double v_hat = v_[i] / bc2;
            params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
        }
    }

  private:
    double lr_;
    double beta1_;
    double beta2_;
    double eps_;
    std::size_t t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

}  // namespace vqcbench
