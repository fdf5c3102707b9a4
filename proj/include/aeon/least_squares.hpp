// Copyright 2026 The AEON Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Damped least squares (Levenberg-Marquardt, numeric Jacobian) behind a
// small std::function interface. The minimizer itself is Eigen's MINPACK port.

#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace aeon {

using ResidualFn = std::function<void(const Eigen::VectorXd &params, Eigen::VectorXd &residuals)>;

struct LsqOptions {
    int max_evaluations = 4000;
    double xtol = 1e-12;
    double ftol = 1e-14;
};

struct LsqResult {
    Eigen::VectorXd params;
    double rms = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

struct LsqFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    LsqFunctor(const ResidualFn *fn, int n_params, int n_values)
        : fn(fn), n_params(n_params), n_values(n_values) {}

    int inputs() const { return n_params; }
    int values() const { return n_values; }

    int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &fvec) const {
        (*fn)(x, fvec);
        for (Eigen::Index i = 0; i < fvec.size(); ++i)
            if (!std::isfinite(fvec(i))) fvec(i) = 1e6;
        return 0;
    }

    const ResidualFn *fn;
    int n_params;
    int n_values;
};

}  // namespace detail

/// Minimizes ||r(x)||^2 from `x0`. `n_values` is the residual length.
inline LsqResult least_squares(const ResidualFn &fn, const Eigen::VectorXd &x0, int n_values,
                               const LsqOptions &opt = {}) {
    detail::LsqFunctor functor(&fn, static_cast<int>(x0.size()), n_values);
    Eigen::NumericalDiff<detail::LsqFunctor, Eigen::Central> numdiff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::LsqFunctor, Eigen::Central>> lm(numdiff);
    lm.parameters.maxfev = opt.max_evaluations;
    lm.parameters.xtol = opt.xtol;
    lm.parameters.ftol = opt.ftol;
    Eigen::VectorXd x = x0;
    const auto status = lm.minimize(x);
    LsqResult out;
    out.params = x;
    Eigen::VectorXd r(n_values);
    functor(x, r);
    out.rms = std::sqrt(r.squaredNorm() / std::max(1, n_values));
    out.evaluations = static_cast<int>(lm.nfev);
    using S = Eigen::LevenbergMarquardtSpace::Status;
    out.converged = status == S::RelativeReductionTooSmall || status == S::RelativeErrorTooSmall ||
                    status == S::RelativeErrorAndReductionTooSmall || status == S::CosinusTooSmall ||
                    status == S::FtolTooSmall || status == S::XtolTooSmall ||
                    status == S::GtolTooSmall;
    return out;
}

}  // namespace aeon
