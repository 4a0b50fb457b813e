// Copyright 2026 The Blockade Authors
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

#include "blockade/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

bool all_finite(const Eigen::VectorXcd &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            return false;
        }
    }
    return true;
}

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, IntegratorOptions options) : rhs_(std::move(rhs)), options_(options) {
    if (!(options_.rtol > 0.0) || !(options_.atol > 0.0)) {
        throw ValidationError("integrator tolerances must be positive");
    }
}

double DormandPrince::error_norm(const State &err, const State &y0, const State &y1) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double scale = options_.atol + options_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double ratio = std::abs(err[i]) / scale;
        sum += ratio * ratio;
    }
    return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(err.size(), 1)));
}

double DormandPrince::initial_step(double t0, const State &y0, const State &f0, double span) {
    if (options_.initial_step > 0.0) {
        return std::min(options_.initial_step, span);
    }
    auto scaled_norm = [&](const State &v) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double scale = options_.atol + options_.rtol * std::abs(y0[i]);
            sum += std::norm(v[i]) / (scale * scale);
        }
        return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(v.size(), 1)));
    };
    const double dnf = scaled_norm(f0);
    const double dny = scaled_norm(y0);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min({h, span, options_.max_step});
    State y1 = y0 + h * f0;
    State f1(y0.size());
    rhs_(t0 + h, y1, f1);
    ++stats_.rhs_evaluations;
    const double der2 = scaled_norm(f1 - f0) / h;
    const double der = std::max(der2, dnf);
    const double h1 = der <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der, 1.0 / 5.0);
    return std::min({100.0 * h, h1, span, options_.max_step});
}

DormandPrince::State DormandPrince::integrate(State y, double t0, double t1, std::span<const double> samples,
                                              const Observer &observer) {
    if (!(t1 >= t0)) {
        throw ValidationError("integration span must satisfy t1 >= t0");
    }
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] <= t0) {
        if (observer) {
            observer(samples[next_sample], y);
        }
        ++next_sample;
    }
    if (t1 == t0) {
        return y;
    }
    if (!all_finite(y)) {
        throw IntegrationError("non-finite initial state", t0);
    }

    const Eigen::Index n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
    rhs_(t0, y, k1);
    ++stats_.rhs_evaluations;

    double t = t0;
    double h = initial_step(t0, y, k1, t1 - t0);
    std::size_t steps = 0;
    bool last_rejected = false;

    while (t < t1) {
        if (++steps > options_.max_steps) {
            throw IntegrationError("step budget exhausted", t);
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            throw IntegrationError("step size underflow", t);
        }
        bool final_step = false;
        if (t + h >= t1) {
            h = t1 - t;
            final_step = true;
        }

        ytmp = y + h * a21 * k1;
        rhs_(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs_(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs_(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs_(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs_(t + h, ytmp, k6);
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double t_new = final_step ? t1 : t + h;
        rhs_(t_new, ynew, k7);
        stats_.rhs_evaluations += 6;

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double norm = error_norm(err, y, ynew);
        if (options_.norm_rate > 0.0) {
            // Short steps would otherwise demand a defect below the rounding of ||y||^2.
            const double y2 = y.squaredNorm();
            const double defect = std::abs(ynew.squaredNorm() - y2);
            const double allowed = options_.norm_rate * h + 32.0 * std::numeric_limits<double>::epsilon() * y2;
            norm = std::max(norm, defect / allowed);
        }
        if (!std::isfinite(norm) || !all_finite(ynew)) {
            // A non-finite trial step is retried smaller; a finite state cannot produce
            // NaN through a bounded linear right-hand side unless the RHS itself is broken.
            if (!all_finite(k1)) {
                throw IntegrationError("non-finite derivative", t);
            }
            ++stats_.rejected;
            h *= kFacMin;
            last_rejected = true;
            continue;
        }

        if (norm <= 1.0) {
            if (next_sample < samples.size() && samples[next_sample] <= t_new && observer) {
                // Continuous extension on [t, t_new].
                const State ydiff = ynew - y;
                const State bspl = h * k1 - ydiff;
                const State r4 = ydiff - h * k7 - bspl;
                const State r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next_sample < samples.size() && samples[next_sample] <= t_new) {
                    const double s = samples[next_sample];
                    if (s == t_new) {
                        observer(s, ynew);
                    } else {
                        const double theta = (s - t) / h;
                        const double theta1 = 1.0 - theta;
                        const State ys = y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                        observer(s, ys);
                    }
                    ++next_sample;
                }
            } else {
                while (next_sample < samples.size() && samples[next_sample] <= t_new) {
                    ++next_sample;
                }
            }
            ++stats_.accepted;
            y.swap(ynew);
            k1.swap(k7);
            t = t_new;
            double factor = norm == 0.0 ? kFacMax : kSafety * std::pow(norm, -0.2);
            factor = std::clamp(factor, kFacMin, last_rejected ? 1.0 : kFacMax);
            h = std::min(h * factor, options_.max_step);
            last_rejected = false;
            if (final_step) {
                break;
            }
        } else {
            ++stats_.rejected;
            h *= std::max(kFacMin, kSafety * std::pow(norm, -0.2));
            last_rejected = true;
        }
    }
    return y;
}

}  // namespace blockade
