// SPDX-License-Identifier: Apache-2.0
//
// roughscatter: rough-surface radio scattering models, 1 GHz - 1 THz
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <span>
#include <vector>

namespace roughscatter
{
    struct QuadratureResult
    {
        double value = 0.0;
        double error = 0.0; // Kronrod error estimate
        double l1 = 0.0;    // integral of |f|
    };

    // Adaptive 15-point Gauss-Kronrod with recursive bisection. Node order is
    // fixed, so results are bitwise reproducible for identical inputs. Boost
    // tests the unscaled [-1, 1] error against the scaled estimate, which
    // over-refines narrow intervals, so each interval is mapped onto [0, 1].
    template <class F>
    QuadratureResult integrate(F &&f, double a, double b, double rel_tol, unsigned max_depth = 18)
    {
        QuadratureResult r;
        if (a == b)
            return r;
        const double w = b - a;
        auto g = [&](double u) { return w * f(a + w * u); };
        r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            g, 0.0, 1.0, max_depth, rel_tol, &r.error, &r.l1);
        return r;
    }

    // Integrates piecewise over consecutive breakpoints (kinks, peaks), summing
    // in left-to-right order. The tolerance applies to the whole integral: a
    // first GK pass estimates each piece's share of |f|, and pieces that carry
    // a small share are refined only as far as the total needs.
    template <class F>
    QuadratureResult integrate_pieces(F &&f, std::span<const double> breaks, double rel_tol,
                                      unsigned max_depth = 18)
    {
        QuadratureResult total;
        if (breaks.size() < 2)
            return total;
        std::vector<double> share(breaks.size() - 1, 0.0);
        double l1 = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        {
            share[i] = integrate(f, breaks[i], breaks[i + 1], rel_tol, 0).l1;
            l1 += share[i];
        }
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        {
            double tol = rel_tol;
            if (share[i] > 0.0 && l1 > 0.0)
                tol = std::min(0.5, rel_tol * l1 / (share[i] * (breaks.size() - 1)));
            const auto r = integrate(f, breaks[i], breaks[i + 1], tol, max_depth);
            total.value += r.value;
            total.error += r.error;
            total.l1 += r.l1;
        }
        return total;
    }
}
