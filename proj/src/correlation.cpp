// SPDX-License-Identifier: Apache-2.0
//
// ldma: near-field multi-user beam focusing and location division multiple access
// Copyright (C) 2026 The ldma authors
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

#include "ldma/correlation.hpp"

#include <cmath>
#include <numbers>

namespace ldma
{
    namespace
    {
        double inverse_gap(double r_l, double r_m)
        {
            if (!(r_l > 0.0) || !(r_m > 0.0))
                throw std::invalid_argument("Distances must be positive.");
            const double a = std::isinf(r_l) ? 0.0 : 1.0 / r_l;
            const double b = std::isinf(r_m) ? 0.0 : 1.0 / r_m;
            return std::abs(a - b);
        }
    } // namespace

    double exact_correlation(const ComplexVector &v1, const ComplexVector &v2)
    {
        if (v1.size() != v2.size())
            throw std::invalid_argument("exact_correlation: vector lengths differ.");
        return std::abs(v1.dot(v2)); // Eigen's dot conjugates the first argument
    }

    double fresnel_correlation_ula(const ArrayGeometry &geom, double r_l, double r_m, double phi)
    {
        geom.validate();
        const double d = geom.spacing, c = std::cos(phi);
        const double beta = double(geom.size()) * std::sqrt(d * d * c * c / (2.0 * geom.wavelength) * inverse_gap(r_l, r_m));
        return std::abs(fresnel_ratio(beta));
    }

    std::vector<double> correlation_2d_trend(const ArrayGeometry &geom, const Location &loc1, const Location &loc2,
                                             const std::vector<std::size_t> &n_sweep)
    {
        std::vector<double> out;
        out.reserve(n_sweep.size());
        for (const std::size_t n : n_sweep)
        {
            const auto g = ArrayGeometry::ula(n, geom.wavelength, geom.spacing);
            out.push_back(exact_correlation(ula_focusing(g, loc1), ula_focusing(g, loc2)));
        }
        return out;
    }

    std::vector<double> upa_distance_orthogonality_trend(const ArrayGeometry &geom,
                                                         const std::vector<std::size_t> &n1_sweep, double r_l,
                                                         double r_m, double theta, double phi)
    {
        std::vector<double> out;
        out.reserve(n1_sweep.size());
        for (const std::size_t n1 : n1_sweep)
        {
            const auto g = ArrayGeometry::upa(n1, geom.n2, geom.wavelength, geom.spacing);
            const auto a = upa_focusing(g, {r_l, theta, phi}, false);
            const auto b = upa_focusing(g, {r_m, theta, phi}, false);
            out.push_back(exact_correlation(a, b));
        }
        return out;
    }

    double bilinear_gain_loss(const ArrayGeometry &geom, const Location &loc)
    {
        geom.validate();
        if (!(loc.r > 0.0))
            throw std::invalid_argument("bilinear_gain_loss: distance must be positive.");
        const double d = geom.spacing;
        const double factor = std::cos(loc.theta) * std::sin(loc.theta) * std::sin(loc.phi);
        const double eta = double(geom.n1) * double(geom.n2) * geom.wavenumber() * d * d * factor / (4.0 * loc.r);
        if (std::abs(eta) < 1e-12)
            return 1.0;
        return std::abs(sine_integral(eta) / eta);
    }

    double bilinear_eta_for_gain(double gain)
    {
        if (!(gain > 0.0 && gain < 1.0))
            throw std::invalid_argument("bilinear_eta_for_gain: gain must lie in (0, 1).");
        // Si(eta)/eta decreases monotonically on [0, pi]
        const double floor_value = sine_integral(std::numbers::pi) / std::numbers::pi;
        if (gain < floor_value)
            throw std::invalid_argument("bilinear_eta_for_gain: gain below Si(pi)/pi is outside the monotone range.");
        double lo = 0.0, hi = std::numbers::pi;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const double v = mid == 0.0 ? 1.0 : sine_integral(mid) / mid;
            (v > gain ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    double bilinear_min_distance(const ArrayGeometry &geom, double angle_factor, double gain)
    {
        geom.validate();
        const double eta = bilinear_eta_for_gain(gain);
        const double d = geom.spacing;
        return double(geom.n1) * double(geom.n2) * geom.wavenumber() * d * d * std::abs(angle_factor) / (4.0 * eta);
    }

    cd gbar(const ArrayGeometry &geom, double beta0, double theta, double phi)
    {
        const double st = std::sin(theta);
        const double uy = st * std::sin(phi);
        const double b1 = double(geom.n1) * beta0 * std::sqrt(std::max(0.0, 1.0 - std::cos(theta) * std::cos(theta)));
        const double b2 = double(geom.n2) * beta0 * std::sqrt(std::max(0.0, 1.0 - uy * uy));
        return fresnel_ratio(b1) * fresnel_ratio(b2);
    }

    double beta0_from_radii(const ArrayGeometry &geom, double r_l, double r_m)
    {
        const double d = geom.spacing;
        return std::sqrt(d * d / (2.0 * geom.wavelength) * inverse_gap(r_l, r_m));
    }

    double upa_distance_correlation_approx(const ArrayGeometry &geom, double r_l, double r_m, double theta, double phi)
    {
        geom.validate();
        return std::abs(gbar(geom, beta0_from_radii(geom, r_l, r_m), theta, phi));
    }

} // namespace ldma
