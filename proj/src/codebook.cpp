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

#include "ldma/codebook.hpp"
#include "ldma/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ldma
{
    namespace
    {
        constexpr double inf = std::numeric_limits<double>::infinity();

        // sup_x |C(x) + j S(x)|, padded
        double fresnel_modulus_bound()
        {
            static const double bound = []
            {
                double m = 0.0;
                for (double x = 0.0; x <= 12.0; x += 1e-3)
                    m = std::max(m, std::abs(fresnel_cs(x)));
                return m + 1e-3;
            }();
            return bound;
        }

        // Number of rings s >= 1 with r1 / s >= rho_min
        std::size_t ring_count_for(double r1, double rho_min)
        {
            if (!(r1 >= rho_min))
                return 0;
            auto s = static_cast<std::size_t>(std::floor(r1 / rho_min));
            while (r1 / double(s + 1) >= rho_min)
                ++s;
            while (s > 0 && r1 / double(s) < rho_min)
                --s;
            return s;
        }

        void check_delta(double delta)
        {
            if (!(delta > 0.0 && delta < 1.0))
                throw std::invalid_argument("Correlation threshold must lie in (0, 1).");
        }

        Codebook assemble(const ArrayGeometry &geom, CodebookKind kind, double delta, double rho_min,
                          const AngularGrid &grid, const std::vector<std::vector<double>> &radii_per_ring)
        {
            Codebook cb;
            cb.geom = geom;
            cb.kind = kind;
            cb.delta = delta;
            cb.rho_min = rho_min;
            cb.skipped_angles = grid.skipped;
            cb.ring_count = radii_per_ring.size() + 1;
            cb.words.reserve(grid.points.size() * cb.ring_count);
            for (const auto &p : grid.points)
                cb.words.push_back({{inf, p.theta, p.phi}, 0, p.n1, p.n2});
            for (std::size_t s = 0; s < radii_per_ring.size(); ++s)
                for (std::size_t a = 0; a < grid.points.size(); ++a)
                {
                    const auto &p = grid.points[a];
                    cb.words.push_back({{radii_per_ring[s][a], p.theta, p.phi}, s + 1, p.n1, p.n2});
                }
            return cb;
        }
    } // namespace

    std::string to_string(CodebookKind kind)
    {
        switch (kind)
        {
        case CodebookKind::dft: return "dft";
        case CodebookKind::polar: return "polar";
        case CodebookKind::spherical: return "spherical";
        case CodebookKind::uniform_radius: return "uniform_radius";
        }
        return "unknown";
    }

    CodebookKind codebook_kind_from_string(const std::string &name)
    {
        if (name == "dft")
            return CodebookKind::dft;
        if (name == "polar")
            return CodebookKind::polar;
        if (name == "spherical")
            return CodebookKind::spherical;
        if (name == "uniform_radius")
            return CodebookKind::uniform_radius;
        throw std::invalid_argument("Unknown codebook kind '" + name + "'.");
    }

    AngularGrid angular_grid(const ArrayGeometry &geom)
    {
        geom.validate();
        AngularGrid grid;
        if (geom.layout == Layout::ula)
        {
            const double n = double(geom.n1);
            for (std::size_t i = 0; i < geom.n1; ++i)
            {
                const double s = (2.0 * double(i) - n + 1.0) / n;
                grid.points.push_back({std::numbers::pi / 2.0, std::asin(s), i, 0});
            }
            return grid;
        }

        const double n1 = double(geom.n1), n2 = double(geom.n2);
        for (std::size_t a = 0; a < geom.n1; ++a)
        {
            const double c = (2.0 * double(a) - n1 + 1.0) / n1;
            const double theta = std::acos(c);
            const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (std::size_t b = 0; b < geom.n2; ++b)
            {
                const double u = (2.0 * double(b) - n2 + 1.0) / n2;
                if (std::abs(u) > st)
                {
                    ++grid.skipped;
                    continue;
                }
                const double sp = st > 0.0 ? std::clamp(u / st, -1.0, 1.0) : 0.0;
                grid.points.push_back({theta, std::asin(sp), a, b});
            }
        }
        return grid;
    }

    ComplexVector codeword_vector(const ArrayGeometry &geom, const Codeword &word)
    {
        if (word.ring == 0 || std::isinf(word.focus.r))
            return steering_vector(geom, word.focus);
        if (geom.layout == Layout::ula)
            return ula_focusing(geom, word.focus);
        return upa_focusing(geom, word.focus, true);
    }

    ComplexVector Codebook::vector(std::size_t i) const
    {
        if (i >= words.size())
            throw std::out_of_range("Codebook index out of range.");
        if (vectors)
            return vectors->col(Eigen::Index(i));
        return codeword_vector(geom, words[i]);
    }

    void Codebook::materialize()
    {
        if (vectors)
            return;
        ComplexMatrix m(Eigen::Index(geom.size()), Eigen::Index(words.size()));
        for (std::size_t i = 0; i < words.size(); ++i)
            m.col(Eigen::Index(i)) = codeword_vector(geom, words[i]);
        vectors = std::move(m);
    }

    double envelope_crossing(double level, double ratio)
    {
        check_delta(level);
        if (!(ratio >= 0.0 && ratio <= 1.0))
            throw std::invalid_argument("envelope_crossing: ratio must lie in [0, 1].");

        auto profile = [ratio](double x)
        {
            const double a = std::abs(fresnel_ratio(x));
            return ratio > 0.0 ? a * std::abs(fresnel_ratio(ratio * x)) : a;
        };

        // |G(x)| <= min(1, M/x), so beyond x_hi the product is provably below level
        const double M = fresnel_modulus_bound();
        double x_hi = M / level;
        if (ratio > 0.0)
            x_hi = std::min(x_hi, M / std::sqrt(ratio * level));
        x_hi *= 1.01;

        // |G(x)| oscillates with local period ~ 2 / x; sample ~100 points per period
        double last_above = 0.0, next_after = 0.0;
        bool found = false;
        for (double x = 0.0; x <= x_hi;)
        {
            const double step = 0.02 / std::max(1.0, x);
            const double nx = x + step;
            if (profile(x) > level)
            {
                last_above = x;
                next_after = nx;
                found = true;
            }
            x = nx;
        }
        if (!found)
            return 0.0;

        double lo = last_above, hi = next_after;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (profile(mid) > level ? lo : hi) = mid;
        }
        return hi;
    }

    double beta_delta_search(double delta, double theta, double phi, const ArrayGeometry &geom)
    {
        check_delta(delta);
        geom.validate();
        const double st = std::sin(theta);
        const double uy = st * std::sin(phi);
        const double a = double(geom.n1) * std::sqrt(std::max(0.0, 1.0 - std::cos(theta) * std::cos(theta)));
        const double b = double(geom.n2) * std::sqrt(std::max(0.0, 1.0 - uy * uy));
        const double m = std::max(a, b);
        if (!(m > 0.0))
            throw numeric_error("beta_delta_search: degenerate direction, both aperture factors vanish.");
        return envelope_crossing(delta, std::min(a, b) / m) / m;
    }

    double beta_delta_ula(double delta) { return envelope_crossing(delta, 0.0); }

    std::vector<double> distance_rings(double /*theta*/, double /*phi*/, double beta_delta, double rho_min,
                                       const ArrayGeometry &geom)
    {
        if (!(beta_delta > 0.0) || !(rho_min > 0.0))
            throw std::invalid_argument("distance_rings: beta_delta and rho_min must be positive.");
        const double d = geom.spacing;
        const double r1 = d * d / (2.0 * geom.wavelength * beta_delta * beta_delta);
        std::vector<double> radii;
        for (std::size_t s = 1; s <= ring_count_for(r1, rho_min); ++s)
            radii.push_back(r1 / double(s));
        return radii;
    }

    std::vector<double> distance_rings_ula(double phi, double beta_delta, double rho_min, const ArrayGeometry &geom)
    {
        if (!(beta_delta > 0.0) || !(rho_min > 0.0))
            throw std::invalid_argument("distance_rings_ula: beta_delta and rho_min must be positive.");
        const double n = double(geom.size()), d = geom.spacing, c = std::cos(phi);
        const double r1 = n * n * d * d * c * c / (2.0 * geom.wavelength * beta_delta * beta_delta);
        std::vector<double> radii;
        for (std::size_t s = 1; s <= ring_count_for(r1, rho_min); ++s)
            radii.push_back(r1 / double(s));
        return radii;
    }

    Codebook build_dft_codebook(const ArrayGeometry &geom)
    {
        return assemble(geom, CodebookKind::dft, 0.0, 0.0, angular_grid(geom), {});
    }

    Codebook build_spherical_codebook(const ArrayGeometry &geom, double delta, double rho_min)
    {
        check_delta(delta);
        if (geom.layout != Layout::upa)
            throw std::invalid_argument("build_spherical_codebook: UPA layout required.");
        if (!(rho_min > 0.0))
            throw std::invalid_argument("build_spherical_codebook: rho_min must be positive.");

        const auto grid = angular_grid(geom);
        const double d = geom.spacing;
        std::vector<double> r1(grid.points.size());
        std::size_t rings = 0;
        for (std::size_t a = 0; a < grid.points.size(); ++a)
        {
            const auto &p = grid.points[a];
            const double beta = beta_delta_search(delta, p.theta, p.phi, geom);
            r1[a] = d * d / (2.0 * geom.wavelength * beta * beta);
            rings = std::max(rings, ring_count_for(r1[a], rho_min));
        }
        // Rings continue while the largest radius over all angles stays above rho_min,
        // so every angle carries the same number of rings.
        std::vector<std::vector<double>> radii(rings, std::vector<double>(grid.points.size()));
        for (std::size_t s = 0; s < rings; ++s)
            for (std::size_t a = 0; a < grid.points.size(); ++a)
                radii[s][a] = r1[a] / double(s + 1);
        return assemble(geom, CodebookKind::spherical, delta, rho_min, grid, radii);
    }

    Codebook build_polar_codebook_ula(const ArrayGeometry &geom, double delta, double rho_min)
    {
        check_delta(delta);
        if (geom.layout != Layout::ula)
            throw std::invalid_argument("build_polar_codebook_ula: ULA layout required.");
        if (!(rho_min > 0.0))
            throw std::invalid_argument("build_polar_codebook_ula: rho_min must be positive.");

        const auto grid = angular_grid(geom);
        const double beta = beta_delta_ula(delta);
        const double n = double(geom.size()), d = geom.spacing;
        std::vector<double> r1(grid.points.size());
        std::size_t rings = 0;
        for (std::size_t a = 0; a < grid.points.size(); ++a)
        {
            const double c = std::cos(grid.points[a].phi);
            r1[a] = n * n * d * d * c * c / (2.0 * geom.wavelength * beta * beta);
            rings = std::max(rings, ring_count_for(r1[a], rho_min));
        }
        std::vector<std::vector<double>> radii(rings, std::vector<double>(grid.points.size()));
        for (std::size_t s = 0; s < rings; ++s)
            for (std::size_t a = 0; a < grid.points.size(); ++a)
                radii[s][a] = r1[a] / double(s + 1);
        return assemble(geom, CodebookKind::polar, delta, rho_min, grid, radii);
    }

    Codebook build_uniform_radius_codebook(const ArrayGeometry &geom, std::size_t rings, double r_lo, double r_hi)
    {
        if (!(r_lo > 0.0) || !(r_hi >= r_lo))
            throw std::invalid_argument("build_uniform_radius_codebook: need 0 < r_lo <= r_hi.");
        const auto grid = angular_grid(geom);
        std::vector<std::vector<double>> radii(rings, std::vector<double>(grid.points.size()));
        for (std::size_t s = 0; s < rings; ++s)
        {
            const double r = rings == 1 ? 0.5 * (r_lo + r_hi) : r_lo + (r_hi - r_lo) * double(s) / double(rings - 1);
            std::fill(radii[s].begin(), radii[s].end(), r);
        }
        return assemble(geom, CodebookKind::uniform_radius, 0.0, r_lo, grid, radii);
    }

    Codebook build_near_field_codebook(const ArrayGeometry &geom, double delta, double rho_min)
    {
        return geom.layout == Layout::ula ? build_polar_codebook_ula(geom, delta, rho_min)
                                          : build_spherical_codebook(geom, delta, rho_min);
    }

} // namespace ldma
