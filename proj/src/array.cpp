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

#include "ldma/array.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ldma
{
    namespace
    {
        void require_layout(const ArrayGeometry &geom, Layout layout, const char *fn)
        {
            geom.validate();
            if (geom.layout != layout)
                throw std::invalid_argument(std::string(fn) + ": wrong array layout.");
        }

        void require_radius(const Location &loc, const char *fn)
        {
            if (!(loc.r > 0.0))
                throw std::invalid_argument(std::string(fn) + ": distance must be positive.");
        }

        // exp(j * phase) / sqrt(N)
        inline cd unit_phasor(double phase, double scale) { return {scale * std::cos(phase), scale * std::sin(phase)}; }
    } // namespace

    ArrayGeometry ArrayGeometry::ula(std::size_t n, double wavelength, double spacing)
    {
        ArrayGeometry g;
        g.layout = Layout::ula;
        g.n1 = n;
        g.n2 = 1;
        g.wavelength = wavelength;
        g.spacing = spacing > 0.0 ? spacing : 0.5 * wavelength;
        g.validate();
        return g;
    }

    ArrayGeometry ArrayGeometry::upa(std::size_t n1, std::size_t n2, double wavelength, double spacing)
    {
        ArrayGeometry g;
        g.layout = Layout::upa;
        g.n1 = n1;
        g.n2 = n2;
        g.wavelength = wavelength;
        g.spacing = spacing > 0.0 ? spacing : 0.5 * wavelength;
        g.validate();
        return g;
    }

    double ArrayGeometry::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

    void ArrayGeometry::validate() const
    {
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("Array spacing must be positive.");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw std::invalid_argument("Wavelength must be positive.");
        if (n1 == 0 || n2 == 0)
            throw std::invalid_argument("Array must have at least one element.");
        if (layout == Layout::ula && n2 != 1)
            throw std::invalid_argument("ULA must have n2 = 1.");
    }

    std::string ArrayGeometry::describe() const
    {
        std::ostringstream os;
        if (layout == Layout::ula)
            os << "ULA " << n1;
        else
            os << "UPA " << n1 << "x" << n2;
        os << ", d = " << spacing << " m, lambda = " << wavelength << " m";
        return os.str();
    }

    std::vector<double> symmetric_indices(std::size_t count)
    {
        std::vector<double> idx(count);
        const double offset = 0.5 * (double(count) - 1.0);
        for (std::size_t m = 0; m < count; ++m)
            idx[m] = double(m) - offset;
        return idx;
    }

    ComplexVector ula_steering(const ArrayGeometry &geom, double phi)
    {
        require_layout(geom, Layout::ula, "ula_steering");
        const auto idx = symmetric_indices(geom.n1);
        const double scale = 1.0 / std::sqrt(double(geom.n1));
        const double kds = geom.wavenumber() * geom.spacing * std::sin(phi);
        ComplexVector v(geom.n1);
        for (std::size_t n = 0; n < geom.n1; ++n)
            v[n] = unit_phasor(kds * idx[n], scale);
        return v;
    }

    ComplexVector upa_steering(const ArrayGeometry &geom, double theta, double phi)
    {
        require_layout(geom, Layout::upa, "upa_steering");
        const auto i1 = symmetric_indices(geom.n1);
        const auto i2 = symmetric_indices(geom.n2);
        const double scale = 1.0 / std::sqrt(double(geom.size()));
        const double kd = geom.wavenumber() * geom.spacing;
        const double uz = std::cos(theta);
        const double uy = std::sin(theta) * std::sin(phi);
        ComplexVector v(geom.size());
        for (std::size_t a = 0; a < geom.n1; ++a)
            for (std::size_t b = 0; b < geom.n2; ++b)
                v[a * geom.n2 + b] = unit_phasor(kd * (i1[a] * uz + i2[b] * uy), scale);
        return v;
    }

    ComplexVector ula_focusing(const ArrayGeometry &geom, const Location &loc)
    {
        require_layout(geom, Layout::ula, "ula_focusing");
        require_radius(loc, "ula_focusing");
        const auto idx = symmetric_indices(geom.n1);
        const double scale = 1.0 / std::sqrt(double(geom.n1));
        const double k = geom.wavenumber(), d = geom.spacing;
        const double sphi = std::sin(loc.phi), cphi = std::cos(loc.phi);
        const double curv = std::isinf(loc.r) ? 0.0 : d * d * cphi * cphi / (2.0 * loc.r);
        ComplexVector v(geom.n1);
        for (std::size_t n = 0; n < geom.n1; ++n)
        {
            const double psi = -idx[n] * d * sphi + idx[n] * idx[n] * curv;
            v[n] = unit_phasor(-k * psi, scale);
        }
        return v;
    }

    ComplexVector ula_focusing_exact(const ArrayGeometry &geom, const Location &loc)
    {
        require_layout(geom, Layout::ula, "ula_focusing_exact");
        require_radius(loc, "ula_focusing_exact");
        if (std::isinf(loc.r))
            return ula_steering(geom, loc.phi);
        const auto idx = symmetric_indices(geom.n1);
        const double scale = 1.0 / std::sqrt(double(geom.n1));
        const double k = geom.wavenumber(), d = geom.spacing, r = loc.r;
        const double sphi = std::sin(loc.phi);
        ComplexVector v(geom.n1);
        for (std::size_t n = 0; n < geom.n1; ++n)
        {
            const double nd = idx[n] * d;
            // r_n - r computed without cancellation: (r_n^2 - r^2) / (r_n + r)
            const double num = -2.0 * nd * r * sphi + nd * nd;
            const double rn = std::sqrt(r * r + num);
            v[n] = unit_phasor(-k * num / (rn + r), scale);
        }
        return v;
    }

    ComplexVector upa_focusing(const ArrayGeometry &geom, const Location &loc, bool drop_bilinear)
    {
        require_layout(geom, Layout::upa, "upa_focusing");
        require_radius(loc, "upa_focusing");
        const auto i1 = symmetric_indices(geom.n1);
        const auto i2 = symmetric_indices(geom.n2);
        const double scale = 1.0 / std::sqrt(double(geom.size()));
        const double k = geom.wavenumber(), d = geom.spacing;
        const double ct = std::cos(loc.theta), st = std::sin(loc.theta), sp = std::sin(loc.phi);
        const double uy = st * sp;
        const double inv_r = std::isinf(loc.r) ? 0.0 : 1.0 / loc.r;
        const double q1 = d * d * (1.0 - ct * ct) * 0.5 * inv_r;
        const double q2 = d * d * (1.0 - uy * uy) * 0.5 * inv_r;
        const double q12 = drop_bilinear ? 0.0 : d * d * ct * uy * inv_r;
        ComplexVector v(geom.size());
        for (std::size_t a = 0; a < geom.n1; ++a)
        {
            const double n1 = i1[a];
            for (std::size_t b = 0; b < geom.n2; ++b)
            {
                const double n2 = i2[b];
                const double psi = -n1 * d * ct - n2 * d * uy + n1 * n1 * q1 + n2 * n2 * q2 - n1 * n2 * q12;
                v[a * geom.n2 + b] = unit_phasor(-k * psi, scale);
            }
        }
        return v;
    }

    ComplexVector upa_focusing_exact(const ArrayGeometry &geom, const Location &loc)
    {
        require_layout(geom, Layout::upa, "upa_focusing_exact");
        require_radius(loc, "upa_focusing_exact");
        if (std::isinf(loc.r))
            return upa_steering(geom, loc.theta, loc.phi);
        const auto i1 = symmetric_indices(geom.n1);
        const auto i2 = symmetric_indices(geom.n2);
        const double scale = 1.0 / std::sqrt(double(geom.size()));
        const double k = geom.wavenumber(), d = geom.spacing, r = loc.r;
        const double ct = std::cos(loc.theta), uy = std::sin(loc.theta) * std::sin(loc.phi);
        ComplexVector v(geom.size());
        for (std::size_t a = 0; a < geom.n1; ++a)
        {
            const double z = i1[a] * d;
            for (std::size_t b = 0; b < geom.n2; ++b)
            {
                const double y = i2[b] * d;
                const double num = -2.0 * r * (z * ct + y * uy) + z * z + y * y;
                const double rn = std::sqrt(r * r + num);
                v[a * geom.n2 + b] = unit_phasor(-k * num / (rn + r), scale);
            }
        }
        return v;
    }

    ComplexVector steering_vector(const ArrayGeometry &geom, const Location &loc)
    {
        return geom.layout == Layout::ula ? ula_steering(geom, loc.phi) : upa_steering(geom, loc.theta, loc.phi);
    }

    ComplexVector focusing_vector(const ArrayGeometry &geom, const Location &loc)
    {
        return geom.layout == Layout::ula ? ula_focusing(geom, loc) : upa_focusing(geom, loc, false);
    }

    double array_aperture(const ArrayGeometry &geom)
    {
        geom.validate();
        const double d1 = (double(geom.n1) - 1.0) * geom.spacing;
        const double d2 = (double(geom.n2) - 1.0) * geom.spacing;
        return std::sqrt(d1 * d1 + d2 * d2);
    }

    double rayleigh_distance(const ArrayGeometry &geom)
    {
        const double D = array_aperture(geom);
        return 2.0 * D * D / geom.wavelength;
    }

    double fresnel_boundary(const ArrayGeometry &geom)
    {
        const double D = array_aperture(geom);
        return 0.5 * D * std::cbrt(D / geom.wavelength);
    }

    ComplexVector reconstruct_channel(const ArrayGeometry &geom, const std::vector<PathComponent> &paths,
                                      ChannelModel model)
    {
        const double n = double(geom.size());
        std::size_t num_nlos = 0;
        for (const auto &p : paths)
            num_nlos += p.is_los ? 0 : 1;

        ComplexVector h = ComplexVector::Zero(Eigen::Index(geom.size()));
        for (const auto &p : paths)
        {
            const double amp = p.is_los ? std::sqrt(n) : std::sqrt(n / double(num_nlos));
            const ComplexVector v =
                model == ChannelModel::far_field ? steering_vector(geom, p.location) : focusing_vector(geom, p.location);
            h += (amp * p.gain) * v;
        }
        return h;
    }

    ChannelRealization generate_channel(const ArrayGeometry &geom, const Location &user_loc, std::size_t num_nlos,
                                        double rician_kappa, const ScatterRegion &region, SeededStream &stream,
                                        ChannelModel model)
    {
        geom.validate();
        if (!(rician_kappa >= 0.0))
            throw std::invalid_argument("generate_channel: Rician factor must be non-negative.");
        if (num_nlos == 0 && rician_kappa == 0.0)
            throw std::invalid_argument("generate_channel: no LoS power and no NLoS paths gives an empty channel.");
        require_radius(user_loc, "generate_channel");

        ChannelRealization out;
        out.model = model;
        const double los_amp = std::isinf(rician_kappa) ? 1.0 : std::sqrt(rician_kappa / (rician_kappa + 1.0));
        if (los_amp > 0.0)
            out.paths.push_back({cd(los_amp, 0.0), user_loc, true});

        const double nlos_var = std::isinf(rician_kappa) ? 0.0 : 1.0 / (rician_kappa + 1.0);
        for (std::size_t l = 0; l < num_nlos; ++l)
        {
            Location s;
            s.r = stream.uniform(region.r_min, region.r_max);
            s.theta = stream.uniform(region.theta_min, region.theta_max);
            s.phi = stream.uniform(region.phi_min, region.phi_max);
            const cd g = stream.complex_normal(nlos_var);
            out.paths.push_back({g, s, false});
        }
        out.h = reconstruct_channel(geom, out.paths, model);
        return out;
    }

} // namespace ldma
