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

#ifndef LDMA_ARRAY_HPP
#define LDMA_ARRAY_HPP

#include "ldma/numerics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ldma
{
    constexpr double speed_of_light = 299792458.0;

    inline double wavelength_from_frequency(double frequency_hz) { return speed_of_light / frequency_hz; }

    enum class Layout
    {
        ula,
        upa
    };

    // Uniform linear or planar array centred at the origin.
    // ULA: n1 elements, n2 = 1, phase depends on sin(phi).
    // UPA: yz-plane, n1 elements along z (driven by cos(theta)), n2 along y (driven by
    // sin(theta) sin(phi)). Element (i1, i2) is stored at index i1 * n2 + i2.
    struct ArrayGeometry
    {
        Layout layout = Layout::ula;
        std::size_t n1 = 1;
        std::size_t n2 = 1;
        double spacing = 0.005;    // [m]
        double wavelength = 0.01;  // [m]

        static ArrayGeometry ula(std::size_t n, double wavelength, double spacing = 0.0); // 0 -> lambda/2
        static ArrayGeometry upa(std::size_t n1, std::size_t n2, double wavelength, double spacing = 0.0);

        std::size_t size() const { return n1 * n2; }
        double wavenumber() const;
        void validate() const; // throws std::invalid_argument
        std::string describe() const;
    };

    // Spherical coordinates relative to the array centre. r may be +inf (planar wave).
    struct Location
    {
        double r = 1.0;
        double theta = 1.5707963267948966; // elevation from the z axis
        double phi = 0.0;                  // azimuth
    };

    enum class ChannelModel
    {
        far_field,
        near_field
    };

    struct PathComponent
    {
        cd gain;
        Location location;
        bool is_los = false;
    };

    struct ChannelRealization
    {
        ComplexVector h;
        std::vector<PathComponent> paths;
        ChannelModel model = ChannelModel::near_field;
    };

    // Box in (r, theta, phi) from which scatterers are drawn uniformly
    struct ScatterRegion
    {
        double r_min = 4.0, r_max = 100.0;
        double theta_min = 1.5707963267948966, theta_max = 1.5707963267948966;
        double phi_min = -1.0471975511965976, phi_max = 1.0471975511965976;
    };

    // m - (count - 1) / 2 for m = 0 .. count - 1
    std::vector<double> symmetric_indices(std::size_t count);

    ComplexVector ula_steering(const ArrayGeometry &geom, double phi);
    ComplexVector upa_steering(const ArrayGeometry &geom, double theta, double phi);

    // Second-order (Fresnel) phase expansion of the element distance.
    ComplexVector ula_focusing(const ArrayGeometry &geom, const Location &loc);
    ComplexVector upa_focusing(const ArrayGeometry &geom, const Location &loc, bool drop_bilinear = false);

    // Exact spherical-wave phase, no expansion.
    ComplexVector ula_focusing_exact(const ArrayGeometry &geom, const Location &loc);
    ComplexVector upa_focusing_exact(const ArrayGeometry &geom, const Location &loc);

    // Layout dispatch helpers
    ComplexVector steering_vector(const ArrayGeometry &geom, const Location &loc);
    ComplexVector focusing_vector(const ArrayGeometry &geom, const Location &loc);

    double array_aperture(const ArrayGeometry &geom);
    double rayleigh_distance(const ArrayGeometry &geom);
    double fresnel_boundary(const ArrayGeometry &geom);

    // One LoS path at user_loc plus num_nlos scatterers drawn from the region.
    ChannelRealization generate_channel(const ArrayGeometry &geom, const Location &user_loc, std::size_t num_nlos,
                                        double rician_kappa, const ScatterRegion &region, SeededStream &stream,
                                        ChannelModel model);

    // Rebuild h from the stored path list.
    ComplexVector reconstruct_channel(const ArrayGeometry &geom, const std::vector<PathComponent> &paths,
                                      ChannelModel model);

} // namespace ldma

#endif
