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

#ifndef LDMA_CORRELATION_HPP
#define LDMA_CORRELATION_HPP

#include "ldma/array.hpp"

#include <vector>

namespace ldma
{
    // |v1^H v2|
    double exact_correlation(const ComplexVector &v1, const ComplexVector &v2);

    // Closed-form correlation of two ULA focusing vectors sharing the angle phi:
    // |G(beta)| with beta = N sqrt(d^2 cos^2(phi) / (2 lambda) |1/r_l - 1/r_m|).
    double fresnel_correlation_ula(const ArrayGeometry &geom, double r_l, double r_m, double phi);

    // Exact ULA focusing-vector correlations between loc1 and loc2 for each array size
    // in n_sweep (spacing and wavelength taken from geom).
    std::vector<double> correlation_2d_trend(const ArrayGeometry &geom, const Location &loc1, const Location &loc2,
                                             const std::vector<std::size_t> &n_sweep);

    // Exact correlations of full UPA focusing vectors at (r_l, theta, phi) and (r_m, theta, phi)
    // for each n1 in n1_sweep, n2 fixed to geom.n2.
    std::vector<double> upa_distance_orthogonality_trend(const ArrayGeometry &geom,
                                                         const std::vector<std::size_t> &n1_sweep, double r_l,
                                                         double r_m, double theta, double phi);

    // Beam gain |Si(eta) / eta| kept when the bilinear n1 n2 phase term is dropped,
    // eta = N1 N2 k d^2 cos(theta) sin(theta) sin(phi) / (4 r).
    double bilinear_gain_loss(const ArrayGeometry &geom, const Location &loc);

    // Smallest eta in (0, pi] with Si(eta) / eta = gain.
    double bilinear_eta_for_gain(double gain);

    // Smallest distance at which the dropped-bilinear gain stays >= gain for the given
    // angle factor cos(theta) sin(theta) sin(phi).
    double bilinear_min_distance(const ArrayGeometry &geom, double angle_factor, double gain);

    // G(beta_1) G(beta_2) for the bilinear-free UPA focusing vectors sharing (theta, phi);
    // beta_1 = N1 beta_0 sin(theta), beta_2 = N2 beta_0 sqrt(1 - sin^2 theta sin^2 phi).
    cd gbar(const ArrayGeometry &geom, double beta0, double theta, double phi);
    double beta0_from_radii(const ArrayGeometry &geom, double r_l, double r_m);
    double upa_distance_correlation_approx(const ArrayGeometry &geom, double r_l, double r_m, double theta, double phi);

} // namespace ldma

#endif
