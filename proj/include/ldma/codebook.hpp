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

#ifndef LDMA_CODEBOOK_HPP
#define LDMA_CODEBOOK_HPP

#include "ldma/array.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ldma
{
    enum class CodebookKind
    {
        dft,            // far-field grid only
        polar,          // ULA angle grid with 1/s distance rings
        spherical,      // UPA angle grid with 1/s distance rings
        uniform_radius, // UPA/ULA angle grid with uniformly spaced radii
    };

    std::string to_string(CodebookKind kind);
    CodebookKind codebook_kind_from_string(const std::string &name);

    struct AngularSample
    {
        double theta = 0.0;
        double phi = 0.0;
        std::size_t n1 = 0;
        std::size_t n2 = 0;
    };

    struct AngularGrid
    {
        std::vector<AngularSample> points;
        std::size_t skipped = 0; // (cos theta, sin theta sin phi) pairs with no real phi
    };

    // Orthogonal far-field grid. UPA: cos(theta) = (2 n1 - N1 + 1) / N1 and
    // sin(theta) sin(phi) = (2 n2 - N2 + 1) / N2. ULA: sin(phi) = (2 n - N + 1) / N, theta = pi/2.
    AngularGrid angular_grid(const ArrayGeometry &geom);

    struct Codeword
    {
        Location focus; // r = +inf on ring 0
        std::size_t ring = 0;
        std::size_t n1 = 0;
        std::size_t n2 = 0;
    };

    // Codewords are stored ring-major: all angles of ring 0, then ring 1, ...
    // Vectors are synthesized from the focus labels unless explicitly materialized
    // (imported codebooks always carry their vectors).
    struct Codebook
    {
        ArrayGeometry geom;
        CodebookKind kind = CodebookKind::dft;
        double delta = 0.0;
        double rho_min = 0.0;
        std::size_t ring_count = 1; // including ring 0
        std::size_t skipped_angles = 0;
        std::vector<Codeword> words;
        std::optional<ComplexMatrix> vectors; // N x size()

        std::size_t size() const { return words.size(); }
        std::size_t angle_count() const { return ring_count == 0 ? 0 : words.size() / ring_count; }
        ComplexVector vector(std::size_t i) const;
        void materialize();
    };

    // Constant-modulus codeword for a focus label: far-field steering on ring 0,
    // otherwise the bilinear-free focusing vector (UPA) or focusing vector (ULA).
    ComplexVector codeword_vector(const ArrayGeometry &geom, const Codeword &word);

    // Smallest x > 0 such that |G(x)| |G(ratio x)| <= level for every x' >= x,
    // ratio in [0, 1] (0 means a single factor).
    double envelope_crossing(double level, double ratio);

    // beta_0 at which the decreasing envelope of |Gbar| reaches delta.
    double beta_delta_search(double delta, double theta, double phi, const ArrayGeometry &geom);

    // Same on the single-factor ULA profile |G(beta)|, beta in the ULA normalisation.
    double beta_delta_ula(double delta);

    // r_s = d^2 / (2 lambda beta_delta^2 s), s = 1, 2, ... while r_s >= rho_min
    std::vector<double> distance_rings(double theta, double phi, double beta_delta, double rho_min,
                                       const ArrayGeometry &geom);

    // r_s = N^2 d^2 cos^2(phi) / (2 lambda beta_delta^2 s) while r_s >= rho_min
    std::vector<double> distance_rings_ula(double phi, double beta_delta, double rho_min, const ArrayGeometry &geom);

    Codebook build_dft_codebook(const ArrayGeometry &geom);
    Codebook build_spherical_codebook(const ArrayGeometry &geom, double delta, double rho_min);
    Codebook build_polar_codebook_ula(const ArrayGeometry &geom, double delta, double rho_min);

    // Ring 0 plus `rings` radii evenly spaced over [r_lo, r_hi] at every grid angle
    Codebook build_uniform_radius_codebook(const ArrayGeometry &geom, std::size_t rings, double r_lo, double r_hi);

    // Near-field codebook appropriate for the layout (polar for ULA, spherical for UPA)
    Codebook build_near_field_codebook(const ArrayGeometry &geom, double delta, double rho_min);

    class codebook_parse_error : public std::runtime_error
    {
    public:
        codebook_parse_error(const std::string &msg, std::size_t line);
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    class unsupported_version_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    void export_codebook(const Codebook &cb, const std::string &path);
    Codebook import_codebook(const std::string &path);

} // namespace ldma

#endif
