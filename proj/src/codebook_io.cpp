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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace ldma
{
    namespace
    {
        constexpr const char *format_tag = "NFCB1";

        std::string fmt(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        double parse_double(const std::string &tok, std::size_t line)
        {
            if (tok == "inf")
                return std::numeric_limits<double>::infinity();
            if (tok == "-inf")
                return -std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(tok, &used);
            }
            catch (const std::exception &)
            {
                throw codebook_parse_error("invalid number '" + tok + "'", line);
            }
            if (used != tok.size())
                throw codebook_parse_error("invalid number '" + tok + "'", line);
            return v;
        }

        std::size_t parse_count(const std::string &tok, std::size_t line)
        {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw codebook_parse_error("invalid count '" + tok + "'", line);
            return std::stoull(tok);
        }
    } // namespace

    codebook_parse_error::codebook_parse_error(const std::string &msg, std::size_t line)
        : std::runtime_error("codebook line " + std::to_string(line) + ": " + msg), line_(line)
    {
    }

    void export_codebook(const Codebook &cb, const std::string &path)
    {
        std::ofstream os(path);
        if (!os)
            throw std::runtime_error("Cannot open '" + path + "' for writing.");
        const auto &g = cb.geom;
        os << format_tag << " layout=" << (g.layout == Layout::ula ? "ula" : "upa") << " n1=" << g.n1 << " n2=" << g.n2
           << " spacing=" << fmt(g.spacing) << " wavelength=" << fmt(g.wavelength) << " delta=" << fmt(cb.delta)
           << " rho_min=" << fmt(cb.rho_min) << " kind=" << to_string(cb.kind) << " rings=" << cb.ring_count
           << " skipped=" << cb.skipped_angles << " count=" << cb.size() << '\n';
        for (std::size_t i = 0; i < cb.size(); ++i)
        {
            const auto &w = cb.words[i];
            const ComplexVector v = cb.vector(i);
            os << w.ring << ' ' << w.n1 << ' ' << w.n2 << ' ' << fmt(w.focus.r) << ' ' << fmt(w.focus.theta) << ' '
               << fmt(w.focus.phi);
            for (Eigen::Index n = 0; n < v.size(); ++n)
                os << ' ' << fmt(v[n].real()) << ' ' << fmt(v[n].imag());
            os << '\n';
        }
        if (!os)
            throw std::runtime_error("Write to '" + path + "' failed.");
    }

    Codebook import_codebook(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw std::runtime_error("Cannot open '" + path + "' for reading.");

        std::string line;
        if (!std::getline(is, line))
            throw codebook_parse_error("missing header", 1);
        std::istringstream hs(line);
        std::string tag;
        hs >> tag;
        if (tag.rfind("NFCB", 0) != 0)
            throw codebook_parse_error("not a codebook file (expected NFCB header)", 1);
        if (tag != format_tag)
            throw unsupported_version_error("Unsupported codebook format version '" + tag + "', expected " +
                                            format_tag + ".");

        std::map<std::string, std::string> fields;
        for (std::string kv; hs >> kv;)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw codebook_parse_error("malformed header field '" + kv + "'", 1);
            fields[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        auto field = [&](const char *key) -> const std::string &
        {
            const auto it = fields.find(key);
            if (it == fields.end())
                throw codebook_parse_error(std::string("missing header field '") + key + "'", 1);
            return it->second;
        };

        Codebook cb;
        const std::string &layout = field("layout");
        if (layout != "ula" && layout != "upa")
            throw codebook_parse_error("unknown layout '" + layout + "'", 1);
        cb.geom.layout = layout == "ula" ? Layout::ula : Layout::upa;
        cb.geom.n1 = parse_count(field("n1"), 1);
        cb.geom.n2 = parse_count(field("n2"), 1);
        cb.geom.spacing = parse_double(field("spacing"), 1);
        cb.geom.wavelength = parse_double(field("wavelength"), 1);
        try
        {
            cb.geom.validate();
            cb.kind = codebook_kind_from_string(field("kind"));
        }
        catch (const std::invalid_argument &e)
        {
            throw codebook_parse_error(e.what(), 1);
        }
        cb.delta = parse_double(field("delta"), 1);
        cb.rho_min = parse_double(field("rho_min"), 1);
        cb.ring_count = parse_count(field("rings"), 1);
        cb.skipped_angles = parse_count(field("skipped"), 1);
        const std::size_t count = parse_count(field("count"), 1);
        if (cb.ring_count == 0 || count % cb.ring_count != 0)
            throw codebook_parse_error("codeword count is not a multiple of the ring count", 1);

        const std::size_t n = cb.geom.size();
        ComplexMatrix vectors(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
        cb.words.reserve(count);
        std::size_t line_no = 1;
        std::vector<std::string> tok;
        while (cb.words.size() < count)
        {
            ++line_no;
            if (!std::getline(is, line))
                throw codebook_parse_error("truncated file: expected " + std::to_string(count) + " records, found " +
                                               std::to_string(cb.words.size()),
                                           line_no);
            tok.clear();
            std::istringstream ls(line);
            for (std::string t; ls >> t;)
                tok.push_back(t);
            if (tok.size() != 6 + 2 * n)
                throw codebook_parse_error("record " + std::to_string(cb.words.size()) + " has " +
                                               std::to_string(tok.size()) + " fields, expected " +
                                               std::to_string(6 + 2 * n),
                                           line_no);
            Codeword w;
            w.ring = parse_count(tok[0], line_no);
            w.n1 = parse_count(tok[1], line_no);
            w.n2 = parse_count(tok[2], line_no);
            w.focus = {parse_double(tok[3], line_no), parse_double(tok[4], line_no), parse_double(tok[5], line_no)};
            const auto col = Eigen::Index(cb.words.size());
            for (std::size_t k = 0; k < n; ++k)
                vectors(Eigen::Index(k), col) = {parse_double(tok[6 + 2 * k], line_no),
                                                 parse_double(tok[7 + 2 * k], line_no)};
            cb.words.push_back(w);
        }
        for (++line_no; std::getline(is, line); ++line_no)
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw codebook_parse_error("unexpected data after the last record", line_no);
        cb.vectors = std::move(vectors);
        return cb;
    }

} // namespace ldma
