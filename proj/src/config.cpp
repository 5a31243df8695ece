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

#include "ldma/config.hpp"
#include "ldma/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace ldma
{
    namespace
    {
        namespace pt = boost::property_tree;

        constexpr double deg = std::numbers::pi / 180.0;

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split_list(const std::string &s)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream is(s);
            while (std::getline(is, item, ','))
            {
                item = trim(item);
                if (!item.empty())
                    out.push_back(item);
            }
            return out;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        // Reads typed values and remembers which keys were consumed so unknown keys can be reported
        class Reader
        {
        public:
            explicit Reader(const pt::ptree &tree) : tree_(tree) {}

            bool has(const std::string &key) const { return bool(tree_.get_optional<std::string>(path(key))); }

            std::string text(const std::string &key, const std::string &fallback)
            {
                used_.insert(key);
                const auto v = tree_.get_optional<std::string>(path(key));
                return v ? trim(*v) : fallback;
            }

            double number(const std::string &key, double fallback)
            {
                const std::string t = text(key, "");
                if (t.empty())
                    return fallback;
                return to_double(key, t);
            }

            std::size_t count(const std::string &key, std::size_t fallback)
            {
                const std::string t = text(key, "");
                if (t.empty())
                    return fallback;
                if (t.find_first_not_of("0123456789") != std::string::npos)
                    throw config_error("Key '" + key + "' expects a non-negative integer, got '" + t + "'.");
                return std::stoull(t);
            }

            std::vector<double> numbers(const std::string &key, const std::vector<double> &fallback)
            {
                const std::string t = text(key, "");
                if (t.empty())
                    return fallback;
                std::vector<double> out;
                for (const auto &item : split_list(t))
                    out.push_back(to_double(key, item));
                return out;
            }

            void reject_unknown() const
            {
                for (const auto &section : tree_)
                {
                    if (section.second.empty() && !section.second.data().empty())
                        throw config_error("Key '" + section.first + "' must live inside a [section].");
                    for (const auto &kv : section.second)
                    {
                        const std::string key = section.first + "." + kv.first;
                        if (!used_.count(key))
                            throw config_error("Unknown configuration key '" + key + "'.");
                    }
                }
            }

        private:
            static pt::ptree::path_type path(const std::string &key) { return pt::ptree::path_type(key, '.'); }

            static double to_double(const std::string &key, const std::string &t)
            {
                std::size_t used = 0;
                double v = 0.0;
                try
                {
                    v = std::stod(t, &used);
                }
                catch (const std::exception &)
                {
                    used = 0;
                }
                if (used != t.size() || used == 0)
                    throw config_error("Key '" + key + "' expects a number, got '" + t + "'.");
                return v;
            }

            const pt::ptree &tree_;
            std::set<std::string> used_;
        };
    } // namespace

    std::string to_string(AnalogKind kind)
    {
        switch (kind)
        {
        case AnalogKind::ldma: return "ldma";
        case AnalogKind::sdma: return "sdma";
        case AnalogKind::uniform_radius: return "uniform";
        case AnalogKind::ldma_ideal: return "ldma_inf";
        case AnalogKind::sdma_ideal: return "sdma_inf";
        case AnalogKind::fully_digital: return "fd";
        }
        return "unknown";
    }

    std::string SchemeSpec::label() const
    {
        return to_string(analog) + "-" + (digital == DigitalKind::zf ? "zf" : "wmmse");
    }

    SchemeSpec parse_scheme(const std::string &text)
    {
        const std::string t = trim(text);
        const auto dash = t.rfind('-');
        if (dash == std::string::npos)
            throw config_error("Scheme '" + t + "' must look like <analog>-<digital>, e.g. ldma-zf.");
        const std::string a = t.substr(0, dash), d = t.substr(dash + 1);
        SchemeSpec s;
        if (a == "ldma")
            s.analog = AnalogKind::ldma;
        else if (a == "sdma")
            s.analog = AnalogKind::sdma;
        else if (a == "uniform")
            s.analog = AnalogKind::uniform_radius;
        else if (a == "ldma_inf")
            s.analog = AnalogKind::ldma_ideal;
        else if (a == "sdma_inf")
            s.analog = AnalogKind::sdma_ideal;
        else if (a == "fd")
            s.analog = AnalogKind::fully_digital;
        else
            throw config_error("Unknown analog stage '" + a + "' (ldma, sdma, uniform, ldma_inf, sdma_inf, fd).");
        if (d == "zf")
            s.digital = DigitalKind::zf;
        else if (d == "wmmse")
            s.digital = DigitalKind::wmmse;
        else
            throw config_error("Unknown digital stage '" + d + "' (zf, wmmse).");
        if (s.analog == AnalogKind::fully_digital && s.digital != DigitalKind::zf)
            throw config_error("The fully digital baseline supports zf only.");
        return s;
    }

    ArrayGeometry ScenarioConfig::geometry() const
    {
        const double lambda = wavelength_from_frequency(frequency_hz);
        return layout == Layout::ula ? ArrayGeometry::ula(n1, lambda, spacing)
                                     : ArrayGeometry::upa(n1, n2, lambda, spacing);
    }

    void ScenarioConfig::validate() const
    {
        if (!(frequency_hz > 0.0))
            throw config_error("array.frequency_ghz must be positive.");
        if (n1 == 0 || n2 == 0 || (layout == Layout::ula && n2 != 1))
            throw config_error("Array sizes must be positive and a ULA has n2 = 1.");
        if (!(spacing >= 0.0))
            throw config_error("array.spacing must be non-negative.");
        if (users == 0)
            throw config_error("users.count must be positive.");
        if (users > n1 * n2)
            throw config_error("users.count exceeds the number of antennas.");
        if (!(r_min > 0.0) || !(r_max >= r_min))
            throw config_error("Need 0 < users.r_min <= users.r_max.");
        if (!(theta_max >= theta_min) || !(phi_max >= phi_min))
            throw config_error("Angle ranges must satisfy min <= max.");
        if (!(scatter.r_min > 0.0) || !(scatter.r_max >= scatter.r_min) || !(scatter.theta_max >= scatter.theta_min) ||
            !(scatter.phi_max >= scatter.phi_min))
            throw config_error("Invalid scatterer region.");
        if (!(kappa >= 0.0))
            throw config_error("channel.kappa must be non-negative.");
        if (paths == 0 && kappa == 0.0)
            throw config_error("channel.paths = 0 with kappa = 0 leaves no channel.");
        if (snr_db.empty())
            throw config_error("link.snr_db must list at least one value.");
        if (!(noise_variance > 0.0) || !(estimation_noise >= 0.0))
            throw config_error("link.noise_variance must be positive and link.estimation_noise non-negative.");
        if (schemes.empty())
            throw config_error("schemes.list must name at least one scheme.");
        if (schemes.size() > streams_per_drop - noise_stream_base)
            throw config_error("schemes.list names more than " +
                               std::to_string(streams_per_drop - noise_stream_base) + " schemes.");
        if (!(delta > 0.0 && delta < 1.0))
            throw config_error("codebook.delta must lie in (0, 1).");
        if (!(rho_min >= 0.0))
            throw config_error("codebook.rho_min must be non-negative.");
        if (wmmse.max_iters == 0 || !(wmmse.tol > 0.0))
            throw config_error("wmmse.max_iters must be >= 1 and wmmse.tol > 0.");
        if (drops == 0)
            throw config_error("run.drops must be positive.");
        if (threads < 0)
            throw config_error("run.threads must be non-negative.");
    }

    ScenarioConfig parse_config(const std::string &text)
    {
        pt::ptree tree;
        try
        {
            std::istringstream is(text);
            pt::read_ini(is, tree);
        }
        catch (const pt::ini_parser_error &e)
        {
            throw config_error(std::string("Malformed configuration: ") + e.what());
        }

        Reader r(tree);
        ScenarioConfig c;
        c.name = r.text("meta.name", c.name);

        const std::string layout = r.text("array.layout", "ula");
        if (layout != "ula" && layout != "upa")
            throw config_error("array.layout must be ula or upa.");
        c.layout = layout == "ula" ? Layout::ula : Layout::upa;
        c.n1 = r.count("array.n1", c.n1);
        c.n2 = r.count("array.n2", c.layout == Layout::ula ? 1 : 16);
        c.frequency_hz = r.number("array.frequency_ghz", c.frequency_hz / 1e9) * 1e9;
        c.spacing = r.number("array.spacing", c.spacing);

        c.users = r.count("users.count", c.users);
        const std::string dist = r.text("users.distribution", "uniform");
        if (dist != "uniform" && dist != "linear")
            throw config_error("users.distribution must be uniform or linear.");
        c.distribution = dist == "uniform" ? UserDistribution::uniform : UserDistribution::linear;
        c.r_min = r.number("users.r_min", c.r_min);
        c.r_max = r.number("users.r_max", c.r_max);
        c.theta_min = r.number("users.theta_min_deg", c.theta_min / deg) * deg;
        c.theta_max = r.number("users.theta_max_deg", c.theta_max / deg) * deg;
        c.phi_min = r.number("users.phi_min_deg", c.phi_min / deg) * deg;
        c.phi_max = r.number("users.phi_max_deg", c.phi_max / deg) * deg;
        c.line_theta = r.number("users.line_theta_deg", c.line_theta / deg) * deg;
        c.line_phi = r.number("users.line_phi_deg", c.line_phi / deg) * deg;

        c.paths = r.count("channel.paths", c.paths);
        const std::string kappa = r.text("channel.kappa", "");
        c.kappa = kappa == "inf" ? INFINITY : r.number("channel.kappa", c.kappa);
        const std::string model = r.text("channel.model", "near");
        if (model != "near" && model != "far")
            throw config_error("channel.model must be near or far.");
        c.model = model == "near" ? ChannelModel::near_field : ChannelModel::far_field;
        c.scatter.r_min = r.number("channel.scatter_r_min", c.r_min);
        c.scatter.r_max = r.number("channel.scatter_r_max", c.r_max);
        c.scatter.theta_min = r.number("channel.scatter_theta_min_deg", c.theta_min / deg) * deg;
        c.scatter.theta_max = r.number("channel.scatter_theta_max_deg", c.theta_max / deg) * deg;
        c.scatter.phi_min = r.number("channel.scatter_phi_min_deg", c.phi_min / deg) * deg;
        c.scatter.phi_max = r.number("channel.scatter_phi_max_deg", c.phi_max / deg) * deg;

        c.snr_db = r.numbers("link.snr_db", c.snr_db);
        c.noise_variance = r.number("link.noise_variance", c.noise_variance);
        c.estimation_noise = r.number("link.estimation_noise", c.estimation_noise);

        const std::string schemes = r.text("schemes.list", "");
        if (!schemes.empty())
        {
            c.schemes.clear();
            for (const auto &s : split_list(schemes))
                c.schemes.push_back(parse_scheme(s));
        }

        c.delta = r.number("codebook.delta", c.delta);
        c.rho_min = r.number("codebook.rho_min", c.rho_min);
        c.uniform_rings = r.count("codebook.uniform_rings", c.uniform_rings);

        c.wmmse.max_iters = r.count("wmmse.max_iters", c.wmmse.max_iters);
        c.wmmse.tol = r.number("wmmse.tol", c.wmmse.tol);

        c.drops = r.count("run.drops", c.drops);
        const std::string seed = r.text("run.seed", "");
        if (!seed.empty())
        {
            if (seed.find_first_not_of("0123456789") != std::string::npos)
                throw config_error("run.seed expects a non-negative integer.");
            c.seed = std::stoull(seed);
        }
        c.threads = int(r.count("run.threads", 0));

        r.reject_unknown();
        c.validate();
        return c;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw config_error("Cannot open configuration file '" + path + "'.");
        std::ostringstream os;
        os << is.rdbuf();
        return parse_config(os.str());
    }

    std::string config_to_ini(const ScenarioConfig &c)
    {
        std::ostringstream os;
        auto angle = [](double rad) { return fmt(rad / deg); };
        os << "[meta]\nname = " << c.name << "\n\n";
        os << "[array]\nlayout = " << (c.layout == Layout::ula ? "ula" : "upa") << "\nn1 = " << c.n1
           << "\nn2 = " << c.n2 << "\nfrequency_ghz = " << fmt(c.frequency_hz / 1e9)
           << "\nspacing = " << fmt(c.spacing) << "\n\n";
        os << "[users]\ncount = " << c.users
           << "\ndistribution = " << (c.distribution == UserDistribution::uniform ? "uniform" : "linear")
           << "\nr_min = " << fmt(c.r_min) << "\nr_max = " << fmt(c.r_max) << "\ntheta_min_deg = " << angle(c.theta_min)
           << "\ntheta_max_deg = " << angle(c.theta_max) << "\nphi_min_deg = " << angle(c.phi_min)
           << "\nphi_max_deg = " << angle(c.phi_max) << "\nline_theta_deg = " << angle(c.line_theta)
           << "\nline_phi_deg = " << angle(c.line_phi) << "\n\n";
        os << "[channel]\npaths = " << c.paths << "\nkappa = " << (std::isinf(c.kappa) ? "inf" : fmt(c.kappa))
           << "\nmodel = " << (c.model == ChannelModel::near_field ? "near" : "far")
           << "\nscatter_r_min = " << fmt(c.scatter.r_min) << "\nscatter_r_max = " << fmt(c.scatter.r_max)
           << "\nscatter_theta_min_deg = " << angle(c.scatter.theta_min)
           << "\nscatter_theta_max_deg = " << angle(c.scatter.theta_max)
           << "\nscatter_phi_min_deg = " << angle(c.scatter.phi_min)
           << "\nscatter_phi_max_deg = " << angle(c.scatter.phi_max) << "\n\n";
        os << "[link]\nsnr_db = ";
        for (std::size_t i = 0; i < c.snr_db.size(); ++i)
            os << (i ? ", " : "") << fmt(c.snr_db[i]);
        os << "\nnoise_variance = " << fmt(c.noise_variance) << "\nestimation_noise = " << fmt(c.estimation_noise)
           << "\n\n";
        os << "[schemes]\nlist = ";
        for (std::size_t i = 0; i < c.schemes.size(); ++i)
            os << (i ? ", " : "") << c.schemes[i].label();
        os << "\n\n[codebook]\ndelta = " << fmt(c.delta) << "\nrho_min = " << fmt(c.rho_min)
           << "\nuniform_rings = " << c.uniform_rings << "\n\n";
        os << "[wmmse]\nmax_iters = " << c.wmmse.max_iters << "\ntol = " << fmt(c.wmmse.tol) << "\n\n";
        os << "[run]\ndrops = " << c.drops << "\nseed = " << c.seed << "\nthreads = " << c.threads << "\n";
        return os.str();
    }

} // namespace ldma
