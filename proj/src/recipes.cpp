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

#include "ldma/recipes.hpp"
#include "ldma/correlation.hpp"
#include "ldma/kernels.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

namespace ldma
{
    namespace
    {
        namespace fs = std::filesystem;
        using nlohmann::json;

        constexpr double pi = std::numbers::pi;

        struct Table
        {
            std::vector<std::string> columns;
            std::vector<std::vector<double>> rows;
        };

        void write_table(const Table &t, const fs::path &path)
        {
            std::ofstream os(path);
            if (!os)
                throw std::runtime_error("Cannot write '" + path.string() + "'.");
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                os << (i ? "," : "") << t.columns[i];
            os << '\n';
            for (const auto &row : t.rows)
            {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? "," : "") << (std::isnan(row[i]) ? std::string() : format_number(row[i]));
                os << '\n';
            }
        }

        void write_meta(const json &meta, const fs::path &path)
        {
            std::ofstream os(path);
            if (!os)
                throw std::runtime_error("Cannot write '" + path.string() + "'.");
            os << meta.dump(2) << '\n';
        }

        ScenarioConfig with_options(ScenarioConfig cfg, const RecipeOptions &opts)
        {
            if (opts.seed)
                cfg.seed = *opts.seed;
            if (opts.drops)
                cfg.drops = *opts.drops;
            cfg.threads = opts.threads;
            return cfg;
        }

        std::vector<SchemeSpec> schemes(std::initializer_list<const char *> names)
        {
            std::vector<SchemeSpec> out;
            for (const char *n : names)
                out.push_back(parse_scheme(n));
            return out;
        }

        ScenarioConfig ula_uniform()
        {
            ScenarioConfig c;
            c.layout = Layout::ula;
            c.n1 = 512;
            c.n2 = 1;
            c.users = 10;
            c.distribution = UserDistribution::uniform;
            c.r_min = 4.0;
            c.r_max = 100.0;
            c.theta_min = c.theta_max = pi / 2;
            c.phi_min = -pi / 3;
            c.phi_max = pi / 3;
            c.paths = 5;
            c.kappa = 8.0;
            c.scatter = {c.r_min, c.r_max, c.theta_min, c.theta_max, c.phi_min, c.phi_max};
            c.snr_db = {0, 5, 10, 15, 20};
            c.schemes = schemes({"ldma-zf", "sdma-zf", "ldma-wmmse", "sdma-wmmse"});
            c.drops = 100;
            return c;
        }

        ScenarioConfig upa_base(bool linear)
        {
            ScenarioConfig c;
            c.layout = Layout::upa;
            c.n1 = 256;
            c.n2 = 16;
            c.users = 4;
            c.distribution = linear ? UserDistribution::linear : UserDistribution::uniform;
            c.r_min = 4.0;
            c.r_max = 50.0;
            c.theta_min = pi / 3;
            c.theta_max = 2 * pi / 3;
            c.phi_min = -pi / 6;
            c.phi_max = pi / 6;
            c.line_theta = pi / 2;
            c.line_phi = 0.0;
            c.paths = 5;
            c.kappa = 8.0;
            c.scatter = {c.r_min, c.r_max, c.theta_min, c.theta_max, c.phi_min, c.phi_max};
            c.snr_db = {0, 5, 10, 15, 20};
            c.delta = 0.55;
            c.schemes = schemes({"ldma-zf", "sdma-zf", "uniform-zf", "ldma-wmmse", "sdma-wmmse"});
            c.drops = 4;
            return c;
        }

        // One row per SNR, one column per scheme mean
        Table snr_table(const ExperimentResult &res)
        {
            Table t;
            t.columns.push_back("snr_db");
            for (const auto &s : res.config.schemes)
                t.columns.push_back(s.label());
            for (std::size_t i = 0; i < res.config.snr_db.size(); ++i)
            {
                std::vector<double> row{res.config.snr_db[i]};
                row.insert(row.end(), res.mean[i].begin(), res.mean[i].end());
                t.rows.push_back(row);
            }
            return t;
        }

        json scenario_meta(const std::string &id, const std::string &caption, const ScenarioConfig &cfg)
        {
            json meta;
            meta["recipe"] = id;
            meta["caption"] = caption;
            meta["snr_semantics"] = "SNR = P / sigma^2 with p_k = P / K_served";
            meta["config"] = config_to_ini(cfg);
            return meta;
        }

        void run_snr_recipe(const std::string &id, const std::string &caption, const ScenarioConfig &base,
                            const RecipeOptions &opts, const fs::path &dir)
        {
            const ScenarioConfig cfg = with_options(base, opts);
            const ExperimentResult res = run_experiment(cfg);
            const Table t = snr_table(res);
            write_table(t, dir / (id + ".csv"));
            json meta = scenario_meta(id, caption, cfg);
            meta["columns"] = t.columns;
            meta["codebook_sizes"] = {{"near_field", res.near_field_codebook_size},
                                      {"far_field", res.far_field_codebook_size},
                                      {"uniform_radius", res.uniform_codebook_size}};
            write_meta(meta, dir / (id + ".json"));
        }

        // Sweep one parameter; every point reuses the seed so drops stay paired across points
        void run_param_recipe(const std::string &id, const std::string &caption, const std::string &axis,
                              const std::vector<double> &values,
                              const std::function<void(ScenarioConfig &, double)> &apply, ScenarioConfig base,
                              const RecipeOptions &opts, const fs::path &dir)
        {
            base = with_options(base, opts);
            Table t;
            t.columns.push_back(axis);
            for (const auto &s : base.schemes)
                t.columns.push_back(s.label());
            for (const double v : values)
            {
                ScenarioConfig cfg = base;
                apply(cfg, v);
                const ExperimentResult res = run_experiment(cfg);
                std::vector<double> row{v};
                row.insert(row.end(), res.mean[0].begin(), res.mean[0].end());
                t.rows.push_back(row);
            }
            write_table(t, dir / (id + ".csv"));
            json meta = scenario_meta(id, caption, base);
            meta["columns"] = t.columns;
            meta["axis"] = axis;
            meta["values"] = values;
            write_meta(meta, dir / (id + ".json"));
        }

        void fig4(const RecipeOptions &, const fs::path &dir)
        {
            const double lambda = wavelength_from_frequency(30e9);
            const Location a{5.0, pi / 2, pi / 6}, b{15.0, pi / 2, pi / 6};
            Table t{{"N", "exact", "fresnel_approx"}, {}};
            for (std::size_t n = 64; n <= 4096; n *= 2)
            {
                const auto g = ArrayGeometry::ula(n, lambda);
                t.rows.push_back({double(n), exact_correlation(ula_focusing(g, a), ula_focusing(g, b)),
                                  fresnel_correlation_ula(g, a.r, b.r, a.phi)});
            }
            write_table(t, dir / "fig4.csv");
            json meta;
            meta["recipe"] = "fig4";
            meta["caption"] = "Correlation with increasing antennas for ULA systems";
            meta["setup"] = "30 GHz, d = lambda/2, phi = pi/6, r = 5 m vs 15 m";
            meta["columns"] = t.columns;
            write_meta(meta, dir / "fig4.json");
        }

        void fig5(const RecipeOptions &, const fs::path &dir)
        {
            const auto geom = ArrayGeometry::upa(64, 64, wavelength_from_frequency(30e9));
            const double theta = pi / 3, phi = pi / 6, delta = 0.55, rho_min = 4.0;

            // |Gbar(beta0)| and its decreasing envelope
            Table curve{{"beta0", "gbar_abs", "envelope"}, {}};
            const std::size_t samples = 2000;
            const double beta_max = 0.1;
            std::vector<double> vals(samples + 1);
            for (std::size_t i = 0; i <= samples; ++i)
                vals[i] = std::abs(gbar(geom, beta_max * double(i) / double(samples), theta, phi));
            std::vector<double> env(vals);
            for (std::size_t i = samples; i-- > 0;)
                env[i] = std::max(env[i], env[i + 1]);
            for (std::size_t i = 0; i <= samples; ++i)
                curve.rows.push_back({beta_max * double(i) / double(samples), vals[i], env[i]});
            write_table(curve, dir / "fig5.csv");

            const Codebook cb = build_spherical_codebook(geom, delta, rho_min);
            Table pts{{"ring", "n1", "n2", "r", "theta", "phi", "x", "y", "z"}, {}};
            for (const auto &w : cb.words)
            {
                if (w.ring == 0)
                    continue;
                const double r = w.focus.r, st = std::sin(w.focus.theta);
                pts.rows.push_back({double(w.ring), double(w.n1), double(w.n2), r, w.focus.theta, w.focus.phi,
                                    r * st * std::cos(w.focus.phi), r * st * std::sin(w.focus.phi),
                                    r * std::cos(w.focus.theta)});
            }
            write_table(pts, dir / "fig5_points.csv");

            json meta;
            meta["recipe"] = "fig5";
            meta["caption"] = "Decreasing envelope of the UPA distance correlation and the codebook sampling points";
            meta["setup"] = "64x64 UPA, 30 GHz, theta = pi/3, phi = pi/6, delta = 0.55, rho_min = 4 m";
            meta["beta_delta"] = beta_delta_search(delta, theta, phi, geom);
            meta["columns"] = curve.columns;
            meta["points_file"] = "fig5_points.csv";
            meta["points_columns"] = pts.columns;
            meta["codebook_size"] = cb.size();
            meta["rings"] = cb.ring_count;
            write_meta(meta, dir / "fig5.json");
        }

        void fig6(const RecipeOptions &opts, const fs::path &dir)
        {
            run_snr_recipe("fig6", "LDMA vs far-field multiple access, ULA, linear distribution",
                           recipe_base_config("fig6"), opts, dir);
        }

        void fig7(const RecipeOptions &opts, const fs::path &dir)
        {
            LinearComparisonSetup setup;
            if (opts.seed)
                setup.seed = *opts.seed;
            if (opts.drops)
                setup.drops = *opts.drops;
            setup.threads = opts.threads;
            std::vector<std::size_t> ks;
            for (std::size_t k = 1; k <= 14; ++k)
                ks.push_back(k);
            const auto rows = linear_comparison(setup, ks);
            Table t{{"K", "aub", "reachable", "exhaustive", "random_linear", "sdma_far", "delta_abs"}, {}};
            for (const auto &r : rows)
                t.rows.push_back({double(r.K), r.bound, r.reachable, r.exhaustive, r.random_linear, r.far_field,
                                  r.delta_abs});
            write_table(t, dir / "fig7.csv");
            json meta;
            meta["recipe"] = "fig7";
            meta["caption"] = "Spectrum efficiency of linearly placed users under different placement assumptions";
            meta["setup"] = "512-element ULA, 30 GHz, phi = 0, r in [4, 150] m, SNR 12 dB, single LoS path, "
                            "codebook-free analog stage";
            meta["columns"] = t.columns;
            meta["curves"] = {{"aub", "bound with equalised adjacent correlation, non-adjacent interference neglected"},
                              {"reachable", "exact ZF rate at the same placement"},
                              {"exhaustive", "best placement over a 200-point grid uniform in 1/r (K <= 4)"},
                              {"random_linear", "mean over random radii"},
                              {"sdma_far", "far-field steering; one user served"}};
            meta["exhaustive_grid_points"] = setup.grid_points;
            meta["drops"] = setup.drops;
            meta["seed"] = setup.seed;
            write_meta(meta, dir / "fig7.json");
        }

        void fig8(const RecipeOptions &opts, const fs::path &dir)
        {
            run_snr_recipe("fig8", "LDMA vs SDMA, ULA, uniform distribution", recipe_base_config("fig8"), opts, dir);
        }

        void fig9(const RecipeOptions &opts, const fs::path &dir)
        {
            run_param_recipe(
                "fig9", "LDMA vs SDMA for different numbers of NLoS paths", "paths", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                [](ScenarioConfig &c, double v) { c.paths = std::size_t(v); }, recipe_base_config("fig9"), opts, dir);
        }

        void fig10(const RecipeOptions &opts, const fs::path &dir)
        {
            run_param_recipe(
                "fig10", "LDMA vs SDMA for different Rician factors", "kappa", {0, 2, 4, 6, 8, 10, 12, 14, 16},
                [](ScenarioConfig &c, double v) { c.kappa = v; }, recipe_base_config("fig10"), opts, dir);
        }

        void fig11(const RecipeOptions &opts, const fs::path &dir)
        {
            run_param_recipe(
                "fig11", "LDMA vs SDMA for different numbers of antennas", "N", {64, 128, 256, 512},
                [](ScenarioConfig &c, double v) { c.n1 = std::size_t(v); }, recipe_base_config("fig11"), opts, dir);
        }

        void fig12a(const RecipeOptions &opts, const fs::path &dir)
        {
            run_snr_recipe("fig12a", "LDMA vs SDMA, UPA, linear distribution", recipe_base_config("fig12a"), opts,
                           dir);
        }

        void fig12b(const RecipeOptions &opts, const fs::path &dir)
        {
            run_snr_recipe("fig12b", "LDMA vs SDMA, UPA, uniform distribution", recipe_base_config("fig12b"), opts,
                           dir);
        }

        using Runner = void (*)(const RecipeOptions &, const fs::path &);
        const std::map<std::string, Runner> &runners()
        {
            static const std::map<std::string, Runner> m{{"fig4", fig4},   {"fig5", fig5},     {"fig6", fig6},
                                                         {"fig7", fig7},   {"fig8", fig8},     {"fig9", fig9},
                                                         {"fig10", fig10}, {"fig11", fig11},   {"fig12a", fig12a},
                                                         {"fig12b", fig12b}};
            return m;
        }

        std::string id_list()
        {
            std::string s;
            for (const auto &id : recipe_ids())
                s += (s.empty() ? "" : ", ") + id;
            return s;
        }
    } // namespace

    std::vector<std::string> recipe_ids()
    {
        return {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12a", "fig12b"};
    }

    ScenarioConfig recipe_base_config(const std::string &id)
    {
        ScenarioConfig c;
        if (id == "fig6")
        {
            c = ula_uniform();
            c.users = 4;
            c.distribution = UserDistribution::linear;
            c.line_theta = pi / 2;
            c.line_phi = 0.0;
            c.schemes = schemes({"ldma-zf", "sdma-zf", "ldma-wmmse", "sdma-wmmse", "fd-zf"});
            c.drops = 50;
        }
        else if (id == "fig8")
            c = ula_uniform();
        else if (id == "fig9" || id == "fig10" || id == "fig11")
        {
            c = ula_uniform();
            c.snr_db = {20.0};
            c.drops = 20;
        }
        else if (id == "fig12a")
            c = upa_base(true);
        else if (id == "fig12b")
            c = upa_base(false);
        else
            throw config_error("Recipe '" + id + "' has no scenario configuration; simulation recipes are fig6, "
                               "fig8, fig9, fig10, fig11, fig12a, fig12b.");
        c.name = id;
        return c;
    }

    std::vector<LinearComparisonRow> linear_comparison(const LinearComparisonSetup &setup,
                                                       const std::vector<std::size_t> &user_counts)
    {
        const auto geom = ArrayGeometry::ula(setup.n, wavelength_from_frequency(setup.frequency_hz));
        const double P = std::pow(10.0, setup.snr_db / 10.0);

        // Candidate positions for the exhaustive search, uniform in 1/r
        ComplexMatrix gram;
        {
            ComplexMatrix B(Eigen::Index(geom.size()), Eigen::Index(setup.grid_points));
            const double u_near = 1.0 / setup.r_min, u_far = 1.0 / setup.r_max;
            for (std::size_t i = 0; i < setup.grid_points; ++i)
            {
                const double u = u_near + (u_far - u_near) * double(i) / double(setup.grid_points - 1);
                B.col(Eigen::Index(i)) = ula_focusing(geom, {1.0 / u, pi / 2, 0.0});
            }
            gram = B.adjoint() * B;
        }

        std::vector<LinearComparisonRow> rows;
        for (const std::size_t K : user_counts)
        {
            LinearComparisonRow row;
            row.K = K;
            const double tau = per_user_snr(P, geom.size(), 1.0, K, 1.0);
            const auto bound = linear_users_rate_bound(K, geom, pi / 2, 0.0, setup.r_min, setup.r_max, tau);
            row.bound = bound.rate;
            row.reachable = bound.reachable;
            row.delta_abs = bound.delta_abs;
            if (K <= setup.exhaustive_max_k)
                row.exhaustive = exhaustive_placement_parallel(gram, K, tau).best_rate;

            ScenarioConfig cfg;
            cfg.name = "linear_comparison";
            cfg.layout = Layout::ula;
            cfg.n1 = setup.n;
            cfg.n2 = 1;
            cfg.frequency_hz = setup.frequency_hz;
            cfg.users = K;
            cfg.distribution = UserDistribution::linear;
            cfg.r_min = setup.r_min;
            cfg.r_max = setup.r_max;
            cfg.line_theta = pi / 2;
            cfg.line_phi = 0.0;
            cfg.paths = 0;
            cfg.kappa = INFINITY;
            cfg.snr_db = {setup.snr_db};
            cfg.schemes = schemes({"ldma_inf-zf", "sdma_inf-zf"});
            cfg.drops = setup.drops;
            cfg.seed = setup.seed;
            cfg.threads = setup.threads;
            const ExperimentResult res = run_experiment(cfg);
            row.random_linear = res.mean[0][0];
            row.far_field = res.mean[0][1];
            rows.push_back(row);
        }
        return rows;
    }

    void run_recipe(const std::string &id, const RecipeOptions &opts)
    {
        const auto it = runners().find(id);
        if (it == runners().end())
            throw config_error("Unknown recipe '" + id + "'. Valid recipes: " + id_list() + ".");
        const fs::path dir = resolve_output_dir(opts.out_dir);
        fs::create_directories(dir);
        it->second(opts, dir);
    }

} // namespace ldma
