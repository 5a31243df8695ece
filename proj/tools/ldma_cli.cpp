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
#include "ldma/experiment.hpp"
#include "ldma/metrics.hpp"
#include "ldma/recipes.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

namespace
{
    namespace fs = std::filesystem;
    constexpr double deg = std::numbers::pi / 180.0;

    std::ofstream open_csv(const std::string &dir, const std::string &name)
    {
        fs::create_directories(dir);
        std::ofstream os(fs::path(dir) / name);
        if (!os)
            throw std::runtime_error("Cannot write '" + (fs::path(dir) / name).string() + "'.");
        return os;
    }

    struct CodebookArgs
    {
        std::string layout = "ula";
        std::size_t n1 = 512, n2 = 1;
        double freq_ghz = 30.0;
        double delta = 0.55;
        double rho_min = 4.0;
        std::string kind = "near";
        std::size_t rings = 0;
        double r_max = 100.0;
        std::string file;
    };

    int codebook_build(const CodebookArgs &a)
    {
        using namespace ldma;
        if (a.layout != "ula" && a.layout != "upa")
            throw config_error("--layout must be ula or upa.");
        const double lambda = wavelength_from_frequency(a.freq_ghz * 1e9);
        const ArrayGeometry geom =
            a.layout == "ula" ? ArrayGeometry::ula(a.n1, lambda) : ArrayGeometry::upa(a.n1, a.n2, lambda);
        Codebook cb;
        if (a.kind == "near")
            cb = build_near_field_codebook(geom, a.delta, a.rho_min);
        else if (a.kind == "dft")
            cb = build_dft_codebook(geom);
        else if (a.kind == "uniform")
        {
            const std::size_t rings =
                a.rings > 0 ? a.rings : build_near_field_codebook(geom, a.delta, a.rho_min).ring_count - 1;
            cb = build_uniform_radius_codebook(geom, rings, a.rho_min, a.r_max);
        }
        else
            throw config_error("--kind must be near, dft or uniform.");
        export_codebook(cb, a.file);
        std::cout << "wrote " << a.file << ": " << to_string(cb.kind) << ", " << geom.describe() << ", "
                  << cb.angle_count() << " angles x " << cb.ring_count << " rings = " << cb.size() << " codewords"
                  << (cb.skipped_angles ? ", " + std::to_string(cb.skipped_angles) + " grid pairs skipped" : "")
                  << '\n';
        return 0;
    }

    int codebook_inspect(const std::string &file)
    {
        using namespace ldma;
        const Codebook cb = import_codebook(file);
        double worst_modulus = 0.0;
        const double expected = 1.0 / std::sqrt(double(cb.geom.size()));
        for (std::size_t i = 0; i < cb.size(); ++i)
            worst_modulus = std::max(worst_modulus, (cb.vector(i).cwiseAbs().array() - expected).abs().maxCoeff());
        std::cout << "kind: " << to_string(cb.kind) << "\ngeometry: " << cb.geom.describe() << "\ndelta: " << cb.delta
                  << "\nrho_min: " << cb.rho_min << "\nrings: " << cb.ring_count << "\nangles: " << cb.angle_count()
                  << "\nskipped grid pairs: " << cb.skipped_angles << "\ncodewords: " << cb.size()
                  << "\nmax |entry| deviation from 1/sqrt(N): " << worst_modulus << '\n';
        return 0;
    }

    struct CorrelateArgs
    {
        std::vector<std::size_t> n_list{64, 128, 256, 512, 1024, 2048, 4096};
        double r1 = 5.0, r2 = 15.0, phi_deg = 30.0, freq_ghz = 30.0;
        std::string out;
    };

    int correlate(const CorrelateArgs &a)
    {
        using namespace ldma;
        const double lambda = wavelength_from_frequency(a.freq_ghz * 1e9);
        const std::string dir = resolve_output_dir(a.out);
        auto os = open_csv(dir, "correlate.csv");
        os << "N,exact,approx\n";
        const Location l1{a.r1, std::numbers::pi / 2, a.phi_deg * deg}, l2{a.r2, std::numbers::pi / 2, a.phi_deg * deg};
        for (const std::size_t n : a.n_list)
        {
            const auto g = ArrayGeometry::ula(n, lambda);
            os << n << ',' << format_number(exact_correlation(ula_focusing(g, l1), ula_focusing(g, l2))) << ','
               << format_number(fresnel_correlation_ula(g, a.r1, a.r2, l1.phi)) << '\n';
        }
        std::cout << "wrote " << (fs::path(dir) / "correlate.csv").string() << '\n';
        return 0;
    }

    struct BoundArgs
    {
        std::size_t k_max = 8;
        std::size_t n = 512;
        double r_min = 4.0, r_max = 150.0, snr_db = 12.0, freq_ghz = 30.0, phi_deg = 0.0;
        std::string out;
    };

    int bound(const BoundArgs &a)
    {
        using namespace ldma;
        const auto geom = ArrayGeometry::ula(a.n, wavelength_from_frequency(a.freq_ghz * 1e9));
        const double P = std::pow(10.0, a.snr_db / 10.0);
        const std::string dir = resolve_output_dir(a.out);
        auto os = open_csv(dir, "bound.csv");
        os << "K,delta_abs,gamma,R_aub,reachable\n";
        for (std::size_t K = 1; K <= a.k_max; ++K)
        {
            const double tau = per_user_snr(P, geom.size(), 1.0, K, 1.0);
            LinearUsersBound b;
            try
            {
                b = linear_users_rate_bound(K, geom, std::numbers::pi / 2, a.phi_deg * deg, a.r_min, a.r_max, tau);
            }
            catch (const std::invalid_argument &e)
            {
                // neighbours too correlated for the tridiagonal model
                std::cerr << "warning: K = " << K << ": " << e.what() << '\n';
                os << K << ",nan,,nan,nan\n";
                continue;
            }
            os << K << ',' << format_number(b.delta_abs) << ',';
            for (std::size_t k = 0; k < b.gamma.size(); ++k)
                os << (k ? ";" : "") << format_number(b.gamma[k]);
            os << ',' << format_number(b.rate) << ',' << format_number(b.reachable) << '\n';
        }
        std::cout << "wrote " << (fs::path(dir) / "bound.csv").string() << '\n';
        return 0;
    }

    struct RunArgs
    {
        std::string config;
        std::string out;
        std::uint64_t seed = 0;
        std::size_t drops = 0;
        int threads = 0;
        std::string recipe;
    };

    int simulate(const RunArgs &a, const CLI::App &cmd)
    {
        using namespace ldma;
        if (a.config.empty())
            throw config_error("simulate needs --config <path>.");
        ScenarioConfig cfg = load_config(a.config);
        if (cmd.count("--seed"))
            cfg.seed = a.seed;
        if (cmd.count("--drops"))
            cfg.drops = a.drops;
        if (cmd.count("--threads"))
            cfg.threads = a.threads;
        cfg.validate();
        if (cfg.r_min < fresnel_boundary(cfg.geometry()))
            std::cerr << "warning: users.r_min = " << cfg.r_min << " m is inside the Fresnel boundary ("
                      << fresnel_boundary(cfg.geometry()) << " m); the second-order phase model loses accuracy there\n";
        const ExperimentResult res = run_experiment(cfg);
        const std::string dir = resolve_output_dir(a.out);
        write_experiment(res, dir, cfg.name);
        for (std::size_t i = 0; i < cfg.snr_db.size(); ++i)
            for (std::size_t j = 0; j < cfg.schemes.size(); ++j)
                std::cout << "snr " << cfg.snr_db[i] << " dB  " << cfg.schemes[j].label() << "  "
                          << format_number(res.mean[i][j]) << " bit/s/Hz\n";
        std::cout << "wrote " << (fs::path(dir) / (cfg.name + "_summary.csv")).string() << '\n';
        return 0;
    }

    int sweep(const RunArgs &a, const CLI::App &cmd)
    {
        using namespace ldma;
        RecipeOptions opts;
        opts.out_dir = a.out;
        if (cmd.count("--seed"))
            opts.seed = a.seed;
        if (cmd.count("--drops"))
            opts.drops = a.drops;
        opts.threads = a.threads;
        run_recipe(a.recipe, opts);
        std::cout << "wrote " << (fs::path(resolve_output_dir(a.out)) / (a.recipe + ".csv")).string() << '\n';
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ldma: near-field beam focusing and location division multiple access"};
    app.require_subcommand(1);

    auto *cb = app.add_subcommand("codebook", "Build or inspect beam codebooks");
    cb->require_subcommand(1);
    CodebookArgs cba;
    auto *build = cb->add_subcommand("build", "Build a codebook and export it");
    build->add_option("--layout", cba.layout, "ula or upa")->capture_default_str();
    build->add_option("--n1", cba.n1, "Antennas along the first axis (ULA size)")->capture_default_str();
    build->add_option("--n2", cba.n2, "Antennas along the second axis (UPA)")->capture_default_str();
    build->add_option("--freq-ghz", cba.freq_ghz, "Carrier frequency")->capture_default_str();
    build->add_option("--delta", cba.delta, "Adjacent-ring correlation threshold")->capture_default_str();
    build->add_option("--rho-min", cba.rho_min, "Smallest ring radius [m]")->capture_default_str();
    build->add_option("--kind", cba.kind, "near, dft or uniform")->capture_default_str();
    build->add_option("--rings", cba.rings, "Ring count for the uniform kind (0: match near)")->capture_default_str();
    build->add_option("--r-max", cba.r_max, "Largest radius for the uniform kind [m]")->capture_default_str();
    build->add_option("--file", cba.file, "Output codebook file")->required();
    std::string inspect_file;
    auto *inspect = cb->add_subcommand("inspect", "Summarise a codebook file");
    inspect->add_option("file", inspect_file, "Codebook file")->required();

    CorrelateArgs ca;
    auto *corr = app.add_subcommand("correlate", "ULA distance-correlation sweep over N");
    corr->add_option("--n-list", ca.n_list, "Array sizes")->delimiter(',');
    corr->add_option("--r1", ca.r1, "First distance [m]")->capture_default_str();
    corr->add_option("--r2", ca.r2, "Second distance [m]")->capture_default_str();
    corr->add_option("--phi-deg", ca.phi_deg, "Common angle [deg]")->capture_default_str();
    corr->add_option("--freq-ghz", ca.freq_ghz, "Carrier frequency")->capture_default_str();
    corr->add_option("--out", ca.out, "Output directory");

    BoundArgs ba;
    auto *bnd = app.add_subcommand("bound", "Rate bound for linearly placed users");
    bnd->add_option("--k-max", ba.k_max, "Largest user count")->capture_default_str();
    bnd->add_option("--n", ba.n, "ULA size")->capture_default_str();
    bnd->add_option("--r-min", ba.r_min, "Nearest distance [m]")->capture_default_str();
    bnd->add_option("--r-max", ba.r_max, "Farthest distance [m]")->capture_default_str();
    bnd->add_option("--snr-db", ba.snr_db, "SNR P/sigma^2 [dB]")->capture_default_str();
    bnd->add_option("--phi-deg", ba.phi_deg, "Line angle [deg]")->capture_default_str();
    bnd->add_option("--freq-ghz", ba.freq_ghz, "Carrier frequency")->capture_default_str();
    bnd->add_option("--out", ba.out, "Output directory");

    RunArgs ra;
    auto add_run_flags = [&ra](CLI::App *cmd)
    {
        cmd->add_option("--out", ra.out, "Output directory (default $LDMA_OUT_DIR or .)");
        cmd->add_option("--seed", ra.seed, "Master seed");
        cmd->add_option("--drops", ra.drops, "Monte-Carlo drops")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", ra.threads, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
    };
    auto *sim = app.add_subcommand("simulate", "Run an experiment from a configuration file");
    sim->add_option("--config", ra.config, "Configuration file")->required();
    add_run_flags(sim);
    auto *swp = app.add_subcommand("sweep", "Regenerate the data behind one figure");
    swp->add_option("figure", ra.recipe, "Recipe id (fig4 ... fig12b)")->required();
    add_run_flags(swp);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try
    {
        if (*build)
            return codebook_build(cba);
        if (*inspect)
            return codebook_inspect(inspect_file);
        if (*corr)
            return correlate(ca);
        if (*bnd)
            return bound(ba);
        if (*sim)
            return simulate(ra, *sim);
        if (*swp)
            return sweep(ra, *swp);
    }
    catch (const ldma::numeric_error &e)
    {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
