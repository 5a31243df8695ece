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

#include "doctest.h"

#include "ldma/experiment.hpp"
#include "ldma/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef LDMA_CLI_PATH
#define LDMA_CLI_PATH "ldma"
#endif

using namespace ldma;
namespace fs = std::filesystem;

namespace
{
    fs::path scratch(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / "ldma_unit" / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    }

    int run_cli(const std::string &args)
    {
        const std::string cmd = std::string("\"") + LDMA_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    ScenarioConfig small_config()
    {
        ScenarioConfig c;
        c.name = "small";
        c.n1 = 64;
        c.users = 4;
        c.r_max = 40.0;
        c.paths = 2;
        c.snr_db = {0.0, 20.0};
        c.drops = 4;
        c.seed = 5;
        return c;
    }
} // namespace

TEST_SUITE("harness")
{
    TEST_CASE("configuration parsing")
    {
        const ScenarioConfig d = parse_config("");
        CHECK(d.n1 == 512);
        CHECK(d.frequency_hz == 30e9);
        CHECK(d.users == 10);
        CHECK(d.paths == 5);
        CHECK(d.kappa == 8.0);
        CHECK(d.r_min == 4.0);
        CHECK(d.r_max == 100.0);

        const ScenarioConfig c = parse_config("[array]\nlayout = upa\nn1 = 32\nn2 = 8\n[users]\ncount = 3\n"
                                              "distribution = linear\nline_phi_deg = 30\n[channel]\nkappa = inf\n"
                                              "paths = 0\n[link]\nsnr_db = -5, 7.5\n[schemes]\n"
                                              "list = ldma-wmmse, sdma_inf-zf, fd-zf\n");
        CHECK(c.layout == Layout::upa);
        CHECK(c.geometry().size() == 256);
        CHECK(c.distribution == UserDistribution::linear);
        CHECK(c.line_phi == doctest::Approx(M_PI / 6));
        CHECK(std::isinf(c.kappa));
        CHECK(c.snr_db == std::vector<double>{-5.0, 7.5});
        REQUIRE(c.schemes.size() == 3);
        CHECK(c.schemes[0].label() == "ldma-wmmse");
        CHECK(c.schemes[1].analog == AnalogKind::sdma_ideal);
        CHECK(c.schemes[2].analog == AnalogKind::fully_digital);

        const ScenarioConfig back = parse_config(config_to_ini(c));
        CHECK(config_to_ini(back) == config_to_ini(c));
    }

    TEST_CASE("configuration errors")
    {
        CHECK_THROWS_AS(parse_config("[array]\nnn1 = 5\n"), config_error);
        CHECK_THROWS_AS(parse_config("[arrray]\nn1 = 5\n"), config_error);
        CHECK_THROWS_AS(parse_config("[array]\nlayout = hexagonal\n"), config_error);
        CHECK_THROWS_AS(parse_config("[array]\nn1 = many\n"), config_error);
        CHECK_THROWS_AS(parse_config("[users]\nr_min = 50\nr_max = 10\n"), config_error);
        CHECK_THROWS_AS(parse_config("[schemes]\nlist = ldma-mmse\n"), config_error);
        CHECK_THROWS_AS(parse_config("[schemes]\nlist = fd-wmmse\n"), config_error);
        CHECK_THROWS_AS(parse_config("[run]\ndrops = 0\n"), config_error);
        CHECK_THROWS_AS(load_config("/nonexistent/missing.ini"), config_error);
        std::string many = "[schemes]\nlist = ldma-zf";
        for (int i = 0; i < 14; ++i)
            many += ", sdma-zf";
        CHECK_THROWS_AS(parse_config(many + "\n"), config_error);
    }

    TEST_CASE("scenario generation")
    {
        ScenarioConfig c = small_config();
        c.distribution = UserDistribution::linear;
        c.line_phi = 0.25;
        const Scenario lin = generate_scenario(c, 3);
        for (const auto &u : lin.users)
        {
            CHECK(u.phi == 0.25);
            CHECK(u.theta == c.line_theta);
        }

        ScenarioConfig u = small_config();
        u.n1 = 16;
        u.users = 16;
        u.paths = 0;
        u.kappa = INFINITY;
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t drop = 0; drop < 625; ++drop)
            for (const auto &loc : generate_scenario(u, drop).users)
            {
                sum += loc.r;
                ++n;
                CHECK(loc.r >= u.r_min);
                CHECK(loc.r <= u.r_max);
                CHECK(loc.phi >= u.phi_min);
                CHECK(loc.phi <= u.phi_max);
            }
        CHECK(n == 10000);
        CHECK(sum / double(n) == doctest::Approx(0.5 * (u.r_min + u.r_max)).epsilon(0.02));

        const Scenario a = generate_scenario(c, 7), b = generate_scenario(c, 7);
        for (std::size_t k = 0; k < a.users.size(); ++k)
            CHECK(a.channels[k].h == b.channels[k].h);

        // the scheme list does not touch the channel streams
        ScenarioConfig other = small_config();
        other.schemes = {parse_scheme("sdma-wmmse")};
        const Scenario x = generate_scenario(small_config(), 2), y = generate_scenario(other, 2);
        for (std::size_t k = 0; k < x.users.size(); ++k)
            CHECK(x.channels[k].h == y.channels[k].h);
    }

    TEST_CASE("single user, single path, ideal focusing")
    {
        ScenarioConfig c = small_config();
        c.users = 1;
        c.paths = 0;
        c.kappa = INFINITY;
        c.schemes = {parse_scheme("ldma_inf-zf"), parse_scheme("ldma_inf-wmmse"), parse_scheme("fd-zf")};
        c.snr_db = {-3.0, 10.0, 25.0};
        const ExperimentResult r = run_experiment(c);
        for (std::size_t i = 0; i < c.snr_db.size(); ++i)
        {
            const double expect = std::log2(1.0 + std::pow(10.0, c.snr_db[i] / 10.0) * 64.0);
            for (std::size_t j = 0; j < c.schemes.size(); ++j)
                CHECK(r.mean[i][j] == doctest::Approx(expect).epsilon(1e-6));
        }
    }

    TEST_CASE("experiment orchestration")
    {
        ScenarioConfig c = small_config();
        c.schemes = {parse_scheme("ldma-zf"), parse_scheme("sdma-zf"), parse_scheme("fd-zf"), parse_scheme("uniform-zf"),
                     parse_scheme("ldma-wmmse")};
        c.estimation_noise = 0.01;
        c.threads = 1;
        const ExperimentResult one = run_experiment(c);
        c.threads = 3;
        const ExperimentResult three = run_experiment(c);
        REQUIRE(one.drops.size() == c.drops);
        for (std::size_t d = 0; d < c.drops; ++d)
        {
            CHECK(one.drops[d].drop == d);
            for (std::size_t i = 0; i < c.snr_db.size(); ++i)
                for (std::size_t j = 0; j < c.schemes.size(); ++j)
                    CHECK(one.drops[d].outcomes[i][j].sum_rate == three.drops[d].outcomes[i][j].sum_rate);
        }

        // mean and sample standard deviation across drops
        for (std::size_t j = 0; j < c.schemes.size(); ++j)
        {
            double s = 0.0, s2 = 0.0;
            for (const auto &d : one.drops)
                s += d.outcomes[1][j].sum_rate;
            const double mean = s / double(c.drops);
            for (const auto &d : one.drops)
                s2 += std::pow(d.outcomes[1][j].sum_rate - mean, 2);
            CHECK(one.mean[1][j] == doctest::Approx(mean).epsilon(1e-12));
            CHECK(one.stddev[1][j] == doctest::Approx(std::sqrt(s2 / double(c.drops - 1))).epsilon(1e-12));
        }

        // fully digital ZF with perfect CSI beats hybrid ZF at high SNR, drop by drop
        c.estimation_noise = 0.0;
        const ExperimentResult clean = run_experiment(c);
        for (const auto &d : clean.drops)
            CHECK(d.outcomes[1][2].sum_rate >= d.outcomes[1][0].sum_rate);
    }

    TEST_CASE("result files")
    {
        ScenarioConfig c = small_config();
        c.drops = 2;
        const ExperimentResult r = run_experiment(c);
        const fs::path dir = scratch("files");
        write_experiment(r, dir.string(), "run");
        const std::string summary = slurp(dir / "run_summary.csv");
        CHECK(summary.rfind("snr_db,scheme,mean_sum_rate,std_sum_rate,drops\n", 0) == 0);
        CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 2 * 2);
        const std::string drops = slurp(dir / "run_drops.csv");
        CHECK(drops.rfind("drop,snr_db,scheme,sum_rate,served,user_rates\n", 0) == 0);
        CHECK(std::count(drops.begin(), drops.end(), '\n') == 1 + 2 * 2 * 2);
        CHECK(fs::exists(dir / "run.json"));
        CHECK(format_number(0.1) == "0.1");
        CHECK(format_number(1.0 / 3.0) == "0.333333333333");

        setenv("LDMA_OUT_DIR", "/tmp/ldma_env_dir", 1);
        CHECK(resolve_output_dir("") == "/tmp/ldma_env_dir");
        CHECK(resolve_output_dir("explicit") == "explicit");
        unsetenv("LDMA_OUT_DIR");
        CHECK(resolve_output_dir("") == ".");
    }

    TEST_CASE("figure recipes")
    {
        CHECK(recipe_ids().size() == 10);
        try
        {
            run_recipe("fig13", {});
            FAIL("unknown id accepted");
        }
        catch (const config_error &e)
        {
            CHECK(std::string(e.what()).find("fig12b") != std::string::npos);
        }
        const fs::path dir = scratch("recipes");
        RecipeOptions o;
        o.out_dir = dir.string();
        run_recipe("fig4", o);
        const std::string csv = slurp(dir / "fig4.csv");
        CHECK(csv.rfind("N,exact,fresnel_approx\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
        CHECK(fs::exists(dir / "fig4.json"));
        for (const auto &id : {"fig6", "fig8", "fig9", "fig10", "fig11", "fig12a", "fig12b"})
            CHECK_NOTHROW(recipe_base_config(id).validate());
    }

    TEST_CASE("command line")
    {
        const fs::path dir = scratch("cli");
        CHECK(run_cli("simulate --config " + (dir / "missing.toml").string()) == 1);
        CHECK(run_cli("simulate --config x.ini --bogus") == 1);
        CHECK(run_cli("") == 1);
        CHECK(run_cli("sweep fig99 --out " + dir.string()) == 1);
        CHECK(run_cli("--help") == 0);

        CHECK(run_cli("sweep fig4 --out " + (dir / "d").string()) == 0);
        CHECK(slurp(dir / "d" / "fig4.csv").rfind("N,exact,fresnel_approx", 0) == 0);

        {
            std::ofstream os(dir / "bad.ini");
            os << "[array]\nn1 = 0\n";
        }
        CHECK(run_cli("simulate --config " + (dir / "bad.ini").string()) == 1);

        {
            std::ofstream os(dir / "ok.ini");
            os << "[meta]\nname = ok\n[array]\nn1 = 64\n[users]\ncount = 3\n[link]\nsnr_db = 10\n[run]\ndrops = 2\n";
        }
        CHECK(run_cli("simulate --config " + (dir / "ok.ini").string() + " --out " + (dir / "a").string()) == 0);
        CHECK(run_cli("simulate --config " + (dir / "ok.ini").string() + " --out " + (dir / "b").string()) == 0);
        CHECK(slurp(dir / "a" / "ok_summary.csv") == slurp(dir / "b" / "ok_summary.csv"));
        CHECK(slurp(dir / "a" / "ok_drops.csv") == slurp(dir / "b" / "ok_drops.csv"));
        CHECK(run_cli("simulate --config " + (dir / "ok.ini").string() + " --out " + (dir / "c").string() +
                      " --seed 9") == 0);
        CHECK(slurp(dir / "a" / "ok_drops.csv") != slurp(dir / "c" / "ok_drops.csv"));

        CHECK(run_cli("codebook build --n1 32 --rho-min 0.3 --file " + (dir / "cb.nfcb").string()) == 0);
        CHECK(run_cli("codebook inspect " + (dir / "cb.nfcb").string()) == 0);
        CHECK(run_cli("codebook inspect " + (dir / "missing.nfcb").string()) == 1);
        CHECK(run_cli("correlate --n-list 64,128 --out " + dir.string()) == 0);
        CHECK(run_cli("bound --k-max 3 --n 64 --out " + dir.string()) == 0);
        CHECK(slurp(dir / "bound.csv").rfind("K,delta_abs,gamma,R_aub,reachable", 0) == 0);
    }
}
