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

#include "ldma/experiment.hpp"
#include "ldma/correlation.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ldma
{
    namespace
    {
        // smallest eigenvalue of the served columns' Gram matrix below which ZF cannot separate them
        constexpr double separable_eigenvalue = 1e-4;
        constexpr std::size_t materialize_limit_bytes = std::size_t(1) << 29;

        struct AnalogStage
        {
            ComplexMatrix analog;             // N x served
            std::vector<std::size_t> served;  // user indices carried by the analog columns
        };

        bool needs(const ScenarioConfig &cfg, AnalogKind kind)
        {
            for (const auto &s : cfg.schemes)
                if (s.analog == kind)
                    return true;
            return false;
        }

        // One column per user from its LoS direction; a user whose column would make the served
        // set (nearly) linearly dependent is not served.
        AnalogStage ideal_stage(const ArrayGeometry &geom, const Scenario &sc, bool focusing)
        {
            AnalogStage st;
            st.analog.resize(Eigen::Index(geom.size()), 0);
            for (std::size_t k = 0; k < sc.users.size(); ++k)
            {
                ComplexMatrix trial(st.analog.rows(), st.analog.cols() + 1);
                trial << st.analog,
                    (focusing ? focusing_vector(geom, sc.users[k]) : steering_vector(geom, sc.users[k]));
                const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(trial.adjoint() * trial, Eigen::EigenvaluesOnly);
                if (eig.eigenvalues().minCoeff() < separable_eigenvalue)
                    continue;
                st.analog = std::move(trial);
                st.served.push_back(k);
            }
            return st;
        }

        AnalogStage codebook_stage(const Codebook &cb, const ComplexMatrix &H)
        {
            AnalogStage st;
            st.analog = assemble_analog(cb, beam_sweep_assign(H, cb));
            for (std::size_t k = 0; k < std::size_t(H.cols()); ++k)
                st.served.push_back(k);
            return st;
        }

        void maybe_materialize(Codebook &cb)
        {
            if (cb.size() * cb.geom.size() * sizeof(cd) <= materialize_limit_bytes)
                cb.materialize();
        }
    } // namespace

    std::string format_number(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    std::string resolve_output_dir(const std::string &requested)
    {
        if (!requested.empty())
            return requested;
        if (const char *env = std::getenv("LDMA_OUT_DIR"); env != nullptr && *env != '\0')
            return env;
        return ".";
    }

    CodebookSet build_codebooks(const ScenarioConfig &cfg)
    {
        const ArrayGeometry geom = cfg.geometry();
        CodebookSet set;
        if (needs(cfg, AnalogKind::ldma) || needs(cfg, AnalogKind::uniform_radius))
        {
            auto cb = std::make_shared<Codebook>(build_near_field_codebook(geom, cfg.delta, cfg.codebook_rho_min()));
            if (needs(cfg, AnalogKind::uniform_radius))
            {
                const std::size_t rings = cfg.uniform_rings > 0 ? cfg.uniform_rings : cb->ring_count - 1;
                auto ub = std::make_shared<Codebook>(build_uniform_radius_codebook(
                    geom, rings, cfg.codebook_rho_min(), std::max(cfg.r_max, cfg.codebook_rho_min())));
                maybe_materialize(*ub);
                set.uniform_radius = ub;
            }
            maybe_materialize(*cb);
            set.near_field = cb;
        }
        if (needs(cfg, AnalogKind::sdma))
        {
            auto cb = std::make_shared<Codebook>(build_dft_codebook(geom));
            cb->materialize();
            set.far_field = cb;
        }
        return set;
    }

    DropResult run_drop(const ScenarioConfig &cfg, const CodebookSet &books, std::size_t drop_index)
    {
        const ArrayGeometry geom = cfg.geometry();
        const Scenario sc = generate_scenario(cfg, drop_index);
        const ComplexMatrix H = channel_matrix(sc.channels);
        const std::size_t K = cfg.users;
        const double sigma2 = cfg.noise_variance;

        DropResult out;
        out.drop = drop_index;
        out.outcomes.assign(cfg.snr_db.size(), std::vector<SchemeOutcome>(cfg.schemes.size()));

        std::map<AnalogKind, AnalogStage> stages;
        auto stage_for = [&](AnalogKind kind) -> const AnalogStage &
        {
            auto it = stages.find(kind);
            if (it != stages.end())
                return it->second;
            AnalogStage st;
            switch (kind)
            {
            case AnalogKind::ldma: st = codebook_stage(*books.near_field, H); break;
            case AnalogKind::sdma: st = codebook_stage(*books.far_field, H); break;
            case AnalogKind::uniform_radius: st = codebook_stage(*books.uniform_radius, H); break;
            case AnalogKind::ldma_ideal: st = ideal_stage(geom, sc, true); break;
            case AnalogKind::sdma_ideal: st = ideal_stage(geom, sc, false); break;
            case AnalogKind::fully_digital:
                for (std::size_t k = 0; k < K; ++k)
                    st.served.push_back(k);
                break;
            }
            return stages.emplace(kind, std::move(st)).first->second;
        };

        for (std::size_t j = 0; j < cfg.schemes.size(); ++j)
        {
            const SchemeSpec &scheme = cfg.schemes[j];
            try
            {
                const AnalogStage &stage = stage_for(scheme.analog);
                const auto served = Eigen::Index(stage.served.size());
                ComplexMatrix Hs(H.rows(), served);
                for (Eigen::Index i = 0; i < served; ++i)
                    Hs.col(i) = H.col(Eigen::Index(stage.served[std::size_t(i)]));

                ComplexMatrix effective;
                if (scheme.analog != AnalogKind::fully_digital)
                {
                    SeededStream noise(cfg.seed, std::uint64_t(drop_index) * streams_per_drop + noise_stream_base + j);
                    effective = ldma::effective_channel(Hs, stage.analog, cfg.estimation_noise, &noise);
                }

                for (std::size_t i = 0; i < cfg.snr_db.size(); ++i)
                {
                    const double P = std::pow(10.0, cfg.snr_db[i] / 10.0) * sigma2;
                    const double p = P / double(served);
                    PrecodingSolution sol;
                    if (scheme.analog == AnalogKind::fully_digital)
                        sol = fully_digital_zf(Hs);
                    else if (scheme.digital == DigitalKind::zf)
                        sol = zf_digital(effective, stage.analog);
                    else
                        sol = wmmse_digital(effective, stage.analog, p, sigma2, cfg.wmmse);
                    sol.scheme = scheme.analog == AnalogKind::fully_digital ? AccessScheme::fully_digital
                                 : (scheme.analog == AnalogKind::sdma || scheme.analog == AnalogKind::sdma_ideal)
                                     ? AccessScheme::sdma
                                     : AccessScheme::ldma;

                    const RateReport rr = spectrum_efficiency(Hs, sol, Eigen::VectorXd::Constant(served, p), sigma2);
                    SchemeOutcome &o = out.outcomes[i][j];
                    o.sum_rate = rr.sum;
                    o.served = std::size_t(served);
                    o.user_rates.assign(K, 0.0);
                    for (std::size_t s = 0; s < stage.served.size(); ++s)
                        o.user_rates[stage.served[s]] = rr.per_user[s];
                }
            }
            catch (const numeric_error &e)
            {
                throw numeric_error("drop " + std::to_string(drop_index) + ", scheme " + scheme.label() + ": " +
                                    e.what());
            }
        }
        return out;
    }

    ExperimentResult run_experiment(const ScenarioConfig &cfg)
    {
        cfg.validate();
        ExperimentResult res;
        res.config = cfg;
        const CodebookSet books = build_codebooks(cfg);
        res.near_field_codebook_size = books.near_field ? books.near_field->size() : 0;
        res.far_field_codebook_size = books.far_field ? books.far_field->size() : 0;
        res.uniform_codebook_size = books.uniform_radius ? books.uniform_radius->size() : 0;

        const auto n = std::int64_t(cfg.drops);
        res.drops.resize(cfg.drops);
        std::vector<std::exception_ptr> errors(cfg.drops);
#ifdef _OPENMP
        const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t d = 0; d < n; ++d)
        {
            try
            {
                res.drops[std::size_t(d)] = run_drop(cfg, books, std::size_t(d));
            }
            catch (...)
            {
                errors[std::size_t(d)] = std::current_exception();
            }
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        const std::size_t S = cfg.snr_db.size(), J = cfg.schemes.size();
        res.mean.assign(S, std::vector<double>(J, 0.0));
        res.stddev.assign(S, std::vector<double>(J, 0.0));
        for (std::size_t i = 0; i < S; ++i)
            for (std::size_t j = 0; j < J; ++j)
            {
                double sum = 0.0;
                for (const auto &d : res.drops)
                    sum += d.outcomes[i][j].sum_rate;
                const double mean = sum / double(cfg.drops);
                double var = 0.0;
                for (const auto &d : res.drops)
                    var += (d.outcomes[i][j].sum_rate - mean) * (d.outcomes[i][j].sum_rate - mean);
                res.mean[i][j] = mean;
                res.stddev[i][j] = cfg.drops > 1 ? std::sqrt(var / double(cfg.drops - 1)) : 0.0;
            }
        return res;
    }

    void write_experiment(const ExperimentResult &res, const std::string &dir, const std::string &stem)
    {
        namespace fs = std::filesystem;
        fs::create_directories(dir);
        const auto &cfg = res.config;
        auto open = [&](const std::string &name)
        {
            std::ofstream os(fs::path(dir) / name);
            if (!os)
                throw std::runtime_error("Cannot write '" + (fs::path(dir) / name).string() + "'.");
            return os;
        };

        {
            auto os = open(stem + "_summary.csv");
            os << "snr_db,scheme,mean_sum_rate,std_sum_rate,drops\n";
            for (std::size_t i = 0; i < cfg.snr_db.size(); ++i)
                for (std::size_t j = 0; j < cfg.schemes.size(); ++j)
                    os << format_number(cfg.snr_db[i]) << ',' << cfg.schemes[j].label() << ','
                       << format_number(res.mean[i][j]) << ',' << format_number(res.stddev[i][j]) << ',' << cfg.drops
                       << '\n';
        }
        {
            auto os = open(stem + "_drops.csv");
            os << "drop,snr_db,scheme,sum_rate,served,user_rates\n";
            for (const auto &d : res.drops)
                for (std::size_t i = 0; i < cfg.snr_db.size(); ++i)
                    for (std::size_t j = 0; j < cfg.schemes.size(); ++j)
                    {
                        const auto &o = d.outcomes[i][j];
                        os << d.drop << ',' << format_number(cfg.snr_db[i]) << ',' << cfg.schemes[j].label() << ','
                           << format_number(o.sum_rate) << ',' << o.served << ',';
                        for (std::size_t k = 0; k < o.user_rates.size(); ++k)
                            os << (k ? ";" : "") << format_number(o.user_rates[k]);
                        os << '\n';
                    }
        }
        {
            nlohmann::json meta;
            meta["name"] = cfg.name;
            meta["seed"] = cfg.seed;
            meta["drops"] = cfg.drops;
            meta["snr_semantics"] = "SNR = P / sigma^2 with total power P split equally, p_k = P / K_served; "
                                    "channel gains carry the sqrt(N) array factor";
            meta["geometry"] = cfg.geometry().describe();
            std::vector<std::string> labels;
            for (const auto &s : cfg.schemes)
                labels.push_back(s.label());
            meta["schemes"] = labels;
            meta["snr_db"] = cfg.snr_db;
            meta["codebook_sizes"] = {{"near_field", res.near_field_codebook_size},
                                      {"far_field", res.far_field_codebook_size},
                                      {"uniform_radius", res.uniform_codebook_size}};
            meta["files"] = {stem + "_summary.csv", stem + "_drops.csv"};
            meta["config"] = config_to_ini(cfg);
            auto os = open(stem + ".json");
            os << meta.dump(2) << '\n';
        }
    }

} // namespace ldma
