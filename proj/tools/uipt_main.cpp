// Command-line front end. Everything numeric goes through the C API in
// uipt.h; this layer only parses flags, schedules replicas, and formats
// CSV/JSON. Outputs are byte-reproducible for a fixed configuration.

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uipt.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

constexpr const char* kSchemaVersion = "1";

struct ApiError : std::runtime_error {
    int status;
    ApiError(int s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(int status) {
    if (status != UIPT_OK) {
        std::string msg = uipt_strerror(status);
        const char* detail = uipt_last_error();
        if (detail && *detail) msg += std::string(": ") + detail;
        throw ApiError(status, msg);
    }
}

std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string owned_string(char* s) {
    std::string out = s ? s : "";
    uipt_string_free(s);
    return out;
}

void run_parallel(long n, int threads, const std::function<void(long)>& fn) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 4 : static_cast<int>(hw);
    }
    if (threads > n) threads = static_cast<int>(n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(first_error);
}

// Every run directory carries the exact configuration that produced it.
struct OutputDir {
    fs::path dir;
    bool enabled = false;

    void prepare(const std::string& path) {
        if (path.empty()) return;
        dir = path;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) throw ApiError(UIPT_EIO, "cannot create output directory " + path);
        enabled = true;
    }

    void write_config(const CLI::App& app) const {
        if (!enabled) return;
        std::ofstream out(dir / "run_config.cfg");
        if (!out) throw ApiError(UIPT_EIO, "cannot write run_config.cfg");
        out << app.config_to_str(true, false);
    }

    std::ofstream open(const std::string& name) const {
        std::ofstream out(dir / name);
        if (!out) throw ApiError(UIPT_EIO, "cannot write " + name);
        return out;
    }

    void write_json(const std::string& name, const json& j) const {
        if (!enabled) return;
        auto out = open(name);
        out << j.dump(2) << "\n";
    }
};

std::string default_out_dir() {
    const char* env = std::getenv("UIPT_OUT_DIR");
    return env ? env : "";
}

json law_to_json_rows(uipt_law* law) {
    json rows = json::array();
    for (long i = 0; i < uipt_law_rows(law); ++i) {
        long index;
        char *num, *den;
        double dec;
        check(uipt_law_row(law, i, &index, &num, &den, &dec));
        rows.push_back({{"index", index}, {"num", owned_string(num)}, {"den", owned_string(den)}, {"decimal", dec}});
    }
    return rows;
}

void print_law_csv(std::ostream& os, uipt_law* law) {
    os << "index,numerator,denominator,decimal\n";
    for (long i = 0; i < uipt_law_rows(law); ++i) {
        long index;
        char *num, *den;
        double dec;
        check(uipt_law_row(law, i, &index, &num, &den, &dec));
        os << index << "," << owned_string(num) << "," << owned_string(den) << "," << fmt_double(dec) << "\n";
    }
}

void print_scalar_csv(std::ostream& os, const std::vector<std::pair<long, std::pair<std::string, std::string>>>& rows) {
    os << "index,numerator,denominator,decimal\n";
    for (const auto& [idx, nd] : rows) {
        const double dec = std::stod(nd.first) / std::stod(nd.second);
        os << idx << "," << nd.first << "," << nd.second << "," << fmt_double(dec) << "\n";
    }
}

std::pair<std::string, std::string> scalar(int (*fn)(long, char**, char**), long arg) {
    char *num, *den;
    check(fn(arg, &num, &den));
    return {owned_string(num), owned_string(den)};
}

// ---- laws ---------------------------------------------------------------

struct LawsOpts {
    long step_law = -1, marked = -1, free_peel = -1, free_size = -1, phi_m = -1, z_theta_m = -1;
    long n_max = 16, m_max = 30, hitting_n = -1;
    std::string table;
    std::string theta = "1/6";
    std::string out_dir = default_out_dir();
};

int cmd_laws(const LawsOpts& o, const CLI::App& app) {
    OutputDir out;
    out.prepare(o.out_dir);
    std::ostringstream csv;

    if (o.step_law >= 0) {
        uipt_law* law;
        check(uipt_step_law_new(o.step_law, &law));
        print_law_csv(csv, law);
        uipt_law_free(law);
    } else if (o.marked >= 0) {
        uipt_law* law;
        check(uipt_marked_step_law_new(o.marked, &law));
        print_law_csv(csv, law);
        uipt_law_free(law);
    } else if (o.free_peel >= 0) {
        uipt_law* law;
        check(uipt_free_peel_law_new(o.free_peel, &law));
        print_law_csv(csv, law);
        uipt_law_free(law);
    } else if (o.free_size >= 0) {
        uipt_law* law;
        check(uipt_free_size_law_new(o.free_size, o.n_max, &law));
        print_law_csv(csv, law);
        uipt_law_free(law);
    } else if (o.phi_m >= 0) {
        std::vector<std::pair<long, std::pair<std::string, std::string>>> rows;
        for (long n = 0; n <= o.n_max; ++n) {
            char *num, *den;
            check(uipt_phi(n, o.phi_m, &num, &den));
            rows.push_back({n, {owned_string(num), owned_string(den)}});
        }
        print_scalar_csv(csv, rows);
    } else if (o.hitting_n >= 0) {
        std::vector<std::pair<long, std::pair<std::string, std::string>>> rows;
        for (long m = 0; m <= o.m_max; ++m) {
            char *num, *den;
            check(uipt_hitting_prob(o.hitting_n, m, &num, &den));
            rows.push_back({m, {owned_string(num), owned_string(den)}});
        }
        print_scalar_csv(csv, rows);
    } else if (o.z_theta_m >= 0) {
        const auto slash = o.theta.find('/');
        const long tn = std::stol(o.theta.substr(0, slash));
        const long td = slash == std::string::npos ? 1 : std::stol(o.theta.substr(slash + 1));
        std::vector<std::pair<long, std::pair<std::string, std::string>>> rows;
        for (long m = 0; m <= o.z_theta_m; ++m) {
            char *num, *den;
            check(uipt_partition_z_theta(m, tn, td, &num, &den));
            rows.push_back({m, {owned_string(num), owned_string(den)}});
        }
        print_scalar_csv(csv, rows);
    } else if (!o.table.empty()) {
        int (*fn)(long, char**, char**) = nullptr;
        if (o.table == "z") fn = uipt_partition_z;
        else if (o.table == "ztilde") fn = uipt_partition_ztilde;
        else if (o.table == "drift") fn = uipt_expected_step;
        else if (o.table == "visits") fn = uipt_expected_visits;
        else if (o.table == "mean-size") fn = uipt_free_size_mean;
        else throw CLI::ValidationError("--table", "unknown table " + o.table);
        std::vector<std::pair<long, std::pair<std::string, std::string>>> rows;
        const long lo = o.table == "drift" ? 1 : 0;
        for (long m = lo; m <= o.m_max; ++m) rows.push_back({m, scalar(fn, m)});
        print_scalar_csv(csv, rows);
    } else {
        throw CLI::ValidationError("laws", "choose one table to print");
    }

    std::cout << csv.str();
    if (out.enabled) {
        auto f = out.open("laws.csv");
        f << csv.str();
        out.write_config(app);
    }
    return kExitOk;
}

// ---- chain --------------------------------------------------------------

struct ChainOpts {
    long m0 = 1;
    std::uint64_t horizon = 100000;
    long replicas = 10;
    std::vector<long> targets;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = default_out_dir();
};

int cmd_chain(const ChainOpts& o, const CLI::App& app) {
    OutputDir out;
    out.prepare(o.out_dir);

    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t c = 16; c < o.horizon; c *= 2) checkpoints.push_back(c);
    checkpoints.push_back(o.horizon);

    struct Row {
        std::vector<long> cp_m;
        std::vector<char> hit;
        std::uint64_t absorbed = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(o.replicas));
    run_parallel(o.replicas, o.threads, [&](long r) {
        uipt_chain_result* res;
        check(uipt_chain_run(o.m0, o.horizon, o.targets.data(), static_cast<long>(o.targets.size()),
                             checkpoints.data(), static_cast<long>(checkpoints.size()), 0, o.seed,
                             static_cast<std::uint64_t>(r), &res));
        Row& row = rows[static_cast<std::size_t>(r)];
        row.cp_m.resize(checkpoints.size());
        for (std::size_t i = 0; i < checkpoints.size(); ++i)
            check(uipt_chain_checkpoint_m(res, static_cast<long>(i), &row.cp_m[i]));
        row.hit.resize(o.targets.size());
        for (std::size_t i = 0; i < o.targets.size(); ++i) {
            int h;
            check(uipt_chain_hit(res, static_cast<long>(i), &h));
            row.hit[i] = static_cast<char>(h);
        }
        check(uipt_chain_summary(res, &row.absorbed, nullptr, nullptr, nullptr));
        uipt_chain_free(res);
    });

    if (out.enabled) {
        auto csv = out.open("chain.csv");
        csv << "replica,checkpoint,M\n";
        for (long r = 0; r < o.replicas; ++r)
            for (std::size_t i = 0; i < checkpoints.size(); ++i)
                csv << r << "," << checkpoints[i] << "," << rows[static_cast<std::size_t>(r)].cp_m[i] << "\n";
    }

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["subcommand"] = "chain";
    summary["seed"] = o.seed;
    summary["m0"] = o.m0;
    summary["horizon"] = o.horizon;
    summary["replicas"] = o.replicas;
    long absorbed = 0;
    for (const auto& row : rows) absorbed += row.absorbed > 0 ? 1 : 0;
    summary["absorbed_fraction"] = static_cast<double>(absorbed) / static_cast<double>(o.replicas);
    json hits = json::array();
    for (std::size_t i = 0; i < o.targets.size(); ++i) {
        long n = 0;
        for (const auto& row : rows) n += row.hit[i];
        hits.push_back({{"target", o.targets[i]}, {"hit_fraction", static_cast<double>(n) / o.replicas}});
    }
    summary["targets"] = hits;
    if (o.horizon >= 1000) {
        double slope, spread;
        long degenerate;
        check(uipt_growth_exponent_probe(o.horizon, o.replicas, o.seed, 1u << 20, o.threads, &slope, &spread,
                                         &degenerate));
        summary["m_slope"] = {{"slope", slope}, {"spread", spread}, {"degenerate", degenerate}};
    }
    out.write_json("summary.json", summary);
    out.write_config(app);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---- grow ---------------------------------------------------------------

struct GrowOpts {
    long r_max = 16;
    std::string mode = "skeleton";
    long replicas = 10;
    std::uint64_t seed = 0;
    int threads = 0;
    std::int64_t budget = 1000000000;
    long n_star = 10000;
    bool export_mesh = false;
    long fit_r_min = 0;
    std::string out_dir = default_out_dir();
};

int cmd_grow(const GrowOpts& o, const CLI::App& app) {
    OutputDir out;
    out.prepare(o.out_dir);
    const int mode = o.mode == "full" ? UIPT_MODE_FULL : UIPT_MODE_SKELETON;

    struct Layer {
        long r;
        std::uint64_t t, hull, ball;
        long m;
    };
    std::vector<std::vector<Layer>> layers(static_cast<std::size_t>(o.replicas));
    std::vector<int> exceeded(static_cast<std::size_t>(o.replicas), 0);
    run_parallel(o.replicas, o.threads, [&](long r) {
        uipt_growth* g;
        check(uipt_grow(o.r_max, mode, o.seed, static_cast<std::uint64_t>(r), o.budget, o.n_star, &g));
        int done, exc;
        check(uipt_growth_summary(g, nullptr, nullptr, &done, &exc));
        exceeded[static_cast<std::size_t>(r)] = exc;
        auto& ls = layers[static_cast<std::size_t>(r)];
        for (long i = 0; i < uipt_growth_layers(g); ++i) {
            Layer l{};
            check(uipt_growth_layer(g, i, &l.r, &l.t, &l.m, &l.hull, &l.ball, nullptr, nullptr));
            ls.push_back(l);
        }
        if (o.export_mesh && r == 0 && mode == UIPT_MODE_FULL && out.enabled) {
            check(uipt_growth_export_mesh(g, (out.dir / "mesh_edges.txt").c_str(),
                                          (out.dir / "mesh_vertices.csv").c_str()));
        }
        uipt_growth_free(g);
    });

    if (out.enabled) {
        auto csv = out.open("layers.csv");
        csv << "replica,r,T_r,M_Tr,hull_vol,ball_vol\n";
        for (long r = 0; r < o.replicas; ++r)
            for (const auto& l : layers[static_cast<std::size_t>(r)])
                csv << r << "," << l.r << "," << l.t << "," << l.m << "," << l.hull << "," << l.ball << "\n";
    }

    // Per-replica log-log slopes over [fit_r_min, r_max], averaged.
    const long fit_lo = o.fit_r_min > 0 ? o.fit_r_min : std::max<long>(2, o.r_max / 8);
    auto fit_avg = [&](auto getter) {
        double sum = 0, sum2 = 0;
        long used = 0;
        for (const auto& ls : layers) {
            std::vector<double> xs, ys;
            for (const auto& l : ls)
                if (l.r >= fit_lo) {
                    const double v = static_cast<double>(getter(l));
                    if (v > 0) {
                        xs.push_back(static_cast<double>(l.r));
                        ys.push_back(v);
                    }
                }
            if (xs.size() < 4) continue;
            double slope, intercept, se;
            if (uipt_fit_loglog(xs.data(), ys.data(), static_cast<long>(xs.size()), &slope, &intercept, &se) ==
                UIPT_OK) {
                sum += slope;
                sum2 += slope * slope;
                ++used;
            }
        }
        json j;
        j["replicas_used"] = used;
        if (used > 0) {
            j["slope"] = sum / used;
            j["spread"] = used > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / used) / (used - 1))) : 0.0;
        }
        return j;
    };

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["subcommand"] = "grow";
    summary["seed"] = o.seed;
    summary["mode"] = o.mode;
    summary["r_max"] = o.r_max;
    summary["replicas"] = o.replicas;
    summary["fit_r_min"] = fit_lo;
    long n_exceeded = 0;
    for (int e : exceeded) n_exceeded += e;
    summary["budget_exceeded"] = n_exceeded;
    summary["slopes"] = {{"T_r", fit_avg([](const Layer& l) { return l.t; })},
                         {"M_Tr", fit_avg([](const Layer& l) { return l.m; })},
                         {"hull_vol", fit_avg([](const Layer& l) { return l.hull; })}};
    if (mode == UIPT_MODE_FULL)
        summary["slopes"]["ball_vol"] = fit_avg([](const Layer& l) { return l.ball; });
    out.write_json("summary.json", summary);
    out.write_config(app);
    std::cout << summary.dump(2) << "\n";
    return n_exceeded == o.replicas ? kExitBudget : kExitOk;
}

// ---- perc ---------------------------------------------------------------

struct PercOpts {
    std::vector<double> p_list{0.5};
    std::uint64_t horizon = 10000;
    long replicas = 100;
    std::string engine = "reduced";
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = default_out_dir();
};

int cmd_perc(const PercOpts& o, const CLI::App& app) {
    OutputDir out;
    out.prepare(o.out_dir);
    const int engine = o.engine == "full" ? UIPT_ENGINE_FULL : UIPT_ENGINE_REDUCED;

    struct Row {
        int died;
        std::uint64_t death_step, max_b;
    };
    std::ofstream csv;
    if (out.enabled) {
        csv = out.open("perc.csv");
        csv << "p,replica,verdict,death_step,max_B\n";
    }

    json per_p = json::array();
    std::uint64_t stream_base = 0;
    for (double p : o.p_list) {
        std::vector<Row> rows(static_cast<std::size_t>(o.replicas));
        run_parallel(o.replicas, o.threads, [&](long r) {
            Row& row = rows[static_cast<std::size_t>(r)];
            check(uipt_perc_run(engine, p, o.horizon, o.seed, stream_base + static_cast<std::uint64_t>(r),
                                &row.died, &row.death_step, &row.max_b));
        });
        std::uint64_t survived = 0;
        for (long r = 0; r < o.replicas; ++r) {
            const Row& row = rows[static_cast<std::size_t>(r)];
            survived += row.died ? 0 : 1;
            if (out.enabled)
                csv << fmt_double(p) << "," << r << "," << (row.died ? "died" : "survived") << ","
                    << (row.died ? std::to_string(row.death_step) : std::string("")) << "," << row.max_b << "\n";
        }
        double frac, lo, hi;
        check(uipt_perc_survival(engine, p, o.horizon, static_cast<std::uint64_t>(o.replicas), o.seed, stream_base,
                                 o.threads, &frac, &lo, &hi));
        per_p.push_back({{"p", p},
                         {"replicas", o.replicas},
                         {"survived", survived},
                         {"survival_fraction", frac},
                         {"ci_lo", lo},
                         {"ci_hi", hi}});
        stream_base += static_cast<std::uint64_t>(o.replicas);
    }

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["subcommand"] = "perc";
    summary["seed"] = o.seed;
    summary["engine"] = o.engine;
    summary["horizon"] = o.horizon;
    summary["results"] = per_p;
    // Crossing estimate over the sweep, when it brackets 10%.
    for (std::size_t i = 1; i < per_p.size(); ++i) {
        const double f0 = per_p[i - 1]["survival_fraction"], f1 = per_p[i]["survival_fraction"];
        if (f0 < 0.1 && f1 >= 0.1) {
            const double p0 = per_p[i - 1]["p"], p1 = per_p[i]["p"];
            summary["crossing_p_at_10pct"] = p0 + (0.1 - f0) / (f1 - f0) * (p1 - p0);
            break;
        }
    }
    out.write_json("summary.json", summary);
    out.write_config(app);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---- gof ----------------------------------------------------------------

struct GofOpts {
    std::string test = "step-law";
    long m = 5;
    std::uint64_t draws = 1000000;
    std::uint64_t replicas = 10000;
    std::uint64_t horizon = 1000000;
    double significance = 0.001;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = default_out_dir();
};

int cmd_gof(const GofOpts& o, const CLI::App& app) {
    OutputDir out;
    out.prepare(o.out_dir);
    json rep;
    rep["schema_version"] = kSchemaVersion;
    rep["subcommand"] = "gof";
    rep["test"] = o.test;
    rep["seed"] = o.seed;

    if (o.test == "step-law") {
        double stat, pv;
        long dof;
        int pass;
        check(uipt_gof_step_law(o.m, o.draws, 20, o.significance, o.seed, 0, &stat, &dof, &pv, &pass));
        rep["m"] = o.m;
        rep["draws"] = o.draws;
        rep["statistic"] = stat;
        rep["dof"] = dof;
        rep["p_value"] = pv;
        rep["significance"] = o.significance;
        rep["pass"] = pass != 0;
    } else if (o.test == "free-size") {
        double stat, pv;
        long dof;
        int pass;
        check(uipt_gof_free_size(o.m, o.draws, 12, o.significance, o.seed, 0, &stat, &dof, &pv, &pass));
        rep["m"] = o.m;
        rep["draws"] = o.draws;
        rep["statistic"] = stat;
        rep["dof"] = dof;
        rep["p_value"] = pv;
        rep["significance"] = o.significance;
        rep["pass"] = pass != 0;
    } else if (o.test == "stable-limit") {
        double d;
        check(uipt_gof_stable_limit(o.m, o.replicas, o.seed, 0, o.threads, &d));
        rep["m"] = o.m;
        rep["replicas"] = o.replicas;
        rep["ks_distance"] = d;
        rep["threshold"] = 0.1;
        rep["pass"] = d <= 0.1;
    } else if (o.test == "heavy-tail") {
        double s2, sp2, s3, sp3;
        check(uipt_heavy_tail_probe(o.horizon, static_cast<long>(o.replicas), o.seed, 0, o.threads, &s2, &sp2, &s3,
                                    &sp3));
        rep["horizon"] = o.horizon;
        rep["replicas"] = o.replicas;
        rep["vt2"] = {{"slope", s2}, {"spread", sp2}, {"window", {1.1, 1.6}}};
        rep["vt3"] = {{"slope", s3}, {"spread", sp3}, {"window", {1.7, 2.3}}};
        rep["pass"] = s2 >= 1.1 && s2 <= 1.6 && s3 >= 1.7 && s3 <= 2.3;
    } else {
        throw CLI::ValidationError("--test", "unknown test " + o.test);
    }

    out.write_json("gof.json", rep);
    out.write_config(app);
    std::cout << rep.dump(2) << "\n";
    return kExitOk;
}

// ---- report ---------------------------------------------------------------

struct ReportOpts {
    std::string in_dir;
    std::string out_file = "report.json";
};

int cmd_report(const ReportOpts& o) {
    json bundle;
    bundle["schema_version"] = kSchemaVersion;
    bundle["entries"] = json::array();
    if (!o.in_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& e : fs::recursive_directory_iterator(o.in_dir))
            if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != fs::path(o.out_file).filename())
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f);
            json j;
            try {
                in >> j;
            } catch (...) {
                continue;
            }
            bundle["entries"].push_back({{"path", fs::relative(f, o.in_dir).string()}, {"content", j}});
        }
    }
    std::ofstream outf(o.out_file);
    if (!outf) throw ApiError(UIPT_EIO, "cannot write " + o.out_file);
    outf << bundle.dump(2) << "\n";
    std::cout << "wrote " << o.out_file << " with " << bundle["entries"].size() << " entries\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peeling-process laboratory for the uniform infinite planar triangulation"};
    app.set_config("--config")->configurable(false);
    std::string schema = kSchemaVersion;
    app.add_option("--schema-version", schema)->capture_default_str()->group("");

    LawsOpts laws;
    auto* c_laws = app.add_subcommand("laws", "print exact law tables as CSV");
    c_laws->add_option("--step-law", laws.step_law, "boundary step law at m");
    c_laws->add_option("--marked-step-law", laws.marked, "marked peel law at m");
    c_laws->add_option("--free-peel", laws.free_peel, "free peel law at m");
    c_laws->add_option("--free-size", laws.free_size, "free size law at m");
    c_laws->add_option("--phi", laws.phi_m, "triangulation counts at boundary m");
    c_laws->add_option("--z-theta", laws.z_theta_m, "Z_m(theta) table up to m");
    c_laws->add_option("--theta", laws.theta, "theta as a fraction, e.g. 1/6");
    c_laws->add_option("--hitting", laws.hitting_n, "hitting probabilities from n");
    c_laws->add_option("--table", laws.table, "one of z, ztilde, drift, visits, mean-size");
    c_laws->add_option("--n-max", laws.n_max, "row limit for n-indexed tables");
    c_laws->add_option("--m-max", laws.m_max, "row limit for m-indexed tables");
    c_laws->add_option("--out-dir", laws.out_dir, "output directory");

    ChainOpts chain;
    auto* c_chain = app.add_subcommand("chain", "simulate the boundary-size chain");
    c_chain->add_option("--m0", chain.m0, "initial boundary parameter");
    c_chain->add_option("--horizon", chain.horizon, "max steps per replica");
    c_chain->add_option("--replicas", chain.replicas, "number of independent runs");
    c_chain->add_option("--targets", chain.targets, "states whose hits are recorded")->delimiter(',');
    c_chain->add_option("--seed", chain.seed, "master seed");
    c_chain->add_option("--threads", chain.threads, "worker threads (0 = all)");
    c_chain->add_option("--out-dir", chain.out_dir, "output directory");

    GrowOpts grow;
    auto* c_grow = app.add_subcommand("grow", "grow triangulation balls by peeling");
    c_grow->add_option("--r-max", grow.r_max, "target radius");
    c_grow->add_option("--mode", grow.mode, "full or skeleton")->check(CLI::IsMember({"full", "skeleton"}));
    c_grow->add_option("--replicas", grow.replicas, "number of independent runs");
    c_grow->add_option("--seed", grow.seed, "master seed");
    c_grow->add_option("--threads", grow.threads, "worker threads (0 = all)");
    c_grow->add_option("--budget", grow.budget, "per-run elementary step budget");
    c_grow->add_option("--n-star", grow.n_star, "size-sampler tail crossover");
    c_grow->add_option("--fit-r-min", grow.fit_r_min, "lower end of slope fit range");
    c_grow->add_flag("--export-mesh", grow.export_mesh, "export replica 0 mesh (full mode)");
    c_grow->add_option("--out-dir", grow.out_dir, "output directory");

    PercOpts perc;
    auto* c_perc = app.add_subcommand("perc", "site percolation on the growing triangulation");
    c_perc->add_option("--p", perc.p_list, "black probability (repeatable / comma list)")->delimiter(',');
    c_perc->add_option("--horizon", perc.horizon, "max peel steps per run");
    c_perc->add_option("--replicas", perc.replicas, "runs per p");
    c_perc->add_option("--engine", perc.engine, "reduced or full")->check(CLI::IsMember({"reduced", "full"}));
    c_perc->add_option("--seed", perc.seed, "master seed");
    c_perc->add_option("--threads", perc.threads, "worker threads (0 = all)");
    c_perc->add_option("--out-dir", perc.out_dir, "output directory");

    GofOpts gof;
    auto* c_gof = app.add_subcommand("gof", "goodness-of-fit checks against the exact laws");
    c_gof->add_option("--test", gof.test, "step-law, free-size, stable-limit, heavy-tail")
        ->check(CLI::IsMember({"step-law", "free-size", "stable-limit", "heavy-tail"}));
    c_gof->add_option("--m", gof.m, "boundary parameter");
    c_gof->add_option("--draws", gof.draws, "sample size");
    c_gof->add_option("--replicas", gof.replicas, "replicas (stable-limit, heavy-tail)");
    c_gof->add_option("--horizon", gof.horizon, "chain horizon (heavy-tail)");
    c_gof->add_option("--significance", gof.significance, "test significance level");
    c_gof->add_option("--seed", gof.seed, "master seed");
    c_gof->add_option("--threads", gof.threads, "worker threads (0 = all)");
    c_gof->add_option("--out-dir", gof.out_dir, "output directory");

    ReportOpts report;
    auto* c_report = app.add_subcommand("report", "bundle JSON summaries from an output tree");
    c_report->add_option("--in-dir", report.in_dir, "directory to scan for summaries");
    c_report->add_option("--out", report.out_file, "bundle file to write");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (schema != kSchemaVersion) {
        std::cerr << "unsupported schema version " << schema << "\n";
        return kExitConfig;
    }

    try {
        if (c_laws->parsed()) return cmd_laws(laws, app);
        if (c_chain->parsed()) return cmd_chain(chain, app);
        if (c_grow->parsed()) return cmd_grow(grow, app);
        if (c_perc->parsed()) return cmd_perc(perc, app);
        if (c_gof->parsed()) return cmd_gof(gof, app);
        if (c_report->parsed()) return cmd_report(report);
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.status == UIPT_EBUDGET) return kExitBudget;
        if (e.status == UIPT_EINVAL) return kExitConfig;
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
