#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "picard/picard.hpp"

using namespace picard;
using report::num;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long long coset_norm_bound = TruncationConfig{}.coset_norm_bound;
    long long lattice_norm_bound = TruncationConfig{}.lattice_norm_bound;
    double tol = 1e-10;
    std::uint64_t seed = verify::SuiteConfig{}.seed;
    int index_gamma_inf = 4;
    int threads = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "csv";
    std::string out;

    // verify
    std::string suite;
    // eval
    std::string series = "scalar", route = "both";
    double l = 0, k = 0, m = 0, s_re = 2, s_im = 0;
    std::vector<double> point = {0, 0, 1};
    // scan
    std::string task = "incomplete";
    double t_min = 50, t_max = 200, a = 0, b = 0, p = 0, q = 0, r = 0;
    int steps = 4;
    bool exact_laurent = false;

    TruncationConfig truncation() const {
        TruncationConfig t;
        t.coset_norm_bound = coset_norm_bound;
        t.lattice_norm_bound = lattice_norm_bound;
        t.bessel_tol = tol;
        t.quadrature_tol = tol;
        t.index_gamma_inf = index_gamma_inf;
        return t;
    }

    void validate() const {
        if (coset_norm_bound < 1 || lattice_norm_bound < 1) throw UsageError("bounds must be positive");
        if (!(tol > 0)) throw UsageError("--tol must be positive");
        if (index_gamma_inf < 1) throw UsageError("--index-gamma-inf must be positive");
        if (threads < 1) throw UsageError("--threads must be >= 1");
        if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    }

    // worker count is deliberately absent: outputs do not depend on it
    report::Metadata global_meta(const std::string &command) const {
        return {{"command", command},
                {"coset_norm_bound", std::to_string(coset_norm_bound)},
                {"lattice_norm_bound", std::to_string(lattice_norm_bound)},
                {"tol", num(tol)},
                {"seed", std::to_string(seed)},
                {"index_gamma_infinity", std::to_string(index_gamma_inf)},
                {"format", format}};
    }
};

template <class T>
void take(const json &cfg, const char *key, T &dst, const CLI::App *app, const char *opt) {
    if (app && opt && app->count(opt) > 0) return; // flag given: command line wins
    if (!cfg.contains(key)) return;
    try {
        dst = cfg.at(key).get<T>();
    } catch (const json::exception &e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

json load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw UsageError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must contain a JSON object");
    static const std::vector<std::string> known = {"coset_norm_bound", "lattice_norm_bound", "tol", "seed", "index_gamma_infinity",
                                                   "threads", "format", "out", "suite", "series", "route", "l", "k", "m",
                                                   "s_re", "s_im", "point", "task", "t_min", "t_max", "steps", "a", "b", "p", "q", "r",
                                                   "exact_laurent"};
    for (auto &[key, v] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("unknown config key '" + key + "'");
    return j;
}

void emit(const RunConfig &rc, const std::string &text) {
    if (rc.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + rc.out);
    f << text;
    f.close();
    if (!f) throw std::runtime_error("write failed for " + rc.out);
}

int cmd_verify(const RunConfig &rc) {
    std::vector<std::string> names;
    if (rc.suite == "all") {
        names = verify::suite_names();
    } else if (std::find(verify::suite_names().begin(), verify::suite_names().end(), rc.suite) != verify::suite_names().end()) {
        names = {rc.suite};
    } else {
        throw UsageError("unknown suite '" + rc.suite + "' (expected wigner, lattice, lfunctions, eisenstein, appendix, mellin, microlocal or all)");
    }
    verify::SuiteConfig sc;
    sc.truncation = rc.truncation();
    sc.seed = rc.seed;
    sc.tol = rc.tol;
    std::vector<verify::SuiteReport> reports;
    for (auto &n : names) {
        reports.push_back(verify::run_suite(n, sc));
        auto &r = reports.back();
        std::fprintf(stderr, "%-11s %s  (%.1f s)\n", r.suite.c_str(), r.pass() ? "PASS" : "FAIL", r.seconds);
        for (auto &c : r.checks)
            std::fprintf(stderr, "  %-4s %-66s %.3e (tol %.1e)\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.tolerance);
    }
    auto meta = rc.global_meta("verify");
    meta.push_back({"suite", rc.suite});
    emit(rc, rc.format == "json" ? report::suites_json(reports, meta) : report::suites_csv(reports, meta));
    bool ok = std::all_of(reports.begin(), reports.end(), [](const verify::SuiteReport &r) { return r.pass(); });
    return ok ? 0 : 1;
}

int cmd_eval(const RunConfig &rc) {
    if (rc.series != "scalar" && rc.series != "general") throw UsageError("series must be scalar or general");
    if (rc.route != "coset" && rc.route != "fourier" && rc.route != "both") throw UsageError("route must be coset, fourier or both");
    if (rc.point.size() != 3) throw UsageError("point needs three numbers: x y lambda");
    if (!(rc.point[2] > 0)) throw UsageError("point: lambda must be > 0");
    SpectralIndex ix;
    try {
        ix = rc.series == "scalar" ? SpectralIndex(0, 0, 0) : SpectralIndex(rc.l, rc.k, rc.m);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    cplx s(rc.s_re, rc.s_im);
    bool want_coset = rc.route != "fourier", want_fourier = rc.route != "coset";
    if (want_coset && !(rc.s_re > 1)) throw UsageError("coset route requires s_re > 1");
    H3Point p(rc.point[0], rc.point[1], rc.point[2]);
    TruncationConfig tc = rc.truncation();
    std::optional<CosetSumResult> cs;
    std::optional<FourierValue> fv;
    if (want_coset) cs = eisenstein_coset_sums({ix}, GroupElementSL2C::at(p), s, tc.coset_norm_bound)[0];
    if (want_fourier) fv = FourierExpansion(ix, s, tc).evaluate(p);
    std::optional<double> dev;
    if (cs && fv) dev = rel_dev(cs->value, fv->value);

    auto meta = rc.global_meta("eval");
    meta.insert(meta.end(), {{"series", rc.series}, {"l", num(ix.l())}, {"k", num(ix.k())}, {"m", num(ix.m())},
                             {"s_re", num(rc.s_re)}, {"s_im", num(rc.s_im)}, {"point", num(p.x) + " " + num(p.y) + " " + num(p.lambda)},
                             {"route", rc.route}});
    std::ostringstream os;
    if (rc.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = report::meta_json(meta);
        if (cs) {
            j["coset"]["value"] = {report::jnum(cs->value.real()), report::jnum(cs->value.imag())};
            j["coset"]["tail"] = report::jnum(cs->tail);
        }
        if (fv) {
            j["fourier"]["value"] = {report::jnum(fv->value.real()), report::jnum(fv->value.imag())};
            j["fourier"]["tail"] = report::jnum(fv->tail);
        }
        if (dev) j["relative_deviation"] = report::jnum(*dev);
        os << report::dump(j);
    } else {
        os << report::csv_header(meta) << "quantity,re,im\n";
        if (cs) os << "coset," << num(cs->value.real()) << "," << num(cs->value.imag()) << "\ncoset_tail," << num(cs->tail) << ",0\n";
        if (fv) os << "fourier," << num(fv->value.real()) << "," << num(fv->value.imag()) << "\nfourier_tail," << num(fv->tail) << ",0\n";
        if (dev) os << "relative_deviation," << num(*dev) << ",0\n";
    }
    emit(rc, os.str());
    return 0;
}

int cmd_scan(const RunConfig &rc) {
    if (rc.task != "incomplete" && rc.task != "cusp") throw UsageError("task must be incomplete or cusp");
    if (!(rc.t_min > 0) || !(rc.t_max > rc.t_min)) throw UsageError("scan requires 0 < t_min < t_max");
    if (rc.steps < 2) throw UsageError("scan requires steps >= 2");
    ScanConfig sc;
    try {
        if (rc.task == "cusp") {
            sc.task = ScanTask::cusp;
            sc.cusp.l = rc.l, sc.cusp.p = rc.p, sc.cusp.q = rc.q, sc.cusp.r = rc.r;
            sc.cusp.validate();
        } else {
            sc.index = SpectralIndex(rc.l, rc.a, rc.b);
        }
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    sc.pairing.truncation = rc.truncation();
    sc.pairing.exact_laurent = rc.exact_laurent;
    std::vector<double> grid(rc.steps);
    for (int i = 0; i < rc.steps; ++i) grid[i] = rc.t_min + (rc.t_max - rc.t_min) * i / (rc.steps - 1);
    auto rows = scan_t(sc, grid);

    auto meta = rc.global_meta("scan");
    meta.insert(meta.end(), {{"task", rc.task}, {"l", num(rc.l)}});
    if (rc.task == "cusp")
        meta.insert(meta.end(), {{"p", num(rc.p)}, {"q", num(rc.q)}, {"r", num(rc.r)}});
    else
        meta.insert(meta.end(), {{"a", num(rc.a)}, {"b", num(rc.b)}, {"exact_laurent", rc.exact_laurent ? "true" : "false"}});
    meta.insert(meta.end(), {{"t_min", num(rc.t_min)}, {"t_max", num(rc.t_max)}, {"steps", std::to_string(rc.steps)}});
    std::ostringstream os;
    if (rc.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = report::meta_json(meta);
        j["rows"] = nlohmann::ordered_json::array();
        for (auto &r : rows)
            j["rows"].push_back({{"t", report::jnum(r.t)}, {"value_re", report::jnum(r.value.real())}, {"value_im", report::jnum(r.value.imag())},
                                 {"main_term", report::jnum(r.main_term.real())}, {"value_over_lnt", report::jnum(r.value_over_lnt)}});
        os << report::dump(j);
    } else {
        os << report::csv_header(meta) << "t,value_re,value_im,main_term,value_over_lnt\n";
        for (auto &r : rows)
            os << num(r.t) << "," << num(r.value.real()) << "," << num(r.value.imag()) << "," << num(r.main_term.real()) << ","
               << num(r.value_over_lnt) << "\n";
    }
    emit(rc, os.str());
    return 0;
}

void apply_config(RunConfig &rc, const json &cfg, CLI::App &app, CLI::App &verify, CLI::App &eval, CLI::App &scan) {
    take(cfg, "coset_norm_bound", rc.coset_norm_bound, &app, "--coset-bound");
    take(cfg, "lattice_norm_bound", rc.lattice_norm_bound, &app, "--lattice-bound");
    take(cfg, "tol", rc.tol, &app, "--tol");
    take(cfg, "seed", rc.seed, &app, "--seed");
    take(cfg, "index_gamma_infinity", rc.index_gamma_inf, &app, "--index-gamma-inf");
    take(cfg, "threads", rc.threads, &app, "--threads");
    take(cfg, "format", rc.format, &app, "--format");
    take(cfg, "out", rc.out, &app, "--out");
    take(cfg, "series", rc.series, &eval, "--series");
    take(cfg, "route", rc.route, &eval, "--route");
    take(cfg, "s_re", rc.s_re, &eval, "--s-re");
    take(cfg, "s_im", rc.s_im, &eval, "--s-im");
    take(cfg, "point", rc.point, &eval, "--point");
    take(cfg, "k", rc.k, &eval, "--k");
    take(cfg, "m", rc.m, &eval, "--m");
    CLI::App &l_owner = eval.parsed() ? eval : scan;
    take(cfg, "l", rc.l, &l_owner, "--l");
    take(cfg, "task", rc.task, &scan, "--task");
    take(cfg, "t_min", rc.t_min, &scan, "--t-min");
    take(cfg, "t_max", rc.t_max, &scan, "--t-max");
    take(cfg, "steps", rc.steps, &scan, "--steps");
    take(cfg, "a", rc.a, &scan, "--a");
    take(cfg, "b", rc.b, &scan, "--b");
    take(cfg, "p", rc.p, &scan, "--p");
    take(cfg, "q", rc.q, &scan, "--q");
    take(cfg, "r", rc.r, &scan, "--r");
    take(cfg, "exact_laurent", rc.exact_laurent, &scan, "--exact-laurent");
    take(cfg, "suite", rc.suite, &verify, "suite");
}

} // namespace

int main(int argc, char **argv) {
    RunConfig rc;
    std::string config_path;
    CLI::App app{"Eisenstein series for the Picard group: evaluation, verification and pairing scans"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path, "JSON config file (snake_case keys; command-line flags take precedence)");
    app.add_option("--out", rc.out, "write the machine-readable table here instead of stdout");
    app.add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--coset-bound", rc.coset_norm_bound, "coset enumeration bound on |c|^2 + |d|^2");
    app.add_option("--lattice-bound", rc.lattice_norm_bound, "Fourier frequency bound on N(2w)");
    app.add_option("--tol", rc.tol, "Bessel and quadrature tolerance");
    app.add_option("--seed", rc.seed, "seed for randomized checks");
    app.add_option("--index-gamma-inf", rc.index_gamma_inf, "index of the cusp stabilizer in the first constant term");
    app.add_option("--threads", rc.threads, "worker threads (results do not depend on it)");

    auto *verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", rc.suite, "wigner, lattice, lfunctions, eisenstein, appendix, mellin, microlocal or all")->required();

    auto *eval = app.add_subcommand("eval", "evaluate one Eisenstein series at one point");
    eval->add_option("--series", rc.series, "scalar or general");
    eval->add_option("--l", rc.l);
    eval->add_option("--k", rc.k);
    eval->add_option("--m", rc.m);
    eval->add_option("--s-re", rc.s_re);
    eval->add_option("--s-im", rc.s_im);
    eval->add_option("--point", rc.point, "x y lambda")->expected(3);
    eval->add_option("--route", rc.route, "coset, fourier or both");

    auto *scan = app.add_subcommand("scan", "scan a pairing over a linear grid in t");
    scan->add_option("--task", rc.task, "incomplete or cusp");
    scan->add_option("--t-min", rc.t_min);
    scan->add_option("--t-max", rc.t_max);
    scan->add_option("--steps", rc.steps);
    scan->add_option("--l", rc.l);
    scan->add_option("--a", rc.a);
    scan->add_option("--b", rc.b);
    scan->add_option("--p", rc.p);
    scan->add_option("--q", rc.q);
    scan->add_option("--r", rc.r);
    scan->add_flag("--exact-laurent", rc.exact_laurent, "use the exact Laurent coefficient in the residue");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (!config_path.empty()) apply_config(rc, load_config(config_path), app, *verify, *eval, *scan);
        rc.validate();
        parallel::set_threads(rc.threads);
        if (verify->parsed()) return cmd_verify(rc);
        if (eval->parsed()) return cmd_eval(rc);
        return cmd_scan(rc);
    } catch (const UsageError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
