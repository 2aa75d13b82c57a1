#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "alloy/error.hpp"
#include "alloy/parallel.hpp"
#include "commands.hpp"

using namespace lab;

namespace {

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

std::string render_csv(const Table& t) {
    std::string s = csv_line(t.header) + "\n";
    for (const auto& row : t.rows) s += csv_line(row) + "\n";
    return s;
}

std::string render_summary(const Result& r) {
    std::string s = csv_line({"check", "value", "bound", "margin", "pass"}) + "\n";
    for (const auto& row : r.summary) {
        double margin = row.lower ? row.value - row.bound : row.bound - row.value;
        std::string pass = row.asserted ? (row.pass ? "true" : "false") : "n/a";
        s += csv_line({row.check, num(row.value), num(row.bound), num(margin), pass}) + "\n";
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alloy-lab: numerical checks for the discrete alloy-type model"};
    app.require_subcommand(1);
    Common common;
    Params p;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", common.config, "YAML model file");
        if (config_required) opt->required();
        sub->add_option("--seed", common.seed, "Monte Carlo seed (overrides the model file)");
        sub->add_option("--lambda", common.lambda, "disorder strength (overrides the model file)");
        sub->add_option("--out", common.out, "CSV output path (default <command>.csv)");
        sub->add_option("--summary", common.summary, "summary CSV path (default <command>.summary.csv)");
        sub->add_option("--threads", common.threads, "worker threads (overrides ALLOY_THREADS)");
    };

    std::map<std::string, std::function<Result(const Common&, const Params&)>> table;
    auto sub = [&](const char* name, const char* help, auto fn, bool config_required = true) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, config_required);
        table[name] = fn;
        return s;
    };

    auto* spectrum = sub("spectrum", "eigenvalues of H on the cube of radius L", cmd_spectrum);
    spectrum->add_option("--L", p.L, "cube radius");

    auto* green = sub("green-identities", "Schur and resolvent identities on random instances", cmd_green_identities);
    green->add_option("--L", p.L, "radius of the middle cube");
    green->add_option("--instances", p.instances);

    auto* avg = sub("averaging", "averaging bounds with the model density", cmd_averaging);
    avg->add_option("--s", p.s, "exponent in (0,1)");
    avg->add_option("--instances", p.instances);
    avg->add_option("--trials", p.trials, "Monte Carlo trials for the multi-variable average");

    auto* mom = sub("moments", "E|G(z;x,y)|^s over a cube", cmd_moments);
    mom->add_option("--L", p.L);
    mom->add_option("--x", p.x, "first coordinate of x");
    mom->add_option("--s", p.s);
    mom->add_option("--re", p.re);
    mom->add_option("--im", p.im);
    mom->add_option("--trials", p.trials);

    auto* decay = sub("decay", "one-dimensional decay profile against the explicit bound", cmd_decay);
    decay->add_option("--sites", p.sites);
    decay->add_option("--s", p.s);
    decay->add_option("--re", p.re);
    decay->add_option("--im", p.im);
    decay->add_option("--trials", p.trials);

    auto* fv = sub("finite-volume", "boundary sum of the finite-volume criterion", cmd_finite_volume);
    fv->add_option("--R", p.R, "radius of the region");
    fv->add_option("--L", p.L, "annulus scale");
    fv->add_option("--s", p.s);
    fv->add_option("--re", p.re);
    fv->add_option("--im", p.im);
    fv->add_option("--trials", p.trials);

    auto* weg = sub("wegner", "mean eigenvalue count against the Wegner bound", cmd_wegner);
    weg->add_option("--l", p.l, "box radius");
    weg->add_option("--a", p.a);
    weg->add_option("--b", p.b);
    weg->add_option("--trials", p.trials);

    auto* pc = sub("poscomb", "leading derivative, exhaustion radius and covering sum", cmd_poscomb);
    pc->add_option("--l", p.l);

    auto* reg = sub("regularity", "pair regularity frequency on an energy grid", cmd_regularity);
    reg->add_option("--L", p.L);
    reg->add_option("--sep", p.sep, "distance between the two cubes (default: smallest allowed)");
    reg->add_option("--a", p.a);
    reg->add_option("--b", p.b);
    reg->add_option("--grid", p.grid, "grid points");
    reg->add_option("--m", p.m, "mass");
    reg->add_option("--trials", p.trials);

    auto* cond = sub("conditional", "Gaussian conditionals; pinning check when --config is given", cmd_conditional,
                     false);
    cond->add_option("--u", p.u, "u(-1)");
    cond->add_option("--sigma", p.sigma);
    cond->add_option("--lmax", p.lmax);
    cond->add_option("--delta", p.delta);
    cond->add_option("--delta-prime", p.delta_prime);
    cond->add_option("--attempts", p.attempts);
    cond->add_flag("--literal-index", p.literal_index, "sum s_l from i = 1 instead of i = 0");

    auto* apr = sub("apriori", "nonlocal a-priori bound over a ladder of chains", cmd_apriori);
    apr->add_option("--s", p.s);
    apr->add_option("--re", p.re);
    apr->add_option("--im", p.im);
    apr->add_option("--trials", p.trials);
    apr->add_option("--sites", p.ladder, "chain lengths");
    apr->add_option("--sep", p.sep, "y for the weighted-potential check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (common.threads > 0) {
        alloy::set_threads(common.threads);
    } else if (const char* env = std::getenv("ALLOY_THREADS")) {
        alloy::set_threads(std::atoi(env));
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Result r;
    try {
        r = table.at(name)(common, p);
    } catch (const alloy::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const alloy::precondition_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const std::string out = common.out.empty() ? name + ".csv" : common.out;
    const std::string sum = common.summary.empty() ? name + ".summary.csv" : common.summary;
    if (!write_file(out, render_csv(r.csv)) || !write_file(sum, render_summary(r))) {
        std::cerr << "cannot write output files\n";
        return 1;
    }

    bool all_pass = true;
    fmt::print("{}: {}\n", name, r.anchor);
    for (const auto& note : r.notes) fmt::print("  {}\n", note);
    for (const auto& row : r.summary) {
        const char* tag = !row.asserted ? "info" : row.pass ? "PASS" : "FAIL";
        if (row.asserted && !row.pass) all_pass = false;
        if (row.asserted)
            fmt::print("  [{}] {} = {:.6g} ({} {:.6g})\n", tag, row.check, row.value, row.lower ? ">=" : "<=",
                       row.bound);
        else
            fmt::print("  [{}] {} = {:.6g}\n", tag, row.check, row.value);
    }
    fmt::print("  wrote {} and {}\n", out, sum);
    return all_pass ? 0 : 2;
}
