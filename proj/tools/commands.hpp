#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alloy/config.hpp"

namespace lab {

// A CSV table; cells are already formatted.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct SummaryRow {
    std::string check;
    double value = 0;
    double bound = 0;
    bool asserted = true;  // informational rows never fail the run
    bool pass = true;
    bool lower = false;    // value must stay above bound; margin = value - bound
};

struct Result {
    std::string anchor;  // the statement being exercised
    Table csv;
    std::vector<SummaryRow> summary;
    std::vector<std::string> notes;  // extra lines for the console report
};

// Flags shared by every subcommand.
struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> lambda;
    std::string out, summary;
    int threads = 0;
};

struct Params {
    // boxes and sites
    int L = 4, sites = 60, l = 5, R = 10, x = 0, y = 0, sep = 0;
    // energies and exponents
    double s = 0.5, re = 0.0, im = 0.5, a = -0.1, b = 0.1, m = 0.1;
    long trials = 1000, instances = 20;
    int grid = 11;
    // gaussian / pinning
    double u = 0.5, sigma = 1.0, delta = 0.05, delta_prime = 0.05;
    int lmax = 6;
    bool literal_index = false;  // s_l summed from i = 1 (disagrees with the oracle)
    long attempts = 100000;
    std::vector<int> ladder{5, 10, 20, 40};
};

// Loads the model file, applying the lambda override and the seed from flags
// (flag wins). need_seed: Monte Carlo commands refuse to run without one.
struct Loaded {
    alloy::ModelConfig model;
    std::uint64_t seed = 0;
};
Loaded load(const Common& c, bool need_seed);

Result cmd_spectrum(const Common& c, const Params& p);
Result cmd_green_identities(const Common& c, const Params& p);
Result cmd_averaging(const Common& c, const Params& p);
Result cmd_moments(const Common& c, const Params& p);
Result cmd_decay(const Common& c, const Params& p);
Result cmd_finite_volume(const Common& c, const Params& p);
Result cmd_wegner(const Common& c, const Params& p);
Result cmd_poscomb(const Common& c, const Params& p);
Result cmd_regularity(const Common& c, const Params& p);
Result cmd_conditional(const Common& c, const Params& p);
Result cmd_apriori(const Common& c, const Params& p);

// Fixed-precision formatting so reruns are byte-identical.
std::string num(double v);
std::string csv_line(const std::vector<std::string>& cells);

}  // namespace lab
