#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <vector>

#include <Eigen/Dense>
#include <omp.h>

namespace alloy {

// Serial is the reference path; parallel must give bitwise identical results
// because every trial writes its own slot and reductions run afterwards in
// trial order.
enum class Exec { serial, parallel };

// Caps the OpenMP team size used by the parallel kernels (<= 0 leaves it alone).
inline void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

// rows(trial) = f(trial) for every trial; f returns an Eigen vector of fixed length k.
template <class F>
Eigen::MatrixXd map_trials(long trials, long k, Exec exec, F&& f) {
    Eigen::MatrixXd out(trials, k);
    std::exception_ptr err = nullptr;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long t = 0; t < trials; ++t) {
            try {
                out.row(t) = f(t).transpose();
            } catch (...) {
#pragma omp critical(alloy_trial_error)
                if (!err) err = std::current_exception();
            }
        }
    } else {
        for (long t = 0; t < trials; ++t) out.row(t) = f(t).transpose();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

struct SampleStats {
    double mean = 0;
    double std_error = 0;
    long n = 0;
};

// Mean and standard error of a column, summed in row order.
inline SampleStats summarize(const Eigen::MatrixXd& samples, long col = 0) {
    SampleStats s;
    s.n = samples.rows();
    if (s.n == 0) return s;
    double sum = 0;
    for (long i = 0; i < s.n; ++i) sum += samples(i, col);
    s.mean = sum / static_cast<double>(s.n);
    if (s.n < 2) return s;
    double ss = 0;
    for (long i = 0; i < s.n; ++i) {
        double d = samples(i, col) - s.mean;
        ss += d * d;
    }
    s.std_error = std::sqrt(ss / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
    return s;
}

}  // namespace alloy
