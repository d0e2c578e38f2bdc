#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <string>

#include "ambsec/montecarlo.hpp"

// Flat-file output. All CSVs carry a header row, comma separators, LF line
// endings, and numbers printed with up to 15 significant digits so reruns
// byte-compare.
namespace ambsec {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

inline std::string trial_records_csv(std::span<const TrialRecord> records) {
    std::string out = "trial,scheme,sweep_value,alpha,omega,secrecy,iterations,converged\n";
    for (const TrialRecord& r : records) {
        out += std::to_string(r.trial);
        out += ',';
        out += to_string(r.scheme);
        out += ',';
        out += format_double(r.sweep_value);
        out += ',';
        out += format_double(r.alpha);
        out += ',';
        out += format_double(r.omega);
        out += ',';
        out += format_double(r.secrecy);
        out += ',';
        out += std::to_string(r.iterations);
        out += ',';
        out += r.converged ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline std::string aggregates_csv(std::span<const TrialAggregate> aggregates) {
    std::string out = "scheme,sweep_value,mean_secrecy,stderr,mean_iterations,n_nonconverged\n";
    for (const TrialAggregate& a : aggregates) {
        out += to_string(a.scheme);
        out += ',';
        out += format_double(a.sweep_value);
        out += ',';
        out += format_double(a.mean_secrecy);
        out += ',';
        out += format_double(a.stderr_mean);
        out += ',';
        out += format_double(a.mean_iterations);
        out += ',';
        out += std::to_string(a.n_nonconverged);
        out += '\n';
    }
    return out;
}

inline std::string trace_csv(std::span<const TraceRow> rows) {
    std::string out = "iter,objective,zeta,lambda,alpha,omega\n";
    for (const TraceRow& r : rows) {
        out += std::to_string(r.iter);
        out += ',';
        out += format_double(r.objective);
        out += ',';
        out += format_double(r.zeta);
        out += ',';
        out += format_double(r.lambda);
        out += ',';
        out += format_double(r.alpha);
        out += ',';
        out += format_double(r.omega);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace ambsec
