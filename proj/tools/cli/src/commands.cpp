#include "pdestab_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "pdestab/certificate.hpp"
#include "pdestab/monitor.hpp"
#include "pdestab/trace_io.hpp"

namespace pdestab::cli {

namespace fs = std::filesystem;

int exit_code_for(const Error& e) noexcept {
    switch (e.kind()) {
        case ErrorKind::io: return io_error;
        case ErrorKind::hypothesis_violation:
        case ErrorKind::certificate_inapplicable:
        case ErrorKind::oracle_divergence:
        case ErrorKind::insufficient_data: return failure;
        default: return input_error;
    }
}

namespace {

StabilityCertificate certify(const Scenario& s, const Kernel& k, const ReactionTerm& f) {
    return build_certificate(k, s.r, s.p, f, s.epsilon);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
    return in;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace

int run_certify(const Scenario& s, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Kernel k = s.make_kernel();
        const ReactionTerm f = s.make_reaction();
        out << "scenario = " << s.name << '\n';
        StabilityCertificate cert;
        try {
            cert = certify(s, k, f);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::hypothesis_violation) throw;
            out << "valid = false\nfailed = r_sign\n";
            err << "error: " << e.what() << '\n';
            return int{failure};
        }
        out << certificate_report(cert).str();
        return cert.valid() ? int{ok} : int{failure};
    });
}

int run_simulate(const Scenario& s, Method method, const std::string& prefix, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Kernel k = s.make_kernel();
        const ReactionTerm f = s.make_reaction();
        const InitialCondition u0 = s.make_initial_condition(k);
        const SimulationTrace trace = method == Method::fd ? simulate_fd(s.solver, k, s.r, s.p, f, u0)
                                                           : simulate_spectral(s.solver, k, s.r, s.p, f, u0);
        const std::string hash = scenario_hash(s);
        {
            auto file = open_output(prefix + "_trace.csv");
            write_trace_csv(file, trace, hash);
            if (!file) throw Error(ErrorKind::io, "write failed for '" + prefix + "_trace.csv'");
        }
        {
            auto file = open_output(prefix + "_snapshots.csv");
            write_snapshots_csv(file, trace, hash);
            if (!file) throw Error(ErrorKind::io, "write failed for '" + prefix + "_snapshots.csv'");
        }
        KeyValueReport rep;
        rep.add("scenario", s.name);
        rep.add("method", trace.method);
        rep.add("terminated_by", std::string(to_string(trace.terminated_by)));
        rep.add("samples", trace.size());
        rep.add("t_final", trace.times.empty() ? 0.0 : trace.times.back());
        rep.add("l2_initial", trace.l2_norms.empty() ? 0.0 : trace.l2_norms.front());
        rep.add("l2_final", trace.l2_norms.empty() ? 0.0 : trace.l2_norms.back());
        rep.add("trace_file", prefix + "_trace.csv");
        rep.add("snapshot_file", prefix + "_snapshots.csv");
        out << rep.str();
        return trace.terminated_by == Termination::blowup_detected ? int{blowup} : int{ok};
    });
}

int run_verify(const Scenario& s, const std::string& prefix, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        TraceHeader header;
        SimulationTrace trace;
        {
            auto file = open_input(prefix + "_trace.csv");
            trace = read_trace_csv(file, header);
        }
        const std::string hash = scenario_hash(s);
        if (header.scenario_hash != hash) {
            err << "error: trace was produced by a different scenario (hash " << header.scenario_hash
                << ", expected " << hash << ")\n";
            return int{input_error};
        }
        const Kernel k = s.make_kernel();
        const ReactionTerm f = s.make_reaction();
        const InitialCondition u0 = s.make_initial_condition(k);
        const StabilityCertificate cert = certify(s, k, f);
        out << "scenario = " << s.name << '\n';
        out << "certificate_valid = " << (cert.valid() ? "true" : "false") << '\n';
        if (!cert.valid()) {
            err << "error: no valid certificate; estimates are not applicable\n";
            return int{failure};
        }
        const EstimateReport rep = check_estimates(trace, cert, psi_bound(cert, k, f), k, u0);
        out << "terminated_by = " << to_string(trace.terminated_by) << '\n';
        out << estimate_report(rep).str();
        return rep.all_ok() ? int{ok} : int{failure};
    });
}

int run_properties(PropertySuite suite, const SuiteOptions& options, std::ostream& out) {
    const auto results = run_property_suite(suite, options);
    KeyValueReport rep;
    rep.add("suite", std::string(to_string(suite)));
    rep.add("seed", std::to_string(options.seed));
    out << rep.str() << suite_report(results).str();
    for (const auto& r : results) {
        if (r.violations > 0) return failure;
    }
    return ok;
}

namespace {

std::size_t batch_threads(std::size_t jobs) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PDE_STAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = std::min(n, static_cast<std::size_t>(v));
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

int run_one(const fs::path& file, const fs::path& out_dir, std::ostream& out) {
    std::ostringstream err;
    int code = ok;
    Scenario s;
    try {
        s = load_scenario(file.string());
    } catch (const Error& e) {
        out << "[" << file.filename().string() << "] load: exit " << exit_code_for(e) << " (" << e.what() << ")\n";
        return exit_code_for(e);
    }
    const std::string prefix = (out_dir / file.stem()).string();
    std::ostringstream sink;
    const int c = run_certify(s, sink, err);
    const int m = run_simulate(s, Method::fd, prefix, sink, err);
    const int v = (c == ok && m == ok) ? run_verify(s, prefix, sink, err) : failure;
    code = std::max({c, m, v});
    out << "[" << file.filename().string() << "] certify=" << c << " simulate=" << m << " verify=" << v
        << " exit=" << code << '\n';
    if (!err.str().empty()) out << err.str();
    return code;
}

}  // namespace

int run_batch(const std::string& dir, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << "error: '" << dir << "' is not a directory\n";
        return io_error;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    const fs::path out_dir = fs::path(dir) / "out";
    fs::create_directories(out_dir, ec);
    if (ec) {
        err << "error: cannot create '" << out_dir.string() << "'\n";
        return io_error;
    }

    std::vector<std::string> logs(files.size());
    std::vector<int> codes(files.size(), ok);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            std::ostringstream log;
            codes[i] = run_one(files[i], out_dir, log);
            logs[i] = log.str();
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n = batch_threads(files.size());
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int worst = ok;
    for (std::size_t i = 0; i < files.size(); ++i) {
        out << logs[i];
        worst = std::max(worst, codes[i]);
    }
    out << "scenarios = " << files.size() << "\nexit = " << worst << '\n';
    return worst;
}

}  // namespace pdestab::cli
