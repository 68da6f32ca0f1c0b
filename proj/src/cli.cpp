#include "blab/cli.hpp"

#include "blab/increment.hpp"
#include "blab/parse.hpp"
#include "blab/sets.hpp"
#include "blab/spectrum.hpp"
#include "blab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace blab::cli {

namespace {

GSet set_from_options(const Group& g, const std::string& inline_set,
                      const std::string& file, int line_index = 0) {
    std::string text = inline_set;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open set file: " + file);
        std::string line;
        int seen = 0;
        text.clear();
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (seen++ == line_index) {
                text = line;
                break;
            }
        }
        if (text.empty()) throw std::invalid_argument("set file is missing line " +
                                                      std::to_string(line_index));
    }
    if (text.empty()) throw std::invalid_argument("no set given; use --set or --file");
    GSet s(g);
    for (std::int64_t v : parse_int_list(text)) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= g.size())
            throw std::invalid_argument("set element out of range: " + std::to_string(v));
        s.insert(static_cast<Index>(v));
    }
    return s;
}

void deliver(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << payload;
}

} // namespace

std::string scan_csv(std::int64_t n_min, std::int64_t n_max, const std::string& generator,
                     std::uint64_t seed) {
    if (n_min < 8) throw std::invalid_argument("scan needs n_min >= 8");
    if (generator != "greedy" && generator != "behrend")
        throw std::invalid_argument("unknown generator: " + generator);
    (void)seed; // generators are deterministic; the seed is part of the config contract

    std::ostringstream os;
    os.precision(12);
    os << "N,set_size,sumset_size,K,bound_value,is_ap3_free\n";
    for (std::int64_t n = n_min; n <= n_max; n *= 2) {
        const ZSet a = generator == "greedy" ? gen_greedy_apfree(n) : gen_behrend(n);
        const ZSet aa = zset_sumset(a, a);
        const double k =
            static_cast<double>(aa.size()) / static_cast<double>(a.size());
        const double la = std::log(static_cast<double>(a.size()));
        const double lla = std::log(la);
        const double bound = std::cbrt(la / (lla * lla * lla));
        const bool free = is_ap3_free_z(a);
        os << n << ',' << a.size() << ',' << aa.size() << ',' << k << ',' << bound << ','
           << (free ? 1 : 0) << '\n';
    }
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"workbench for Fourier analysis on finite abelian groups, Bohr sets and "
                 "density increments"};
    app.require_subcommand(1);

    std::string group_text, set_text, other_text, file_path, out_path, system_text;
    std::string mode_text = "practical", gen_text = "greedy", suite_text;
    std::uint64_t seed = 0;
    double tol = 1e-9, eps = 0.5, delta = 0.25, rho = 1.0;
    std::int64_t n_min = 256, n_max = 16384;
    int budget = 32;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_text, "group literal, e.g. Z16 or Z2xZ3");
        cmd->add_option("--set", set_text, "comma-separated flat indices");
        cmd->add_option("--file", file_path, "read sets from a file, one per line");
        cmd->add_option("--seed", seed, "seed for randomized corpora");
        cmd->add_option("--out", out_path, "write output to a file");
        cmd->add_option("--tol", tol, "numeric tolerance");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite_text, "fourier|bohr|bourgain|local|spectrum|freiman|increment|all")
        ->required();
    add_common(verify);

    CLI::App* scan = app.add_subcommand("scan", "sumset growth of progression-free generators");
    scan->add_option("nmin", n_min, "smallest n (>= 8)")->required();
    scan->add_option("nmax", n_max, "largest n")->required();
    scan->add_option("--gen", gen_text, "greedy|behrend");
    add_common(scan);

    CLI::App* ap3 = app.add_subcommand("ap3", "count three-term progressions in a set");
    add_common(ap3);

    CLI::App* sum = app.add_subcommand("sumset", "sumset or restricted sumset of two sets");
    bool restricted = false;
    sum->add_option("--other", other_text, "second set (defaults to the first)");
    sum->add_flag("--restricted", restricted, "exclude equal summands");
    add_common(sum);

    CLI::App* chang = app.add_subcommand("chang", "small-doubling system report");
    bool eps_given = false;
    chang->add_option("--eps", eps, "also report a dissociated basis at this threshold")
        ->each([&](const std::string&) { eps_given = true; });
    add_common(chang);

    CLI::App* trace = app.add_subcommand("trace", "density-increment iteration trace");
    trace->add_option("--mode", mode_text, "paper|practical");
    trace->add_option("--budget", budget, "step budget");
    trace->add_option("--system", system_text, "ambient system descriptor");
    add_common(trace);

    CLI::App* bohr = app.add_subcommand("bohr", "materialize a system descriptor");
    std::string freqs_text;
    bohr->add_option("--system", system_text, "system descriptor");
    bohr->add_option("--rho", rho, "radius in (0,2]");
    bohr->add_option("--freqs", freqs_text, "frequencies for a direct bohr set");
    bohr->add_option("--delta", delta, "radius for a direct bohr set");
    add_common(bohr);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (verify->parsed()) {
            std::vector<std::string> names;
            if (suite_text == "all")
                names = suite_names();
            else
                names.push_back(suite_text);
            for (const auto& n : names) {
                bool known = false;
                for (const auto& s : suite_names()) known = known || s == n;
                if (!known) {
                    err << "unknown suite: " << n << '\n';
                    return 2;
                }
            }
            std::ostringstream os;
            bool all_ok = true;
            for (const auto& n : names) {
                const SuiteReport rep = run_suite(n, seed);
                os << format_report(rep);
                all_ok = all_ok && rep.all_pass();
            }
            deliver(os.str(), out_path, out);
            return all_ok ? 0 : 1;
        }

        if (scan->parsed()) {
            deliver(scan_csv(n_min, n_max, gen_text, seed), out_path, out);
            return 0;
        }

        if (ap3->parsed()) {
            if (group_text.empty()) throw std::invalid_argument("ap3 needs --group");
            const Group g = parse_group(group_text);
            const GSet a = set_from_options(g, set_text, file_path);
            const Ap3Count c = count_ap3(a, tol);
            std::ostringstream os;
            os << "total=" << c.total << " nontrivial=" << c.nontrivial << '\n';
            deliver(os.str(), out_path, out);
            return 0;
        }

        if (sum->parsed()) {
            if (group_text.empty()) throw std::invalid_argument("sumset needs --group");
            const Group g = parse_group(group_text);
            const GSet a = set_from_options(g, set_text, file_path, 0);
            const GSet b = other_text.empty() && file_path.empty()
                               ? a
                               : (other_text.empty()
                                      ? set_from_options(g, "", file_path, 1)
                                      : set_from_options(g, other_text, ""));
            const GSet s = restricted ? restricted_sumset(a, b) : sumset(a, b);
            std::ostringstream os;
            os << format_indices(s.members()) << '\n';
            deliver(os.str(), out_path, out);
            return 0;
        }

        if (chang->parsed()) {
            if (group_text.empty()) throw std::invalid_argument("chang needs --group");
            const Group g = parse_group(group_text);
            const GSet a = set_from_options(g, set_text, file_path);
            const BogolioubovReport r = bogolioubov_chang(a, doubling_constant(a));
            std::ostringstream os;
            os.precision(12);
            if (eps_given) {
                const DissociatedBasis basis = dissociated_basis(large_spectrum(a, eps), a, eps);
                os << "eps=" << eps << " gamma=" << basis.basis.size()
                   << " bound=" << basis.size_bound << ' '
                   << ((basis.size_ok && basis.spans) ? "PASS" : "FAIL") << '\n';
            }
            os << "alpha=" << r.alpha << " K=" << r.k << " gamma=" << r.gamma_size << '\n';
            os << "dim=" << r.dim << " bound=" << r.dim_bound << ' '
               << (r.dim_ok ? "PASS" : "FAIL") << '\n';
            os << "log_density=" << std::log(std::max(r.density, 1e-300))
               << " bound=" << r.density_log_bound << ' ' << (r.density_ok ? "PASS" : "FAIL")
               << '\n';
            os << "sup_density=" << r.sup_density << " bound=" << r.sup_bound << ' '
               << (r.sup_ok ? "PASS" : "FAIL") << '\n';
            deliver(os.str(), out_path, out);
            return (r.dim_ok && r.density_ok && r.sup_ok) ? 0 : 1;
        }

        if (trace->parsed()) {
            if (group_text.empty() && system_text.empty())
                throw std::invalid_argument("trace needs --group or --system");
            BourgainSystem s = system_text.empty()
                                   ? BourgainSystem::trivial(parse_group(group_text))
                                   : parse_system(system_text);
            const Group& g = s.group();
            const GSet a = set_from_options(g, set_text, file_path);
            IncrementMode mode;
            if (mode_text == "paper") mode = IncrementMode::paper;
            else if (mode_text == "practical") mode = IncrementMode::practical;
            else throw std::invalid_argument("mode must be paper or practical");
            const IterationTrace t = run_increment(a, s, mode, budget);
            deliver(format_trace(t), out_path, out);
            return 0;
        }

        if (bohr->parsed()) {
            if (system_text.empty() && (group_text.empty() || freqs_text.empty()))
                throw std::invalid_argument("bohr needs --system, or --group with --freqs/--delta");
            const BourgainSystem s =
                system_text.empty()
                    ? [&] {
                          const Group g = parse_group(group_text);
                          BohrDescriptor desc;
                          for (std::int64_t f : parse_int_list(freqs_text)) {
                              if (f < 0 || static_cast<std::uint64_t>(f) >= g.size())
                                  throw std::invalid_argument("frequency out of range");
                              desc.frequencies.push_back(static_cast<Index>(f));
                          }
                          desc.delta = delta;
                          return BourgainSystem::bohr(g, desc);
                      }()
                    : parse_system(system_text);
            const GSet b = s.materialize(rho);
            std::ostringstream os;
            os.precision(12);
            os << "system=" << s.describe() << '\n';
            os << "dimension=" << s.dimension() << " density=" << s.density()
               << " regular=" << (s.is_regular() ? 1 : 0) << '\n';
            os << "rho=" << rho << " size=" << b.size() << '\n';
            os << format_indices(b.members()) << '\n';
            deliver(os.str(), out_path, out);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace blab::cli
