#include "superdenom/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "superdenom/errors.hpp"
#include "superdenom/simple_systems.hpp"

namespace superdenom {

using ojson = nlohmann::ordered_json;

CheckSelection parse_checks(const std::string& text) {
    CheckSelection sel{false, false, false, false};
    std::stringstream ss(text);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        if (item == "all")
            sel = CheckSelection{};
        else if (item == "finite")
            sel.finite = true;
        else if (item == "affine")
            sel.affine = true;
        else if (item == "translation")
            sel.translation = true;
        else if (item == "lemmas")
            sel.lemmas = true;
        else
            throw ConfigError("unknown check selection '" + item + "'");
        any = true;
    }
    if (!any) throw ConfigError("empty check selection");
    return sel;
}

RootOptions parse_control(const std::string& tag) {
    RootOptions o;
    if (tag == "imag-mult-1")
        o.imaginary_multiplicity = 1;
    else if (tag == "drop-s")
        o.drop_s_index = 0;
    else
        throw ConfigError("unknown negative control '" + tag + "'");
    return o;
}

std::optional<RunConfig> parse_batch_line(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream is(line);
    std::string family;
    if (!(is >> family)) return std::nullopt;
    RunConfig c;
    c.spec.family = parse_family(family);
    if (!(is >> c.spec.m >> c.spec.n >> c.height))
        throw ConfigError("batch line needs 'family m n N': " + raw);
    std::string control;
    if (is >> control) {
        c.root_options = parse_control(control);
        c.control = control;
    }
    std::string extra;
    if (is >> extra) throw ConfigError("trailing text in batch line: " + raw);
    c.spec.validate();
    return c;
}

namespace {

ojson spec_json(const FamilySpec& s) {
    return ojson{{"family", family_tag(s.family)}, {"m", s.m}, {"n", s.n}, {"name", s.name()}};
}

ojson report_object(const CheckReport& rep, const std::string& control) {
    ojson j;
    j["spec"] = spec_json(rep.spec);
    if (!control.empty()) j["control"] = control;
    j["N"] = rep.N;
    j["status"] = rep.passed() ? "pass" : "fail";
    ojson checks = ojson::array();
    ojson timings;
    timings["total_seconds"] = rep.seconds;
    for (const auto& c : rep.checks) {
        ojson e;
        e["name"] = c.name;
        e["status"] = c.passed ? "pass" : "fail";
        e["detail"] = c.detail;
        e["terms"] = c.terms;
        if (c.mismatch) {
            e["mismatch"] = ojson{{"exponent_coords", c.mismatch->exponent_coords},
                                  {"exponent", c.mismatch->exponent},
                                  {"lhs", c.mismatch->lhs},
                                  {"rhs", c.mismatch->rhs}};
        }
        checks.push_back(std::move(e));
        timings[c.name] = c.seconds;
    }
    j["checks"] = std::move(checks);
    j["timings"] = std::move(timings);
    return j;
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw ConfigError("cannot open output file " + cfg.out_path);
    f << text;
}

void csv_rows(std::ostream& os, const std::string& side, const Series& s, const BilinearForm& form) {
    for (const auto& [v, c] : s.sorted_terms()) {
        os << side << ",\"";
        for (std::size_t i = 0; i < s.window().rank(); ++i) os << (i ? " " : "") << v[i];
        os << "\"," << form.format(s.window().exponent(v)) << "," << c.get_str() << "\n";
    }
}

CheckOptions options_of(const RunConfig& cfg) {
    CheckOptions o;
    o.theta_depth = cfg.theta_depth;
    o.shells = cfg.shells;
    return o;
}

} // namespace

std::string report_json(const CheckReport& report, const std::string& control) {
    return report_object(report, control).dump(2) + "\n";
}

std::string report_text(const CheckReport& rep) {
    std::ostringstream os;
    os << rep.spec.name() << " N=" << rep.N << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : rep.checks) {
        os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail;
        if (c.mismatch) os << " (lhs " << c.mismatch->lhs << ", rhs " << c.mismatch->rhs << ")";
        os << "\n";
    }
    return os.str();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    RootSystem rs = build_root_system(cfg.spec, cfg.root_options);
    Verifier v(rs, cfg.height);
    CheckReport rep = run_checks(v, cfg.checks, options_of(cfg));
    if (!cfg.theta_dot_path.empty()) {
        std::ofstream f(cfg.theta_dot_path);
        if (!f) throw ConfigError("cannot open " + cfg.theta_dot_path);
        f << theta_dot(explore_theta(start_system(rs, false), cfg.theta_depth));
    }
    std::string text;
    switch (cfg.format) {
    case OutputFormat::json: text = report_json(rep, cfg.control); break;
    case OutputFormat::text: text = report_text(rep); break;
    case OutputFormat::csv: {
        std::ostringstream os;
        os << "series,offsets,exponent,coefficient\n";
        if (cfg.checks.finite) {
            csv_rows(os, "finite_lhs", v.finite_left(), *rs.form);
            csv_rows(os, "finite_rhs", v.finite_right(), *rs.form);
        }
        if (cfg.checks.affine || cfg.checks.translation) {
            csv_rows(os, "affine_lhs", v.affine_left(), *rs.form);
            csv_rows(os, "affine_rhs", v.affine_right(), *rs.form);
        }
        text = os.str();
        break;
    }
    }
    write_output(cfg, text, out);
    return rep.passed() ? kExitPass : kExitFail;
}

int cmd_info(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    RootSystem rs = build_root_system(cfg.spec, cfg.root_options);
    const auto& f = *rs.form;
    auto fmt = [&](const std::vector<Weight>& ws) {
        std::vector<std::string> s;
        for (const auto& w : ws) s.push_back(f.format(w));
        return s;
    };
    auto ball = explore_theta(start_system(rs, false), cfg.theta_depth);
    std::size_t wsharp = generate_finite_sharp(rs).size();

    ojson j;
    j["spec"] = spec_json(rs.spec);
    j["basis"] = ojson{{"eps", f.eps_count()},
                       {"del", f.del_count()},
                       {"eps_sum_zero", f.eps_sum_zero()},
                       {"epsnorm", f.epsnorm().get_str()},
                       {"delnorm", f.delnorm().get_str()}};
    j["pi"] = fmt(rs.pi);
    std::vector<std::string> par;
    for (auto p : rs.pi_parity) par.push_back(to_string(p));
    j["pi_parity"] = par;
    j["S"] = fmt(rs.s_set);
    j["theta"] = f.format(rs.theta);
    j["xi"] = rs.xi ? ojson(f.format(*rs.xi)) : ojson(nullptr);
    j["rho"] = f.format(rs.rho);
    j["hdual"] = rs.hdual.get_str();
    j["roots"] = rs.roots.size();
    j["sharp"] = rs.sharp.size();
    j["delta2"] = rs.delta2.size();
    j["weyl_sharp_order"] = wsharp;
    j["theta_depth"] = cfg.theta_depth;
    j["theta_ball"] = ball.systems.size();

    std::string text;
    if (cfg.format == OutputFormat::json) {
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << rs.spec.name() << "\n";
        os << "  basis: " << f.eps_count() << " eps" << (f.eps_sum_zero() ? " (sum zero)" : "")
           << ", " << f.del_count() << " del\n";
        os << "  pi: ";
        for (std::size_t i = 0; i < rs.pi.size(); ++i)
            os << (i ? ", " : "") << f.format(rs.pi[i]) << " (" << to_string(rs.pi_parity[i]) << ")";
        os << "\n  S: ";
        for (std::size_t i = 0; i < rs.s_set.size(); ++i) os << (i ? ", " : "") << f.format(rs.s_set[i]);
        os << "\n  theta: " << f.format(rs.theta);
        os << "\n  xi: " << (rs.xi ? f.format(*rs.xi) : std::string("none"));
        os << "\n  rho: " << f.format(rs.rho);
        os << "\n  hdual: " << rs.hdual.get_str();
        os << "\n  |Delta#| = " << rs.sharp.size() << ", |Delta2| = " << rs.delta2.size();
        os << "\n  |W#| = " << wsharp;
        os << "\n  Theta ball (depth " << cfg.theta_depth << "): " << ball.systems.size() << "\n";
        text = os.str();
    }
    write_output(cfg, text, out);
    return kExitPass;
}

int cmd_batch(const std::string& path, const RunConfig& defaults, int workers, std::ostream& out,
              std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot read batch file " << path << "\n";
        return kExitUsage;
    }
    std::vector<RunConfig> jobs;
    std::string line;
    while (std::getline(in, line)) {
        auto c = parse_batch_line(line);
        if (!c) continue;
        c->checks = defaults.checks;
        c->shells = defaults.shells;
        c->theta_depth = defaults.theta_depth;
        jobs.push_back(std::move(*c));
    }

    struct Outcome {
        std::optional<CheckReport> report;
        std::string error;
    };
    std::vector<Outcome> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                RootSystem rs = build_root_system(jobs[i].spec, jobs[i].root_options);
                results[i].report = run_checks(rs, jobs[i].height, jobs[i].checks, options_of(jobs[i]));
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, workers); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool all = true, internal = false;
    std::ostringstream os;
    if (defaults.format == OutputFormat::json) {
        ojson arr = ojson::array();
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (results[i].report) {
                arr.push_back(report_object(*results[i].report, jobs[i].control));
                all = all && results[i].report->passed();
            } else {
                arr.push_back(ojson{{"spec", spec_json(jobs[i].spec)},
                                    {"N", jobs[i].height},
                                    {"status", "error"},
                                    {"error", results[i].error}});
                internal = true;
            }
        }
        os << ojson{{"runs", arr}, {"total", jobs.size()}}.dump(2) << "\n";
    } else {
        os << "spec,N,control,status,failed_checks\n";
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            os << jobs[i].spec.name() << "," << jobs[i].height << "," << jobs[i].control << ",";
            if (!results[i].report) {
                os << "error," << results[i].error << "\n";
                internal = true;
                continue;
            }
            const auto& rep = *results[i].report;
            all = all && rep.passed();
            os << (rep.passed() ? "pass" : "fail") << ",";
            bool first = true;
            for (const auto& c : rep.checks)
                if (!c.passed) {
                    os << (first ? "" : " ") << c.name;
                    first = false;
                }
            os << "\n";
        }
    }
    write_output(defaults, os.str(), out);
    if (internal) return kExitInternal;
    return all ? kExitPass : kExitFail;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of Weyl denominator identities for basic Lie superalgebras",
                 "superdenom"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string family = "A", checks = "all", format = "json", batch_file;
    int workers = 0;

    auto add_common = [&](CLI::App* sub, bool with_spec) {
        if (with_spec) {
            sub->add_option("--family", family, "Family tag")
                ->required()
                ->check(CLI::IsMember({"A", "B", "C", "D", "F4", "G3"}));
            sub->add_option("--m", cfg.spec.m, "First rank parameter");
            sub->add_option("--n", cfg.spec.n, "Second rank parameter");
            sub->add_option("--height", cfg.height, "Window height bound N")->check(CLI::NonNegativeNumber);
        }
        sub->add_option("--checks", checks, "finite,affine,translation,lemmas or all");
        sub->add_option("--shells", cfg.shells, "Translation shells")->check(CLI::PositiveNumber);
        sub->add_option("--theta-depth", cfg.theta_depth, "Odd-reflection depth")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--out", cfg.out_path, "Output path (default stdout)");
        sub->add_option("--workers", workers, "Concurrent batch workers")->check(CLI::PositiveNumber);
    };
    CLI::App* verify = app.add_subcommand("verify", "Run the identity checks for one spec");
    add_common(verify, true);
    verify->add_option("--theta-dot", cfg.theta_dot_path, "Write the odd-reflection graph as DOT");
    CLI::App* info = app.add_subcommand("info", "Print root data for one spec");
    add_common(info, true);
    CLI::App* batch = app.add_subcommand("batch", "Run a list of specs");
    add_common(batch, false);
    batch->add_option("file", batch_file, "Lines 'family m n N [control]'")->required();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        cfg.format = format == "json" ? OutputFormat::json
                     : format == "text" ? OutputFormat::text
                                        : OutputFormat::csv;
        cfg.checks = parse_checks(checks);
        if (workers == 0) {
            const char* env = std::getenv("SUPERDENOM_WORKERS");
            workers = env ? std::atoi(env) : 1;
            if (workers < 1) throw ConfigError("SUPERDENOM_WORKERS must be a positive integer");
        }
        if (*batch) return cmd_batch(batch_file, cfg, workers, out, err);
        cfg.spec.family = parse_family(family);
        cfg.spec.validate();
        if (*verify) return cmd_verify(cfg, out, err);
        return cmd_info(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedFamily& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace superdenom
